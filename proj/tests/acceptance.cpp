// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "szego/szego.hpp"
#include "test_support.hpp"

using namespace szego;
using szego::testing::random_fourier;
using szego::testing::random_unit_fourier;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome norm_conservation() {
  const std::vector<FourierVector> symbols{FourierVector{0.5, 1.0}, geometric_symbol(0.5, 16, 1)};
  double worst = 0.0;
  for (const auto& u : symbols) {
    const SzegoFlow flow(u, 256);
    for (double t : {0.5, 1.0, 2.0}) {
      const FourierVector s = flow.state(t, 256);
      worst = std::max(worst, std::abs(s.coeffs().squaredNorm() - u.coeffs().squaredNorm()));
    }
  }
  return {worst <= 1e-8, "max | sum |c_m|^2 - |u|^2 | = " + sci(worst)};
}

Outcome b_eps_match() {
  double worst = 0.0;
  for (double eps : {0.25, 0.5}) {
    const SzegoFlow flow(plus_eps_symbol(eps), 256);
    for (double t : {0.3, 1.0, t_star(eps)}) worst = std::max(worst, std::abs(flow.state(t, 1)[0] - b_eps(eps, t)));
  }
  return {worst <= 1e-8, "max |c_0 - b_eps| = " + sci(worst)};
}

Outcome rk4_agreement() {
  const FourierVector u{0.5, 1.0};
  const FourierVector exact = exact_flow(u, 1.0, 64, 64);
  const FourierVector rk4 = rk4_evolve(u, 1.0, 1e-3, 64).states.back();
  const double d = (exact.coeffs() - rk4.coeffs()).cwiseAbs().maxCoeff();
  return {d <= 1e-6, "max coefficient difference = " + sci(d)};
}

Outcome rank_one() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FourierVector u = random_unit_fourier(1 + static_cast<Index>(seed % 9), 4000 + seed);
    const CVector un = u.resized(16).coeffs();
    const CMatrix defect = shifted_hankel_square(u, 16) - (hankel_square(u, 16) - un * un.adjoint());
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-13, "max entry of defect = " + sci(worst)};
}

Outcome adjoint_identity() {
  int mismatches = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FourierVector u = random_fourier(1 + static_cast<Index>(seed % 12), 5000 + seed);
    const Index n = 4 + static_cast<Index>(seed % 9);
    if (hankel(sharp(u), n).entries != CMatrix(hankel(u, n).entries.adjoint())) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " of 20 symbols differ"};
}

Outcome conservation() {
  const FourierVector u{0.5, 1.0};
  const SzegoFlow flow(u, 256);
  const ConservedAudit a0 = audit(u);
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const ConservedAudit a = audit(flow.state(t, 128), t);
    worst = std::max(worst, rel(a.energy, a0.energy));
    for (std::size_t i = 0; i < a.j_samples.size(); ++i) {
      worst = std::max(worst, rel(a.j_samples[i].second, a0.j_samples[i].second));
    }
  }
  return {worst <= 1e-6, "max relative drift of E, J = " + sci(worst)};
}

Outcome quartic_recovery() {
  double worst = 0.0, parseval = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FourierVector u = random_fourier(1 + static_cast<Index>(seed % 8), 6000 + seed);
    const double quartic = std::pow(lp_boundary_norm(u, 4.0, 1024), 4.0);
    const double recovered = h4_from_j(u, 2 * u.dim() + 2).quartic;
    worst = std::max(worst, std::abs(recovered - quartic) / quartic);
    parseval = std::max(parseval, parseval_identity_residual(u, 2 * u.dim()));
  }
  return {worst <= 1e-6 && parseval <= 1e-10,
          "relative L4 error = " + sci(worst) + ", Parseval residual = " + sci(parseval)};
}

Outcome lax_pair() {
  const FourierVector u{0.5, 1.0};
  const FourierVector f = random_unit_fourier(64, 7000);
  const double r1 = lax_residual(u, f, 1e-4, 64);
  const double r2 = lax_residual(u, f, 5e-5, 64);
  const double ratio = r1 / r2;
  return {r1 <= 1e-6 && ratio >= 3.5 && ratio <= 4.5,
          "residual(1e-4) = " + sci(r1) + ", halving ratio = " + sci(ratio)};
}

Outcome inflation() {
  const auto start = std::chrono::steady_clock::now();
  const InflationParams p{0.25, 0.2, 3.0, 16};
  const InflationClosedForm closed = inflation_closed_form(p);
  const double sob = sobolev_norm(inflation_initial_state(p), -p.delta);
  const double sob_err = std::abs(sob - closed.sobolev_at_0) / closed.sobolev_at_0;
  const InflationReport r = inflation_run(p, 1024, 1);
  const double obs_err = std::abs(r.observable - closed.predicted_observable) / closed.predicted_observable;

  bool trend = true;
  double prev_norm = INFINITY, prev_obs = 0.0;
  for (double eps : {0.4, 0.2, 0.1}) {
    const InflationClosedForm c = inflation_closed_form(inflation_schedule(eps, 0.25));
    trend = trend && c.sobolev_at_0 < prev_norm && c.predicted_observable > prev_obs;
    prev_norm = c.sobolev_at_0;
    prev_obs = c.predicted_observable;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {sob_err <= 1e-12 && obs_err <= 1e-4 && trend && seconds <= 120.0,
          "sobolev rel err = " + sci(sob_err) + ", |c_0| rel err = " + sci(obs_err) +
              ", trend " + (trend ? "ok" : "broken") + ", " + sci(seconds) + " s"};
}

Outcome toeplitz_kernel() {
  KernelParams p;  // eps 0.3, grid 2^16, K 64, N 512
  const KernelReport base = kernel_report(p);
  KernelParams finer = p;
  finer.grid_m *= 2;
  finer.dim_n *= 2;
  const double refined = kernel_residual(finer);
  return {base.residual <= 1e-2 && refined < base.residual && base.control_residual >= 0.1,
          "residual = " + sci(base.residual) + ", refined = " + sci(refined) +
              ", control = " + sci(base.control_residual)};
}

Outcome sigma_orbit() {
  const SigmaOperator s = build_sigma(FourierVector{0.5, 1.0}, 1.0, 128);
  const double qerr = std::abs(s.q.norm() - 1.0);
  CMatrix orbit(128, 20);
  orbit.col(0) = s.q;
  for (Index m = 1; m < 20; ++m) orbit.col(m) = s.matrix * orbit.col(m - 1);
  const double gram = (orbit.adjoint() * orbit - CMatrix::Identity(20, 20)).cwiseAbs().maxCoeff();
  return {qerr <= 1e-12 && gram <= 1e-8, "| |q| - 1 | = " + sci(qerr) + ", Gram defect = " + sci(gram)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"norm conservation of the explicit formula", norm_conservation},
      {"closed form for data z + eps", b_eps_match},
      {"explicit formula agrees with RK4", rk4_agreement},
      {"rank-one identity for the shifted Hankel square", rank_one},
      {"adjoint identity for the sharp symbol", adjoint_identity},
      {"conservation of E and J along the flow", conservation},
      {"L4 norm from derivatives of J", quartic_recovery},
      {"Lax pair residual and second-order convergence", lax_pair},
      {"norm inflation observable", inflation},
      {"Toeplitz kernel residual", toeplitz_kernel},
      {"orthonormality of the Sigma orbit of q", sigma_orbit},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
