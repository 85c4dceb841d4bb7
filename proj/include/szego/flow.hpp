#pragma once

// The cubic Szego equation  i du/dt = P(|u|^2 u)  on the Hardy space.
//
// SzegoFlow evaluates the explicit solution formula. With
//   Sigma = e^{i t H_u^2} S e^{-i t H_{S^*u}^2},   q = e^{i t H_u^2} 1,
// the Taylor coefficients of the solution at time t are <u, Sigma^m q>.
// Both H^2 operators are diagonalised once per (u, N), after which any
// number of times can be evaluated.
//
// rk4_evolve is an independent Galerkin integrator of the same equation,
// used as an oracle for the formula.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "szego/conserved.hpp"
#include "szego/error.hpp"
#include "szego/hankel.hpp"
#include "szego/hardy.hpp"
#include "szego/linalg.hpp"

namespace szego {

// Above this the symbol is considered badly truncated for the chosen N.
inline constexpr double kMaxSigmaTailMass = 0.1;

struct SigmaOperator {
  CMatrix matrix;     // e^{itH^2} S_N e^{-itH~^2}
  CVector q;          // e^{itH^2} e_0
  double t = 0.0;
  double tail_mass = 0.0;  // sum_{n >= N/2} |u_n|^2
};

class SzegoFlow {
 public:
  SzegoFlow(const FourierVector& u, Index n) : u_(u.resized(std::max(n, Index{1}))), n_(n) {
    if (n < u.dim()) {
      throw ConfigError("SzegoFlow: N=" + std::to_string(n) + " is smaller than dim(u)=" +
                        std::to_string(u.dim()));
    }
    tail_mass_ = u.tail_mass(n / 2);
    if (tail_mass_ > kMaxSigmaTailMass) {
      throw NumericalError("SzegoFlow: tail_mass=" + std::to_string(tail_mass_) +
                           " exceeds 0.1; increase N");
    }
    h2_ = eigh(hankel_square(u_, n_));
    h2_shifted_ = eigh(shifted_hankel_square(u_, n_));
  }

  Index size() const { return n_; }
  double tail_mass() const { return tail_mass_; }
  const FourierVector& symbol() const { return u_; }

  SigmaOperator sigma(double t) const {
    const CMatrix forward = propagator(h2_, t);
    const CMatrix backward_shifted = propagator(h2_shifted_, -t);
    // S_N X: move every row down by one, dropping the last.
    CMatrix shifted = CMatrix::Zero(n_, n_);
    shifted.bottomRows(n_ - 1) = backward_shifted.topRows(n_ - 1);
    return {forward * shifted, forward.col(0), t, tail_mass_};
  }

  // First m Taylor coefficients of the solution at time t.
  FourierVector state(double t, Index m) const {
    if (m < 1 || m > n_) {
      throw ConfigError("exact_flow: M=" + std::to_string(m) + " must lie in [1, N=" +
                        std::to_string(n_) + "]");
    }
    const SigmaOperator s = sigma(t);
    CVector out(m);
    CVector v = s.q;
    for (Index k = 0; k < m; ++k) {
      out[k] = v.dot(u_.coeffs());
      if (k + 1 < m) v = s.matrix * v;
    }
    return FourierVector(std::move(out));
  }

 private:
  FourierVector u_;
  Index n_;
  double tail_mass_ = 0.0;
  HermitianEig h2_;
  HermitianEig h2_shifted_;
};

inline SigmaOperator build_sigma(const FourierVector& u, double t, Index n) {
  return SzegoFlow(u, n).sigma(t);
}

inline FourierVector exact_flow(const FourierVector& u, double t, Index n, Index m) {
  return SzegoFlow(u, n).state(t, m);
}

enum class FlowMethod { exact, rk4 };

inline const char* to_string(FlowMethod m) { return m == FlowMethod::exact ? "exact" : "rk4"; }

struct FlowReport {
  std::vector<double> times;
  std::vector<FourierVector> states;
  std::vector<ConservedAudit> audits;  // empty until attach_audits
  FlowMethod method = FlowMethod::exact;
};

inline FlowReport exact_flow_report(const FourierVector& u, const std::vector<double>& times,
                                    Index n, Index m) {
  const SzegoFlow flow(u, n);
  FlowReport report;
  report.method = FlowMethod::exact;
  for (double t : times) {
    report.times.push_back(t);
    report.states.push_back(flow.state(t, m));
  }
  return report;
}

inline void attach_audits(FlowReport& report) {
  report.audits.clear();
  for (std::size_t i = 0; i < report.states.size(); ++i) {
    report.audits.push_back(audit(report.states[i], report.times[i]));
  }
}

// -i P(|u|^2 u), truncated back to dim(u).
inline FourierVector szego_rhs(const FourierVector& u) {
  const LaurentVector cubic = laurent_product(modulus_squared(u), u);
  return FourierVector(CVector(-kI * szego_project(cubic, u.dim()).coeffs()));
}

// Natural time scale of the cubic nonlinearity is |u|^{-2}.
inline double default_time_step(const FourierVector& u0) {
  const double n2 = u0.coeffs().squaredNorm();
  return 1e-3 * std::min(1.0, n2 > 0.0 ? 1.0 / n2 : 1.0);
}

// Classical RK4 at fixed dimension. Negative t integrates backwards. The
// step is shrunk so that an integer number of steps lands exactly on t.
inline FlowReport rk4_evolve(const FourierVector& u0, double t, double dt, Index work_dim) {
  if (!(dt > 0.0)) throw ConfigError("rk4_evolve: dt must be > 0");
  if (work_dim < u0.dim()) {
    throw ConfigError("rk4_evolve: work_dim=" + std::to_string(work_dim) +
                      " is smaller than dim(u0)=" + std::to_string(u0.dim()));
  }
  if (!std::isfinite(t)) throw ConfigError("rk4_evolve: t must be finite");

  FlowReport report;
  report.method = FlowMethod::rk4;
  FourierVector x = u0.resized(work_dim);
  report.times.push_back(0.0);
  report.states.push_back(x);
  if (t == 0.0) return report;

  const auto steps = static_cast<long>(std::max(1.0, std::ceil(std::abs(t) / dt - 1e-9)));
  const double h = t / static_cast<double>(steps);
  const auto stride =
      static_cast<long>(std::max(1.0, std::ceil(std::abs(t) / (100.0 * dt) - 1e-9)));

  CVector y = x.coeffs();
  auto rhs = [](const CVector& v) { return szego_rhs(FourierVector(v)).coeffs(); };
  for (long step = 1; step <= steps; ++step) {
    const CVector k1 = rhs(y);
    const CVector k2 = rhs(y + 0.5 * h * k1);
    const CVector k3 = rhs(y + 0.5 * h * k2);
    const CVector k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite()) {
      throw NumericalError("rk4_evolve: non-finite state at step " + std::to_string(step));
    }
    if (step % stride == 0 || step == steps) {
      report.times.push_back(step == steps ? t : h * static_cast<double>(step));
      report.states.emplace_back(y);
    }
  }
  return report;
}

// Central-difference check of the Lax identity dH_u/dt = [B_u, H_u] with
// B_u = (i/2) H_u^2 - i T_{|u|^2}, applied to f. Returns the norm of
//   (H_{u(h)} f - H_{u(-h)} f) / 2h - (B_u H_u f - H_u B_u f).
inline double lax_residual(const FourierVector& u, const FourierVector& f, double h, Index n) {
  if (!(h > 0.0)) throw ConfigError("lax_residual: h must be > 0");
  const FourierVector un = u.resized(n);
  const FourierVector fn = f.resized(n);
  const FourierVector plus = rk4_evolve(un, h, h, n).states.back();
  const FourierVector minus = rk4_evolve(un, -h, h, n).states.back();
  const CVector derivative = (apply_antilinear_hankel(plus, fn, n).coeffs() -
                              apply_antilinear_hankel(minus, fn, n).coeffs()) /
                             (2.0 * h);

  const CMatrix b = 0.5 * kI * hankel_square(un, n) - kI * toeplitz(modulus_squared(un), n).entries;
  const CVector hf = apply_antilinear_hankel(un, fn, n).coeffs();
  const CVector b_hf = b * hf;
  const CVector h_bf = apply_antilinear_hankel(un, FourierVector(CVector(b * fn.coeffs())), n).coeffs();
  return (derivative - (b_hf - h_bf)).norm();
}

}  // namespace szego
