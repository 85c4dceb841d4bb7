#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "szego/flow.hpp"
#include "test_support.hpp"

using namespace szego;
using szego::testing::random_decaying;
using szego::testing::random_unit_fourier;
using szego::testing::shift_matrix;

namespace {
const FourierVector kPlusHalf{0.5, 1.0};
}

TEST_CASE("sigma at t = 0 is the truncated shift", "[flow]") {
  const SigmaOperator s = build_sigma(kPlusHalf, 0.0, 16);
  REQUIRE((s.matrix - shift_matrix(16)).cwiseAbs().maxCoeff() < 1e-14);
  REQUIRE((s.q - one(16).coeffs()).norm() < 1e-14);
  REQUIRE(s.tail_mass == 0.0);
}

TEST_CASE("sigma defect relations", "[flow]") {
  const Index n = 128;
  const SigmaOperator s = build_sigma(kPlusHalf, 1.0, n);
  REQUIRE(std::abs(s.q.norm() - 1.0) < 1e-12);
  REQUIRE((s.matrix.adjoint() * s.q).norm() < 1e-10);

  // Sigma^* Sigma = I on vectors supported in the first N-1 modes.
  const CMatrix gram = s.matrix.adjoint() * s.matrix;
  REQUIRE((gram.topLeftCorner(n - 1, n - 1) - CMatrix::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() <
          1e-10);
  // Sigma Sigma^* = I - q q^H up to truncation.
  const CMatrix co = s.matrix * s.matrix.adjoint() + s.q * s.q.adjoint();
  REQUIRE((co - CMatrix::Identity(n, n)).norm() < 1e-8);

  // {Sigma^m q} is orthonormal.
  CMatrix orbit(n, 21);
  orbit.col(0) = s.q;
  for (Index m = 1; m <= 20; ++m) orbit.col(m) = s.matrix * orbit.col(m - 1);
  REQUIRE((orbit.adjoint() * orbit - CMatrix::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("exact flow basics", "[flow]") {
  // Phi(0) = identity.
  const FourierVector u = random_decaying(6, 0.4, 3);
  const FourierVector at0 = exact_flow(u, 0.0, 32, 32);
  REQUIRE((at0.coeffs().head(6) - u.coeffs()).norm() < 1e-10);
  REQUIRE(at0.coeffs().tail(26).norm() < 1e-10);

  // Constant data: u(t) = c e^{-i|c|^2 t} solves i u' = |u|^2 u.
  const cplx c(0.8, -0.6);
  for (double t : {0.5, 1.0, 3.0}) {
    const FourierVector s = exact_flow(FourierVector{c}, t, 8, 4);
    REQUIRE(std::abs(s[0] - c * std::polar(1.0, -std::norm(c) * t)) < 1e-12);
    REQUIRE(s.coeffs().tail(3).norm() < 1e-12);
    const FourierVector r = rk4_evolve(FourierVector{c}, t, 1e-3, 4).states.back();
    REQUIRE(std::abs(r[0] - s[0]) < 1e-10);
  }
}

TEST_CASE("exact flow preconditions", "[flow]") {
  REQUIRE_THROWS_AS(exact_flow(random_decaying(10, 0.5, 1), 1.0, 8, 8), ConfigError);
  REQUIRE_THROWS_AS(exact_flow(kPlusHalf, 1.0, 8, 9), ConfigError);
  REQUIRE_THROWS_AS(exact_flow(kPlusHalf, 1.0, 8, 0), ConfigError);
  CVector heavy = CVector::Zero(10);
  heavy[0] = 1.0;
  heavy[9] = 1.0;
  REQUIRE_THROWS_AS(build_sigma(FourierVector(heavy), 1.0, 10), NumericalError);
  REQUIRE_NOTHROW(build_sigma(FourierVector(heavy), 1.0, 20));
}

TEST_CASE("Parseval: the coefficient series recovers the norm", "[flow][property]") {
  const Index n = 256;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const FourierVector u = random_decaying(8, 0.5, 50 + seed);
    const double norm2 = u.coeffs().squaredNorm();
    const SzegoFlow flow(u, n);
    for (double t : {0.5, 1.0, 5.0}) {
      const FourierVector s = flow.state(t, n);
      double partial = 0.0;
      for (Index m = 0; m < n; ++m) {
        partial += std::norm(s[m]);
        REQUIRE(partial <= norm2 + 1e-8);
      }
      REQUIRE(std::abs(partial - norm2) < 1e-8);
    }
  }
}

TEST_CASE("szego vector field", "[flow]") {
  const cplx c(0.3, 1.1);
  const FourierVector rc = szego_rhs(FourierVector{c});
  REQUIRE(std::abs(rc[0] - (-kI * std::norm(c) * c)) < 1e-15);

  // |z|^2 z = z on the circle.
  const FourierVector rz = szego_rhs(FourierVector{0.0, 1.0});
  REQUIRE(std::abs(rz[0]) < 1e-15);
  REQUIRE(std::abs(rz[1] - (-kI)) < 1e-15);

  // d/dt |u|^2 = 2 Re <u', u> = 0 for the truncated field as well.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const FourierVector u = szego::testing::random_fourier(12, seed);
    REQUIRE(std::abs(2.0 * inner(szego_rhs(u), u).real()) < 1e-12 * std::pow(u.norm(), 4));
  }
}

TEST_CASE("rk4 integrator", "[flow]") {
  const FlowReport zero = rk4_evolve(kPlusHalf, 0.0, 1e-3, 8);
  REQUIRE(zero.states.size() == 1);
  REQUIRE(zero.states[0].coeffs().head(2) == kPlusHalf.coeffs());

  const FlowReport r = rk4_evolve(kPlusHalf, 1.0, 1e-3, 64);
  REQUIRE(r.method == FlowMethod::rk4);
  REQUIRE(r.times.back() == 1.0);
  REQUIRE(r.times.size() == 101);
  REQUIRE(r.times.size() == r.states.size());
  REQUIRE(std::abs(r.states.back().norm() - kPlusHalf.norm()) < 1e-8);

  const FourierVector exact = exact_flow(kPlusHalf, 1.0, 64, 64);
  REQUIRE((exact.coeffs() - r.states.back().coeffs()).cwiseAbs().maxCoeff() < 1e-6);

  // Backwards then forwards returns to the start.
  const FourierVector back = rk4_evolve(kPlusHalf, -0.5, 1e-3, 32).states.back();
  const FourierVector there = rk4_evolve(back, 0.5, 1e-3, 32).states.back();
  REQUIRE((there.coeffs() - kPlusHalf.resized(32).coeffs()).norm() < 1e-10);

  REQUIRE_THROWS_AS(rk4_evolve(kPlusHalf, 1.0, 0.0, 8), ConfigError);
  REQUIRE_THROWS_AS(rk4_evolve(kPlusHalf, 1.0, 1e-3, 1), ConfigError);
  REQUIRE(default_time_step(FourierVector{3.0}) == Catch::Approx(1e-3 / 9.0));
  REQUIRE(default_time_step(kPlusHalf) == Catch::Approx(1e-3 / 1.25));
  REQUIRE(default_time_step(FourierVector{0.5}) == 1e-3);
}

TEST_CASE("rk4 reports non-finite blow-up", "[flow]") {
  // Steps far beyond the stability region of the cubic field overflow.
  REQUIRE_THROWS_AS(rk4_evolve(FourierVector{1e3, 1e3}, 10.0, 1.0, 4), NumericalError);
}

TEST_CASE("oracle agreement on smooth random data", "[flow][property]") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const FourierVector u = random_decaying(5, 0.5, 900 + seed);
    const double t = 1.5;
    const FourierVector exact = exact_flow(u, t, 64, 64);
    const FourierVector rk4 = rk4_evolve(u, t, default_time_step(u), 64).states.back();
    REQUIRE((exact.coeffs() - rk4.coeffs()).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("continuity in the symbol and in time", "[flow]") {
  const FourierVector u = random_decaying(6, 0.5, 17);
  const FourierVector v = random_unit_fourier(6, 18);
  const Index n = 64, m = 16;
  const FourierVector base = exact_flow(u, 1.0, n, m);
  std::vector<double> diffs;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    diffs.push_back((exact_flow(u + cplx(delta) * v, 1.0, n, m).coeffs() - base.coeffs()).norm());
  }
  REQUIRE(diffs[0] > diffs[1]);
  REQUIRE(diffs[1] > diffs[2]);
  REQUIRE(diffs[0] / diffs[1] == Catch::Approx(10.0).epsilon(0.3));
  REQUIRE(diffs[1] / diffs[2] == Catch::Approx(10.0).epsilon(0.3));

  const SzegoFlow flow(u, n);
  const FourierVector at1 = flow.state(1.0, m);
  const double d2 = (flow.state(1.0 + 1e-2, m).coeffs() - at1.coeffs()).norm();
  const double d3 = (flow.state(1.0 + 1e-3, m).coeffs() - at1.coeffs()).norm();
  REQUIRE(d3 < d2);
  REQUIRE(d2 / d3 == Catch::Approx(10.0).epsilon(0.3));
}

TEST_CASE("Lax pair residual", "[flow]") {
  const FourierVector f = random_unit_fourier(64, 2024);
  const double r1 = lax_residual(kPlusHalf, f, 1e-4, 64);
  const double r2 = lax_residual(kPlusHalf, f, 5e-5, 64);
  REQUIRE(r1 <= 1e-6);
  REQUIRE(r1 / r2 >= 3.5);
  REQUIRE(r1 / r2 <= 4.5);

  REQUIRE(lax_residual(FourierVector::zero(3), f, 1e-4, 64) == 0.0);
  REQUIRE_THROWS_AS(lax_residual(kPlusHalf, f, 0.0, 64), ConfigError);
}

TEST_CASE("flow reports", "[flow]") {
  FlowReport r = exact_flow_report(kPlusHalf, {0.0, 0.5, 1.0}, 64, 32);
  REQUIRE(r.method == FlowMethod::exact);
  REQUIRE(r.states.size() == 3);
  REQUIRE(r.audits.empty());
  attach_audits(r);
  REQUIRE(r.audits.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) REQUIRE(r.audits[i].t == r.times[i]);
  REQUIRE(std::string(to_string(FlowMethod::rk4)) == "rk4");
}
