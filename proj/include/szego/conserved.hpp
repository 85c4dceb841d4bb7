#pragma once

// Conserved quantities of the cubic Szego flow: the L^2 norm, the energy
// E(u) = |u|_{L^4}^4 / 4, and the generating function
//   J(x, u) = <(I + x H_u^2)^{-1} 1, 1>
// together with its one-sided derivatives at x = 0, which recover |u|^2
// and |u|_{L^4}^4.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "szego/error.hpp"
#include "szego/hankel.hpp"
#include "szego/hardy.hpp"
#include "szego/linalg.hpp"
#include "szego/spectral.hpp"

namespace szego {

inline const std::vector<double>& default_j_points() {
  static const std::vector<double> xs{0.1, 1.0, 10.0};
  return xs;
}

struct ConservedAudit {
  double t = 0.0;
  double l2_norm = 0.0;
  double energy = 0.0;
  std::vector<std::pair<double, double>> j_samples;  // (x, J(x, u))
  double dj0 = 0.0;
  double d2j0 = 0.0;
  double h4_quartic = 0.0;  // |u|_{L^4}^4 recovered from J
  double h4_norm = 0.0;
};

// Smallest power-of-two grid that resolves |u|^4 exactly.
inline Index energy_grid_size(const FourierVector& u) {
  return spectral::next_power_of_two(4 * u.dim());
}

inline double energy(const FourierVector& u, Index m) {
  if (m < 4 * u.dim()) {
    throw ConfigError("energy: M=" + std::to_string(m) + " must be >= 4*dim=" +
                      std::to_string(4 * u.dim()));
  }
  return 0.25 * std::pow(lp_boundary_norm(u, 4.0, m), 4.0);
}

inline double energy(const FourierVector& u) { return energy(u, energy_grid_size(u)); }

// Spectral data of H_u^2 seen from the vector 1: J and its derivatives are
// sums over eigenpairs weighted by |<1, v_k>|^2.
class HankelSpectrum {
 public:
  HankelSpectrum(const FourierVector& u, Index n) {
    const HermitianEig e = eigh(hankel_square(u, n));
    lambda_ = gram_eigenvalues(e);
    weight_ = e.eigenvectors.row(0).cwiseAbs2().transpose();
  }

  double j(double x) const {
    if (!(x >= 0.0)) throw ConfigError("J: x must be >= 0");
    double acc = 0.0;
    for (Index k = 0; k < lambda_.size(); ++k) acc += weight_[k] / (1.0 + x * lambda_[k]);
    return acc;
  }

  // d/dx J at 0+: -<H_u^2 1, 1>.
  double dj0() const { return -weight_.dot(lambda_); }

  // d^2/dx^2 J at 0+: 2 <H_u^4 1, 1>.
  double d2j0() const { return 2.0 * weight_.dot(lambda_.cwiseAbs2()); }

 private:
  RVector lambda_;
  RVector weight_;
};

inline double j_value(const FourierVector& u, double x, Index n) {
  if (!(x >= 0.0)) throw ConfigError("J: x must be >= 0");
  return HankelSpectrum(u, n).j(x);
}

struct JDerivatives {
  double first = 0.0;
  double second = 0.0;
};

inline JDerivatives j_derivs_at_zero(const FourierVector& u, Index n) {
  const HankelSpectrum s(u, n);
  return {s.dj0(), s.d2j0()};
}

struct H4Recovery {
  double quartic = 0.0;  // d2J(0+) - dJ(0+)^2
  double norm = 0.0;     // its fourth root
};

inline H4Recovery h4_from_derivs(const JDerivatives& d) {
  double q = d.second - d.first * d.first;
  if (q < -1e-9) {
    throw NumericalError("h4_from_J: d2J0 - dJ0^2 = " + std::to_string(q) +
                         " is negative; truncation too small");
  }
  q = std::max(q, 0.0);
  return {q, std::pow(q, 0.25)};
}

inline H4Recovery h4_from_j(const FourierVector& u, Index n) {
  return h4_from_derivs(j_derivs_at_zero(u, n));
}

// |2 |P(|u|^2)|^2 - |u|_{L^4}^4 - |u|^4|, with P(|u|^2) kept to N modes.
inline double parseval_identity_residual(const FourierVector& u, Index n) {
  const FourierVector projected = szego_project(modulus_squared(u), n);
  const double l4 = std::pow(lp_boundary_norm(u, 4.0, energy_grid_size(u)), 4.0);
  const double l2 = u.norm();
  return std::abs(2.0 * projected.coeffs().squaredNorm() - l4 - l2 * l2 * l2 * l2);
}

// All conserved quantities of one state. N is the Hankel section size and
// defaults to the state's dimension.
inline ConservedAudit audit(const FourierVector& u, double t = 0.0, Index n = 0,
                            const std::vector<double>& xs = default_j_points()) {
  if (n == 0) n = u.dim();
  ConservedAudit a;
  a.t = t;
  a.l2_norm = u.norm();
  a.energy = energy(u);
  const HankelSpectrum s(u, n);
  for (double x : xs) a.j_samples.emplace_back(x, s.j(x));
  a.dj0 = s.dj0();
  a.d2j0 = s.d2j0();
  const H4Recovery h4 = h4_from_derivs({a.dj0, a.d2j0});
  a.h4_quartic = h4.quartic;
  a.h4_norm = h4.norm;
  return a;
}

}  // namespace szego
