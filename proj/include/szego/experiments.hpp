#pragma once

// Two concrete constructions around the cubic Szego flow.
//
// Norm inflation: the explicit solution with data z + eps, rescaled by
// u -> R u(R^2 t, z^Nsub), has small W^{-delta,2} norm at t = 0 and a
// large zeroth Fourier coefficient shortly afterwards.
//
// Toeplitz kernel: with F = ((i+z)/(i-z))^{1/2}, H = (z^2+1)^{eps/2} and the
// real symbol phi = phi1 * phi2 (phi1 = -1 on |theta| < pi/2, +1 otherwise;
// phi2 = |z^2+1|^{-eps}), the function f = FH + H/F lies in H^2 and
// P(phi f) = 0. These functions are singular at z = +-i, so Fourier
// coefficients are computed on the offset grid theta_k = 2 pi (k+1/2)/M and
// the slowly decaying quadrature error is removed by Richardson
// extrapolation over the grids M, M/2, M/4, ...

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "szego/error.hpp"
#include "szego/flow.hpp"
#include "szego/hardy.hpp"
#include "szego/spectral.hpp"

namespace szego {

// ---------------------------------------------------------------------------
// Norm inflation

struct InflationParams {
  double delta = 0.25;
  double eps = 0.2;
  double R = 3.0;
  Index nsub = 16;

  void validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be > 0");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("eps must be > 0");
    if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("R must be > 0");
    if (nsub < 1) throw ConfigError("nsub must be >= 1");
  }
};

// omega = (eps/2) sqrt(4 + eps^2).
inline double inflation_frequency(double eps) { return 0.5 * eps * std::sqrt(4.0 + eps * eps); }

// Zeroth Taylor coefficient of the solution with data z + eps.
inline cplx b_eps(double eps, double t) {
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  const double omega = inflation_frequency(eps);
  const double amp = (2.0 + eps * eps) / std::sqrt(4.0 + eps * eps);
  const cplx envelope = std::polar(1.0, -t * (1.0 + 0.5 * eps * eps));
  return envelope * cplx(eps * std::cos(omega * t), -amp * std::sin(omega * t));
}

// First time at which |b_eps| peaks: pi / (2 omega).
inline double t_star(double eps) {
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  return std::numbers::pi / (2.0 * inflation_frequency(eps));
}

// Coefficients of R u(z^Nsub): mode n*Nsub carries R u_n.
inline FourierVector scale_state(const FourierVector& u, double R, Index nsub) {
  if (nsub < 1) throw ConfigError("nsub must be >= 1");
  CVector v = CVector::Zero(nsub * (u.dim() - 1) + 1);
  for (Index n = 0; n < u.dim(); ++n) v[n * nsub] = R * u.coeffs()[n];
  return FourierVector(std::move(v));
}

inline FourierVector inflation_initial_state(const InflationParams& p) {
  return scale_state(FourierVector{p.eps, 1.0}, p.R, p.nsub);
}

struct InflationClosedForm {
  double sobolev_at_0 = 0.0;          // sqrt(Nsub^{-2 delta} R^2 + (R eps)^2)
  double t_eps = 0.0;                 // t_star(eps) / R^2
  double predicted_observable = 0.0;  // R |b_eps(eps, t_star(eps))|
};

inline InflationClosedForm inflation_closed_form(const InflationParams& p) {
  p.validate();
  const double n = static_cast<double>(p.nsub);
  return {std::sqrt(std::pow(n, -2.0 * p.delta) * p.R * p.R + p.R * p.eps * p.R * p.eps),
          t_star(p.eps) / (p.R * p.R), p.R * std::abs(b_eps(p.eps, t_star(p.eps)))};
}

// A concrete member of the family: R = eps^{-3/4}, Nsub = ceil(eps^{-2/delta}),
// which gives R eps -> 0, R^2 eps -> inf and Nsub^{-delta} R -> 0.
inline InflationParams inflation_schedule(double eps, double delta) {
  InflationParams p;
  p.eps = eps;
  p.delta = delta;
  p.R = std::pow(eps, -0.75);
  p.nsub = static_cast<Index>(std::ceil(std::pow(eps, -2.0 / delta) - 1e-9));
  p.validate();
  return p;
}

// The flow populates multiples of Nsub; this leaves room for about
// max(8, T) of them per unit of unscaled time.
inline Index default_inflation_dim(const InflationParams& p) {
  const double horizon = std::max(8.0, std::ceil(t_star(p.eps)));
  return 4 * (p.nsub + 1) * static_cast<Index>(horizon);
}

inline constexpr double kMaxInflationTailMass = 1e-8;

struct InflationReport {
  InflationParams params;
  Index n = 0;
  double sobolev_at_0 = 0.0;
  double t_eps = 0.0;
  double observable = 0.0;            // |<v(t_eps), 1>|
  double predicted_observable = 0.0;  // R |b_eps(eps, T)|
  double rel_err = 0.0;
  FourierVector evolved = FourierVector::zero(1);
};

inline InflationReport inflation_run(const InflationParams& p, Index n, Index m) {
  p.validate();
  const FourierVector v0 = inflation_initial_state(p);
  if (n < v0.dim()) {
    throw ConfigError("inflation_run: N=" + std::to_string(n) + " must be >= " +
                      std::to_string(v0.dim()));
  }
  const SzegoFlow flow(v0, n);
  if (flow.tail_mass() > kMaxInflationTailMass) {
    throw NumericalError("inflation_run: tail_mass " + std::to_string(flow.tail_mass()) +
                         " exceeds 1e-8");
  }
  const InflationClosedForm closed = inflation_closed_form(p);

  InflationReport r;
  r.params = p;
  r.n = n;
  r.sobolev_at_0 = sobolev_norm(v0, -p.delta);
  r.t_eps = closed.t_eps;
  r.evolved = flow.state(r.t_eps, m);
  r.observable = std::abs(r.evolved[0]);
  r.predicted_observable = closed.predicted_observable;
  r.rel_err = std::abs(r.observable - r.predicted_observable) / r.predicted_observable;
  return r;
}

// ---------------------------------------------------------------------------
// Toeplitz kernel

struct KernelParams {
  double eps = 0.3;
  Index grid_m = Index{1} << 16;
  Index trunc_k = 64;
  Index dim_n = 512;
  int refinement_levels = 3;  // 0 = plain offset-grid quadrature
  std::uint64_t seed = 0;     // random control vector

  Index coarsest_grid() const { return grid_m >> refinement_levels; }

  void validate() const {
    if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("eps must lie in (0, 1/2)");
    if (!spectral::is_power_of_two(grid_m)) throw ConfigError("grid_m must be a power of two");
    if (refinement_levels < 0 || refinement_levels > 8) {
      throw ConfigError("refinement_levels must lie in [0, 8]");
    }
    if (dim_n < 1) throw ConfigError("dim_n must be >= 1");
    if (trunc_k < 1 || trunc_k > dim_n) throw ConfigError("trunc_k must lie in [1, dim_n]");
    if (coarsest_grid() < 4 * dim_n) {
      throw ConfigError("grid_m=" + std::to_string(grid_m) + " too small: grid_m / 2^levels must be >= 4*dim_n");
    }
  }
};

using GridSampler = std::function<CVector(Index m)>;

// Error exponents of the offset-grid rule for an integrand with an
// |theta - theta0|^{-alpha} singularity: 1-alpha, 2-alpha, ... merged with
// the even powers 2, 4, ...
inline std::vector<double> quadrature_error_exponents(double alpha, int count) {
  std::vector<double> out;
  double singular = 1.0 - alpha;
  double smooth = 2.0;
  while (static_cast<int>(out.size()) < count) {
    if (std::abs(singular - smooth) < 1e-12) {
      out.push_back(smooth);
      singular += 1.0;
      smooth += 2.0;
    } else if (singular < smooth) {
      out.push_back(singular);
      singular += 1.0;
    } else {
      out.push_back(smooth);
      smooth += 2.0;
    }
  }
  return out;
}

// Coefficients lo..hi from grids grid_m >> levels, ..., grid_m, combined
// by Richardson extrapolation with the given exponents.
inline CVector extrapolated_coefficients(const GridSampler& sample, Index grid_m, Index lo,
                                         Index hi, double alpha, int levels) {
  std::vector<CVector> table;
  for (int j = levels; j >= 0; --j) {
    const Index m = grid_m >> j;
    table.push_back(spectral::offset_grid_analysis(sample(m), lo, hi));
  }
  for (double p : quadrature_error_exponents(alpha, levels)) {
    const double r = std::pow(2.0, p);
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
      table[i] = (r * table[i + 1] - table[i]) / (r - 1.0);
    }
    table.pop_back();
  }
  return table.front();
}

namespace detail {

// The radicands (i+z)/(i-z) and z^2+1 map the closed disc into the closed
// right half-plane, where the principal branch is continuous and gives
// F(0) = H(0) = 1. A sample outside it means the branch cannot be trusted.
inline void check_right_half_plane(cplx w, const char* name, Index k) {
  if (w.real() < -1e-9 * std::abs(w)) {
    throw NumericalError(std::string("branch pinning failed for ") + name + " at sample " +
                         std::to_string(k));
  }
}

struct OuterFactors {
  CVector F;
  CVector H;
};

inline OuterFactors outer_factors(double eps, Index m) {
  const RVector theta = spectral::offset_grid(m);
  OuterFactors out{CVector(m), CVector(m)};
  for (Index k = 0; k < m; ++k) {
    const cplx z = std::polar(1.0, theta[k]);
    const cplx wf = (kI + z) / (kI - z);
    const cplx wh = (z - kI) * (z + kI);
    check_right_half_plane(wf, "F", k);
    check_right_half_plane(wh, "H", k);
    out.F[k] = std::sqrt(wf);
    out.H[k] = std::pow(wh, 0.5 * eps);
  }
  return out;
}

inline RVector phi1_samples(Index m) {
  const RVector theta = spectral::offset_grid(m);
  RVector out(m);
  const double quarter = 0.5 * std::numbers::pi;
  for (Index k = 0; k < m; ++k) {
    const double th = theta[k];
    out[k] = (th < quarter || th > 2.0 * std::numbers::pi - quarter) ? -1.0 : 1.0;
  }
  return out;
}

inline RVector phi2_samples(double eps, Index m) {
  const RVector theta = spectral::offset_grid(m);
  RVector out(m);
  for (Index k = 0; k < m; ++k) {
    const cplx z = std::polar(1.0, theta[k]);
    out[k] = std::pow(std::abs((z - kI) * (z + kI)), -eps);
  }
  return out;
}

inline CVector f_samples(double eps, Index m) {
  const OuterFactors o = outer_factors(eps, m);
  return o.F.cwiseProduct(o.H) + o.H.cwiseQuotient(o.F);
}

inline CVector phi_samples(double eps, Index m) {
  return phi1_samples(m).cwiseProduct(phi2_samples(eps, m)).cast<cplx>();
}

}  // namespace detail

// Taylor coefficients f_0..f_{dim-1} of f = FH + H/F.
inline FourierVector kernel_f_coeffs(const KernelParams& p, Index dim) {
  p.validate();
  if (dim < 1 || dim > p.coarsest_grid() / 4) {
    throw ConfigError("kernel_f_coeffs: dim must lie in [1, grid_m / 2^levels / 4]");
  }
  const double eps = p.eps;
  return FourierVector(extrapolated_coefficients(
      [eps](Index m) { return detail::f_samples(eps, m); }, p.grid_m, 0, dim - 1,
      0.5 * (1.0 - eps), p.refinement_levels));
}

// Fourier coefficients of phi for |k| <= dim_n.
inline LaurentVector kernel_phi_coeffs(const KernelParams& p) {
  p.validate();
  const double eps = p.eps;
  return LaurentVector(extrapolated_coefficients(
      [eps](Index m) { return detail::phi_samples(eps, m); }, p.grid_m, -p.dim_n, p.dim_n, eps,
      p.refinement_levels));
}

// Nonnegative Fourier coefficients 0..count-1 of phi2 * H; these tend to
// (1, 0, 0, ...).
inline FourierVector weighted_h_coeffs(const KernelParams& p, Index count) {
  p.validate();
  const double eps = p.eps;
  return FourierVector(extrapolated_coefficients(
      [eps](Index m) {
        return CVector(detail::phi2_samples(eps, m).cast<cplx>().cwiseProduct(
            detail::outer_factors(eps, m).H));
      },
      p.grid_m, 0, count - 1, 0.5 * eps, p.refinement_levels));
}

// |first trunc_k nonnegative coefficients of phi * g| / norm, for a
// function g given by its boundary samples with singularity order alpha
// of the product.
inline double kernel_residual_from_samples(const KernelParams& p, const GridSampler& g,
                                           double alpha, double norm) {
  const double eps = p.eps;
  const CVector c = extrapolated_coefficients(
      [&g, eps](Index m) { return CVector(detail::phi_samples(eps, m).cwiseProduct(g(m))); },
      p.grid_m, 0, p.trunc_k - 1, alpha, p.refinement_levels);
  return c.norm() / norm;
}

inline double kernel_residual(const KernelParams& p) {
  p.validate();
  const double eps = p.eps;
  const double norm = kernel_f_coeffs(p, p.dim_n).norm();
  return kernel_residual_from_samples(
      p, [eps](Index m) { return detail::f_samples(eps, m); }, 0.5 * (1.0 + eps), norm);
}

// Same residual with f replaced by an arbitrary polynomial g in H^2.
inline double kernel_residual_of(const KernelParams& p, const FourierVector& g) {
  p.validate();
  const CVector coeffs = g.coeffs();
  return kernel_residual_from_samples(
      p, [&coeffs](Index m) { return spectral::offset_grid_synthesis(coeffs, 0, m); }, p.eps,
      g.norm());
}

// Complex Gaussian vector of dimension dim_n with the given norm; the
// stream is derived from p.seed through raw mt19937_64 output so it is the
// same on every platform.
inline FourierVector random_control_vector(const KernelParams& p, double norm) {
  std::mt19937_64 gen(p.seed);
  auto uniform = [&gen] {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
  };
  CVector v(p.dim_n);
  for (Index n = 0; n < p.dim_n; ++n) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 2.0 * std::numbers::pi * uniform();
    v[n] = std::polar(r, a);
  }
  v *= norm / v.norm();
  return FourierVector(std::move(v));
}

struct KernelReport {
  KernelParams params;
  double residual = 0.0;
  double control_residual = 0.0;
  double f_norm = 0.0;
};

inline KernelReport kernel_report(const KernelParams& p) {
  KernelReport r;
  r.params = p;
  r.residual = kernel_residual(p);
  r.f_norm = kernel_f_coeffs(p, p.dim_n).norm();
  r.control_residual = kernel_residual_of(p, random_control_vector(p, r.f_norm));
  return r;
}

}  // namespace szego
