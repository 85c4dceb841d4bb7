#pragma once

// Truncated Hardy-space vectors on the unit circle.
//
// A FourierVector holds the one-sided coefficients u_0, ..., u_{N-1} of an
// element of H^2; everything beyond N is zero. A LaurentVector holds the
// two-sided coefficients u_{-K}, ..., u_K of a trigonometric polynomial,
// which is where products such as |u|^2 live before Szego projection.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "szego/error.hpp"
#include "szego/spectral.hpp"
#include "szego/types.hpp"

namespace szego {

namespace detail {

inline void require_finite(const CVector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw NumericalError(std::string(what) + ": non-finite coefficient at index " +
                           std::to_string(i));
    }
  }
}

}  // namespace detail

class FourierVector {
 public:
  explicit FourierVector(CVector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 1) throw ConfigError("FourierVector: dim must be >= 1");
    detail::require_finite(coeffs_, "FourierVector");
  }

  FourierVector(std::initializer_list<cplx> coeffs)
      : FourierVector(CVector(Eigen::Map<const CVector>(coeffs.begin(),
                                                        static_cast<Index>(coeffs.size())))) {}

  static FourierVector zero(Index dim) { return FourierVector(CVector::Zero(dim)); }

  Index dim() const { return coeffs_.size(); }
  const CVector& coeffs() const { return coeffs_; }

  // Coefficient n, with the implicit zero extension beyond dim.
  cplx coeff(Index n) const { return (n >= 0 && n < dim()) ? coeffs_[n] : cplx{}; }
  cplx operator[](Index n) const { return coeff(n); }

  // Zero-pads or truncates to the requested dimension.
  FourierVector resized(Index dim) const {
    CVector out = CVector::Zero(dim);
    const Index keep = std::min(dim, this->dim());
    out.head(keep) = coeffs_.head(keep);
    return FourierVector(std::move(out));
  }

  double norm() const { return coeffs_.norm(); }

  // Sum of |u_n|^2 over n >= from.
  double tail_mass(Index from) const {
    if (from >= dim()) return 0.0;
    return coeffs_.tail(dim() - std::max<Index>(from, 0)).squaredNorm();
  }

  friend FourierVector operator+(const FourierVector& a, const FourierVector& b) {
    const Index n = std::max(a.dim(), b.dim());
    return FourierVector(a.resized(n).coeffs_ + b.resized(n).coeffs_);
  }
  friend FourierVector operator-(const FourierVector& a, const FourierVector& b) {
    const Index n = std::max(a.dim(), b.dim());
    return FourierVector(a.resized(n).coeffs_ - b.resized(n).coeffs_);
  }
  friend FourierVector operator*(cplx s, const FourierVector& a) {
    return FourierVector(s * a.coeffs_);
  }

 private:
  CVector coeffs_;
};

class LaurentVector {
 public:
  // coeffs[j] is the coefficient of e^{i (j - K) theta}; size must be 2K+1.
  explicit LaurentVector(CVector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() % 2 != 1) {
      throw ConfigError("LaurentVector: coefficient count must be odd (2K+1)");
    }
    detail::require_finite(coeffs_, "LaurentVector");
  }

  static LaurentVector zero(Index halfwidth) {
    return LaurentVector(CVector::Zero(2 * halfwidth + 1));
  }

  // Builds from a sparse {index: value} description; halfwidth is the
  // largest |index|.
  static LaurentVector from_terms(std::initializer_list<std::pair<Index, cplx>> terms) {
    Index k = 0;
    for (const auto& [n, c] : terms) k = std::max(k, n < 0 ? -n : n);
    CVector v = CVector::Zero(2 * k + 1);
    for (const auto& [n, c] : terms) v[n + k] += c;
    return LaurentVector(std::move(v));
  }

  Index halfwidth() const { return (coeffs_.size() - 1) / 2; }
  const CVector& coeffs() const { return coeffs_; }

  cplx coeff(Index n) const {
    const Index k = halfwidth();
    return (n >= -k && n <= k) ? coeffs_[n + k] : cplx{};
  }
  cplx operator[](Index n) const { return coeff(n); }

 private:
  CVector coeffs_;
};

// The constant function 1.
inline FourierVector one(Index dim) {
  if (dim < 1) throw ConfigError("one: dim must be >= 1");
  CVector v = CVector::Zero(dim);
  v[0] = 1.0;
  return FourierVector(std::move(v));
}

// <f, g> = sum f_n conj(g_n); the shorter vector is zero-padded.
inline cplx inner(const FourierVector& f, const FourierVector& g) {
  const Index n = std::min(f.dim(), g.dim());
  // Eigen's dot conjugates its first argument.
  return g.coeffs().head(n).dot(f.coeffs().head(n));
}

// u^sharp: complex conjugation of every Fourier coefficient.
inline FourierVector sharp(const FourierVector& f) { return FourierVector(f.coeffs().conjugate()); }

// Multiplication by z. The dimension grows by one so nothing is lost.
inline FourierVector shift_fwd(const FourierVector& f) {
  CVector v(f.dim() + 1);
  v[0] = 0.0;
  v.tail(f.dim()) = f.coeffs();
  return FourierVector(std::move(v));
}

// Adjoint of the shift: drops coefficient 0. A dim-1 input maps to the
// zero vector of dim 1.
inline FourierVector shift_back(const FourierVector& f) {
  if (f.dim() == 1) return FourierVector::zero(1);
  return FourierVector(CVector(f.coeffs().tail(f.dim() - 1)));
}

inline LaurentVector to_laurent(const FourierVector& f) {
  const Index k = f.dim() - 1;
  CVector v = CVector::Zero(2 * k + 1);
  v.tail(f.dim()) = f.coeffs();
  return LaurentVector(std::move(v));
}

// The boundary function conj(f(e^{i theta})): coefficient -n is conj(f_n).
inline LaurentVector conj_reflect(const FourierVector& f) {
  const Index k = f.dim() - 1;
  CVector v = CVector::Zero(2 * k + 1);
  for (Index n = 0; n < f.dim(); ++n) v[k - n] = std::conj(f.coeffs()[n]);
  return LaurentVector(std::move(v));
}

// Szego projection: keep modes 0..dim-1.
inline FourierVector szego_project(const LaurentVector& w, Index dim) {
  if (dim < 1) throw ConfigError("szego_project: dim must be >= 1");
  CVector v(dim);
  for (Index n = 0; n < dim; ++n) v[n] = w.coeff(n);
  return FourierVector(std::move(v));
}

// W^{s,2} norm with weight max(1, n) on mode n.
inline double sobolev_norm(const FourierVector& f, double s) {
  double acc = 0.0;
  for (Index n = 0; n < f.dim(); ++n) {
    const double w = n == 0 ? 1.0 : static_cast<double>(n);
    acc += std::pow(w, 2.0 * s) * std::norm(f.coeffs()[n]);
  }
  return std::sqrt(acc);
}

// f(e^{2 pi i k / M}) for k = 0..M-1.
inline CVector boundary_samples(const FourierVector& f, Index m) {
  if (!spectral::is_power_of_two(m)) {
    throw ConfigError("boundary_samples: M must be a power of two, got " + std::to_string(m));
  }
  if (m < f.dim()) {
    throw ConfigError("boundary_samples: M=" + std::to_string(m) + " is smaller than dim=" +
                      std::to_string(f.dim()));
  }
  CVector padded = CVector::Zero(m);
  padded.head(f.dim()) = f.coeffs();
  return spectral::backward(padded);
}

// (mean over the M-point grid of |f|^p)^{1/p}.
inline double lp_boundary_norm(const FourierVector& f, double p, Index m) {
  if (!(p > 0.0)) throw ConfigError("lp_boundary_norm: p must be positive");
  const CVector samples = boundary_samples(f, m);
  double acc = 0.0;
  for (Index k = 0; k < m; ++k) acc += std::pow(std::abs(samples[k]), p);
  return std::pow(acc / static_cast<double>(m), 1.0 / p);
}

// Exact product of two trigonometric polynomials (no aliasing).
inline LaurentVector laurent_product(const LaurentVector& a, const LaurentVector& b) {
  const Index la = a.coeffs().size();
  const Index lb = b.coeffs().size();
  const Index lout = la + lb - 1;
  const Index m = spectral::next_power_of_two(la + lb);
  CVector pa = CVector::Zero(m);
  CVector pb = CVector::Zero(m);
  pa.head(la) = a.coeffs();
  pb.head(lb) = b.coeffs();
  const CVector fa = spectral::forward(pa);
  const CVector fb = spectral::forward(pb);
  const CVector prod = spectral::backward(CVector(fa.cwiseProduct(fb))) / static_cast<double>(m);
  return LaurentVector(CVector(prod.head(lout)));
}

inline LaurentVector laurent_product(const FourierVector& a, const FourierVector& b) {
  return laurent_product(to_laurent(a), to_laurent(b));
}
inline LaurentVector laurent_product(const LaurentVector& a, const FourierVector& b) {
  return laurent_product(a, to_laurent(b));
}
inline LaurentVector laurent_product(const FourierVector& a, const LaurentVector& b) {
  return laurent_product(to_laurent(a), b);
}

// |u|^2 on the circle as a Laurent polynomial.
inline LaurentVector modulus_squared(const FourierVector& u) {
  return laurent_product(to_laurent(u), conj_reflect(u));
}

}  // namespace szego
