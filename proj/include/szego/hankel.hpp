#pragma once

// N x N sections of Hankel and Toeplitz operators on H^2 in the monomial
// basis. Symbols shorter than the matrix needs are zero-extended.

#include <string>

#include "szego/error.hpp"
#include "szego/hardy.hpp"
#include "szego/types.hpp"

namespace szego {

struct HankelMatrix {
  CMatrix entries;   // entries(j, k) = u_{j+k}
  Index source_dim;  // length of the symbol it was built from
};

struct ToeplitzMatrix {
  CMatrix entries;  // entries(j, k) = phi_{j-k}
};

namespace detail {
inline void require_positive_dim(Index n, const char* what) {
  if (n < 1) throw ConfigError(std::string(what) + ": N must be >= 1");
}
}  // namespace detail

// Gamma_u restricted to span{1, z, ..., z^{N-1}}.
inline HankelMatrix hankel(const FourierVector& u, Index n) {
  detail::require_positive_dim(n, "hankel");
  CMatrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) g(j, k) = u.coeff(j + k);
  }
  return {std::move(g), u.dim()};
}

// H_u^2 = Gamma_u Gamma_u^*.
inline CMatrix hankel_square(const FourierVector& u, Index n) {
  const CMatrix g = hankel(u, n).entries;
  return g * g.adjoint();
}

// H_{S^* u}^2, the second operator of the Lax pair.
inline CMatrix shifted_hankel_square(const FourierVector& u, Index n) {
  return hankel_square(shift_back(u), n);
}

// H_u f = P(u conj(f)): conjugate the coefficients of f, then apply Gamma_u.
inline FourierVector apply_antilinear_hankel(const FourierVector& u, const FourierVector& f,
                                             Index n) {
  return FourierVector(CVector(hankel(u, n).entries * f.resized(n).coeffs().conjugate()));
}

// T_phi restricted to span{1, z, ..., z^{N-1}}.
inline ToeplitzMatrix toeplitz(const LaurentVector& phi, Index n) {
  detail::require_positive_dim(n, "toeplitz");
  CMatrix t(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) t(j, k) = phi.coeff(j - k);
  }
  return {std::move(t)};
}

}  // namespace szego
