#pragma once

// Spectral resolution of Hermitian matrices, and the functions of H^2 built
// on it (unitary groups and resolvents).

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "szego/error.hpp"
#include "szego/types.hpp"

namespace szego {

struct HermitianEig {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns, orthonormal
};

inline HermitianEig eigh(const CMatrix& a) {
  if (a.rows() != a.cols()) throw ConfigError("eigh: matrix must be square");
  if (!a.allFinite()) throw NumericalError("eigh: non-finite matrix entry");
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Eigenvalues of a Gram matrix, with round-off negatives clamped to zero.
// Anything below -1e-12 (relative to the spectral radius, floor 1) is not
// round-off and is rejected.
inline RVector gram_eigenvalues(const HermitianEig& e) {
  const double scale =
      std::max(1.0, e.eigenvalues.size() ? e.eigenvalues.cwiseAbs().maxCoeff() : 0.0);
  RVector lam = e.eigenvalues;
  for (Index k = 0; k < lam.size(); ++k) {
    if (lam[k] < -1e-12 * scale) {
      throw NumericalError("gram_eigenvalues: eigenvalue " + std::to_string(lam[k]) +
                           " is negative beyond tolerance");
    }
    lam[k] = std::max(lam[k], 0.0);
  }
  return lam;
}

// V diag(e^{i s lambda_k}) V^H.
inline CMatrix propagator(const HermitianEig& e, double s) {
  CVector phases(e.eigenvalues.size());
  for (Index k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, s * e.eigenvalues[k]);
  return e.eigenvectors * phases.asDiagonal() * e.eigenvectors.adjoint();
}

// (I + x A)^{-1} v for a Gram matrix A with spectral data e.
inline CVector resolvent_apply(const HermitianEig& e, double x, const CVector& v) {
  if (!(x >= 0.0)) throw ConfigError("resolvent_apply: x must be >= 0");
  if (v.size() != e.eigenvectors.rows()) throw ConfigError("resolvent_apply: size mismatch");
  const RVector lam = gram_eigenvalues(e);
  CVector proj = e.eigenvectors.adjoint() * v;
  for (Index k = 0; k < proj.size(); ++k) proj[k] /= (1.0 + x * lam[k]);
  return e.eigenvectors * proj;
}

}  // namespace szego
