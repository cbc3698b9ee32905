#pragma once

#include "schmidtflow/types.hpp"

namespace schmidtflow {

/// Spectral decomposition of a Hermitian matrix.
struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary; column j pairs with eigenvalues[j]
};

/// Singular value decomposition A = left * diag(singular) * right^dagger.
/// left is d1 x r, right is d2 x r with r = min(d1, d2); singular values
/// are nonnegative and descending.
struct SvdResult {
  Matrix left;
  RealVector singular;
  Matrix right;
};

/// Like SvdResult but with square unitary factors; columns beyond r span
/// the orthogonal complements (completion basis is solver-dependent).
struct SvdFull {
  Matrix left;
  RealVector singular;
  Matrix right;
};

HermitianEig hermitian_eig(const Matrix& m);

SvdResult svd(const Matrix& a);
SvdFull svd_full(const Matrix& a);

/// exp(-i * s * H) for Hermitian H, via the spectral decomposition.
Matrix unitary_exp(const Matrix& h, double s);

}  // namespace schmidtflow
