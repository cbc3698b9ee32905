#pragma once

#include "schmidtflow/types.hpp"

namespace schmidtflow {

// --- constructors -----------------------------------------------------------

Matrix pauli(char axis);  // 'x', 'y' or 'z'
Vector basis_ket(Index dim, Index index);
Matrix identity(Index dim);

/// |psi><psi|
Matrix projector(const Vector& psi);

// --- tensor algebra ---------------------------------------------------------

Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

/// Reshape a bipartite ket into the d1 x d2 coefficient matrix a_{jk},
/// psi = sum_{jk} a_{jk} |j>|k>.
Matrix ket_to_matrix(const Vector& psi, const BipartitionShape& shape);
Vector matrix_to_ket(const Matrix& a);

Matrix partial_trace(const Matrix& rho, const BipartitionShape& shape, int keep);

// --- states and functionals -------------------------------------------------

/// Throws when rho fails Hermiticity, unit trace or positivity (eigenvalues
/// below -1e-10 relative) checks.
void validate_density(const Matrix& rho);

Complex expectation(const Matrix& op, const Matrix& rho);
Complex expectation(const Matrix& op, const Vector& psi);

double purity(const Matrix& rho);

/// -tr(rho ln rho) with natural log and k_B = 1. Eigenvalues in [-1e-10, 0)
/// are clamped to zero; anything more negative is rejected.
double vn_entropy(const Matrix& rho);

double mutual_information(const Matrix& rho0, const BipartitionShape& shape);

}  // namespace schmidtflow
