#include "schmidtflow/hilbert.hpp"

#include <cmath>
#include <sstream>

#include "schmidtflow/numkernel.hpp"

namespace schmidtflow {

Matrix pauli(char axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -kI, kI, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: axis must be 'x', 'y' or 'z'");
  }
  return m;
}

Vector basis_ket(Index dim, Index index) {
  if (index < 0 || index >= dim)
    throw std::out_of_range("basis_ket: index out of range");
  Vector v = Vector::Zero(dim);
  v[index] = 1.0;
  return v;
}

Matrix identity(Index dim) { return Matrix::Identity(dim, dim); }

Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Matrix ket_to_matrix(const Vector& psi, const BipartitionShape& shape) {
  shape.validate();
  if (psi.size() != shape.total())
    throw std::invalid_argument("ket_to_matrix: ket dimension does not match shape");
  Matrix a(shape.d1, shape.d2);
  for (Index j = 0; j < shape.d1; ++j)
    for (Index k = 0; k < shape.d2; ++k)
      a(j, k) = psi[j * shape.d2 + k];
  return a;
}

Vector matrix_to_ket(const Matrix& a) {
  Vector psi(a.rows() * a.cols());
  for (Index j = 0; j < a.rows(); ++j)
    for (Index k = 0; k < a.cols(); ++k)
      psi[j * a.cols() + k] = a(j, k);
  return psi;
}

Matrix partial_trace(const Matrix& rho, const BipartitionShape& shape, int keep) {
  shape.validate();
  if (rho.rows() != shape.total() || rho.cols() != shape.total())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep != 1 && keep != 2)
    throw std::invalid_argument("partial_trace: keep must be 1 or 2");
  const Index d1 = shape.d1, d2 = shape.d2;
  if (keep == 1) {
    Matrix out = Matrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j)
        for (Index k = 0; k < d2; ++k)
          out(i, j) += rho(i * d2 + k, j * d2 + k);
    return out;
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (Index i = 0; i < d2; ++i)
    for (Index j = 0; j < d2; ++j)
      for (Index k = 0; k < d1; ++k)
        out(i, j) += rho(k * d2 + i, k * d2 + j);
  return out;
}

void validate_density(const Matrix& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix must be square");
  const double scale = rho.norm();
  if ((rho - rho.adjoint()).norm() > rel_tol(scale, 1e-10))
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("density matrix trace differs from 1");
  const HermitianEig eig = hermitian_eig(0.5 * (rho + rho.adjoint()));
  if (eig.eigenvalues.minCoeff() < -1e-10) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << eig.eigenvalues.minCoeff();
    throw std::invalid_argument(msg.str());
  }
}

Complex expectation(const Matrix& op, const Matrix& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  return (op * rho).trace();
}

Complex expectation(const Matrix& op, const Vector& psi) {
  if (op.cols() != psi.size())
    throw std::invalid_argument("expectation: dimension mismatch");
  return psi.dot(op * psi);
}

double purity(const Matrix& rho) {
  return (rho * rho).trace().real();
}

double vn_entropy(const Matrix& rho) {
  validate_density(rho);
  const HermitianEig eig = hermitian_eig(0.5 * (rho + rho.adjoint()));
  double s = 0.0;
  for (Index j = 0; j < eig.eigenvalues.size(); ++j) {
    const double p = eig.eigenvalues[j];
    if (p <= 1e-14) continue;  // 0 ln 0 := 0
    s -= p * std::log(p);
  }
  return s;
}

double mutual_information(const Matrix& rho0, const BipartitionShape& shape) {
  const double s1 = vn_entropy(partial_trace(rho0, shape, 1));
  const double s2 = vn_entropy(partial_trace(rho0, shape, 2));
  const double s0 = vn_entropy(rho0);
  return s1 + s2 - s0;
}

}  // namespace schmidtflow
