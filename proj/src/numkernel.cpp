#include "schmidtflow/numkernel.hpp"

#include <sstream>

namespace schmidtflow {

HermitianEig hermitian_eig(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  const double anti = anti_hermitian_norm(m);
  if (2.0 * anti > rel_tol(m.norm(), 1e-10)) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian, ||M - M^dagger|| = " << 2.0 * anti;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SvdResult svd(const Matrix& a) {
  if (a.size() == 0) throw std::invalid_argument("svd: empty matrix");
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

SvdFull svd_full(const Matrix& a) {
  if (a.size() == 0) throw std::invalid_argument("svd_full: empty matrix");
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix unitary_exp(const Matrix& h, double s) {
  const HermitianEig eig = hermitian_eig(h);
  Vector phases(eig.eigenvalues.size());
  for (Index j = 0; j < phases.size(); ++j)
    phases[j] = std::exp(-kI * s * eig.eigenvalues[j]);
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace schmidtflow
