#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace schmidtflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Frobenius norm; the scale used for all relative tolerances in this library.
inline double mat_norm(const Matrix& m) { return m.norm(); }

/// Relative tolerance with an absolute floor of 1e-14.
inline double rel_tol(double scale, double rel) {
  const double t = rel * scale;
  return t > 1e-14 ? t : 1e-14;
}

inline double anti_hermitian_norm(const Matrix& m) {
  return 0.5 * (m - m.adjoint()).norm();
}

inline bool is_hermitian(const Matrix& m, double rel = 1e-10) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= rel_tol(m.norm(), rel);
}

/// Dimensions of a bipartite split H = H1 (x) H2.
struct BipartitionShape {
  Index d1 = 0;
  Index d2 = 0;

  Index total() const { return d1 * d2; }
  Index rank_bound() const { return d1 < d2 ? d1 : d2; }
  bool needs_swap() const { return d1 > d2; }
  BipartitionShape swapped() const { return {d2, d1}; }

  void validate() const {
    if (d1 < 1 || d2 < 1)
      throw std::invalid_argument("BipartitionShape: dimensions must be >= 1");
  }
};

/// Uniform sampling times t_i = t0 + i*dt, i = 0..steps-1.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;

  double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double t_end() const { return time(steps == 0 ? 0 : steps - 1); }

  void validate() const {
    if (dt <= 0.0) throw std::invalid_argument("TimeGrid: dt must be positive");
    if (steps < 1) throw std::invalid_argument("TimeGrid: needs at least one sample");
  }
};

}  // namespace schmidtflow
