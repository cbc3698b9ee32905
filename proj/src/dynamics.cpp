#include "schmidtflow/dynamics.hpp"

#include "schmidtflow/hilbert.hpp"
#include "schmidtflow/numkernel.hpp"

namespace schmidtflow {

void CompositeHamiltonian::validate() const {
  shape.validate();
  if (hbar <= 0.0) throw std::invalid_argument("CompositeHamiltonian: hbar must be positive");
  if (h1.rows() != shape.d1 || h1.cols() != shape.d1)
    throw std::invalid_argument("CompositeHamiltonian: H1 has wrong dimension");
  if (h2.rows() != shape.d2 || h2.cols() != shape.d2)
    throw std::invalid_argument("CompositeHamiltonian: H2 has wrong dimension");
  if (hint.rows() != shape.total() || hint.cols() != shape.total())
    throw std::invalid_argument("CompositeHamiltonian: Hint has wrong dimension");
  if (!is_hermitian(h1) || !is_hermitian(h2) || !is_hermitian(hint))
    throw std::invalid_argument("CompositeHamiltonian: blocks must be Hermitian");
}

Matrix CompositeHamiltonian::h1_lifted() const { return tensor(h1, identity(shape.d2)); }
Matrix CompositeHamiltonian::h2_lifted() const { return tensor(identity(shape.d1), h2); }

Matrix CompositeHamiltonian::total() const {
  return h1_lifted() + h2_lifted() + hint;
}

Matrix assemble_total(const CompositeHamiltonian& ch) {
  ch.validate();
  return ch.total();
}

PureTrajectory propagate_pure(const CompositeHamiltonian& ch, const Vector& psi0,
                              const TimeGrid& grid) {
  ch.validate();
  grid.validate();
  if (psi0.size() != ch.shape.total())
    throw std::invalid_argument("propagate_pure: initial ket has wrong dimension");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("propagate_pure: initial ket is not normalized");

  PureTrajectory traj;
  traj.grid = grid;
  traj.states.reserve(grid.steps);
  traj.states.push_back(psi0);
  if (grid.steps > 1) {
    const Matrix u_step = unitary_exp(ch.total(), grid.dt / ch.hbar);
    for (std::size_t i = 1; i < grid.steps; ++i)
      traj.states.push_back(u_step * traj.states.back());
  }
  return traj;
}

std::vector<Matrix> evolve_density(const CompositeHamiltonian& ch, const Matrix& rho0,
                                   const TimeGrid& grid) {
  ch.validate();
  grid.validate();
  validate_density(rho0);
  if (rho0.rows() != ch.shape.total())
    throw std::invalid_argument("evolve_density: state has wrong dimension");

  std::vector<Matrix> out;
  out.reserve(grid.steps);
  out.push_back(rho0);
  if (grid.steps > 1) {
    const Matrix u_step = unitary_exp(ch.total(), grid.dt / ch.hbar);
    for (std::size_t i = 1; i < grid.steps; ++i)
      out.push_back(u_step * out.back() * u_step.adjoint());
  }
  return out;
}

LocalStateSeries local_states(const PureTrajectory& traj, const BipartitionShape& shape,
                              const Exec& exec) {
  LocalStateSeries out;
  out.rho1.resize(traj.states.size());
  out.rho2.resize(traj.states.size());
  for_each_index(traj.states.size(), exec, [&](std::size_t i) {
    const Matrix rho0 = projector(traj.states[i]);
    out.rho1[i] = partial_trace(rho0, shape, 1);
    out.rho2[i] = partial_trace(rho0, shape, 2);
  });
  return out;
}

KrausCheck kraus_check(const CompositeHamiltonian& ch, const Matrix& rho1,
                       const Matrix& rho2, const TimeGrid& grid, std::size_t t_index) {
  ch.validate();
  grid.validate();
  validate_density(rho1);
  validate_density(rho2);
  if (rho1.rows() != ch.shape.d1 || rho2.rows() != ch.shape.d2)
    throw std::invalid_argument("kraus_check: local state dimensions do not match shape");
  if (t_index >= grid.steps) throw std::out_of_range("kraus_check: t_index beyond grid");

  const Index d1 = ch.shape.d1, d2 = ch.shape.d2;
  const double t = grid.time(t_index) - grid.t0;
  const Matrix u = unitary_exp(ch.total(), t / ch.hbar);

  const HermitianEig env = hermitian_eig(rho2);

  // K_{beta alpha} = sqrt(p_alpha) <phi_beta| U |phi_alpha>, an operator on
  // subsystem 1.
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d2 * d2));
  for (Index alpha = 0; alpha < d2; ++alpha) {
    const double p = env.eigenvalues[alpha] < 0.0 ? 0.0 : env.eigenvalues[alpha];
    const Vector phi_a = env.eigenvectors.col(alpha);
    for (Index beta = 0; beta < d2; ++beta) {
      const Vector phi_b = env.eigenvectors.col(beta);
      Matrix k(d1, d1);
      for (Index m = 0; m < d1; ++m)
        for (Index n = 0; n < d1; ++n) {
          Complex elem = 0.0;
          for (Index r = 0; r < d2; ++r)
            for (Index s = 0; s < d2; ++s)
              elem += std::conj(phi_b[r]) * u(m * d2 + r, n * d2 + s) * phi_a[s];
          k(m, n) = std::sqrt(p) * elem;
        }
      kraus.push_back(k);
    }
  }

  Matrix completeness = Matrix::Zero(d1, d1);
  Matrix reconstructed = Matrix::Zero(d1, d1);
  for (const Matrix& k : kraus) {
    completeness += k.adjoint() * k;
    reconstructed += k * rho1 * k.adjoint();
  }

  const Matrix rho0_t = u * tensor(rho1, rho2) * u.adjoint();
  const Matrix rho1_t = partial_trace(rho0_t, ch.shape, 1);

  KrausCheck out;
  out.completeness_residual = (completeness - identity(d1)).norm();
  out.reconstruction_residual = (reconstructed - rho1_t).norm();
  return out;
}

}  // namespace schmidtflow
