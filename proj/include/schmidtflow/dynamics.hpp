#pragma once

#include <vector>

#include "schmidtflow/exec.hpp"
#include "schmidtflow/types.hpp"

namespace schmidtflow {

/// Autonomous bipartite system: H0 = H1 (x) 1 + 1 (x) H2 + Hint, all blocks
/// time-independent.
struct CompositeHamiltonian {
  BipartitionShape shape;
  Matrix h1;
  Matrix h2;
  Matrix hint;
  double hbar = 1.0;

  void validate() const;
  Matrix total() const;

  /// H1 (x) 1 and 1 (x) H2 lifted to the product space.
  Matrix h1_lifted() const;
  Matrix h2_lifted() const;
};

Matrix assemble_total(const CompositeHamiltonian& ch);

struct PureTrajectory {
  TimeGrid grid;
  std::vector<Vector> states;
};

/// Exact evolution under H0 by repeated application of the single-step
/// unitary U(dt) = exp(-i H0 dt / hbar).
PureTrajectory propagate_pure(const CompositeHamiltonian& ch, const Vector& psi0,
                              const TimeGrid& grid);

std::vector<Matrix> evolve_density(const CompositeHamiltonian& ch, const Matrix& rho0,
                                   const TimeGrid& grid);

/// Local state series tr_{2}(rho0(t)), tr_{1}(rho0(t)) of a pure trajectory.
struct LocalStateSeries {
  std::vector<Matrix> rho1;
  std::vector<Matrix> rho2;
};

LocalStateSeries local_states(const PureTrajectory& traj, const BipartitionShape& shape,
                              const Exec& exec = {});

struct KrausCheck {
  double reconstruction_residual = 0.0;
  double completeness_residual = 0.0;
};

/// Operator-sum cross-check for an initially uncorrelated state
/// rho0 = rho1 (x) rho2. Builds Kraus operators from the spectral
/// decomposition of rho2(t0) and compares the reconstructed rho1(t) at
/// grid sample t_index against the partial trace of the exactly evolved
/// global state.
KrausCheck kraus_check(const CompositeHamiltonian& ch, const Matrix& rho1,
                       const Matrix& rho2, const TimeGrid& grid, std::size_t t_index);

}  // namespace schmidtflow
