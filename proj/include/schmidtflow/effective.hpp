#pragma once

#include <utility>
#include <vector>

#include "schmidtflow/dynamics.hpp"
#include "schmidtflow/exec.hpp"
#include "schmidtflow/schmidt.hpp"

namespace schmidtflow {

/// Time series of local effective Hamiltonians and their bare / Lamb-shift /
/// cross split. Endpoints are built from one-sided second-order stencils and
/// flagged through boundary.
struct EffectiveSeries {
  TimeGrid grid;
  std::vector<Matrix> h_eff_1, h_eff_2;
  std::vector<Matrix> h_ls_1, h_x_1, h_ls_2, h_x_2;
  std::vector<double> antihermitian_residual_1, antihermitian_residual_2;
  std::vector<bool> boundary;
};

/// i hbar * sum_j (d/dt |phi_j>)<phi_j| over the full local basis, central
/// differences at interior index i, symmetrized (A + A^dagger)/2. The dropped
/// anti-Hermitian norm is reported through `residual` when non-null.
Matrix effective_hamiltonian(const SchmidtTrajectory& st, int k, std::size_t i, double hbar,
                             double* residual = nullptr);

/// H_eff = H_bare + H_LS + H_X with H_LS diagonal in the bare eigenbasis and
/// H_X the off-diagonal remainder.
std::pair<Matrix, Matrix> split_components(const Matrix& h_eff, const Matrix& h_bare);

EffectiveSeries build_effective_series(const SchmidtTrajectory& st,
                                       const CompositeHamiltonian& ch, const Exec& exec = {});

/// Residuals of the two exact local dynamical equations at interior step i:
/// first the bare-commutator form with the traced interaction term, then the
/// effective-Hamiltonian form with the population term.
std::pair<double, double> master_residuals(const CompositeHamiltonian& ch,
                                           const SchmidtTrajectory& st,
                                           const PureTrajectory& traj, int k, std::size_t i);

struct LindbladResult {
  Matrix dissipator;
  std::vector<int> excluded;  // branches beta with lambda_beta^2 <= eps
};

LindbladResult lindblad_assembly(const SchmidtTrajectory& st, int k, std::size_t i,
                                 double hbar, double eps = 1e-10);

/// Population term of the effective-Hamiltonian master equation,
/// i hbar sum_j d(lambda_j^2)/dt |phi_j><phi_j|; the dissipator's oracle.
Matrix population_term(const SchmidtTrajectory& st, int k, std::size_t i, double hbar);

/// <phi_j^1 phi_j^2| Hint |phi_m^1 phi_m^2>; small off-diagonals predict
/// nearly constant coefficients.
Matrix coupling_diagnostic(const SchmidtTrajectory& st, const CompositeHamiltonian& ch,
                           std::size_t i);

/// Mean-field reference H^k + tr_kbar{Hint (1 (x) rho^kbar)} and the distance
/// of the effective Hamiltonian from it.
std::pair<Matrix, double> semiclassical_reference(const SchmidtTrajectory& st,
                                                  const CompositeHamiltonian& ch,
                                                  const Matrix& h_eff, int k, std::size_t i);

}  // namespace schmidtflow
