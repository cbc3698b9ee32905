#pragma once

#include <array>
#include <string>
#include <vector>

#include "schmidtflow/dynamics.hpp"
#include "schmidtflow/effective.hpp"
#include "schmidtflow/exec.hpp"
#include "schmidtflow/schmidt.hpp"

namespace schmidtflow {

/// Internal-energy bookkeeping along one trajectory. u0 is the conserved
/// global value; all other columns are per-sample series.
struct EnergyLedger {
  TimeGrid grid;
  double u0 = 0.0;
  std::vector<double> u0_series;
  std::array<std::vector<double>, 2> u_eff;   // <Heff_k>
  std::array<std::vector<double>, 2> bare;    // <H_k>
  std::vector<double> hint;                   // <Hint>
  std::array<std::vector<double>, 2> ls;      // <H_LS_k>
  std::array<std::vector<double>, 2> x;       // <H_X_k>
  std::vector<double> additivity_residual;    // u_eff1 + u_eff2 - u0
};

EnergyLedger energies(const SchmidtTrajectory& st, const EffectiveSeries& es,
                      const CompositeHamiltonian& ch, const Exec& exec = {});

struct SecCheck {
  double commutator_norm = 0.0;
  bool is_sec = false;
};

/// Norm of [Hint, H1 (x) 1 + 1 (x) H2]; zero means the interaction energy is
/// a constant of motion.
SecCheck sec_check(const CompositeHamiltonian& ch);

/// One work/heat definition evaluated along a trajectory. Fluxes are reported
/// on the grid (central differences of the cumulative series); cumulative
/// columns are prefix sums of the exact per-interval increments, so each
/// ledger closes its own first law to machine precision.
struct FluxLedger {
  std::string definition;
  TimeGrid grid;
  std::array<std::vector<double>, 2> dw, dq;  // per subsystem, per sample
  std::array<std::vector<double>, 2> w, q;    // cumulative
  std::array<std::vector<double>, 2> u;       // the definition's own U series
};

FluxLedger work_heat_bare_alicki(const LocalStateSeries& locals,
                                 const CompositeHamiltonian& ch, const TimeGrid& grid);
FluxLedger work_heat_bare_spectral(const LocalStateSeries& locals,
                                   const CompositeHamiltonian& ch, const TimeGrid& grid);
FluxLedger work_heat_bare_eigenensemble(const SchmidtTrajectory& st,
                                        const CompositeHamiltonian& ch);

/// Effective Alicki-like split; `identity_residual` reports the largest
/// cumulative distance from the eigen-ensemble form evaluated with the
/// effective Hamiltonian (the two are the same quantity in exact arithmetic).
FluxLedger work_heat_effective_alicki(const EffectiveSeries& es, const SchmidtTrajectory& st,
                                      double* identity_residual = nullptr);

/// Effective spectral split; eigenvalue branches of Heff are
/// continuity-tracked across steps. Heat is the first-law remainder.
FluxLedger work_heat_effective_spectral(const EffectiveSeries& es, const SchmidtTrajectory& st,
                                        std::vector<bool>* flagged_steps = nullptr);

/// Eigen-ensemble split evaluated with the effective Hamiltonian; used as the
/// identity oracle for the effective Alicki-like ledger.
FluxLedger work_heat_effective_eigenensemble(const EffectiveSeries& es,
                                             const SchmidtTrajectory& st);

/// Tracked spectral series of the effective Hamiltonians (for CSV output):
/// eigenvalues follow continuous branches across steps.
struct EffectiveSpectrum {
  std::array<std::vector<RealVector>, 2> eigenvalues;
};
EffectiveSpectrum effective_spectrum(const EffectiveSeries& es);

struct EntropySeries {
  TimeGrid grid;
  std::vector<double> svn_1, svn_2, purity_1, purity_2, mutual_information;
};

EntropySeries entropy_series(const SchmidtTrajectory& st, const Exec& exec = {});

}  // namespace schmidtflow
