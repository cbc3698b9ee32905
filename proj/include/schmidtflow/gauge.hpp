#pragma once

#include <string>
#include <vector>

#include "schmidtflow/types.hpp"

namespace schmidtflow {

struct SchmidtFrame;
struct SchmidtTrajectory;
struct CompositeHamiltonian;

/// Rule fixing the per-branch phase freedom of a Schmidt trajectory.
///
/// Symmetric is the default physical choice: both subsystems carry equal
/// interaction-induced diagonal phase velocities, so the bare gauge is
/// recovered when Hint -> 0. ParallelTransport and BareRotating are kept as
/// reference gauges; LinearShift overlays theta_j(t) = alpha (t - t0) on top
/// of Symmetric; ExplicitPhases overlays a tabulated theta_j(t_i).
struct GaugePolicy {
  enum class Kind { Symmetric, ParallelTransport, BareRotating, LinearShift, ExplicitPhases };

  Kind kind = Kind::Symmetric;
  int subsystem = 1;     // ParallelTransport / BareRotating target
  double alpha = 0.0;    // LinearShift angular frequency
  Eigen::MatrixXd table; // ExplicitPhases: steps x branches, radians

  std::string name() const;
  static GaugePolicy parse(const std::string& name, double alpha = 0.0);
};

/// Per-branch, per-time phases theta_j(t_i); applied as
/// |phi_j^1> -> e^{i theta}|phi_j^1>, |phi_j^2> -> e^{-i theta}|phi_j^2>.
struct GaugeTransformation {
  Eigen::MatrixXd theta;  // steps x branches

  static GaugeTransformation linear(const TimeGrid& grid, Index branches, double alpha);
};

SchmidtTrajectory apply_gauge(const SchmidtTrajectory& st, const GaugeTransformation& g);

/// Phase the already branch-matched frame `cur` against `prev` per policy.
/// `paired` is the number of coefficient-carrying branches; columns beyond it
/// keep their carried phases.
void fix_phase_step(const SchmidtFrame& prev, SchmidtFrame& cur, const GaugePolicy& policy,
                    const CompositeHamiltonian& ch, double dt);

/// Diagonal-in-Schmidt-basis frame-change unitaries at one step:
/// Theta1, Theta2 and Theta0 = Theta1 (x) Theta2.
struct FrameOperators {
  Matrix theta1;
  Matrix theta2;
  Matrix theta0;
};

FrameOperators frame_operators(const SchmidtTrajectory& st, const GaugeTransformation& g,
                               std::size_t i);

}  // namespace schmidtflow
