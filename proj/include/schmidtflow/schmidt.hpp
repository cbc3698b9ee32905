#pragma once

#include <string>
#include <vector>

#include "schmidtflow/dynamics.hpp"
#include "schmidtflow/exec.hpp"
#include "schmidtflow/gauge.hpp"
#include "schmidtflow/types.hpp"

namespace schmidtflow {

/// Schmidt decomposition of |Psi(t)>: coefficients plus the paired local
/// bases. basis1/basis2 are full square unitaries whose first
/// min(d1, d2) columns are the paired Schmidt vectors; later columns complete
/// the basis (needed because the effective generator sums over the whole
/// local basis) and are carried by continuity along a trajectory.
struct SchmidtFrame {
  double t = 0.0;
  RealVector lambda;  // length min(d1, d2), nonnegative
  Matrix basis1;      // d1 x d1
  Matrix basis2;      // d2 x d2

  std::vector<int> dark;       // paired branches with lambda <= dark threshold
  bool degenerate = false;     // a degenerate cluster was rotated at this step
  bool low_overlap = false;    // branch matching saw |<prev|cur>| < 1e-6

  Index paired() const { return lambda.size(); }

  Vector reconstruct() const;
  Matrix local_density(int k) const;
};

struct ContinuityStep {
  double min_overlap = 1.0;          // min_j |<phi_j(t_i)|phi_j(t_{i+1})>|
  std::vector<int> permutation;      // cur branch placed at prev slot j
  bool permuted = false;
};

struct SchmidtTrajectory {
  TimeGrid grid;
  BipartitionShape shape;
  std::string gauge_policy;
  std::vector<SchmidtFrame> frames;
  std::vector<ContinuityStep> continuity;  // size steps-1
};

inline constexpr double kDarkLambda = 1e-12;
inline constexpr double kDegenerateLambda = 1e-8;

/// Standalone decomposition: lambda descending, basis phases provisional.
SchmidtFrame decompose(const Vector& psi, const BipartitionShape& shape);

int schmidt_rank(const SchmidtFrame& frame, double tol = 1e-10);

/// Branch pairing between consecutive frames: returns the permutation pi with
/// pi[j] = branch of `cur` assigned to branch j of `prev`, maximizing
/// sum_j |<phi_{pi(j)}^1(cur)|phi_j^1(prev)>|^2 (exact assignment).
std::vector<int> match_branches(const SchmidtFrame& prev, const SchmidtFrame& cur);

/// Decompose every sample of a pure trajectory and align it into a smooth
/// Schmidt trajectory: branch matching, degenerate-subspace rotation,
/// dark-branch carry, then phase fixing per policy.
SchmidtTrajectory align_track(const PureTrajectory& traj, const BipartitionShape& shape,
                              const GaugePolicy& policy, const CompositeHamiltonian& ch,
                              const Exec& exec = {});

}  // namespace schmidtflow
