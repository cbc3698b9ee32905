#include "schmidtflow/gauge.hpp"

#include <cmath>

#include "schmidtflow/dynamics.hpp"
#include "schmidtflow/hilbert.hpp"
#include "schmidtflow/numkernel.hpp"
#include "schmidtflow/schmidt.hpp"

namespace schmidtflow {

std::string GaugePolicy::name() const {
  switch (kind) {
    case Kind::Symmetric: return "symmetric";
    case Kind::ParallelTransport:
      return subsystem == 1 ? "parallel-transport-1" : "parallel-transport-2";
    case Kind::BareRotating:
      return subsystem == 1 ? "bare-rotating-1" : "bare-rotating-2";
    case Kind::LinearShift: return "linear-shift";
    case Kind::ExplicitPhases: return "explicit-phases";
  }
  return "unknown";
}

GaugePolicy GaugePolicy::parse(const std::string& name, double alpha) {
  GaugePolicy p;
  p.alpha = alpha;
  if (name == "symmetric") {
    p.kind = Kind::Symmetric;
  } else if (name == "parallel-transport-1" || name == "parallel-transport-2") {
    p.kind = Kind::ParallelTransport;
    p.subsystem = name.back() == '1' ? 1 : 2;
  } else if (name == "bare-rotating-1" || name == "bare-rotating-2") {
    p.kind = Kind::BareRotating;
    p.subsystem = name.back() == '1' ? 1 : 2;
  } else if (name == "linear-shift") {
    p.kind = Kind::LinearShift;
  } else if (name == "explicit-phases") {
    p.kind = Kind::ExplicitPhases;
  } else {
    throw std::invalid_argument("unknown gauge policy: " + name);
  }
  return p;
}

GaugeTransformation GaugeTransformation::linear(const TimeGrid& grid, Index branches,
                                                double alpha) {
  GaugeTransformation g;
  g.theta.resize(static_cast<Index>(grid.steps), branches);
  for (Index i = 0; i < g.theta.rows(); ++i)
    g.theta.row(i).setConstant(alpha * (grid.time(static_cast<std::size_t>(i)) - grid.t0));
  return g;
}

SchmidtTrajectory apply_gauge(const SchmidtTrajectory& st, const GaugeTransformation& g) {
  if (g.theta.rows() != static_cast<Index>(st.frames.size()))
    throw std::invalid_argument("apply_gauge: phase table does not match grid");
  if (!g.theta.allFinite())
    throw std::invalid_argument("apply_gauge: phases must be finite");

  SchmidtTrajectory out = st;
  for (std::size_t i = 0; i < out.frames.size(); ++i) {
    SchmidtFrame& f = out.frames[i];
    const Index nb = g.theta.cols();
    for (Index j = 0; j < f.basis1.cols(); ++j)
      if (j < nb) f.basis1.col(j) *= std::exp(kI * g.theta(static_cast<Index>(i), j));
    for (Index j = 0; j < f.basis2.cols(); ++j)
      if (j < nb) f.basis2.col(j) *= std::exp(-kI * g.theta(static_cast<Index>(i), j));
  }
  return out;
}

void fix_phase_step(const SchmidtFrame& prev, SchmidtFrame& cur, const GaugePolicy& policy,
                    const CompositeHamiltonian& ch, double dt) {
  const Index r = cur.paired();
  std::vector<bool> active(static_cast<std::size_t>(r), true);
  for (int j : cur.dark) active[static_cast<std::size_t>(j)] = false;

  // LinearShift and ExplicitPhases overlay on top of the Symmetric fix.
  GaugePolicy::Kind kind = policy.kind;
  if (kind == GaugePolicy::Kind::LinearShift || kind == GaugePolicy::Kind::ExplicitPhases)
    kind = GaugePolicy::Kind::Symmetric;

  Matrix u1_bare, u2_bare;
  if (kind == GaugePolicy::Kind::BareRotating) {
    u1_bare = unitary_exp(ch.h1, dt / ch.hbar);
    u2_bare = unitary_exp(ch.h2, dt / ch.hbar);
  }

  for (Index j = 0; j < r; ++j) {
    if (!active[static_cast<std::size_t>(j)]) continue;
    const Complex o1 = prev.basis1.col(j).dot(cur.basis1.col(j));
    const Complex o2 = prev.basis2.col(j).dot(cur.basis2.col(j));
    if (std::abs(o1) < 1e-6 || std::abs(o2) < 1e-6) cur.low_overlap = true;

    double chi = 0.0;
    switch (kind) {
      case GaugePolicy::Kind::ParallelTransport:
        chi = policy.subsystem == 1 ? -std::arg(o1) : std::arg(o2);
        break;
      case GaugePolicy::Kind::BareRotating: {
        if (policy.subsystem == 1) {
          const Complex b1 = (u1_bare * prev.basis1.col(j)).dot(cur.basis1.col(j));
          chi = -std::arg(b1);
        } else {
          const Complex b2 = (u2_bare * prev.basis2.col(j)).dot(cur.basis2.col(j));
          chi = std::arg(b2);
        }
        break;
      }
      case GaugePolicy::Kind::Symmetric:
      default: {
        // Equalize the interaction-induced diagonal phase velocities: the
        // diagonal parts of (Heff1 - H1) and (Heff2 - H2) in the Schmidt
        // basis agree branchwise.
        const double h1j = 0.5 * (prev.basis1.col(j).dot(ch.h1 * prev.basis1.col(j)).real() +
                                  cur.basis1.col(j).dot(ch.h1 * cur.basis1.col(j)).real());
        const double h2j = 0.5 * (prev.basis2.col(j).dot(ch.h2 * prev.basis2.col(j)).real() +
                                  cur.basis2.col(j).dot(ch.h2 * cur.basis2.col(j)).real());
        chi = -0.5 * (std::arg(o1) - std::arg(o2)) - 0.5 * dt * (h1j - h2j) / ch.hbar;
        break;
      }
    }
    cur.basis1.col(j) *= std::exp(kI * chi);
    cur.basis2.col(j) *= std::exp(-kI * chi);
  }
}

FrameOperators frame_operators(const SchmidtTrajectory& st, const GaugeTransformation& g,
                               std::size_t i) {
  if (i >= st.frames.size()) throw std::out_of_range("frame_operators: step out of range");
  if (g.theta.rows() != static_cast<Index>(st.frames.size()))
    throw std::invalid_argument("frame_operators: phase table does not match grid");
  const SchmidtFrame& f = st.frames[i];
  const Index d1 = f.basis1.rows(), d2 = f.basis2.rows();
  const Index nb = g.theta.cols();

  FrameOperators out;
  out.theta1 = Matrix::Zero(d1, d1);
  out.theta2 = Matrix::Zero(d2, d2);
  for (Index j = 0; j < d1; ++j) {
    const double th = j < nb ? g.theta(static_cast<Index>(i), j) : 0.0;
    out.theta1 += std::exp(kI * th) * f.basis1.col(j) * f.basis1.col(j).adjoint();
  }
  for (Index j = 0; j < d2; ++j) {
    const double th = j < nb ? g.theta(static_cast<Index>(i), j) : 0.0;
    out.theta2 += std::exp(-kI * th) * f.basis2.col(j) * f.basis2.col(j).adjoint();
  }
  out.theta0 = tensor(out.theta1, out.theta2);
  return out;
}

}  // namespace schmidtflow
