#include "schmidtflow/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "schmidtflow/hilbert.hpp"
#include "schmidtflow/numkernel.hpp"

namespace schmidtflow {

namespace {

// Assignment maximizing sum of weights, O(n^3) potentials method.
// Returns row -> column.
std::vector<int> max_assignment(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -w(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

// Largest-magnitude amplitude (lowest index on ties) made real positive.
void anchor_column(Matrix& basis, Index col, Matrix* partner = nullptr) {
  Index best = 0;
  double best_mag = -1.0;
  for (Index i = 0; i < basis.rows(); ++i) {
    const double mag = std::abs(basis(i, col));
    if (mag > best_mag + 1e-15) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  const Complex ph = std::exp(-kI * std::arg(basis(best, col)));
  basis.col(col) *= ph;
  if (partner && col < partner->cols()) partner->col(col) *= std::conj(ph);
}

SchmidtFrame raw_decompose(const Vector& psi, const BipartitionShape& shape, double t) {
  const Matrix a = ket_to_matrix(psi, shape);
  const SvdFull f = svd_full(a);
  SchmidtFrame frame;
  frame.t = t;
  frame.lambda = f.singular;
  frame.basis1 = f.left;
  frame.basis2 = f.right.conjugate();
  for (Index j = 0; j < frame.lambda.size(); ++j)
    if (frame.lambda[j] <= kDarkLambda) frame.dark.push_back(static_cast<int>(j));
  return frame;
}

void apply_permutation(SchmidtFrame& frame, const std::vector<int>& perm) {
  const Index r = frame.paired();
  RealVector lambda(r);
  Matrix b1 = frame.basis1, b2 = frame.basis2;
  for (Index j = 0; j < r; ++j) {
    lambda[j] = frame.lambda[perm[j]];
    b1.col(j) = frame.basis1.col(perm[j]);
    b2.col(j) = frame.basis2.col(perm[j]);
  }
  frame.lambda = lambda;
  frame.basis1 = b1;
  frame.basis2 = b2;
  frame.dark.clear();
  for (Index j = 0; j < r; ++j)
    if (frame.lambda[j] <= kDarkLambda) frame.dark.push_back(static_cast<int>(j));
}

// Transport a carried column in the bare rotating frame: propagate the
// previous vector one step under exp(-i H dt / hbar), project out the pinned
// columns, renormalize and phase against the propagated target.
bool carry_column(Matrix& basis, Index col, const Vector& prev_col, const Matrix& u_bare,
                  const std::vector<Index>& pinned) {
  const Vector target = u_bare * prev_col;
  Vector w = target;
  for (Index p : pinned) w -= basis.col(p).dot(w) * basis.col(p);
  const double nrm = w.norm();
  if (nrm < 0.5) return false;
  w /= nrm;
  const Complex ov = target.dot(w);
  if (std::abs(ov) > 0.0) w *= std::exp(-kI * std::arg(ov));
  basis.col(col) = w;
  return true;
}

// Orthonormal completion fallback for a carried column whose projection
// collapsed: any unit vector orthogonal to the pinned columns.
void complete_column(Matrix& basis, Index col, const std::vector<Index>& pinned) {
  const Index d = basis.rows();
  for (Index cand = 0; cand < d; ++cand) {
    Vector w = Vector::Zero(d);
    w[cand] = 1.0;
    for (Index p : pinned) w -= basis.col(p).dot(w) * basis.col(p);
    const double nrm = w.norm();
    if (nrm > 0.5) {
      basis.col(col) = w / nrm;
      return;
    }
  }
  throw std::runtime_error("schmidt: failed to complete carried basis column");
}

// Clusters of active branches with near-equal coefficients.
std::vector<std::vector<Index>> degenerate_clusters(const RealVector& lambda,
                                                    const std::vector<bool>& active) {
  std::vector<Index> idx;
  for (Index j = 0; j < lambda.size(); ++j)
    if (active[j]) idx.push_back(j);
  std::sort(idx.begin(), idx.end(),
            [&](Index a, Index b) { return lambda[a] < lambda[b]; });
  std::vector<std::vector<Index>> clusters;
  for (std::size_t q = 0; q < idx.size(); ++q) {
    if (!clusters.empty() &&
        lambda[idx[q]] - lambda[clusters.back().back()] <= kDegenerateLambda) {
      clusters.back().push_back(idx[q]);
    } else {
      clusters.push_back({idx[q]});
    }
  }
  std::vector<std::vector<Index>> out;
  for (auto& c : clusters)
    if (c.size() > 1) out.push_back(std::move(c));
  return out;
}

}  // namespace

Vector SchmidtFrame::reconstruct() const {
  const Index d2 = basis2.rows();
  Vector psi = Vector::Zero(basis1.rows() * d2);
  for (Index j = 0; j < paired(); ++j) {
    if (lambda[j] == 0.0) continue;
    for (Index a = 0; a < basis1.rows(); ++a)
      for (Index b = 0; b < d2; ++b)
        psi[a * d2 + b] += lambda[j] * basis1(a, j) * basis2(b, j);
  }
  return psi;
}

Matrix SchmidtFrame::local_density(int k) const {
  const Matrix& basis = (k == 1) ? basis1 : basis2;
  Matrix rho = Matrix::Zero(basis.rows(), basis.rows());
  for (Index j = 0; j < paired(); ++j)
    rho += lambda[j] * lambda[j] * basis.col(j) * basis.col(j).adjoint();
  return rho;
}

SchmidtFrame decompose(const Vector& psi, const BipartitionShape& shape) {
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("decompose: ket is not normalized");
  SchmidtFrame frame = raw_decompose(psi, shape, 0.0);
  for (Index j = 0; j < frame.paired(); ++j)
    anchor_column(frame.basis1, j, &frame.basis2);
  for (Index j = frame.paired(); j < frame.basis1.cols(); ++j)
    anchor_column(frame.basis1, j);
  for (Index j = frame.paired(); j < frame.basis2.cols(); ++j)
    anchor_column(frame.basis2, j);
  return frame;
}

int schmidt_rank(const SchmidtFrame& frame, double tol) {
  int rank = 0;
  for (Index j = 0; j < frame.lambda.size(); ++j)
    if (frame.lambda[j] > tol) ++rank;
  return rank;
}

std::vector<int> match_branches(const SchmidtFrame& prev, const SchmidtFrame& cur) {
  if (prev.paired() != cur.paired() || prev.basis1.rows() != cur.basis1.rows())
    throw std::invalid_argument("match_branches: frame shapes differ");
  const Index r = prev.paired();
  Eigen::MatrixXd w(r, r);
  for (Index j = 0; j < r; ++j)
    for (Index m = 0; m < r; ++m)
      w(j, m) = std::norm(prev.basis1.col(j).dot(cur.basis1.col(m)));
  return max_assignment(w);
}

SchmidtTrajectory align_track(const PureTrajectory& traj, const BipartitionShape& shape,
                              const GaugePolicy& policy, const CompositeHamiltonian& ch,
                              const Exec& exec) {
  if (traj.states.empty()) throw std::invalid_argument("align_track: empty trajectory");
  shape.validate();

  SchmidtTrajectory st;
  st.grid = traj.grid;
  st.shape = shape;
  st.gauge_policy = policy.name();
  st.frames.resize(traj.states.size());

  // Per-step decompositions are independent; the continuity pass below is
  // strictly sequential.
  for_each_index(traj.states.size(), exec, [&](std::size_t i) {
    st.frames[i] = raw_decompose(traj.states[i], shape, traj.grid.time(i));
  });

  SchmidtFrame& first = st.frames[0];
  for (Index j = 0; j < first.paired(); ++j) anchor_column(first.basis1, j, &first.basis2);
  for (Index j = first.paired(); j < first.basis1.cols(); ++j) anchor_column(first.basis1, j);
  for (Index j = first.paired(); j < first.basis2.cols(); ++j) anchor_column(first.basis2, j);

  if (st.frames.size() < 2) return st;

  const double dt = traj.grid.dt;
  const Matrix u1_bare = unitary_exp(ch.h1, dt / ch.hbar);
  const Matrix u2_bare = unitary_exp(ch.h2, dt / ch.hbar);

  st.continuity.resize(st.frames.size() - 1);
  const Index r = st.frames[0].paired();

  for (std::size_t i = 1; i < st.frames.size(); ++i) {
    const SchmidtFrame& prev = st.frames[i - 1];
    SchmidtFrame& cur = st.frames[i];
    ContinuityStep& step = st.continuity[i - 1];

    step.permutation = match_branches(prev, cur);
    bool identity = true;
    for (Index j = 0; j < r; ++j)
      if (step.permutation[j] != static_cast<int>(j)) identity = false;
    step.permuted = !identity;
    if (!identity) apply_permutation(cur, step.permutation);

    std::vector<bool> active(static_cast<std::size_t>(r), true);
    for (int j : cur.dark) active[static_cast<std::size_t>(j)] = false;

    // Dark paired branches and completion columns carry no coefficient weight;
    // transport them in the bare rotating frame so the interaction-free limit
    // reproduces the bare generator on the full basis.
    std::vector<Index> pinned1, pinned2;
    for (Index j = 0; j < r; ++j) {
      if (active[static_cast<std::size_t>(j)]) {
        pinned1.push_back(j);
        pinned2.push_back(j);
      }
    }
    auto carry_all = [&](Matrix& basis, const Matrix& prev_basis, const Matrix& u_bare,
                         std::vector<Index>& pinned) {
      for (Index j = 0; j < basis.cols(); ++j) {
        const bool carried = j >= r || !active[static_cast<std::size_t>(j)];
        if (!carried) continue;
        if (!carry_column(basis, j, prev_basis.col(j), u_bare, pinned))
          complete_column(basis, j, pinned);
        pinned.push_back(j);
      }
    };
    carry_all(cur.basis1, prev.basis1, u1_bare, pinned1);
    carry_all(cur.basis2, prev.basis2, u2_bare, pinned2);

    for (const auto& cluster : degenerate_clusters(cur.lambda, active)) {
      const Index m = static_cast<Index>(cluster.size());
      Matrix p1(shape.d1, m), c1(shape.d1, m);
      for (Index q = 0; q < m; ++q) {
        p1.col(q) = prev.basis1.col(cluster[q]);
        c1.col(q) = cur.basis1.col(cluster[q]);
      }
      // Unitary Procrustes alignment of the degenerate subspace; subsystem 2
      // receives the conjugate rotation so the reconstruction is untouched.
      const SvdFull f = svd_full(c1.adjoint() * p1);
      const Matrix rot = f.left * f.right.adjoint();
      Matrix c2(shape.d2, m);
      for (Index q = 0; q < m; ++q) c2.col(q) = cur.basis2.col(cluster[q]);
      const Matrix c1r = c1 * rot;
      const Matrix c2r = c2 * rot.conjugate();
      for (Index q = 0; q < m; ++q) {
        cur.basis1.col(cluster[q]) = c1r.col(q);
        cur.basis2.col(cluster[q]) = c2r.col(q);
      }
      cur.degenerate = true;
    }

    fix_phase_step(prev, cur, policy, ch, dt);

    double min_overlap = 1.0;
    for (Index j = 0; j < r; ++j) {
      if (!active[static_cast<std::size_t>(j)]) continue;
      min_overlap = std::min(min_overlap, std::abs(prev.basis1.col(j).dot(cur.basis1.col(j))));
      min_overlap = std::min(min_overlap, std::abs(prev.basis2.col(j).dot(cur.basis2.col(j))));
    }
    step.min_overlap = min_overlap;
  }

  if (policy.kind == GaugePolicy::Kind::LinearShift) {
    const Index nb = std::max(shape.d1, shape.d2);
    const GaugeTransformation overlay =
        GaugeTransformation::linear(st.grid, nb, policy.alpha);
    st = apply_gauge(st, overlay);
    st.gauge_policy = policy.name();
  } else if (policy.kind == GaugePolicy::Kind::ExplicitPhases) {
    GaugeTransformation overlay;
    overlay.theta = policy.table;
    st = apply_gauge(st, overlay);
    st.gauge_policy = policy.name();
  }
  return st;
}

}  // namespace schmidtflow
