#include "schmidtflow/effective.hpp"

#include <cmath>

#include "schmidtflow/hilbert.hpp"
#include "schmidtflow/numkernel.hpp"

namespace schmidtflow {

namespace {

const Matrix& basis_of(const SchmidtFrame& f, int k) {
  return k == 1 ? f.basis1 : f.basis2;
}

Matrix generator_at(const SchmidtTrajectory& st, int k, std::size_t i, double hbar,
                    bool allow_boundary, double* residual) {
  if (k != 1 && k != 2) throw std::invalid_argument("effective_hamiltonian: k must be 1 or 2");
  const std::size_t n = st.frames.size();
  if (n < 3) throw std::invalid_argument("effective_hamiltonian: needs at least 3 samples");
  if (i >= n) throw std::out_of_range("effective_hamiltonian: step out of range");
  const bool interior = i >= 1 && i + 1 < n;
  if (!interior && !allow_boundary)
    throw std::invalid_argument("effective_hamiltonian: boundary index");

  const double dt = st.grid.dt;
  const Matrix& b = basis_of(st.frames[i], k);
  Matrix db;
  if (interior) {
    db = (basis_of(st.frames[i + 1], k) - basis_of(st.frames[i - 1], k)) / (2.0 * dt);
  } else if (i == 0) {
    db = (-3.0 * basis_of(st.frames[0], k) + 4.0 * basis_of(st.frames[1], k) -
          basis_of(st.frames[2], k)) /
         (2.0 * dt);
  } else {
    db = (3.0 * basis_of(st.frames[n - 1], k) - 4.0 * basis_of(st.frames[n - 2], k) +
          basis_of(st.frames[n - 3], k)) /
         (2.0 * dt);
  }
  const Matrix a = kI * hbar * db * b.adjoint();
  if (residual) *residual = anti_hermitian_norm(a);
  return 0.5 * (a + a.adjoint());
}

}  // namespace

Matrix effective_hamiltonian(const SchmidtTrajectory& st, int k, std::size_t i, double hbar,
                             double* residual) {
  return generator_at(st, k, i, hbar, false, residual);
}

std::pair<Matrix, Matrix> split_components(const Matrix& h_eff, const Matrix& h_bare) {
  const HermitianEig bare = hermitian_eig(h_bare);
  const Matrix diff = bare.eigenvectors.adjoint() * (h_eff - h_bare) * bare.eigenvectors;
  const Matrix diag = diff.diagonal().asDiagonal();
  const Matrix h_ls = bare.eigenvectors * diag * bare.eigenvectors.adjoint();
  const Matrix h_x = bare.eigenvectors * (diff - diag) * bare.eigenvectors.adjoint();
  return {h_ls, h_x};
}

EffectiveSeries build_effective_series(const SchmidtTrajectory& st,
                                       const CompositeHamiltonian& ch, const Exec& exec) {
  const std::size_t n = st.frames.size();
  if (n < 3) throw std::invalid_argument("build_effective_series: needs at least 3 samples");

  EffectiveSeries es;
  es.grid = st.grid;
  es.h_eff_1.resize(n);
  es.h_eff_2.resize(n);
  es.h_ls_1.resize(n);
  es.h_x_1.resize(n);
  es.h_ls_2.resize(n);
  es.h_x_2.resize(n);
  es.antihermitian_residual_1.resize(n);
  es.antihermitian_residual_2.resize(n);
  es.boundary.assign(n, false);
  es.boundary.front() = true;
  es.boundary.back() = true;

  for_each_index(n, exec, [&](std::size_t i) {
    es.h_eff_1[i] = generator_at(st, 1, i, ch.hbar, true, &es.antihermitian_residual_1[i]);
    es.h_eff_2[i] = generator_at(st, 2, i, ch.hbar, true, &es.antihermitian_residual_2[i]);
    std::tie(es.h_ls_1[i], es.h_x_1[i]) = split_components(es.h_eff_1[i], ch.h1);
    std::tie(es.h_ls_2[i], es.h_x_2[i]) = split_components(es.h_eff_2[i], ch.h2);
  });
  return es;
}

std::pair<double, double> master_residuals(const CompositeHamiltonian& ch,
                                           const SchmidtTrajectory& st,
                                           const PureTrajectory& traj, int k, std::size_t i) {
  if (i < 1 || i + 1 >= traj.states.size())
    throw std::out_of_range("master_residuals: interior index required");
  const double dt = traj.grid.dt;
  const double hbar = ch.hbar;

  auto local = [&](std::size_t s) {
    return partial_trace(projector(traj.states[s]), ch.shape, k);
  };
  const Matrix rho_prev = local(i - 1);
  const Matrix rho_here = local(i);
  const Matrix rho_next = local(i + 1);
  const Matrix drho = (rho_next - rho_prev) / (2.0 * dt);

  const Matrix& h_bare = (k == 1) ? ch.h1 : ch.h2;
  const Matrix rho0 = projector(traj.states[i]);
  const Matrix traced_int =
      partial_trace(ch.hint * rho0 - rho0 * ch.hint, ch.shape, k);
  const Matrix r1_mat = kI * hbar * drho - (h_bare * rho_here - rho_here * h_bare) - traced_int;

  const Matrix h_eff = effective_hamiltonian(st, k, i, hbar);
  const Matrix rho_frame = st.frames[i].local_density(k);
  const Matrix r2_mat = kI * hbar * drho - (h_eff * rho_frame - rho_frame * h_eff) -
                        population_term(st, k, i, hbar);
  return {r1_mat.norm(), r2_mat.norm()};
}

Matrix population_term(const SchmidtTrajectory& st, int k, std::size_t i, double hbar) {
  if (i < 1 || i + 1 >= st.frames.size())
    throw std::out_of_range("population_term: interior index required");
  const double dt = st.grid.dt;
  const SchmidtFrame& f = st.frames[i];
  const Matrix& b = basis_of(f, k);
  Matrix out = Matrix::Zero(b.rows(), b.rows());
  for (Index j = 0; j < f.paired(); ++j) {
    const double dl2 = (st.frames[i + 1].lambda[j] * st.frames[i + 1].lambda[j] -
                        st.frames[i - 1].lambda[j] * st.frames[i - 1].lambda[j]) /
                       (2.0 * dt);
    out += kI * hbar * dl2 * b.col(j) * b.col(j).adjoint();
  }
  return out;
}

LindbladResult lindblad_assembly(const SchmidtTrajectory& st, int k, std::size_t i,
                                 double hbar, double eps) {
  if (i < 1 || i + 1 >= st.frames.size())
    throw std::out_of_range("lindblad_assembly: interior index required");
  const double dt = st.grid.dt;
  const SchmidtFrame& f = st.frames[i];
  const Matrix& b = basis_of(f, k);
  const Index r = f.paired();
  const Matrix rho = f.local_density(k);

  LindbladResult out;
  out.dissipator = Matrix::Zero(b.rows(), b.rows());
  for (Index beta = 0; beta < r; ++beta) {
    const double pop = f.lambda[beta] * f.lambda[beta];
    if (pop <= eps) {
      out.excluded.push_back(static_cast<int>(beta));
      continue;
    }
    for (Index alpha = 0; alpha < r; ++alpha) {
      const double dl2 = (st.frames[i + 1].lambda[alpha] * st.frames[i + 1].lambda[alpha] -
                          st.frames[i - 1].lambda[alpha] * st.frames[i - 1].lambda[alpha]) /
                         (2.0 * dt);
      const double gamma = dl2 / (static_cast<double>(r) * pop);
      const Matrix g = b.col(alpha) * b.col(beta).adjoint();
      out.dissipator += kI * hbar * gamma *
                        (g * rho * g.adjoint() -
                         0.5 * (g.adjoint() * g * rho + rho * g.adjoint() * g));
    }
  }
  return out;
}

Matrix coupling_diagnostic(const SchmidtTrajectory& st, const CompositeHamiltonian& ch,
                           std::size_t i) {
  if (i >= st.frames.size()) throw std::out_of_range("coupling_diagnostic: step out of range");
  const SchmidtFrame& f = st.frames[i];
  const Index r = f.paired();
  Matrix out(r, r);
  for (Index j = 0; j < r; ++j) {
    const Vector left = tensor(Vector(f.basis1.col(j)), Vector(f.basis2.col(j)));
    for (Index m = 0; m < r; ++m) {
      const Vector right = tensor(Vector(f.basis1.col(m)), Vector(f.basis2.col(m)));
      out(j, m) = left.dot(ch.hint * right);
    }
  }
  return out;
}

std::pair<Matrix, double> semiclassical_reference(const SchmidtTrajectory& st,
                                                  const CompositeHamiltonian& ch,
                                                  const Matrix& h_eff, int k, std::size_t i) {
  if (i >= st.frames.size())
    throw std::out_of_range("semiclassical_reference: step out of range");
  const SchmidtFrame& f = st.frames[i];
  const int kbar = (k == 1) ? 2 : 1;
  const Matrix rho_other = f.local_density(kbar);
  const Matrix lifted = (k == 1) ? tensor(identity(ch.shape.d1), rho_other)
                                 : tensor(rho_other, identity(ch.shape.d2));
  const Matrix mean_field = partial_trace(ch.hint * lifted, ch.shape, k);
  const Matrix reference = ((k == 1) ? ch.h1 : ch.h2) + mean_field;
  return {reference, (h_eff - reference).norm()};
}

}  // namespace schmidtflow
