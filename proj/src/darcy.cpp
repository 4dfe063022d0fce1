#include "irgn/darcy.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/SparseCholesky>

#include "irgn/errors.hpp"

namespace irgn {

namespace {

constexpr long kMaxDenseJacobianEntries = 20'000'000;

bool is_dirichlet(const Grid2D& grid, int index) {
  return grid.node_ij(index).second == 0;  // bottom edge y = 0
}

// Piecewise source, breakpoints at 4/6 and 5/6 of the domain height with the
// larger value taken on the boundary between pieces.
double source_value(double y, double ly, const DarcyBC& bc) {
  if (!bc.with_source) return 0.0;
  const double yn = 6.0 * y / ly;
  if (yn < 4.0) return 0.0;
  if (yn < 5.0) return 137.0;
  return 274.0;
}

// Visits every grid edge with its endpoints and geometric weight
// face_length / distance; the transmissibility is weight * harmonic(kappa).
template <typename Fn>
void for_each_edge(const Grid2D& grid, Fn&& fn) {
  const double hx = grid.hx(), hy = grid.hy();
  for (int j = 0; j < grid.ny; ++j) {
    const double face = (j == 0 || j == grid.ny - 1) ? 0.5 * hy : hy;
    for (int i = 0; i + 1 < grid.nx; ++i)
      fn(grid.node_index(i, j), grid.node_index(i + 1, j), face / hx);
  }
  for (int i = 0; i < grid.nx; ++i) {
    const double face = (i == 0 || i == grid.nx - 1) ? 0.5 * hx : hx;
    for (int j = 0; j + 1 < grid.ny; ++j)
      fn(grid.node_index(i, j), grid.node_index(i, j + 1), face / hy);
  }
}

double harmonic(double a, double b) { return 2.0 * a * b / (a + b); }

}  // namespace

DarcySystem assemble(const Grid2D& grid, const GridField& kappa, const DarcyBC& bc) {
  if (kappa.grid != grid) throw std::invalid_argument("assemble: kappa lives on another grid");
  if (!kappa.values.allFinite() || (kappa.values.array() <= 0.0).any())
    throw std::invalid_argument("assemble: kappa must be positive and finite");

  const int n = grid.num_nodes();
  const double hx = grid.hx(), hy = grid.hy();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(5 * n));
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);

  for_each_edge(grid, [&](int a, int b, double wgeo) {
    const double g = wgeo * harmonic(kappa.values[a], kappa.values[b]);
    const bool da = is_dirichlet(grid, a), db = is_dirichlet(grid, b);
    if (!da && !db) {
      diag[a] += g;
      diag[b] += g;
      trips.emplace_back(a, b, -g);
      trips.emplace_back(b, a, -g);
    } else if (!da && db) {
      diag[a] += g;
      rhs[a] += g * bc.dirichlet_value;
    } else if (da && !db) {
      diag[b] += g;
      rhs[b] += g * bc.dirichlet_value;
    }
    // both Dirichlet: the edge drops out entirely
  });

  for (int idx = 0; idx < n; ++idx) {
    if (is_dirichlet(grid, idx)) {
      trips.emplace_back(idx, idx, 1.0);
      rhs[idx] = bc.dirichlet_value;
      continue;
    }
    trips.emplace_back(idx, idx, diag[idx]);
    auto [i, j] = grid.node_ij(idx);
    const double dx = (i == 0 || i == grid.nx - 1) ? 0.5 * hx : hx;
    const double dy = (j == 0 || j == grid.ny - 1) ? 0.5 * hy : hy;
    rhs[idx] += source_value(j * hy, grid.ly, bc) * dx * dy;
    if (i == 0) rhs[idx] += bc.influx * dy;  // prescribed inflow on x = 0
  }

  Eigen::SparseMatrix<double> matrix(n, n);
  matrix.setFromTriplets(trips.begin(), trips.end());
  matrix.makeCompressed();
  return DarcySystem{grid, kappa, std::move(matrix), std::move(rhs), bc};
}

GridField solve_pressure(const DarcySystem& system) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(system.matrix);
  if (factor.info() != Eigen::Success)
    throw ConditioningError("solve_pressure: factorization of the Darcy system failed");
  Eigen::VectorXd p = factor.solve(system.rhs);
  const double bnorm = system.rhs.lpNorm<Eigen::Infinity>();
  for (int pass = 0; pass < 3; ++pass) {
    const Eigen::VectorXd r = system.rhs - system.matrix * p;
    if (r.lpNorm<Eigen::Infinity>() <= 1e-10 * bnorm) break;
    p += factor.solve(r);
  }
  const double res = (system.rhs - system.matrix * p).lpNorm<Eigen::Infinity>();
  if (!(res <= 1e-10 * bnorm))
    throw ConditioningError("solve_pressure: residual " + std::to_string(res) +
                            " exceeds 1e-10 * ||b||_inf = " + std::to_string(1e-10 * bnorm) +
                            "; kappa contrast " +
                            std::to_string(system.kappa.values.maxCoeff() /
                                           system.kappa.values.minCoeff()));
  return GridField::make(system.grid, std::move(p));
}

// ---------------------------------------------------------------------------
// Observation operator

ObservationOperator ObservationOperator::at_points(const Grid2D& grid,
                                                   std::vector<Eigen::Vector2d> locations) {
  ObservationOperator op;
  op.grid_ = grid;
  const double hx = grid.hx(), hy = grid.hy();
  for (const auto& p : locations) {
    if (p.x() < 0.0 || p.x() > grid.lx || p.y() < 0.0 || p.y() > grid.ly)
      throw std::invalid_argument("ObservationOperator: point outside the domain");
    int i0 = std::min(std::max(static_cast<int>(std::floor(p.x() / hx)), 0), grid.nx - 2);
    int j0 = std::min(std::max(static_cast<int>(std::floor(p.y() / hy)), 0), grid.ny - 2);
    const double fx = std::clamp(p.x() / hx - i0, 0.0, 1.0);
    const double fy = std::clamp(p.y() / hy - j0, 0.0, 1.0);
    Stencil s;
    s.node[0] = grid.node_index(i0, j0);
    s.node[1] = grid.node_index(i0 + 1, j0);
    s.node[2] = grid.node_index(i0, j0 + 1);
    s.node[3] = grid.node_index(i0 + 1, j0 + 1);
    s.weight[0] = (1 - fx) * (1 - fy);
    s.weight[1] = fx * (1 - fy);
    s.weight[2] = (1 - fx) * fy;
    s.weight[3] = fx * fy;
    op.stencils_.push_back(s);
  }
  op.locations_ = std::move(locations);
  return op;
}

ObservationOperator ObservationOperator::interior_lattice(const Grid2D& grid, int per_axis) {
  if (per_axis < 1) throw std::invalid_argument("ObservationOperator: per_axis must be >= 1");
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>(per_axis) * per_axis);
  for (int b = 1; b <= per_axis; ++b)
    for (int a = 1; a <= per_axis; ++a)
      pts.emplace_back(grid.lx * a / (per_axis + 1.0), grid.ly * b / (per_axis + 1.0));
  return at_points(grid, std::move(pts));
}

Eigen::VectorXd ObservationOperator::apply(const Eigen::VectorXd& node_values) const {
  if (node_values.size() != grid_.num_nodes())
    throw std::invalid_argument("ObservationOperator::apply: length mismatch");
  Eigen::VectorXd out(size());
  for (Eigen::Index k = 0; k < size(); ++k) {
    const Stencil& s = stencils_[static_cast<std::size_t>(k)];
    double v = 0.0;
    for (int q = 0; q < 4; ++q) v += s.weight[q] * node_values[s.node[q]];
    out[k] = v;
  }
  return out;
}

Eigen::VectorXd ObservationOperator::adjoint(const Eigen::VectorXd& w) const {
  if (w.size() != size())
    throw std::invalid_argument("ObservationOperator::adjoint: length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(grid_.num_nodes());
  for (Eigen::Index k = 0; k < size(); ++k) {
    const Stencil& s = stencils_[static_cast<std::size_t>(k)];
    for (int q = 0; q < 4; ++q) out[s.node[q]] += s.weight[q] * w[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// DarcyModel

struct DarcyModel::Solved {
  GridField kappa;
  Eigen::VectorXd dkappa_du;
  DarcySystem system;
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> factor;
  Eigen::VectorXd pressure;

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return factor->solve(b); }
};

DarcyModel::DarcyModel(Grid2D grid, ObservationOperator obs, Parameterization parameterization,
                       DarcyBC bc, double kappa_floor)
    : grid_(grid),
      obs_(std::move(obs)),
      parameterization_(parameterization),
      bc_(bc),
      kappa_floor_(kappa_floor) {
  if (obs_.grid() != grid_) throw std::invalid_argument("DarcyModel: observation grid mismatch");
  if (!(kappa_floor_ > 0.0)) throw std::invalid_argument("DarcyModel: kappa_floor must be positive");
}

GridField DarcyModel::parameterize(const Eigen::VectorXd& u) const {
  if (u.size() != param_dim()) throw std::invalid_argument("DarcyModel: parameter length mismatch");
  Eigen::VectorXd kappa(u.size());
  if (parameterization_ == Parameterization::identity_floor)
    kappa = u.cwiseMax(kappa_floor_);
  else
    kappa = u.array().exp();
  return GridField::make(grid_, std::move(kappa));
}

Eigen::VectorXd DarcyModel::parameterize_derivative(const Eigen::VectorXd& u) const {
  if (parameterization_ == Parameterization::identity_floor)
    return (u.array() > kappa_floor_).cast<double>();
  return u.array().exp();
}

DarcyModel::Solved DarcyModel::solve_at(const Eigen::VectorXd& u) const {
  GridField kappa = parameterize(u);
  Solved s{kappa, parameterize_derivative(u), assemble(grid_, kappa, bc_),
           std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(), {}};
  s.factor->compute(s.system.matrix);
  if (s.factor->info() != Eigen::Success)
    throw ConditioningError("DarcyModel: factorization failed");
  s.pressure = s.factor->solve(s.system.rhs);
  const double bnorm = s.system.rhs.lpNorm<Eigen::Infinity>();
  for (int pass = 0; pass < 3; ++pass) {
    const Eigen::VectorXd r = s.system.rhs - s.system.matrix * s.pressure;
    if (r.lpNorm<Eigen::Infinity>() <= 1e-10 * bnorm) break;
    s.pressure += s.factor->solve(r);
  }
  return s;
}

Eigen::VectorXd DarcyModel::apply(const Eigen::VectorXd& u) const {
  return obs_.apply(solve_at(u).pressure);
}

namespace {

// d(A(kappa) p) in direction dkappa, rows at Dirichlet nodes zeroed; the
// boundary-eliminated right-hand-side terms are recovered through the value
// p = dirichlet held at those nodes.
Eigen::VectorXd d_operator_apply(const Grid2D& grid, const Eigen::VectorXd& kappa,
                                 const Eigen::VectorXd& p, const Eigen::VectorXd& dkappa) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(grid.num_nodes());
  for_each_edge(grid, [&](int a, int b, double wgeo) {
    const double ka = kappa[a], kb = kappa[b], s = ka + kb;
    const double dg =
        wgeo * 2.0 * (kb * kb * dkappa[a] + ka * ka * dkappa[b]) / (s * s);
    const double dp = p[a] - p[b];
    w[a] += dg * dp;
    w[b] -= dg * dp;
  });
  for (int idx = 0; idx < grid.num_nodes(); ++idx)
    if (is_dirichlet(grid, idx)) w[idx] = 0.0;
  return w;
}

// Adjoint of dkappa -> d(A p) against a node field mu (mu zero at Dirichlet
// nodes): accumulates the kappa-space gradient edge by edge.
Eigen::VectorXd d_operator_adjoint(const Grid2D& grid, const Eigen::VectorXd& kappa,
                                   const Eigen::VectorXd& p, const Eigen::VectorXd& mu) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.num_nodes());
  for_each_edge(grid, [&](int a, int b, double wgeo) {
    const double ka = kappa[a], kb = kappa[b], s = ka + kb;
    const double common = wgeo * 2.0 * (p[a] - p[b]) * (mu[a] - mu[b]) / (s * s);
    out[a] += kb * kb * common;
    out[b] += ka * ka * common;
  });
  return out;
}

}  // namespace

Eigen::VectorXd DarcyModel::jacobian_apply(const Eigen::VectorXd& u,
                                           const Eigen::VectorXd& v) const {
  if (v.size() != param_dim()) throw std::invalid_argument("jacobian_apply: length mismatch");
  const Solved s = solve_at(u);
  const Eigen::VectorXd dkappa = s.dkappa_du.cwiseProduct(v);
  const Eigen::VectorXd w = d_operator_apply(grid_, s.kappa.values, s.pressure, dkappa);
  const Eigen::VectorXd dp = s.solve(-w);
  return obs_.apply(dp);
}

Eigen::VectorXd DarcyModel::jacobian_adjoint_apply(const Eigen::VectorXd& u,
                                                   const Eigen::VectorXd& w) const {
  if (w.size() != output_dim())
    throw std::invalid_argument("jacobian_adjoint_apply: length mismatch");
  const Solved s = solve_at(u);
  Eigen::VectorXd lambda = s.solve(obs_.adjoint(w));
  for (int idx = 0; idx < grid_.num_nodes(); ++idx)
    if (is_dirichlet(grid_, idx)) lambda[idx] = 0.0;
  const Eigen::VectorXd grad_kappa =
      d_operator_adjoint(grid_, s.kappa.values, s.pressure, lambda);
  return -s.dkappa_du.cwiseProduct(grad_kappa);
}

namespace {

Eigen::MatrixXd dense_jacobian_from(const Grid2D& grid, const ObservationOperator& obs,
                                    const DarcyModel::Solved& s) {
  const Eigen::Index m = obs.size(), n = grid.num_nodes();
  Eigen::MatrixXd jac(m, n);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    unit[k] = 1.0;
    Eigen::VectorXd lambda = s.solve(obs.adjoint(unit));
    unit[k] = 0.0;
    for (int idx = 0; idx < grid.num_nodes(); ++idx)
      if (is_dirichlet(grid, idx)) lambda[idx] = 0.0;
    jac.row(k) =
        (-s.dkappa_du.cwiseProduct(d_operator_adjoint(grid, s.kappa.values, s.pressure, lambda)))
            .transpose();
  }
  return jac;
}

}  // namespace

Eigen::MatrixXd DarcyModel::dense_jacobian(const Eigen::VectorXd& u) const {
  const Eigen::Index m = output_dim(), n = param_dim();
  if (static_cast<long>(m) * n > kMaxDenseJacobianEntries)
    throw CapacityError("dense_jacobian: " + std::to_string(m) + "x" + std::to_string(n) +
                        " exceeds the dense guard");
  return dense_jacobian_from(grid_, obs_, solve_at(u));
}

void DarcyModel::forward_and_jacobian(const Eigen::VectorXd& u, Eigen::VectorXd* f,
                                      Eigen::MatrixXd* jac) const {
  const Solved s = solve_at(u);
  if (f) *f = obs_.apply(s.pressure);
  if (jac) *jac = dense_jacobian_from(grid_, obs_, s);
}

std::string DarcyModel::description() const {
  return "darcy " + std::to_string(grid_.nx) + "x" + std::to_string(grid_.ny) + ", " +
         std::to_string(obs_.size()) + " observations";
}

// ---------------------------------------------------------------------------
// Ground truths

GridField ground_truth_smooth(const Grid2D& grid) {
  Eigen::VectorXd v(grid.num_nodes());
  for (int idx = 0; idx < grid.num_nodes(); ++idx) {
    auto [i, j] = grid.node_ij(idx);
    const double x = i * grid.hx() / grid.lx;
    const double y = j * grid.hy() / grid.ly;
    const double b1 = std::exp(-100.0 * ((x - 0.3) * (x - 0.3) + (y - 0.7) * (y - 0.7)));
    const double b2 = std::exp(-100.0 * ((x - 0.7) * (x - 0.7) + (y - 0.35) * (y - 0.35)));
    v[idx] = b1 + 0.5 * b2;
  }
  return GridField::make(grid, std::move(v));
}

GridField ground_truth_levelset(const Grid2D& grid, const CovarianceOperator& cov,
                                RngStream& rng, double kappa_low, double kappa_high) {
  if (cov.size() != grid.num_nodes())
    throw std::invalid_argument("ground_truth_levelset: covariance size mismatch");
  const Eigen::VectorXd z = cov.sample(rng);
  Eigen::VectorXd v(z.size());
  for (Eigen::Index idx = 0; idx < z.size(); ++idx)
    v[idx] = z[idx] < 0.0 ? kappa_low : kappa_high;
  return GridField::make(grid, std::move(v));
}

}  // namespace irgn
