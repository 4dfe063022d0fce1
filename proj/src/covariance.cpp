#include "irgn/covariance.hpp"

#include <string>
#include <vector>

#include "irgn/errors.hpp"

namespace irgn {

namespace {

constexpr Eigen::Index kMaxDenseNodes = 5000;

// Jitter ladder: 0, then 1e-12 * mean diagonal escalating x10 up to 1e-8.
// Long length-scales make the Matern matrix numerically rank-deficient, so
// the top rungs do get used.
double factor_with_jitter(const Eigen::MatrixXd& c, Eigen::LLT<Eigen::MatrixXd>* llt) {
  const double mean_diag = c.diagonal().mean();
  double jitter = 0.0;
  for (int rung = 0; rung <= 5; ++rung) {
    Eigen::MatrixXd shifted = c;
    if (jitter > 0.0) shifted.diagonal().array() += jitter;
    llt->compute(shifted);
    if (llt->info() == Eigen::Success) return jitter;
    jitter = (jitter == 0.0) ? 1e-12 * mean_diag : jitter * 10.0;
  }
  throw ConditioningError(
      "covariance factorization failed even with jitter 1e-8 * mean diagonal (" +
      std::to_string(mean_diag) + ")");
}

}  // namespace

CovarianceOperator CovarianceOperator::assemble(const Grid2D& grid, const MaternParams& params) {
  const Eigen::Index n = grid.num_nodes();
  if (n > kMaxDenseNodes)
    throw CapacityError("assemble_covariance: " + std::to_string(n) +
                        " nodes exceeds the dense-storage guard of " +
                        std::to_string(kMaxDenseNodes));
  Eigen::MatrixXd c(n, n);
  std::vector<Eigen::Vector2d> pts(static_cast<std::size_t>(n));
  for (Eigen::Index a = 0; a < n; ++a) {
    auto [i, j] = grid.node_ij(static_cast<int>(a));
    pts[static_cast<std::size_t>(a)] = grid_point(grid, i, j);
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    c(a, a) = params.c0;
    for (Eigen::Index b = 0; b < a; ++b) {
      const double v = matern_kernel(params, (pts[a] - pts[b]).norm());
      c(a, b) = v;
      c(b, a) = v;
    }
  }
  CovarianceOperator op = from_dense(std::move(c));
  op.params_ = params;
  return op;
}

CovarianceOperator CovarianceOperator::from_dense(Eigen::MatrixXd c) {
  if (c.rows() != c.cols()) throw std::invalid_argument("CovarianceOperator: square matrix required");
  CovarianceOperator op;
  op.c_ = std::move(c);
  op.jitter_ = factor_with_jitter(op.c_, &op.llt_);
  op.factor_ = op.llt_.matrixL();
  return op;
}

CovarianceOperator CovarianceOperator::identity(Eigen::Index n) {
  return from_dense(Eigen::MatrixXd::Identity(n, n));
}

Eigen::VectorXd CovarianceOperator::apply(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw std::invalid_argument("apply_C: length mismatch");
  return c_.selfadjointView<Eigen::Lower>() * v;
}

Eigen::VectorXd CovarianceOperator::solve(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw std::invalid_argument("solve_C: length mismatch");
  Eigen::VectorXd x = llt_.solve(v);
  // One round of refinement tightens the residual when the matrix is stiff.
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::VectorXd r = v - apply(x) - jitter_ * x;
    if (r.norm() <= 1e-14 * v.norm()) break;
    x += llt_.solve(r);
  }
  return x;
}

Eigen::VectorXd CovarianceOperator::sample(RngStream& rng) const {
  return factor_ * rng.normal_vector(size());
}

}  // namespace irgn
