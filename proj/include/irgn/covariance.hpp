#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "irgn/grid.hpp"
#include "irgn/matern.hpp"
#include "irgn/rng.hpp"

namespace irgn {

// Dense SPD covariance over grid nodes with a Cholesky-type factor
// L L^T = C + jitter*I. Immutable after construction; all operations are
// read-only and safe to share across threads.
class CovarianceOperator {
public:
  // Collocates the Matern kernel at node pairs. Guarded against grids too
  // large for dense storage.
  static CovarianceOperator assemble(const Grid2D& grid, const MaternParams& params);

  // Wraps an arbitrary symmetric positive (semi)definite matrix, running the
  // same jitter ladder. Used by tests and the linear probe problems.
  static CovarianceOperator from_dense(Eigen::MatrixXd c);

  static CovarianceOperator identity(Eigen::Index n);

  Eigen::Index size() const { return c_.rows(); }
  const Eigen::MatrixXd& dense() const { return c_; }
  const Eigen::MatrixXd& factor() const { return factor_; }  // lower triangular
  double jitter() const { return jitter_; }
  const MaternParams& params() const { return params_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;  // C v
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;  // (C + jitter I)^{-1} v
  Eigen::MatrixXd solve_dense(const Eigen::MatrixXd& rhs) const;
  double weighted_sq_norm(const Eigen::VectorXd& v) const { return v.dot(solve(v)); }

  // One Gaussian field L z, z ~ N(0, I); covariance C in distribution.
  Eigen::VectorXd sample(RngStream& rng) const;

private:
  CovarianceOperator() = default;

  Eigen::MatrixXd c_;
  Eigen::MatrixXd factor_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double jitter_ = 0.0;
  MaternParams params_{};
};

inline CovarianceOperator assemble_covariance(const Grid2D& grid, const MaternParams& params) {
  return CovarianceOperator::assemble(grid, params);
}
inline Eigen::VectorXd sample_grf(const CovarianceOperator& cov, RngStream& rng) {
  return cov.sample(rng);
}
inline Eigen::VectorXd apply_C(const CovarianceOperator& cov, const Eigen::VectorXd& v) {
  return cov.apply(v);
}
inline Eigen::VectorXd solve_C(const CovarianceOperator& cov, const Eigen::VectorXd& v) {
  return cov.solve(v);
}

}  // namespace irgn
