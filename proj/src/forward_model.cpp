#include "irgn/forward_model.hpp"

#include <string>

#include "irgn/errors.hpp"

namespace irgn {

Eigen::MatrixXd ForwardModel::dense_jacobian(const Eigen::VectorXd& u) const {
  const Eigen::Index m = output_dim(), n = param_dim();
  if (m * n > 20'000'000)
    throw CapacityError("dense_jacobian: " + std::to_string(m) + "x" + std::to_string(n) +
                        " exceeds the dense guard");
  Eigen::MatrixXd jac(m, n);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    unit[k] = 1.0;
    jac.row(k) = jacobian_adjoint_apply(u, unit).transpose();
    unit[k] = 0.0;
  }
  return jac;
}

void ForwardModel::forward_and_jacobian(const Eigen::VectorXd& u, Eigen::VectorXd* f,
                                        Eigen::MatrixXd* jac) const {
  if (f) *f = apply(u);
  if (jac) *jac = dense_jacobian(u);
}

}  // namespace irgn
