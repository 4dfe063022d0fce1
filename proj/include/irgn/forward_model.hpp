#pragma once

#include <string>

#include <Eigen/Core>

namespace irgn {

// Nonlinear forward operator contract: evaluate F(u), apply the Frechet
// derivative F'[u] and its adjoint with respect to the Euclidean inner
// products on parameters and observations. Implementations are pure in their
// inputs and safe for concurrent use on distinct arguments.
class ForwardModel {
public:
  virtual ~ForwardModel() = default;

  virtual Eigen::Index param_dim() const = 0;
  virtual Eigen::Index output_dim() const = 0;

  virtual Eigen::VectorXd apply(const Eigen::VectorXd& u) const = 0;
  virtual Eigen::VectorXd jacobian_apply(const Eigen::VectorXd& u,
                                         const Eigen::VectorXd& v) const = 0;
  virtual Eigen::VectorXd jacobian_adjoint_apply(const Eigen::VectorXd& u,
                                                 const Eigen::VectorXd& w) const = 0;

  // Row k is (F'[u])_k; default builds rows by adjoint applies at the unit
  // vectors. Guarded against sizes unfit for dense storage.
  virtual Eigen::MatrixXd dense_jacobian(const Eigen::VectorXd& u) const;

  // F(u) and F'[u] together; overridden where one factorization serves both.
  virtual void forward_and_jacobian(const Eigen::VectorXd& u, Eigen::VectorXd* f,
                                    Eigen::MatrixXd* jac) const;

  virtual std::string description() const { return "forward model"; }
};

}  // namespace irgn
