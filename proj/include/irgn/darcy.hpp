#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/Sparse>

#include "irgn/covariance.hpp"
#include "irgn/forward_model.hpp"
#include "irgn/grid.hpp"
#include "irgn/rng.hpp"

namespace irgn {

// Boundary data and source toggle for -div(kappa grad p) = f on [0,Lx]x[0,Ly]:
//   p = dirichlet_value on the bottom edge (y = 0),
//   -kappa dp/dx = influx on the left edge (x = 0),
//   homogeneous Neumann on the right and top edges,
//   f piecewise in y: 0 on [0,4], 137 on [4,5], 274 on [5,6] when with_source
//   (the larger value applies at the breakpoints).
struct DarcyBC {
  double dirichlet_value = 100.0;
  double influx = 500.0;
  bool with_source = true;
};

// Assembled 5-point finite-volume system with harmonic face averaging of
// kappa. Dirichlet rows are identity rows and their columns are eliminated
// symmetrically into the right-hand side, so `matrix` is SPD.
struct DarcySystem {
  Grid2D grid;
  GridField kappa;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  DarcyBC bc;
};

DarcySystem assemble(const Grid2D& grid, const GridField& kappa, const DarcyBC& bc = {});

// Sparse direct solve; residual is verified against 1e-10 * ||b||_inf.
GridField solve_pressure(const DarcySystem& system);

// Pointwise measurement functional: bilinear interpolation stencils at m
// physical points. Weights are non-negative and sum to one per point.
class ObservationOperator {
public:
  struct Stencil {
    int node[4];
    double weight[4];
  };

  static ObservationOperator at_points(const Grid2D& grid,
                                       std::vector<Eigen::Vector2d> locations);
  // k x k lattice at fractions (a/(k+1), b/(k+1)) of the domain, a,b = 1..k;
  // strictly interior and independent of the grid resolution.
  static ObservationOperator interior_lattice(const Grid2D& grid, int per_axis);

  Eigen::Index size() const { return static_cast<Eigen::Index>(stencils_.size()); }
  const Grid2D& grid() const { return grid_; }
  const std::vector<Eigen::Vector2d>& locations() const { return locations_; }
  const std::vector<Stencil>& stencils() const { return stencils_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& node_values) const;
  Eigen::VectorXd adjoint(const Eigen::VectorXd& w) const;

private:
  Grid2D grid_;
  std::vector<Eigen::Vector2d> locations_;
  std::vector<Stencil> stencils_;
};

enum class Parameterization { identity_floor, exp };

// The Darcy forward operator F(u) = observe(pressure(parameterize(u))).
// identity_floor maps u to max(u, kappa_floor) with subgradient 1 above the
// floor and 0 below; exp maps u to exp(u).
class DarcyModel : public ForwardModel {
public:
  DarcyModel(Grid2D grid, ObservationOperator obs,
             Parameterization parameterization = Parameterization::identity_floor,
             DarcyBC bc = {}, double kappa_floor = 1e-3);

  Eigen::Index param_dim() const override { return grid_.num_nodes(); }
  Eigen::Index output_dim() const override { return obs_.size(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const override;
  Eigen::VectorXd jacobian_apply(const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v) const override;
  Eigen::VectorXd jacobian_adjoint_apply(const Eigen::VectorXd& u,
                                         const Eigen::VectorXd& w) const override;
  Eigen::MatrixXd dense_jacobian(const Eigen::VectorXd& u) const override;
  void forward_and_jacobian(const Eigen::VectorXd& u, Eigen::VectorXd* f,
                            Eigen::MatrixXd* jac) const override;
  std::string description() const override;

  const Grid2D& grid() const { return grid_; }
  const ObservationOperator& observation() const { return obs_; }
  double kappa_floor() const { return kappa_floor_; }
  Parameterization parameterization() const { return parameterization_; }

  GridField parameterize(const Eigen::VectorXd& u) const;
  Eigen::VectorXd parameterize_derivative(const Eigen::VectorXd& u) const;

  struct Solved;  // factorized state at a given u, shared by the J/J* paths

private:
  Solved solve_at(const Eigen::VectorXd& u) const;

  Grid2D grid_;
  ObservationOperator obs_;
  Parameterization parameterization_;
  DarcyBC bc_;
  double kappa_floor_;
};

// Two-bump smooth permeability; bump centers live in unit-square coordinates
// and are mapped through (x/Lx, y/Ly).
GridField ground_truth_smooth(const Grid2D& grid);

// Level-set truth: threshold a zero-mean Gaussian field at 0, assigning
// kappa_low below and kappa_high at or above.
GridField ground_truth_levelset(const Grid2D& grid, const CovarianceOperator& cov,
                                RngStream& rng, double kappa_low = 1.0,
                                double kappa_high = 10.0);

}  // namespace irgn
