#include "irgn/grid.hpp"

#include <stdexcept>
#include <string>

namespace irgn {

Grid2D Grid2D::make(int nx, int ny, double lx, double ly) {
  if (nx < 3 || ny < 3)
    throw std::invalid_argument("Grid2D: need at least 3 nodes per axis, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  if (!(lx > 0.0) || !(ly > 0.0))
    throw std::invalid_argument("Grid2D: domain lengths must be positive");
  return Grid2D{nx, ny, lx, ly};
}

Eigen::Vector2d grid_point(const Grid2D& grid, int i, int j) {
  if (i < 0 || i >= grid.nx || j < 0 || j >= grid.ny)
    throw std::out_of_range("grid_point: node (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside " + std::to_string(grid.nx) +
                            "x" + std::to_string(grid.ny) + " grid");
  return {i * grid.hx(), j * grid.hy()};
}

GridField GridField::make(const Grid2D& grid, Eigen::VectorXd values) {
  if (values.size() != grid.num_nodes())
    throw std::invalid_argument("GridField: expected " + std::to_string(grid.num_nodes()) +
                                " values, got " + std::to_string(values.size()));
  if (!values.allFinite())
    throw std::invalid_argument("GridField: non-finite entries");
  return GridField{grid, std::move(values)};
}

GridField GridField::constant(const Grid2D& grid, double value) {
  return GridField{grid, Eigen::VectorXd::Constant(grid.num_nodes(), value)};
}

}  // namespace irgn
