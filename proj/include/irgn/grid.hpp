#pragma once

#include <utility>

#include <Eigen/Core>

namespace irgn {

// Uniform tensor grid of nodes on [0,Lx] x [0,Ly]. Node (i,j) sits at
// (i*hx, j*hy); the flat index is row-major over rows of constant y:
// index = j*nx + i.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;

  static Grid2D make(int nx, int ny, double lx, double ly);
  static Grid2D square(int n, double l) { return make(n, n, l, l); }

  int num_nodes() const { return nx * ny; }
  double hx() const { return lx / (nx - 1); }
  double hy() const { return ly / (ny - 1); }

  int node_index(int i, int j) const { return j * nx + i; }
  std::pair<int, int> node_ij(int index) const { return {index % nx, index / nx}; }

  bool operator==(const Grid2D&) const = default;
};

// Physical coordinates of node (i,j); throws std::out_of_range off-grid.
Eigen::Vector2d grid_point(const Grid2D& grid, int i, int j);

// Scalar field sampled at the grid nodes (length nx*ny, all entries finite).
struct GridField {
  Grid2D grid;
  Eigen::VectorXd values;

  static GridField make(const Grid2D& grid, Eigen::VectorXd values);
  static GridField constant(const Grid2D& grid, double value);

  double operator()(int i, int j) const { return values[grid.node_index(i, j)]; }
  double& operator()(int i, int j) { return values[grid.node_index(i, j)]; }
};

}  // namespace irgn
