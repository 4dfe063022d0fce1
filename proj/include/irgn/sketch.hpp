#pragma once

#include <vector>

#include <Eigen/Core>

#include "irgn/rng.hpp"

namespace irgn {

// Row-subsampling sketch. Two operator shapes share one index set:
//   select      - restriction to the chosen rows (length b); the literal
//                 ones/zeros reduced-row semantics used in the experiments.
//   mask_scaled - length-m masking that zeroes unselected entries and scales
//                 selected ones by m/b, which makes E[P g] = g exactly.
enum class SketchMode { select, mask_scaled };

struct SketchPlan {
  int m = 0;
  int batch = 0;
  std::vector<int> indices;  // sorted, distinct, in [0, m)
  SketchMode mode = SketchMode::select;
  double scale = 1.0;  // 1 for select; m/batch for mask_scaled

  bool full_batch() const { return batch == m; }
};

// Uniform without-replacement subset of size batch; deterministic in the rng
// state. Throws std::invalid_argument unless 1 <= batch <= m.
SketchPlan draw_plan(int m, int batch, SketchMode mode, RngStream& rng);

// Applies the plan's operator to a length-m vector.
Eigen::VectorXd project(const SketchPlan& plan, const Eigen::VectorXd& g);

// Reduces a full data vector into the plan's observation space; data and
// residual rows are always reduced by the same operator.
Eigen::VectorXd reduce_data(const SketchPlan& plan, const Eigen::VectorXd& z_full);

// Row reduction of a dense Jacobian matching project(): gathered rows for
// select, zeroed-and-scaled rows for mask_scaled.
Eigen::MatrixXd reduce_rows(const SketchPlan& plan, const Eigen::MatrixXd& jac);

}  // namespace irgn
