#include "irgn/sketch.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace irgn {

SketchPlan draw_plan(int m, int batch, SketchMode mode, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("draw_plan: m must be positive");
  if (batch < 1 || batch > m)
    throw std::invalid_argument("draw_plan: batch " + std::to_string(batch) +
                                " outside [1, " + std::to_string(m) + "]");
  // Partial Fisher-Yates over [0, m).
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 0);
  for (int k = 0; k < batch; ++k) {
    const int pick = k + rng.next_below(m - k);
    std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick)]);
  }
  pool.resize(static_cast<std::size_t>(batch));
  std::sort(pool.begin(), pool.end());
  const double scale =
      mode == SketchMode::mask_scaled ? static_cast<double>(m) / batch : 1.0;
  return SketchPlan{m, batch, std::move(pool), mode, scale};
}

Eigen::VectorXd project(const SketchPlan& plan, const Eigen::VectorXd& g) {
  if (g.size() != plan.m)
    throw std::invalid_argument("project: expected length " + std::to_string(plan.m) +
                                ", got " + std::to_string(g.size()));
  if (plan.mode == SketchMode::select) {
    Eigen::VectorXd out(plan.batch);
    for (int k = 0; k < plan.batch; ++k) out[k] = g[plan.indices[static_cast<std::size_t>(k)]];
    return out;
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(plan.m);
  for (int idx : plan.indices) out[idx] = plan.scale * g[idx];
  return out;
}

Eigen::VectorXd reduce_data(const SketchPlan& plan, const Eigen::VectorXd& z_full) {
  return project(plan, z_full);
}

Eigen::MatrixXd reduce_rows(const SketchPlan& plan, const Eigen::MatrixXd& jac) {
  if (jac.rows() != plan.m) throw std::invalid_argument("reduce_rows: row count mismatch");
  if (plan.mode == SketchMode::select) {
    Eigen::MatrixXd out(plan.batch, jac.cols());
    for (int k = 0; k < plan.batch; ++k)
      out.row(k) = jac.row(plan.indices[static_cast<std::size_t>(k)]);
    return out;
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(jac.rows(), jac.cols());
  for (int idx : plan.indices) out.row(idx) = plan.scale * jac.row(idx);
  return out;
}

}  // namespace irgn
