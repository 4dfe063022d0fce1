#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "irgn/covariance.hpp"
#include "irgn/forward_model.hpp"
#include "irgn/grid.hpp"
#include "irgn/metrics.hpp"
#include "irgn/observation.hpp"
#include "irgn/schedule.hpp"
#include "irgn/sketch.hpp"

namespace irgn {

// The four solver variants share one iteration kernel and differ in the data
// vector (fixed draw vs. running average) and in whether rows are sketched.
enum class Variant { IRGNM, dIRGNM, SIRGNM, SdIRGNM };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct SolverConfig {
  Variant variant = Variant::IRGNM;
  StepSchedule schedule{};
  int max_iters = 100;
  double stop_rel_err = 0.0;  // 0 disables early stopping
  int sketch_batch = 0;       // 0 means none; required for stochastic variants
  SketchMode sketch_mode = SketchMode::select;
  std::uint64_t seed = 0;
  bool prior_center_is_iterate = false;  // LM-style u_0 = u_n; off by default

  bool stochastic() const { return variant == Variant::SIRGNM || variant == Variant::SdIRGNM; }
  bool dynamic() const { return variant == Variant::dIRGNM || variant == Variant::SdIRGNM; }

  // Throws std::invalid_argument on violated invariants; needs the
  // observation count to check the batch bound.
  void validate(int observation_count) const;

  bool operator==(const SolverConfig&) const = default;
};

// Solver iterate bookkeeping; alpha_current is the schedule value at `iter`,
// the step about to be taken.
struct SolverState {
  GridField u_current;
  int iter = 0;
  double alpha_current = 0.0;
  std::vector<MetricsRecord> history;
};

// Everything a single regularized Gauss-Newton step consumes. For sketched
// steps z_n, f_n and the rows of jac_n are reduced consistently by one plan.
struct StepInputs {
  Eigen::VectorXd u_n;
  Eigen::VectorXd u_0;
  double alpha_n = 0.0;
  Eigen::VectorXd z_n;
  Eigen::VectorXd f_n;
  Eigen::MatrixXd jac_n;

  void check() const;
};

// Parameter-space form: solves (J^T J + alpha C^{-1}) s = J^T (z - F) +
// alpha C^{-1} (u_0 - u_n) and returns u_n + s. Verification path; kept dense.
Eigen::VectorXd step_primal(const StepInputs& in, const CovarianceOperator& cov);

// Observation-space form via the Woodbury identity:
// u_0 + C J^T (J C J^T + alpha I)^{-1} (z - F - J (u_0 - u_n)).
// Production path: the system solved has the (reduced) data dimension.
Eigen::VectorXd step_woodbury(const StepInputs& in, const CovarianceOperator& cov);

// Sketched Gauss-Newton objective at u:
//   1/2 ||g||^2 - <z_n, g> + alpha/2 ||u - u_0||^2_{C^{-1}},
// with g the (already reduced) linearized residual f_n + J_n (u - u_n).
// The penalty carries the same 1/2 as the data term so the step formulas
// above are its exact minimizer. Verification only.
double sketched_objective(const StepInputs& in, const CovarianceOperator& cov,
                          const Eigen::VectorXd& u);

// Assembled problem handed to run(): model + covariance weighting + truth for
// metrics + noise levels. For IRGNM/SIRGNM the data is one draw
// y_true + fixed_noise_delta * xi; dynamic variants consume a fresh draw with
// stream_sigma per iteration and use the running average.
struct RunProblem {
  const ForwardModel* model = nullptr;
  const CovarianceOperator* cov = nullptr;
  Grid2D grid;  // layout of the parameter vector (metrics/export only)
  Eigen::VectorXd u0;
  Eigen::VectorXd truth_u;
  Eigen::VectorXd y_true;
  double fixed_noise_delta = 0.0;
  double stream_sigma = 0.0;
};

struct RunResult {
  SolverState state;
  std::vector<std::vector<int>> plan_log;  // per-step sketch indices (empty rows when full)
  bool diverged = false;
  bool early_stopped = false;

  const std::vector<MetricsRecord>& history() const { return state.history; }
  const GridField& u_final() const { return state.u_current; }
};

RunResult run(const SolverConfig& config, const RunProblem& problem);

}  // namespace irgn
