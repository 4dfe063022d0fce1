#include "irgn/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "irgn/errors.hpp"

namespace irgn {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::IRGNM: return "IRGNM";
    case Variant::dIRGNM: return "dIRGNM";
    case Variant::SIRGNM: return "SIRGNM";
    case Variant::SdIRGNM: return "SdIRGNM";
  }
  throw std::logic_error("variant_name: unknown variant");
}

Variant variant_from_name(const std::string& name) {
  if (name == "IRGNM") return Variant::IRGNM;
  if (name == "dIRGNM") return Variant::dIRGNM;
  if (name == "SIRGNM") return Variant::SIRGNM;
  if (name == "SdIRGNM") return Variant::SdIRGNM;
  throw std::invalid_argument("unknown solver variant '" + name + "'");
}

void SolverConfig::validate(int observation_count) const {
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be positive");
  if (stop_rel_err != 0.0 && !(stop_rel_err > 0.0 && stop_rel_err < 1.0))
    throw std::invalid_argument("SolverConfig: stop_rel_err must lie in (0,1)");
  if (stochastic()) {
    if (sketch_batch < 1)
      throw std::invalid_argument("SolverConfig: " + variant_name(variant) +
                                  " requires sketch_batch");
    if (sketch_batch > observation_count)
      throw std::invalid_argument("SolverConfig: sketch_batch " + std::to_string(sketch_batch) +
                                  " exceeds observation count " +
                                  std::to_string(observation_count));
  } else if (sketch_batch != 0) {
    throw std::invalid_argument("SolverConfig: sketch_batch is only valid for SIRGNM/SdIRGNM");
  }
  schedule_alpha(schedule, 0);  // validates the schedule parameters
}

void StepInputs::check() const {
  if (jac_n.rows() != f_n.size() || f_n.size() != z_n.size())
    throw std::invalid_argument("StepInputs: rows of J, F and z must agree");
  if (jac_n.cols() != u_n.size() || u_0.size() != u_n.size())
    throw std::invalid_argument("StepInputs: parameter dimensions disagree");
  if (!(alpha_n > 0.0)) throw std::invalid_argument("StepInputs: alpha must be positive");
}

Eigen::VectorXd step_primal(const StepInputs& in, const CovarianceOperator& cov) {
  in.check();
  const Eigen::Index n = in.u_n.size();
  if (cov.size() != n) throw std::invalid_argument("step_primal: covariance size mismatch");
  // Form C^{-1} through the factorization once; the primal path is a
  // verification oracle at moderate n, so dense inversion is acceptable.
  const Eigen::MatrixXd cinv = cov.solve_dense(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd lhs = in.jac_n.transpose() * in.jac_n + in.alpha_n * cinv;
  Eigen::VectorXd rhs = in.jac_n.transpose() * (in.z_n - in.f_n) +
                        in.alpha_n * (cinv * (in.u_0 - in.u_n));
  Eigen::LDLT<Eigen::MatrixXd> ldlt(lhs);
  if (ldlt.info() != Eigen::Success)
    throw ConditioningError("step_primal: LDLT factorization failed");
  Eigen::VectorXd s = ldlt.solve(rhs);
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd r = rhs - lhs.selfadjointView<Eigen::Lower>() * s;
    if (r.norm() <= 1e-13 * rhs.norm()) break;
    s += ldlt.solve(r);
  }
  const double res = (rhs - lhs.selfadjointView<Eigen::Lower>() * s).norm();
  if (!(res <= 1e-9 * rhs.norm() + 1e-300))
    throw ConditioningError("step_primal: normal-equation residual too large");
  return in.u_n + s;
}

Eigen::VectorXd step_woodbury(const StepInputs& in, const CovarianceOperator& cov) {
  in.check();
  if (cov.size() != in.u_n.size())
    throw std::invalid_argument("step_woodbury: covariance size mismatch");
  const Eigen::MatrixXd cjt = cov.dense().selfadjointView<Eigen::Lower>() * in.jac_n.transpose();
  Eigen::MatrixXd sys = in.jac_n * cjt;
  sys.diagonal().array() += in.alpha_n;
  const Eigen::VectorXd resid = in.z_n - in.f_n - in.jac_n * (in.u_0 - in.u_n);
  Eigen::LLT<Eigen::MatrixXd> llt(sys);
  if (llt.info() != Eigen::Success)
    throw ConditioningError("step_woodbury: observation-space system not SPD");
  return in.u_0 + cjt * llt.solve(resid);
}

double sketched_objective(const StepInputs& in, const CovarianceOperator& cov,
                          const Eigen::VectorXd& u) {
  in.check();
  const Eigen::VectorXd g = in.f_n + in.jac_n * (u - in.u_n);
  const Eigen::VectorXd du = u - in.u_0;
  return 0.5 * g.squaredNorm() - in.z_n.dot(g) + 0.5 * in.alpha_n * cov.weighted_sq_norm(du);
}

namespace {

double relative_error_to(const Eigen::VectorXd& u, const Eigen::VectorXd& truth) {
  return (u - truth).norm() / truth.norm();
}

}  // namespace

RunResult run(const SolverConfig& config, const RunProblem& problem) {
  if (!problem.model || !problem.cov) throw std::invalid_argument("run: missing model/covariance");
  const ForwardModel& model = *problem.model;
  const CovarianceOperator& cov = *problem.cov;
  const int m = static_cast<int>(model.output_dim());
  config.validate(m);
  if (problem.u0.size() != model.param_dim() || problem.truth_u.size() != model.param_dim())
    throw std::invalid_argument("run: parameter-dimension mismatch");
  if (problem.y_true.size() != m) throw std::invalid_argument("run: data-dimension mismatch");
  if (!(problem.truth_u.norm() > 0.0))
    throw std::invalid_argument("run: zero truth norm, relative error undefined");

  RngStream root(config.seed);
  RngStream data_rng = root.child("data");
  RngStream sketch_rng = root.child("sketch");
  ObservationStream stream(problem.y_true, problem.stream_sigma, root.child("obs-stream"));

  // Fixed data for the non-dynamic variants: one draw of y^delta.
  Eigen::VectorXd y_fixed = problem.y_true;
  if (problem.fixed_noise_delta > 0.0)
    y_fixed += problem.fixed_noise_delta * data_rng.normal_vector(m);

  RunResult result;
  result.state.u_current = GridField{problem.grid, problem.u0};
  result.state.alpha_current = schedule_alpha(config.schedule, 0);

  Eigen::VectorXd u = problem.u0;
  Eigen::VectorXd f_cur;
  Eigen::MatrixXd jac_cur;
  model.forward_and_jacobian(u, &f_cur, &jac_cur);

  const double guard = 1e8 * (1.0 + problem.u0.norm());

  for (int n = 0; n < config.max_iters; ++n) {
    const auto tic = std::chrono::steady_clock::now();
    const double alpha = schedule_alpha(config.schedule, n);

    Eigen::VectorXd z_full = y_fixed;
    if (config.dynamic()) z_full = stream.draw().second;

    StepInputs in;
    in.u_n = u;
    in.u_0 = config.prior_center_is_iterate ? u : problem.u0;
    in.alpha_n = alpha;
    if (config.stochastic()) {
      RngStream plan_rng = sketch_rng.child(static_cast<std::uint64_t>(n));
      const SketchPlan plan = draw_plan(m, config.sketch_batch, config.sketch_mode, plan_rng);
      in.z_n = reduce_data(plan, z_full);
      in.f_n = project(plan, f_cur);
      in.jac_n = reduce_rows(plan, jac_cur);
      result.plan_log.push_back(plan.indices);
    } else {
      in.z_n = z_full;
      in.f_n = f_cur;
      in.jac_n = jac_cur;
      result.plan_log.emplace_back();
    }

    Eigen::VectorXd u_next = step_woodbury(in, cov);
    if (!u_next.allFinite() || u_next.norm() > guard) {
      result.diverged = true;
      break;  // state keeps the last finite iterate
    }

    const double gap = (in.f_n + in.jac_n * (u_next - u) - in.z_n).norm();
    const double rel = relative_error_to(u_next, problem.truth_u);
    const bool stopping =
        (config.stop_rel_err > 0.0 && rel <= config.stop_rel_err) || n + 1 == config.max_iters;

    Eigen::VectorXd f_next;
    if (stopping)
      f_next = model.apply(u_next);
    else
      model.forward_and_jacobian(u_next, &f_next, &jac_cur);

    MetricsRecord rec;
    rec.iter = n;
    rec.alpha = alpha;
    rec.rel_err = rel;
    rec.residual_t = 0.5 * (f_next - problem.y_true).squaredNorm();
    rec.param_err_d = (u_next - problem.truth_u).squaredNorm();
    rec.sketch_gap = gap;
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - tic).count();
    result.state.history.push_back(rec);

    u = std::move(u_next);
    f_cur = std::move(f_next);
    result.state.iter = n + 1;
    result.state.alpha_current = schedule_alpha(config.schedule, n + 1);
    result.state.u_current = GridField{problem.grid, u};

    if (config.stop_rel_err > 0.0 && rel <= config.stop_rel_err) {
      result.early_stopped = true;
      break;
    }
  }
  return result;
}

}  // namespace irgn
