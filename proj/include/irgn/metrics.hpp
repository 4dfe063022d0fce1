#pragma once

namespace irgn {

// One completed solver step. `iter` is the 0-based step index n; alpha is the
// regularization value used for that step, and the error/residual fields
// describe the resulting iterate u_{n+1}:
//   rel_err     = ||u_{n+1} - u*|| / ||u*||
//   residual_t  = t_{n+1} = 0.5 ||F(u_{n+1}) - y*||^2   (noise-free target)
//   param_err_d = d_{n+1} = ||u_{n+1} - u*||^2
//   sketch_gap  = ||P_n[F_n + J_n (u_{n+1}-u_n)] - z_n|| in the step's
//                 observation space (full space for deterministic variants).
struct MetricsRecord {
  int iter = 0;
  double alpha = 0.0;
  double rel_err = 0.0;
  double residual_t = 0.0;
  double param_err_d = 0.0;
  double sketch_gap = 0.0;
  double wall_ms = 0.0;

  // Equality over the reproducible payload; wall time is measurement, not state.
  bool same_state(const MetricsRecord& o) const {
    return iter == o.iter && alpha == o.alpha && rel_err == o.rel_err &&
           residual_t == o.residual_t && param_err_d == o.param_err_d &&
           sketch_gap == o.sketch_gap;
  }
};

}  // namespace irgn
