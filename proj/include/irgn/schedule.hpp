#pragma once

namespace irgn {

enum class ScheduleKind { constant, geometric, power };

// Regularization-parameter schedule alpha_n:
//   constant:  alpha_n = alpha0
//   geometric: alpha_n = alpha0 * gamma^n,          gamma in (0,1]
//   power:     alpha_n = alpha0 * (n+1)^(-exponent)
// The power rule shifts by one so alpha_0 = alpha0 rather than dividing by
// zero at the first iteration.
struct StepSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double alpha0 = 0.5;
  double gamma = 1.0;
  double power_exponent = 0.9;

  static StepSchedule constant(double alpha0);
  static StepSchedule geometric(double alpha0, double gamma);
  static StepSchedule power(double alpha0, double exponent);

  bool operator==(const StepSchedule&) const = default;
};

double schedule_alpha(const StepSchedule& schedule, int n);

}  // namespace irgn
