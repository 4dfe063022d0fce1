#include "irgn/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace irgn {

namespace {
void require_positive_alpha0(double alpha0) {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("StepSchedule: alpha0 must be positive");
}
}  // namespace

StepSchedule StepSchedule::constant(double alpha0) {
  require_positive_alpha0(alpha0);
  return StepSchedule{ScheduleKind::constant, alpha0, 1.0, 0.9};
}

StepSchedule StepSchedule::geometric(double alpha0, double gamma) {
  require_positive_alpha0(alpha0);
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("StepSchedule: geometric gamma must lie in (0,1]");
  return StepSchedule{ScheduleKind::geometric, alpha0, gamma, 0.9};
}

StepSchedule StepSchedule::power(double alpha0, double exponent) {
  require_positive_alpha0(alpha0);
  if (!(exponent > 0.0))
    throw std::invalid_argument("StepSchedule: power exponent must be positive");
  return StepSchedule{ScheduleKind::power, alpha0, 1.0, exponent};
}

double schedule_alpha(const StepSchedule& schedule, int n) {
  if (n < 0) throw std::invalid_argument("schedule_alpha: negative iteration index");
  switch (schedule.kind) {
    case ScheduleKind::constant:
      return schedule.alpha0;
    case ScheduleKind::geometric:
      return schedule.alpha0 * std::pow(schedule.gamma, n);
    case ScheduleKind::power:
      return schedule.alpha0 * std::pow(n + 1.0, -schedule.power_exponent);
  }
  throw std::logic_error("schedule_alpha: unknown kind");
}

}  // namespace irgn
