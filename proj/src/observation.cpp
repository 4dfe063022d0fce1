#include "irgn/observation.hpp"

#include <stdexcept>
#include <string>

namespace irgn {

Observation Observation::make(std::vector<Eigen::Vector2d> locations, Eigen::VectorXd values,
                              double noise_delta, const Grid2D& domain) {
  if (static_cast<Eigen::Index>(locations.size()) != values.size())
    throw std::invalid_argument("Observation: locations/values length mismatch");
  if (noise_delta < 0.0) throw std::invalid_argument("Observation: negative noise level");
  for (std::size_t a = 0; a < locations.size(); ++a) {
    const auto& p = locations[a];
    if (p.x() < 0.0 || p.x() > domain.lx || p.y() < 0.0 || p.y() > domain.ly)
      throw std::invalid_argument("Observation: location " + std::to_string(a) +
                                  " outside the domain");
    for (std::size_t b = 0; b < a; ++b)
      if ((locations[b] - p).norm() == 0.0)
        throw std::invalid_argument("Observation: duplicate location " + std::to_string(a));
  }
  return Observation{std::move(locations), std::move(values), noise_delta};
}

ObservationStream::ObservationStream(Eigen::VectorXd truth_output, double sigma, RngStream rng)
    : truth_output_(std::move(truth_output)),
      sigma_(sigma),
      rng_(rng),
      running_sum_(Eigen::VectorXd::Zero(truth_output_.size())) {
  if (sigma < 0.0) throw std::invalid_argument("ObservationStream: negative sigma");
}

ObservationStream::ObservationStream(Eigen::VectorXd truth_output, double sigma, RngStream rng,
                                     int count, Eigen::VectorXd running_sum)
    : truth_output_(std::move(truth_output)),
      sigma_(sigma),
      rng_(rng),
      count_(count),
      running_sum_(std::move(running_sum)) {
  if (sigma < 0.0) throw std::invalid_argument("ObservationStream: negative sigma");
  if (count < 0 || running_sum_.size() != truth_output_.size())
    throw std::invalid_argument("ObservationStream: inconsistent restore state");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> ObservationStream::draw() {
  Eigen::VectorXd y = truth_output_;
  if (sigma_ > 0.0)
    y += sigma_ * rng_.normal_vector(truth_output_.size());
  else
    rng_.normal_vector(truth_output_.size());  // keep the counter advancing identically
  running_sum_ += y;
  ++count_;
  return {std::move(y), average()};
}

Eigen::VectorXd ObservationStream::average() const {
  if (count_ == 0) throw std::logic_error("ObservationStream: average before any draw");
  return running_sum_ / static_cast<double>(count_);
}

}  // namespace irgn
