#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "irgn/grid.hpp"
#include "irgn/rng.hpp"

namespace irgn {

// A single noisy data vector y^delta at m measurement points.
struct Observation {
  std::vector<Eigen::Vector2d> locations;
  Eigen::VectorXd values;
  double noise_delta = 0.0;

  static Observation make(std::vector<Eigen::Vector2d> locations, Eigen::VectorXd values,
                          double noise_delta, const Grid2D& domain);
};

// Sequential observation source: each draw emits Y_i = truth + sigma*xi_i
// with xi_i standard normal, and maintains the running sum so the average
// Z_n = sum/n contracts with variance sigma^2/n. Fully replayable from the
// stream's (key, counter).
class ObservationStream {
public:
  ObservationStream(Eigen::VectorXd truth_output, double sigma, RngStream rng);

  // Restore from serialized state; running_sum must already reflect `count` draws.
  ObservationStream(Eigen::VectorXd truth_output, double sigma, RngStream rng, int count,
                    Eigen::VectorXd running_sum);

  // Emits the next Y_i and returns (Y_i, Z_n) with n the updated count.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> draw();

  Eigen::VectorXd average() const;

  const Eigen::VectorXd& truth_output() const { return truth_output_; }
  const Eigen::VectorXd& running_sum() const { return running_sum_; }
  double sigma() const { return sigma_; }
  int count() const { return count_; }
  const RngStream& rng() const { return rng_; }

private:
  Eigen::VectorXd truth_output_;
  double sigma_;
  RngStream rng_;
  int count_ = 0;
  Eigen::VectorXd running_sum_;
};

inline std::pair<Eigen::VectorXd, Eigen::VectorXd> draw_observation(ObservationStream& stream) {
  return stream.draw();
}

}  // namespace irgn
