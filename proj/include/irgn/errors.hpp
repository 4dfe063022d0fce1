#pragma once

#include <stdexcept>
#include <string>

namespace irgn {

// Linear-algebra failure: a factorization did not go through even after the
// jitter ladder, or an SPD solve lost positive definiteness.
class ConditioningError : public std::runtime_error {
public:
  explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

// A dense-storage guard was exceeded (covariance or Jacobian too large).
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Config-file problem, anchored to a line of the input.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string file, int line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)), line_(line) {}
  const std::string& file() const { return file_; }
  int line() const { return line_; }

private:
  std::string file_;
  int line_;
};

}  // namespace irgn
