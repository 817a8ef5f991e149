#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swsi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: unknown ids, invalid parameters, mismatched grids.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Picard sweep cap reached. Carries the per-sweep L1 update history.
class NonconvergenceError : public Error {
 public:
  NonconvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

}  // namespace swsi
