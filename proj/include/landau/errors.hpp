// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace landau {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical input (negative field, even slot mode, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Configuration file problems; carries a human-readable location.
class config_error : public error {
 public:
  using error::error;
};

/// Input data (CSV) violates the documented schema.
class schema_error : public error {
 public:
  using error::error;
};

/// Numerical failure (eigensolver non-convergence, residual blowup).
class numerical_error : public error {
 public:
  explicit numerical_error(const std::string& msg, double worst_residual = 0.0)
      : error(msg), worst_residual_(worst_residual) {}
  double worst_residual() const { return worst_residual_; }

 private:
  double worst_residual_;
};

/// Requested inversion has no real solution. Carries the minimum
/// attainable frequency so callers can report how far off the target is.
class no_solution_error : public error {
 public:
  no_solution_error(const std::string& msg, double min_frequency_thz)
      : error(msg), min_frequency_thz_(min_frequency_thz) {}
  double min_frequency_thz() const { return min_frequency_thz_; }

 private:
  double min_frequency_thz_;
};

}  // namespace landau
