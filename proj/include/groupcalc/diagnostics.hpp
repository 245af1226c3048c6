#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupcalc/group_class.hpp"

namespace groupcalc {

struct CheckResult {
  std::string suite;
  std::string name;
  double residual;
  double tolerance;
  bool passed;
};

struct CheckReport {
  std::string class_spec;
  bool restricted = false;
  std::vector<CheckResult> results;

  bool ok() const;
  /// nullptr when every check passed.
  const CheckResult* first_failure() const;
};

/// Relative error |a - b| / max(|b|, scale, tiny). `scale` carries the magnitude of
/// the operands for operations whose result can cancel to zero.
double relative_error(double a, double b, double scale = 0.0);

/// Range of t used for sampling: [-5, 5] shrunk by the class's parameter scale and
/// clipped to t_domain().
Interval sample_range(const GroupClass& cls);

struct OracleResidual {
  std::string operation;
  double max_relative_error;
  std::size_t samples;  // valid inputs actually compared
};

/// Generic operations vs. the closed-form q-/kappa-algebra on `samples` random
/// valid inputs per operation. Empty for classes without a closed form.
std::vector<OracleResidual> oracle_residuals(const GroupClass& cls, std::size_t samples,
                                             std::uint64_t seed = 1);

/// Runs every invariant suite that applies to `cls`. Series classes get the
/// local-domain suites only.
CheckReport run_checks(const GroupClass& cls, std::size_t samples = 200, std::uint64_t seed = 1);

}  // namespace groupcalc
