#pragma once

#include <string>
#include <utility>
#include <vector>

namespace capspec {

/// Result of a single check: passed ⇔ measured ≤ bound + tolerance for
/// inequalities, measured ≥ bound - tolerance for lower bounds, and
/// |measured - bound| ≤ tolerance for identities.
struct VerificationReport {
  enum class Kind { inequality, lower_bound, identity };

  std::string check_name;
  double measured = 0.0;
  double bound_or_target = 0.0;
  double tolerance = 0.0;
  Kind kind = Kind::inequality;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> context;

  static VerificationReport inequality(std::string name, double measured, double bound, double tolerance);
  static VerificationReport at_least(std::string name, double measured, double floor, double tolerance);
  static VerificationReport identity(std::string name, double measured, double target, double tolerance);

  VerificationReport& with(std::string key, double value);
  VerificationReport& with(std::string key, std::string value);
  /// measured / bound, or 0 when both vanish.
  double ratio() const;
};

}  // namespace capspec
