#include "capspec/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace capspec {

VerificationReport VerificationReport::inequality(std::string name, double measured, double bound,
                                                  double tolerance) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.measured = measured;
  r.bound_or_target = bound;
  r.tolerance = tolerance;
  r.kind = Kind::inequality;
  r.passed = std::isfinite(measured) && measured <= bound + tolerance;
  return r;
}

VerificationReport VerificationReport::identity(std::string name, double measured, double target,
                                                double tolerance) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.measured = measured;
  r.bound_or_target = target;
  r.tolerance = tolerance;
  r.kind = Kind::identity;
  r.passed = std::isfinite(measured) && std::abs(measured - target) <= tolerance;
  return r;
}

VerificationReport VerificationReport::at_least(std::string name, double measured, double floor, double tolerance) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.measured = measured;
  r.bound_or_target = floor;
  r.tolerance = tolerance;
  r.kind = Kind::lower_bound;
  r.passed = std::isfinite(measured) && measured >= floor - tolerance;
  return r;
}

VerificationReport& VerificationReport::with(std::string key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  context.emplace_back(std::move(key), os.str());
  return *this;
}

VerificationReport& VerificationReport::with(std::string key, std::string value) {
  context.emplace_back(std::move(key), std::move(value));
  return *this;
}

double VerificationReport::ratio() const {
  if (bound_or_target == 0.0) return measured == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return measured / bound_or_target;
}

}  // namespace capspec
