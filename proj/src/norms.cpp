#include "capspec/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace capspec {

double hs_norm(const SpectralField& v, double s) {
  double sum = 0.0;
  for (int n = 1; n <= v.cutoff(); ++n) {
    const double w = std::pow(static_cast<double>(n), 2.0 * s);
    sum += w * std::norm(v[n]);
  }
  // modes ±n contribute equally
  return std::sqrt(2.0 * sum);
}

double hs_inner(const SpectralField& u, const SpectralField& v, double s) {
  const int top = std::min(u.cutoff(), v.cutoff());
  double sum = 0.0;
  for (int n = 1; n <= top; ++n)
    sum += std::pow(static_cast<double>(n), 2.0 * s) * (u[n] * std::conj(v[n])).real();
  return 2.0 * sum;
}

double tail_fraction(const SpectralField& v, int m) {
  double total = 0.0, tail = 0.0;
  for (int n = 1; n <= v.cutoff(); ++n) {
    const double e = std::pow(static_cast<double>(n), 3.0) * std::norm(v[n]);
    total += e;
    if (n > m) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

NormTrace::NormTrace() : NormTrace({1.5, 2.25, 3.0}, {{4.0, 2.25}, {2.0, 3.0}}) {}

NormTrace::NormTrace(std::vector<double> exponents, std::vector<AccumulatorSpec> accumulators)
    : exponents_(std::move(exponents)), acc_specs_(std::move(accumulators)) {
  for (const auto& a : acc_specs_) {
    if (!has_exponent(a.s)) exponents_.push_back(a.s);
    if (!(a.p >= 1.0) || std::isinf(a.p)) throw std::invalid_argument("NormTrace: accumulator p must be finite and >= 1");
  }
}

bool NormTrace::has_exponent(double s) const {
  return std::find(exponents_.begin(), exponents_.end(), s) != exponents_.end();
}

std::size_t NormTrace::exponent_index(double s) const {
  auto it = std::find(exponents_.begin(), exponents_.end(), s);
  if (it == exponents_.end()) {
    std::ostringstream msg;
    msg << "NormTrace: exponent " << s << " is not recorded";
    throw std::invalid_argument(msg.str());
  }
  return static_cast<std::size_t>(it - exponents_.begin());
}

void NormTrace::record(double t, const SpectralField& f) {
  std::vector<double> v(exponents_.size());
  for (std::size_t j = 0; j < exponents_.size(); ++j) v[j] = hs_norm(f, exponents_[j]);
  record_values(t, v);
}

void NormTrace::record_values(double t, std::span<const double> values) {
  if (values.size() != exponents_.size()) throw std::invalid_argument("NormTrace: wrong value count");
  if (!times_.empty() && !(t > times_.back()))
    throw std::invalid_argument("NormTrace: times must be strictly increasing");

  std::vector<double> acc(acc_specs_.size(), 0.0);
  if (!times_.empty()) {
    const double h = t - times_.back();
    for (std::size_t a = 0; a < acc_specs_.size(); ++a) {
      const auto j = exponent_index(acc_specs_[a].s);
      const double p = acc_specs_[a].p;
      acc[a] = acc_.back()[a] + 0.5 * h * (std::pow(values_.back()[j], p) + std::pow(values[j], p));
    }
  }
  times_.push_back(t);
  values_.emplace_back(values.begin(), values.end());
  acc_.push_back(std::move(acc));
}

std::vector<double> NormTrace::column(double s) const {
  const auto j = exponent_index(s);
  std::vector<double> c(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) c[i] = values_[i][j];
  return c;
}

std::vector<double> NormTrace::accumulator(double p, double s) const {
  for (std::size_t a = 0; a < acc_specs_.size(); ++a) {
    if (acc_specs_[a].p == p && acc_specs_[a].s == s) {
      std::vector<double> c(acc_.size());
      for (std::size_t i = 0; i < acc_.size(); ++i) c[i] = acc_[i][a];
      return c;
    }
  }
  throw std::invalid_argument("NormTrace: no such accumulator");
}

double lp_time_norm(std::span<const double> times, std::span<const double> values, double p) {
  if (times.empty() || times.size() != values.size())
    throw std::invalid_argument("lp_time_norm: empty or mismatched series");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_time_norm: p must be >= 1");
  double integral = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    integral += 0.5 * (times[i] - times[i - 1]) *
                (std::pow(std::abs(values[i]), p) + std::pow(std::abs(values[i - 1]), p));
  return std::pow(integral, 1.0 / p);
}

double lpt_hs_norm(const NormTrace& trace, double p, double s) {
  if (trace.empty()) throw std::invalid_argument("lpt_hs_norm: empty trace");
  const auto col = trace.column(s);
  return lp_time_norm(trace.times(), col, p);
}

NormTrace difference_trace(std::span<const double> times, std::span<const SpectralField> a,
                           std::span<const SpectralField> b, std::vector<double> exponents) {
  if (a.size() != times.size() || b.size() != times.size())
    throw std::invalid_argument("difference_trace: snapshot counts do not match the grid");
  NormTrace trace(std::move(exponents), {});
  for (std::size_t i = 0; i < times.size(); ++i) trace.record(times[i], a[i] - b[i]);
  return trace;
}

VerificationReport interpolation_check(const NormTrace& trace, double s, double tolerance) {
  const auto low = trace.column(s);
  const auto mid = trace.column(s + 0.75);
  const auto high = trace.column(s + 1.5);

  const double lhs = lp_time_norm(trace.times(), mid, 4.0);
  const double rhs = std::sqrt(lp_time_norm(trace.times(), low, kInfinity) *
                               lp_time_norm(trace.times(), high, 2.0));

  // Pointwise frequency-Hölder step; exact equality for one active mode pair.
  double pointwise = 0.0;
  for (std::size_t i = 0; i < mid.size(); ++i) {
    const double scale = low[i] * high[i];
    if (scale > 0.0) pointwise = std::max(pointwise, std::abs(scale - mid[i] * mid[i]) / scale);
  }

  const double scaled_tol = tolerance * std::max(1.0, rhs);
  auto r = VerificationReport::inequality("interpolation", lhs, rhs, scaled_tol);
  r.with("s", s).with("margin", rhs - lhs).with("pointwise_relative_slack", pointwise);
  return r;
}

}  // namespace capspec
