#pragma once

#include "capspec/report.hpp"
#include "capspec/spectral_field.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace capspec {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// ‖v‖_{Ḣ^s} = (Σ_n |n|^{2s} |v̂(n)|²)^{1/2}.
double hs_norm(const SpectralField& v, double s);

/// Σ_n |n|^{2s} Re(û(n) conj v̂(n)), the Ḣ^s inner product.
double hs_inner(const SpectralField& u, const SpectralField& v, double s);

/// Share of the Ḣ^{3/2} energy carried by modes |n| > m; 0 for the zero field.
double tail_fraction(const SpectralField& v, int m);

/// Running integral ∫₀^t ‖f‖_s^p dt' attached to a NormTrace.
struct AccumulatorSpec {
  double p;
  double s;
};

/// Time series of Ḣ^s norms for a fixed set of exponents, with trapezoidal
/// running integrals of ‖f‖_s^p for a fixed set of (p, s) pairs.
class NormTrace {
 public:
  /// Exponents 3/2, 9/4, 3 and accumulators (4, 9/4), (2, 3).
  NormTrace();
  NormTrace(std::vector<double> exponents, std::vector<AccumulatorSpec> accumulators);

  /// Appends a sample. Times must be strictly increasing.
  void record(double t, const SpectralField& f);
  /// Appends precomputed norm values, one per exponent.
  void record_values(double t, std::span<const double> values);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& exponents() const { return exponents_; }
  const std::vector<AccumulatorSpec>& accumulator_specs() const { return acc_specs_; }

  bool has_exponent(double s) const;
  /// Norm values at every recorded time for exponent s. Throws if s is not traced.
  std::vector<double> column(double s) const;
  /// Running integral for the (p, s) accumulator at every recorded time.
  std::vector<double> accumulator(double p, double s) const;

 private:
  std::size_t exponent_index(double s) const;

  std::vector<double> exponents_;
  std::vector<AccumulatorSpec> acc_specs_;
  std::vector<double> times_;
  std::vector<std::vector<double>> values_;  // [time][exponent]
  std::vector<std::vector<double>> acc_;     // [time][accumulator]
};

/// ‖f‖_{L^p_T Ḣ^s} by composite trapezoid over the recorded grid; p = ∞ gives
/// the maximum. Throws std::invalid_argument on an empty trace.
double lpt_hs_norm(const NormTrace& trace, double p, double s);

/// Trapezoidal (∫ g^p dt)^{1/p} on a given grid; p = ∞ gives max |g|.
double lp_time_norm(std::span<const double> times, std::span<const double> values, double p);

/// Norm trace of the difference of two snapshot sequences on a common grid.
NormTrace difference_trace(std::span<const double> times, std::span<const SpectralField> a,
                           std::span<const SpectralField> b, std::vector<double> exponents);

/// Checks ‖U‖_{L⁴_T Ḣ^{s+3/4}} ≤ ‖U‖^{1/2}_{L^∞_T Ḣ^s} ‖U‖^{1/2}_{L²_T Ḣ^{s+3/2}}
/// on a trace that records s, s+3/4 and s+3/2. The context also carries the
/// largest pointwise-in-time slack of ‖U‖²_{s+3/4} ≤ ‖U‖_s ‖U‖_{s+3/2}.
VerificationReport interpolation_check(const NormTrace& trace, double s, double tolerance = 1e-12);

}  // namespace capspec
