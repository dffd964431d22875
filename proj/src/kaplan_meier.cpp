#include "goalrel/kaplan_meier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace goalrel {

namespace {

// Acklam's rational approximation to the inverse normal CDF, good to ~1e-9.
double inverse_normal_cdf_approx(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  double x = inverse_normal_cdf_approx(p);
  // Halley refinement against the erfc-based CDF.
  for (int i = 0; i < 2; ++i) {
    const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
  }
  return x;
}

std::vector<double> greenwood_variances(std::span<const int> n_risk,
                                        std::span<const int> n_event,
                                        std::span<const double> estimates) {
  if (n_risk.size() != n_event.size() || n_risk.size() != estimates.size())
    throw std::invalid_argument("greenwood_variances: mismatched lengths");
  std::vector<double> out(n_risk.size(), 0.0);
  double ratio_sum = 0.0;
  bool exhausted = false;
  for (std::size_t k = 0; k < n_risk.size(); ++k) {
    const double n = static_cast<double>(n_risk[k]);
    const double r = static_cast<double>(n_event[k]);
    if (n_event[k] >= n_risk[k]) exhausted = true;
    if (exhausted) {
      out[k] = 0.0;  // estimate is exactly 0 from here on
      continue;
    }
    ratio_sum += r / (n * (n - r));
    out[k] = estimates[k] * estimates[k] * ratio_sum;
  }
  return out;
}

Interval ci_bounds(double estimate, double variance, double confidence) {
  if (variance < 0.0)
    throw std::invalid_argument("ci_bounds: variance must be non-negative");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("ci_bounds: confidence must be in (0, 1)");
  if (estimate <= 0.0 || estimate >= 1.0 || variance == 0.0)
    return Interval{estimate, estimate};
  const double z = normal_quantile((1.0 + confidence) / 2.0);
  const double theta = z * std::sqrt(variance) / (estimate * (1.0 - estimate));
  const double lower = estimate / (estimate + (1.0 - estimate) * std::exp(theta));
  const double upper = estimate / (estimate + (1.0 - estimate) / std::exp(theta));
  return Interval{lower, upper};
}

ReliabilityCurve fit_km(const KMInput& input, double confidence) {
  const std::size_t n = input.durations.size();
  if (n == 0) throw std::invalid_argument("fit_km: empty input");
  if (input.event_flags.size() != n)
    throw std::invalid_argument("fit_km: durations and event_flags differ in length");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("fit_km: confidence must be in (0, 1)");
  for (double t : input.durations)
    if (!(t > 0.0)) throw std::invalid_argument("fit_km: durations must be positive");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return input.durations[a] < input.durations[b];
  });

  ReliabilityCurve curve;
  curve.n_total = static_cast<int>(n);
  double estimate = 1.0;
  std::size_t at_risk = n;  // everyone with duration >= current time
  for (std::size_t k = 0; k < n;) {
    const double t = input.durations[order[k]];
    int events = 0;
    std::size_t group = 0;
    while (k + group < n && input.durations[order[k + group]] == t) {
      if (input.event_flags[order[k + group]]) ++events;
      ++group;
    }
    if (events > 0) {
      estimate *= 1.0 - static_cast<double>(events) / static_cast<double>(at_risk);
      curve.times.push_back(t);
      curve.estimates.push_back(estimate);
      curve.n_risk.push_back(static_cast<int>(at_risk));
      curve.n_event.push_back(events);
    }
    at_risk -= group;  // events and tied censored records leave together
    k += group;
  }

  curve.variances = greenwood_variances(curve.n_risk, curve.n_event, curve.estimates);
  curve.ci_lower.reserve(curve.times.size());
  curve.ci_upper.reserve(curve.times.size());
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    const Interval ci = ci_bounds(curve.estimates[k], curve.variances[k], confidence);
    curve.ci_lower.push_back(ci.lower);
    curve.ci_upper.push_back(ci.upper);
  }
  return curve;
}

}  // namespace goalrel
