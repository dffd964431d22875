#pragma once

#include <span>
#include <vector>

#include "goalrel/model.hpp"

namespace goalrel {

/// Paired duration/event vectors for one curve fit. event_flags[i] is true
/// when the record at durations[i] is an event (a goal), false when the
/// record is censored.
struct KMInput {
  std::vector<double> durations;
  std::vector<bool> event_flags;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Standard normal quantile at probability p in (0, 1). Accurate to double
/// precision (rational approximation plus one Halley refinement against
/// std::erfc). normal_quantile(0.975) = 1.959964; the conventional 1.96
/// reproduces published 95% bands.
double normal_quantile(double p);

/// Greenwood variance sequence for a fitted curve:
///   Var(t_k) = estimate(t_k)^2 * sum_{j<=k} n_event[j] / (n_risk[j] * (n_risk[j] - n_event[j]))
/// When a risk set is exhausted (n_risk == n_event) the estimate is exactly 0
/// conditional on the data; the variance at and after that time is reported
/// as 0. All spans must have equal length.
std::vector<double> greenwood_variances(std::span<const int> n_risk,
                                        std::span<const int> n_event,
                                        std::span<const double> estimates);

/// Log-odds-transformed confidence interval around a reliability estimate:
///   theta = z * sqrt(variance) / (estimate * (1 - estimate))
///   lower = estimate / (estimate + (1 - estimate) * exp(theta))
///   upper = estimate / (estimate + (1 - estimate) / exp(theta))
/// with z the standard normal quantile at (1 + confidence) / 2. Boundary
/// estimates (0 or 1) and zero variance collapse to the degenerate interval
/// (estimate, estimate). Throws std::invalid_argument on negative variance
/// or confidence outside (0, 1).
Interval ci_bounds(double estimate, double variance, double confidence);

/// Product-limit reliability curve fit:
///   R(t) = prod_{j: t_j <= t} (1 - r_j / n_j)
/// over the distinct times t_j with at least one event, where r_j counts
/// events at t_j and n_j is the risk set just before t_j. Tied censored
/// records stay in the risk set for the event at their time and leave
/// afterwards. Confidence bounds follow ci_bounds with Greenwood variances.
/// Throws std::invalid_argument on empty input, mismatched lengths,
/// non-positive durations, or confidence outside (0, 1).
ReliabilityCurve fit_km(const KMInput& input, double confidence = 0.95);

}  // namespace goalrel
