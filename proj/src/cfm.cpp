#include "goalrel/cfm.hpp"

#include <algorithm>
#include <cmath>

namespace goalrel {

KMInput restrict_to_mode(const PlayerDataset& ds, GoalMode mode) {
  KMInput input;
  input.durations.reserve(ds.observations.size());
  input.event_flags.reserve(ds.observations.size());
  for (const Observation& obs : ds.observations) {
    input.durations.push_back(obs.duration_minutes);
    input.event_flags.push_back(!obs.censored && obs.mode == mode);
  }
  return input;
}

std::set<GoalMode> select_modes(const PlayerDataset& ds, const CFMConfig& cfg) {
  if (cfg.min_events_per_mode < 0)
    throw std::invalid_argument("select_modes: min_events_per_mode must be >= 0");
  if (cfg.included_modes.has_value()) {
    if (cfg.included_modes->empty())
      throw std::invalid_argument("select_modes: included_modes must be non-empty");
    return *cfg.included_modes;
  }
  std::map<GoalMode, int> counts;
  for (const Observation& obs : ds.observations)
    if (!obs.censored && obs.mode.has_value()) ++counts[*obs.mode];
  std::set<GoalMode> selected;
  for (GoalMode m : kAllModes)
    if (counts[m] >= cfg.min_events_per_mode) selected.insert(m);
  if (selected.empty())
    throw DataError("select_modes: no mode reaches the event threshold of " +
                    std::to_string(cfg.min_events_per_mode));
  return selected;
}

namespace {

// Estimate/variance step values at time t (1 and 0 before the first event).
struct StepState {
  double estimate = 1.0;
  double variance = 0.0;
};

StepState step_at(const ReliabilityCurve& curve, double t) {
  const auto it = std::upper_bound(curve.times.begin(), curve.times.end(), t);
  if (it == curve.times.begin()) return StepState{};
  const std::size_t k = static_cast<std::size_t>(it - curve.times.begin()) - 1;
  return StepState{curve.estimates[k], curve.variances[k]};
}

}  // namespace

CFMCurve fit_cfm(const PlayerDataset& ds, const CFMConfig& cfg) {
  const std::set<GoalMode> modes = select_modes(ds, cfg);

  CFMCurve curve;
  for (GoalMode m : modes)
    curve.per_mode.emplace(m, fit_km(restrict_to_mode(ds, m), cfg.confidence));

  for (const auto& [mode, km] : curve.per_mode)
    curve.times.insert(curve.times.end(), km.times.begin(), km.times.end());
  std::sort(curve.times.begin(), curve.times.end());
  curve.times.erase(std::unique(curve.times.begin(), curve.times.end()),
                    curve.times.end());

  curve.estimates.reserve(curve.times.size());
  curve.variances.reserve(curve.times.size());
  curve.ci_lower.reserve(curve.times.size());
  curve.ci_upper.reserve(curve.times.size());
  for (double t : curve.times) {
    double product = 1.0;
    double log_variance = 0.0;  // sum of Var(R_i)/R_i^2 over the factors
    bool degenerate = false;
    for (const auto& [mode, km] : curve.per_mode) {
      const StepState s = step_at(km, t);
      product *= s.estimate;
      if (s.estimate <= 0.0)
        degenerate = true;
      else
        log_variance += s.variance / (s.estimate * s.estimate);
    }
    double variance = degenerate ? 0.0 : product * product * log_variance;
    curve.estimates.push_back(degenerate ? 0.0 : product);
    curve.variances.push_back(variance);
    const Interval ci =
        ci_bounds(curve.estimates.back(), variance, cfg.confidence);
    curve.ci_lower.push_back(ci.lower);
    curve.ci_upper.push_back(ci.upper);
  }
  return curve;
}

CurvePoint evaluate_curve(const CFMCurve& curve, double t) {
  if (t < 0.0)
    throw std::invalid_argument("evaluate_curve: t must be non-negative");
  const auto it = std::upper_bound(curve.times.begin(), curve.times.end(), t);
  if (it == curve.times.begin()) return CurvePoint{1.0, 1.0, 1.0};
  const std::size_t k = static_cast<std::size_t>(it - curve.times.begin()) - 1;
  return CurvePoint{curve.estimates[k], curve.ci_lower[k], curve.ci_upper[k]};
}

OverlapVerdict ci_overlap(const CFMCurve& a, const CFMCurve& b,
                          std::span<const double> grid,
                          const OverlapOptions& options) {
  return ci_overlap_steps(a.times, a.ci_lower, a.ci_upper, b.times, b.ci_lower,
                          b.ci_upper, grid, options);
}

}  // namespace goalrel
