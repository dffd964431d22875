#include "goalrel/compare.hpp"

#include <algorithm>
#include <cmath>

namespace goalrel {

double chi_square_1df_pvalue(double x) {
  if (x < 0.0)
    throw std::invalid_argument("chi_square_1df_pvalue: x must be non-negative");
  return std::erfc(std::sqrt(x / 2.0));
}

LogRankResult log_rank(const KMInput& a, const KMInput& b) {
  if (a.durations.empty() || b.durations.empty())
    throw std::invalid_argument("log_rank: both groups need at least one record");
  if (a.durations.size() != a.event_flags.size() ||
      b.durations.size() != b.event_flags.size())
    throw std::invalid_argument("log_rank: durations and event_flags differ in length");

  // Distinct pooled event times.
  std::vector<double> event_times;
  for (std::size_t i = 0; i < a.durations.size(); ++i)
    if (a.event_flags[i]) event_times.push_back(a.durations[i]);
  for (std::size_t i = 0; i < b.durations.size(); ++i)
    if (b.event_flags[i]) event_times.push_back(b.durations[i]);
  if (event_times.empty())
    throw DataError("log_rank: pooled data has no events");
  std::sort(event_times.begin(), event_times.end());
  event_times.erase(std::unique(event_times.begin(), event_times.end()),
                    event_times.end());

  const auto at_risk = [](const KMInput& g, double t) {
    std::size_t n = 0;
    for (double d : g.durations)
      if (d >= t) ++n;
    return static_cast<double>(n);
  };
  const auto events_at = [](const KMInput& g, double t) {
    double d = 0.0;
    for (std::size_t i = 0; i < g.durations.size(); ++i)
      if (g.event_flags[i] && g.durations[i] == t) ++d;
    return d;
  };

  double observed_a = 0.0;
  double expected_a = 0.0;
  double variance = 0.0;
  for (double t : event_times) {
    const double n_a = at_risk(a, t);
    const double n_b = at_risk(b, t);
    const double n = n_a + n_b;
    const double d = events_at(a, t) + events_at(b, t);
    observed_a += events_at(a, t);
    expected_a += d * n_a / n;
    if (n > 1.0)
      variance += d * (n_a / n) * (1.0 - n_a / n) * (n - d) / (n - 1.0);
  }

  LogRankResult result;
  result.observed_a = observed_a;
  result.expected_a = expected_a;
  const double diff = observed_a - expected_a;
  if (variance == 0.0) {
    // Zero variance only arises when every event table is deterministic, in
    // which case observed equals expected exactly.
    if (std::abs(diff) > 1e-9)
      throw std::logic_error("log_rank: zero variance with observed != expected");
    result.chi_square = 0.0;
  } else {
    result.chi_square = diff * diff / variance;
  }
  result.degrees_freedom = 1;
  result.p_value = chi_square_1df_pvalue(result.chi_square);
  return result;
}

std::string_view to_string(OverlapJudgment verdict) {
  switch (verdict) {
    case OverlapJudgment::NotSignificantlyDifferent:
      return "not_significantly_different";
    case OverlapJudgment::Different:
      return "different";
  }
  return "unknown";
}

namespace {

Interval step_interval(std::span<const double> times, std::span<const double> lower,
                       std::span<const double> upper, double t) {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return Interval{1.0, 1.0};
  const std::size_t k = static_cast<std::size_t>(it - times.begin()) - 1;
  return Interval{lower[k], upper[k]};
}

}  // namespace

OverlapVerdict ci_overlap_steps(std::span<const double> times_a,
                                std::span<const double> lower_a,
                                std::span<const double> upper_a,
                                std::span<const double> times_b,
                                std::span<const double> lower_b,
                                std::span<const double> upper_b,
                                std::span<const double> grid,
                                const OverlapOptions& options) {
  if (grid.empty())
    throw std::invalid_argument("ci_overlap: grid must be non-empty");
  OverlapVerdict verdict;
  verdict.grid.assign(grid.begin(), grid.end());
  verdict.overlap_flags.reserve(grid.size());
  std::size_t overlapping = 0;
  for (double t : grid) {
    if (t < 0.0)
      throw std::invalid_argument("ci_overlap: grid times must be non-negative");
    const Interval ia = step_interval(times_a, lower_a, upper_a, t);
    const Interval ib = step_interval(times_b, lower_b, upper_b, t);
    const double overlap = std::min(ia.upper, ib.upper) - std::max(ia.lower, ib.lower);
    bool ok;
    if (options.half_margin_rule) {
      const double avg_margin = ((ia.upper - ia.lower) + (ib.upper - ib.lower)) / 4.0;
      ok = overlap >= 0.0 && overlap >= 0.5 * avg_margin;
    } else {
      ok = overlap >= 0.0;
    }
    verdict.overlap_flags.push_back(ok);
    if (ok) ++overlapping;
  }
  verdict.fraction_overlapping =
      static_cast<double>(overlapping) / static_cast<double>(grid.size());
  verdict.verdict = overlapping == grid.size()
                        ? OverlapJudgment::NotSignificantlyDifferent
                        : OverlapJudgment::Different;
  return verdict;
}

OverlapVerdict ci_overlap(const ReliabilityCurve& a, const ReliabilityCurve& b,
                          std::span<const double> grid,
                          const OverlapOptions& options) {
  return ci_overlap_steps(a.times, a.ci_lower, a.ci_upper, b.times, b.ci_lower,
                          b.ci_upper, grid, options);
}

std::vector<double> default_grid() {
  std::vector<double> grid(120);
  for (int m = 1; m <= 120; ++m) grid[static_cast<std::size_t>(m - 1)] = m;
  return grid;
}

}  // namespace goalrel
