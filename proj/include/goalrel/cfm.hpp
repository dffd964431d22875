#pragma once

#include <map>
#include <optional>
#include <set>

#include "goalrel/compare.hpp"
#include "goalrel/kaplan_meier.hpp"
#include "goalrel/model.hpp"

namespace goalrel {

/// Controls which goal modes enter the combined-modes fit. An explicit
/// included_modes set wins; otherwise every mode with at least
/// min_events_per_mode goals is kept. The default threshold of 20 keeps the
/// five substantial modes and drops long-range kicks on both reference
/// careers.
struct CFMConfig {
  std::optional<std::set<GoalMode>> included_modes;
  int min_events_per_mode = 20;
  double confidence = 0.95;
};

/// Combined-modes reliability curve: the product of per-mode curves, with
/// bands propagated on the log scale (modes contribute disjoint event sets).
struct CFMCurve {
  std::vector<double> times;  // merged event times across included modes
  std::vector<double> estimates;
  std::vector<double> variances;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  std::map<GoalMode, ReliabilityCurve> per_mode;
};

/// Competing-risks restriction: every observation is kept at its duration;
/// a record is an event iff it is a goal scored via `mode`. Goals via other
/// modes and censored records alike become censored.
KMInput restrict_to_mode(const PlayerDataset& ds, GoalMode mode);

/// Resolves the mode set for a combined fit per CFMConfig. Throws DataError
/// when no mode qualifies and std::invalid_argument on an explicitly empty
/// included_modes set.
std::set<GoalMode> select_modes(const PlayerDataset& ds, const CFMConfig& cfg);

/// Fits one curve per selected mode and combines them:
///   R_combined(t) = prod_i R_i(t)
/// Variance of the product uses Var(ln R) = sum_i Var(R_i) / R_i^2; the
/// interval applies the ci_bounds transform to the combined estimate with
/// that variance. A mode factor of exactly 0 collapses the band to (0, 0).
CFMCurve fit_cfm(const PlayerDataset& ds, const CFMConfig& cfg);

/// Step-function evaluation of the combined curve; (1, 1, 1) before the
/// first stored time. Requires t >= 0.
CurvePoint evaluate_curve(const CFMCurve& curve, double t);

/// Overlap verdict between two combined curves on the given grid.
OverlapVerdict ci_overlap(const CFMCurve& a, const CFMCurve& b,
                          std::span<const double> grid,
                          const OverlapOptions& options = {});

}  // namespace goalrel
