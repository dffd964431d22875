#pragma once

#include <span>
#include <vector>

#include "goalrel/kaplan_meier.hpp"
#include "goalrel/model.hpp"

namespace goalrel {

/// Two-sample log-rank test outcome. degrees_freedom is always 1.
struct LogRankResult {
  double chi_square = 0.0;
  int degrees_freedom = 1;
  double p_value = 1.0;
  double observed_a = 0.0;
  double expected_a = 0.0;
};

/// Upper-tail probability of the chi-square distribution with one degree of
/// freedom: P(X > x) = erfc(sqrt(x / 2)). Throws on negative x.
double chi_square_1df_pvalue(double x);

/// Two-sample log-rank test. At each distinct pooled event time t_j with d_j
/// total events, n_j pooled at risk and n_aj at risk in group a:
///   E_a += d_j * n_aj / n_j
///   V   += d_j * (n_aj / n_j) * (1 - n_aj / n_j) * (n_j - d_j) / (n_j - 1)
/// (the V term is 0 when n_j == 1), chi_square = (O_a - E_a)^2 / V and the
/// p-value is the chi-square(1) upper tail. When V == 0 the observed and
/// expected counts coincide and chi_square is 0.
/// Throws std::invalid_argument when a group is empty and DataError when the
/// pooled data has no events.
LogRankResult log_rank(const KMInput& a, const KMInput& b);

enum class OverlapJudgment { NotSignificantlyDifferent, Different };

std::string_view to_string(OverlapJudgment verdict);

/// Per-grid-time confidence-interval overlap comparison of two curves.
struct OverlapVerdict {
  std::vector<double> grid;
  std::vector<bool> overlap_flags;
  double fraction_overlapping = 0.0;
  OverlapJudgment verdict = OverlapJudgment::NotSignificantlyDifferent;
};

struct OverlapOptions {
  /// Default rule: the curves differ at t iff the two intervals are disjoint.
  /// The refined rule instead requires overlap of at least half the average
  /// margin of error before calling the curves indistinguishable at t
  /// (Cumming & Finch's proportion-overlap criterion).
  bool half_margin_rule = false;
};

/// Shared implementation over raw interval step functions; times must be
/// strictly increasing and paired with lower/upper bounds. A curve evaluates
/// to [1, 1] before its first stored time.
OverlapVerdict ci_overlap_steps(std::span<const double> times_a,
                                std::span<const double> lower_a,
                                std::span<const double> upper_a,
                                std::span<const double> times_b,
                                std::span<const double> lower_b,
                                std::span<const double> upper_b,
                                std::span<const double> grid,
                                const OverlapOptions& options = {});

/// Overlap verdict for two fitted curves on the given evaluation grid.
/// verdict is NotSignificantlyDifferent iff the intervals overlap at every
/// grid time. Throws std::invalid_argument on an empty grid or negative
/// grid times.
OverlapVerdict ci_overlap(const ReliabilityCurve& a, const ReliabilityCurve& b,
                          std::span<const double> grid,
                          const OverlapOptions& options = {});

/// Integer minutes 1..120, the default evaluation grid.
std::vector<double> default_grid();

}  // namespace goalrel
