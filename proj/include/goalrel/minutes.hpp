#pragma once

#include <array>
#include <string>

#include "goalrel/model.hpp"

namespace goalrel {

inline constexpr int kMaxMinute = 120;

/// Goal counts per match minute 1..120. counts[m - 1] holds minute m; a goal
/// at duration t in (m-1, m] lands in minute m.
struct MinuteHistogram {
  std::array<int, kMaxMinute> counts{};

  int count_at(int minute) const { return counts.at(static_cast<std::size_t>(minute - 1)); }
  int& count_at(int minute) { return counts.at(static_cast<std::size_t>(minute - 1)); }
  long long total() const;
};

/// One comparison segment of the superiority-points procedure. Capacity is
/// the number of minutes in the segment (45, 45 and 30).
struct SegmentPoints {
  std::string label;
  int first_minute = 0;
  int last_minute = 0;
  int points_a = 0;
  int points_b = 0;
  int draws = 0;
};

/// Per-segment points over the halves (1-45, 46-90) and extra time (91-120),
/// plus totals across segments.
struct PointsTable {
  std::array<SegmentPoints, 3> segments;
  int points_a_total = 0;
  int points_b_total = 0;
  int draws_total = 0;
};

struct PointsOptions {
  /// Compare per-match goal rates instead of raw counts. Rates are formed
  /// against games_a/games_b via exact cross-multiplication, so ties still
  /// require exact equality.
  bool per_match = false;
  int games_a = 0;
  int games_b = 0;
};

/// Histogram of goals per playing minute; censored records contribute
/// nothing. Requires a valid dataset.
MinuteHistogram minute_histogram(const PlayerDataset& ds);

/// Minute-by-minute superiority points: within each segment, a minute awards
/// one point to whichever player scored more goals at that minute, or one
/// draw on exact equality, so points_a + points_b + draws always equals the
/// segment capacity.
PointsTable points_comparison(const MinuteHistogram& a, const MinuteHistogram& b,
                              const PointsOptions& options = {});

}  // namespace goalrel
