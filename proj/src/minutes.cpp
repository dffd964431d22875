#include "goalrel/minutes.hpp"

#include <cmath>

namespace goalrel {

long long MinuteHistogram::total() const {
  long long sum = 0;
  for (int c : counts) sum += c;
  return sum;
}

MinuteHistogram minute_histogram(const PlayerDataset& ds) {
  MinuteHistogram hist;
  for (const Observation& obs : ds.observations) {
    if (obs.censored) continue;
    const int minute = static_cast<int>(std::ceil(obs.duration_minutes));
    if (minute < 1 || minute > kMaxMinute)
      throw DataError("minute_histogram: goal duration " +
                      std::to_string(obs.duration_minutes) +
                      " falls outside minutes 1.." + std::to_string(kMaxMinute));
    ++hist.count_at(minute);
  }
  return hist;
}

PointsTable points_comparison(const MinuteHistogram& a, const MinuteHistogram& b,
                              const PointsOptions& options) {
  if (options.per_match && (options.games_a <= 0 || options.games_b <= 0))
    throw std::invalid_argument(
        "points_comparison: per-match comparison needs positive game counts");

  PointsTable table;
  table.segments = {SegmentPoints{"1-45", 1, 45}, SegmentPoints{"46-90", 46, 90},
                    SegmentPoints{"91-120", 91, 120}};
  for (SegmentPoints& seg : table.segments) {
    for (int m = seg.first_minute; m <= seg.last_minute; ++m) {
      // Cross-multiplied rate comparison stays in exact integer arithmetic.
      const long long lhs = static_cast<long long>(a.count_at(m)) *
                            (options.per_match ? options.games_b : 1);
      const long long rhs = static_cast<long long>(b.count_at(m)) *
                            (options.per_match ? options.games_a : 1);
      if (lhs > rhs)
        ++seg.points_a;
      else if (lhs < rhs)
        ++seg.points_b;
      else
        ++seg.draws;
    }
    table.points_a_total += seg.points_a;
    table.points_b_total += seg.points_b;
    table.draws_total += seg.draws;
  }
  return table;
}

}  // namespace goalrel
