#pragma once

#include <map>

#include "goalrel/model.hpp"

namespace goalrel {

/// Descriptive statistics for one dataset. Percentages are carried at full
/// precision; rounding to two decimals is left to the report layer.
struct SummaryTable {
  int games_played = 0;
  int games_with_goal = 0;
  int censored_count = 0;
  int uncensored_count = 0;
  int total_records = 0;
  double goals_per_match = 0.0;
  std::map<GoalMode, int> mode_counts;
  std::map<GoalMode, double> mode_percentages;  // relative to uncensored_count
};

/// Computes the summary from a dataset. Throws DataError when games_played
/// is zero. With zero goals, all mode percentages are 0.
SummaryTable summarize(const PlayerDataset& ds);

}  // namespace goalrel
