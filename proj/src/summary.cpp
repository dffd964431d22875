#include "goalrel/summary.hpp"

namespace goalrel {

SummaryTable summarize(const PlayerDataset& ds) {
  if (ds.games_played < 1)
    throw DataError("summarize: dataset has no games");

  SummaryTable table;
  table.games_played = ds.games_played;
  table.games_with_goal = ds.games_with_goal;
  for (GoalMode m : kAllModes) table.mode_counts[m] = 0;
  for (const Observation& obs : ds.observations) {
    if (obs.censored) {
      ++table.censored_count;
    } else {
      ++table.uncensored_count;
      ++table.mode_counts[*obs.mode];
    }
  }
  table.total_records = table.censored_count + table.uncensored_count;
  table.goals_per_match = static_cast<double>(table.uncensored_count) /
                          static_cast<double>(table.games_played);
  for (GoalMode m : kAllModes)
    table.mode_percentages[m] =
        table.uncensored_count == 0
            ? 0.0
            : 100.0 * table.mode_counts[m] / table.uncensored_count;
  return table;
}

}  // namespace goalrel
