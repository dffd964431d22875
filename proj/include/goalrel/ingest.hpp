#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goalrel/model.hpp"

namespace goalrel {

/// One problem found while reading a data file. row is the 1-based line
/// number in the file (the header is line 1); field names the offending
/// column, or is empty for whole-row and dataset-level problems.
struct CsvIssue {
  std::size_t row = 0;
  std::string field;
  std::string message;
};

/// Load failure carrying every issue found (strict mode stops at the first).
class CsvError : public DataError {
 public:
  CsvError(const std::string& path, std::vector<CsvIssue> issues);
  const std::vector<CsvIssue>& issues() const { return issues_; }

 private:
  std::vector<CsvIssue> issues_;
};

struct IngestConfig {
  std::string input_path;
  std::string player_name;
  bool strict = false;  // abort on the first problem instead of collecting all
};

/// Reads a match-event CSV into a validated PlayerDataset.
///
/// Expected header (exact): match_id,season,minute,censored,mode,raw_minute_label
/// The `censored` column stores the censoring-status indicator d with
/// 1 = scored (uncensored) and 0 = no goal (censored); the in-memory boolean
/// is its inverse. A raw_minute_label of "45+x" or "90+x" overrides the
/// analysis minute to 45 or 90.
///
/// games_played is the number of distinct match_ids, games_with_goal the
/// number of distinct match_ids with at least one goal row. Row order is
/// preserved. Throws CsvError on any parse or validation problem.
PlayerDataset load_csv(const IngestConfig& cfg);

/// Writes a dataset in the load_csv schema. load_csv(write_csv(ds)) is the
/// identity on valid datasets.
void write_csv(const PlayerDataset& ds, const std::filesystem::path& path);

/// Marginal counts a synthetic dataset must reproduce exactly.
struct FixtureSpec {
  int games_played = 0;
  int games_with_goal = 0;
  std::map<GoalMode, int> goals_by_mode;
  /// Optional minute -> weight distribution for goal minutes; defaults to
  /// uniform over 1..90.
  std::optional<std::map<int, double>> goal_minute_distribution;
  std::uint64_t seed = 0;
};

/// Deterministic synthetic dataset whose descriptive statistics reproduce the
/// spec's marginals exactly: each scoring game gets at least one goal, each
/// goalless game one censored 90-minute record. Identical seeds give
/// byte-identical datasets. Throws DataError on infeasible specs.
PlayerDataset generate_fixture(const FixtureSpec& spec);

}  // namespace goalrel
