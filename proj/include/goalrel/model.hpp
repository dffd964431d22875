#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace goalrel {

/// Error raised for bad input data (as opposed to programming errors,
/// which use std::invalid_argument). The CLI maps DataError to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The six ways a goal can be scored. Integer codes 1..6 are the wire
/// representation used in data files.
enum class GoalMode : int {
  PenaltyKick = 1,
  HeadHeader = 2,
  DirectFreeKick = 3,
  LongRangeKick = 4,
  RightFootedKick = 5,
  LeftFootedKick = 6,
};

inline constexpr std::array<GoalMode, 6> kAllModes = {
    GoalMode::PenaltyKick,     GoalMode::HeadHeader,
    GoalMode::DirectFreeKick,  GoalMode::LongRangeKick,
    GoalMode::RightFootedKick, GoalMode::LeftFootedKick,
};

constexpr int mode_code(GoalMode m) { return static_cast<int>(m); }

/// Stable lowercase identifier, e.g. "penalty_kick". Used in file names and
/// exported tables.
std::string_view mode_name(GoalMode m);

/// Human-readable label, e.g. "Penalty kick".
std::string_view mode_label(GoalMode m);

/// Parses "1".."6" or a symbolic name (case-insensitive; '-', '_' and spaces
/// are interchangeable). Returns nullopt for anything else.
std::optional<GoalMode> parse_mode(std::string_view text);

/// One duration record: either a goal at duration_minutes (mode present) or
/// a censored exposure (no goal; mode absent).
struct Observation {
  std::string match_id;
  std::string season;
  double duration_minutes = 0.0;
  bool censored = false;
  std::optional<GoalMode> mode;
  std::optional<std::string> raw_minute_label;
};

/// All duration records for one player plus match bookkeeping.
/// Construction rule: each goal is one uncensored record at its minute; each
/// goalless game is exactly one censored record at the minutes played.
struct PlayerDataset {
  std::string player_name;
  std::vector<Observation> observations;
  int games_played = 0;
  int games_with_goal = 0;
};

/// Right-continuous step function fitted from duration data: one entry per
/// distinct time with at least one event.
struct ReliabilityCurve {
  std::vector<double> times;
  std::vector<double> estimates;
  std::vector<double> variances;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  std::vector<int> n_risk;
  std::vector<int> n_event;
  int n_total = 0;
};

struct CurvePoint {
  double estimate = 1.0;
  double ci_lower = 1.0;
  double ci_upper = 1.0;
};

/// A single invariant violation found by validate_dataset. record_index is
/// set when the violation concerns one observation.
struct Violation {
  std::optional<std::size_t> record_index;
  std::string message;
};

/// Checks every dataset- and observation-level invariant. Violations are
/// data, not failures: the return is empty iff the dataset is valid.
std::vector<Violation> validate_dataset(const PlayerDataset& ds);

/// Step-function evaluation: value at the largest stored time <= t, or
/// (1, 1, 1) before the first event time. Requires t >= 0.
CurvePoint evaluate_curve(const ReliabilityCurve& curve, double t);

}  // namespace goalrel
