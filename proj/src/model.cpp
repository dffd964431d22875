#include "goalrel/model.hpp"

#include <algorithm>
#include <cctype>

namespace goalrel {

namespace {

struct ModeNames {
  GoalMode mode;
  std::string_view name;
  std::string_view label;
};

constexpr std::array<ModeNames, 6> kModeNames = {{
    {GoalMode::PenaltyKick, "penalty_kick", "Penalty kick"},
    {GoalMode::HeadHeader, "head_header", "Head header"},
    {GoalMode::DirectFreeKick, "direct_free_kick", "Direct free kick"},
    {GoalMode::LongRangeKick, "long_range_kick", "Long-range kick"},
    {GoalMode::RightFootedKick, "right_footed_kick", "Right-footed kick"},
    {GoalMode::LeftFootedKick, "left_footed_kick", "Left-footed kick"},
}};

// Lowercase with '-', '_' and spaces removed, so "Penalty Kick",
// "penalty-kick" and "penalty_kick" all compare equal.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view mode_name(GoalMode m) {
  for (const auto& e : kModeNames)
    if (e.mode == m) return e.name;
  return "unknown";
}

std::string_view mode_label(GoalMode m) {
  for (const auto& e : kModeNames)
    if (e.mode == m) return e.label;
  return "unknown";
}

std::optional<GoalMode> parse_mode(std::string_view text) {
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '6')
    return static_cast<GoalMode>(text[0] - '0');
  const std::string norm = normalize(text);
  if (norm.empty()) return std::nullopt;
  for (const auto& e : kModeNames)
    if (norm == normalize(e.name) || norm == normalize(e.label)) return e.mode;
  return std::nullopt;
}

std::vector<Violation> validate_dataset(const PlayerDataset& ds) {
  std::vector<Violation> out;
  std::size_t censored_count = 0;
  for (std::size_t i = 0; i < ds.observations.size(); ++i) {
    const Observation& obs = ds.observations[i];
    if (!(obs.duration_minutes > 0.0))
      out.push_back({i, "duration_minutes must be > 0, got " +
                            std::to_string(obs.duration_minutes)});
    if (obs.duration_minutes > 120.0)
      out.push_back({i, "duration_minutes must be <= 120, got " +
                            std::to_string(obs.duration_minutes)});
    if (obs.censored && obs.mode.has_value())
      out.push_back({i, "censored observation must not carry a goal mode"});
    if (!obs.censored && !obs.mode.has_value())
      out.push_back({i, "uncensored observation must carry a goal mode"});
    if (obs.censored) ++censored_count;
  }
  if (ds.games_played < 0)
    out.push_back({std::nullopt, "games_played must be non-negative"});
  if (ds.games_with_goal < 0)
    out.push_back({std::nullopt, "games_with_goal must be non-negative"});
  if (ds.games_with_goal > ds.games_played)
    out.push_back({std::nullopt,
                   "games_with_goal (" + std::to_string(ds.games_with_goal) +
                       ") exceeds games_played (" +
                       std::to_string(ds.games_played) + ")"});
  const long long expected_censored =
      static_cast<long long>(ds.games_played) - ds.games_with_goal;
  if (expected_censored >= 0 &&
      static_cast<long long>(censored_count) != expected_censored)
    out.push_back({std::nullopt,
                   "censored record count (" + std::to_string(censored_count) +
                       ") must equal games_played - games_with_goal (" +
                       std::to_string(expected_censored) + ")"});
  return out;
}

CurvePoint evaluate_curve(const ReliabilityCurve& curve, double t) {
  if (t < 0.0)
    throw std::invalid_argument("evaluate_curve: t must be non-negative");
  // First stored time strictly greater than t; the value lives one slot back.
  const auto it = std::upper_bound(curve.times.begin(), curve.times.end(), t);
  if (it == curve.times.begin()) return CurvePoint{1.0, 1.0, 1.0};
  const std::size_t k = static_cast<std::size_t>(it - curve.times.begin()) - 1;
  return CurvePoint{curve.estimates[k], curve.ci_lower[k], curve.ci_upper[k]};
}

}  // namespace goalrel
