#include "goalrel/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace goalrel {

namespace {

constexpr std::string_view kHeader =
    "match_id,season,minute,censored,mode,raw_minute_label";

std::string build_message(const std::string& path,
                          const std::vector<CsvIssue>& issues) {
  std::ostringstream out;
  out << path << ": " << issues.size()
      << (issues.size() == 1 ? " problem" : " problems");
  for (const CsvIssue& issue : issues) {
    out << "\n  row " << issue.row;
    if (!issue.field.empty()) out << ", field " << issue.field;
    out << ": " << issue.message;
  }
  return out.str();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::optional<double> parse_minute(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// "45+x" / "90+x" stoppage labels map to the base minute; any other label is
// preserved as opaque text without affecting the analysis minute.
std::optional<double> stoppage_base(const std::string& label) {
  const auto plus = label.find('+');
  if (plus == std::string::npos || plus + 1 >= label.size()) return std::nullopt;
  const std::string base = label.substr(0, plus);
  if (base != "45" && base != "90") return std::nullopt;
  for (std::size_t i = plus + 1; i < label.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(label[i]))) return std::nullopt;
  return base == "45" ? 45.0 : 90.0;
}

std::string format_minute(double minutes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", minutes);
  return buf;
}

// Deterministic, platform-independent helpers on top of mt19937_64. The
// standard distributions are implementation-defined, which would break the
// byte-identical fixture contract across toolchains.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

CsvError::CsvError(const std::string& path, std::vector<CsvIssue> issues)
    : DataError(build_message(path, issues)), issues_(std::move(issues)) {}

PlayerDataset load_csv(const IngestConfig& cfg) {
  if (cfg.input_path.empty())
    throw std::invalid_argument("load_csv: input_path must be non-empty");

  std::ifstream file(cfg.input_path);
  if (!file)
    throw CsvError(cfg.input_path, {{0, "", "cannot open file"}});

  std::vector<CsvIssue> issues;
  const auto report = [&](std::size_t row, std::string field, std::string message) {
    issues.push_back({row, std::move(field), std::move(message)});
    if (cfg.strict) throw CsvError(cfg.input_path, std::move(issues));
  };

  std::string line;
  if (!std::getline(file, line))
    throw CsvError(cfg.input_path, {{1, "", "missing header row"}});
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw CsvError(cfg.input_path,
                   {{1, "", "header must be exactly '" + std::string(kHeader) + "'"}});

  PlayerDataset ds;
  ds.player_name = cfg.player_name;

  struct MatchState {
    bool has_goal = false;
    bool has_censored = false;
  };
  std::unordered_map<std::string, MatchState> matches;
  std::vector<std::string> match_order;

  std::size_t row = 1;
  while (std::getline(file, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 6) {
      report(row, "", "expected 6 columns, got " + std::to_string(fields.size()));
      continue;
    }
    const std::string& match_id = fields[0];
    const std::string& season = fields[1];
    const std::string& minute_text = fields[2];
    const std::string& d_text = fields[3];
    const std::string& mode_text = fields[4];
    const std::string& label_text = fields[5];

    bool row_ok = true;
    if (match_id.empty()) {
      report(row, "match_id", "must be non-empty");
      row_ok = false;
    }

    const std::optional<double> minute = parse_minute(minute_text);
    if (!minute) {
      report(row, "minute", "not a number: '" + minute_text + "'");
      row_ok = false;
    } else if (!(*minute > 0.0) || *minute > 120.0) {
      report(row, "minute", "must be in (0, 120], got '" + minute_text + "'");
      row_ok = false;
    }

    // The file stores the censoring indicator d: 1 = scored, 0 = no goal.
    bool censored = false;
    if (d_text == "0") {
      censored = true;
    } else if (d_text == "1") {
      censored = false;
    } else {
      report(row, "censored", "must be 0 or 1, got '" + d_text + "'");
      row_ok = false;
    }

    std::optional<GoalMode> mode;
    if (!mode_text.empty()) {
      mode = parse_mode(mode_text);
      if (!mode) {
        report(row, "mode", "unknown mode code '" + mode_text + "'");
        row_ok = false;
      }
    }

    if (row_ok) {
      if (censored && mode.has_value()) {
        report(row, "mode", "censored row must not carry a mode");
        row_ok = false;
      } else if (!censored && !mode.has_value()) {
        report(row, "mode", "goal row must carry a mode");
        row_ok = false;
      }
    }

    if (row_ok && !match_id.empty()) {
      auto [it, inserted] = matches.try_emplace(match_id);
      if (inserted) match_order.push_back(match_id);
      MatchState& state = it->second;
      if (censored) {
        if (state.has_censored) {
          report(row, "censored", "duplicate censored record for match " + match_id);
          row_ok = false;
        } else if (state.has_goal) {
          report(row, "censored",
                 "match " + match_id + " has goal rows and cannot also be censored");
          row_ok = false;
        } else {
          state.has_censored = true;
        }
      } else {
        if (state.has_censored) {
          report(row, "censored",
                 "match " + match_id + " is recorded censored and cannot have goals");
          row_ok = false;
        } else {
          state.has_goal = true;
        }
      }
    }

    if (!row_ok) continue;

    Observation obs;
    obs.match_id = match_id;
    obs.season = season;
    obs.censored = censored;
    obs.mode = mode;
    obs.duration_minutes = *minute;
    if (!label_text.empty()) {
      obs.raw_minute_label = label_text;
      if (const auto base = stoppage_base(label_text)) obs.duration_minutes = *base;
    }
    ds.observations.push_back(std::move(obs));
  }

  ds.games_played = static_cast<int>(matches.size());
  for (const auto& [id, state] : matches)
    if (state.has_goal) ++ds.games_with_goal;

  if (issues.empty()) {
    const std::vector<Violation> violations = validate_dataset(ds);
    for (const Violation& v : violations) {
      // Record index i sits on file line i + 2 (header is line 1).
      const std::size_t vrow = v.record_index ? *v.record_index + 2 : 0;
      issues.push_back({vrow, "", v.message});
    }
  }
  if (!issues.empty()) throw CsvError(cfg.input_path, std::move(issues));
  return ds;
}

void write_csv(const PlayerDataset& ds, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file)
    throw DataError("write_csv: cannot open " + path.string() + " for writing");
  file << kHeader << '\n';
  for (const Observation& obs : ds.observations) {
    file << obs.match_id << ',' << obs.season << ','
         << format_minute(obs.duration_minutes) << ',' << (obs.censored ? 0 : 1)
         << ',';
    if (obs.mode) file << mode_code(*obs.mode);
    file << ',';
    if (obs.raw_minute_label) file << *obs.raw_minute_label;
    file << '\n';
  }
  if (!file.flush())
    throw DataError("write_csv: failed writing " + path.string());
}

PlayerDataset generate_fixture(const FixtureSpec& spec) {
  if (spec.games_played < 0 || spec.games_with_goal < 0)
    throw DataError("generate_fixture: game counts must be non-negative");
  if (spec.games_with_goal > spec.games_played)
    throw DataError("generate_fixture: games_with_goal exceeds games_played");
  long long total_goals = 0;
  for (const auto& [mode, count] : spec.goals_by_mode) {
    if (count < 0) throw DataError("generate_fixture: negative goal count");
    total_goals += count;
  }
  if (total_goals < spec.games_with_goal)
    throw DataError("generate_fixture: fewer goals than scoring games");
  if (total_goals > 0 && spec.games_with_goal == 0)
    throw DataError("generate_fixture: goals require at least one scoring game");

  std::vector<int> dist_minutes;
  std::vector<double> dist_cumulative;
  if (spec.goal_minute_distribution) {
    double cumulative = 0.0;
    for (const auto& [minute, weight] : *spec.goal_minute_distribution) {
      if (minute < 1 || minute > 120)
        throw DataError("generate_fixture: distribution minute out of 1..120");
      if (weight < 0.0)
        throw DataError("generate_fixture: negative distribution weight");
      if (weight == 0.0) continue;
      cumulative += weight;
      dist_minutes.push_back(minute);
      dist_cumulative.push_back(cumulative);
    }
    if (dist_minutes.empty())
      throw DataError("generate_fixture: goal minute distribution has no mass");
  }

  std::mt19937_64 rng(spec.seed);
  const auto draw_minute = [&]() -> double {
    if (dist_minutes.empty()) return static_cast<double>(1 + bounded(rng, 90));
    const double u = unit_real(rng) * dist_cumulative.back();
    const auto it =
        std::upper_bound(dist_cumulative.begin(), dist_cumulative.end(), u);
    const std::size_t k = std::min(
        static_cast<std::size_t>(it - dist_cumulative.begin()),
        dist_minutes.size() - 1);
    return static_cast<double>(dist_minutes[k]);
  };

  // One goal per scoring game, then spread the surplus at random.
  std::vector<int> goals_per_game(static_cast<std::size_t>(spec.games_with_goal), 1);
  for (long long extra = total_goals - spec.games_with_goal; extra > 0; --extra)
    ++goals_per_game[bounded(rng, goals_per_game.size())];

  // Mode sequence with exact multiplicities, deterministically shuffled.
  std::vector<GoalMode> mode_sequence;
  mode_sequence.reserve(static_cast<std::size_t>(total_goals));
  for (GoalMode m : kAllModes) {
    const auto it = spec.goals_by_mode.find(m);
    const int count = it == spec.goals_by_mode.end() ? 0 : it->second;
    mode_sequence.insert(mode_sequence.end(), static_cast<std::size_t>(count), m);
  }
  for (std::size_t i = mode_sequence.size(); i > 1; --i)
    std::swap(mode_sequence[i - 1], mode_sequence[bounded(rng, i)]);

  PlayerDataset ds;
  ds.player_name = "synthetic";
  ds.games_played = spec.games_played;
  ds.games_with_goal = spec.games_with_goal;
  ds.observations.reserve(static_cast<std::size_t>(total_goals) +
                          static_cast<std::size_t>(spec.games_played -
                                                   spec.games_with_goal));

  const auto match_id = [](int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "G%05d", index);
    return std::string(buf);
  };

  std::size_t next_mode = 0;
  int game = 1;
  for (int g = 0; g < spec.games_with_goal; ++g, ++game) {
    std::vector<double> minutes(static_cast<std::size_t>(goals_per_game[g]));
    for (double& m : minutes) m = draw_minute();
    std::sort(minutes.begin(), minutes.end());
    for (double m : minutes) {
      Observation obs;
      obs.match_id = match_id(game);
      obs.season = "synthetic";
      obs.duration_minutes = m;
      obs.censored = false;
      obs.mode = mode_sequence[next_mode++];
      ds.observations.push_back(std::move(obs));
    }
  }
  for (int g = spec.games_with_goal; g < spec.games_played; ++g, ++game) {
    Observation obs;
    obs.match_id = match_id(game);
    obs.season = "synthetic";
    obs.duration_minutes = 90.0;
    obs.censored = true;
    ds.observations.push_back(std::move(obs));
  }
  return ds;
}

}  // namespace goalrel
