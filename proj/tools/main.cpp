// Command-line front end: ingestion, descriptive statistics, reliability
// curve fits, curve comparisons and the full report pipeline.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "goalrel/cfm.hpp"
#include "goalrel/compare.hpp"
#include "goalrel/ingest.hpp"
#include "goalrel/kaplan_meier.hpp"
#include "goalrel/minutes.hpp"
#include "goalrel/report.hpp"
#include "goalrel/summary.hpp"

namespace {

using namespace goalrel;

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::vector<GoalMode> parse_modes_flag(const std::string& text) {
  std::vector<GoalMode> modes;
  for (const std::string& token : split(text, ',')) {
    const auto mode = parse_mode(token);
    if (!mode) throw UsageError("unknown goal mode: '" + token + "'");
    modes.push_back(*mode);
  }
  return modes;
}

// Accepts "1..120" ranges (integer step 1) or comma-separated times.
std::vector<double> parse_grid_flag(const std::string& text) {
  std::vector<double> grid;
  const auto range_sep = text.find("..");
  if (range_sep != std::string::npos) {
    try {
      const int first = std::stoi(text.substr(0, range_sep));
      const int last = std::stoi(text.substr(range_sep + 2));
      if (first > last) throw UsageError("grid range is empty: " + text);
      for (int m = first; m <= last; ++m) grid.push_back(m);
      return grid;
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("cannot parse grid range: " + text);
    }
  }
  for (const std::string& token : split(text, ',')) {
    try {
      grid.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw UsageError("cannot parse grid value: '" + token + "'");
    }
  }
  return grid;
}

CFMConfig make_cfm_config(const std::string& modes_flag, int min_events,
                          double confidence) {
  CFMConfig cfg;
  cfg.min_events_per_mode = min_events;
  cfg.confidence = confidence;
  if (!modes_flag.empty()) {
    const std::vector<GoalMode> modes = parse_modes_flag(modes_flag);
    cfg.included_modes = std::set<GoalMode>(modes.begin(), modes.end());
  }
  return cfg;
}

ExportFormat parse_format(const std::string& text) {
  if (text == "csv") return ExportFormat::Csv;
  if (text == "json") return ExportFormat::Json;
  throw UsageError("format must be csv or json, got '" + text + "'");
}

PlayerDataset load_input(const std::string& path) {
  return load_csv(IngestConfig{
      path, std::filesystem::path(path).stem().string(), false});
}

// Writes through a file when out is set, otherwise to stdout.
void emit(const std::optional<std::string>& out_path,
          const std::function<void(std::ostream&)>& writer) {
  if (out_path) {
    const std::filesystem::path path(*out_path);
    if (path.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + *out_path);
    writer(out);
  } else {
    writer(std::cout);
  }
}

struct CommonFlags {
  std::string modes;
  int min_events = 20;
  double confidence = 0.95;
  std::string grid = "1..120";
  std::string format = "csv";
  std::optional<std::string> out;
};

void add_analysis_flags(CLI::App* cmd, CommonFlags& flags, bool with_grid = false) {
  cmd->add_option("--modes", flags.modes,
                  "Comma-separated goal modes (names or codes 1..6)");
  cmd->add_option("--min-events", flags.min_events,
                  "Minimum goals for a mode to enter mode selection")
      ->capture_default_str();
  cmd->add_option("--confidence", flags.confidence,
                  "Confidence level for the interval bands")
      ->capture_default_str();
  if (with_grid)
    cmd->add_option("--grid", flags.grid,
                    "Evaluation grid: 'first..last' or comma-separated times")
        ->capture_default_str();
  cmd->add_option("--format", flags.format, "Output format: csv or json")
      ->capture_default_str();
  cmd->add_option("--out", flags.out, "Output file (or directory for report)");
}

int run(int argc, char** argv) {
  CLI::App app{"Goal-scoring reliability analysis from censored duration data"};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "Check a data file against the schema");
  std::string validate_input;
  bool validate_strict = false;
  validate_cmd->add_option("--input", validate_input, "Input CSV")->required();
  validate_cmd->add_flag("--strict", validate_strict,
                         "Stop at the first problem instead of collecting all");

  // summarize
  auto* summarize_cmd =
      app.add_subcommand("summarize", "Descriptive statistics for one player");
  std::string summarize_input;
  CommonFlags summarize_flags;
  summarize_cmd->add_option("--input", summarize_input, "Input CSV")->required();
  summarize_cmd->add_option("--format", summarize_flags.format,
                            "Output format: csv or json")
      ->capture_default_str();
  summarize_cmd->add_option("--out", summarize_flags.out, "Output file");

  // km
  auto* km_cmd = app.add_subcommand(
      "km", "Reliability curve fit (pooled goals, or per mode with --modes)");
  std::string km_input;
  CommonFlags km_flags;
  km_cmd->add_option("--input", km_input, "Input CSV")->required();
  add_analysis_flags(km_cmd, km_flags);

  // logrank
  auto* logrank_cmd = app.add_subcommand(
      "logrank", "Per-mode curve comparison between two players");
  std::string logrank_a, logrank_b;
  CommonFlags logrank_flags;
  logrank_cmd->add_option("--input-a", logrank_a, "First player CSV")->required();
  logrank_cmd->add_option("--input-b", logrank_b, "Second player CSV")->required();
  add_analysis_flags(logrank_cmd, logrank_flags);

  // cfm
  auto* cfm_cmd = app.add_subcommand(
      "cfm", "Combined-modes reliability curve for one player");
  std::string cfm_input;
  CommonFlags cfm_flags;
  cfm_cmd->add_option("--input", cfm_input, "Input CSV")->required();
  add_analysis_flags(cfm_cmd, cfm_flags);

  // points
  auto* points_cmd = app.add_subcommand(
      "points", "Minute histograms and superiority points for two players");
  std::string points_a, points_b;
  bool points_per_match = false;
  CommonFlags points_flags;
  points_cmd->add_option("--input-a", points_a, "First player CSV")->required();
  points_cmd->add_option("--input-b", points_b, "Second player CSV")->required();
  points_cmd->add_flag("--per-match", points_per_match,
                       "Compare per-match goal rates instead of raw counts");
  points_cmd->add_option("--format", points_flags.format,
                         "Output format: csv or json")
      ->capture_default_str();
  points_cmd->add_option("--out", points_flags.out, "Output directory");

  // report
  auto* report_cmd = app.add_subcommand(
      "report", "Full pipeline for two players, exported to a directory");
  std::string report_a, report_b;
  bool report_per_match = false;
  bool report_half_margin = false;
  CommonFlags report_flags;
  report_cmd->add_option("--input-a", report_a, "First player CSV")->required();
  report_cmd->add_option("--input-b", report_b, "Second player CSV")->required();
  report_cmd->add_flag("--per-match", report_per_match,
                       "Points procedure compares per-match goal rates");
  report_cmd->add_flag("--half-margin", report_half_margin,
                       "Use the half-margin overlap refinement");
  add_analysis_flags(report_cmd, report_flags, /*with_grid=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*validate_cmd) {
      try {
        const PlayerDataset ds = load_csv(
            IngestConfig{validate_input,
                         std::filesystem::path(validate_input).stem().string(),
                         validate_strict});
        std::cout << "OK: " << ds.observations.size() << " records, "
                  << ds.games_played << " games, " << ds.games_with_goal
                  << " with a goal\n";
        return kExitOk;
      } catch (const CsvError& e) {
        for (const CsvIssue& issue : e.issues()) {
          std::cerr << validate_input << ':' << issue.row << ": ";
          if (!issue.field.empty()) std::cerr << issue.field << ": ";
          std::cerr << issue.message << '\n';
        }
        return kExitDataError;
      }
    }

    if (*summarize_cmd) {
      const ExportFormat format = parse_format(summarize_flags.format);
      const PlayerDataset ds = load_input(summarize_input);
      const SummaryTable table = summarize(ds);
      emit(summarize_flags.out, [&](std::ostream& out) {
        write_summary(out, ds.player_name, table, format);
      });
      return kExitOk;
    }

    if (*km_cmd) {
      const ExportFormat format = parse_format(km_flags.format);
      const PlayerDataset ds = load_input(km_input);
      std::vector<std::pair<std::string, ReliabilityCurve>> curves;
      if (km_flags.modes.empty()) {
        KMInput input;
        for (const Observation& obs : ds.observations) {
          input.durations.push_back(obs.duration_minutes);
          input.event_flags.push_back(!obs.censored);
        }
        curves.emplace_back("all", fit_km(input, km_flags.confidence));
      } else {
        for (GoalMode m : parse_modes_flag(km_flags.modes))
          curves.emplace_back(mode_name(m),
                              fit_km(restrict_to_mode(ds, m), km_flags.confidence));
      }
      if (km_flags.out) {
        const std::filesystem::path dir(*km_flags.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        const std::string ext = format == ExportFormat::Csv ? ".csv" : ".json";
        for (const auto& [name, curve] : curves) {
          const auto path =
              dir / ("km_" + player_slug(ds.player_name) + "_" + name + ext);
          std::ofstream out(path);
          if (!out) throw DataError("cannot write " + path.string());
          write_curve(out, ds.player_name, name, curve, format);
          std::cout << path.string() << '\n';
        }
      } else {
        for (const auto& [name, curve] : curves) {
          if (curves.size() > 1 && format == ExportFormat::Csv)
            std::cout << "# km " << ds.player_name << ' ' << name << '\n';
          write_curve(std::cout, ds.player_name, name, curve, format);
        }
      }
      return kExitOk;
    }

    if (*logrank_cmd) {
      const ExportFormat format = parse_format(logrank_flags.format);
      const CFMConfig cfg = make_cfm_config(logrank_flags.modes,
                                            logrank_flags.min_events,
                                            logrank_flags.confidence);
      const PlayerDataset ds_a = load_input(logrank_a);
      const PlayerDataset ds_b = load_input(logrank_b);
      std::vector<GoalMode> modes(kAllModes.begin(), kAllModes.end());
      if (!logrank_flags.modes.empty())
        modes = parse_modes_flag(logrank_flags.modes);
      const std::vector<LogRankRow> rows = logrank_table(ds_a, ds_b, cfg, modes);
      emit(logrank_flags.out,
           [&](std::ostream& out) { write_logrank(out, rows, format); });
      return kExitOk;
    }

    if (*cfm_cmd) {
      const ExportFormat format = parse_format(cfm_flags.format);
      const CFMConfig cfg = make_cfm_config(cfm_flags.modes, cfm_flags.min_events,
                                            cfm_flags.confidence);
      const PlayerDataset ds = load_input(cfm_input);
      const CFMCurve curve = fit_cfm(ds, cfg);
      emit(cfm_flags.out, [&](std::ostream& out) {
        write_cfm(out, ds.player_name, curve, format);
      });
      return kExitOk;
    }

    if (*points_cmd) {
      const ExportFormat format = parse_format(points_flags.format);
      const PlayerDataset ds_a = load_input(points_a);
      const PlayerDataset ds_b = load_input(points_b);
      const MinuteHistogram hist_a = minute_histogram(ds_a);
      const MinuteHistogram hist_b = minute_histogram(ds_b);
      PointsOptions options;
      options.per_match = points_per_match;
      options.games_a = ds_a.games_played;
      options.games_b = ds_b.games_played;
      const PointsTable table = points_comparison(hist_a, hist_b, options);
      if (points_flags.out) {
        const std::filesystem::path dir(*points_flags.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        const std::string ext = format == ExportFormat::Csv ? ".csv" : ".json";
        {
          std::ofstream out(dir / ("histogram" + ext));
          write_histograms(out, ds_a.player_name, ds_b.player_name, hist_a,
                           hist_b, format);
        }
        {
          std::ofstream out(dir / ("points" + ext));
          write_points(out, table, format);
        }
        std::cout << (dir / ("histogram" + ext)).string() << '\n'
                  << (dir / ("points" + ext)).string() << '\n';
      } else {
        if (format == ExportFormat::Csv)
          std::cout << "# histogram " << ds_a.player_name << " vs "
                    << ds_b.player_name << '\n';
        write_histograms(std::cout, ds_a.player_name, ds_b.player_name, hist_a,
                         hist_b, format);
        if (format == ExportFormat::Csv) std::cout << "# points\n";
        write_points(std::cout, table, format);
      }
      return kExitOk;
    }

    if (*report_cmd) {
      const ExportFormat format = parse_format(report_flags.format);
      if (!report_flags.out)
        throw UsageError("report requires --out <directory>");
      PipelineConfig cfg;
      cfg.cfm = make_cfm_config(report_flags.modes, report_flags.min_events,
                                report_flags.confidence);
      cfg.grid = parse_grid_flag(report_flags.grid);
      cfg.points_per_match = report_per_match;
      cfg.overlap.half_margin_rule = report_half_margin;
      const ReportBundle bundle = run_pipeline(report_a, report_b, cfg);
      const auto written = export_bundle(bundle, *report_flags.out, format);
      for (const auto& path : written) std::cout << path.string() << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
