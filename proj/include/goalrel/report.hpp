#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goalrel/cfm.hpp"
#include "goalrel/compare.hpp"
#include "goalrel/ingest.hpp"
#include "goalrel/minutes.hpp"
#include "goalrel/summary.hpp"

namespace goalrel {

/// One row of the per-mode curve comparison table. result is absent when the
/// mode lacks the events needed for a meaningful test (for example one
/// career's single long-range goal); note then says why.
struct LogRankRow {
  GoalMode mode = GoalMode::PenaltyKick;
  std::optional<LogRankResult> result;
  std::string note;
};

/// Everything the end-to-end pipeline produces for a pair of players.
struct ReportBundle {
  std::string player_a;
  std::string player_b;
  SummaryTable summary_a;
  SummaryTable summary_b;
  std::map<GoalMode, ReliabilityCurve> km_a;  // one curve per mode, all six
  std::map<GoalMode, ReliabilityCurve> km_b;
  CFMCurve cfm_a;
  CFMCurve cfm_b;
  std::vector<LogRankRow> logrank_rows;  // one row per mode, all six
  OverlapVerdict overlap;                // combined curves on the grid
  MinuteHistogram histogram_a;
  MinuteHistogram histogram_b;
  PointsTable points;
};

struct PipelineConfig {
  CFMConfig cfm;
  std::vector<double> grid = default_grid();
  OverlapOptions overlap;
  bool points_per_match = false;
};

/// Runs the full pipeline on two input files: ingestion, descriptives,
/// per-mode curve fits, per-mode log-rank tests, combined-mode fits, the
/// band-overlap verdict, and the minute histogram/points comparison.
/// Deterministic for fixed inputs and config. A mode is tested with log-rank
/// only when both players select it under the config; other modes get an
/// insufficient-data row. Ingestion or validation failures abort with the
/// offending file and row.
ReportBundle run_pipeline(const std::string& path_a, const std::string& path_b,
                          const PipelineConfig& cfg = {});

enum class ExportFormat { Csv, Json };

/// Writes one file per artifact into out_dir and returns the written paths:
/// summary_a, summary_b, km_<player>_<mode> (all modes), cfm_<player>,
/// logrank, histogram, points and overlap, with .csv or .json extensions.
/// CSV carries 6 significant digits; JSON full double precision.
std::vector<std::filesystem::path> export_bundle(const ReportBundle& bundle,
                                                 const std::filesystem::path& out_dir,
                                                 ExportFormat format);

/// Reads a JSON export back into a bundle (used to check that exports are
/// lossless). Expects the file set written by export_bundle.
ReportBundle import_bundle(const std::filesystem::path& dir);

/// Filesystem-safe lowercase slug used in export file names.
std::string player_slug(const std::string& name);

/// Builds the per-mode comparison table: one row per mode in `modes`, tested
/// when both datasets select the mode under cfg, otherwise marked
/// insufficient.
std::vector<LogRankRow> logrank_table(const PlayerDataset& a,
                                      const PlayerDataset& b,
                                      const CFMConfig& cfg,
                                      std::span<const GoalMode> modes = kAllModes);

// Single-artifact serializers shared by export_bundle and the CLI.
void write_summary(std::ostream& out, const std::string& player,
                   const SummaryTable& table, ExportFormat format);
void write_curve(std::ostream& out, const std::string& player,
                 std::string_view curve_name, const ReliabilityCurve& curve,
                 ExportFormat format);
void write_cfm(std::ostream& out, const std::string& player, const CFMCurve& curve,
               ExportFormat format);
void write_logrank(std::ostream& out, const std::vector<LogRankRow>& rows,
                   ExportFormat format);
void write_histograms(std::ostream& out, const std::string& player_a,
                      const std::string& player_b, const MinuteHistogram& a,
                      const MinuteHistogram& b, ExportFormat format);
void write_points(std::ostream& out, const PointsTable& points, ExportFormat format);
void write_overlap(std::ostream& out, const OverlapVerdict& verdict,
                   ExportFormat format);

}  // namespace goalrel
