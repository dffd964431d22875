#include "goalrel/report.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace goalrel {

namespace {

using nlohmann::json;

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::pair<std::string, std::string> resolve_slugs(const std::string& name_a,
                                                  const std::string& name_b) {
  std::string slug_a = player_slug(name_a);
  std::string slug_b = player_slug(name_b);
  if (slug_a == slug_b) {
    slug_a += "_a";
    slug_b += "_b";
  }
  return {slug_a, slug_b};
}

std::set<GoalMode> selected_or_empty(const PlayerDataset& ds, const CFMConfig& cfg) {
  try {
    return select_modes(ds, cfg);
  } catch (const DataError&) {
    return {};
  }
}

json summary_json(const std::string& player, const SummaryTable& s) {
  json counts = json::object();
  json percentages = json::object();
  for (GoalMode m : kAllModes) {
    counts[std::string(mode_name(m))] = s.mode_counts.at(m);
    percentages[std::string(mode_name(m))] = s.mode_percentages.at(m);
  }
  return json{{"player", player},
              {"games_played", s.games_played},
              {"games_with_goal", s.games_with_goal},
              {"censored_count", s.censored_count},
              {"uncensored_count", s.uncensored_count},
              {"total_records", s.total_records},
              {"goals_per_match", s.goals_per_match},
              {"mode_counts", counts},
              {"mode_percentages", percentages}};
}

SummaryTable summary_from_json(const json& j) {
  SummaryTable s;
  s.games_played = j.at("games_played").get<int>();
  s.games_with_goal = j.at("games_with_goal").get<int>();
  s.censored_count = j.at("censored_count").get<int>();
  s.uncensored_count = j.at("uncensored_count").get<int>();
  s.total_records = j.at("total_records").get<int>();
  s.goals_per_match = j.at("goals_per_match").get<double>();
  for (GoalMode m : kAllModes) {
    const std::string key(mode_name(m));
    s.mode_counts[m] = j.at("mode_counts").at(key).get<int>();
    s.mode_percentages[m] = j.at("mode_percentages").at(key).get<double>();
  }
  return s;
}

json curve_json(const std::string& player, std::string_view curve_name,
                const ReliabilityCurve& c) {
  return json{{"player", player},
              {"mode", std::string(curve_name)},
              {"n_total", c.n_total},
              {"times", c.times},
              {"estimates", c.estimates},
              {"variances", c.variances},
              {"ci_lower", c.ci_lower},
              {"ci_upper", c.ci_upper},
              {"n_risk", c.n_risk},
              {"n_event", c.n_event}};
}

ReliabilityCurve curve_from_json(const json& j) {
  ReliabilityCurve c;
  c.n_total = j.at("n_total").get<int>();
  c.times = j.at("times").get<std::vector<double>>();
  c.estimates = j.at("estimates").get<std::vector<double>>();
  c.variances = j.at("variances").get<std::vector<double>>();
  c.ci_lower = j.at("ci_lower").get<std::vector<double>>();
  c.ci_upper = j.at("ci_upper").get<std::vector<double>>();
  c.n_risk = j.at("n_risk").get<std::vector<int>>();
  c.n_event = j.at("n_event").get<std::vector<int>>();
  return c;
}

json cfm_json(const std::string& player, const CFMCurve& c) {
  std::vector<std::string> modes;
  for (const auto& [mode, km] : c.per_mode) modes.emplace_back(mode_name(mode));
  return json{{"player", player},        {"modes", modes},
              {"times", c.times},        {"estimates", c.estimates},
              {"variances", c.variances}, {"ci_lower", c.ci_lower},
              {"ci_upper", c.ci_upper}};
}

json logrank_json(const std::vector<LogRankRow>& rows) {
  json out = json::array();
  for (const LogRankRow& row : rows) {
    json r{{"mode", std::string(mode_name(row.mode))}};
    if (row.result) {
      r["status"] = "ok";
      r["chi_square"] = row.result->chi_square;
      r["degrees_freedom"] = row.result->degrees_freedom;
      r["p_value"] = row.result->p_value;
      r["observed_a"] = row.result->observed_a;
      r["expected_a"] = row.result->expected_a;
    } else {
      r["status"] = "insufficient_data";
      r["note"] = row.note;
    }
    out.push_back(std::move(r));
  }
  return json{{"rows", std::move(out)}};
}

void dump_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("import_bundle: cannot read " + path.string());
  json j;
  in >> j;
  return j;
}

}  // namespace

std::string player_slug(const std::string& name) {
  std::string slug;
  bool pending_sep = false;
  for (char c : name) {
    const unsigned char uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      if (pending_sep && !slug.empty()) slug.push_back('_');
      pending_sep = false;
      slug.push_back(static_cast<char>(std::tolower(uc)));
    } else {
      pending_sep = true;
    }
  }
  return slug.empty() ? "player" : slug;
}

void write_summary(std::ostream& out, const std::string& player,
                   const SummaryTable& s, ExportFormat format) {
  if (format == ExportFormat::Json) {
    dump_json(out, summary_json(player, s));
    return;
  }
  out << "statistic,value,percentage\n";
  out << "player," << player << ",\n";
  out << "games_played," << s.games_played << ",100\n";
  out << "censored," << s.censored_count << ','
      << fmt(100.0 * s.censored_count / std::max(s.total_records, 1)) << '\n';
  out << "uncensored," << s.uncensored_count << ','
      << fmt(100.0 * s.uncensored_count / std::max(s.total_records, 1)) << '\n';
  out << "total_records," << s.total_records << ",100\n";
  for (GoalMode m : kAllModes)
    out << mode_name(m) << ',' << s.mode_counts.at(m) << ','
        << fmt(s.mode_percentages.at(m)) << '\n';
  out << "games_with_goal," << s.games_with_goal << ','
      << fmt(100.0 * s.games_with_goal / std::max(s.games_played, 1)) << '\n';
  out << "goals_per_match," << fmt(s.goals_per_match) << ",\n";
}

void write_curve(std::ostream& out, const std::string& player,
                 std::string_view curve_name, const ReliabilityCurve& c,
                 ExportFormat format) {
  if (format == ExportFormat::Json) {
    dump_json(out, curve_json(player, curve_name, c));
    return;
  }
  out << "time,estimate,variance,ci_lower,ci_upper,n_risk,n_event\n";
  for (std::size_t k = 0; k < c.times.size(); ++k)
    out << fmt(c.times[k]) << ',' << fmt(c.estimates[k]) << ','
        << fmt(c.variances[k]) << ',' << fmt(c.ci_lower[k]) << ','
        << fmt(c.ci_upper[k]) << ',' << c.n_risk[k] << ',' << c.n_event[k] << '\n';
}

void write_cfm(std::ostream& out, const std::string& player, const CFMCurve& c,
               ExportFormat format) {
  if (format == ExportFormat::Json) {
    dump_json(out, cfm_json(player, c));
    return;
  }
  out << "time,estimate,variance,ci_lower,ci_upper\n";
  for (std::size_t k = 0; k < c.times.size(); ++k)
    out << fmt(c.times[k]) << ',' << fmt(c.estimates[k]) << ','
        << fmt(c.variances[k]) << ',' << fmt(c.ci_lower[k]) << ','
        << fmt(c.ci_upper[k]) << '\n';
}

void write_logrank(std::ostream& out, const std::vector<LogRankRow>& rows,
                   ExportFormat format) {
  if (format == ExportFormat::Json) {
    dump_json(out, logrank_json(rows));
    return;
  }
  out << "mode,status,chi_square,degrees_freedom,p_value,observed_a,expected_a\n";
  for (const LogRankRow& row : rows) {
    out << mode_name(row.mode) << ',';
    if (row.result) {
      out << "ok," << fmt(row.result->chi_square) << ','
          << row.result->degrees_freedom << ',' << fmt(row.result->p_value) << ','
          << fmt(row.result->observed_a) << ',' << fmt(row.result->expected_a)
          << '\n';
    } else {
      out << "insufficient_data,,,,,\n";
    }
  }
}

void write_histograms(std::ostream& out, const std::string& player_a,
                      const std::string& player_b, const MinuteHistogram& a,
                      const MinuteHistogram& b, ExportFormat format) {
  if (format == ExportFormat::Json) {
    dump_json(out, json{{"player_a", player_a},
                        {"player_b", player_b},
                        {"counts_a", a.counts},
                        {"counts_b", b.counts}});
    return;
  }
  out << "minute,count_a,count_b\n";
  for (int m = 1; m <= kMaxMinute; ++m)
    out << m << ',' << a.count_at(m) << ',' << b.count_at(m) << '\n';
}

void write_points(std::ostream& out, const PointsTable& points, ExportFormat format) {
  if (format == ExportFormat::Json) {
    json segments = json::array();
    for (const SegmentPoints& seg : points.segments)
      segments.push_back(json{{"label", seg.label},
                              {"first_minute", seg.first_minute},
                              {"last_minute", seg.last_minute},
                              {"points_a", seg.points_a},
                              {"points_b", seg.points_b},
                              {"draws", seg.draws}});
    dump_json(out, json{{"segments", std::move(segments)},
                        {"points_a_total", points.points_a_total},
                        {"points_b_total", points.points_b_total},
                        {"draws_total", points.draws_total}});
    return;
  }
  out << "segment,points_a,points_b,draws\n";
  for (const SegmentPoints& seg : points.segments)
    out << seg.label << ',' << seg.points_a << ',' << seg.points_b << ','
        << seg.draws << '\n';
  out << "total," << points.points_a_total << ',' << points.points_b_total << ','
      << points.draws_total << '\n';
}

void write_overlap(std::ostream& out, const OverlapVerdict& verdict,
                   ExportFormat format) {
  if (format == ExportFormat::Json) {
    dump_json(out, json{{"grid", verdict.grid},
                        {"overlap_flags", verdict.overlap_flags},
                        {"fraction_overlapping", verdict.fraction_overlapping},
                        {"verdict", std::string(to_string(verdict.verdict))}});
    return;
  }
  out << "time,intervals_overlap\n";
  for (std::size_t k = 0; k < verdict.grid.size(); ++k)
    out << fmt(verdict.grid[k]) << ',' << (verdict.overlap_flags[k] ? 1 : 0) << '\n';
}

std::vector<LogRankRow> logrank_table(const PlayerDataset& a,
                                      const PlayerDataset& b,
                                      const CFMConfig& cfg,
                                      std::span<const GoalMode> modes) {
  const std::set<GoalMode> selected_a = selected_or_empty(a, cfg);
  const std::set<GoalMode> selected_b = selected_or_empty(b, cfg);
  std::vector<LogRankRow> rows;
  for (GoalMode m : modes) {
    LogRankRow row;
    row.mode = m;
    if (selected_a.contains(m) && selected_b.contains(m)) {
      try {
        row.result = log_rank(restrict_to_mode(a, m), restrict_to_mode(b, m));
      } catch (const DataError& e) {
        row.note = e.what();
      }
    } else {
      const auto events = [m](const PlayerDataset& ds) {
        int n = 0;
        for (const Observation& obs : ds.observations)
          if (!obs.censored && obs.mode == m) ++n;
        return n;
      };
      std::ostringstream note;
      note << "insufficient events (" << a.player_name << ": " << events(a) << ", "
           << b.player_name << ": " << events(b) << ")";
      row.note = note.str();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ReportBundle run_pipeline(const std::string& path_a, const std::string& path_b,
                          const PipelineConfig& cfg) {
  ReportBundle bundle;
  const PlayerDataset ds_a =
      load_csv(IngestConfig{path_a, file_stem(path_a), false});
  const PlayerDataset ds_b =
      load_csv(IngestConfig{path_b, file_stem(path_b), false});
  bundle.player_a = ds_a.player_name;
  bundle.player_b = ds_b.player_name;

  bundle.summary_a = summarize(ds_a);
  bundle.summary_b = summarize(ds_b);

  for (GoalMode m : kAllModes) {
    bundle.km_a.emplace(m, fit_km(restrict_to_mode(ds_a, m), cfg.cfm.confidence));
    bundle.km_b.emplace(m, fit_km(restrict_to_mode(ds_b, m), cfg.cfm.confidence));
  }

  bundle.logrank_rows = logrank_table(ds_a, ds_b, cfg.cfm);

  bundle.cfm_a = fit_cfm(ds_a, cfg.cfm);
  bundle.cfm_b = fit_cfm(ds_b, cfg.cfm);
  bundle.overlap = ci_overlap(bundle.cfm_a, bundle.cfm_b, cfg.grid, cfg.overlap);

  bundle.histogram_a = minute_histogram(ds_a);
  bundle.histogram_b = minute_histogram(ds_b);
  PointsOptions points_options;
  points_options.per_match = cfg.points_per_match;
  points_options.games_a = ds_a.games_played;
  points_options.games_b = ds_b.games_played;
  bundle.points =
      points_comparison(bundle.histogram_a, bundle.histogram_b, points_options);
  return bundle;
}

std::vector<std::filesystem::path> export_bundle(const ReportBundle& bundle,
                                                 const std::filesystem::path& out_dir,
                                                 ExportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const auto [slug_a, slug_b] = resolve_slugs(bundle.player_a, bundle.player_b);
  const std::string ext = format == ExportFormat::Csv ? ".csv" : ".json";
  std::vector<std::filesystem::path> written;
  const auto open_target = [&](const std::string& base) {
    written.push_back(out_dir / (base + ext));
    std::ofstream out(written.back());
    if (!out)
      throw DataError("export_bundle: cannot write " + written.back().string());
    return out;
  };

  {
    auto out = open_target("summary_a");
    write_summary(out, bundle.player_a, bundle.summary_a, format);
  }
  {
    auto out = open_target("summary_b");
    write_summary(out, bundle.player_b, bundle.summary_b, format);
  }
  for (const auto& [mode, curve] : bundle.km_a) {
    auto out = open_target("km_" + slug_a + "_" + std::string(mode_name(mode)));
    write_curve(out, bundle.player_a, mode_name(mode), curve, format);
  }
  for (const auto& [mode, curve] : bundle.km_b) {
    auto out = open_target("km_" + slug_b + "_" + std::string(mode_name(mode)));
    write_curve(out, bundle.player_b, mode_name(mode), curve, format);
  }
  {
    auto out = open_target("cfm_" + slug_a);
    write_cfm(out, bundle.player_a, bundle.cfm_a, format);
  }
  {
    auto out = open_target("cfm_" + slug_b);
    write_cfm(out, bundle.player_b, bundle.cfm_b, format);
  }
  {
    auto out = open_target("logrank");
    write_logrank(out, bundle.logrank_rows, format);
  }
  {
    auto out = open_target("histogram");
    write_histograms(out, bundle.player_a, bundle.player_b, bundle.histogram_a,
                     bundle.histogram_b, format);
  }
  {
    auto out = open_target("points");
    write_points(out, bundle.points, format);
  }
  {
    auto out = open_target("overlap");
    write_overlap(out, bundle.overlap, format);
  }
  return written;
}

ReportBundle import_bundle(const std::filesystem::path& dir) {
  ReportBundle bundle;
  const json summary_a = load_json_file(dir / "summary_a.json");
  const json summary_b = load_json_file(dir / "summary_b.json");
  bundle.player_a = summary_a.at("player").get<std::string>();
  bundle.player_b = summary_b.at("player").get<std::string>();
  bundle.summary_a = summary_from_json(summary_a);
  bundle.summary_b = summary_from_json(summary_b);

  const auto [slug_a, slug_b] = resolve_slugs(bundle.player_a, bundle.player_b);
  for (GoalMode m : kAllModes) {
    bundle.km_a.emplace(m, curve_from_json(load_json_file(
                               dir / ("km_" + slug_a + "_" +
                                      std::string(mode_name(m)) + ".json"))));
    bundle.km_b.emplace(m, curve_from_json(load_json_file(
                               dir / ("km_" + slug_b + "_" +
                                      std::string(mode_name(m)) + ".json"))));
  }

  const auto load_cfm = [&](const std::string& slug,
                            const std::map<GoalMode, ReliabilityCurve>& km) {
    const json j = load_json_file(dir / ("cfm_" + slug + ".json"));
    CFMCurve c;
    c.times = j.at("times").get<std::vector<double>>();
    c.estimates = j.at("estimates").get<std::vector<double>>();
    c.variances = j.at("variances").get<std::vector<double>>();
    c.ci_lower = j.at("ci_lower").get<std::vector<double>>();
    c.ci_upper = j.at("ci_upper").get<std::vector<double>>();
    for (const auto& name : j.at("modes").get<std::vector<std::string>>()) {
      const auto mode = parse_mode(name);
      if (!mode) throw DataError("import_bundle: unknown mode " + name);
      c.per_mode.emplace(*mode, km.at(*mode));
    }
    return c;
  };
  bundle.cfm_a = load_cfm(slug_a, bundle.km_a);
  bundle.cfm_b = load_cfm(slug_b, bundle.km_b);

  const json logrank = load_json_file(dir / "logrank.json");
  for (const json& r : logrank.at("rows")) {
    LogRankRow row;
    const auto mode = parse_mode(r.at("mode").get<std::string>());
    if (!mode) throw DataError("import_bundle: unknown mode in logrank rows");
    row.mode = *mode;
    if (r.at("status").get<std::string>() == "ok") {
      LogRankResult result;
      result.chi_square = r.at("chi_square").get<double>();
      result.degrees_freedom = r.at("degrees_freedom").get<int>();
      result.p_value = r.at("p_value").get<double>();
      result.observed_a = r.at("observed_a").get<double>();
      result.expected_a = r.at("expected_a").get<double>();
      row.result = result;
    } else {
      row.note = r.value("note", "");
    }
    bundle.logrank_rows.push_back(std::move(row));
  }

  const json histogram = load_json_file(dir / "histogram.json");
  const auto counts_a = histogram.at("counts_a").get<std::vector<int>>();
  const auto counts_b = histogram.at("counts_b").get<std::vector<int>>();
  if (counts_a.size() != static_cast<std::size_t>(kMaxMinute) ||
      counts_b.size() != static_cast<std::size_t>(kMaxMinute))
    throw DataError("import_bundle: histogram must cover minutes 1..120");
  std::copy(counts_a.begin(), counts_a.end(), bundle.histogram_a.counts.begin());
  std::copy(counts_b.begin(), counts_b.end(), bundle.histogram_b.counts.begin());

  const json points = load_json_file(dir / "points.json");
  const json& segments = points.at("segments");
  if (segments.size() != bundle.points.segments.size())
    throw DataError("import_bundle: points table must have three segments");
  for (std::size_t i = 0; i < bundle.points.segments.size(); ++i) {
    SegmentPoints& seg = bundle.points.segments[i];
    seg.label = segments[i].at("label").get<std::string>();
    seg.first_minute = segments[i].at("first_minute").get<int>();
    seg.last_minute = segments[i].at("last_minute").get<int>();
    seg.points_a = segments[i].at("points_a").get<int>();
    seg.points_b = segments[i].at("points_b").get<int>();
    seg.draws = segments[i].at("draws").get<int>();
  }
  bundle.points.points_a_total = points.at("points_a_total").get<int>();
  bundle.points.points_b_total = points.at("points_b_total").get<int>();
  bundle.points.draws_total = points.at("draws_total").get<int>();

  const json overlap = load_json_file(dir / "overlap.json");
  bundle.overlap.grid = overlap.at("grid").get<std::vector<double>>();
  bundle.overlap.overlap_flags = overlap.at("overlap_flags").get<std::vector<bool>>();
  bundle.overlap.fraction_overlapping =
      overlap.at("fraction_overlapping").get<double>();
  bundle.overlap.verdict =
      overlap.at("verdict").get<std::string>() == "different"
          ? OverlapJudgment::Different
          : OverlapJudgment::NotSignificantlyDifferent;
  return bundle;
}

}  // namespace goalrel
