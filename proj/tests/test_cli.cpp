// End-to-end checks of the command-line binary: exit codes and file outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "goalrel/ingest.hpp"
#include "test_util.hpp"

using namespace goalrel;

namespace {

int run_cli(const std::string& args) {
  const std::string command =
      std::string(GOALREL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

struct CliFixtures {
  testutil::TempDir dir{"cli"};
  std::filesystem::path good_a;
  std::filesystem::path good_b;
  std::filesystem::path bad;

  CliFixtures() {
    good_a = dir.path() / "alpha.csv";
    good_b = dir.path() / "beta.csv";
    bad = dir.path() / "broken.csv";
    FixtureSpec spec_a;
    spec_a.games_played = 60;
    spec_a.games_with_goal = 40;
    spec_a.goals_by_mode = {{GoalMode::PenaltyKick, 25},
                            {GoalMode::RightFootedKick, 30}};
    spec_a.seed = 1;
    FixtureSpec spec_b = spec_a;
    spec_b.seed = 2;
    write_csv(generate_fixture(spec_a), good_a);
    write_csv(generate_fixture(spec_b), good_b);
    std::ofstream out(bad);
    out << "match_id,season,minute,censored,mode,raw_minute_label\n";
    out << "M1,s,abc,1,5,\n";
  }
};

}  // namespace

TEST_CASE("cli exit codes: success, data error, usage error") {
  const CliFixtures files;
  CHECK(run_cli("validate --input " + files.good_a.string()) == 0);
  CHECK(run_cli("validate --input " + files.bad.string()) == 1);
  CHECK(run_cli("validate --input " + files.dir.path().string() +
                "/nonexistent.csv") == 1);
  CHECK(run_cli("validate") == 2);                    // missing --input
  CHECK(run_cli("no_such_subcommand") == 2);          // unknown subcommand
  CHECK(run_cli("") == 2);                            // subcommand required
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("km --input " + files.good_a.string() + " --modes backheel") == 2);
  CHECK(run_cli("summarize --input " + files.good_a.string() +
                " --format yaml") == 2);
  CHECK(run_cli("report --input-a " + files.good_a.string() + " --input-b " +
                files.good_b.string() + " --out " + files.dir.path().string() +
                "/g --grid abc") == 2);
  CHECK(run_cli("report --input-a " + files.good_a.string() + " --input-b " +
                files.good_b.string() + " --out " + files.dir.path().string() +
                "/g --grid 9..5") == 2);
}

TEST_CASE("cli summarize writes csv and json artifacts") {
  const CliFixtures files;
  const auto csv_out = files.dir.path() / "summary.csv";
  CHECK(run_cli("summarize --input " + files.good_a.string() + " --out " +
                csv_out.string()) == 0);
  std::ifstream csv(csv_out);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "statistic,value,percentage");

  const auto json_out = files.dir.path() / "summary.json";
  CHECK(run_cli("summarize --input " + files.good_a.string() +
                " --format json --out " + json_out.string()) == 0);
  std::ifstream json_in(json_out);
  std::string first_char;
  json_in >> first_char;
  CHECK(first_char == "{");
}

TEST_CASE("cli km fits pooled and per-mode curves") {
  const CliFixtures files;
  const auto out_dir = files.dir.path() / "km";
  CHECK(run_cli("km --input " + files.good_a.string() + " --out " +
                out_dir.string()) == 0);
  CHECK(std::filesystem::exists(out_dir / "km_alpha_all.csv"));
  CHECK(run_cli("km --input " + files.good_a.string() +
                " --modes penalty_kick,5 --out " + out_dir.string()) == 0);
  CHECK(std::filesystem::exists(out_dir / "km_alpha_penalty_kick.csv"));
  CHECK(std::filesystem::exists(out_dir / "km_alpha_right_footed_kick.csv"));
}

TEST_CASE("cli logrank, cfm and points run on fixture data") {
  const CliFixtures files;
  CHECK(run_cli("logrank --input-a " + files.good_a.string() + " --input-b " +
                files.good_b.string() + " --min-events 1") == 0);
  CHECK(run_cli("cfm --input " + files.good_a.string() + " --min-events 1") == 0);
  CHECK(run_cli("points --input-a " + files.good_a.string() + " --input-b " +
                files.good_b.string()) == 0);
  CHECK(run_cli("cfm --input " + files.good_b.string()) == 0);
}

TEST_CASE("cli report writes the full bundle") {
  const CliFixtures files;
  const auto out_dir = files.dir.path() / "bundle";
  CHECK(run_cli("report --input-a " + files.good_a.string() + " --input-b " +
                files.good_b.string() + " --min-events 1 --out " +
                out_dir.string()) == 0);
  CHECK(std::filesystem::exists(out_dir / "summary_a.csv"));
  CHECK(std::filesystem::exists(out_dir / "logrank.csv"));
  CHECK(std::filesystem::exists(out_dir / "points.csv"));
  CHECK(run_cli("report --input-a " + files.good_a.string() + " --input-b " +
                files.good_b.string()) == 2);  // --out is required
  CHECK(run_cli("report --input-a " + files.bad.string() + " --input-b " +
                files.good_b.string() + " --out " + out_dir.string()) == 1);
}
