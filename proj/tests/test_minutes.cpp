#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "goalrel/ingest.hpp"
#include "goalrel/minutes.hpp"
#include "test_util.hpp"

using namespace goalrel;
using testutil::Record;

namespace {

// Independent per-minute comparison used as the oracle for the points table.
struct BrutePoints {
  int a[3] = {0, 0, 0};
  int b[3] = {0, 0, 0};
  int d[3] = {0, 0, 0};
};

BrutePoints brute_force_points(const MinuteHistogram& a, const MinuteHistogram& b) {
  BrutePoints out;
  for (int m = 1; m <= 120; ++m) {
    const int segment = m <= 45 ? 0 : (m <= 90 ? 1 : 2);
    if (a.count_at(m) > b.count_at(m))
      ++out.a[segment];
    else if (a.count_at(m) < b.count_at(m))
      ++out.b[segment];
    else
      ++out.d[segment];
  }
  return out;
}

MinuteHistogram random_histogram(std::mt19937_64& rng) {
  MinuteHistogram hist;
  for (int m = 1; m <= 120; ++m)
    hist.count_at(m) = static_cast<int>(testutil::draw(rng, 4));
  return hist;
}

}  // namespace

TEST_CASE("histogram of a goalless dataset is all zeros") {
  const PlayerDataset ds = testutil::make_dataset({{90.0, false, std::nullopt}});
  const MinuteHistogram hist = minute_histogram(ds);
  CHECK(hist.total() == 0);
  for (int m = 1; m <= 120; ++m) CHECK(hist.count_at(m) == 0);
}

TEST_CASE("histogram buckets goals by ceiling minute") {
  const PlayerDataset ds = testutil::make_dataset({
      {44.5, true, GoalMode::PenaltyKick},   // minute 45
      {45.0, true, GoalMode::HeadHeader},    // minute 45
      {45.01, true, GoalMode::HeadHeader},   // minute 46
      {1.0, true, GoalMode::LeftFootedKick}, // minute 1
      {90.0, false, std::nullopt},
  });
  const MinuteHistogram hist = minute_histogram(ds);
  CHECK(hist.count_at(45) == 2);
  CHECK(hist.count_at(46) == 1);
  CHECK(hist.count_at(1) == 1);
  CHECK(hist.total() == 4);
}

TEST_CASE("stoppage-time labels land on minutes 45 and 90") {
  const testutil::TempDir dir("stoppage");
  const auto path = dir.path() / "stoppage.csv";
  {
    std::ofstream out(path);
    out << "match_id,season,minute,censored,mode,raw_minute_label\n";
    out << "M1,2002-03,47,1,1,45+2\n";
    out << "M2,2002-03,93,1,2,90+3\n";
  }
  const PlayerDataset ds = load_csv({path.string(), "p", false});
  const MinuteHistogram hist = minute_histogram(ds);
  CHECK(hist.count_at(45) == 1);
  CHECK(hist.count_at(90) == 1);
  CHECK(hist.total() == 2);
}

TEST_CASE("career fixture histogram sums to the goal count") {
  const MinuteHistogram hist =
      minute_histogram(generate_fixture(testutil::ronaldo_spec()));
  CHECK(hist.total() == 787);
}

TEST_CASE("identical histograms draw every minute") {
  std::mt19937_64 rng(8);
  const MinuteHistogram hist = random_histogram(rng);
  const PointsTable table = points_comparison(hist, hist);
  CHECK(table.segments[0].points_a == 0);
  CHECK(table.segments[0].points_b == 0);
  CHECK(table.segments[0].draws == 45);
  CHECK(table.segments[1].draws == 45);
  CHECK(table.segments[2].draws == 30);
  CHECK(table.points_a_total == 0);
  CHECK(table.points_b_total == 0);
  CHECK(table.draws_total == 120);
}

TEST_CASE("a single superior minute earns a single point") {
  MinuteHistogram a;
  a.count_at(7) = 1;
  const MinuteHistogram b;
  const PointsTable table = points_comparison(a, b);
  CHECK(table.segments[0].points_a == 1);
  CHECK(table.segments[0].points_b == 0);
  CHECK(table.segments[0].draws == 44);
  CHECK(table.segments[1].draws == 45);
  CHECK(table.segments[2].draws == 30);
}

TEST_CASE("segment capacities are fixed at 45/45/30") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const MinuteHistogram a = random_histogram(rng);
    const MinuteHistogram b = random_histogram(rng);
    const PointsTable table = points_comparison(a, b);
    CHECK(table.segments[0].points_a + table.segments[0].points_b +
              table.segments[0].draws == 45);
    CHECK(table.segments[1].points_a + table.segments[1].points_b +
              table.segments[1].draws == 45);
    CHECK(table.segments[2].points_a + table.segments[2].points_b +
              table.segments[2].draws == 30);
    CHECK(table.points_a_total + table.points_b_total + table.draws_total == 120);
  }
}

TEST_CASE("points_comparison is antisymmetric and matches the brute force") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    const MinuteHistogram a = random_histogram(rng);
    const MinuteHistogram b = random_histogram(rng);
    const PointsTable ab = points_comparison(a, b);
    const PointsTable ba = points_comparison(b, a);
    const BrutePoints oracle = brute_force_points(a, b);
    for (std::size_t s = 0; s < 3; ++s) {
      CHECK(ab.segments[s].points_a == oracle.a[s]);
      CHECK(ab.segments[s].points_b == oracle.b[s]);
      CHECK(ab.segments[s].draws == oracle.d[s]);
      CHECK(ab.segments[s].points_a == ba.segments[s].points_b);
      CHECK(ab.segments[s].points_b == ba.segments[s].points_a);
      CHECK(ab.segments[s].draws == ba.segments[s].draws);
    }
  }
}

TEST_CASE("adding a constant to every minute changes nothing") {
  std::mt19937_64 rng(29);
  const MinuteHistogram a = random_histogram(rng);
  const MinuteHistogram b = random_histogram(rng);
  MinuteHistogram a_shift = a;
  MinuteHistogram b_shift = b;
  for (int m = 1; m <= 120; ++m) {
    a_shift.count_at(m) += 5;
    b_shift.count_at(m) += 5;
  }
  const PointsTable base = points_comparison(a, b);
  const PointsTable shifted = points_comparison(a_shift, b_shift);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(base.segments[s].points_a == shifted.segments[s].points_a);
    CHECK(base.segments[s].points_b == shifted.segments[s].points_b);
    CHECK(base.segments[s].draws == shifted.segments[s].draws);
  }
}

TEST_CASE("per-match comparison rescales by games played") {
  MinuteHistogram a;
  MinuteHistogram b;
  a.count_at(10) = 2;  // 2 goals in 10 games: 0.2 per match
  b.count_at(10) = 1;  // 1 goal in 4 games: 0.25 per match
  const PointsTable raw = points_comparison(a, b);
  CHECK(raw.segments[0].points_a == 1);
  CHECK(raw.segments[0].points_b == 0);

  PointsOptions options;
  options.per_match = true;
  options.games_a = 10;
  options.games_b = 4;
  const PointsTable rate = points_comparison(a, b, options);
  CHECK(rate.segments[0].points_a == 0);
  CHECK(rate.segments[0].points_b == 1);

  options.games_a = 0;
  CHECK_THROWS_AS(points_comparison(a, b, options), std::invalid_argument);
}
