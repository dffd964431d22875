#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "goalrel/compare.hpp"
#include "test_util.hpp"

using namespace goalrel;

TEST_CASE("chi_square_1df_pvalue reference values") {
  CHECK(chi_square_1df_pvalue(0.0) == 1.0);
  // Frozen from numerical integration of the chi-square(1) density.
  CHECK(chi_square_1df_pvalue(3.841459) ==
        doctest::Approx(0.04999999465319563).epsilon(1e-10));
  CHECK(chi_square_1df_pvalue(0.4286) ==
        doctest::Approx(0.5126767076526613).epsilon(1e-10));
  CHECK(chi_square_1df_pvalue(1.0) ==
        doctest::Approx(0.31731050786291115).epsilon(1e-10));
  CHECK(chi_square_1df_pvalue(5.0) ==
        doctest::Approx(0.025347318677468325).epsilon(1e-10));
  CHECK(chi_square_1df_pvalue(10.0) ==
        doctest::Approx(0.001565402258002549).epsilon(1e-10));
  CHECK_THROWS_AS(chi_square_1df_pvalue(-0.1), std::invalid_argument);
}

TEST_CASE("chi_square_1df_pvalue is strictly decreasing from 1") {
  double previous = 1.0;
  for (double x = 0.25; x <= 30.0; x += 0.25) {
    const double p = chi_square_1df_pvalue(x);
    CHECK(p < previous);
    CHECK(p >= 0.0);
    previous = p;
  }
}

TEST_CASE("log_rank reproduces the hand-computed two-group example") {
  const KMInput a = testutil::make_input({3, 5}, {true, false});
  const KMInput b = testutil::make_input({3, 4}, {true, true});
  const LogRankResult result = log_rank(a, b);
  CHECK(result.observed_a == 1.0);
  CHECK(result.expected_a == doctest::Approx(1.5).epsilon(1e-14));
  // V = 7/12, chi = (1 - 1.5)^2 / V = 3/7.
  CHECK(result.chi_square == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  CHECK(result.p_value == doctest::Approx(0.5126907602619235).epsilon(1e-10));
  CHECK(result.degrees_freedom == 1);
}

TEST_CASE("log_rank on identical groups gives chi 0 and p 1") {
  const KMInput a = testutil::make_input({3, 7, 20, 90}, {true, true, false, false});
  const LogRankResult result = log_rank(a, a);
  CHECK(result.chi_square == 0.0);
  CHECK(result.p_value == 1.0);
  CHECK(result.observed_a == doctest::Approx(result.expected_a).epsilon(1e-14));
}

TEST_CASE("log_rank error contract") {
  const KMInput events = testutil::make_input({3}, {true});
  const KMInput censored = testutil::make_input({3, 4}, {false, false});
  CHECK_THROWS_AS(log_rank(KMInput{}, events), std::invalid_argument);
  CHECK_THROWS_AS(log_rank(events, KMInput{}), std::invalid_argument);
  CHECK_THROWS_AS(log_rank(censored, censored), DataError);
}

TEST_CASE("log_rank is symmetric in its arguments") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    KMInput a, b;
    const std::size_t na = 1 + testutil::draw(rng, 8);
    const std::size_t nb = 1 + testutil::draw(rng, 8);
    for (std::size_t i = 0; i < na; ++i) {
      a.durations.push_back(1.0 + static_cast<double>(testutil::draw(rng, 10)));
      a.event_flags.push_back(testutil::draw(rng, 3) != 0);
    }
    for (std::size_t i = 0; i < nb; ++i) {
      b.durations.push_back(1.0 + static_cast<double>(testutil::draw(rng, 10)));
      b.event_flags.push_back(testutil::draw(rng, 3) != 0);
    }
    bool any_event = false;
    for (bool e : a.event_flags) any_event |= e;
    for (bool e : b.event_flags) any_event |= e;
    if (!any_event) continue;
    const LogRankResult ab = log_rank(a, b);
    const LogRankResult ba = log_rank(b, a);
    CHECK(std::abs(ab.chi_square - ba.chi_square) < 1e-12);
    CHECK(std::abs(ab.p_value - ba.p_value) < 1e-12);
  }
}

namespace {

ReliabilityCurve flat_curve(double time, double estimate, double lower, double upper) {
  ReliabilityCurve curve;
  curve.times = {time};
  curve.estimates = {estimate};
  curve.variances = {0.0};
  curve.ci_lower = {lower};
  curve.ci_upper = {upper};
  curve.n_risk = {1};
  curve.n_event = {1};
  curve.n_total = 1;
  return curve;
}

}  // namespace

TEST_CASE("ci_overlap of a curve with itself is always indistinguishable") {
  const ReliabilityCurve curve =
      fit_km(testutil::make_input({5, 9, 20, 40}, {true, true, false, true}));
  const auto grid = default_grid();
  const OverlapVerdict verdict = ci_overlap(curve, curve, grid);
  CHECK(verdict.verdict == OverlapJudgment::NotSignificantlyDifferent);
  CHECK(verdict.fraction_overlapping == 1.0);
  for (bool flag : verdict.overlap_flags) CHECK(flag);
}

TEST_CASE("ci_overlap flags disjoint degenerate intervals") {
  const ReliabilityCurve high = flat_curve(10.0, 0.9, 0.9, 0.9);
  const ReliabilityCurve low = flat_curve(10.0, 0.1, 0.1, 0.1);
  const std::vector<double> grid{5.0, 15.0};
  const OverlapVerdict verdict = ci_overlap(high, low, grid);
  CHECK(verdict.verdict == OverlapJudgment::Different);
  CHECK(verdict.overlap_flags[0]);        // both evaluate to [1,1] before time 10
  CHECK_FALSE(verdict.overlap_flags[1]);  // [0.9,0.9] vs [0.1,0.1]
  CHECK(verdict.fraction_overlapping == 0.5);
}

TEST_CASE("ci_overlap on two near-identical fitted curves overlaps everywhere") {
  // Same data up to one shifted event time, with late censored records so
  // neither band collapses to a point: the bands overlap on the full window.
  KMInput a;
  std::mt19937_64 rng(314);
  for (int i = 0; i < 30; ++i) {
    a.durations.push_back(1.0 + static_cast<double>(testutil::draw(rng, 90)));
    a.event_flags.push_back(testutil::draw(rng, 2) == 0);
  }
  a.durations.push_back(120.0);
  a.event_flags.push_back(false);
  KMInput b = a;
  for (std::size_t i = 0; i < b.durations.size(); ++i)
    if (b.event_flags[i] && b.durations[i] < 90.0) {
      b.durations[i] += 1.0;
      break;
    }
  const OverlapVerdict verdict = ci_overlap(fit_km(a), fit_km(b), default_grid());
  CHECK(verdict.fraction_overlapping == 1.0);
  CHECK(verdict.verdict == OverlapJudgment::NotSignificantlyDifferent);
}

TEST_CASE("ci_overlap is symmetric") {
  std::mt19937_64 rng(272);
  for (int rep = 0; rep < 100; ++rep) {
    KMInput a, b;
    for (int i = 0; i < 12; ++i) {
      a.durations.push_back(1.0 + static_cast<double>(testutil::draw(rng, 60)));
      a.event_flags.push_back(testutil::draw(rng, 2) == 0);
      b.durations.push_back(1.0 + static_cast<double>(testutil::draw(rng, 60)));
      b.event_flags.push_back(testutil::draw(rng, 2) == 0);
    }
    const ReliabilityCurve ca = fit_km(a);
    const ReliabilityCurve cb = fit_km(b);
    const auto grid = default_grid();
    const OverlapVerdict ab = ci_overlap(ca, cb, grid);
    const OverlapVerdict ba = ci_overlap(cb, ca, grid);
    CHECK(ab.verdict == ba.verdict);
    CHECK(ab.fraction_overlapping == ba.fraction_overlapping);
    CHECK(ab.overlap_flags == ba.overlap_flags);
  }
}

TEST_CASE("ci_overlap validates the grid") {
  const ReliabilityCurve curve = flat_curve(10.0, 0.5, 0.4, 0.6);
  CHECK_THROWS_AS(ci_overlap(curve, curve, std::vector<double>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ci_overlap(curve, curve, std::vector<double>{-1.0}),
                  std::invalid_argument);
}

TEST_CASE("half-margin refinement is stricter than plain overlap") {
  // Intervals overlap by 0.02 while half the average margin is 0.035: plain
  // overlap accepts, the refined rule does not.
  const ReliabilityCurve a = flat_curve(10.0, 0.5, 0.40, 0.60);
  const ReliabilityCurve b = flat_curve(10.0, 0.62, 0.58, 0.66);
  const std::vector<double> grid{20.0};
  CHECK(ci_overlap(a, b, grid).verdict ==
        OverlapJudgment::NotSignificantlyDifferent);
  OverlapOptions refined;
  refined.half_margin_rule = true;
  CHECK(ci_overlap(a, b, grid, refined).verdict == OverlapJudgment::Different);
  // Reflexivity still holds under the refinement.
  CHECK(ci_overlap(a, a, grid, refined).verdict ==
        OverlapJudgment::NotSignificantlyDifferent);
}
