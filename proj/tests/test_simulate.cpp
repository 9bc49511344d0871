#include <cmath>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "reva/agreement.hpp"
#include "reva/simulate.hpp"

using namespace reva;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<Indicator> global_indicators(int n) {
  std::vector<Indicator> out;
  for (int i = 0; i < n; ++i)
    out.push_back({"g" + std::to_string(i + 1), "Aspect " + std::to_string(i + 1),
                   IndicatorKind::global, ""});
  return out;
}

SimConfig base_config(int teams, int experts, int indicators) {
  SimConfig cfg;
  cfg.teams = teams;
  cfg.experts = experts;
  cfg.indicators = global_indicators(indicators);
  cfg.scale = RatingScale::numeric(1, 10);
  cfg.quality.assign(static_cast<std::size_t>(teams) * indicators, 6.0);
  cfg.seed = 42;
  return cfg;
}

bool same_scores(const RatingMatrix& a, const RatingMatrix& b) {
  if (a.teams().size() != b.teams().size() ||
      a.experts().size() != b.experts().size() ||
      a.indicators().size() != b.indicators().size())
    return false;
  for (std::size_t e = 0; e < a.experts().size(); ++e)
    for (std::size_t t = 0; t < a.teams().size(); ++t)
      for (std::size_t i = 0; i < a.indicators().size(); ++i)
        if (a.score(e, t, i) != b.score(e, t, i)) return false;
  return true;
}

}  // namespace

TEST_CASE("noiseless identity habits reproduce the shared quality",
          "[simulate]") {
  auto cfg = base_config(5, 4, 2);
  const auto m = simulate_evaluation(cfg);

  REQUIRE(m.teams() == std::vector<std::string>{"t1", "t2", "t3", "t4", "t5"});
  REQUIRE(m.experts() == std::vector<std::string>{"e1", "e2", "e3", "e4"});
  for (std::size_t e = 0; e < 4; ++e)
    for (std::size_t t = 0; t < 5; ++t)
      for (std::size_t i = 0; i < 2; ++i) REQUIRE(m.score(e, t, i) == 6.0);
}

TEST_CASE("panel offsets average out identically across teams", "[simulate]") {
  auto cfg = base_config(4, 4, 2);
  auto habits = HabitProfile::identity(4, 2);
  const double offsets[] = {-2.0, -1.0, 1.0, 2.0};
  for (std::size_t e = 0; e < 4; ++e)
    for (std::size_t i = 0; i < 2; ++i) habits.set(e, i, offsets[e], 1.0);
  cfg.habits = habits;

  const auto panel = aggregate_evaluation(simulate_evaluation(cfg),
                                          AggregationScheme::plain);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto first = panel.value(0, i);
    REQUIRE(first.has_value());
    for (std::size_t t = 1; t < 4; ++t) REQUIRE(panel.value(t, i) == first);
  }

  cfg.assignment = Assignment::distinct_per_team;
  const auto distinct = aggregate_evaluation(simulate_evaluation(cfg),
                                             AggregationScheme::plain);
  for (std::size_t i = 0; i < 2; ++i) {
    std::set<double> values;
    for (std::size_t t = 0; t < 4; ++t) {
      const auto v = distinct.value(t, i);
      REQUIRE(v.has_value());
      values.insert(*v);
    }
    REQUIRE(values.size() > 1);
  }
}

TEST_CASE("equal quality leaves inter-indicator correlations undefined",
          "[simulate]") {
  auto cfg = base_config(5, 5, 3);
  const auto scores = aggregate_evaluation(simulate_evaluation(cfg),
                                           AggregationScheme::plain);
  const auto matrix = inter_indicator_correlations(scores);
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = i + 1; j < matrix.size(); ++j)
      REQUIRE(matrix.cell(i, j).status == CellStatus::undefined);

  const auto summary = experiment_panel_vs_distinct(cfg, 10);
  REQUIRE(summary.comparable == 0);
  REQUIRE(summary.panel_undefined_cells == 10 * 3);
  REQUIRE(summary.distinct_undefined_cells == 10 * 3);
  REQUIRE_FALSE(summary.mean_panel_r.has_value());
}

TEST_CASE("identical seed and config give a bit-identical matrix",
          "[simulate]") {
  auto cfg = base_config(6, 5, 3);
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t i = 0; i < 3; ++i)
      cfg.quality[t * 3 + i] = 3.0 + 0.7 * static_cast<double>(t);
  cfg.sigma = 1.2;
  cfg.habits = HabitRanges{-1.5, 1.5, 0.8, 1.2};
  cfg.assignment = Assignment::partial_panel;
  cfg.coverage = 0.7;

  const auto a = simulate_evaluation(cfg);
  const auto b = simulate_evaluation(cfg);
  REQUIRE(same_scores(a, b));

  cfg.seed = 43;
  const auto c = simulate_evaluation(cfg);
  REQUIRE_FALSE(same_scores(a, c));
}

TEST_CASE("appending an indicator does not disturb existing draws",
          "[simulate]") {
  auto cfg = base_config(5, 4, 2);
  for (std::size_t t = 0; t < 5; ++t)
    for (std::size_t i = 0; i < 2; ++i)
      cfg.quality[t * 2 + i] = 4.0 + 0.5 * static_cast<double>(t + i);
  cfg.sigma = 0.9;
  cfg.habits = HabitRanges{-1.0, 1.0, 0.9, 1.1};

  const auto narrow = simulate_evaluation(cfg);

  auto wider = cfg;
  wider.indicators = global_indicators(3);
  wider.quality.clear();
  for (std::size_t t = 0; t < 5; ++t) {
    for (std::size_t i = 0; i < 2; ++i)
      wider.quality.push_back(cfg.quality[t * 2 + i]);
    wider.quality.push_back(5.0);
  }
  const auto wide = simulate_evaluation(wider);

  for (std::size_t e = 0; e < 4; ++e)
    for (std::size_t t = 0; t < 5; ++t)
      for (std::size_t i = 0; i < 2; ++i)
        REQUIRE(narrow.score(e, t, i) == wide.score(e, t, i));
}

TEST_CASE("trial substreams are stable under trial count changes",
          "[simulate]") {
  auto cfg = base_config(6, 6, 2);
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t i = 0; i < 2; ++i)
      cfg.quality[t * 2 + i] = 5.0 + 0.2 * static_cast<double>(t);
  cfg.sigma = 0.4;
  cfg.habits = HabitRanges{-2.0, 2.0, 0.7, 1.3};

  const auto four = experiment_panel_vs_distinct(cfg, 4);
  const auto eight = experiment_panel_vs_distinct(cfg, 8);
  for (std::size_t k = 0; k < 4; ++k) {
    REQUIRE(four.per_trial[k].panel_mean_r == eight.per_trial[k].panel_mean_r);
    REQUIRE(four.per_trial[k].distinct_mean_r ==
            eight.per_trial[k].distinct_mean_r);
  }
}

TEST_CASE("full coverage partial panel matches the full panel", "[simulate]") {
  auto cfg = base_config(5, 4, 2);
  for (std::size_t t = 0; t < 5; ++t)
    for (std::size_t i = 0; i < 2; ++i)
      cfg.quality[t * 2 + i] = 2.0 + 1.5 * static_cast<double>(t);
  cfg.sigma = 0.8;

  const auto full = simulate_evaluation(cfg);
  cfg.assignment = Assignment::partial_panel;
  cfg.coverage = 1.0;
  const auto partial = simulate_evaluation(cfg);
  REQUIRE(same_scores(full, partial));
}

TEST_CASE("distinct assignment reviews each team through one distinct expert",
          "[simulate]") {
  auto cfg = base_config(5, 8, 2);
  cfg.assignment = Assignment::distinct_per_team;
  const auto m = simulate_evaluation(cfg);

  std::set<std::size_t> reviewers;
  for (std::size_t t = 0; t < 5; ++t) {
    std::vector<std::size_t> raters;
    for (std::size_t e = 0; e < 8; ++e)
      if (m.score(e, t, 0).has_value()) raters.push_back(e);
    REQUIRE(raters.size() == 1);
    reviewers.insert(raters.front());
  }
  REQUIRE(reviewers.size() == 5);
}

TEST_CASE("invalid configurations are rejected", "[simulate]") {
  SECTION("distinct-per-team with too few experts") {
    auto cfg = base_config(6, 4, 2);
    cfg.assignment = Assignment::distinct_per_team;
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
  }
  SECTION("negative noise SD") {
    auto cfg = base_config(3, 3, 1);
    cfg.sigma = -0.1;
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
  }
  SECTION("coverage outside (0, 1]") {
    auto cfg = base_config(3, 3, 1);
    cfg.assignment = Assignment::partial_panel;
    cfg.coverage = 0.0;
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
    cfg.coverage = 1.2;
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
  }
  SECTION("quality size mismatch") {
    auto cfg = base_config(3, 3, 2);
    cfg.quality.pop_back();
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
  }
  SECTION("habit profile dimensions must match") {
    auto cfg = base_config(3, 3, 2);
    cfg.habits = HabitProfile::identity(2, 2);
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
  }
  SECTION("non-positive gain in a profile") {
    auto cfg = base_config(3, 3, 1);
    auto habits = HabitProfile::identity(3, 1);
    habits.set(1, 0, 0.0, 0.0);
    cfg.habits = habits;
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
  }
  SECTION("degenerate habit ranges") {
    auto cfg = base_config(3, 3, 1);
    cfg.habits = HabitRanges{0.0, 0.0, 0.0, 1.0};
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
    cfg.habits = HabitRanges{0.0, 0.0, 1.2, 0.8};
    REQUIRE_THROWS_AS(simulate_evaluation(cfg), std::invalid_argument);
  }
  SECTION("experiments demand at least one trial") {
    auto cfg = base_config(3, 3, 2);
    REQUIRE_THROWS_AS(experiment_panel_vs_distinct(cfg, 0),
                      std::invalid_argument);
    const std::vector<double> grid = {0.0};
    REQUIRE_THROWS_AS(experiment_agreement_sweep(cfg, grid, 0),
                      std::invalid_argument);
  }
  SECTION("agreement sweep requires a full panel") {
    auto cfg = base_config(3, 3, 2);
    cfg.assignment = Assignment::distinct_per_team;
    const std::vector<double> grid = {0.0};
    REQUIRE_THROWS_AS(experiment_agreement_sweep(cfg, grid, 5),
                      std::invalid_argument);
  }
}

TEST_CASE("ratings round half away from zero and clamp to the scale",
          "[simulate]") {
  auto cfg = base_config(1, 2, 1);
  cfg.scale = RatingScale::numeric(-5, 5);
  cfg.quality = {0.0};
  auto habits = HabitProfile::identity(2, 1);
  habits.set(0, 0, -0.5, 1.0);
  habits.set(1, 0, 0.5, 1.0);
  cfg.habits = habits;
  auto m = simulate_evaluation(cfg);
  REQUIRE(m.score(0, 0, 0) == -1.0);
  REQUIRE(m.score(1, 0, 0) == 1.0);

  cfg = base_config(1, 1, 1);
  cfg.quality = {4.5};
  m = simulate_evaluation(cfg);
  REQUIRE(m.score(0, 0, 0) == 5.0);

  auto clamped = HabitProfile::identity(1, 1);
  clamped.set(0, 0, 100.0, 1.0);
  cfg.habits = clamped;
  m = simulate_evaluation(cfg);
  REQUIRE(m.score(0, 0, 0) == 10.0);
  clamped.set(0, 0, -100.0, 1.0);
  cfg.habits = clamped;
  m = simulate_evaluation(cfg);
  REQUIRE(m.score(0, 0, 0) == 1.0);
}

TEST_CASE("step-aligned affine habits keep agreement exact", "[simulate]") {
  auto cfg = base_config(6, 4, 2);
  cfg.scale = RatingScale::numeric(1, 10, 0.5);
  cfg.quality.clear();
  for (int t = 0; t < 6; ++t) {
    cfg.quality.push_back(2.0 + t);
    cfg.quality.push_back(2.0 + t);
  }
  auto habits = HabitProfile::identity(4, 2);
  const double offsets[] = {0.5, 0.0, 1.0, 0.5};
  const double gains[] = {0.5, 1.0, 0.5, 1.0};
  for (std::size_t e = 0; e < 4; ++e)
    for (std::size_t i = 0; i < 2; ++i) habits.set(e, i, offsets[e], gains[e]);
  cfg.habits = habits;

  const auto m = simulate_evaluation(cfg);
  for (std::size_t i = 0; i < 2; ++i)
    for (const auto& pair : inter_peer_correlations(m, i)) {
      REQUIRE(pair.computed());
      REQUIRE(pair.result->r == 1.0);
    }
  REQUIRE(classify_agreement(m).classification == AgreementClass::high);
}

TEST_CASE("rounding and clamping dent affine agreement only slightly",
          "[simulate]") {
  // Granularity matters here: the 0.99 floor needs the scale step to be
  // small next to the quality spread, hence a percent-style scale.
  double min_r = 1.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SimConfig cfg;
    cfg.teams = 8;
    cfg.experts = 6;
    cfg.indicators = global_indicators(1);
    cfg.scale = RatingScale::numeric(0, 100);
    std::vector<double> per_team;
    for (int t = 0; t < 8; ++t) per_team.push_back(15.0 + 10.0 * t);
    cfg.quality = quality_per_team(per_team, 1);
    cfg.habits = HabitRanges{-10.0, 10.0, 0.8, 1.2};
    cfg.seed = seed;
    for (const auto& pair : inter_peer_correlations(simulate_evaluation(cfg), 0)) {
      REQUIRE(pair.computed());
      min_r = std::min(min_r, pair.result->r);
    }
  }
  REQUIRE(min_r >= 0.99);
}

TEST_CASE("shared panels preserve inter-indicator correlation", "[simulate]") {
  SimConfig cfg;
  cfg.teams = 8;
  cfg.experts = 8;
  cfg.indicators = global_indicators(4);
  cfg.scale = RatingScale::numeric(1, 10);
  std::vector<double> per_team;
  for (int t = 0; t < 8; ++t) per_team.push_back(5.0 + 0.15 * t);
  cfg.quality = quality_per_team(per_team, 4);
  cfg.sigma = 0.3;
  cfg.habits = HabitRanges{-2.0, 2.0, 0.7, 1.3};
  cfg.seed = 42;

  const auto summary = experiment_panel_vs_distinct(cfg, 150);
  REQUIRE(summary.comparable == 150);
  REQUIRE(summary.panel_exceeds >= 143);
  REQUIRE(summary.mean_panel_r.has_value());
  REQUIRE(summary.mean_distinct_r.has_value());
  REQUIRE(*summary.mean_panel_r > *summary.mean_distinct_r);
}

TEST_CASE("shared habits make the two schemes coincide without noise",
          "[simulate]") {
  auto cfg = base_config(6, 6, 3);
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t i = 0; i < 3; ++i)
      cfg.quality[t * 3 + i] = 2.0 + 1.1 * static_cast<double>(t) +
                               0.4 * static_cast<double>(i);
  auto habits = HabitProfile::identity(6, 3);
  for (std::size_t e = 0; e < 6; ++e)
    for (std::size_t i = 0; i < 3; ++i) habits.set(e, i, 1.0, 0.9);
  cfg.habits = habits;

  const auto summary = experiment_panel_vs_distinct(cfg, 20);
  for (const auto& trial : summary.per_trial)
    REQUIRE(trial.panel_mean_r == trial.distinct_mean_r);
  REQUIRE(summary.panel_exceeds == 0);
}

TEST_CASE("agreement erodes as opinion noise grows", "[simulate]") {
  SimConfig cfg;
  cfg.teams = 8;
  cfg.experts = 6;
  cfg.indicators = global_indicators(2);
  cfg.scale = RatingScale::numeric(1, 10);
  std::vector<double> per_team;
  for (int t = 0; t < 8; ++t) per_team.push_back(3.0 + 5.0 * t / 7.0);
  cfg.quality = quality_per_team(per_team, 2);
  cfg.seed = 42;

  // Per-team quality sample SD is about 1.75; the last grid point sits at
  // ten times that.
  const std::vector<double> grid = {0.0, 1.5, 17.5};
  const auto points = experiment_agreement_sweep(cfg, grid, 100);

  REQUIRE(points.size() == 3);
  REQUIRE(points[0].high == 100);
  REQUIRE(points[1].intermediate > 0);
  REQUIRE(points[2].low >= 80);
  for (std::size_t k = 1; k < points.size(); ++k)
    REQUIRE(points[k].high <= points[k - 1].high);
}

TEST_CASE("quality_per_team spreads one value across indicators",
          "[simulate]") {
  const std::vector<double> per_team = {2.0, 5.0};
  const auto q = quality_per_team(per_team, 3);
  REQUIRE(q == std::vector<double>{2.0, 2.0, 2.0, 5.0, 5.0, 5.0});
}

TEST_CASE("opinion noise shows up with the configured spread", "[simulate]") {
  auto cfg = base_config(20, 8, 1);
  cfg.quality.assign(20, 5.5);
  cfg.sigma = 1.0;
  const auto m = simulate_evaluation(cfg);

  std::vector<double> all;
  for (std::size_t e = 0; e < 8; ++e)
    for (std::size_t t = 0; t < 20; ++t) all.push_back(*m.score(e, t, 0));
  double mean = 0.0;
  for (const double v : all) mean += v;
  mean /= static_cast<double>(all.size());
  double ss = 0.0;
  for (const double v : all) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(all.size() - 1));

  REQUIRE_THAT(mean, WithinAbs(5.5, 0.3));
  // Rounding to unit steps adds roughly 1/12 of variance on top of sigma^2.
  REQUIRE(sd > 0.8);
  REQUIRE(sd < 1.25);
}
