#include <cmath>
#include <cstring>

#include "catch_amalgamated.hpp"
#include "reva/model.hpp"

using namespace reva;

namespace {

RatingMatrix small_matrix() {
  return RatingMatrix(
      "ev1", "pharmacy", RatingScale::numeric(1, 10),
      {"t1", "t2"}, {"e1", "e2", "e3"},
      {{"q", "scientific quality", IndicatorKind::global, ""},
       {"prod", "productivity", IndicatorKind::global, ""}});
}

}  // namespace

TEST_CASE("numeric scale factory enforces its invariants", "[model]") {
  const auto s = RatingScale::numeric(1, 10);
  CHECK(s.kind == ScaleKind::numeric);
  CHECK(s.min == 1.0);
  CHECK(s.max == 10.0);
  CHECK(s.step == 1.0);
  CHECK(s.contains(1.0));
  CHECK(s.contains(10.0));
  CHECK(s.contains(5.5));
  CHECK_FALSE(s.contains(0.999));
  CHECK_FALSE(s.contains(10.001));

  CHECK_THROWS_AS(RatingScale::numeric(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(RatingScale::numeric(10, 1), std::invalid_argument);
  CHECK_THROWS_AS(RatingScale::numeric(1, 10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RatingScale::numeric(1, 10, -1.0), std::invalid_argument);
}

TEST_CASE("ordinal scale maps grades monotonically onto integers", "[model]") {
  const auto s = RatingScale::ordinal({"A", "B", "C", "D"});
  CHECK(s.kind == ScaleKind::ordinal);
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);

  CHECK(ordinal_to_numeric(s, "A") == 4.0);
  CHECK(ordinal_to_numeric(s, "B") == 3.0);
  CHECK(ordinal_to_numeric(s, "C") == 2.0);
  CHECK(ordinal_to_numeric(s, "D") == 1.0);
  CHECK_THROWS_AS(ordinal_to_numeric(s, "E"), DataError);
  CHECK_THROWS_AS(ordinal_to_numeric(s, ""), DataError);
  CHECK_THROWS_AS(ordinal_to_numeric(s, "a"), DataError);

  // Strictly decreasing by one step from best to worst.
  for (std::size_t i = 0; i + 1 < s.labels.size(); ++i) {
    const double hi = ordinal_to_numeric(s, s.labels[i]);
    const double lo = ordinal_to_numeric(s, s.labels[i + 1]);
    CHECK(hi - lo == 1.0);
  }

  CHECK(label_for_value(s, 4.0) == "A");
  CHECK(label_for_value(s, 1.0) == "D");
  CHECK_FALSE(label_for_value(s, 2.5).has_value());

  CHECK_THROWS_AS(RatingScale::ordinal({"A"}), std::invalid_argument);
  CHECK_THROWS_AS(RatingScale::ordinal({"A", "B", "A"}), std::invalid_argument);
}

TEST_CASE("indicator groups default by kind", "[model]") {
  const Indicator global{"1A", "quality", IndicatorKind::global, ""};
  const Indicator overall{"4", "overall", IndicatorKind::overall, ""};
  const Indicator partial_a{"a", "methods", IndicatorKind::partial, ""};
  const Indicator partial_b{"b", "output", IndicatorKind::partial, ""};
  const Indicator tagged{"x", "custom", IndicatorKind::partial, "team-size"};
  const Indicator expertise{"3", "familiarity", IndicatorKind::expertise, ""};

  CHECK(effective_group(global) == "global");
  CHECK(effective_group(overall) == "global");
  CHECK(effective_group(partial_a) == "partial:a");
  CHECK(effective_group(partial_b) == "partial:b");
  CHECK(effective_group(partial_a) != effective_group(partial_b));
  CHECK(effective_group(tagged) == "team-size");
  CHECK(effective_group(expertise).empty());

  CHECK(is_performance_indicator(global));
  CHECK(is_performance_indicator(overall));
  CHECK(is_performance_indicator(partial_a));
  CHECK_FALSE(is_performance_indicator(expertise));
  CHECK_FALSE(is_performance_indicator(
      Indicator{"c", "character", IndicatorKind::categorical, ""}));
}

TEST_CASE("indicator kind names round-trip", "[model]") {
  for (const auto kind : {IndicatorKind::global, IndicatorKind::partial,
                          IndicatorKind::expertise, IndicatorKind::overall,
                          IndicatorKind::categorical}) {
    const auto parsed = indicator_kind_from(to_string(kind));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == kind);
  }
  CHECK_FALSE(indicator_kind_from("Global").has_value());
  CHECK_FALSE(indicator_kind_from("").has_value());
}

TEST_CASE("rating matrix stores sparse scores and reports missing cells", "[model]") {
  auto m = small_matrix();
  CHECK(m.evaluation_id() == "ev1");
  CHECK(m.discipline() == "pharmacy");
  CHECK(m.teams().size() == 2);
  CHECK(m.experts().size() == 3);
  CHECK(m.indicators().size() == 2);

  CHECK_FALSE(m.score(0, 0, 0).has_value());
  m.set_score(0, 0, 0, 7.0);
  CHECK(m.score(0, 0, 0) == 7.0);
  CHECK_FALSE(m.score(0, 0, 1).has_value());
  CHECK_FALSE(m.score(0, 1, 0).has_value());
  CHECK_FALSE(m.score(1, 0, 0).has_value());

  CHECK(m.team_index("t2") == 1);
  CHECK(m.expert_index("e3") == 2);
  CHECK(m.indicator_index("prod") == 1);
  CHECK_FALSE(m.team_index("t9").has_value());
  CHECK_FALSE(m.expert_index("").has_value());
  CHECK_FALSE(m.indicator_index("q ").has_value());
}

TEST_CASE("scores round-trip bit for bit", "[model]") {
  auto m = small_matrix();
  const double values[] = {1.0, 10.0, 5.5, 7.25,
                           std::nextafter(3.0, 4.0), 9.999999999999998};
  std::size_t k = 0;
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t t = 0; t < 2; ++t)
      m.set_score(e, t, 0, values[k++]);
  k = 0;
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t t = 0; t < 2; ++t) {
      const auto got = m.score(e, t, 0);
      REQUIRE(got.has_value());
      CHECK(std::memcmp(&*got, &values[k], sizeof(double)) == 0);
      ++k;
    }
}

TEST_CASE("expertise weights live beside scores", "[model]") {
  auto m = small_matrix();
  CHECK_FALSE(m.has_expertise_data());
  CHECK_FALSE(m.expertise(0, 0).has_value());
  m.set_expertise(0, 0, 0.75);
  m.set_expertise(2, 1, 0.0);
  CHECK(m.has_expertise_data());
  CHECK(m.expertise(0, 0) == 0.75);
  CHECK(m.expertise(2, 1) == 0.0);
  CHECK_FALSE(m.expertise(1, 0).has_value());
}

TEST_CASE("categorical values stay out of the numeric store", "[model]") {
  RatingMatrix m(
      "ev1", "pharmacy", RatingScale::numeric(1, 10),
      {"t1"}, {"e1"},
      {{"q", "quality", IndicatorKind::global, ""},
       {"2C", "dominant character", IndicatorKind::categorical, ""}});
  m.set_category(0, 0, 1, "fundamental");
  CHECK(m.category(0, 0, 1) == "fundamental");
  CHECK_FALSE(m.category(0, 0, 0).has_value());
  CHECK_FALSE(m.score(0, 0, 1).has_value());
  CHECK(m.categories().size() == 1);
}

TEST_CASE("validation passes a fully in-range matrix", "[model]") {
  auto m = small_matrix();
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t t = 0; t < 2; ++t)
      for (std::size_t i = 0; i < 2; ++i)
        m.set_score(e, t, i, static_cast<double>(1 + (e + 2 * t + 3 * i) % 10));
  m.set_expertise(0, 0, 1.0);
  CHECK(validate_matrix(m).empty());
}

TEST_CASE("validation flags out-of-range scores with the offending cell", "[model]") {
  auto m = small_matrix();
  m.set_score(1, 0, 1, 11.0);
  const auto issues = validate_matrix(m);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].expert == "e2");
  CHECK(issues[0].team == "t1");
  CHECK(issues[0].indicator == "prod");
  CHECK(issues[0].message.find("11") != std::string::npos);

  m.set_score(1, 0, 1, 10.0);
  m.set_score(0, 1, 0, 0.0);
  const auto issues2 = validate_matrix(m);
  REQUIRE(issues2.size() == 1);
  CHECK(issues2[0].expert == "e1");
  CHECK(issues2[0].team == "t2");
  CHECK(issues2[0].indicator == "q");
}

TEST_CASE("validation flags structural defects", "[model]") {
  const RatingMatrix no_experts("ev", "d", RatingScale::numeric(1, 10),
                                {"t1"}, {}, {{"q", "q", IndicatorKind::global, ""}});
  auto issues = validate_matrix(no_experts);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message.find("no experts") != std::string::npos);
  CHECK(issues[0].expert.empty());

  const RatingMatrix empty("ev", "d", RatingScale::numeric(1, 10), {}, {}, {});
  CHECK(validate_matrix(empty).size() == 3);

  const RatingMatrix dup("ev", "d", RatingScale::numeric(1, 10), {"t1"}, {"e1"},
                         {{"q", "x", IndicatorKind::global, ""},
                          {"q", "y", IndicatorKind::global, ""}});
  issues = validate_matrix(dup);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message.find("duplicate indicator") != std::string::npos);
}

TEST_CASE("validation flags negative expertise and misfiled categoricals", "[model]") {
  RatingMatrix m(
      "ev1", "pharmacy", RatingScale::numeric(1, 10),
      {"t1"}, {"e1"},
      {{"q", "quality", IndicatorKind::global, ""},
       {"2C", "character", IndicatorKind::categorical, ""}});
  m.set_expertise(0, 0, -0.5);
  m.set_score(0, 0, 1, 3.0);  // numeric value under a categorical indicator
  const auto issues = validate_matrix(m);
  REQUIRE(issues.size() == 2);
  bool saw_weight = false;
  bool saw_categorical = false;
  for (const auto& issue : issues) {
    if (issue.message.find("negative expertise") != std::string::npos) saw_weight = true;
    if (issue.message.find("categorical") != std::string::npos) {
      saw_categorical = true;
      CHECK(issue.indicator == "2C");
    }
  }
  CHECK(saw_weight);
  CHECK(saw_categorical);
}

TEST_CASE("validation is idempotent", "[model]") {
  auto m = small_matrix();
  m.set_score(0, 0, 0, 11.0);
  m.set_expertise(1, 1, -1.0);
  const auto first = validate_matrix(m);
  const auto second = validate_matrix(m);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].message == second[i].message);
    CHECK(first[i].expert == second[i].expert);
    CHECK(first[i].team == second[i].team);
    CHECK(first[i].indicator == second[i].indicator);
  }
}

TEST_CASE("publication records validate citation arithmetic", "[model]") {
  PublicationRecord p;
  p.pub_id = "p1";
  p.team_ids = {"t1", "t2"};
  p.journal_id = "j1";
  p.field_ids = {"chem", "bio"};
  p.year = 1998;
  p.citations_total = 12;
  p.self_citations = 3;
  CHECK(validate_publication(p).empty());
  CHECK(p.citations_excl_self() == 9);

  PublicationRecord bad = p;
  bad.team_ids.clear();
  CHECK(validate_publication(bad).size() == 1);

  bad = p;
  bad.field_ids.clear();
  CHECK(validate_publication(bad).size() == 1);

  bad = p;
  bad.self_citations = 13;
  auto errors = validate_publication(bad);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].find("self-citations") != std::string::npos);

  bad = p;
  bad.citations_total = -1;
  bad.self_citations = -1;
  CHECK_FALSE(validate_publication(bad).empty());
}

TEST_CASE("baseline table resolves by id and year or reports absence", "[model]") {
  BaselineTable b;
  CHECK(b.empty());
  b.set_journal("j-pharm", 1998, 4.2);
  b.set_field("clin-pharm", 1998, 3.1);
  b.set_field("clin-pharm", 1999, 3.4);
  CHECK_FALSE(b.empty());

  CHECK(b.journal_baseline("j-pharm", 1998) == 4.2);
  CHECK_FALSE(b.journal_baseline("j-pharm", 1999).has_value());
  CHECK_FALSE(b.journal_baseline("j-other", 1998).has_value());
  CHECK(b.field_baseline("clin-pharm", 1999) == 3.4);
  CHECK_FALSE(b.field_baseline("j-pharm", 1998).has_value());

  b.set_journal("j-pharm", 1998, 4.5);  // overwrite is allowed
  CHECK(b.journal_baseline("j-pharm", 1998) == 4.5);

  CHECK_THROWS_AS(b.set_journal("j", 2000, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(b.set_field("f", 2000, -1.0), std::invalid_argument);
}
