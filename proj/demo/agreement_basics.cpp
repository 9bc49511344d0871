// Build a small panel evaluation in memory, aggregate it, and run the two
// reliability diagnostics: inter-peer agreement and rating-habit detection.

#include <cstdio>

#include "reva/agreement.hpp"
#include "reva/aggregate.hpp"

using namespace reva;

int main() {
  RatingMatrix panel(
      "demo-panel", "pharmacy", RatingScale::numeric(1, 10),
      {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"},
      {"e1", "e2", "e3"},
      {{"merit", "scientific merit", IndicatorKind::global, ""},
       {"output", "research output", IndicatorKind::global, ""},
       {"overall", "overall assessment", IndicatorKind::overall, ""}});

  // Three experts rate the same teams; e2 runs one point harsher and e3 one
  // point milder than e1, which habit detection should tolerate since the
  // shift is shared across indicators.
  const double base[3][6] = {{9, 8, 7, 5, 4, 3},
                             {9, 7, 6, 5, 4, 2},
                             {8, 8, 7, 6, 4, 3}};
  const double shift[3] = {0, -1, 1};
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t t = 0; t < 6; ++t)
      for (std::size_t i = 0; i < 3; ++i) {
        double v = base[i][t] + shift[e];
        if (v < 1) v = 1;
        if (v > 10) v = 10;
        panel.set_score(e, t, i, v);
      }

  for (const auto& issue : validate_matrix(panel))
    std::printf("validation: %s\n", issue.message.c_str());

  const auto agreement = classify_agreement(panel);
  std::printf("%s: %s inter-peer agreement over %d teams\n",
              agreement.evaluation_id.c_str(),
              to_string(agreement.classification), agreement.teams);
  for (const auto& ind : agreement.indicators) {
    if (!ind.averaged) continue;
    std::printf("  %-8s mean r = %.3f (p = %.4f, %ssignificant)\n",
                ind.indicator_id.c_str(), ind.averaged->r,
                ind.averaged->p_value, ind.averaged->significant ? "" : "not ");
  }

  const auto scores = aggregate_evaluation(panel, AggregationScheme::plain);
  const auto habits = habit_report(scores);
  std::printf("habit warnings: %zu\n", habits.warnings.size());
  for (const auto& w : habits.warnings)
    std::printf("  %s vs %s: r = %.3f%s\n", w.indicator_a.c_str(),
                w.indicator_b.c_str(), w.r, w.negative ? " (negative)" : "");
  return 0;
}
