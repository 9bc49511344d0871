#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reva/aggregate.hpp"
#include "reva/model.hpp"
#include "reva/stats.hpp"

namespace reva {

// Correlation between one unordered pair of experts over the teams both
// rated. Pairs with fewer than three common teams are skipped (no result,
// common_teams tells why); pairs whose common ratings have zero variance are
// undefined. Both stay visible in reports.
struct PairOutcome {
  std::string expert_a;
  std::string expert_b;
  int common_teams = 0;
  std::optional<CorrelationResult> result;

  bool computed() const { return result.has_value(); }
  bool skipped() const { return common_teams < 3; }
  bool undefined() const { return !result.has_value() && common_teams >= 3; }
};

inline std::vector<PairOutcome> inter_peer_correlations(const RatingMatrix& m,
                                                        std::size_t indicator,
                                                        const StatConfig& config = {}) {
  if (m.experts().size() < 2)
    throw DataError("inter-peer correlations need at least two experts");
  std::vector<PairOutcome> out;
  for (std::size_t a = 0; a < m.experts().size(); ++a) {
    for (std::size_t b = a + 1; b < m.experts().size(); ++b) {
      PairOutcome pair;
      pair.expert_a = m.experts()[a];
      pair.expert_b = m.experts()[b];
      std::vector<double> x;
      std::vector<double> y;
      for (std::size_t t = 0; t < m.teams().size(); ++t) {
        const auto sa = m.score(a, t, indicator);
        const auto sb = m.score(b, t, indicator);
        if (sa && sb) {
          x.push_back(*sa);
          y.push_back(*sb);
        }
      }
      pair.common_teams = static_cast<int>(x.size());
      if (x.size() >= 3) pair.result = correlate(x, y, config);
      out.push_back(std::move(pair));
    }
  }
  return out;
}

enum class AgreementClass { high, intermediate, low };

inline const char* to_string(AgreementClass c) {
  switch (c) {
    case AgreementClass::high: return "High";
    case AgreementClass::intermediate: return "Intermediate";
    case AgreementClass::low: return "Low";
  }
  return "?";
}

struct IndicatorAgreement {
  std::string indicator_id;
  std::vector<PairOutcome> pairs;
  // Mean of the computed pairwise coefficients, tested at N = team count.
  // Absent when no pair could be computed.
  std::optional<CorrelationResult> averaged;
};

struct AgreementReport {
  std::string evaluation_id;
  int teams = 0;
  std::vector<IndicatorAgreement> indicators;
  AgreementClass classification = AgreementClass::low;
};

// Classify inter-peer agreement: High when the averaged coefficient of every
// performance indicator is significant, Low when none is, Intermediate
// otherwise. Only meaningful for panel designs where experts share teams;
// with disjoint experts, differences in opinion cannot be distinguished from
// different rating behaviours.
inline AgreementReport classify_agreement(const RatingMatrix& m,
                                          const StatConfig& config = {}) {
  if (m.experts().size() < 2)
    throw DataError("evaluation '" + m.evaluation_id() +
                    "' is not classifiable: a single expert (or agreed panel score) "
                    "leaves no expert pairs to compare");

  AgreementReport report;
  report.evaluation_id = m.evaluation_id();
  report.teams = static_cast<int>(m.teams().size());

  std::size_t performance = 0;
  std::size_t significant = 0;
  bool any_pair_computed = false;
  for (std::size_t i = 0; i < m.indicators().size(); ++i) {
    if (!is_performance_indicator(m.indicators()[i])) continue;
    ++performance;
    IndicatorAgreement ia;
    ia.indicator_id = m.indicators()[i].id;
    ia.pairs = inter_peer_correlations(m, i, config);
    std::vector<double> rs;
    for (const auto& pair : ia.pairs)
      if (pair.computed()) rs.push_back(pair.result->r);
    if (!rs.empty()) {
      any_pair_computed = true;
      CorrelationResult averaged;
      averaged.r = mean_over_values(rs);
      averaged.n = report.teams;  // common teams never exceed the team count
      averaged.p_value = p_value(averaged.r, averaged.n, config.tail);
      averaged.significant = averaged.p_value < config.alpha;
      if (averaged.significant) ++significant;
      ia.averaged = averaged;
    }
    report.indicators.push_back(std::move(ia));
  }

  if (performance == 0)
    throw DataError("evaluation '" + m.evaluation_id() +
                    "' has no performance indicators to classify");
  if (!any_pair_computed)
    throw DataError("evaluation '" + m.evaluation_id() +
                    "' is not classifiable: no expert pair rated 3 or more common "
                    "teams (teams reviewed by disjoint experts)");

  if (significant == performance)
    report.classification = AgreementClass::high;
  else if (significant == 0)
    report.classification = AgreementClass::low;
  else
    report.classification = AgreementClass::intermediate;
  return report;
}

// Symmetric correlation matrix over the indicators of one TeamScores set.
struct IndicatorMatrix {
  std::string evaluation_id;
  std::vector<Indicator> indicators;
  std::vector<MatrixCell> cells;  // row-major, indicators.size() squared

  std::size_t size() const { return indicators.size(); }
  const MatrixCell& cell(std::size_t i, std::size_t j) const {
    return cells[i * size() + j];
  }
};

// Correlate team final scores between every pair of indicators,
// pairwise-complete over teams. Diverging rating habits surface here: when
// disjoint experts rate different teams, correlations between aspects that
// should co-vary sink.
inline IndicatorMatrix inter_indicator_correlations(const TeamScores& scores,
                                                    const StatConfig& config = {}) {
  IndicatorMatrix out;
  out.evaluation_id = scores.evaluation_id();
  out.indicators = scores.indicators();
  const std::size_t k = out.indicators.size();
  out.cells.assign(k * k, MatrixCell{});

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      std::vector<double> x;
      std::vector<double> y;
      for (std::size_t t = 0; t < scores.teams().size(); ++t) {
        const auto vi = scores.value(t, i);
        const auto vj = scores.value(t, j);
        if (vi && vj) {
          x.push_back(*vi);
          y.push_back(*vj);
        }
      }
      MatrixCell cell;
      cell.n = static_cast<int>(x.size());
      if (cell.n >= 3) {
        if (i == j) {
          // Unit diagonal, exact; undefined when the column has no variance.
          if (pearson_r(x, y)) {
            cell.status = CellStatus::computed;
            cell.result = {1.0, cell.n, 0.0, true};
          } else {
            cell.status = CellStatus::undefined;
          }
        } else if (const auto res = correlate(x, y, config)) {
          cell.status = CellStatus::computed;
          cell.result = *res;
        } else {
          cell.status = CellStatus::undefined;
        }
      }
      out.cells[i * k + j] = cell;
      out.cells[j * k + i] = cell;
    }
  }
  return out;
}

// An expected-correlated indicator pair whose observed correlation is weak:
// non-significant or negative. The headline sign of diverging rating habits.
struct HabitWarning {
  std::string indicator_a;
  std::string indicator_b;
  std::string group;
  double r = 0.0;
  int n = 0;
  double p_value = 1.0;
  double critical_value = 1.0;
  bool negative = false;
};

// An expected-correlated pair with no defined coefficient (constant column
// or too few common teams). Reported for completeness, never warned.
struct UnassessedPair {
  std::string indicator_a;
  std::string indicator_b;
  std::string group;
  CellStatus status = CellStatus::insufficient;
  int n = 0;
};

inline std::vector<HabitWarning> habit_warnings(const IndicatorMatrix& matrix,
                                                const StatConfig& config = {}) {
  std::vector<HabitWarning> out;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.size(); ++j) {
      const std::string group_a = effective_group(matrix.indicators[i]);
      const std::string group_b = effective_group(matrix.indicators[j]);
      if (group_a.empty() || group_a != group_b) continue;
      const MatrixCell& cell = matrix.cell(i, j);
      if (cell.status != CellStatus::computed) continue;
      if (cell.result.significant && cell.result.r >= 0.0) continue;
      HabitWarning w;
      w.indicator_a = matrix.indicators[i].id;
      w.indicator_b = matrix.indicators[j].id;
      w.group = group_a;
      w.r = cell.result.r;
      w.n = cell.result.n;
      w.p_value = cell.result.p_value;
      w.critical_value = critical_r(cell.result.n, config.alpha, config.tail);
      w.negative = cell.result.r < 0.0;
      out.push_back(std::move(w));
    }
  }
  return out;
}

inline std::vector<UnassessedPair> unassessed_expected_pairs(
    const IndicatorMatrix& matrix) {
  std::vector<UnassessedPair> out;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.size(); ++j) {
      const std::string group_a = effective_group(matrix.indicators[i]);
      const std::string group_b = effective_group(matrix.indicators[j]);
      if (group_a.empty() || group_a != group_b) continue;
      const MatrixCell& cell = matrix.cell(i, j);
      if (cell.status == CellStatus::computed) continue;
      out.push_back({matrix.indicators[i].id, matrix.indicators[j].id, group_a,
                     cell.status, cell.n});
    }
  }
  return out;
}

struct HabitReport {
  std::string evaluation_id;
  IndicatorMatrix matrix;
  std::vector<HabitWarning> warnings;
  std::vector<UnassessedPair> unassessed;
};

inline HabitReport habit_report(const TeamScores& scores, const StatConfig& config = {}) {
  HabitReport report;
  report.evaluation_id = scores.evaluation_id();
  report.matrix = inter_indicator_correlations(scores, config);
  report.warnings = habit_warnings(report.matrix, config);
  report.unassessed = unassessed_expected_pairs(report.matrix);
  return report;
}

}  // namespace reva
