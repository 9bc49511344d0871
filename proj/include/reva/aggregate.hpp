#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reva/model.hpp"
#include "reva/stats.hpp"

namespace reva {

enum class AggregationScheme { plain, expertise_weighted, panel_consensus };

inline const char* to_string(AggregationScheme s) {
  switch (s) {
    case AggregationScheme::plain: return "plain";
    case AggregationScheme::expertise_weighted: return "weighted";
    case AggregationScheme::panel_consensus: return "consensus";
  }
  return "?";
}

inline std::optional<AggregationScheme> aggregation_scheme_from(std::string_view s) {
  if (s == "plain") return AggregationScheme::plain;
  if (s == "weighted") return AggregationScheme::expertise_weighted;
  if (s == "consensus") return AggregationScheme::panel_consensus;
  return std::nullopt;
}

// Final per-team scores of one evaluation. Columns are the performance
// indicators only; expertise and categorical indicators never aggregate.
class TeamScores {
 public:
  TeamScores(std::string evaluation_id, AggregationScheme scheme,
             std::vector<std::string> teams, std::vector<Indicator> indicators)
      : evaluation_id_(std::move(evaluation_id)),
        scheme_(scheme),
        teams_(std::move(teams)),
        indicators_(std::move(indicators)),
        values_(teams_.size() * indicators_.size(), 0.0),
        present_(values_.size(), 0),
        contributors_(values_.size(), 0) {
    for (std::size_t i = 0; i < teams_.size(); ++i) team_index_[teams_[i]] = i;
    for (std::size_t i = 0; i < indicators_.size(); ++i)
      indicator_index_[indicators_[i].id] = i;
  }

  const std::string& evaluation_id() const { return evaluation_id_; }
  AggregationScheme scheme() const { return scheme_; }
  const std::vector<std::string>& teams() const { return teams_; }
  const std::vector<Indicator>& indicators() const { return indicators_; }

  std::optional<std::size_t> team_index(std::string_view id) const {
    const auto it = team_index_.find(id);
    if (it == team_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> indicator_index(std::string_view id) const {
    const auto it = indicator_index_.find(id);
    if (it == indicator_index_.end()) return std::nullopt;
    return it->second;
  }

  void set(std::size_t team, std::size_t indicator, double value, int contributors) {
    const std::size_t k = cell(team, indicator);
    values_[k] = value;
    present_[k] = 1;
    contributors_[k] = contributors;
  }

  std::optional<double> value(std::size_t team, std::size_t indicator) const {
    const std::size_t k = cell(team, indicator);
    if (!present_[k]) return std::nullopt;
    return values_[k];
  }

  int contributors(std::size_t team, std::size_t indicator) const {
    return contributors_[cell(team, indicator)];
  }

 private:
  std::size_t cell(std::size_t team, std::size_t indicator) const {
    return team * indicators_.size() + indicator;
  }

  std::string evaluation_id_;
  AggregationScheme scheme_;
  std::vector<std::string> teams_;
  std::vector<Indicator> indicators_;
  std::map<std::string, std::size_t, std::less<>> team_index_;
  std::map<std::string, std::size_t, std::less<>> indicator_index_;
  std::vector<double> values_;
  std::vector<unsigned char> present_;
  std::vector<int> contributors_;
};

namespace detail {

struct CellAggregate {
  double value = 0.0;
  int contributors = 0;
};

inline std::optional<CellAggregate> plain_cell(const RatingMatrix& m, std::size_t team,
                                               std::size_t indicator) {
  std::vector<double> scores;
  for (std::size_t e = 0; e < m.experts().size(); ++e)
    if (const auto s = m.score(e, team, indicator)) scores.push_back(*s);
  if (scores.empty()) return std::nullopt;
  const int n = static_cast<int>(scores.size());
  return CellAggregate{sorted_mean(std::move(scores)), n};
}

// Experts contribute only with both a score and a positive expertise weight;
// a score without a weight is excluded rather than defaulted, so the two
// schemes never mix. Uniform weights reduce to the plain mean exactly.
inline std::optional<CellAggregate> weighted_cell(const RatingMatrix& m, std::size_t team,
                                                  std::size_t indicator) {
  std::vector<double> scores;
  std::vector<double> weights;
  for (std::size_t e = 0; e < m.experts().size(); ++e) {
    const auto s = m.score(e, team, indicator);
    if (!s) continue;
    const auto w = m.expertise(e, team);
    if (!w) continue;
    if (*w < 0.0)
      throw DataError("negative expertise weight for expert '" + m.experts()[e] +
                      "', team '" + m.teams()[team] + "'");
    if (*w == 0.0) continue;
    scores.push_back(*s);
    weights.push_back(*w);
  }
  if (scores.empty()) return std::nullopt;
  const int n = static_cast<int>(scores.size());
  const bool uniform =
      std::all_of(weights.begin(), weights.end(),
                  [&](double w) { return w == weights.front(); });
  if (uniform) return CellAggregate{sorted_mean(std::move(scores)), n};
  std::vector<double> products(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) products[i] = weights[i] * scores[i];
  return CellAggregate{sorted_sum(std::move(products)) / sorted_sum(std::move(weights)),
                       n};
}

inline std::optional<CellAggregate> consensus_cell(const RatingMatrix& m,
                                                   std::size_t team,
                                                   std::size_t indicator) {
  std::optional<double> agreed;
  int count = 0;
  for (std::size_t e = 0; e < m.experts().size(); ++e)
    if (const auto s = m.score(e, team, indicator)) {
      agreed = *s;
      ++count;
    }
  if (count == 0) return std::nullopt;
  if (count > 1)
    throw DataError("panel consensus expects one agreed score per cell; team '" +
                    m.teams()[team] + "', indicator '" +
                    m.indicators()[indicator].id + "' has " + std::to_string(count));
  return CellAggregate{*agreed, 1};
}

inline std::optional<CellAggregate> aggregate_cell(const RatingMatrix& m,
                                                   AggregationScheme scheme,
                                                   std::size_t team,
                                                   std::size_t indicator) {
  switch (scheme) {
    case AggregationScheme::plain: return plain_cell(m, team, indicator);
    case AggregationScheme::expertise_weighted: return weighted_cell(m, team, indicator);
    case AggregationScheme::panel_consensus: return consensus_cell(m, team, indicator);
  }
  return std::nullopt;
}

}  // namespace detail

inline double plain_average(const RatingMatrix& m, std::size_t team,
                            std::size_t indicator) {
  const auto cell = detail::plain_cell(m, team, indicator);
  if (!cell)
    throw DataError("no ratings for team '" + m.teams()[team] + "', indicator '" +
                    m.indicators()[indicator].id + "'");
  return cell->value;
}

inline double weighted_average(const RatingMatrix& m, std::size_t team,
                               std::size_t indicator) {
  const auto cell = detail::weighted_cell(m, team, indicator);
  if (!cell)
    throw DataError("no weighted ratings for team '" + m.teams()[team] +
                    "', indicator '" + m.indicators()[indicator].id + "'");
  return cell->value;
}

// Collapse individual ratings into one score per (team, indicator). Cells
// nobody rated stay absent; they are never zero-filled.
inline TeamScores aggregate_evaluation(const RatingMatrix& m, AggregationScheme scheme) {
  if (scheme == AggregationScheme::expertise_weighted && !m.has_expertise_data())
    throw DataError("evaluation '" + m.evaluation_id() +
                    "' has no expertise data for weighted aggregation");

  std::vector<Indicator> performance;
  std::vector<std::size_t> source_index;
  for (std::size_t i = 0; i < m.indicators().size(); ++i)
    if (is_performance_indicator(m.indicators()[i])) {
      performance.push_back(m.indicators()[i]);
      source_index.push_back(i);
    }

  TeamScores out(m.evaluation_id(), scheme, m.teams(), std::move(performance));
  for (std::size_t t = 0; t < m.teams().size(); ++t)
    for (std::size_t i = 0; i < source_index.size(); ++i)
      if (const auto cell = detail::aggregate_cell(m, scheme, t, source_index[i]))
        out.set(t, i, cell->value, cell->contributors);
  return out;
}

}  // namespace reva
