#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reva {

// Raised when inputs are structurally readable but violate a domain rule
// (missing baseline, no ratings for a cell, unknown label, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScaleKind { numeric, ordinal };

// A rating scale: either a numeric range (1-10, 1-5) or an ordered set of
// letter grades mapped monotonically onto consecutive integers (A>B>C>D as
// 4>3>2>1).
struct RatingScale {
  ScaleKind kind = ScaleKind::numeric;
  double min = 1.0;
  double max = 10.0;
  double step = 1.0;
  std::vector<std::string> labels;  // ordinal only, best grade first

  static RatingScale numeric(double lo, double hi, double step = 1.0) {
    if (!(lo < hi)) throw std::invalid_argument("RatingScale: min must be < max");
    if (!(step > 0.0)) throw std::invalid_argument("RatingScale: step must be > 0");
    RatingScale s;
    s.kind = ScaleKind::numeric;
    s.min = lo;
    s.max = hi;
    s.step = step;
    return s;
  }

  // Best grade first: ordinal({"A","B","C","D"}) maps A->4 ... D->1.
  static RatingScale ordinal(std::vector<std::string> grades) {
    if (grades.size() < 2)
      throw std::invalid_argument("RatingScale: ordinal scale needs >= 2 labels");
    for (std::size_t i = 0; i < grades.size(); ++i)
      for (std::size_t j = i + 1; j < grades.size(); ++j)
        if (grades[i] == grades[j])
          throw std::invalid_argument("RatingScale: duplicate label '" + grades[i] + "'");
    RatingScale s;
    s.kind = ScaleKind::ordinal;
    s.min = 1.0;
    s.max = static_cast<double>(grades.size());
    s.step = 1.0;
    s.labels = std::move(grades);
    return s;
  }

  bool contains(double v) const { return v >= min && v <= max; }
};

// Monotone numeric coding of an ordinal grade. The top label maps to the
// scale maximum, each following label one step lower.
inline double ordinal_to_numeric(const RatingScale& scale, std::string_view label) {
  for (std::size_t i = 0; i < scale.labels.size(); ++i)
    if (scale.labels[i] == label)
      return scale.max - static_cast<double>(i);
  throw DataError("unknown label '" + std::string(label) + "' for this scale");
}

inline std::optional<std::string> label_for_value(const RatingScale& scale, double v) {
  for (std::size_t i = 0; i < scale.labels.size(); ++i)
    if (scale.max - static_cast<double>(i) == v) return scale.labels[i];
  return std::nullopt;
}

// What an indicator scores. Global and overall indicators concern the
// research activity as a whole and are expected to inter-correlate; partial
// indicators cover one component each and are not. Expertise and categorical
// indicators never enter numeric analysis.
enum class IndicatorKind { global, partial, expertise, overall, categorical };

inline const char* to_string(IndicatorKind k) {
  switch (k) {
    case IndicatorKind::global: return "global";
    case IndicatorKind::partial: return "partial";
    case IndicatorKind::expertise: return "expertise";
    case IndicatorKind::overall: return "overall";
    case IndicatorKind::categorical: return "categorical";
  }
  return "?";
}

inline std::optional<IndicatorKind> indicator_kind_from(std::string_view s) {
  if (s == "global") return IndicatorKind::global;
  if (s == "partial") return IndicatorKind::partial;
  if (s == "expertise") return IndicatorKind::expertise;
  if (s == "overall") return IndicatorKind::overall;
  if (s == "categorical") return IndicatorKind::categorical;
  return std::nullopt;
}

struct Indicator {
  std::string id;
  std::string label;
  IndicatorKind kind = IndicatorKind::global;
  std::string group;  // expected-correlation group tag; empty = default by kind
};

// True when the indicator carries performance scores that may be aggregated
// and correlated.
inline bool is_performance_indicator(const Indicator& ind) {
  return ind.kind == IndicatorKind::global || ind.kind == IndicatorKind::partial ||
         ind.kind == IndicatorKind::overall;
}

// Effective expected-correlation group of an indicator: the explicit tag if
// set, otherwise global and overall indicators share one group and every
// partial indicator gets its own.
inline std::string effective_group(const Indicator& ind) {
  if (!ind.group.empty()) return ind.group;
  switch (ind.kind) {
    case IndicatorKind::global:
    case IndicatorKind::overall:
      return "global";
    case IndicatorKind::partial:
      return "partial:" + ind.id;
    default:
      return {};
  }
}

// Scores of one evaluation: a partial tensor over (expert, team, indicator)
// plus optional per-(expert, team) expertise weights. Missing cells are
// first-class; no sentinel values. Populate once, then share read-only.
class RatingMatrix {
 public:
  RatingMatrix(std::string evaluation_id, std::string discipline, RatingScale scale,
               std::vector<std::string> teams, std::vector<std::string> experts,
               std::vector<Indicator> indicators)
      : evaluation_id_(std::move(evaluation_id)),
        discipline_(std::move(discipline)),
        scale_(std::move(scale)),
        teams_(std::move(teams)),
        experts_(std::move(experts)),
        indicators_(std::move(indicators)),
        scores_(experts_.size() * teams_.size() * indicators_.size(), 0.0),
        score_present_(scores_.size(), 0),
        expertise_(experts_.size() * teams_.size(), 0.0),
        expertise_present_(expertise_.size(), 0) {
    for (std::size_t i = 0; i < teams_.size(); ++i) team_index_[teams_[i]] = i;
    for (std::size_t i = 0; i < experts_.size(); ++i) expert_index_[experts_[i]] = i;
    for (std::size_t i = 0; i < indicators_.size(); ++i)
      indicator_index_[indicators_[i].id] = i;
  }

  const std::string& evaluation_id() const { return evaluation_id_; }
  const std::string& discipline() const { return discipline_; }
  const RatingScale& scale() const { return scale_; }
  const std::vector<std::string>& teams() const { return teams_; }
  const std::vector<std::string>& experts() const { return experts_; }
  const std::vector<Indicator>& indicators() const { return indicators_; }

  std::optional<std::size_t> team_index(std::string_view id) const {
    return find(team_index_, id);
  }
  std::optional<std::size_t> expert_index(std::string_view id) const {
    return find(expert_index_, id);
  }
  std::optional<std::size_t> indicator_index(std::string_view id) const {
    return find(indicator_index_, id);
  }

  void set_score(std::size_t expert, std::size_t team, std::size_t indicator,
                 double value) {
    const std::size_t k = cell(expert, team, indicator);
    scores_[k] = value;
    score_present_[k] = 1;
  }

  std::optional<double> score(std::size_t expert, std::size_t team,
                              std::size_t indicator) const {
    const std::size_t k = cell(expert, team, indicator);
    if (!score_present_[k]) return std::nullopt;
    return scores_[k];
  }

  void set_expertise(std::size_t expert, std::size_t team, double weight) {
    const std::size_t k = expert * teams_.size() + team;
    expertise_[k] = weight;
    expertise_present_[k] = 1;
  }

  std::optional<double> expertise(std::size_t expert, std::size_t team) const {
    const std::size_t k = expert * teams_.size() + team;
    if (!expertise_present_[k]) return std::nullopt;
    return expertise_[k];
  }

  bool has_expertise_data() const {
    for (const auto present : expertise_present_)
      if (present) return true;
    return false;
  }

  // Categorical indicators (e.g. "dominant character of the research") hold
  // labels, not numbers; stored apart so they can never leak into statistics.
  void set_category(std::size_t expert, std::size_t team, std::size_t indicator,
                    std::string value) {
    categories_[{expert, team, indicator}] = std::move(value);
  }

  std::optional<std::string> category(std::size_t expert, std::size_t team,
                                      std::size_t indicator) const {
    const auto it = categories_.find({expert, team, indicator});
    if (it == categories_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::array<std::size_t, 3>, std::string>& categories() const {
    return categories_;
  }

 private:
  std::size_t cell(std::size_t expert, std::size_t team, std::size_t indicator) const {
    return (expert * teams_.size() + team) * indicators_.size() + indicator;
  }

  static std::optional<std::size_t> find(const std::map<std::string, std::size_t, std::less<>>& m,
                                         std::string_view id) {
    const auto it = m.find(id);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  std::string evaluation_id_;
  std::string discipline_;
  RatingScale scale_;
  std::vector<std::string> teams_;
  std::vector<std::string> experts_;
  std::vector<Indicator> indicators_;
  std::map<std::string, std::size_t, std::less<>> team_index_;
  std::map<std::string, std::size_t, std::less<>> expert_index_;
  std::map<std::string, std::size_t, std::less<>> indicator_index_;
  std::vector<double> scores_;
  std::vector<unsigned char> score_present_;
  std::vector<double> expertise_;
  std::vector<unsigned char> expertise_present_;
  std::map<std::array<std::size_t, 3>, std::string> categories_;
};

struct ValidationIssue {
  std::string message;
  std::string expert;  // empty when the issue is structural
  std::string team;
  std::string indicator;
};

// Pure check of all RatingMatrix invariants. Empty result means the matrix
// is valid; every violation names the offending cell.
inline std::vector<ValidationIssue> validate_matrix(const RatingMatrix& m) {
  std::vector<ValidationIssue> issues;
  if (m.experts().empty())
    issues.push_back({"evaluation has no experts", "", "", ""});
  if (m.teams().empty())
    issues.push_back({"evaluation has no teams", "", "", ""});
  if (m.indicators().empty())
    issues.push_back({"evaluation has no indicators", "", "", ""});

  for (std::size_t i = 0; i < m.indicators().size(); ++i)
    for (std::size_t j = i + 1; j < m.indicators().size(); ++j)
      if (m.indicators()[i].id == m.indicators()[j].id)
        issues.push_back({"duplicate indicator id '" + m.indicators()[i].id + "'",
                          "", "", m.indicators()[i].id});

  for (std::size_t e = 0; e < m.experts().size(); ++e) {
    for (std::size_t t = 0; t < m.teams().size(); ++t) {
      for (std::size_t i = 0; i < m.indicators().size(); ++i) {
        const auto v = m.score(e, t, i);
        if (!v) continue;
        const Indicator& ind = m.indicators()[i];
        if (ind.kind == IndicatorKind::categorical) {
          issues.push_back({"numeric score stored for categorical indicator",
                            m.experts()[e], m.teams()[t], ind.id});
          continue;
        }
        if (!m.scale().contains(*v))
          issues.push_back({"score " + std::to_string(*v) + " outside scale [" +
                                std::to_string(m.scale().min) + ", " +
                                std::to_string(m.scale().max) + "]",
                            m.experts()[e], m.teams()[t], ind.id});
      }
      const auto w = m.expertise(e, t);
      if (w && *w < 0.0)
        issues.push_back({"negative expertise weight " + std::to_string(*w),
                          m.experts()[e], m.teams()[t], ""});
    }
  }
  return issues;
}

// One publication, possibly shared by several teams and assigned to one or
// more scientific fields. Citation counts exclude nothing; self-citations
// are carried separately so CPP can exclude them.
struct PublicationRecord {
  std::string pub_id;
  std::vector<std::string> team_ids;
  std::string journal_id;
  std::vector<std::string> field_ids;
  int year = 0;
  long citations_total = 0;
  long self_citations = 0;

  long citations_excl_self() const { return citations_total - self_citations; }
};

inline std::vector<std::string> validate_publication(const PublicationRecord& p) {
  std::vector<std::string> errors;
  if (p.team_ids.empty())
    errors.push_back("publication '" + p.pub_id + "' has no team");
  if (p.field_ids.empty())
    errors.push_back("publication '" + p.pub_id + "' has no field");
  if (p.citations_total < 0 || p.self_citations < 0)
    errors.push_back("publication '" + p.pub_id + "' has negative citation counts");
  if (p.self_citations > p.citations_total)
    errors.push_back("publication '" + p.pub_id +
                     "' has more self-citations than citations");
  return errors;
}

// Expected citations per publication for journals (JCS) and fields (FCS),
// keyed by (id, year). A missing baseline is a detectable error at the point
// of use, never a silent default.
class BaselineTable {
 public:
  void set_journal(const std::string& journal, int year, double expected_cpp) {
    check_value(expected_cpp);
    journal_[{journal, year}] = expected_cpp;
  }
  void set_field(const std::string& field, int year, double expected_cpp) {
    check_value(expected_cpp);
    field_[{field, year}] = expected_cpp;
  }

  std::optional<double> journal_baseline(const std::string& journal, int year) const {
    return find(journal_, journal, year);
  }
  std::optional<double> field_baseline(const std::string& field, int year) const {
    return find(field_, field, year);
  }

  bool empty() const { return journal_.empty() && field_.empty(); }

 private:
  using Key = std::pair<std::string, int>;

  static void check_value(double v) {
    if (v < 0.0) throw std::invalid_argument("baseline value must be >= 0");
  }
  static std::optional<double> find(const std::map<Key, double>& m,
                                    const std::string& id, int year) {
    const auto it = m.find({id, year});
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  std::map<Key, double> journal_;
  std::map<Key, double> field_;
};

}  // namespace reva
