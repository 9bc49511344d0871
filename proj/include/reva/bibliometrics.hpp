#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reva/model.hpp"
#include "reva/stats.hpp"

namespace reva {

// Citation-analysis indicators for one team. Citation counts exclude
// self-citations throughout; a publication counts as uncited when its
// citations excluding self-citations are zero.
struct TeamBibIndicators {
  std::string team_id;
  long p = 0;        // publications
  long c = 0;        // citations excluding self-citations
  double cpp = 0.0;  // c / p
  double jcsm = 0.0;
  double fcsm = 0.0;
  double cpp_jcsm = 0.0;
  double cpp_fcsm = 0.0;
  double jcsm_fcsm = 0.0;
  double pnc = 0.0;  // percentage of uncited publications, 0..100
};

struct CppSummary {
  long p = 0;
  long c = 0;
  double cpp = 0.0;
};

inline CppSummary team_cpp(std::span<const PublicationRecord> pubs) {
  if (pubs.empty()) throw DataError("no publications");
  CppSummary out;
  for (const auto& pub : pubs) {
    if (pub.self_citations > pub.citations_total || pub.citations_total < 0 ||
        pub.self_citations < 0)
      throw DataError("publication '" + pub.pub_id + "' has invalid citation counts");
    out.p += 1;
    out.c += pub.citations_excl_self();
  }
  out.cpp = static_cast<double>(out.c) / static_cast<double>(out.p);
  return out;
}

// Mean over publications of the expected citations per publication of the
// journal each appeared in.
inline double jcsm(std::span<const PublicationRecord> pubs, const BaselineTable& baselines) {
  if (pubs.empty()) throw DataError("no publications");
  std::vector<double> expected;
  for (const auto& pub : pubs) {
    const auto jcs = baselines.journal_baseline(pub.journal_id, pub.year);
    if (!jcs)
      throw DataError("no journal baseline for ('" + pub.journal_id + "', " +
                      std::to_string(pub.year) + ")");
    expected.push_back(*jcs);
  }
  return detail::sorted_mean(std::move(expected));
}

// As jcsm at the field level; a publication assigned to several fields
// contributes the mean of its fields' baselines.
inline double fcsm(std::span<const PublicationRecord> pubs, const BaselineTable& baselines) {
  if (pubs.empty()) throw DataError("no publications");
  std::vector<double> expected;
  for (const auto& pub : pubs) {
    if (pub.field_ids.empty())
      throw DataError("publication '" + pub.pub_id + "' has no field");
    std::vector<double> per_field;
    for (const auto& field : pub.field_ids) {
      const auto fcs = baselines.field_baseline(field, pub.year);
      if (!fcs)
        throw DataError("no field baseline for ('" + field + "', " +
                        std::to_string(pub.year) + ")");
      per_field.push_back(*fcs);
    }
    expected.push_back(detail::sorted_mean(std::move(per_field)));
  }
  return detail::sorted_mean(std::move(expected));
}

inline TeamBibIndicators normalized_indicators(std::string team_id,
                                               std::span<const PublicationRecord> pubs,
                                               const BaselineTable& baselines) {
  const CppSummary base = team_cpp(pubs);
  TeamBibIndicators out;
  out.team_id = std::move(team_id);
  out.p = base.p;
  out.c = base.c;
  out.cpp = base.cpp;
  out.jcsm = jcsm(pubs, baselines);
  out.fcsm = fcsm(pubs, baselines);
  if (out.jcsm == 0.0 || out.fcsm == 0.0)
    throw DataError("undefined ratio for team '" + out.team_id +
                    "': zero journal or field baseline mean");
  out.cpp_jcsm = out.cpp / out.jcsm;
  out.cpp_fcsm = out.cpp / out.fcsm;
  out.jcsm_fcsm = out.jcsm / out.fcsm;
  long uncited = 0;
  for (const auto& pub : pubs)
    if (pub.citations_excl_self() == 0) ++uncited;
  out.pnc = 100.0 * static_cast<double>(uncited) / static_cast<double>(out.p);
  return out;
}

// Per-team indicators for a whole publication list. A publication shared by
// several teams counts fully for each; teams come out sorted by id.
inline std::vector<TeamBibIndicators> indicators_by_team(
    std::span<const PublicationRecord> pubs, const BaselineTable& baselines) {
  std::map<std::string, std::vector<PublicationRecord>> by_team;
  for (const auto& pub : pubs)
    for (const auto& team : pub.team_ids) by_team[team].push_back(pub);
  std::vector<TeamBibIndicators> out;
  out.reserve(by_team.size());
  for (const auto& [team, team_pubs] : by_team)
    out.push_back(normalized_indicators(team, team_pubs, baselines));
  return out;
}

// Citation indicators that enter cross-method correlation tables, in report
// order. The three normalized ratios are expected to correlate positively
// with peer scores, PNC negatively.
inline const std::vector<std::string>& bib_comparison_ids() {
  static const std::vector<std::string> ids = {"CPP/JCSm", "CPP/FCSm", "JCSm/FCSm",
                                               "PNC"};
  return ids;
}

inline bool bib_expected_negative(std::string_view id) { return id == "PNC"; }

inline std::optional<double> bib_value(const TeamBibIndicators& t, std::string_view id) {
  if (id == "P") return static_cast<double>(t.p);
  if (id == "C") return static_cast<double>(t.c);
  if (id == "CPP") return t.cpp;
  if (id == "JCSm") return t.jcsm;
  if (id == "FCSm") return t.fcsm;
  if (id == "CPP/JCSm") return t.cpp_jcsm;
  if (id == "CPP/FCSm") return t.cpp_fcsm;
  if (id == "JCSm/FCSm") return t.jcsm_fcsm;
  if (id == "PNC") return t.pnc;
  return std::nullopt;
}

inline const std::vector<std::string>& bib_all_ids() {
  static const std::vector<std::string> ids = {
      "P", "C", "CPP", "JCSm", "FCSm", "CPP/JCSm", "CPP/FCSm", "JCSm/FCSm", "PNC"};
  return ids;
}

}  // namespace reva
