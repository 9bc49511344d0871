#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reva/aggregate.hpp"
#include "reva/model.hpp"
#include "reva/simulate.hpp"

namespace reva {

// One evaluation as loaded from disk: the rating matrix plus the aggregation
// scheme its institution uses.
struct EvaluationData {
  RatingMatrix matrix;
  AggregationScheme scheme = AggregationScheme::plain;
};

struct DataBundle {
  std::vector<EvaluationData> evaluations;
  std::vector<PublicationRecord> publications;
  BaselineTable baselines;

  const EvaluationData* find_evaluation(std::string_view id) const {
    for (const auto& e : evaluations)
      if (e.matrix.evaluation_id() == id) return &e;
    return nullptr;
  }
};

namespace detail {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

inline std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError(file.filename().string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

inline std::vector<std::string> split_csv_fields(const std::string& name,
                                                 std::size_t line,
                                                 std::string_view text) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          current.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (quoted)
    throw DataError(name + ":" + std::to_string(line) + ": unterminated quote");
  fields.push_back(std::move(current));
  return fields;
}

inline std::vector<CsvRow> read_csv(const std::filesystem::path& file,
                                    std::span<const char* const> header) {
  const std::string name = file.filename().string();
  std::string text = read_text_file(file);
  if (text.starts_with("\xef\xbb\xbf")) text.erase(0, 3);

  std::vector<CsvRow> rows;
  std::size_t line = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view raw(text.data() + pos,
                         (end == std::string::npos ? text.size() : end) - pos);
    pos = (end == std::string::npos) ? text.size() + 1 : end + 1;
    ++line;
    if (raw.ends_with('\r')) raw.remove_suffix(1);
    if (raw.empty()) continue;

    auto fields = split_csv_fields(name, line, raw);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != header.size() ||
          ![&] {
            for (std::size_t i = 0; i < header.size(); ++i)
              if (fields[i] != header[i]) return false;
            return true;
          }()) {
        std::string expected;
        for (std::size_t i = 0; i < header.size(); ++i) {
          if (i) expected += ',';
          expected += header[i];
        }
        throw DataError(name + ":" + std::to_string(line) +
                        ": header must be '" + expected + "'");
      }
      continue;
    }
    if (fields.size() != header.size())
      throw DataError(name + ":" + std::to_string(line) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    rows.push_back({line, std::move(fields)});
  }
  if (!header_seen) throw DataError(name + ": file is empty");
  return rows;
}

inline std::string row_context(const std::string& file, std::size_t line,
                               const char* column) {
  return file + ":" + std::to_string(line) + ": column '" + column + "': ";
}

inline double parse_double_field(const std::string& file, std::size_t line,
                                 const char* column, const std::string& text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw DataError(row_context(file, line, column) + "cannot parse '" + text +
                    "' as a number");
  return value;
}

inline long parse_int_field(const std::string& file, std::size_t line,
                            const char* column, const std::string& text) {
  long value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw DataError(row_context(file, line, column) + "cannot parse '" + text +
                    "' as an integer");
  return value;
}

inline std::vector<std::string> split_semicolons(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find(';', pos);
    std::string_view piece =
        text.substr(pos, (end == std::string_view::npos ? text.size() : end) - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

inline nlohmann::json parse_json_file(const std::filesystem::path& file) {
  const std::string name = file.filename().string();
  try {
    return nlohmann::json::parse(read_text_file(file));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(name + ": " + e.what());
  }
}

inline RatingScale scale_from_json(const nlohmann::json& j,
                                   const std::string& context) {
  if (!j.is_object() || !j.contains("kind"))
    throw DataError(context + ": scale needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "numeric") {
      if (!j.contains("min") || !j.contains("max"))
        throw DataError(context + ": numeric scale needs 'min' and 'max'");
      return RatingScale::numeric(j.at("min").get<double>(),
                                  j.at("max").get<double>(),
                                  j.value("step", 1.0));
    }
    if (kind == "ordinal") {
      if (!j.contains("grades"))
        throw DataError(context + ": ordinal scale needs 'grades'");
      return RatingScale::ordinal(
          j.at("grades").get<std::vector<std::string>>());
    }
  } catch (const std::invalid_argument& e) {
    throw DataError(context + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(context + ": " + e.what());
  }
  throw DataError(context + ": unknown scale kind '" + kind + "'");
}

struct ManifestEntry {
  std::string id;
  std::string discipline;
  RatingScale scale;
  AggregationScheme scheme = AggregationScheme::plain;
};

inline std::vector<ManifestEntry> load_manifest(
    const std::filesystem::path& file) {
  const std::string name = file.filename().string();
  const nlohmann::json j = parse_json_file(file);
  if (!j.is_object() || !j.contains("evaluations") ||
      !j.at("evaluations").is_array())
    throw DataError(name + ": manifest needs an 'evaluations' array");

  std::vector<ManifestEntry> entries;
  for (const auto& ev : j.at("evaluations")) {
    if (!ev.is_object() || !ev.contains("id") || !ev.contains("scale"))
      throw DataError(name + ": every evaluation needs 'id' and 'scale'");
    ManifestEntry entry;
    entry.id = ev.at("id").get<std::string>();
    const std::string context = name + ": evaluation '" + entry.id + "'";
    entry.discipline = ev.value("discipline", entry.id);
    entry.scale = scale_from_json(ev.at("scale"), context);
    const std::string scheme = ev.value("aggregation", "plain");
    const auto parsed = aggregation_scheme_from(scheme);
    if (!parsed)
      throw DataError(context + ": unknown aggregation scheme '" + scheme + "'");
    entry.scheme = *parsed;
    for (const auto& other : entries)
      if (other.id == entry.id)
        throw DataError(name + ": duplicate evaluation id '" + entry.id + "'");
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw DataError(name + ": no evaluations declared");
  return entries;
}

inline std::size_t require_index(const std::optional<std::size_t>& idx,
                                 const std::string& file, std::size_t line,
                                 const char* what, const std::string& id) {
  if (!idx)
    throw DataError(file + ":" + std::to_string(line) + ": unknown " + what +
                    " '" + id + "'");
  return *idx;
}

}  // namespace detail

// Load a bundle directory: manifest.json, indicators.csv and ratings.csv are
// required; expertise.csv, baselines.csv and publications.csv are optional.
// Every cross-reference is checked here with the offending row named, so the
// returned model needs no further validation.
inline DataBundle load_bundle(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw DataError("bundle directory '" + dir.string() + "' does not exist");

  const auto entries = detail::load_manifest(dir / "manifest.json");

  static constexpr const char* kIndicatorHeader[] = {"evaluation", "id", "label",
                                                     "kind", "group"};
  static constexpr const char* kRatingHeader[] = {
      "evaluation", "discipline", "expert", "team", "indicator", "score"};
  static constexpr const char* kExpertiseHeader[] = {"evaluation", "expert",
                                                     "team", "weight"};
  static constexpr const char* kBaselineHeader[] = {"kind", "key", "year",
                                                    "expected_cpp"};
  static constexpr const char* kPublicationHeader[] = {
      "team", "pub_id", "journal", "year", "fields", "citations",
      "self_citations"};

  const auto eval_index = [&entries](const std::string& file, std::size_t line,
                                     const std::string& id) {
    for (std::size_t k = 0; k < entries.size(); ++k)
      if (entries[k].id == id) return k;
    throw DataError(file + ":" + std::to_string(line) +
                    ": unknown evaluation '" + id + "'");
  };

  // Indicator metadata, in file order per evaluation.
  std::vector<std::vector<Indicator>> indicators(entries.size());
  {
    const std::string file = "indicators.csv";
    std::map<std::pair<std::size_t, std::string>, std::size_t> seen;
    for (const auto& row : detail::read_csv(dir / file, kIndicatorHeader)) {
      const std::size_t ev = eval_index(file, row.line, row.fields[0]);
      const auto kind = indicator_kind_from(row.fields[3]);
      if (!kind)
        throw DataError(detail::row_context(file, row.line, "kind") +
                        "unknown indicator kind '" + row.fields[3] + "'");
      const auto [it, inserted] =
          seen.try_emplace({ev, row.fields[1]}, row.line);
      if (!inserted)
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": duplicate indicator '" + row.fields[1] +
                        "' for evaluation '" + entries[ev].id +
                        "'; first declared at line " + std::to_string(it->second));
      indicators[ev].push_back(
          {row.fields[1], row.fields[2], *kind, row.fields[4]});
    }
  }

  // Ratings drive the team and expert rosters, in first-appearance order.
  const auto rating_rows = detail::read_csv(dir / "ratings.csv", kRatingHeader);
  std::vector<std::vector<std::string>> teams(entries.size());
  std::vector<std::vector<std::string>> experts(entries.size());
  std::vector<std::string> disciplines(entries.size());
  {
    const std::string file = "ratings.csv";
    for (const auto& row : rating_rows) {
      const std::size_t ev = eval_index(file, row.line, row.fields[0]);
      if (disciplines[ev].empty())
        disciplines[ev] = row.fields[1];
      else if (disciplines[ev] != row.fields[1])
        throw DataError(detail::row_context(file, row.line, "discipline") +
                        "evaluation '" + entries[ev].id + "' is '" +
                        disciplines[ev] + "' elsewhere");
      bool found = false;
      for (const auto& ind : indicators[ev]) found |= ind.id == row.fields[4];
      if (!found)
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": unknown indicator '" + row.fields[4] +
                        "' for evaluation '" + entries[ev].id + "'");
      auto& ts = teams[ev];
      if (std::find(ts.begin(), ts.end(), row.fields[3]) == ts.end())
        ts.push_back(row.fields[3]);
      auto& es = experts[ev];
      if (std::find(es.begin(), es.end(), row.fields[2]) == es.end())
        es.push_back(row.fields[2]);
    }
  }

  DataBundle bundle;
  for (std::size_t ev = 0; ev < entries.size(); ++ev) {
    if (teams[ev].empty())
      throw DataError("ratings.csv: no ratings for evaluation '" +
                      entries[ev].id + "'");
    bundle.evaluations.push_back(
        {RatingMatrix(entries[ev].id, disciplines[ev], entries[ev].scale,
                      teams[ev], experts[ev], indicators[ev]),
         entries[ev].scheme});
  }

  {
    const std::string file = "ratings.csv";
    std::map<std::array<std::size_t, 4>, std::size_t> seen;
    for (const auto& row : rating_rows) {
      const std::size_t ev = eval_index(file, row.line, row.fields[0]);
      RatingMatrix& m = bundle.evaluations[ev].matrix;
      const std::size_t e = *m.expert_index(row.fields[2]);
      const std::size_t t = *m.team_index(row.fields[3]);
      const std::size_t i = *m.indicator_index(row.fields[4]);
      const auto [it, inserted] = seen.try_emplace({ev, e, t, i}, row.line);
      if (!inserted)
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": duplicate rating (" + row.fields[2] + ", " +
                        row.fields[3] + ", " + row.fields[4] +
                        ") for evaluation '" + entries[ev].id +
                        "'; first seen at line " + std::to_string(it->second));

      if (m.indicators()[i].kind == IndicatorKind::categorical) {
        m.set_category(e, t, i, row.fields[5]);
        continue;
      }
      double value = 0.0;
      if (m.scale().kind == ScaleKind::ordinal) {
        try {
          value = ordinal_to_numeric(m.scale(), row.fields[5]);
        } catch (const DataError& e2) {
          throw DataError(detail::row_context(file, row.line, "score") +
                          e2.what());
        }
      } else {
        value = detail::parse_double_field(file, row.line, "score",
                                           row.fields[5]);
        if (!m.scale().contains(value))
          throw DataError(detail::row_context(file, row.line, "score") + "'" +
                          row.fields[5] + "' is outside the rating scale");
      }
      m.set_score(e, t, i, value);
    }
  }

  if (std::filesystem::exists(dir / "expertise.csv")) {
    const std::string file = "expertise.csv";
    std::map<std::array<std::size_t, 3>, std::size_t> seen;
    for (const auto& row : detail::read_csv(dir / file, kExpertiseHeader)) {
      const std::size_t ev = eval_index(file, row.line, row.fields[0]);
      RatingMatrix& m = bundle.evaluations[ev].matrix;
      const std::size_t e = detail::require_index(m.expert_index(row.fields[1]),
                                                  file, row.line, "expert",
                                                  row.fields[1]);
      const std::size_t t = detail::require_index(m.team_index(row.fields[2]),
                                                  file, row.line, "team",
                                                  row.fields[2]);
      const auto [it, inserted] = seen.try_emplace({ev, e, t}, row.line);
      if (!inserted)
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": duplicate expertise weight (" + row.fields[1] +
                        ", " + row.fields[2] + "); first seen at line " +
                        std::to_string(it->second));
      const double w =
          detail::parse_double_field(file, row.line, "weight", row.fields[3]);
      if (w < 0.0)
        throw DataError(detail::row_context(file, row.line, "weight") +
                        "weight must be >= 0");
      m.set_expertise(e, t, w);
    }
  }

  if (std::filesystem::exists(dir / "baselines.csv")) {
    const std::string file = "baselines.csv";
    std::map<std::tuple<std::string, std::string, long>, std::size_t> seen;
    for (const auto& row : detail::read_csv(dir / file, kBaselineHeader)) {
      const std::string& kind = row.fields[0];
      if (kind != "journal" && kind != "field")
        throw DataError(detail::row_context(file, row.line, "kind") +
                        "must be 'journal' or 'field', found '" + kind + "'");
      const long year =
          detail::parse_int_field(file, row.line, "year", row.fields[2]);
      const double cpp = detail::parse_double_field(file, row.line,
                                                    "expected_cpp",
                                                    row.fields[3]);
      if (cpp < 0.0)
        throw DataError(detail::row_context(file, row.line, "expected_cpp") +
                        "expected citation rate must be >= 0");
      const auto [it, inserted] =
          seen.try_emplace({kind, row.fields[1], year}, row.line);
      if (!inserted)
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": duplicate baseline (" + kind + ", " + row.fields[1] +
                        ", " + row.fields[2] + "); first seen at line " +
                        std::to_string(it->second));
      if (kind == "journal")
        bundle.baselines.set_journal(row.fields[1], static_cast<int>(year), cpp);
      else
        bundle.baselines.set_field(row.fields[1], static_cast<int>(year), cpp);
    }
  }

  if (std::filesystem::exists(dir / "publications.csv")) {
    const std::string file = "publications.csv";
    const auto team_known = [&bundle](const std::string& id) {
      for (const auto& e : bundle.evaluations)
        if (e.matrix.team_index(id)) return true;
      return false;
    };
    std::map<std::string, std::pair<std::size_t, std::size_t>> by_pub;
    for (const auto& row : detail::read_csv(dir / file, kPublicationHeader)) {
      if (!team_known(row.fields[0]))
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": unknown team '" + row.fields[0] + "'");
      const long year =
          detail::parse_int_field(file, row.line, "year", row.fields[3]);
      const long citations =
          detail::parse_int_field(file, row.line, "citations", row.fields[5]);
      const long self = detail::parse_int_field(file, row.line,
                                                "self_citations",
                                                row.fields[6]);

      PublicationRecord rec;
      rec.pub_id = row.fields[1];
      rec.team_ids = {row.fields[0]};
      rec.journal_id = row.fields[2];
      rec.field_ids = detail::split_semicolons(row.fields[4]);
      rec.year = static_cast<int>(year);
      rec.citations_total = static_cast<int>(citations);
      rec.self_citations = static_cast<int>(self);
      for (const auto& msg : validate_publication(rec))
        throw DataError(file + ":" + std::to_string(row.line) + ": " + msg);

      if (!bundle.baselines.journal_baseline(rec.journal_id, rec.year))
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": no journal baseline for ('" + rec.journal_id +
                        "', " + std::to_string(rec.year) + ")");
      for (const auto& field : rec.field_ids)
        if (!bundle.baselines.field_baseline(field, rec.year))
          throw DataError(file + ":" + std::to_string(row.line) +
                          ": no field baseline for ('" + field + "', " +
                          std::to_string(rec.year) + ")");

      const auto it = by_pub.find(rec.pub_id);
      if (it == by_pub.end()) {
        by_pub.emplace(rec.pub_id,
                       std::make_pair(bundle.publications.size(), row.line));
        bundle.publications.push_back(std::move(rec));
        continue;
      }
      PublicationRecord& existing = bundle.publications[it->second.first];
      const std::string prior = "; first seen at line " +
                                std::to_string(it->second.second);
      if (existing.journal_id != rec.journal_id ||
          existing.field_ids != rec.field_ids || existing.year != rec.year ||
          existing.citations_total != rec.citations_total ||
          existing.self_citations != rec.self_citations)
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": publication '" + rec.pub_id +
                        "' conflicts with an earlier row" + prior);
      if (std::find(existing.team_ids.begin(), existing.team_ids.end(),
                    row.fields[0]) != existing.team_ids.end())
        throw DataError(file + ":" + std::to_string(row.line) +
                        ": duplicate publication row ('" + row.fields[0] +
                        "', '" + rec.pub_id + "')" + prior);
      existing.team_ids.push_back(row.fields[0]);
    }
  }

  for (const auto& e : bundle.evaluations) {
    const auto issues = validate_matrix(e.matrix);
    if (!issues.empty())
      throw DataError("evaluation '" + e.matrix.evaluation_id() +
                      "': " + issues.front().message);
  }
  return bundle;
}

// Declarative simulation scenario. `experiment` selects what to run: empty
// for a single simulated evaluation, "panel-vs-distinct" or "agreement-sweep"
// for the experiments (the latter needs `sigma_grid`).
struct Scenario {
  SimConfig config;
  std::string experiment;
  int trials = 100;
  std::vector<double> sigma_grid;
};

inline Scenario load_scenario(const std::filesystem::path& file) {
  const std::string name = file.filename().string();
  const nlohmann::json j = detail::parse_json_file(file);
  if (!j.is_object()) throw DataError(name + ": scenario must be an object");

  Scenario sc;
  try {
    sc.config.teams = j.value("teams", 0);
    sc.config.experts = j.value("experts", 0);

    if (!j.contains("indicators"))
      throw DataError(name + ": scenario needs 'indicators'");
    for (const auto& ind : j.at("indicators")) {
      if (ind.is_string()) {
        sc.config.indicators.push_back(
            {ind.get<std::string>(), ind.get<std::string>(),
             IndicatorKind::global, ""});
        continue;
      }
      const std::string id = ind.at("id").get<std::string>();
      const std::string kind_text = ind.value("kind", "global");
      const auto kind = indicator_kind_from(kind_text);
      if (!kind)
        throw DataError(name + ": unknown indicator kind '" + kind_text + "'");
      sc.config.indicators.push_back(
          {id, ind.value("label", id), *kind, ind.value("group", "")});
    }

    if (j.contains("scale"))
      sc.config.scale = detail::scale_from_json(j.at("scale"), name);

    const bool per_team = j.contains("quality_per_team");
    if (per_team == j.contains("quality"))
      throw DataError(name +
                      ": provide exactly one of 'quality_per_team' and "
                      "'quality'");
    if (per_team) {
      sc.config.quality =
          quality_per_team(j.at("quality_per_team").get<std::vector<double>>(),
                           sc.config.indicators.size());
    } else {
      for (const auto& row : j.at("quality"))
        for (const auto& v : row) sc.config.quality.push_back(v.get<double>());
    }

    sc.config.sigma = j.value("sigma", 0.0);
    if (j.contains("habit_ranges") && j.contains("habit_profile"))
      throw DataError(name +
                      ": 'habit_ranges' and 'habit_profile' are exclusive");
    if (j.contains("habit_ranges")) {
      const auto& hr = j.at("habit_ranges");
      sc.config.habits = HabitRanges{
          hr.value("offset_min", 0.0), hr.value("offset_max", 0.0),
          hr.value("gain_min", 1.0), hr.value("gain_max", 1.0)};
    } else if (j.contains("habit_profile")) {
      const auto& hp = j.at("habit_profile");
      HabitProfile profile = HabitProfile::identity(
          static_cast<std::size_t>(sc.config.experts),
          sc.config.indicators.size());
      profile.offsets.clear();
      profile.gains.clear();
      for (const auto& row : hp.at("offsets"))
        for (const auto& v : row) profile.offsets.push_back(v.get<double>());
      for (const auto& row : hp.at("gains"))
        for (const auto& v : row) profile.gains.push_back(v.get<double>());
      if (profile.offsets.size() != profile.experts * profile.indicators ||
          profile.gains.size() != profile.experts * profile.indicators)
        throw DataError(name + ": habit profile must be experts x indicators");
      sc.config.habits = std::move(profile);
    }

    const std::string assignment = j.value("assignment", "full-panel");
    const auto parsed_assignment = assignment_from(assignment);
    if (!parsed_assignment)
      throw DataError(name + ": unknown assignment '" + assignment + "'");
    sc.config.assignment = *parsed_assignment;
    sc.config.coverage = j.value("coverage", 1.0);
    sc.config.seed = j.value("seed", std::uint64_t{0});

    sc.experiment = j.value("experiment", "");
    if (sc.experiment != "" && sc.experiment != "panel-vs-distinct" &&
        sc.experiment != "agreement-sweep")
      throw DataError(name + ": unknown experiment '" + sc.experiment + "'");
    sc.trials = j.value("trials", 100);
    if (j.contains("sigma_grid"))
      sc.sigma_grid = j.at("sigma_grid").get<std::vector<double>>();
    if (sc.experiment == "agreement-sweep" && sc.sigma_grid.empty())
      throw DataError(name + ": agreement-sweep needs a 'sigma_grid'");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(name + ": " + e.what());
  }

  try {
    validate_sim_config(sc.config);
  } catch (const std::invalid_argument& e) {
    throw DataError(name + ": " + e.what());
  }
  return sc;
}

}  // namespace reva
