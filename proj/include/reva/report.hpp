#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reva/agreement.hpp"
#include "reva/bibliometrics.hpp"
#include "reva/comparison.hpp"
#include "reva/io.hpp"
#include "reva/simulate.hpp"

namespace reva {

namespace detail {

// Human tables use two decimals; machine output keeps every bit via the
// shortest round-trip representation.
inline std::string fixed_decimals(double v, int decimals = 2) {
  if (v == 0.0) v = 0.0;  // avoid the "-0.00" rendering
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return std::string(buf, static_cast<std::size_t>(len));
}

inline std::string full_precision(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string compact_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

inline std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

inline std::string csv_line(std::span<const std::string> fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
  return out;
}

inline std::string md_escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

class MdTable {
 public:
  explicit MdTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::string out = "|";
    for (const auto& h : header_) out += " " + md_escape(h) + " |";
    out += "\n|";
    for (std::size_t i = 0; i < header_.size(); ++i) out += " --- |";
    out += "\n";
    for (const auto& row : rows_) {
      out += "|";
      for (const auto& cell : row) out += " " + md_escape(cell) + " |";
      out += "\n";
    }
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Rendering of one correlation for a human table: bold iff significant.
inline std::string md_r(const CorrelationResult& result) {
  const std::string text = fixed_decimals(result.r);
  return result.significant ? "**" + text + "**" : text;
}

inline std::string md_cell(const MatrixCell& cell) {
  switch (cell.status) {
    case CellStatus::computed: return md_r(cell.result);
    case CellStatus::undefined: return "n/a";
    case CellStatus::insufficient: return "n<3";
  }
  return "";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Data summary

inline std::string data_summary_markdown(const DataBundle& bundle) {
  std::string out = "## Data summary\n\n";
  detail::MdTable table({"evaluation", "discipline", "scale", "teams", "experts",
                         "indicators", "aggregation"});
  for (const auto& e : bundle.evaluations) {
    const auto& m = e.matrix;
    const std::string scale =
        m.scale().kind == ScaleKind::ordinal
            ? "ordinal (" + std::to_string(m.scale().labels.size()) + " grades)"
            : detail::compact_number(m.scale().min) + " to " +
                  detail::compact_number(m.scale().max);
    table.add_row({m.evaluation_id(), m.discipline(), scale,
                   std::to_string(m.teams().size()),
                   std::to_string(m.experts().size()),
                   std::to_string(m.indicators().size()),
                   to_string(e.scheme)});
  }
  out += table.str();
  out += "\nPublications: " + std::to_string(bundle.publications.size()) + "\n";
  return out;
}

inline std::string data_summary_csv(const DataBundle& bundle) {
  std::string out =
      "evaluation,discipline,teams,experts,indicators,aggregation\n";
  for (const auto& e : bundle.evaluations) {
    const auto& m = e.matrix;
    out += detail::csv_line(std::vector<std::string>{
        m.evaluation_id(), m.discipline(), std::to_string(m.teams().size()),
        std::to_string(m.experts().size()),
        std::to_string(m.indicators().size()), to_string(e.scheme)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inter-peer agreement

inline std::string agreement_markdown(const RatingMatrix& matrix,
                                      const StatConfig& stat = {}) {
  std::string out = "### " + matrix.evaluation_id() + "\n\n";
  AgreementReport report{matrix.evaluation_id(), 0, {}, AgreementClass::low};
  try {
    report = classify_agreement(matrix, stat);
  } catch (const DataError& e) {
    out += std::string(e.what()) + "\n";
    return out;
  }

  detail::MdTable table(
      {"indicator", "label", "pairs", "computed", "mean r", "n", "p"});
  for (const auto& ind : report.indicators) {
    std::size_t computed = 0;
    for (const auto& pair : ind.pairs) computed += pair.computed() ? 1 : 0;
    std::string mean_r = "n/a";
    std::string p = "";
    std::string n = "";
    if (ind.averaged) {
      mean_r = detail::md_r(*ind.averaged);
      p = detail::fixed_decimals(ind.averaged->p_value, 3);
      n = std::to_string(ind.averaged->n);
    }
    table.add_row({ind.indicator_id,
                   [&] {
                     for (const auto& meta : matrix.indicators())
                       if (meta.id == ind.indicator_id) return meta.label;
                     return std::string();
                   }(),
                   std::to_string(ind.pairs.size()), std::to_string(computed),
                   mean_r, n, p});
  }
  out += table.str();
  out += "\nClassification: " + std::string(to_string(report.classification)) +
         " inter-peer agreement over " + std::to_string(report.teams) +
         " teams.\n";
  return out;
}

inline std::string agreement_markdown(const DataBundle& bundle,
                                      const StatConfig& stat = {}) {
  std::string out = "## Inter-peer agreement\n\n";
  for (const auto& e : bundle.evaluations)
    out += agreement_markdown(e.matrix, stat) + "\n";
  return out;
}

inline std::string agreement_csv(const DataBundle& bundle,
                                 const StatConfig& stat = {}) {
  std::string out =
      "evaluation,indicator,pairs,computed,mean_r,n,p_value,significant,"
      "classification\n";
  for (const auto& e : bundle.evaluations) {
    try {
      const auto report = classify_agreement(e.matrix, stat);
      for (const auto& ind : report.indicators) {
        std::size_t computed = 0;
        for (const auto& pair : ind.pairs) computed += pair.computed() ? 1 : 0;
        std::vector<std::string> row{
            e.matrix.evaluation_id(), ind.indicator_id,
            std::to_string(ind.pairs.size()), std::to_string(computed)};
        if (ind.averaged) {
          row.push_back(detail::full_precision(ind.averaged->r));
          row.push_back(std::to_string(ind.averaged->n));
          row.push_back(detail::full_precision(ind.averaged->p_value));
          row.push_back(ind.averaged->significant ? "true" : "false");
        } else {
          row.insert(row.end(), {"", "", "", ""});
        }
        row.push_back(to_string(report.classification));
        out += detail::csv_line(row);
      }
    } catch (const DataError& err) {
      out += detail::csv_line(std::vector<std::string>{
          e.matrix.evaluation_id(), "", "", "", "", "", "", "", err.what()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rating-habit diagnostics

inline std::string habits_markdown(const HabitReport& report,
                                   const StatConfig& stat = {}) {
  (void)stat;
  std::string out = "### " + report.evaluation_id + "\n\n";
  const auto& matrix = report.matrix;
  const std::size_t k = matrix.size();

  std::vector<std::string> header{"indicator"};
  for (std::size_t j = 0; j < k; ++j) header.push_back(matrix.indicators[j].id);
  detail::MdTable table(std::move(header));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::string> row{matrix.indicators[i].id};
    for (std::size_t j = 0; j < k; ++j)
      row.push_back(i == j ? "1" : detail::md_cell(matrix.cell(i, j)));
    table.add_row(std::move(row));
  }
  out += table.str();

  if (report.warnings.empty()) {
    out += "\nNo habit warnings.\n";
  } else {
    out += "\nHabit warnings:\n\n";
    for (const auto& w : report.warnings) {
      out += "- " + w.indicator_a + " vs " + w.indicator_b + " (group " +
             w.group + "): r = " + detail::fixed_decimals(w.r) +
             " over n = " + std::to_string(w.n);
      if (w.negative) out += ", negative correlation";
      out += ", p = " + detail::fixed_decimals(w.p_value, 3) +
             ", critical r = " + detail::fixed_decimals(w.critical_value) + "\n";
    }
  }
  if (!report.unassessed.empty()) {
    out += "\nPairs expected to correlate but not assessable:\n\n";
    for (const auto& u : report.unassessed)
      out += "- " + u.indicator_a + " vs " + u.indicator_b + " (group " +
             u.group + "): " + to_string(u.status) + ", n = " +
             std::to_string(u.n) + "\n";
  }
  return out;
}

inline std::string habits_markdown(const DataBundle& bundle,
                                   const StatConfig& stat = {}) {
  std::string out = "## Rating-habit diagnostics\n\n";
  for (const auto& e : bundle.evaluations) {
    const auto scores = aggregate_evaluation(e.matrix, e.scheme);
    out += habits_markdown(habit_report(scores, stat), stat) + "\n";
  }
  return out;
}

inline std::string habits_csv(const DataBundle& bundle,
                              const StatConfig& stat = {}) {
  std::string out =
      "evaluation,indicator_a,indicator_b,group,status,r,n,p_value,"
      "significant,warning,negative\n";
  for (const auto& e : bundle.evaluations) {
    const auto scores = aggregate_evaluation(e.matrix, e.scheme);
    const auto report = habit_report(scores, stat);
    const auto& matrix = report.matrix;
    const auto warning_for = [&report](const std::string& a,
                                       const std::string& b) {
      for (const auto& w : report.warnings)
        if (w.indicator_a == a && w.indicator_b == b) return &w;
      return static_cast<const HabitWarning*>(nullptr);
    };
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      for (std::size_t j = i + 1; j < matrix.size(); ++j) {
        const auto& cell = matrix.cell(i, j);
        const std::string a = matrix.indicators[i].id;
        const std::string b = matrix.indicators[j].id;
        std::vector<std::string> row{report.evaluation_id, a, b,
                                     effective_group(matrix.indicators[i]) ==
                                             effective_group(matrix.indicators[j])
                                         ? effective_group(matrix.indicators[i])
                                         : "",
                                     to_string(cell.status)};
        if (cell.status == CellStatus::computed) {
          row.push_back(detail::full_precision(cell.result.r));
          row.push_back(std::to_string(cell.result.n));
          row.push_back(detail::full_precision(cell.result.p_value));
          row.push_back(cell.result.significant ? "true" : "false");
        } else {
          row.insert(row.end(), {"", std::to_string(cell.n), "", ""});
        }
        const auto* w = warning_for(a, b);
        row.push_back(w ? "true" : "false");
        row.push_back(w && w->negative ? "true" : "false");
        out += detail::csv_line(row);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregated team scores

inline std::string aggregate_markdown(const TeamScores& scores) {
  std::string out = "### " + scores.evaluation_id() + " (" +
                    to_string(scores.scheme()) + ")\n\n";
  std::vector<std::string> header{"team"};
  for (const auto& ind : scores.indicators()) header.push_back(ind.id);
  detail::MdTable table(std::move(header));
  for (std::size_t t = 0; t < scores.teams().size(); ++t) {
    std::vector<std::string> row{scores.teams()[t]};
    for (std::size_t i = 0; i < scores.indicators().size(); ++i) {
      const auto v = scores.value(t, i);
      row.push_back(v ? detail::fixed_decimals(*v) : "");
    }
    table.add_row(std::move(row));
  }
  out += table.str();
  return out;
}

inline std::string aggregate_markdown(const DataBundle& bundle,
                                      std::optional<AggregationScheme> scheme
                                      = std::nullopt) {
  std::string out = "## Aggregated team scores\n\n";
  for (const auto& e : bundle.evaluations)
    out += aggregate_markdown(
               aggregate_evaluation(e.matrix, scheme.value_or(e.scheme))) +
           "\n";
  return out;
}

inline std::string aggregate_csv(const DataBundle& bundle,
                                 std::optional<AggregationScheme> scheme
                                 = std::nullopt) {
  std::string out = "evaluation,scheme,team,indicator,score,contributors\n";
  for (const auto& e : bundle.evaluations) {
    const auto scores =
        aggregate_evaluation(e.matrix, scheme.value_or(e.scheme));
    for (std::size_t t = 0; t < scores.teams().size(); ++t) {
      for (std::size_t i = 0; i < scores.indicators().size(); ++i) {
        const auto v = scores.value(t, i);
        if (!v) continue;
        out += detail::csv_line(std::vector<std::string>{
            scores.evaluation_id(), to_string(scores.scheme()),
            scores.teams()[t], scores.indicators()[i].id,
            detail::full_precision(*v),
            std::to_string(scores.contributors(t, i))});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bibliometric indicators

inline std::string biblio_markdown(std::span<const TeamBibIndicators> teams) {
  std::string out = "## Bibliometric indicators\n\n";
  if (teams.empty()) {
    out += "No publication data.\n";
    return out;
  }
  detail::MdTable table({"team", "P", "C", "CPP", "JCSm", "FCSm", "CPP/JCSm",
                         "CPP/FCSm", "JCSm/FCSm", "PNC"});
  for (const auto& t : teams)
    table.add_row({t.team_id, std::to_string(t.p), std::to_string(t.c),
                   detail::fixed_decimals(t.cpp), detail::fixed_decimals(t.jcsm),
                   detail::fixed_decimals(t.fcsm),
                   detail::fixed_decimals(t.cpp_jcsm),
                   detail::fixed_decimals(t.cpp_fcsm),
                   detail::fixed_decimals(t.jcsm_fcsm),
                   detail::fixed_decimals(t.pnc)});
  out += table.str();
  out += "\nCitations exclude self-citations; PNC counts publications with no "
         "external citations.\n";
  return out;
}

inline std::string biblio_csv(std::span<const TeamBibIndicators> teams) {
  std::string out =
      "team,p,c,cpp,jcsm,fcsm,cpp_jcsm,cpp_fcsm,jcsm_fcsm,pnc\n";
  for (const auto& t : teams)
    out += detail::csv_line(std::vector<std::string>{
        t.team_id, std::to_string(t.p), std::to_string(t.c),
        detail::full_precision(t.cpp), detail::full_precision(t.jcsm),
        detail::full_precision(t.fcsm), detail::full_precision(t.cpp_jcsm),
        detail::full_precision(t.cpp_fcsm), detail::full_precision(t.jcsm_fcsm),
        detail::full_precision(t.pnc)});
  return out;
}

// ---------------------------------------------------------------------------
// Cross-method comparison

// Evaluations pooled by inter-peer agreement class. Evaluations whose
// classification is not computable (single-expert designs) form the
// "unclassified" pool; "all" always pools every evaluation.
struct ComparePool {
  std::string name;
  std::vector<std::string> evaluation_ids;
  CorrelationTable table;
  std::vector<SignDeviation> deviations;
};

inline std::vector<ComparePool> build_compare_pools(
    const DataBundle& bundle, const StatConfig& stat = {},
    std::string_view only_pool = "") {
  std::vector<ComparePool> pools;
  if (bundle.publications.empty()) return pools;
  const auto bib = indicators_by_team(bundle.publications, bundle.baselines);

  std::vector<TeamScores> all_scores;
  std::vector<std::string> classes;
  for (const auto& e : bundle.evaluations) {
    all_scores.push_back(aggregate_evaluation(e.matrix, e.scheme));
    try {
      classes.emplace_back(
          to_string(classify_agreement(e.matrix, stat).classification));
    } catch (const DataError&) {
      classes.emplace_back("unclassified");
    }
  }

  const auto add_pool = [&](const std::string& name) {
    if (!only_pool.empty() && only_pool != name) return;
    ComparePool pool;
    pool.name = name;
    std::vector<TeamScores> member_scores;
    for (std::size_t k = 0; k < all_scores.size(); ++k) {
      if (name != "all" && classes[k] != name) continue;
      pool.evaluation_ids.push_back(bundle.evaluations[k].matrix.evaluation_id());
      member_scores.push_back(all_scores[k]);
    }
    if (member_scores.empty()) return;
    pool.table = cross_method_table(member_scores, bib, name, stat);
    pool.deviations = sign_check(pool.table);
    pools.push_back(std::move(pool));
  };

  add_pool("all");
  for (const char* name : {"High", "Intermediate", "Low", "unclassified"})
    add_pool(name);
  return pools;
}

inline std::string compare_markdown(const ComparePool& pool) {
  std::string out = "### Pool: " + pool.name + " (";
  for (std::size_t k = 0; k < pool.evaluation_ids.size(); ++k) {
    if (k) out += ", ";
    out += pool.evaluation_ids[k];
  }
  out += "; " + std::to_string(pool.table.total_teams) + " team rows)\n\n";

  std::vector<std::string> header{"peer indicator"};
  for (const auto& c : pool.table.columns) header.push_back(c);
  detail::MdTable table(std::move(header));
  for (std::size_t i = 0; i < pool.table.rows.size(); ++i) {
    std::vector<std::string> row{pool.table.rows[i].id};
    for (std::size_t j = 0; j < pool.table.columns.size(); ++j)
      row.push_back(detail::md_cell(pool.table.cell(i, j)));
    table.add_row(std::move(row));
  }
  out += table.str();

  if (pool.deviations.empty()) {
    out += "\nNo significant sign deviations.\n";
  } else {
    out += "\nSignificant correlations with unexpected sign:\n\n";
    for (const auto& dev : pool.deviations)
      out += "- " + dev.row_id + " vs " + dev.column_id + ": r = " +
             detail::fixed_decimals(dev.r) + " (n = " + std::to_string(dev.n) +
             "), expected " + (dev.expected_negative ? "negative" : "positive") +
             "\n";
  }
  return out;
}

inline std::string compare_markdown(const DataBundle& bundle,
                                    const StatConfig& stat = {},
                                    std::string_view only_pool = "") {
  std::string out = "## Cross-method comparison\n\n";
  const auto pools = build_compare_pools(bundle, stat, only_pool);
  if (pools.empty()) {
    out += "No publication data; nothing to compare.\n";
    return out;
  }
  out += "Bold marks correlations significant at the configured level.\n\n";
  for (const auto& pool : pools) out += compare_markdown(pool) + "\n";
  return out;
}

inline std::string compare_csv(const CorrelationTable& table) {
  std::string out =
      "pooling,total_teams,row,row_label,row_kind,row_group,column,status,"
      "r,n,p_value,significant\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      const auto& cell = table.cell(i, j);
      std::vector<std::string> row{
          table.pooling,          std::to_string(table.total_teams),
          table.rows[i].id,       table.rows[i].label,
          to_string(table.rows[i].kind), table.rows[i].group,
          table.columns[j],       to_string(cell.status)};
      if (cell.status == CellStatus::computed) {
        row.push_back(detail::full_precision(cell.result.r));
        row.push_back(std::to_string(cell.result.n));
        row.push_back(detail::full_precision(cell.result.p_value));
        row.push_back(cell.result.significant ? "true" : "false");
      } else {
        row.insert(row.end(), {"", std::to_string(cell.n), "", ""});
      }
      out += detail::csv_line(row);
    }
  }
  return out;
}

inline std::string compare_csv(const DataBundle& bundle,
                               const StatConfig& stat = {},
                               std::string_view only_pool = "") {
  std::string out;
  for (const auto& pool : build_compare_pools(bundle, stat, only_pool)) {
    const std::string text = compare_csv(pool.table);
    if (out.empty()) {
      out = text;
    } else {
      // Drop the repeated header when concatenating pools.
      out += text.substr(text.find('\n') + 1);
    }
  }
  return out;
}

// Re-parse emitted comparison CSV; the round-trip counterpart of compare_csv.
inline std::vector<CorrelationTable> compare_tables_from_csv(
    const std::string& text) {
  std::vector<CorrelationTable> tables;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header = true;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string line =
        text.substr(pos, (end == std::string::npos ? text.size() : end) - pos);
    pos = (end == std::string::npos) ? text.size() : end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = detail::split_csv_fields("compare.csv", line_no, line);
    if (fields.size() != 12)
      throw DataError("compare.csv:" + std::to_string(line_no) +
                      ": expected 12 fields");

    if (tables.empty() || tables.back().pooling != fields[0]) {
      CorrelationTable table;
      table.pooling = fields[0];
      table.total_teams = static_cast<int>(detail::parse_int_field(
          "compare.csv", line_no, "total_teams", fields[1]));
      tables.push_back(std::move(table));
    }
    CorrelationTable& table = tables.back();

    std::size_t row_idx = table.rows.size();
    for (std::size_t k = 0; k < table.rows.size(); ++k)
      if (table.rows[k].id == fields[2]) row_idx = k;
    if (row_idx == table.rows.size()) {
      const auto kind = indicator_kind_from(fields[4]);
      if (!kind)
        throw DataError("compare.csv:" + std::to_string(line_no) +
                        ": unknown indicator kind '" + fields[4] + "'");
      table.rows.push_back({fields[2], fields[3], *kind, fields[5]});
    }
    std::size_t col_idx = table.columns.size();
    for (std::size_t k = 0; k < table.columns.size(); ++k)
      if (table.columns[k] == fields[6]) col_idx = k;
    if (col_idx == table.columns.size()) table.columns.push_back(fields[6]);

    MatrixCell cell;
    cell.n = static_cast<int>(
        detail::parse_int_field("compare.csv", line_no, "n", fields[9]));
    if (fields[7] == "computed") {
      cell.status = CellStatus::computed;
      cell.result.r = detail::parse_double_field("compare.csv", line_no, "r",
                                                 fields[8]);
      cell.result.n = cell.n;
      cell.result.p_value = detail::parse_double_field("compare.csv", line_no,
                                                       "p_value", fields[10]);
      cell.result.significant = fields[11] == "true";
    } else if (fields[7] == "undefined") {
      cell.status = CellStatus::undefined;
    } else if (fields[7] == "insufficient") {
      cell.status = CellStatus::insufficient;
    } else {
      throw DataError("compare.csv:" + std::to_string(line_no) +
                      ": unknown status '" + fields[7] + "'");
    }
    const std::size_t need = table.rows.size() * table.columns.size();
    if (table.cells.size() < need) table.cells.resize(need);
    table.cells[row_idx * table.columns.size() + col_idx] = cell;
  }
  return tables;
}

// ---------------------------------------------------------------------------
// Distributions and SVG rendering

inline std::string histogram_svg(const Histogram& hist, const std::string& title,
                                 const std::string& x_label) {
  const double width = 640.0, height = 400.0;
  const double left = 60.0, right = 20.0, top = 42.0, bottom = 52.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double max_f = 0.0;
  for (const double f : hist.frequencies) max_f = std::max(max_f, f);
  const double y_top = std::max(0.05, std::ceil(max_f * 20.0) / 20.0);

  const auto fx = [&](double x) { return detail::fixed_decimals(x, 2); };
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
      "viewBox=\"0 0 640 400\" role=\"img\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + detail::xml_escape(title) + "</text>\n";

  for (int tick = 0; tick <= 4; ++tick) {
    const double f = y_top * tick / 4.0;
    const double y = top + plot_h * (1.0 - f / y_top);
    svg += "<line x1=\"" + fx(left) + "\" y1=\"" + fx(y) + "\" x2=\"" +
           fx(width - right) + "\" y2=\"" + fx(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fx(left - 8.0) + "\" y=\"" + fx(y + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           detail::fixed_decimals(f, 2) + "</text>\n";
  }

  const std::size_t bins = hist.size();
  const double bar_w = plot_w / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double f = hist.frequencies[b];
    const double h = plot_h * f / y_top;
    const double x = left + bar_w * static_cast<double>(b);
    svg += "<rect x=\"" + fx(x + 1.0) + "\" y=\"" + fx(top + plot_h - h) +
           "\" width=\"" + fx(bar_w - 2.0) + "\" height=\"" + fx(h) +
           "\" fill=\"#4878a8\"><title>[" +
           detail::compact_number(hist.lower(b)) + ", " +
           detail::compact_number(hist.upper(b)) + "): " +
           detail::fixed_decimals(f, 4) + "</title></rect>\n";
  }

  const std::size_t label_step = bins > 12 ? (bins + 11) / 12 : 1;
  for (std::size_t b = 0; b < bins; b += label_step) {
    const double x = left + bar_w * static_cast<double>(b);
    svg += "<text x=\"" + fx(x) + "\" y=\"" + fx(top + plot_h + 16.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           detail::compact_number(hist.lower(b)) + "</text>\n";
  }
  svg += "<text x=\"" + fx(width - right) + "\" y=\"" + fx(top + plot_h + 16.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         detail::compact_number(hist.upper(bins - 1)) + "</text>\n";

  svg += "<line x1=\"" + fx(left) + "\" y1=\"" + fx(top + plot_h) + "\" x2=\"" +
         fx(width - right) + "\" y2=\"" + fx(top + plot_h) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fx(left) + "\" y1=\"" + fx(top) + "\" x2=\"" + fx(left) +
         "\" y2=\"" + fx(top + plot_h) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + fx(left + plot_w / 2.0) + "\" y=\"" +
         fx(height - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         detail::xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fx(top + plot_h / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 " + fx(top + plot_h / 2.0) +
         ")\">frequency</text>\n";
  svg += "</svg>\n";
  return svg;
}

inline std::string histogram_csv(const Histogram& hist) {
  std::string out = "bin_lower,bin_upper,count,frequency\n";
  for (std::size_t b = 0; b < hist.size(); ++b)
    out += detail::csv_line(std::vector<std::string>{
        detail::full_precision(hist.lower(b)),
        detail::full_precision(hist.upper(b)), std::to_string(hist.counts[b]),
        detail::full_precision(hist.frequencies[b])});
  return out;
}

inline std::string histogram_markdown(const Histogram& hist) {
  detail::MdTable table({"bin", "count", "frequency"});
  for (std::size_t b = 0; b < hist.size(); ++b)
    table.add_row({"[" + detail::compact_number(hist.lower(b)) + ", " +
                       detail::compact_number(hist.upper(b)) + ")",
                   std::to_string(hist.counts[b]),
                   detail::fixed_decimals(hist.frequencies[b], 3)});
  return table.str();
}

inline std::string scatter_svg(const ExtensionSplit& split,
                               const std::string& title) {
  const double width = 640.0, height = 480.0;
  const double left = 64.0, right = 24.0, top = 42.0, bottom = 56.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = split.x_mean - split.x_sd, x_hi = split.x_mean + split.x_sd;
  double y_lo = split.y_mean - split.y_sd, y_hi = split.y_mean + split.y_sd;
  for (const double v : split.x) {
    x_lo = std::min(x_lo, v);
    x_hi = std::max(x_hi, v);
  }
  for (const double v : split.y) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  const double x_pad = (x_hi - x_lo) * 0.08;
  const double y_pad = (y_hi - y_lo) * 0.08;
  x_lo -= x_pad;
  x_hi += x_pad;
  y_lo -= y_pad;
  y_hi += y_pad;

  const auto px = [&](double v) {
    return left + plot_w * (v - x_lo) / (x_hi - x_lo);
  };
  const auto py = [&](double v) {
    return top + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo));
  };
  const auto fx = [&](double v) { return detail::fixed_decimals(v, 2); };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
      "viewBox=\"0 0 640 480\" role=\"img\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + detail::xml_escape(title) + "</text>\n";

  const auto vline = [&](double v, const char* color, const char* dash) {
    svg += "<line x1=\"" + fx(px(v)) + "\" y1=\"" + fx(top) + "\" x2=\"" +
           fx(px(v)) + "\" y2=\"" + fx(top + plot_h) + "\" stroke=\"" + color +
           "\" stroke-width=\"1\" stroke-dasharray=\"" + dash + "\"/>\n";
  };
  const auto hline = [&](double v, const char* color, const char* dash) {
    svg += "<line x1=\"" + fx(left) + "\" y1=\"" + fx(py(v)) + "\" x2=\"" +
           fx(left + plot_w) + "\" y2=\"" + fx(py(v)) + "\" stroke=\"" + color +
           "\" stroke-width=\"1\" stroke-dasharray=\"" + dash + "\"/>\n";
  };
  vline(split.x_mean, "#888888", "none");
  vline(split.x_mean - split.x_sd, "#c0392b", "6 3");
  vline(split.x_mean + split.x_sd, "#888888", "6 3");
  hline(split.y_mean, "#888888", "none");
  hline(split.y_mean + split.y_sd, "#2471a3", "6 3");
  hline(split.y_mean - split.y_sd, "#888888", "6 3");

  for (std::size_t k = 0; k < split.teams.size(); ++k) {
    const char* fill = "#444444";
    switch (split.region[k]) {
      case ExtensionRegion::low_x: fill = "#c0392b"; break;
      case ExtensionRegion::high_y: fill = "#2471a3"; break;
      case ExtensionRegion::both: fill = "#8e44ad"; break;
      case ExtensionRegion::main: break;
    }
    svg += "<circle cx=\"" + fx(px(split.x[k])) + "\" cy=\"" +
           fx(py(split.y[k])) + "\" r=\"4\" fill=\"" + fill +
           "\"><title>" + detail::xml_escape(split.teams[k]) + " (" +
           detail::fixed_decimals(split.x[k]) + ", " +
           detail::fixed_decimals(split.y[k]) + ")</title></circle>\n";
  }

  for (int tick = 0; tick <= 4; ++tick) {
    const double vx = x_lo + (x_hi - x_lo) * tick / 4.0;
    svg += "<text x=\"" + fx(px(vx)) + "\" y=\"" + fx(top + plot_h + 16.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           detail::fixed_decimals(vx, 2) + "</text>\n";
    const double vy = y_lo + (y_hi - y_lo) * tick / 4.0;
    svg += "<text x=\"" + fx(left - 8.0) + "\" y=\"" + fx(py(vy) + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           detail::fixed_decimals(vy, 2) + "</text>\n";
  }
  svg += "<line x1=\"" + fx(left) + "\" y1=\"" + fx(top + plot_h) + "\" x2=\"" +
         fx(left + plot_w) + "\" y2=\"" + fx(top + plot_h) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fx(left) + "\" y1=\"" + fx(top) + "\" x2=\"" + fx(left) +
         "\" y2=\"" + fx(top + plot_h) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + fx(left + plot_w / 2.0) + "\" y=\"" + fx(height - 14.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         detail::xml_escape(split.x_id) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fx(top + plot_h / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 18 " + fx(top + plot_h / 2.0) + ")\">" +
         detail::xml_escape(split.y_id) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

inline std::string extensions_markdown(const ExtensionSplit& split) {
  std::string out;
  detail::MdTable table({"team", split.x_id, split.y_id, "region"});
  for (std::size_t k = 0; k < split.teams.size(); ++k)
    table.add_row({split.teams[k], detail::fixed_decimals(split.x[k]),
                   detail::fixed_decimals(split.y[k]),
                   to_string(split.region[k])});
  out += table.str();
  out += "\nMeans and SDs: " + split.x_id + " " +
         detail::fixed_decimals(split.x_mean) + " (SD " +
         detail::fixed_decimals(split.x_sd) + "), " + split.y_id + " " +
         detail::fixed_decimals(split.y_mean) + " (SD " +
         detail::fixed_decimals(split.y_sd) + ").\n";

  const auto overlap = extension_overlap_summary(split);
  out += "\nLow-" + split.x_id + " extension: " +
         std::to_string(overlap.low_x_members) + " teams, " +
         std::to_string(overlap.low_x_below_y_mean) + " below the " +
         split.y_id + " mean.\n";
  out += "High-" + split.y_id + " extension: " +
         std::to_string(overlap.high_y_members) + " teams, " +
         std::to_string(overlap.high_y_above_x_mean) + " above the " +
         split.x_id + " mean.\n";
  return out;
}

inline std::string extensions_csv(const ExtensionSplit& split) {
  std::string out = "team,x_id,x,y_id,y,region\n";
  for (std::size_t k = 0; k < split.teams.size(); ++k)
    out += detail::csv_line(std::vector<std::string>{
        split.teams[k], split.x_id, detail::full_precision(split.x[k]),
        split.y_id, detail::full_precision(split.y[k]),
        to_string(split.region[k])});
  return out;
}

// ---------------------------------------------------------------------------
// Distribution sections

// Pooled values feeding the distribution histograms: one set of aggregated
// final scores per evaluation, one set per citation ratio indicator.
struct DistributionSet {
  std::string source;  // "scores:<evaluation>" or a citation indicator id
  std::string axis_label;
  BinSpec bins;
  std::vector<double> values;
};

inline std::vector<DistributionSet> distribution_sets(const DataBundle& bundle) {
  std::vector<DistributionSet> out;
  for (const auto& e : bundle.evaluations) {
    DistributionSet set;
    set.source = "scores:" + e.matrix.evaluation_id();
    set.axis_label = "score";
    set.bins = scale_bins(e.matrix.scale());
    const auto scores = aggregate_evaluation(e.matrix, e.scheme);
    for (std::size_t t = 0; t < scores.teams().size(); ++t)
      for (std::size_t i = 0; i < scores.indicators().size(); ++i)
        if (const auto v = scores.value(t, i)) set.values.push_back(*v);
    out.push_back(std::move(set));
  }
  if (!bundle.publications.empty()) {
    const auto bib = indicators_by_team(bundle.publications, bundle.baselines);
    for (const std::string& id : bib_comparison_ids()) {
      DistributionSet set;
      set.source = id;
      set.axis_label = id;
      set.bins = id == "PNC" ? BinSpec{10.0, 0.0} : ratio_bins();
      for (const auto& t : bib)
        if (const auto v = bib_value(t, id)) set.values.push_back(*v);
      if (!set.values.empty()) out.push_back(std::move(set));
    }
  }
  return out;
}

inline std::string distribution_markdown(const DataBundle& bundle) {
  std::string out = "## Score distributions\n\n";
  for (const auto& set : distribution_sets(bundle)) {
    out += "### " + set.source + "\n\n";
    if (set.values.empty()) {
      out += "No values.\n\n";
      continue;
    }
    const auto hist = frequency_distribution(set.values, set.bins);
    out += histogram_markdown(hist) + "\n";
    out += histogram_svg(hist, "Distribution: " + set.source, set.axis_label) +
           "\n";
  }
  return out;
}

inline std::string distribution_csv(const DataBundle& bundle) {
  std::string out = "source,bin_lower,bin_upper,count,frequency\n";
  for (const auto& set : distribution_sets(bundle)) {
    if (set.values.empty()) continue;
    const auto hist = frequency_distribution(set.values, set.bins);
    for (std::size_t b = 0; b < hist.size(); ++b)
      out += detail::csv_line(std::vector<std::string>{
          set.source, detail::full_precision(hist.lower(b)),
          detail::full_precision(hist.upper(b)), std::to_string(hist.counts[b]),
          detail::full_precision(hist.frequencies[b])});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simulation rendering

inline std::string simulated_ratings_csv(const RatingMatrix& m) {
  std::string out = "evaluation,discipline,expert,team,indicator,score\n";
  for (std::size_t e = 0; e < m.experts().size(); ++e)
    for (std::size_t t = 0; t < m.teams().size(); ++t)
      for (std::size_t i = 0; i < m.indicators().size(); ++i) {
        const auto v = m.score(e, t, i);
        if (!v) continue;
        out += detail::csv_line(std::vector<std::string>{
            m.evaluation_id(), m.discipline(), m.experts()[e], m.teams()[t],
            m.indicators()[i].id, detail::full_precision(*v)});
      }
  return out;
}

inline std::string panel_vs_distinct_markdown(const PanelVsDistinctSummary& s) {
  std::string out = "## Panel vs distinct-expert assignment\n\n";
  detail::MdTable table({"trials", "comparable", "panel exceeds", "mean r (panel)",
                         "mean r (distinct)", "undefined cells (panel)",
                         "undefined cells (distinct)"});
  table.add_row({std::to_string(s.trials), std::to_string(s.comparable),
                 std::to_string(s.panel_exceeds),
                 s.mean_panel_r ? detail::fixed_decimals(*s.mean_panel_r) : "n/a",
                 s.mean_distinct_r ? detail::fixed_decimals(*s.mean_distinct_r)
                                   : "n/a",
                 std::to_string(s.panel_undefined_cells),
                 std::to_string(s.distinct_undefined_cells)});
  out += table.str();
  return out;
}

inline std::string panel_vs_distinct_csv(const PanelVsDistinctSummary& s) {
  std::string out =
      "trial,panel_mean_r,distinct_mean_r,panel_undefined,distinct_undefined\n";
  for (std::size_t k = 0; k < s.per_trial.size(); ++k) {
    const auto& t = s.per_trial[k];
    out += detail::csv_line(std::vector<std::string>{
        std::to_string(k),
        t.panel_mean_r ? detail::full_precision(*t.panel_mean_r) : "",
        t.distinct_mean_r ? detail::full_precision(*t.distinct_mean_r) : "",
        std::to_string(t.panel_undefined),
        std::to_string(t.distinct_undefined)});
  }
  return out;
}

inline std::string sweep_markdown(std::span<const SweepPoint> points) {
  std::string out = "## Agreement classification sweep\n\n";
  detail::MdTable table({"sigma", "High", "Intermediate", "Low", "unclassifiable"});
  for (const auto& p : points)
    table.add_row({detail::compact_number(p.sigma), std::to_string(p.high),
                   std::to_string(p.intermediate), std::to_string(p.low),
                   std::to_string(p.unclassifiable)});
  out += table.str();
  return out;
}

inline std::string sweep_csv(std::span<const SweepPoint> points) {
  std::string out = "sigma,high,intermediate,low,unclassifiable\n";
  for (const auto& p : points)
    out += detail::csv_line(std::vector<std::string>{
        detail::full_precision(p.sigma), std::to_string(p.high),
        std::to_string(p.intermediate), std::to_string(p.low),
        std::to_string(p.unclassifiable)});
  return out;
}

// ---------------------------------------------------------------------------
// Full report

// The whole pipeline over one bundle, as a single Markdown document with
// inline SVG figures. A pure function of the bundle and flags: repeated calls
// return identical bytes.
inline std::string full_report(const DataBundle& bundle,
                               const StatConfig& stat = {}) {
  std::string out = "# Evaluation reliability and citation analysis report\n\n";
  out += "Significance level: " + detail::compact_number(stat.alpha) +
         " (two-tailed). Bold marks significant correlations.\n\n";

  out += data_summary_markdown(bundle) + "\n";
  out += agreement_markdown(bundle, stat);
  out += habits_markdown(bundle, stat);
  out += aggregate_markdown(bundle);

  std::vector<TeamBibIndicators> bib;
  if (!bundle.publications.empty())
    bib = indicators_by_team(bundle.publications, bundle.baselines);
  out += biblio_markdown(bib) + "\n";
  out += compare_markdown(bundle, stat);

  out += distribution_markdown(bundle);

  if (!bib.empty()) {
    out += "## Extensions\n\n";
    for (const auto& e : bundle.evaluations) {
      const auto scores = aggregate_evaluation(e.matrix, e.scheme);
      std::size_t x_idx = scores.indicators().size();
      for (std::size_t i = 0; i < scores.indicators().size(); ++i)
        if (is_performance_indicator(scores.indicators()[i])) {
          x_idx = i;
          break;
        }
      if (x_idx == scores.indicators().size()) continue;
      const std::string x_id = scores.indicators()[x_idx].id;

      std::vector<std::string> teams;
      std::vector<double> xs, ys;
      for (std::size_t t = 0; t < scores.teams().size(); ++t) {
        const auto x = scores.value(t, x_idx);
        if (!x) continue;
        for (const auto& row : bib) {
          if (row.team_id != scores.teams()[t]) continue;
          teams.push_back(row.team_id);
          xs.push_back(*x);
          ys.push_back(row.cpp_fcsm);
        }
      }
      out += "### " + e.matrix.evaluation_id() + ": " + x_id +
             " vs CPP/FCSm\n\n";
      if (teams.size() < 3) {
        out += "Not enough teams with both values.\n\n";
        continue;
      }
      try {
        const auto split = extension_split(x_id, "CPP/FCSm", teams, xs, ys);
        out += extensions_markdown(split) + "\n";
        out += scatter_svg(split, e.matrix.evaluation_id() + ": " + x_id +
                                      " vs CPP/FCSm") + "\n";
      } catch (const DataError& err) {
        out += std::string("Extension split not available: ") + err.what() +
               "\n\n";
      }
    }
  }
  return out;
}

}  // namespace reva
