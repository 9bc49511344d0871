#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reva/aggregate.hpp"
#include "reva/bibliometrics.hpp"
#include "reva/model.hpp"
#include "reva/stats.hpp"

namespace reva {

// Peer indicators (rows) against citation indicators (columns), one
// correlation per cell over the teams present in both methods.
struct CorrelationTable {
  std::string pooling;  // discipline id or a pooled-group label
  std::vector<Indicator> rows;
  std::vector<std::string> columns;
  std::vector<MatrixCell> cells;  // row-major, rows.size() x columns.size()
  int total_teams = 0;

  const MatrixCell& cell(std::size_t row, std::size_t col) const {
    return cells[row * columns.size() + col];
  }
};

// Correlate final peer scores with citation indicators team by team. Several
// TeamScores sets pool their teams into one sample per cell; rows are the
// union of their performance indicators.
inline CorrelationTable cross_method_table(
    std::span<const TeamScores> peer, std::span<const TeamBibIndicators> bib,
    std::string pooling, const StatConfig& config = {},
    std::vector<std::string> columns = bib_comparison_ids()) {
  CorrelationTable table;
  table.pooling = std::move(pooling);
  table.columns = std::move(columns);

  for (const auto& scores : peer) {
    table.total_teams += static_cast<int>(scores.teams().size());
    for (const auto& ind : scores.indicators()) {
      bool seen = false;
      for (const auto& row : table.rows)
        if (row.id == ind.id) seen = true;
      if (!seen) table.rows.push_back(ind);
    }
  }

  std::map<std::string, const TeamBibIndicators*, std::less<>> by_team;
  for (const auto& t : bib) by_team[t.team_id] = &t;

  table.cells.assign(table.rows.size() * table.columns.size(), MatrixCell{});
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      std::vector<double> x;
      std::vector<double> y;
      for (const auto& scores : peer) {
        const auto ind = scores.indicator_index(table.rows[r].id);
        if (!ind) continue;
        for (std::size_t t = 0; t < scores.teams().size(); ++t) {
          const auto v = scores.value(t, *ind);
          if (!v) continue;
          const auto it = by_team.find(scores.teams()[t]);
          if (it == by_team.end()) continue;
          const auto b = bib_value(*it->second, table.columns[c]);
          if (!b) continue;
          x.push_back(*v);
          y.push_back(*b);
        }
      }
      MatrixCell cell;
      cell.n = static_cast<int>(x.size());
      if (cell.n >= 3) {
        if (const auto res = correlate(x, y, config)) {
          cell.status = CellStatus::computed;
          cell.result = *res;
        } else {
          cell.status = CellStatus::undefined;
        }
      }
      table.cells[r * table.columns.size() + c] = cell;
    }
  }
  return table;
}

// A significant cell whose sign contradicts the method expectation: the
// normalized citation ratios should correlate positively with peer scores,
// the uncitedness percentage negatively.
struct SignDeviation {
  std::string row_id;
  std::string column_id;
  double r = 0.0;
  int n = 0;
  bool expected_negative = false;
};

inline std::vector<SignDeviation> sign_check(const CorrelationTable& table) {
  std::vector<SignDeviation> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const MatrixCell& cell = table.cell(r, c);
      if (cell.status != CellStatus::computed || !cell.result.significant) continue;
      const bool expect_negative = bib_expected_negative(table.columns[c]);
      const bool wrong = expect_negative ? cell.result.r > 0.0 : cell.result.r < 0.0;
      if (wrong)
        out.push_back({table.rows[r].id, table.columns[c], cell.result.r,
                       cell.result.n, expect_negative});
    }
  }
  return out;
}

struct BinSpec {
  double width = 1.0;
  double origin = 0.0;
};

// Unit bins anchored at the scale minimum for peer scores.
inline BinSpec scale_bins(const RatingScale& scale) { return {scale.step, scale.min}; }

// Quarter-width bins from zero for the citation ratios.
inline BinSpec ratio_bins() { return {0.25, 0.0}; }

// Relative frequency histogram over [origin + k*width, origin + (k+1)*width)
// bins; the last bin also takes values landing exactly on its right edge.
struct Histogram {
  double width = 1.0;
  double origin = 0.0;
  long first_bin = 0;  // k of the lowest bin
  long total = 0;
  std::vector<long> counts;
  std::vector<double> frequencies;

  std::size_t size() const { return counts.size(); }
  double lower(std::size_t i) const {
    return origin + static_cast<double>(first_bin + static_cast<long>(i)) * width;
  }
  double upper(std::size_t i) const {
    return origin + static_cast<double>(first_bin + static_cast<long>(i) + 1) * width;
  }
};

inline Histogram frequency_distribution(std::span<const double> values, BinSpec spec) {
  if (values.empty()) throw DataError("no values to bin");
  if (!(spec.width > 0.0)) throw std::invalid_argument("bin width must be > 0");

  const auto bin_of = [&](double v) {
    return static_cast<long>(std::floor((v - spec.origin) / spec.width));
  };
  long lo = bin_of(values.front());
  long hi = lo;
  for (const double v : values) {
    const long k = bin_of(v);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }

  Histogram h;
  h.width = spec.width;
  h.origin = spec.origin;
  h.first_bin = lo;
  h.total = static_cast<long>(values.size());
  h.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const double v : values) {
    // clamp guards values sitting exactly on the top edge of the last bin
    const long k = std::min(bin_of(v), hi);
    ++h.counts[static_cast<std::size_t>(k - lo)];
  }
  h.frequencies.resize(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    h.frequencies[i] =
        static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
  return h;
}

enum class ExtensionRegion { main, low_x, high_y, both };

inline const char* to_string(ExtensionRegion r) {
  switch (r) {
    case ExtensionRegion::main: return "main";
    case ExtensionRegion::low_x: return "low-x";
    case ExtensionRegion::high_y: return "high-y";
    case ExtensionRegion::both: return "both";
  }
  return "?";
}

// Partition of teams by the one-standard-deviation lines: teams more than
// one SD below the x mean form the low-x extension, teams more than one SD
// above the y mean the high-y extension.
struct ExtensionSplit {
  std::string x_id;
  std::string y_id;
  double x_mean = 0.0;
  double x_sd = 0.0;
  double y_mean = 0.0;
  double y_sd = 0.0;
  std::vector<std::string> teams;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<ExtensionRegion> region;
};

namespace detail {

// Sample standard deviation, n-1 denominator.
inline double sample_sd(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace detail

inline ExtensionSplit extension_split(std::string x_id, std::string y_id,
                                      std::span<const std::string> teams,
                                      std::span<const double> x,
                                      std::span<const double> y) {
  if (teams.size() != x.size() || x.size() != y.size())
    throw std::invalid_argument("extension_split: input lengths differ");
  if (teams.size() < 3) throw DataError("extension split needs at least 3 teams");

  ExtensionSplit split;
  split.x_id = std::move(x_id);
  split.y_id = std::move(y_id);
  split.teams.assign(teams.begin(), teams.end());
  split.x.assign(x.begin(), x.end());
  split.y.assign(y.begin(), y.end());
  split.x_mean = detail::sorted_mean(split.x);
  split.y_mean = detail::sorted_mean(split.y);
  split.x_sd = detail::sample_sd(split.x, split.x_mean);
  split.y_sd = detail::sample_sd(split.y, split.y_mean);
  if (split.x_sd == 0.0 || split.y_sd == 0.0)
    throw DataError("extension split undefined: zero standard deviation on an axis");

  split.region.reserve(teams.size());
  for (std::size_t i = 0; i < teams.size(); ++i) {
    const bool low_x = split.x[i] < split.x_mean - split.x_sd;
    const bool high_y = split.y[i] > split.y_mean + split.y_sd;
    if (low_x && high_y)
      split.region.push_back(ExtensionRegion::both);
    else if (low_x)
      split.region.push_back(ExtensionRegion::low_x);
    else if (high_y)
      split.region.push_back(ExtensionRegion::high_y);
    else
      split.region.push_back(ExtensionRegion::main);
  }
  return split;
}

// How extension teams sit relative to the other axis's mean. Membership
// counts teams classified "both" in each extension.
struct ExtensionOverlap {
  int low_x_members = 0;
  int low_x_below_y_mean = 0;
  int low_x_above_y_mean = 0;
  int high_y_members = 0;
  int high_y_above_x_mean = 0;
  int high_y_below_x_mean = 0;
};

inline ExtensionOverlap extension_overlap_summary(const ExtensionSplit& split) {
  ExtensionOverlap out;
  for (std::size_t i = 0; i < split.region.size(); ++i) {
    const ExtensionRegion r = split.region[i];
    if (r == ExtensionRegion::low_x || r == ExtensionRegion::both) {
      ++out.low_x_members;
      if (split.y[i] < split.y_mean)
        ++out.low_x_below_y_mean;
      else
        ++out.low_x_above_y_mean;
    }
    if (r == ExtensionRegion::high_y || r == ExtensionRegion::both) {
      ++out.high_y_members;
      if (split.x[i] > split.x_mean)
        ++out.high_y_above_x_mean;
      else
        ++out.high_y_below_x_mean;
    }
  }
  return out;
}

}  // namespace reva
