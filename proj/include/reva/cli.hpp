#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reva/report.hpp"

namespace reva {

namespace detail {

inline void write_output_file(const std::filesystem::path& path,
                              const std::string& text, std::ostream& out) {
  const auto parent = path.parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec)
      throw DataError("cannot create output directory '" + parent.string() +
                      "': " + ec.message());
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path.string() + "'");
  file << text;
  file.close();
  if (!file) throw DataError("write failed for '" + path.string() + "'");
  out << "wrote: " << path.generic_string() << "\n";
}

}  // namespace detail

// Pooled scatter input for the extensions command: the aggregated scores of
// one peer indicator (gathered from every evaluation that carries it) against
// one citation indicator, joined by team id.
inline ExtensionSplit gather_extension_split(const DataBundle& bundle,
                                             const std::string& x_id,
                                             const std::string& y_id) {
  if (bundle.publications.empty())
    throw DataError("no publication data; extensions need citation indicators");
  const auto bib = indicators_by_team(bundle.publications, bundle.baselines);

  bool y_known = false;
  for (const auto& id : bib_all_ids())
    if (id == y_id) y_known = true;
  if (!y_known) throw DataError("unknown citation indicator '" + y_id + "'");

  std::vector<std::string> teams;
  std::vector<double> xs;
  std::vector<double> ys;
  bool x_seen = false;
  for (const auto& e : bundle.evaluations) {
    const auto scores = aggregate_evaluation(e.matrix, e.scheme);
    const auto x_idx = scores.indicator_index(x_id);
    if (!x_idx) continue;
    x_seen = true;
    for (std::size_t t = 0; t < scores.teams().size(); ++t) {
      const auto x = scores.value(t, *x_idx);
      if (!x) continue;
      for (const auto& row : bib) {
        if (row.team_id != scores.teams()[t]) continue;
        const auto y = bib_value(row, y_id);
        if (!y) continue;
        teams.push_back(row.team_id);
        xs.push_back(*x);
        ys.push_back(*y);
      }
    }
  }
  if (!x_seen)
    throw DataError("no evaluation carries peer indicator '" + x_id + "'");
  return extension_split(x_id, y_id, teams, xs, ys);
}

namespace detail {

struct CliState {
  // global flags
  double alpha = 0.05;
  std::string out_dir = ".";
  std::string format = "md";
  // subcommand arguments
  std::string bundle_dir;
  std::string scheme_name;
  std::string pool;
  std::string x_id;
  std::string y_id = "CPP/FCSm";
  std::string scenario_path;
  std::optional<long> trials;
  std::optional<std::uint64_t> seed;

  StatConfig stat() const { return {alpha, Tail::two_sided}; }
  std::filesystem::path out_path(const std::string& stem,
                                 const char* ext) const {
    return std::filesystem::path(out_dir) / (stem + std::string(".") + ext);
  }
  std::filesystem::path table_path(const std::string& stem) const {
    return out_path(stem, format == "csv" ? "csv" : "md");
  }
};

inline void run_validate(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  std::size_t errors = 0;
  for (const auto& e : bundle.evaluations) {
    errors += validate_matrix(e.matrix).size();
    out << e.matrix.evaluation_id() << ": " << e.matrix.teams().size()
        << " teams, " << e.matrix.experts().size() << " experts, "
        << e.matrix.indicators().size() << " indicators ("
        << to_string(e.scheme) << ")\n";
  }
  out << bundle.evaluations.size() << " evaluations, "
      << bundle.publications.size() << " publications, " << errors
      << " errors\n";
}

inline void run_aggregate(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  std::optional<AggregationScheme> scheme;
  if (!s.scheme_name.empty()) scheme = aggregation_scheme_from(s.scheme_name);
  // Render first so a scheme override that an evaluation cannot satisfy
  // fails before any per-evaluation status is printed.
  const std::string text = s.format == "csv" ? aggregate_csv(bundle, scheme)
                                             : aggregate_markdown(bundle, scheme);
  for (const auto& e : bundle.evaluations)
    out << e.matrix.evaluation_id() << ": "
        << to_string(scheme.value_or(e.scheme)) << " aggregation over "
        << e.matrix.teams().size() << " teams\n";
  write_output_file(s.table_path("aggregate"), text, out);
}

inline void run_agreement(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  for (const auto& e : bundle.evaluations) {
    try {
      const auto report = classify_agreement(e.matrix, s.stat());
      for (const auto& ind : report.indicators) {
        if (!ind.averaged) continue;
        out << e.matrix.evaluation_id() << " " << ind.indicator_id
            << ": mean r = " << fixed_decimals(ind.averaged->r)
            << " (n = " << ind.averaged->n << ", p = "
            << fixed_decimals(ind.averaged->p_value, 3)
            << (ind.averaged->significant ? ", significant)" : ")") << "\n";
      }
      out << e.matrix.evaluation_id() << ": "
          << to_string(report.classification) << " inter-peer agreement\n";
    } catch (const DataError& err) {
      out << err.what() << "\n";
    }
  }
  const std::string text = s.format == "csv" ? agreement_csv(bundle, s.stat())
                                             : agreement_markdown(bundle, s.stat());
  write_output_file(s.table_path("agreement"), text, out);
}

inline void run_habits(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  for (const auto& e : bundle.evaluations) {
    const auto scores = aggregate_evaluation(e.matrix, e.scheme);
    const auto report = habit_report(scores, s.stat());
    out << e.matrix.evaluation_id() << ": " << report.warnings.size()
        << " habit warnings\n";
    for (const auto& w : report.warnings)
      out << "  " << w.indicator_a << " vs " << w.indicator_b << ": r = "
          << fixed_decimals(w.r) << (w.negative ? " (negative)" : "")
          << ", critical r = " << fixed_decimals(w.critical_value) << "\n";
  }
  const std::string text = s.format == "csv" ? habits_csv(bundle, s.stat())
                                             : habits_markdown(bundle, s.stat());
  write_output_file(s.table_path("habits"), text, out);
}

inline void run_biblio(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  std::vector<TeamBibIndicators> bib;
  if (!bundle.publications.empty())
    bib = indicators_by_team(bundle.publications, bundle.baselines);
  out << bib.size() << " teams with publication data\n";
  const std::string text =
      s.format == "csv" ? biblio_csv(bib) : biblio_markdown(bib);
  write_output_file(s.table_path("biblio"), text, out);
}

inline void run_compare(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  if (bundle.publications.empty())
    throw DataError("no publication data; nothing to compare");
  const auto pools = build_compare_pools(bundle, s.stat(), s.pool);
  if (pools.empty())
    throw DataError("pool '" + s.pool + "' matches no evaluation");
  for (const auto& pool : pools) {
    out << "pool " << pool.name << ": " << pool.table.total_teams
        << " team rows over " << pool.evaluation_ids.size()
        << " evaluations\n";
    for (const auto& dev : pool.deviations)
      out << "  sign deviation: " << dev.row_id << " vs " << dev.column_id
          << " (r = " << fixed_decimals(dev.r) << ")\n";
  }
  const std::string text = s.format == "csv"
                               ? compare_csv(bundle, s.stat(), s.pool)
                               : compare_markdown(bundle, s.stat(), s.pool);
  write_output_file(s.table_path("compare"), text, out);
}

inline void run_distribution(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  for (const auto& set : distribution_sets(bundle))
    out << set.source << ": " << set.values.size() << " values\n";
  const std::string text = s.format == "csv" ? distribution_csv(bundle)
                                             : distribution_markdown(bundle);
  write_output_file(s.table_path("distribution"), text, out);
}

inline void run_extensions(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  const auto split = gather_extension_split(bundle, s.x_id, s.y_id);
  const auto overlap = extension_overlap_summary(split);
  out << "low-" << split.x_id << " extension: " << overlap.low_x_members
      << " teams\n";
  out << "high-" << split.y_id << " extension: " << overlap.high_y_members
      << " teams\n";
  const std::string text =
      s.format == "csv" ? extensions_csv(split) : extensions_markdown(split);
  write_output_file(s.table_path("extensions"), text, out);
  write_output_file(s.out_path("extensions", "svg"),
                    scatter_svg(split, split.x_id + " vs " + split.y_id), out);
}

inline void run_simulate(const CliState& s, std::ostream& out) {
  Scenario scenario = load_scenario(s.scenario_path);
  if (s.trials) scenario.trials = static_cast<int>(*s.trials);
  if (s.seed) scenario.config.seed = *s.seed;

  if (scenario.experiment.empty()) {
    const auto matrix = simulate_evaluation(scenario.config);
    out << "simulated evaluation: " << matrix.teams().size() << " teams, "
        << matrix.experts().size() << " experts, seed "
        << scenario.config.seed << "\n";
    write_output_file(s.out_path("simulated_ratings", "csv"),
                      simulated_ratings_csv(matrix), out);
    return;
  }
  if (scenario.experiment == "panel-vs-distinct") {
    const auto summary =
        experiment_panel_vs_distinct(scenario.config, scenario.trials, s.stat());
    out << "panel exceeds distinct in " << summary.panel_exceeds << " of "
        << summary.comparable << " comparable trials (" << summary.trials
        << " total, seed " << scenario.config.seed << ")\n";
    const std::string text = s.format == "csv"
                                 ? panel_vs_distinct_csv(summary)
                                 : panel_vs_distinct_markdown(summary);
    write_output_file(s.table_path("panel_vs_distinct"), text, out);
    return;
  }
  // load_scenario admits exactly the three experiment names.
  const auto points = experiment_agreement_sweep(
      scenario.config, scenario.sigma_grid, scenario.trials, s.stat());
  for (const auto& p : points)
    out << "sigma " << compact_number(p.sigma) << ": High " << p.high
        << ", Intermediate " << p.intermediate << ", Low " << p.low
        << ", unclassifiable " << p.unclassifiable << "\n";
  const std::string text =
      s.format == "csv" ? sweep_csv(points) : sweep_markdown(points);
  write_output_file(s.table_path("sweep"), text, out);
}

inline void run_report(const CliState& s, std::ostream& out) {
  const DataBundle bundle = load_bundle(s.bundle_dir);
  write_output_file(s.out_path("report", "md"),
                    full_report(bundle, s.stat()), out);
}

}  // namespace detail

// Entry point behind the command line tool. Returns the process exit code:
// 0 on success, 1 on usage errors, 2 on data errors. `args` holds the
// arguments without the program name.
inline int run_command(std::vector<std::string> args,
                       std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  detail::CliState state;

  CLI::App app{"peer evaluation reliability and citation analysis toolkit"};
  app.name("reva");
  app.require_subcommand(1);
  app.add_option("--alpha", state.alpha,
                 "significance level for correlation tests")
      ->check(CLI::Range(1e-9, 0.999999))
      ->capture_default_str();
  app.add_option("--out", state.out_dir, "directory for emitted files")
      ->capture_default_str();
  app.add_option("--format", state.format, "table file format")
      ->check(CLI::IsMember({"md", "csv"}))
      ->capture_default_str();

  const auto add_bundle_arg = [&state](CLI::App* sub) {
    sub->add_option("bundle", state.bundle_dir,
                    "path to a data bundle directory")
        ->required();
    sub->fallthrough();
    return sub;
  };

  add_bundle_arg(app.add_subcommand(
      "validate", "load a bundle and report integrity problems"));
  auto* aggregate = add_bundle_arg(app.add_subcommand(
      "aggregate", "compute final team scores per indicator"));
  aggregate->add_option("--scheme", state.scheme_name,
                        "override the aggregation scheme")
      ->check(CLI::IsMember({"plain", "weighted", "consensus"}));
  add_bundle_arg(app.add_subcommand(
      "agreement", "inter-peer correlations and agreement classes"));
  add_bundle_arg(app.add_subcommand(
      "habits", "inter-indicator correlations and habit warnings"));
  add_bundle_arg(app.add_subcommand(
      "biblio", "citation indicators per team"));
  auto* compare = add_bundle_arg(app.add_subcommand(
      "compare", "correlate peer scores with citation indicators"));
  compare->add_option("--pool", state.pool,
                      "restrict to one agreement pool (all, High, "
                      "Intermediate, Low, unclassified)");
  add_bundle_arg(app.add_subcommand(
      "distribution", "frequency distributions of scores and ratios"));
  auto* extensions = add_bundle_arg(app.add_subcommand(
      "extensions", "teams outside the one-standard-deviation band"));
  extensions->add_option("--x", state.x_id, "peer indicator id for the x axis")
      ->required();
  extensions->add_option("--y", state.y_id, "citation indicator id for the y axis")
      ->capture_default_str();
  auto* simulate = app.add_subcommand(
      "simulate", "run a simulation scenario");
  simulate->add_option("--scenario", state.scenario_path,
                       "path to a scenario json file")
      ->required();
  simulate->add_option("--trials", state.trials, "override the trial count")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", state.seed, "override the master seed");
  simulate->fallthrough();
  add_bundle_arg(app.add_subcommand(
      "report", "full Markdown report with embedded figures"));

  try {
    // CLI11's vector overload consumes arguments from the back.
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto parsed = app.get_subcommands();
    const std::string name = parsed.front()->get_name();
    if (name == "validate") detail::run_validate(state, out);
    else if (name == "aggregate") detail::run_aggregate(state, out);
    else if (name == "agreement") detail::run_agreement(state, out);
    else if (name == "habits") detail::run_habits(state, out);
    else if (name == "biblio") detail::run_biblio(state, out);
    else if (name == "compare") detail::run_compare(state, out);
    else if (name == "distribution") detail::run_distribution(state, out);
    else if (name == "extensions") detail::run_extensions(state, out);
    else if (name == "simulate") detail::run_simulate(state, out);
    else detail::run_report(state, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

inline int run_command(int argc, const char* const argv[]) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(std::move(args));
}

}  // namespace reva
