#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "reva/aggregate.hpp"
#include "reva/agreement.hpp"
#include "reva/model.hpp"
#include "reva/stats.hpp"

namespace reva {

enum class Assignment { full_panel, distinct_per_team, partial_panel };

inline const char* to_string(Assignment a) {
  switch (a) {
    case Assignment::full_panel: return "full-panel";
    case Assignment::distinct_per_team: return "distinct-per-team";
    case Assignment::partial_panel: return "partial-panel";
  }
  return "?";
}

inline std::optional<Assignment> assignment_from(std::string_view s) {
  if (s == "full-panel") return Assignment::full_panel;
  if (s == "distinct-per-team") return Assignment::distinct_per_team;
  if (s == "partial-panel") return Assignment::partial_panel;
  return std::nullopt;
}

// How each expert converts opinions into ratings: a personal offset and gain
// per indicator, applied before rounding to the scale step and clamping to
// the scale bounds. An empty profile means identity habits everywhere.
struct HabitProfile {
  std::size_t experts = 0;
  std::size_t indicators = 0;
  std::vector<double> offsets;  // experts x indicators, row-major
  std::vector<double> gains;

  static HabitProfile identity(std::size_t experts, std::size_t indicators) {
    HabitProfile p;
    p.experts = experts;
    p.indicators = indicators;
    p.offsets.assign(experts * indicators, 0.0);
    p.gains.assign(experts * indicators, 1.0);
    return p;
  }

  bool empty() const { return experts == 0; }
  double offset(std::size_t e, std::size_t i) const { return offsets[e * indicators + i]; }
  double gain(std::size_t e, std::size_t i) const { return gains[e * indicators + i]; }
  void set(std::size_t e, std::size_t i, double offset_v, double gain_v) {
    offsets[e * indicators + i] = offset_v;
    gains[e * indicators + i] = gain_v;
  }
};

// Habit ranges sampled per (expert, indicator) from the simulation seed;
// the way experiments draw fresh diverging habits each trial.
struct HabitRanges {
  double offset_min = 0.0;
  double offset_max = 0.0;
  double gain_min = 1.0;
  double gain_max = 1.0;
};

struct SimConfig {
  int teams = 0;
  int experts = 0;
  std::vector<Indicator> indicators;
  RatingScale scale = RatingScale::numeric(1, 10);
  std::vector<double> quality;  // teams x indicators, row-major by team
  double sigma = 0.0;           // opinion noise SD
  std::variant<HabitProfile, HabitRanges> habits = HabitProfile{};
  Assignment assignment = Assignment::full_panel;
  double coverage = 1.0;  // partial panel: probability an expert reviews a team
  std::uint64_t seed = 0;

  double quality_at(std::size_t team, std::size_t indicator) const {
    return quality[team * indicators.size() + indicator];
  }
};

// Spread one per-team quality value across all indicators.
inline std::vector<double> quality_per_team(std::span<const double> per_team,
                                            std::size_t indicators) {
  std::vector<double> out;
  out.reserve(per_team.size() * indicators);
  for (const double q : per_team)
    for (std::size_t i = 0; i < indicators; ++i) out.push_back(q);
  return out;
}

inline void validate_sim_config(const SimConfig& c) {
  if (c.teams < 1 || c.experts < 1)
    throw std::invalid_argument("simulation needs at least one team and one expert");
  if (c.indicators.empty())
    throw std::invalid_argument("simulation needs at least one indicator");
  if (c.quality.size() != static_cast<std::size_t>(c.teams) * c.indicators.size())
    throw std::invalid_argument("quality must hold teams x indicators values");
  if (!(c.sigma >= 0.0))
    throw std::invalid_argument("opinion noise SD must be >= 0");
  if (c.assignment == Assignment::distinct_per_team && c.experts < c.teams)
    throw std::invalid_argument(
        "distinct-per-team assignment needs at least as many experts as teams");
  if (c.assignment == Assignment::partial_panel &&
      !(c.coverage > 0.0 && c.coverage <= 1.0))
    throw std::invalid_argument("coverage probability must be in (0, 1]");
  if (const auto* profile = std::get_if<HabitProfile>(&c.habits)) {
    if (!profile->empty()) {
      if (profile->experts != static_cast<std::size_t>(c.experts) ||
          profile->indicators != c.indicators.size())
        throw std::invalid_argument("habit profile dimensions do not match config");
      for (const double g : profile->gains)
        if (!(g > 0.0)) throw std::invalid_argument("habit gains must be > 0");
    }
  } else {
    const auto& ranges = std::get<HabitRanges>(c.habits);
    if (!(ranges.gain_min > 0.0) || ranges.gain_max < ranges.gain_min ||
        ranges.offset_max < ranges.offset_min)
      throw std::invalid_argument("invalid habit ranges");
  }
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream: every random quantity is keyed by what it is for,
// never by draw order, so simulated matrices are identical no matter how
// cells are enumerated.
inline std::uint64_t chain(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ v);
}

constexpr std::uint64_t kTagOpinion = 0x6f70;
constexpr std::uint64_t kTagHabitOffset = 0x6841;
constexpr std::uint64_t kTagHabitGain = 0x6747;
constexpr std::uint64_t kTagAssignment = 0x6173;
constexpr std::uint64_t kTagTrial = 0x7472;

// Uniform on the open interval (0, 1).
inline double unit_open(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

inline double key_uniform(std::uint64_t key, double lo, double hi) {
  return lo + unit_open(splitmix64(key)) * (hi - lo);
}

// Standard normal via Box-Muller from two key-derived uniforms.
inline double key_gaussian(std::uint64_t key) {
  const double u1 = unit_open(splitmix64(key ^ 0x5555555555555555ULL));
  const double u2 = unit_open(splitmix64(key ^ 0xaaaaaaaaaaaaaaaaULL));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

// Round to the nearest scale step, ties half away from zero, then clamp.
// The step lattice is anchored at the scale minimum, so the tie rule is
// applied to the candidate values themselves.
inline double snap_to_scale(const RatingScale& s, double v) {
  const double t = (v - s.min) / s.step;
  double k = std::floor(t);
  const double frac = t - k;
  if (frac > 0.5) {
    k += 1.0;
  } else if (frac == 0.5) {
    const double lo = s.min + k * s.step;
    const double hi = lo + s.step;
    if (std::fabs(hi) >= std::fabs(lo)) k += 1.0;
  }
  return std::clamp(s.min + k * s.step, s.min, s.max);
}

inline HabitProfile resolve_habits(const SimConfig& c) {
  if (const auto* profile = std::get_if<HabitProfile>(&c.habits)) {
    if (profile->empty())
      return HabitProfile::identity(static_cast<std::size_t>(c.experts),
                                    c.indicators.size());
    return *profile;
  }
  const auto& ranges = std::get<HabitRanges>(c.habits);
  auto profile = HabitProfile::identity(static_cast<std::size_t>(c.experts),
                                        c.indicators.size());
  for (std::size_t e = 0; e < profile.experts; ++e) {
    for (std::size_t i = 0; i < profile.indicators; ++i) {
      const std::uint64_t off_key = chain(chain(chain(c.seed, kTagHabitOffset), e), i);
      const std::uint64_t gain_key = chain(chain(chain(c.seed, kTagHabitGain), e), i);
      profile.set(e, i, key_uniform(off_key, ranges.offset_min, ranges.offset_max),
                  key_uniform(gain_key, ranges.gain_min, ranges.gain_max));
    }
  }
  return profile;
}

// Seed-keyed Fisher-Yates permutation of expert indices; team t is reviewed
// by permutation[t] alone.
inline std::vector<std::size_t> distinct_assignment(const SimConfig& c) {
  std::vector<std::size_t> perm(static_cast<std::size_t>(c.experts));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i) {
    const std::uint64_t key = chain(chain(c.seed, kTagAssignment), i);
    const std::size_t j = static_cast<std::size_t>(splitmix64(key) % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

inline bool covers(const SimConfig& c, std::size_t expert, std::size_t team) {
  const std::uint64_t key = chain(chain(chain(c.seed, kTagAssignment), expert), team);
  return unit_open(splitmix64(key)) < c.coverage;
}

}  // namespace detail

// Generate one evaluation: each assigned expert forms a noisy opinion of the
// true quality and converts it through a personal habit. Identical seed and
// config give a bit-identical matrix regardless of evaluation order.
inline RatingMatrix simulate_evaluation(const SimConfig& config) {
  validate_sim_config(config);

  std::vector<std::string> teams;
  std::vector<std::string> experts;
  for (int t = 0; t < config.teams; ++t) teams.push_back("t" + std::to_string(t + 1));
  for (int e = 0; e < config.experts; ++e)
    experts.push_back("e" + std::to_string(e + 1));

  RatingMatrix m("sim", "simulated", config.scale, teams, experts, config.indicators);
  const HabitProfile habits = detail::resolve_habits(config);
  std::vector<std::size_t> expert_of_team;
  if (config.assignment == Assignment::distinct_per_team)
    expert_of_team = detail::distinct_assignment(config);

  for (std::size_t e = 0; e < static_cast<std::size_t>(config.experts); ++e) {
    for (std::size_t t = 0; t < static_cast<std::size_t>(config.teams); ++t) {
      bool assigned = true;
      if (config.assignment == Assignment::distinct_per_team)
        assigned = expert_of_team[t] == e;
      else if (config.assignment == Assignment::partial_panel)
        assigned = detail::covers(config, e, t);
      if (!assigned) continue;

      for (std::size_t i = 0; i < config.indicators.size(); ++i) {
        if (!is_performance_indicator(config.indicators[i])) continue;
        const std::uint64_t key = detail::chain(
            detail::chain(detail::chain(detail::chain(config.seed, detail::kTagOpinion), e), t),
            i);
        const double opinion =
            config.quality_at(t, i) + config.sigma * detail::key_gaussian(key);
        const double rating =
            detail::snap_to_scale(config.scale,
                                  habits.offset(e, i) + habits.gain(e, i) * opinion);
        m.set_score(e, t, i, rating);
      }
    }
  }
  return m;
}

// Seed for trial k, stable under changes of the trial count.
inline std::uint64_t trial_seed(std::uint64_t master_seed, int trial) {
  return detail::chain(detail::chain(master_seed, detail::kTagTrial),
                       static_cast<std::uint64_t>(trial));
}

namespace detail {

// Mean r over the computed upper-triangle cells of an indicator matrix,
// counting undefined cells separately.
struct MatrixMeanR {
  std::optional<double> mean_r;
  int undefined = 0;
  int insufficient = 0;
};

inline MatrixMeanR matrix_mean_r(const IndicatorMatrix& matrix) {
  MatrixMeanR out;
  std::vector<double> rs;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.size(); ++j) {
      const MatrixCell& cell = matrix.cell(i, j);
      switch (cell.status) {
        case CellStatus::computed: rs.push_back(cell.result.r); break;
        case CellStatus::undefined: ++out.undefined; break;
        case CellStatus::insufficient: ++out.insufficient; break;
      }
    }
  }
  if (!rs.empty()) out.mean_r = mean_over_values(rs);
  return out;
}

}  // namespace detail

struct PairedTrial {
  std::optional<double> panel_mean_r;
  std::optional<double> distinct_mean_r;
  int panel_undefined = 0;
  int distinct_undefined = 0;
};

struct PanelVsDistinctSummary {
  int trials = 0;
  int comparable = 0;     // trials where both means are defined
  int panel_exceeds = 0;  // comparable trials with panel mean r > distinct mean r
  std::optional<double> mean_panel_r;
  std::optional<double> mean_distinct_r;
  long panel_undefined_cells = 0;
  long distinct_undefined_cells = 0;
  std::vector<PairedTrial> per_trial;
};

// Paired comparison of the two assignment schemes: per trial the same seed
// drives opinions and habits, only the assignment differs. Under diverging
// habits a shared panel keeps inter-indicator correlations high while
// distinct experts per team let them collapse.
inline PanelVsDistinctSummary experiment_panel_vs_distinct(const SimConfig& config,
                                                           int trials,
                                                           const StatConfig& stat = {}) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  validate_sim_config(config);
  if (config.experts < config.teams)
    throw std::invalid_argument(
        "distinct-per-team assignment needs at least as many experts as teams");

  PanelVsDistinctSummary summary;
  summary.trials = trials;
  std::vector<double> panel_means;
  std::vector<double> distinct_means;
  for (int k = 0; k < trials; ++k) {
    SimConfig panel_cfg = config;
    panel_cfg.assignment = Assignment::full_panel;
    panel_cfg.seed = trial_seed(config.seed, k);
    SimConfig distinct_cfg = panel_cfg;
    distinct_cfg.assignment = Assignment::distinct_per_team;

    PairedTrial trial;
    const auto panel_scores =
        aggregate_evaluation(simulate_evaluation(panel_cfg), AggregationScheme::plain);
    const auto panel_summary =
        detail::matrix_mean_r(inter_indicator_correlations(panel_scores, stat));
    trial.panel_mean_r = panel_summary.mean_r;
    trial.panel_undefined = panel_summary.undefined;

    const auto distinct_scores = aggregate_evaluation(
        simulate_evaluation(distinct_cfg), AggregationScheme::plain);
    const auto distinct_summary =
        detail::matrix_mean_r(inter_indicator_correlations(distinct_scores, stat));
    trial.distinct_mean_r = distinct_summary.mean_r;
    trial.distinct_undefined = distinct_summary.undefined;

    summary.panel_undefined_cells += trial.panel_undefined;
    summary.distinct_undefined_cells += trial.distinct_undefined;
    if (trial.panel_mean_r) panel_means.push_back(*trial.panel_mean_r);
    if (trial.distinct_mean_r) distinct_means.push_back(*trial.distinct_mean_r);
    if (trial.panel_mean_r && trial.distinct_mean_r) {
      ++summary.comparable;
      if (*trial.panel_mean_r > *trial.distinct_mean_r) ++summary.panel_exceeds;
    }
    summary.per_trial.push_back(trial);
  }
  if (!panel_means.empty()) summary.mean_panel_r = mean_over_values(panel_means);
  if (!distinct_means.empty())
    summary.mean_distinct_r = mean_over_values(distinct_means);
  return summary;
}

struct SweepPoint {
  double sigma = 0.0;
  int high = 0;
  int intermediate = 0;
  int low = 0;
  int unclassifiable = 0;
};

// Classification frequencies as a function of opinion noise, trial-paired
// across sigma values.
inline std::vector<SweepPoint> experiment_agreement_sweep(const SimConfig& config,
                                                          std::span<const double> sigmas,
                                                          int trials,
                                                          const StatConfig& stat = {}) {
  if (config.assignment != Assignment::full_panel)
    throw std::invalid_argument("agreement sweep requires a full panel");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  validate_sim_config(config);

  std::vector<SweepPoint> out;
  for (const double sigma : sigmas) {
    SweepPoint point;
    point.sigma = sigma;
    for (int k = 0; k < trials; ++k) {
      SimConfig cfg = config;
      cfg.sigma = sigma;
      cfg.seed = trial_seed(config.seed, k);
      const auto matrix = simulate_evaluation(cfg);
      try {
        switch (classify_agreement(matrix, stat).classification) {
          case AgreementClass::high: ++point.high; break;
          case AgreementClass::intermediate: ++point.intermediate; break;
          case AgreementClass::low: ++point.low; break;
        }
      } catch (const DataError&) {
        ++point.unclassifiable;
      }
    }
    out.push_back(point);
  }
  return out;
}

}  // namespace reva
