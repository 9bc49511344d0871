#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace reva {

// Tail of the significance test applied to correlation coefficients.
// Reported significance defaults to the two-sided test.
enum class Tail { two_sided, one_sided };

struct StatConfig {
  double alpha = 0.05;
  Tail tail = Tail::two_sided;
};

struct CorrelationResult {
  double r = 0.0;
  int n = 0;            // number of paired observations (teams)
  double p_value = 1.0;
  bool significant = false;  // significant <=> p_value < alpha
};

// Outcome of one correlation-table cell. Undefined (zero variance) and
// insufficient (< 3 paired observations) cells stay marked as such; they are
// never zero-filled.
enum class CellStatus { computed, undefined, insufficient };

inline const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::computed: return "computed";
    case CellStatus::undefined: return "undefined";
    case CellStatus::insufficient: return "insufficient";
  }
  return "?";
}

struct MatrixCell {
  CellStatus status = CellStatus::insufficient;
  CorrelationResult result;  // meaningful only when status == computed
  int n = 0;                 // paired observations available
};

namespace detail {

// Summation in value order makes results independent of input ordering down
// to the last bit.
inline double sorted_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (const double x : v) s += x;
  return s;
}

inline double sorted_mean(std::vector<double> v) {
  const double n = static_cast<double>(v.size());
  return sorted_sum(std::move(v)) / n;
}

// Continued fraction for the regularized incomplete beta function
// (modified Lentz method).
inline double beta_cont_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  constexpr int max_iter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw std::runtime_error("incomplete beta: continued fraction did not converge");
}

// Regularized incomplete beta function I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * beta_cont_fraction(a, b, x) / a;
  return 1.0 - bt * beta_cont_fraction(b, a, 1.0 - x) / b;
}

}  // namespace detail

// Product-moment correlation of two equally long series.
// Returns nullopt when either series has zero variance: that outcome is
// meaningful (a panel scoring every team identically produces it) and must
// stay distinguishable from r = 0.
inline std::optional<double> pearson_r(std::span<const double> x,
                                       std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("pearson_r: series lengths differ");
  if (x.size() < 2)
    throw std::invalid_argument("pearson_r: need at least 2 observations");

  // One-pass co-moment accumulation.
  double mean_x = 0.0, mean_y = 0.0;
  double m2x = 0.0, m2y = 0.0, cxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double dx = x[i] - mean_x;
    mean_x += dx / k;
    const double dy = y[i] - mean_y;
    mean_y += dy / k;
    cxy += dx * (y[i] - mean_y);
    m2x += dx * (x[i] - mean_x);
    m2y += dy * (y[i] - mean_y);
  }
  if (m2x <= 0.0 || m2y <= 0.0) return std::nullopt;
  const double r = cxy / std::sqrt(m2x * m2y);
  return std::clamp(r, -1.0, 1.0);
}

// Probability of |r| at least this large under the null hypothesis of no
// correlation: t = r * sqrt((n-2)/(1-r^2)) with n-2 degrees of freedom,
// evaluated through the regularized incomplete beta function. Substituting
// t back into the beta argument collapses it to x = 1 - r^2, so the p-value
// is computed directly from r.
inline double p_value(double r, int n, Tail tail = Tail::two_sided) {
  if (n < 3) throw std::invalid_argument("p_value: need n >= 3");
  const double ar = std::fabs(r);
  if (ar >= 1.0) return 0.0;
  const double nu = static_cast<double>(n - 2);
  const double x = (1.0 - ar) * (1.0 + ar);
  const double two_sided = detail::incomplete_beta(nu / 2.0, 0.5, x);
  return tail == Tail::two_sided ? two_sided : two_sided / 2.0;
}

// Smallest |r| significant at the given level: the root of
// p_value(r, n) = alpha, found by bisection (p is strictly decreasing in |r|).
inline double critical_r(int n, double alpha, Tail tail = Tail::two_sided) {
  if (n < 3) throw std::invalid_argument("critical_r: need n >= 3");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("critical_r: alpha outside (0, 1)");
  double lo = 0.0, hi = 1.0;  // p(lo) = 1 > alpha, p(hi) = 0 < alpha
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (p_value(mid, n, tail) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline bool is_significant(double r, int n, const StatConfig& config = {}) {
  return p_value(r, n, config.tail) < config.alpha;
}

// Plain arithmetic mean of correlation coefficients ("averages over all
// pairs of peers"); deliberately not Fisher-z averaged. Summed in value
// order so the result does not depend on pair enumeration order.
inline double mean_over_values(std::span<const double> rs) {
  if (rs.empty())
    throw std::invalid_argument("mean_over_values: empty coefficient list");
  return detail::sorted_mean(std::vector<double>(rs.begin(), rs.end()));
}

// Full correlation outcome for a paired sample of at least 3 observations.
// nullopt marks the undefined (zero variance) case.
inline std::optional<CorrelationResult> correlate(std::span<const double> x,
                                                  std::span<const double> y,
                                                  const StatConfig& config = {}) {
  if (x.size() < 3)
    throw std::invalid_argument("correlate: need at least 3 paired observations");
  const auto r = pearson_r(x, y);
  if (!r) return std::nullopt;
  CorrelationResult out;
  out.r = *r;
  out.n = static_cast<int>(x.size());
  out.p_value = p_value(*r, out.n, config.tail);
  out.significant = out.p_value < config.alpha;
  return out;
}

}  // namespace reva
