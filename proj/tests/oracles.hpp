#pragma once

// Independent reference computations for the test suite. Everything here
// follows the textbook definition directly and must not share code with the
// library implementation it checks.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

// Definition-level Pearson correlation: explicit two-pass computation with
// extended precision accumulators.
inline double pearson_two_pass(std::span<const double> x,
                               std::span<const double> y) {
  const std::size_t n = x.size();
  long double sx = 0.0L, sy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / static_cast<long double>(n);
  const long double my = sy / static_cast<long double>(n);
  long double sxx = 0.0L, syy = 0.0L, sxy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

namespace detail {

inline double t_density(double u, double nu) {
  const double ln_c = std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
                      0.5 * std::log(nu * M_PI);
  return std::exp(ln_c - (nu + 1.0) / 2.0 * std::log1p(u * u / nu));
}

inline double simpson(double a, double b, double fa, double fm, double fb,
                      double nu, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = t_density(lm, nu);
  const double frm = t_density(rm, nu);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(a, m, fa, flm, fm, nu, left, tol / 2.0, depth - 1) +
         simpson(m, b, fm, frm, fb, nu, right, tol / 2.0, depth - 1);
}

// Adaptive Simpson quadrature of the t density over [0, t].
inline double integrate_t_density(double t, double nu) {
  const double fa = t_density(0.0, nu);
  const double fb = t_density(t, nu);
  const double fm = t_density(0.5 * t, nu);
  const double whole = t / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(0.0, t, fa, fm, fb, nu, whole, 1e-13, 48);
}

}  // namespace detail

// Two-tailed p-value for a correlation coefficient by numerical integration
// of the t density with n-2 degrees of freedom.
inline double p_value_by_integration(double r, int n) {
  if (n < 3) throw std::invalid_argument("oracle p-value: n < 3");
  const double ar = std::fabs(r);
  if (ar >= 1.0) return 0.0;
  const double nu = static_cast<double>(n - 2);
  const double t = ar * std::sqrt(nu / ((1.0 - ar) * (1.0 + ar)));
  const double half = detail::integrate_t_density(t, nu);
  return 1.0 - 2.0 * half;
}

// Critical |r| obtained by root-finding on the integration oracle.
inline double critical_r_by_integration(int n, double alpha) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 120; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (p_value_by_integration(mid, n) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Small deterministic generator for test fixtures (splitmix64).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0, 1)
    return (static_cast<double>(next() >> 11) + 0.5) / 9007199254740992.0;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace oracle
