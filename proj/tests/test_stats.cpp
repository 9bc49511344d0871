#include "catch_amalgamated.hpp"

#include <reva/stats.hpp>

#include "oracles.hpp"

#include <vector>

using namespace reva;

TEST_CASE("pearson_r on exact linear relationships", "[stats]") {
  const std::vector<double> x = {1, 2, 3};
  CHECK(*pearson_r(x, std::vector<double>{2, 4, 6}) == 1.0);
  CHECK(*pearson_r(x, std::vector<double>{3, 2, 1}) == -1.0);
}

TEST_CASE("pearson_r hand-computed value", "[stats]") {
  // cov = 4, sigma_x * sigma_y = 5
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {1, 3, 2, 4};
  CHECK_THAT(*pearson_r(x, y), Catch::Matchers::WithinAbs(0.8, 1e-15));
}

TEST_CASE("pearson_r input errors and undefined outcome", "[stats]") {
  const std::vector<double> x = {1, 2, 3};
  CHECK_THROWS_AS(pearson_r(x, std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(pearson_r(std::vector<double>{1}, std::vector<double>{1}),
                  std::invalid_argument);
  // zero variance is "undefined", not zero and not an error
  CHECK_FALSE(pearson_r(std::vector<double>{5, 5, 5}, x).has_value());
  CHECK_FALSE(pearson_r(x, std::vector<double>{2, 2, 2}).has_value());
}

TEST_CASE("pearson_r matches the definition-level oracle", "[stats]") {
  oracle::Rng rng(20260401);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = rng.uniform_int(3, 50);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform(-10, 10);
      y[i] = 0.4 * x[i] + rng.gaussian() * rng.uniform(0.1, 5.0);
    }
    const double got = *pearson_r(x, y);
    const double want = oracle::pearson_two_pass(x, y);
    REQUIRE_THAT(got, Catch::Matchers::WithinAbs(want, 1e-12));
  }
}

TEST_CASE("pearson_r symmetry and affine invariance", "[stats]") {
  oracle::Rng rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = rng.uniform_int(3, 30);
    std::vector<double> x(n), y(n), xt(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform(-5, 5);
      y[i] = rng.uniform(-5, 5);
    }
    const double a = rng.uniform(0.1, 4.0);
    const double b = rng.uniform(-10, 10);
    for (int i = 0; i < n; ++i) xt[i] = a * x[i] + b;
    const auto r = pearson_r(x, y);
    if (!r) continue;
    CHECK_THAT(*pearson_r(y, x), Catch::Matchers::WithinAbs(*r, 1e-12));
    CHECK_THAT(*pearson_r(xt, y), Catch::Matchers::WithinAbs(*r, 1e-9));
    for (int i = 0; i < n; ++i) xt[i] = -a * x[i] + b;
    CHECK_THAT(*pearson_r(xt, y), Catch::Matchers::WithinAbs(-*r, 1e-9));
  }
}

TEST_CASE("p_value boundary cases", "[stats]") {
  CHECK(p_value(0.0, 5) == 1.0);
  CHECK(p_value(0.0, 50) == 1.0);
  CHECK(p_value(1.0, 5) == 0.0);
  CHECK(p_value(-1.0, 12) == 0.0);
  CHECK_THROWS_AS(p_value(0.5, 2), std::invalid_argument);
}

TEST_CASE("p_value at the tabulated 5% boundary", "[stats]") {
  // r = 0.8783 at n = 5 sits on the two-tailed critical point
  // t(0.975, 3 d.f.) = 3.1824.
  CHECK_THAT(p_value(0.8783, 5), Catch::Matchers::WithinAbs(0.05, 2e-4));
  CHECK(p_value(0.98, 5) < 0.01);
}

TEST_CASE("p_value agrees with the t-density integration oracle", "[stats]") {
  const double rs[] = {0.02, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, -0.4, -0.95};
  for (int n = 3; n <= 100; ++n) {
    for (const double r : rs) {
      const double got = p_value(r, n);
      const double want = oracle::p_value_by_integration(r, n);
      REQUIRE_THAT(got, Catch::Matchers::WithinAbs(want, 1e-8));
    }
  }
}

TEST_CASE("p_value is monotone in |r| and in n", "[stats]") {
  for (int n : {4, 8, 20, 60}) {
    double prev = 1.0;
    for (double r = 0.05; r < 1.0; r += 0.05) {
      const double p = p_value(r, n);
      REQUIRE(p < prev);
      prev = p;
    }
  }
  for (double r : {0.2, 0.5, 0.8}) {
    double prev = 1.0;
    for (int n : {3, 5, 10, 25, 50, 100}) {
      const double p = p_value(r, n);
      REQUIRE(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("critical_r reproduces t-table thresholds", "[stats]") {
  CHECK_THAT(critical_r(5, 0.05), Catch::Matchers::WithinAbs(0.8783, 1e-4));
  // threshold near 0.29 for the pooled N=46 tables
  CHECK_THAT(critical_r(46, 0.05),
             Catch::Matchers::WithinAbs(oracle::critical_r_by_integration(46, 0.05), 1e-8));
  CHECK_THAT(critical_r(46, 0.05), Catch::Matchers::WithinAbs(0.2907, 1e-4));
  CHECK_THAT(critical_r(10, 0.05), Catch::Matchers::WithinAbs(0.6319, 1e-4));
  CHECK_THROWS_AS(critical_r(2, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(critical_r(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_r(10, 1.0), std::invalid_argument);
  // alpha -> 1 pushes the threshold to 0
  CHECK(critical_r(10, 0.9999) < 1e-3);
}

TEST_CASE("p_value(critical_r(n, alpha), n) = alpha", "[stats]") {
  for (int n : {3, 4, 5, 10, 18, 29, 46, 53, 100}) {
    for (double alpha : {0.01, 0.05, 0.10, 0.5}) {
      const double rc = critical_r(n, alpha);
      REQUIRE_THAT(p_value(rc, n), Catch::Matchers::WithinAbs(alpha, 1e-8));
    }
  }
}

TEST_CASE("is_significant at the published table cells", "[stats]") {
  StatConfig config;  // alpha = 0.05, two-sided
  CHECK(is_significant(0.98, 5, config));
  CHECK_FALSE(is_significant(-0.48, 5, config));
  CHECK(is_significant(0.49, 46, config));
}

TEST_CASE("is_significant flips exactly at the critical value", "[stats]") {
  StatConfig config;
  for (int n : {5, 10, 46}) {
    const double rc = critical_r(n, config.alpha);
    CHECK(is_significant(rc + 1e-6, n, config));
    CHECK_FALSE(is_significant(rc - 1e-6, n, config));
  }
}

TEST_CASE("one-sided test halves the p-value", "[stats]") {
  for (double r : {0.2, 0.5, 0.8}) {
    CHECK_THAT(p_value(r, 12, Tail::one_sided),
               Catch::Matchers::WithinAbs(p_value(r, 12) / 2.0, 1e-15));
  }
  CHECK(critical_r(46, 0.05, Tail::one_sided) < critical_r(46, 0.05));
}

TEST_CASE("mean_over_values", "[stats]") {
  CHECK(mean_over_values(std::vector<double>{0.5, 0.7}) == 0.6);
  CHECK(mean_over_values(std::vector<double>{0.37}) == 0.37);
  CHECK(mean_over_values(std::vector<double>{1.0, -1.0}) == 0.0);
  CHECK_THROWS_AS(mean_over_values(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("correlate produces a coherent CorrelationResult", "[stats]") {
  oracle::Rng rng(99);
  StatConfig config;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = rng.uniform_int(3, 40);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform(0, 10);
      y[i] = rng.uniform(0, 10);
    }
    const auto res = correlate(x, y, config);
    if (!res) continue;
    CHECK(std::fabs(res->r) <= 1.0);
    CHECK(res->n == n);
    CHECK(res->significant == (res->p_value < config.alpha));
  }
  // undefined outcome propagates
  CHECK_FALSE(correlate(std::vector<double>{1, 1, 1},
                        std::vector<double>{1, 2, 3}, config)
                  .has_value());
}
