#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "rlab/metric.hpp"

namespace {

// A safe interior point for every builtin family at the given dimension.
std::vector<double> interior_point(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  std::vector<double> x(static_cast<size_t>(n));
  for (auto& c : x) c = u(rng);
  return x;
}

std::vector<double> random_direction(int n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> y(static_cast<size_t>(n));
  for (auto& c : y) c = g(rng);
  return y;
}

}  // namespace

TEST_SUITE("metric") {

TEST_CASE("every builtin is admissible on its natural domain") {
  std::mt19937 rng(7);
  for (const auto& name : rlab::builtin_names()) {
    CAPTURE(name);
    for (int n = 2; n <= 3; ++n) {
      auto def = rlab::builtin_metric(name, {{"n", std::to_string(n)}});
      CHECK(def.dim == n);
      for (int k = 0; k < 4; ++k) {
        auto x = interior_point(n, rng);
        const double b2 = rlab::check_admissible(def, x);
        CHECK(b2 >= 0.0);
        CHECK(b2 < 1.0);
      }
    }
  }
}

TEST_CASE("minkowski frozen values") {
  auto def = rlab::builtin_metric("minkowski_randers",
                                  {{"n", "3"}, {"b1", "0.2"}});
  std::vector<double> x = {0.4, -0.1, 2.0};  // location is irrelevant
  std::vector<double> y = {1.0, 0.0, 0.0};
  CHECK(rlab::finsler_norm(def, x, y) == doctest::Approx(1.2).epsilon(1e-15));
  std::vector<double> ym = {-1.0, 0.0, 0.0};
  CHECK(rlab::finsler_norm(def, x, ym) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(rlab::check_admissible(def, x) == doctest::Approx(0.04).epsilon(1e-15));
}

TEST_CASE("funk metric solves the exit-point equation") {
  // F(x, y) for the Funk metric on the unit ball is the unique t > 0 with
  // |x + y/t| = 1.  This pins the builtin without reusing its formula.
  std::mt19937 rng(11);
  for (int n = 2; n <= 3; ++n) {
    auto def = rlab::builtin_metric("funk", {{"n", std::to_string(n)}});
    for (int k = 0; k < 10; ++k) {
      auto x = interior_point(n, rng);
      auto y = random_direction(n, rng);
      const double f = rlab::finsler_norm(def, x, y);
      REQUIRE(f > 0.0);
      double exit2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double e = x[static_cast<size_t>(i)] + y[static_cast<size_t>(i)] / f;
        exit2 += e * e;
      }
      CHECK(exit2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    // ||beta||^2 at x equals |x|^2 for this family.
    std::vector<double> x0 = {0.3, 0.0};
    x0.resize(static_cast<size_t>(n), 0.0);
    CHECK(rlab::check_admissible(def, x0) ==
          doctest::Approx(0.09).epsilon(1e-12));
  }
}

TEST_CASE("deformation family matches its closed-form norm") {
  // Independent re-derivation of the builtin: with w_i = |x|^2 a_i -
  // 2<a,x> x_i and D = 1 - |a|^2 |x|^4, the norm must equal
  //   F = (sqrt(D |y|^2 + <w,y>^2) - <w,y>) / D.
  std::mt19937 rng(13);
  for (int n = 2; n <= 3; ++n) {
    std::map<std::string, std::string> overrides = {{"n", std::to_string(n)},
                                                    {"a1", "0.4"}};
    if (n >= 2) overrides["a2"] = "-0.25";
    auto def = rlab::builtin_metric("example_1_1", overrides);
    std::vector<double> a = {0.4, -0.25};
    a.resize(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < 10; ++k) {
      auto x = interior_point(n, rng);
      auto y = random_direction(n, rng);
      double x2 = 0, a2 = 0, ax = 0;
      for (int i = 0; i < n; ++i) {
        x2 += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        a2 += a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
        ax += a[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
      }
      const double D = 1.0 - a2 * x2 * x2;
      double y2 = 0, wy = 0;
      for (int i = 0; i < n; ++i) {
        const double wi =
            x2 * a[static_cast<size_t>(i)] - 2.0 * ax * x[static_cast<size_t>(i)];
        y2 += y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
        wy += wi * y[static_cast<size_t>(i)];
      }
      const double direct = (std::sqrt(D * y2 + wy * wy) - wy) / D;
      CHECK(rlab::finsler_norm(def, x, y) ==
            doctest::Approx(direct).epsilon(1e-13));
    }
  }
}

TEST_CASE("conformal scaling acts as a common factor") {
  auto def = rlab::builtin_metric(
      "conformal_minkowski",
      {{"n", "2"}, {"b1", "0.3"}, {"sigma", "0.2*x1"}});
  std::vector<double> x = {0.5, -0.3};
  std::vector<double> y = {0.6, 0.8};
  const double scale = std::exp(0.2 * 0.5);
  const double flat = std::sqrt(0.36 + 0.64) + 0.3 * 0.6;
  CHECK(rlab::finsler_norm(def, x, y) ==
        doctest::Approx(scale * flat).epsilon(1e-14));
  // b^2 is conformally invariant: a^{ij} b_i b_j = e^{-2s} a0^{ij} e^{2s} ...
  CHECK(rlab::check_admissible(def, x) == doctest::Approx(0.09).epsilon(1e-14));
}

TEST_CASE("serialize and reparse preserves the metric") {
  std::mt19937 rng(17);
  for (const auto& name : {"funk", "example_1_1", "conformal_minkowski"}) {
    CAPTURE(name);
    auto def = rlab::builtin_metric(name, {{"n", "2"}});
    const std::string text = rlab::serialize_metric(def);
    auto back = rlab::parse_metric_text(text, "roundtrip");
    REQUIRE(back.dim == def.dim);
    for (int k = 0; k < 6; ++k) {
      auto x = interior_point(2, rng);
      auto y = random_direction(2, rng);
      CHECK(rlab::finsler_norm(back, x, y) ==
            doctest::Approx(rlab::finsler_norm(def, x, y)).epsilon(1e-15));
    }
  }
}

TEST_CASE("metric text format") {
  const std::string text = R"(# a tilted flat example
dim = 2
[params]
eps = 0.25
[alpha]
a11 = "1"
a22 = "1 + eps*x1^2"
[beta]
b2 = "eps*x2"
)";
  auto def = rlab::parse_metric_text(text, "inline");
  CHECK(def.dim == 2);
  std::vector<double> x = {2.0, 1.0};
  std::vector<double> y = {0.0, 1.0};
  // alpha = sqrt(1 + 0.25*4) = sqrt(2); beta = 0.25.
  CHECK(rlab::finsler_norm(def, x, y) ==
        doctest::Approx(std::sqrt(2.0) + 0.25).epsilon(1e-15));

  // Missing off-diagonal entries default to zero; a12 was never given.
  std::vector<double> y2 = {1.0, 1.0};
  CHECK(rlab::finsler_norm(def, x, y2) ==
        doctest::Approx(std::sqrt(3.0) + 0.25).epsilon(1e-15));
}

TEST_CASE("format errors are caught with line numbers") {
  CHECK_THROWS_AS(rlab::parse_metric_text("dim = 2\n[alpha]\na11 = 1\n", "t"),
                  rlab::MetricDomainError);  // unquoted expression
  CHECK_THROWS_AS(rlab::parse_metric_text("dim = 2\n[alpha]\na11 = \"1\"\n", "t"),
                  rlab::MetricDomainError);  // missing diagonal a22
  CHECK_THROWS_AS(rlab::parse_metric_text("[alpha]\na11 = \"1\"\n", "t"),
                  rlab::MetricDomainError);  // missing dim
  CHECK_THROWS_AS(
      rlab::parse_metric_text("dim = 2\n[alpha]\na21 = \"1\"\n", "t"),
      rlab::MetricDomainError);  // lower-triangular key
  try {
    rlab::parse_metric_text("dim = 2\n[alpha]\na11 = 1\n", "t");
  } catch (const rlab::MetricDomainError& err) {
    CHECK(std::string(err.what()).find("t:3") != std::string::npos);
  }
}

TEST_CASE("inadmissible data is rejected with a reason") {
  // |beta| = 1.2 > 1.
  auto def = rlab::builtin_metric("minkowski_randers", {{"b1", "1.2"}});
  std::vector<double> x = {0.0, 0.0};
  CHECK_THROWS_AS(rlab::check_admissible(def, x), rlab::MetricDomainError);

  // Indefinite alpha.
  const std::string bad = "dim = 2\n[alpha]\na11 = \"1\"\na22 = \"-1\"\n[beta]\n";
  auto def2 = rlab::parse_metric_text(bad, "t");
  try {
    rlab::check_admissible(def2, x);
    CHECK(false);
  } catch (const rlab::MetricDomainError& err) {
    CHECK(std::string(err.what()).find("positive definite") != std::string::npos);
  }
}

}  // TEST_SUITE
