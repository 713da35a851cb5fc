#include <random>
#include <vector>

#include "doctest.h"
#include "rlab/alpha.hpp"

namespace {

std::vector<double> interior_point(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<double> x(static_cast<size_t>(n));
  for (auto& c : x) c = u(rng);
  return x;
}

// A deliberately lopsided metric with no special symmetry.
rlab::MetricDefinition crooked_metric() {
  const std::string text = R"RAW(dim = 3
[alpha]
a11 = "1 + 0.2*x2^2"
a12 = "0.1*sin(x3)"
a13 = "0.05*x1*x2"
a22 = "1 + 0.3*exp(x1)/4"
a23 = "0.08*x1"
a33 = "1 + 0.1*x1^2 + 0.2*x2^2"
[beta]
b1 = "0.1*x2"
b2 = "0.05*x3^2"
b3 = "0.1 + 0.02*x1"
)RAW";
  return rlab::parse_metric_text(text, "crooked");
}

}  // namespace

TEST_SUITE("alpha") {

TEST_CASE("round sphere has Ric = (n-1) a and scalar curvature n(n-1)") {
  std::mt19937 rng(23);
  for (int n = 2; n <= 4; ++n) {
    auto def = rlab::builtin_metric("sphere_alpha", {{"n", std::to_string(n)}});
    for (int k = 0; k < 3; ++k) {
      auto x = interior_point(n, rng);
      auto A = rlab::alpha_data(def, x);
      CHECK(A.r_alpha == doctest::Approx(n * (n - 1)).epsilon(1e-9));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(A.ricci(i, j) ==
                doctest::Approx((n - 1) * A.a(i, j)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Klein ball metric has constant curvature -1/4 scaled form") {
  // The alpha of the Funk example is the Klein metric of constant sectional
  // curvature -1, so Ric = -(n-1) a and the scalar curvature is -n(n-1).
  std::mt19937 rng(29);
  for (int n = 2; n <= 3; ++n) {
    auto def = rlab::builtin_metric("funk", {{"n", std::to_string(n)}});
    for (int k = 0; k < 3; ++k) {
      auto x = interior_point(n, rng);
      auto A = rlab::alpha_data(def, x);
      CHECK(A.r_alpha == doctest::Approx(-n * (n - 1)).epsilon(1e-9));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(A.ricci(i, j) ==
                doctest::Approx(-(n - 1) * A.a(i, j)).epsilon(1e-9));
    }
  }
}

TEST_CASE("flat space: everything vanishes") {
  auto def = rlab::builtin_metric("minkowski_randers", {{"n", "3"}});
  std::vector<double> x = {0.7, -0.2, 1.4};
  auto A = rlab::alpha_data(def, x);
  for (int m = 0; m < 3; ++m)
    CHECK(A.gamma[static_cast<size_t>(m)].norm() == 0.0);
  CHECK(A.ricci.norm() == 0.0);
  CHECK(A.r_alpha == 0.0);
  CHECK(A.sigma_alpha == 1.0);
}

TEST_CASE("metric compatibility: the covariant derivative of a vanishes") {
  std::mt19937 rng(31);
  auto def = crooked_metric();
  for (int rep = 0; rep < 3; ++rep) {
    auto x = interior_point(3, rng);
    auto A = rlab::alpha_data(def, x);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double nabla = A.da[static_cast<size_t>(k)](i, j);
          for (int m = 0; m < 3; ++m)
            nabla -= A.gamma[static_cast<size_t>(m)](i, k) * A.a(m, j) +
                     A.gamma[static_cast<size_t>(m)](j, k) * A.a(i, m);
          CHECK(std::abs(nabla) < 1e-12);
        }
  }
}

TEST_CASE("Riemann tensor symmetries and Ricci trace") {
  std::mt19937 rng(37);
  auto def = crooked_metric();
  auto x = interior_point(3, rng);
  auto A = rlab::alpha_data(def, x);

  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double R = rlab::riemann_component(A, l, i, j, k);
          // Antisymmetry in the last index pair.
          CHECK(R == doctest::Approx(-rlab::riemann_component(A, l, i, k, j))
                         .epsilon(1e-10)
                         .scale(1.0));
          // First Bianchi identity.
          const double bianchi = R + rlab::riemann_component(A, l, j, k, i) +
                                 rlab::riemann_component(A, l, k, i, j);
          CHECK(std::abs(bianchi) < 1e-10);
        }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double trace = 0;
      for (int m = 0; m < 3; ++m)
        trace += rlab::riemann_component(A, m, i, m, j);
      CHECK(trace == doctest::Approx(A.ricci(i, j)).epsilon(1e-11).scale(1.0));
    }
}

}  // TEST_SUITE
