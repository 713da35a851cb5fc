#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "rlab/alpha.hpp"
#include "rlab/beta.hpp"
#include "rlab/oracle.hpp"
#include "support/finite_diff.hpp"

namespace {

std::vector<double> interior_point(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
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

rlab::MetricDefinition crooked_riemannian() {
  const std::string text = R"RAW(dim = 2
[alpha]
a11 = "1 + 0.2*x2^2"
a12 = "0.1*sin(x2)*x1"
a22 = "1 + 0.3*exp(x1)/4"
[beta]
)RAW";
  return rlab::parse_metric_text(text, "crooked2");
}

// The standard closed form of the fundamental tensor of F = alpha + beta,
// used only as an independent check of the jet-computed g.
Eigen::MatrixXd fundamental_closed(const rlab::MetricDefinition& def,
                                   std::span<const double> x,
                                   std::span<const double> y) {
  const int n = def.dim;
  const Eigen::MatrixXd a = def.alpha_matrix(x);
  const Eigen::VectorXd b = def.beta_covector(x);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const Eigen::VectorXd yl = a * yv;  // y_i = a_ij y^j
  const double alpha = std::sqrt(yv.dot(yl));
  const double F = alpha + b.dot(yv);
  Eigen::MatrixXd g =
      (F / alpha) * (a - (yl / alpha) * (yl / alpha).transpose());
  const Eigen::VectorXd ell = b + yl / alpha;
  g += ell * ell.transpose();
  return g;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("flat family: spray and curvature vanish, g matches closed form") {
  std::mt19937 rng(61);
  auto def = rlab::builtin_metric("minkowski_randers", {{"n", "2"}});
  auto x = interior_point(2, rng);
  auto y = random_direction(2, rng);
  CHECK(rlab::spray_def(def, x, y).norm() == doctest::Approx(0.0).scale(1.0));
  auto C = rlab::curvature_def(def, x, y);
  CHECK(C.ric == doctest::Approx(0.0).scale(1.0));
  CHECK(C.ric_ij.norm() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(C.r == doctest::Approx(0.0).scale(1.0));
  auto gc = fundamental_closed(def, x, y);
  CHECK((C.g - gc).norm() < 1e-12 * gc.norm());
}

TEST_CASE("Riemannian reduction: spray is the geodesic spray") {
  std::mt19937 rng(67);
  auto def = crooked_riemannian();
  for (int rep = 0; rep < 3; ++rep) {
    auto x = interior_point(2, rng);
    auto y = random_direction(2, rng);
    auto A = rlab::alpha_data(def, x);
    auto G = rlab::spray_def(def, x, y);
    for (int k = 0; k < 2; ++k) {
      double gk = 0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          gk += 0.5 * A.gamma[static_cast<size_t>(k)](i, j) *
                y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
      CHECK(G(k) == doctest::Approx(gk).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("Riemannian reduction: Ricci tensor and scalar") {
  std::mt19937 rng(71);
  auto def = crooked_riemannian();
  for (int rep = 0; rep < 2; ++rep) {
    auto x = interior_point(2, rng);
    auto y = random_direction(2, rng);
    auto A = rlab::alpha_data(def, x);
    auto C = rlab::curvature_def(def, x, y);
    // g reduces to a, Ric_ij to the Riemannian Ricci tensor, r to its trace.
    CHECK((C.g - A.a).norm() < 1e-10);
    CHECK((C.ric_ij - A.ricci).norm() < 1e-8);
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), 2);
    CHECK(C.ric ==
          doctest::Approx(yv.dot(A.ricci * yv)).epsilon(1e-9).scale(1.0));
    CHECK(C.r == doctest::Approx(A.r_alpha).epsilon(1e-9));
  }
}

TEST_CASE("round sphere through the full definitional route") {
  std::mt19937 rng(73);
  for (int n = 2; n <= 3; ++n) {
    auto def = rlab::builtin_metric("sphere_alpha", {{"n", std::to_string(n)}});
    auto x = interior_point(n, rng);
    auto y = random_direction(n, rng);
    auto C = rlab::curvature_def(def, x, y);
    CHECK(C.r == doctest::Approx(n * (n - 1)).epsilon(1e-9));
  }
}

TEST_CASE("projectively flat ball: Ric = -(n-1)/4 F^2") {
  std::mt19937 rng(79);
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    auto def = rlab::builtin_metric("funk", {{"n", std::to_string(n)}});
    auto x = interior_point(n, rng);
    auto y = random_direction(n, rng);
    auto C = rlab::curvature_def(def, x, y);
    CHECK(C.ric == doctest::Approx(-(n - 1) * C.F * C.F / 4.0).epsilon(1e-9));
    // Ric_ij = -(n-1)/4 g_ij, hence r = -n(n-1)/4.
    CHECK((C.ric_ij + (n - 1) / 4.0 * C.g).norm() < 1e-8);
    CHECK(C.r == doctest::Approx(-n * (n - 1) / 4.0).epsilon(1e-9));
  }
}

TEST_CASE("deformation family: weakly isotropic curvatures") {
  std::mt19937 rng(83);
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    auto def = rlab::builtin_metric(
        "example_1_1", {{"n", std::to_string(n)}, {"a1", "0.15"}, {"a2", "-0.1"}});
    std::vector<double> a = {0.15, -0.1};
    a.resize(static_cast<size_t>(n), 0.0);
    for (int rep = 0; rep < 2; ++rep) {
      auto x = interior_point(n, rng);
      auto y = random_direction(n, rng);
      double ax = 0, ay = 0, x2 = 0, a2 = 0;
      for (int i = 0; i < n; ++i) {
        ax += a[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        ay += a[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
        x2 += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        a2 += a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
      }
      const double mu = 3.0 * ax * ax - 2.0 * a2 * x2;
      auto C = rlab::curvature_def(def, x, y);
      // Flag curvature K = 3 <a,y>/F + mu  =>  Ric = (n-1) K F^2.
      CHECK(C.ric == doctest::Approx((n - 1) * (3.0 * ay * C.F + mu * C.F * C.F))
                         .epsilon(1e-8)
                         .scale(1.0));
      // Scalar curvature: r = n(n-1) (theta/F + mu), theta = 3(n+1)<a,y>/(2n).
      const double theta = 3.0 * (n + 1) * ay / (2.0 * n);
      CHECK(C.r == doctest::Approx(n * (n - 1) * (theta / C.F + mu))
                       .epsilon(1e-8)
                       .scale(1.0));
    }
  }
}

TEST_CASE("nested-jet route agrees with the flat route") {
  std::mt19937 rng(89);
  auto def = rlab::builtin_metric("funk", {{"n", "2"}});
  for (int rep = 0; rep < 2; ++rep) {
    auto x = interior_point(2, rng);
    auto y = random_direction(2, rng);
    auto flat = rlab::curvature_def(def, x, y).ric_ij;
    auto nested = rlab::ricci_tensor_nested(def, x, y);
    CHECK((flat - nested).norm() < 1e-8 * (1.0 + flat.norm()));
  }
}

TEST_CASE("homogeneity in y") {
  std::mt19937 rng(97);
  auto def = rlab::builtin_metric("funk", {{"n", "2"}});
  auto x = interior_point(2, rng);
  auto y = random_direction(2, rng);
  std::vector<double> y2 = y;
  for (auto& c : y2) c *= 1.7;
  auto C1 = rlab::curvature_def(def, x, y);
  auto C2 = rlab::curvature_def(def, x, y2);
  CHECK(C2.ric == doctest::Approx(1.7 * 1.7 * C1.ric).epsilon(1e-10));
  CHECK(C2.r == doctest::Approx(C1.r).epsilon(1e-10));  // 0-homogeneous
  auto G1 = rlab::spray_def(def, x, y);
  auto G2 = rlab::spray_def(def, x, y2);
  CHECK((G2 - 1.7 * 1.7 * G1).norm() < 1e-10 * G1.norm());
}

TEST_CASE("spray y-divergence against finite differences") {
  std::mt19937 rng(101);
  auto def = rlab::builtin_metric("funk", {{"n", "2"}});
  auto x = interior_point(2, rng);
  auto y = random_direction(2, rng);
  double fd = 0;
  for (int m = 0; m < 2; ++m) {
    auto comp = [&](const std::vector<double>& yy) {
      return rlab::spray_def(def, x, yy)(m);
    };
    fd += rlab_test::richardson_diff(comp, y, m, 1e-3);
  }
  CHECK(rlab::spray_ydiv_def(def, x, y) ==
        doctest::Approx(fd).epsilon(1e-7).scale(1.0));
}

}  // TEST_SUITE
