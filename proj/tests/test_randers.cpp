#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "rlab/alpha.hpp"
#include "rlab/beta.hpp"
#include "rlab/oracle.hpp"
#include "rlab/randers.hpp"
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

// Fully generic Randers metrics with no special structure: the strongest
// exercise of the closed-form/definitional agreement.
rlab::MetricDefinition crooked_randers_2d() {
  const std::string text = R"RAW(dim = 2
[alpha]
a11 = "1 + 0.2*x2^2"
a12 = "0.1*sin(x2)*x1"
a22 = "1 + 0.3*exp(x1)/4"
[beta]
b1 = "0.05 + 0.1*x2"
b2 = "0.08*x1^2 - 0.04*x2"
)RAW";
  return rlab::parse_metric_text(text, "crooked_randers_2d");
}

rlab::MetricDefinition crooked_randers_3d() {
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
  return rlab::parse_metric_text(text, "crooked_randers_3d");
}

struct Fixture {
  rlab::MetricDefinition def;
  std::vector<double> x, y;
  rlab::AlphaData A;
  rlab::BetaData B;
};

Fixture make_fixture(rlab::MetricDefinition def, std::mt19937& rng) {
  Fixture f{std::move(def), {}, {}, {}, {}};
  f.x = interior_point(f.def.dim, rng);
  f.y = random_direction(f.def.dim, rng);
  f.A = rlab::alpha_data(f.def, f.x);
  f.B = rlab::beta_data(f.def, f.A, f.x);
  return f;
}

std::vector<Fixture> fixture_zoo(std::mt19937& rng) {
  std::vector<Fixture> out;
  out.push_back(make_fixture(crooked_randers_2d(), rng));
  out.push_back(make_fixture(crooked_randers_3d(), rng));
  out.push_back(make_fixture(rlab::builtin_metric("funk", {{"n", "2"}}), rng));
  out.push_back(make_fixture(rlab::builtin_metric("funk", {{"n", "3"}}), rng));
  out.push_back(make_fixture(
      rlab::builtin_metric("example_1_1",
                           {{"n", "3"}, {"a1", "0.15"}, {"a2", "-0.1"}}),
      rng));
  out.push_back(make_fixture(
      rlab::builtin_metric("conformal_minkowski", {{"n", "2"}}), rng));
  return out;
}

}  // namespace

TEST_SUITE("randers") {

TEST_CASE("closed fundamental tensor and inverse match the jet oracle") {
  std::mt19937 rng(211);
  for (auto& f : fixture_zoo(rng)) {
    CAPTURE(f.def.source);
    auto C = rlab::curvature_def(f.def, f.x, f.y);
    const Eigen::MatrixXd g = rlab::metric_closed(f.A, f.B, f.y);
    const Eigen::MatrixXd gi = rlab::inverse_metric_closed(f.A, f.B, f.y);
    CHECK((g - C.g).norm() < 1e-10 * (1.0 + C.g.norm()));
    CHECK((gi - C.g_inv).norm() < 1e-10 * (1.0 + C.g_inv.norm()));
    CHECK((g * gi - Eigen::MatrixXd::Identity(f.def.dim, f.def.dim)).norm() <
          1e-11);
  }
}

TEST_CASE("determinant identity det g = (F/alpha)^(n+1) det a") {
  std::mt19937 rng(223);
  for (auto& f : fixture_zoo(rng)) {
    CAPTURE(f.def.source);
    const int n = f.def.dim;
    const Eigen::Map<const Eigen::VectorXd> yv(f.y.data(), n);
    const double alpha = std::sqrt(yv.dot(f.A.a * yv));
    const double F = alpha + f.B.b_lo.dot(yv);
    const double lhs = rlab::metric_closed(f.A, f.B, f.y).determinant();
    const double rhs = std::pow(F / alpha, n + 1) * f.A.a.determinant();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("closed-form Ricci equals definitional Ricci") {
  std::mt19937 rng(227);
  for (auto& f : fixture_zoo(rng)) {
    CAPTURE(f.def.source);
    const double closed = rlab::ricci_closed(f.A, f.B, f.y);
    const double def_val = rlab::ricci_def(f.def, f.x, f.y);
    CHECK(closed == doctest::Approx(def_val).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("semi-closed Ricci tensor matches the nested-jet oracle") {
  std::mt19937 rng(229);
  for (auto& f : fixture_zoo(rng)) {
    CAPTURE(f.def.source);
    const Eigen::MatrixXd semi = rlab::ricci_tensor_semi(f.A, f.B, f.y);
    const Eigen::MatrixXd nested =
        rlab::ricci_tensor_nested(f.def, f.x, f.y);
    CHECK((semi - nested).norm() < 1e-8 * (1.0 + nested.norm()));
  }
}

TEST_CASE("scalar curvature: semi-closed route equals definitional route") {
  std::mt19937 rng(233);
  for (auto& f : fixture_zoo(rng)) {
    CAPTURE(f.def.source);
    auto C = rlab::curvature_def(f.def, f.x, f.y);
    const double semi = rlab::scalar_curvature_semi(f.A, f.B, f.y);
    CHECK(semi == doctest::Approx(C.r).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("flat constant-coefficient family: curvatures vanish, Cartan does not") {
  auto def = rlab::builtin_metric("minkowski_randers", {{"n", "2"}});
  const std::vector<double> x = {0.4, -0.2};
  const std::vector<double> y = {0.9, 0.35};
  auto A = rlab::alpha_data(def, x);
  auto B = rlab::beta_data(def, A, x);
  CHECK(std::abs(rlab::ricci_closed(A, B, y)) < 1e-14);
  CHECK(std::abs(rlab::scalar_curvature_semi(A, B, y)) < 1e-12);
  CHECK(std::abs(rlab::s_curvature_closed(A, B, y)) < 1e-14);
  CHECK(std::abs(rlab::s_curvature_def(def, x, y)) < 1e-12);
  // Non-Riemannian: the mean Cartan torsion must not vanish anywhere.
  CHECK(rlab::mean_cartan_closed(A, B, y).norm() > 1e-3);
}

TEST_CASE("projectively flat ball has Euclidean volume form") {
  std::mt19937 rng(239);
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    auto def = rlab::builtin_metric("funk", {{"n", std::to_string(n)}});
    auto x = interior_point(n, rng);
    auto A = rlab::alpha_data(def, x);
    auto B = rlab::beta_data(def, A, x);
    CHECK(rlab::sigma_bh_closed(A, B) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gradient of log sigma matches finite differences") {
  std::mt19937 rng(241);
  for (auto* name : {"funk", "conformal_minkowski"}) {
    auto def = rlab::builtin_metric(name, {{"n", "2"}});
    auto x = interior_point(2, rng);
    auto A = rlab::alpha_data(def, x);
    auto B = rlab::beta_data(def, A, x);
    const Eigen::VectorXd grad = rlab::dlog_sigma_bh(A, B);
    for (int k = 0; k < 2; ++k) {
      auto lsig = [&](const std::vector<double>& xx) {
        auto AA = rlab::alpha_data(def, xx);
        auto BB = rlab::beta_data(def, AA, xx);
        return std::log(rlab::sigma_bh_closed(AA, BB));
      };
      const double fd = rlab_test::richardson_diff(lsig, x, k, 1e-3);
      CHECK(grad(k) == doctest::Approx(fd).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("S-curvature: closed form equals spray-divergence definition") {
  std::mt19937 rng(251);
  for (auto& f : fixture_zoo(rng)) {
    CAPTURE(f.def.source);
    const double closed = rlab::s_curvature_closed(f.A, f.B, f.y);
    const double defn = rlab::s_curvature_def(f.def, f.x, f.y);
    CHECK(closed == doctest::Approx(defn).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("projectively flat ball: S = (n+1) F / 2") {
  std::mt19937 rng(257);
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    auto def = rlab::builtin_metric("funk", {{"n", std::to_string(n)}});
    auto x = interior_point(n, rng);
    auto y = random_direction(n, rng);
    auto A = rlab::alpha_data(def, x);
    auto B = rlab::beta_data(def, A, x);
    const double F = rlab::finsler_norm(def, x, y);
    CHECK(rlab::s_curvature_closed(A, B, y) ==
          doctest::Approx((n + 1) * F / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("deformation family: isotropic S with c = <a,x>") {
  std::mt19937 rng(263);
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    auto def = rlab::builtin_metric(
        "example_1_1", {{"n", std::to_string(n)}, {"a1", "0.15"}, {"a2", "-0.1"}});
    std::vector<double> a = {0.15, -0.1};
    a.resize(static_cast<size_t>(n), 0.0);
    auto x = interior_point(n, rng);
    auto y = random_direction(n, rng);
    double ax = 0;
    for (int i = 0; i < n; ++i) ax += a[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    auto A = rlab::alpha_data(def, x);
    auto B = rlab::beta_data(def, A, x);
    const double F = rlab::finsler_norm(def, x, y);
    CHECK(rlab::s_curvature_closed(A, B, y) ==
          doctest::Approx((n + 1) * ax * F).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("mean Cartan torsion: closed form equals g^{jk} C_ijk") {
  std::mt19937 rng(269);
  for (auto& f : fixture_zoo(rng)) {
    CAPTURE(f.def.source);
    const Eigen::VectorXd closed = rlab::mean_cartan_closed(f.A, f.B, f.y);
    const Eigen::VectorXd defn = rlab::mean_cartan_def(f.A, f.B, f.y);
    CHECK((closed - defn).norm() < 1e-10 * (1.0 + closed.norm()));
    // I_i y^i = 0 (homogeneity of the distortion).
    const Eigen::Map<const Eigen::VectorXd> yv(f.y.data(), f.def.dim);
    CHECK(std::abs(closed.dot(yv)) < 1e-12);
  }
}

TEST_CASE("mean Cartan torsion is the y-gradient of the distortion") {
  std::mt19937 rng(271);
  auto f = make_fixture(crooked_randers_2d(), rng);
  for (int i = 0; i < 2; ++i) {
    auto tau = [&](const std::vector<double>& yy) {
      return rlab::distortion_closed(f.A, f.B, yy);
    };
    const double fd = rlab_test::richardson_diff(tau, f.y, i, 1e-3);
    const double closed = rlab::mean_cartan_closed(f.A, f.B, f.y)(i);
    CHECK(closed == doctest::Approx(fd).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("S-curvature is the rate of change of distortion along geodesics") {
  std::mt19937 rng(277);
  for (auto* name : {"funk", "conformal_minkowski"}) {
    CAPTURE(name);
    auto def = rlab::builtin_metric(name, {{"n", "2"}});
    auto x = interior_point(2, rng);
    auto y = random_direction(2, rng);
    auto A = rlab::alpha_data(def, x);
    auto B = rlab::beta_data(def, A, x);
    const double closed = rlab::s_curvature_closed(A, B, y);
    const double flow = rlab::s_curvature_geodesic(def, x, y, 5e-3);
    CHECK(flow == doctest::Approx(closed).epsilon(2e-6).scale(1.0));
  }
  auto f = make_fixture(crooked_randers_2d(), rng);
  const double closed = rlab::s_curvature_closed(f.A, f.B, f.y);
  const double flow = rlab::s_curvature_geodesic(f.def, f.x, f.y, 5e-3);
  CHECK(flow == doctest::Approx(closed).epsilon(2e-6).scale(1.0));
}

TEST_CASE("Ricci decomposition splits plausibly") {
  std::mt19937 rng(281);
  auto f = make_fixture(crooked_randers_3d(), rng);
  const auto parts = rlab::xi_parts(f.A, f.B, f.y);
  // xi2 is a square divided by 4F^2/3: nonnegative by construction.
  CHECK(parts.xi2 >= 0.0);
  // Assembled Ricci from the decomposition agrees with the one-shot value.
  const auto z = rlab::contract_zoo(f.A, f.B, f.y);
  const double assembled = z.ric00a + 2.0 * z.alpha * z.sm0m - 2.0 * z.t00 -
                           z.alpha2 * f.B.tmm +
                           (f.def.dim - 1) * (parts.xi1 + parts.xi2 + parts.xi3);
  CHECK(assembled == doctest::Approx(rlab::ricci_closed(f.A, f.B, f.y))
                         .epsilon(1e-14));
}

}  // TEST_SUITE
