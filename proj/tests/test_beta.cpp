#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "rlab/beta.hpp"
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

TEST_SUITE("beta") {

TEST_CASE("constant one-form on flat space: the zoo vanishes") {
  auto def = rlab::builtin_metric("minkowski_randers", {{"n", "3"}});
  std::vector<double> x = {0.2, -0.8, 0.5};
  auto A = rlab::alpha_data(def, x);
  auto B = rlab::beta_data(def, A, x);
  CHECK(B.b2 == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(B.db.norm() == 0.0);
  CHECK(B.rij.norm() == 0.0);
  CHECK(B.sij.norm() == 0.0);
  for (const auto& m : B.ddb) CHECK(m.norm() == 0.0);
  CHECK(B.smm == 0.0);
  CHECK(B.bsimm == 0.0);
}

TEST_CASE("Ricci identity for the second covariant derivative") {
  // b_{i;j;k} - b_{i;k;j} = R^m_{ijk} b_m ties ddb to the curvature data
  // computed independently from the Christoffel symbols.
  std::mt19937 rng(41);
  auto def = crooked_metric();
  for (int rep = 0; rep < 3; ++rep) {
    auto x = interior_point(3, rng);
    auto A = rlab::alpha_data(def, x);
    auto B = rlab::beta_data(def, A, x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double lhs = B.ddb[static_cast<size_t>(k)](i, j) -
                             B.ddb[static_cast<size_t>(j)](i, k);
          double rhs = 0;
          for (int m = 0; m < 3; ++m)
            rhs += rlab::riemann_component(A, m, i, j, k) * B.b_lo(m);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
        }
  }
}

TEST_CASE("first covariant derivative against finite differences") {
  auto def = crooked_metric();
  std::vector<double> x0 = {0.15, -0.2, 0.1};

  // d_k b_{i;j} from Richardson differences of the field x -> b_{i;j}(x),
  // then covariantized; must reproduce ddb.
  auto db_field = [&](int i, int j) {
    return [&, i, j](const std::vector<double>& x) {
      auto A = rlab::alpha_data(def, x);
      return rlab::beta_data(def, A, x).db(i, j);
    };
  };
  auto A0 = rlab::alpha_data(def, x0);
  auto B0 = rlab::beta_data(def, A0, x0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double cov = rlab_test::richardson_diff(db_field(i, j), x0, k, 1e-3);
        for (int m = 0; m < 3; ++m)
          cov -= A0.gamma[static_cast<size_t>(m)](i, k) * B0.db(m, j) +
                 A0.gamma[static_cast<size_t>(m)](j, k) * B0.db(i, m);
        CHECK(B0.ddb[static_cast<size_t>(k)](i, j) ==
              doctest::Approx(cov).epsilon(1e-8).scale(1.0));
      }
}

TEST_CASE("gradient of the length of beta") {
  // For the scalar b^2, partial and covariant derivatives agree and
  // d_k b^2 = 2 (r_k + s_k).
  auto def = crooked_metric();
  std::vector<double> x0 = {0.1, 0.25, -0.15};
  auto A0 = rlab::alpha_data(def, x0);
  auto B0 = rlab::beta_data(def, A0, x0);
  auto b2_field = [&](const std::vector<double>& x) {
    auto A = rlab::alpha_data(def, x);
    return rlab::beta_data(def, A, x).b2;
  };
  for (int k = 0; k < 3; ++k) {
    const double fd = rlab_test::richardson_diff(b2_field, x0, k, 1e-3);
    CHECK(fd == doctest::Approx(2.0 * (B0.ri(k) + B0.si(k)))
                    .epsilon(1e-9)
                    .scale(1.0));
  }
}

TEST_CASE("contraction bookkeeping identities") {
  std::mt19937 rng(43);
  auto def = crooked_metric();
  auto x = interior_point(3, rng);
  auto A = rlab::alpha_data(def, x);
  auto B = rlab::beta_data(def, A, x);

  // t = b^i t_i reduces to -|s|^2, so it is never positive.
  CHECK(B.t == doctest::Approx(-B.si.dot(B.su)).epsilon(1e-12).scale(1.0));
  CHECK(B.t <= 0.0);
  // q_i = b^m q_mi equals r_h a^{hl} s_{li}.
  Eigen::VectorXd qi_alt = B.sij.transpose() * (A.a_inv * B.ri);
  for (int i = 0; i < 3; ++i)
    CHECK(B.qi(i) == doctest::Approx(qi_alt(i)).epsilon(1e-12).scale(1.0));
  // Traces of the mixed tensors match their matrix forms.
  CHECK(B.rmm == doctest::Approx((A.a_inv * B.rij).trace()).epsilon(1e-13));

  auto y = random_direction(3, rng);
  auto z = rlab::contract_zoo(A, B, y);
  // e_00 = r_00 + 2 beta s_0 by definition of e_ij.
  CHECK(z.e00 ==
        doctest::Approx(z.r00 + 2.0 * z.s0 * z.beta).epsilon(1e-12).scale(1.0));
  // e_{00;0} expands into the same pieces one derivative later.
  CHECK(z.e000c == doctest::Approx(z.r000c + 2.0 * z.beta * z.s00c +
                                   2.0 * z.s0 * z.r00)
                       .epsilon(1e-12)
                       .scale(1.0));
}

TEST_CASE("projective family has e_00 = alpha^2 - beta^2") {
  // This family has isotropic S-curvature with c = 1/2, equivalently
  // e_00 = 2c (alpha^2 - beta^2).
  std::mt19937 rng(47);
  for (int n = 2; n <= 3; ++n) {
    auto def = rlab::builtin_metric("funk", {{"n", std::to_string(n)}});
    for (int rep = 0; rep < 4; ++rep) {
      auto x = interior_point(n, rng);
      auto A = rlab::alpha_data(def, x);
      auto B = rlab::beta_data(def, A, x);
      auto y = random_direction(n, rng);
      auto z = rlab::contract_zoo(A, B, y);
      CHECK(z.e00 == doctest::Approx(z.alpha2 - z.beta * z.beta)
                         .epsilon(1e-9)
                         .scale(1.0));
    }
  }
}

TEST_CASE("deformation family has e_00 = 2<a,x>(alpha^2 - beta^2)") {
  std::mt19937 rng(53);
  for (int n = 2; n <= 3; ++n) {
    auto def = rlab::builtin_metric(
        "example_1_1", {{"n", std::to_string(n)}, {"a1", "0.3"}, {"a2", "-0.2"}});
    std::vector<double> a = {0.3, -0.2};
    a.resize(static_cast<size_t>(n), 0.0);
    for (int rep = 0; rep < 4; ++rep) {
      auto x = interior_point(n, rng);
      double c = 0;
      for (int i = 0; i < n; ++i) c += a[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
      auto A = rlab::alpha_data(def, x);
      auto B = rlab::beta_data(def, A, x);
      auto y = random_direction(n, rng);
      auto z = rlab::contract_zoo(A, B, y);
      CHECK(z.e00 == doctest::Approx(2.0 * c * (z.alpha2 - z.beta * z.beta))
                         .epsilon(1e-8)
                         .scale(1.0));
    }
  }
}

TEST_CASE("conformally flat data: frozen first covariant derivative") {
  // For a = e^{2s} delta, b = e^{s} c with constant c and s = 0.2 x1:
  // b_{i;j} = e^{s} (delta_ij <c, grad s> - s_i c_j).
  auto def = rlab::builtin_metric(
      "conformal_minkowski", {{"n", "2"}, {"b1", "0.3"}, {"sigma", "0.2*x1"}});
  std::vector<double> x = {0.5, -0.3};
  auto A = rlab::alpha_data(def, x);
  auto B = rlab::beta_data(def, A, x);
  const double es = std::exp(0.1);
  // <c, grad s> = 0.3 * 0.2 = 0.06; s_1 c_1 = 0.06, others zero.
  CHECK(B.db(0, 0) == doctest::Approx(es * (0.06 - 0.06)).epsilon(1e-12).scale(1.0));
  CHECK(B.db(0, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(B.db(1, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(B.db(1, 1) == doctest::Approx(es * 0.06).epsilon(1e-12));
}

}  // TEST_SUITE
