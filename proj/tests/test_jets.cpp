#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rlab/jet.hpp"
#include "support/finite_diff.hpp"

using rlab::Jet;
using rlab::Jet2;
using rlab::JetLayout;

namespace {

Jet seed1(double x0, int order) {
  auto layout = JetLayout::get(1, order);
  return Jet::variable(layout, 0, x0);
}

}  // namespace

TEST_SUITE_BEGIN("jets");

TEST_CASE("layout enumerates graded blocks with prefix property") {
  auto L = JetLayout::get(3, 4);
  CHECK(L->size(0) == 1);
  CHECK(L->size(1) == 4);
  CHECK(L->size(2) == 10);
  CHECK(L->size(4) == 35);
  // Degree-1 block follows the coordinate order.
  std::vector<int> e = {0, 1, 0};
  CHECK(L->position(e) == 2);
  for (int p = 0; p < L->size(); ++p) {
    int d = 0;
    for (int v = 0; v < 3; ++v) d += L->exponent(p, v);
    CHECK(d == L->degree(p));
  }
}

TEST_CASE("seeded coordinates report unit first partials") {
  auto L = JetLayout::get(2, 3);
  Jet x = Jet::variable(L, 0, 0.7);
  CHECK(x.value() == doctest::Approx(0.7));
  std::vector<int> dx = {1, 0}, dy = {0, 1};
  CHECK(x.partial(dx) == doctest::Approx(1.0));
  CHECK(x.partial(dy) == doctest::Approx(0.0));
}

TEST_CASE("sqrt jet of 1+x^2 at x=1 matches the closed-form second partial") {
  // f(x) = sqrt(1+x^2); f''(x) = (1+x^2)^{-3/2}; f''(1) = 2^{-3/2}.
  Jet x = seed1(1.0, 4);
  Jet f = sqrt(1.0 + x * x);
  CHECK(f.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  std::vector<int> d2 = {2};
  CHECK(f.partial(d2) ==
        doctest::Approx(0.35355339059327373).epsilon(1e-14));
}

TEST_CASE("geometric series division recovers multinomial coefficients") {
  // 1/(1-x1-x2): the Taylor coefficient of x1^a x2^b is binom(a+b, a), so
  // the mixed partial equals (a+b)!.
  auto L = JetLayout::get(2, 6);
  Jet x1 = Jet::variable(L, 0, 0.0);
  Jet x2 = Jet::variable(L, 1, 0.0);
  Jet f = 1.0 / (1.0 - x1 - x2);
  std::vector<int> d23 = {2, 3};
  CHECK(f.partial(d23) == doctest::Approx(120.0).epsilon(1e-12));
  std::vector<int> d33 = {3, 3};
  CHECK(f.partial(d33) == doctest::Approx(720.0).epsilon(1e-12));
}

TEST_CASE("product rule holds exactly on polynomial jets") {
  auto L = JetLayout::get(2, 5);
  Jet x1 = Jet::variable(L, 0, 0.4);
  Jet x2 = Jet::variable(L, 1, -1.2);
  Jet f = x1 * x1 * x2 + 3.0 * x2 - 1.5;
  Jet g = x2 * x2 - x1 * 0.5 + 2.0;
  Jet fg = f * g;
  // Leibniz for d^2/dx1 dx2.
  std::vector<int> d11 = {1, 1}, d10 = {1, 0}, d01 = {0, 1}, d00 = {0, 0};
  const double expect = f.partial(d11) * g.value() +
                        f.partial(d10) * g.partial(d01) +
                        f.partial(d01) * g.partial(d10) +
                        f.value() * g.partial(d11);
  CHECK(fg.partial(d11) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("division, sqrt, exp, log, sin, cos satisfy ring identities") {
  auto L = JetLayout::get(3, 6);
  Jet x1 = Jet::variable(L, 0, 0.3);
  Jet x2 = Jet::variable(L, 1, -0.4);
  Jet x3 = Jet::variable(L, 2, 0.9);
  Jet f = 1.0 + x1 * x1 + sin(x2) * 0.3 + x3;
  Jet g = 2.0 + x1 * x3 - x2;

  auto max_coeff_err = [&](const Jet& a, const Jet& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.coeffs().size(); ++i)
      m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    return m;
  };

  CHECK(max_coeff_err((f / g) * g, f) < 1e-13);
  CHECK(max_coeff_err(sqrt(f) * sqrt(f), f) < 1e-13);
  CHECK(max_coeff_err(log(exp(f)), f) < 1e-12);
  CHECK(max_coeff_err(sin(f) * sin(f) + cos(f) * cos(f), Jet(1.0) + 0.0 * f) <
        1e-13);
  CHECK(max_coeff_err(pow(g, 3u), g * g * g) < 1e-13);
}

TEST_CASE("order-3 mixed partial agrees with the finite-difference oracle") {
  auto L = JetLayout::get(3, 3);
  const std::vector<double> x0 = {0.3, -0.4, 0.2};
  auto eval = [](const std::vector<double>& p) {
    return std::exp(std::sin(p[0]) + p[1] * p[1] / (1.0 + p[2] * p[2]));
  };
  Jet x1 = Jet::variable(L, 0, x0[0]);
  Jet x2 = Jet::variable(L, 1, x0[1]);
  Jet x3 = Jet::variable(L, 2, x0[2]);
  Jet h = exp(sin(x1) + x2 * x2 / (1.0 + x3 * x3));

  std::vector<int> d111 = {1, 1, 1};
  const double oracle = rlab_test::fd_partial(eval, x0, d111, 5e-3);
  CHECK(h.partial(d111) == doctest::Approx(oracle).epsilon(1e-6));
  std::vector<int> d210 = {2, 1, 0};
  const double oracle2 = rlab_test::fd_partial(eval, x0, d210, 5e-3);
  CHECK(h.partial(d210) == doctest::Approx(oracle2).epsilon(1e-6));
}

TEST_CASE("derivative jets drop one order and match coefficient shifts") {
  auto L = JetLayout::get(2, 4);
  Jet x1 = Jet::variable(L, 0, 0.5);
  Jet x2 = Jet::variable(L, 1, 0.25);
  Jet f = exp(x1 * x2) + x1 * x1 * x2;
  Jet fx = f.deriv(0);
  CHECK(fx.order() == 3);
  std::vector<int> d10 = {1, 0}, d21 = {2, 1}, d11 = {1, 1};
  CHECK(fx.value() == doctest::Approx(f.partial(d10)).epsilon(1e-14));
  CHECK(fx.partial(d11) == doctest::Approx(f.partial(d21)).epsilon(1e-13));
}

TEST_CASE("nested jets reproduce flat-jet second derivatives") {
  // f(u, v) = sqrt(1 + u^2 + v^2) * exp(0.2 u); outer order-2 jets in v on
  // top of inner order-2 jets in u must match one flat order-4 pass.
  const double u0 = 0.6, v0 = -0.3;

  auto flatL = JetLayout::get(2, 4);
  Jet u = Jet::variable(flatL, 0, u0);
  Jet v = Jet::variable(flatL, 1, v0);
  Jet f = sqrt(1.0 + u * u + v * v) * exp(0.2 * u);

  auto innerL = JetLayout::get(1, 2);
  auto outerL = JetLayout::get(1, 2);
  Jet iu = Jet::variable(innerL, 0, u0);
  Jet2 nu = Jet2(iu);                       // inner-seeded, outer-constant
  Jet2 nv = Jet2::variable(outerL, 0, Jet(v0));  // outer-seeded
  Jet2 nf = sqrt(1.0 + nu * nu + nv * nv) * exp(0.2 * nu);

  std::vector<int> d2 = {2}, d1 = {1};
  std::vector<int> d22 = {2, 2}, d20 = {2, 0}, d02 = {0, 2}, d11 = {1, 1};
  CHECK(nf.value().value() == doctest::Approx(f.value()).epsilon(1e-14));
  // d^2/du^2 lives in the inner jet of the outer value coefficient.
  CHECK(nf.value().partial(d2) ==
        doctest::Approx(f.partial(d20)).epsilon(1e-13));
  // d^2/dv^2 lives in the outer coefficients' value parts.
  CHECK(nf.partial(d2).value() ==
        doctest::Approx(f.partial(d02)).epsilon(1e-13));
  // Mixed derivative crosses both levels.
  CHECK(nf.partial(d1).partial(d1) ==
        doctest::Approx(f.partial(d11)).epsilon(1e-13));
  CHECK(nf.partial(d2).partial(d2) ==
        doctest::Approx(f.partial(d22)).epsilon(1e-12));
}

TEST_CASE("domain violations throw") {
  Jet x = seed1(-2.0, 3);
  CHECK_THROWS_AS((void)sqrt(x), std::domain_error);
  CHECK_THROWS_AS((void)log(x), std::domain_error);
  Jet z = seed1(0.0, 3);
  CHECK_THROWS_AS((void)(Jet(1.0) / z), std::domain_error);
}

TEST_SUITE_END();
