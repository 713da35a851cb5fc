#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "rlab/expr.hpp"
#include "rlab/jet.hpp"
#include "support/finite_diff.hpp"

namespace {

double eval_at(const rlab::ExprPtr& e, std::vector<double> x,
               std::vector<double> p = {}) {
  return rlab::eval<double>(*e, std::span<const double>(x),
                            std::span<const double>(p));
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("frozen values") {
  auto e = rlab::parse_expression("sqrt(x1^2 + x2^2) + 0.3*x1", 2, {});
  CHECK(eval_at(e, {3.0, 4.0}) == doctest::Approx(5.9).epsilon(1e-15));

  CHECK(eval_at(rlab::parse_expression("exp(log(x1))", 1, {}), {2.5}) ==
        doctest::Approx(2.5).epsilon(1e-15));
  CHECK(eval_at(rlab::parse_expression("sin(x1)^2 + cos(x1)^2", 1, {}), {0.7}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // Unary minus binds looser than '^'.
  CHECK(eval_at(rlab::parse_expression("-x1^2", 1, {}), {3.0}) == -9.0);
  // Left-associative subtraction and division.
  CHECK(eval_at(rlab::parse_expression("8 - 3 - 2", 1, {}), {0.0}) == 3.0);
  CHECK(eval_at(rlab::parse_expression("8/4/2", 1, {}), {0.0}) == 1.0);
  CHECK(eval_at(rlab::parse_expression("2*(-3) + 1e2", 1, {}), {0.0}) == 94.0);
}

TEST_CASE("named parameters") {
  const std::vector<std::string> names = {"k", "c"};
  auto e = rlab::parse_expression("k*x1 + c^2", 1, names);
  CHECK(eval_at(e, {3.0}, {2.0, 5.0}) == 31.0);
}

TEST_CASE("round trip through pretty_print") {
  const std::vector<std::string> samples = {
      "x1 + x2*x3",
      "(x1 + x2)*x3",
      "x1 - (x2 - x3)",
      "x1/(x2/x3)",
      "-x1^2 + (-x2)^2",
      "sqrt(1 + x1^2)/(1 - x2*x3)",
      "exp(2*(0.2*x1))*sin(x2 + cos(x3))",
      "1/(1 - (x1^2 + x2^2))^2",
  };
  std::mt19937 rng(20260818);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (const auto& s : samples) {
    CAPTURE(s);
    auto e1 = rlab::parse_expression(s, 3, {});
    const std::string printed = rlab::pretty_print(e1);
    auto e2 = rlab::parse_expression(printed, 3, {});
    // Printing is idempotent...
    CHECK(rlab::pretty_print(e2) == printed);
    // ...and evaluation-preserving, bit for bit.
    for (int k = 0; k < 5; ++k) {
      std::vector<double> x = {u(rng), u(rng), u(rng)};
      CHECK(eval_at(e1, x) == eval_at(e2, x));
    }
  }
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(rlab::parse_expression("x1 + * 2", 2, {}), rlab::ParseError);
  try {
    rlab::parse_expression("x1 + * 2", 2, {});
  } catch (const rlab::ParseError& err) {
    CHECK(err.offset() == 5);
    CHECK(std::string(err.what()).find("at byte 5") != std::string::npos);
  }

  // Trailing garbage is rejected, not silently dropped.
  CHECK_THROWS_AS(rlab::parse_expression("x1 + 1)", 2, {}), rlab::ParseError);

  // Coordinates out of range for the declared dimension.
  CHECK_THROWS_AS(rlab::parse_expression("x3", 2, {}), rlab::ParseError);
  // Unknown identifiers name themselves.
  try {
    rlab::parse_expression("foo + 1", 2, {});
    CHECK(false);
  } catch (const rlab::ParseError& err) {
    CHECK(std::string(err.what()).find("foo") != std::string::npos);
  }
}

TEST_CASE("fractional exponents point at sqrt") {
  try {
    rlab::parse_expression("x1^0.5", 1, {});
    CHECK(false);
  } catch (const rlab::ParseError& err) {
    CHECK(std::string(err.what()).find("sqrt") != std::string::npos);
  }
}

TEST_CASE("domain errors name the offending subexpression") {
  auto e = rlab::parse_expression("1/(x1 - 1)", 1, {});
  CHECK_THROWS_AS(eval_at(e, {1.0}), rlab::EvalDomainError);
  try {
    eval_at(e, {1.0});
  } catch (const rlab::EvalDomainError& err) {
    CHECK(std::string(err.what()).find("x1 - 1") != std::string::npos);
  }
  CHECK_THROWS_AS(eval_at(rlab::parse_expression("sqrt(-x1)", 1, {}), {2.0}),
                  rlab::EvalDomainError);
  CHECK_THROWS_AS(eval_at(rlab::parse_expression("log(x1 - 3)", 1, {}), {1.0}),
                  rlab::EvalDomainError);
}

TEST_CASE("jet evaluation matches finite differences") {
  auto e = rlab::parse_expression("exp(sin(x1) + x2^2/(1 + x1^2))", 2, {});
  const std::vector<double> x0 = {0.4, -0.7};

  auto fn = [&](const std::vector<double>& x) {
    return rlab::eval<double>(*e, std::span<const double>(x),
                              std::span<const double>{});
  };

  auto layout = rlab::JetLayout::get(2, 3);
  auto jets = rlab::seed_jets<double>(layout, std::span<const double>(x0));
  rlab::Jet j = rlab::eval<rlab::Jet>(*e, std::span<const rlab::Jet>(jets),
                                      std::span<const double>{});

  const std::vector<std::vector<int>> orders = {
      {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}, {0, 3}};
  for (const auto& mi : orders) {
    CAPTURE(mi[0]);
    CAPTURE(mi[1]);
    const double exact = j.partial(mi);
    const double approx = rlab_test::fd_partial(fn, x0, mi, 1e-2);
    CHECK(exact == doctest::Approx(approx).epsilon(1e-7));
  }
}

}  // TEST_SUITE
