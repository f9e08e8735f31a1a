#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "roughforms/funcs.hpp"

using namespace roughforms;

namespace {

double eval_at(const std::string& text, std::initializer_list<double> coords) {
  return eval_expr(*parse_expr(text), Point(coords));
}

// Random well-formed expression tree for round-trip checks.
ExprPtr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 4);
  auto node = std::make_shared<Expr>();
  switch (pick(rng)) {
    case 0: {
      static const double nums[] = {0.0, 1.0, 2.0, 0.25, 3.5, 17.0, 0.001};
      node->kind = Expr::Kind::number;
      node->number = nums[rng() % 7];
      break;
    }
    case 1:
      node->kind = Expr::Kind::variable;
      node->var_index = static_cast<int>(rng() % 3);
      break;
    case 2:
      node->kind = Expr::Kind::unary_minus;
      node->args = {random_expr(rng, depth - 1)};
      break;
    case 3: {
      static const char ops[] = {'+', '-', '*', '/', '^'};
      node->kind = Expr::Kind::binary;
      node->op = ops[rng() % 5];
      node->args = {random_expr(rng, depth - 1), random_expr(rng, depth - 1)};
      break;
    }
    default: {
      static const char* unary[] = {"sin", "cos", "exp", "abs"};
      static const char* binary[] = {"min", "max", "pow"};
      node->kind = Expr::Kind::call;
      if (rng() % 2) {
        node->callee = unary[rng() % 4];
        node->args = {random_expr(rng, depth - 1)};
      } else {
        node->callee = binary[rng() % 3];
        node->args = {random_expr(rng, depth - 1),
                      random_expr(rng, depth - 1)};
      }
      break;
    }
  }
  return node;
}

}  // namespace

TEST_CASE("expression parsing and evaluation") {
  CHECK(eval_at("1+2*3", {0.0}) == 7.0);
  CHECK(eval_at("(1+2)*3", {0.0}) == 9.0);
  CHECK(eval_at("2^3^2", {0.0}) == 512.0);  // right associative
  CHECK(eval_at("2^-3", {0.0}) == 0.125);
  CHECK(eval_at("-x^2", {3.0}) == -9.0);
  CHECK(eval_at("x1*x2", {2.0, 3.0}) == 6.0);
  CHECK(eval_at("x + y + z", {1.0, 2.0, 4.0}) == 7.0);
  CHECK(eval_at("1e-3 + 2.5E+2", {0.0}) == doctest::Approx(250.001));
  CHECK(eval_at("min(3, x)", {5.0}) == 3.0);
  CHECK(eval_at("max(1, x)", {2.0}) == 2.0);
  CHECK(eval_at("pow(2, 10)", {0.0}) == 1024.0);
  CHECK(eval_at("abs(-4)", {0.0}) == 4.0);
  CHECK(eval_at("sqrt(x)*sqrt(x)", {2.0}) == doctest::Approx(2.0));
  CHECK(eval_at("7/2/2", {0.0}) == 1.75);  // left associative
  CHECK(eval_at("1 - 2 - 3", {0.0}) == -4.0);
}

TEST_CASE("parse errors carry byte offsets") {
  try {
    parse_expr("x +");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 3);
  }
  try {
    parse_expr("foo(1)");
    FAIL("expected UnknownIdentifierError");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.position == 0);
    CHECK(e.name == "foo");
  }
  try {
    parse_expr("1 + qbar");
    FAIL("expected UnknownIdentifierError");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.position == 4);
    CHECK(e.name == "qbar");
  }
  try {
    parse_expr("sin(1, 2)");
    FAIL("expected ArityError");
  } catch (const ArityError& e) {
    CHECK(e.name == "sin");
    CHECK(e.got == 2);
    CHECK(e.want == 1);
  }
  CHECK_THROWS_AS(parse_expr("pow(2)"), ArityError);
  CHECK_THROWS_AS(parse_expr("(1+2"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("1 2"), SyntaxError);
  CHECK_THROWS_AS(parse_expr(""), SyntaxError);
  CHECK_THROWS_AS(parse_expr("*3"), SyntaxError);
}

TEST_CASE("pretty printing round-trips") {
  // Hand-picked precedence corners.
  for (const char* text :
       {"(1+2)*3", "1+2*3", "2^3^2", "(2^3)^2", "-(x^2)", "-x^2", "(-x)^2",
        "x-(y-z)", "x-y-z", "x/(y*z)", "min(x, max(y, z))",
        "weierstrass(0.5, 3, 12, x)", "pow(x, 2)"}) {
    const ExprPtr e = parse_expr(text);
    const std::string printed = pretty_print(*e);
    const ExprPtr back = parse_expr(printed);
    CHECK(pretty_print(*back) == printed);
    const Point p{0.7, 0.3, 0.9};
    CHECK(eval_expr(*e, p) == doctest::Approx(eval_expr(*back, p)));
  }
  // 200 random trees: print, reparse, print again, compare.
  std::mt19937_64 rng(20260816);
  for (int i = 0; i < 200; ++i) {
    const ExprPtr e = random_expr(rng, 4);
    const std::string printed = pretty_print(*e);
    const ExprPtr back = parse_expr(printed);
    REQUIRE(pretty_print(*back) == printed);
  }
}

TEST_CASE("domain errors at evaluation time") {
  CHECK_THROWS_AS(eval_at("log(0)", {0.0}), DomainError);
  CHECK_THROWS_AS(eval_at("log(-1)", {0.0}), DomainError);
  CHECK_THROWS_AS(eval_at("sqrt(-1)", {0.0}), DomainError);
  CHECK_THROWS_AS(eval_at("pow(-2, 0.5)", {0.0}), DomainError);
  CHECK_THROWS_AS(eval_at("(-2)^0.5", {0.0}), DomainError);
  CHECK(eval_at("(-2)^3", {0.0}) == -8.0);  // integer exponents are fine
  CHECK_THROWS_AS(eval_at("weierstrass(1.5, 3, 10, x)", {0.5}), DomainError);
  CHECK_THROWS_AS(eval_at("weierstrass(0.5, 0.5, 10, x)", {0.5}), DomainError);
  CHECK_THROWS_AS(eval_at("weierstrass(0.5, 3, 0, x)", {0.5}), DomainError);
  CHECK_THROWS_AS(eval_at("weierstrass(0.5, 3, 5000, x)", {0.5}), DomainError);
  CHECK(std::isinf(eval_at("1/0", {0.0})));  // IEEE semantics, not an error
}

TEST_CASE("weierstrass sums and their tail bound") {
  // W(t) = sum a^k cos(b^k pi t); truncation error <= a^K / (1 - a).
  const double a = 0.5, b = 3.0;
  for (double t : {0.0, 0.1, 0.37, 0.5, 0.92, 1.0}) {
    const double w20 = weierstrass(a, b, 20, t);
    const double w30 = weierstrass(a, b, 30, t);
    CHECK(std::abs(w20 - w30) <= std::pow(a, 20) / (1.0 - a) + 1e-15);
  }
  CHECK(weierstrass(a, b, 25, 0.0) ==
        doctest::Approx(2.0 * (1.0 - std::pow(a, 25))).epsilon(1e-12));
}

TEST_CASE("weierstrass scalars expose verified regularity metadata") {
  const Scalar0 w = weierstrass_scalar(0.5, 3.0, 30, {1.0});
  CHECK(w.holder_alpha == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(w.holder_const > 0.0);
  // ab <= 1: the series is Lipschitz and the metadata says so.
  const Scalar0 tame = weierstrass_scalar(0.5, 1.5, 30, {1.0});
  CHECK(tame.holder_alpha == 1.0);

  // The measured difference quotients respect the declared pair, and the
  // constant blows up for exponents above the true one.
  const std::vector<HolderSample> table = holder_probe(
      w, Point{0.0}, Point{1.0}, {0.4, w.holder_alpha, 0.9}, 16, 64, 7);
  REQUIRE(table.size() == 3);
  CHECK(table[1].constant <= w.holder_const + 1e-9);
  CHECK(table[0].constant < 1e3);
  CHECK(table[2].constant > 3.0 * table[0].constant);
}

TEST_CASE("scalars bind to an ambient dimension") {
  const Scalar0 f = scalar_from_expr("x1 + 2*x2", 2);
  CHECK(f(Point{1.0, 3.0}) == 7.0);
  CHECK_THROWS_AS(scalar_from_expr("x3", 2), DimensionError);
  CHECK(max_variable(*parse_expr("x1 + x7")) == 6);
  CHECK(max_variable(*parse_expr("3.5")) == -1);
}

TEST_CASE("the catalog provides named smooth functions") {
  for (int dim : {1, 2}) {
    const std::vector<CatalogEntry> cat = function_catalog(dim);
    REQUIRE(cat.size() >= 4);
    std::set<std::string> names;
    Point p = dim == 1 ? Point{0.3} : Point{0.3, 0.6};
    for (const CatalogEntry& e : cat) {
      CHECK(names.insert(e.name).second);  // unique names
      CHECK(std::isfinite(e.value(p)));
    }
  }
  CHECK(function_catalog(2).size() > function_catalog(1).size());
}
