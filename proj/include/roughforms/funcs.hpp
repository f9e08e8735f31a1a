#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "roughforms/germ.hpp"

namespace roughforms {

// Minimal arithmetic expression AST: literals; variables x1..x8 (x, y, z
// alias x1..x3); + - * / ^ with ^ right-associative; unary minus; calls
// sin, cos, exp, log, abs, sqrt, min, max, pow, weierstrass(a, b, K, arg).
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { number, variable, unary_minus, binary, call };
  Kind kind = Kind::number;
  double number = 0.0;
  int var_index = 0;  // zero-based coordinate
  char op = 0;        // + - * / ^
  std::string callee;
  std::vector<ExprPtr> args;
};

// Errors carry zero-based byte offsets into the input text.
ExprPtr parse_expr(const std::string& text);

double eval_expr(const Expr& e, const Point& p);

// Emits a string that parses back to the same tree.
std::string pretty_print(const Expr& e);

// Highest zero-based variable index used, or -1 when closed.
int max_variable(const Expr& e);

// Parse and bind to an ambient dimension; DimensionError if a variable
// exceeds it.
Scalar0 scalar_from_expr(const std::string& text, int dim);

// W(t) = sum_{k=0}^{terms-1} a^k cos(b^k pi t).
double weierstrass(double a, double b, int terms, double t);

// W(xi . p). Holder exponent -ln a / ln b when a b > 1, else 1.
Scalar0 weierstrass_scalar(double a, double b, int terms,
                           const std::vector<double>& xi);

struct CatalogEntry {
  std::string name;
  Scalar0 value;
};

// Named smooth test functions on R^dim: coordinates, polynomials,
// trigonometric and exponential compositions.
std::vector<CatalogEntry> function_catalog(int dim);

struct HolderSample {
  double alpha = 0.0;
  double constant = 0.0;  // sup |f(q) - f(p)| / |q - p|^alpha over the plan
};

// Difference-quotient table along [a, b]: pairs at separations 2^-s for
// s = 0..scales-1, sup per exponent.
std::vector<HolderSample> holder_probe(const Scalar0& f, const Point& a,
                                       const Point& b,
                                       const std::vector<double>& alphas,
                                       int scales = 16,
                                       int pairs_per_scale = 64,
                                       std::uint64_t seed = 0);

}  // namespace roughforms
