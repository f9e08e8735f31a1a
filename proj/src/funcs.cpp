#include "roughforms/funcs.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

namespace roughforms {

namespace {

int function_arity(const std::string& name) {
  if (name == "sin" || name == "cos" || name == "exp" || name == "log" ||
      name == "abs" || name == "sqrt")
    return 1;
  if (name == "min" || name == "max" || name == "pow") return 2;
  if (name == "weierstrass") return 4;
  return -1;
}

int variable_index(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '8')
    return name[1] - '1';
  return -1;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr run() {
    ExprPtr e = sum();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError(pos_, "end of input",
                        "unexpected trailing input at offset " +
                            std::to_string(pos_));
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr sum() {
    ExprPtr left = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return left;
      ++pos_;
      left = binary(c, left, term());
    }
  }

  ExprPtr term() {
    ExprPtr left = unary();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return left;
      ++pos_;
      left = binary(c, left, unary());
    }
  }

  ExprPtr unary() {
    if (peek() == '-') {
      ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::unary_minus;
      e->args.push_back(unary());
      return e;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (peek() == '^') {
      ++pos_;
      return binary('^', base, unary());
    }
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= text_.size())
      throw SyntaxError(pos_, "operand",
                        "expected an operand at offset " + std::to_string(pos_));
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (peek() != ')')
        throw SyntaxError(pos_, ")",
                          "expected ')' at offset " + std::to_string(pos_));
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    throw SyntaxError(pos_, "operand",
                      "expected an operand at offset " + std::to_string(pos_));
  }

  ExprPtr number() {
    const char* start = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start)
      throw SyntaxError(pos_, "number",
                        "malformed number at offset " + std::to_string(pos_));
    pos_ += static_cast<std::size_t>(end - start);
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::number;
    e->number = v;
    return e;
  }

  ExprPtr ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    const int var = variable_index(name);
    if (peek() != '(') {
      if (var >= 0) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::variable;
        e->var_index = var;
        return e;
      }
      throw UnknownIdentifierError(start, name,
                                   "unknown identifier '" + name +
                                       "' at offset " + std::to_string(start));
    }
    const int arity = function_arity(name);
    if (arity < 0)
      throw UnknownIdentifierError(start, name,
                                   "unknown function '" + name +
                                       "' at offset " + std::to_string(start));
    ++pos_;  // consume '('
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::call;
    e->callee = name;
    if (peek() != ')') {
      e->args.push_back(sum());
      while (peek() == ',') {
        ++pos_;
        e->args.push_back(sum());
      }
    }
    if (peek() != ')')
      throw SyntaxError(pos_, ")",
                        "expected ')' at offset " + std::to_string(pos_));
    ++pos_;
    if (static_cast<int>(e->args.size()) != arity)
      throw ArityError(name, static_cast<int>(e->args.size()), arity,
                       "'" + name + "' takes " + std::to_string(arity) +
                           " arguments, got " + std::to_string(e->args.size()));
    return e;
  }

  static ExprPtr binary(char op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::binary;
    e->op = op;
    e->args.push_back(std::move(a));
    e->args.push_back(std::move(b));
    return e;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).run(); }

double eval_expr(const Expr& e, const Point& p) {
  switch (e.kind) {
    case Expr::Kind::number:
      return e.number;
    case Expr::Kind::variable:
      if (e.var_index >= p.dim)
        throw DimensionError("variable exceeds the point dimension");
      return p[e.var_index];
    case Expr::Kind::unary_minus:
      return -eval_expr(*e.args[0], p);
    case Expr::Kind::binary: {
      const double a = eval_expr(*e.args[0], p);
      const double b = eval_expr(*e.args[1], p);
      switch (e.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^':
          if (a < 0.0 && b != std::floor(b))
            throw DomainError("negative base with fractional exponent");
          return std::pow(a, b);
      }
      throw ParameterError("unknown operator");
    }
    case Expr::Kind::call: {
      if (e.callee == "weierstrass") {
        const double a = eval_expr(*e.args[0], p);
        const double b = eval_expr(*e.args[1], p);
        const double k = eval_expr(*e.args[2], p);
        const double t = eval_expr(*e.args[3], p);
        return weierstrass(a, b, static_cast<int>(std::llround(k)), t);
      }
      const double a = eval_expr(*e.args[0], p);
      if (e.callee == "sin") return std::sin(a);
      if (e.callee == "cos") return std::cos(a);
      if (e.callee == "exp") return std::exp(a);
      if (e.callee == "abs") return std::abs(a);
      if (e.callee == "log") {
        if (a <= 0.0) throw DomainError("log of a nonpositive value");
        return std::log(a);
      }
      if (e.callee == "sqrt") {
        if (a < 0.0) throw DomainError("sqrt of a negative value");
        return std::sqrt(a);
      }
      const double b = eval_expr(*e.args[1], p);
      if (e.callee == "min") return std::min(a, b);
      if (e.callee == "max") return std::max(a, b);
      if (e.callee == "pow") {
        if (a < 0.0 && b != std::floor(b))
          throw DomainError("negative base with fractional exponent");
        return std::pow(a, b);
      }
      throw ParameterError("unknown function");
    }
  }
  throw ParameterError("malformed expression node");
}

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::binary:
      if (e.op == '+' || e.op == '-') return 1;
      if (e.op == '*' || e.op == '/') return 2;
      return 4;  // ^
    case Expr::Kind::unary_minus:
      return 3;
    default:
      return 5;
  }
}

std::string print_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_rec(const Expr& e, int parent, std::string& out) {
  const int prec = precedence(e);
  const bool parens = prec < parent;
  if (parens) out += '(';
  switch (e.kind) {
    case Expr::Kind::number:
      out += print_number(e.number);
      break;
    case Expr::Kind::variable:
      out += "x" + std::to_string(e.var_index + 1);
      break;
    case Expr::Kind::unary_minus:
      out += '-';
      print_rec(*e.args[0], prec, out);
      break;
    case Expr::Kind::binary:
      if (e.op == '^') {
        print_rec(*e.args[0], 5, out);
        out += '^';
        print_rec(*e.args[1], 3, out);
      } else {
        print_rec(*e.args[0], prec, out);
        out += e.op;
        print_rec(*e.args[1], prec + 1, out);
      }
      break;
    case Expr::Kind::call:
      out += e.callee;
      out += '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ',';
        print_rec(*e.args[i], 0, out);
      }
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::string out;
  print_rec(e, 0, out);
  return out;
}

int max_variable(const Expr& e) {
  int best = e.kind == Expr::Kind::variable ? e.var_index : -1;
  for (const ExprPtr& a : e.args) best = std::max(best, max_variable(*a));
  return best;
}

Scalar0 scalar_from_expr(const std::string& text, int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw DimensionError("ambient dimension must be between 1 and 8");
  ExprPtr e = parse_expr(text);
  if (max_variable(*e) >= dim)
    throw DimensionError("expression uses a variable beyond the ambient dimension");
  Scalar0 f;
  f.label = pretty_print(*e);
  f.eval = [e](const Point& p) { return eval_expr(*e, p); };
  return f;
}

double weierstrass(double a, double b, int terms, double t) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("weierstrass needs a in (0, 1)");
  if (!(b > 1.0)) throw DomainError("weierstrass needs b > 1");
  if (terms < 1 || terms > 1000)
    throw DomainError("weierstrass needs between 1 and 1000 terms");
  double sum = 0.0;
  double ak = 1.0;
  double bk = 1.0;
  constexpr double pi = 3.14159265358979323846;
  for (int k = 0; k < terms; ++k) {
    sum += ak * std::cos(bk * pi * t);
    ak *= a;
    bk *= b;
  }
  return sum;
}

Scalar0 weierstrass_scalar(double a, double b, int terms,
                           const std::vector<double>& xi) {
  if (xi.empty() || xi.size() > static_cast<std::size_t>(kMaxDim))
    throw ParameterError("direction must have 1 to 8 components");
  Scalar0 f;
  f.label = "W(" + std::to_string(a) + "," + std::to_string(b) + ")";
  const double ab = a * b;
  f.holder_alpha = ab > 1.0 ? -std::log(a) / std::log(b) : 1.0;
  // Classical two-regime bound on |W(s) - W(t)|.
  f.holder_const =
      ab > 1.0 ? 3.141592653589793 * ab / (ab - 1.0) + 2.0 / (1.0 - a) : 2.0;
  f.eval = [a, b, terms, xi](const Point& p) {
    double t = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i)
      t += xi[i] * p[static_cast<int>(i)];
    return weierstrass(a, b, terms, t);
  };
  return f;
}

std::vector<CatalogEntry> function_catalog(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw DimensionError("ambient dimension must be between 1 and 8");
  std::vector<CatalogEntry> entries;
  const auto add = [&entries, dim](const std::string& text) {
    CatalogEntry e;
    e.name = text;
    e.value = scalar_from_expr(text, dim);
    e.value.holder_alpha = 1.0;
    e.value.holder_const = 0.0;  // unknown; probe if needed
    entries.push_back(e);
  };
  add("1");
  for (int i = 1; i <= dim; ++i) {
    const std::string xi = "x" + std::to_string(i);
    add(xi);
    add(xi + "^2");
    add("sin(" + xi + ")");
    add("cos(2*" + xi + ")");
    add("exp(" + xi + "/2)");
  }
  if (dim >= 2) {
    add("x1*x2");
    add("sin(x1+x2)");
    add("x1^2-x2");
  }
  return entries;
}

std::vector<HolderSample> holder_probe(const Scalar0& f, const Point& a,
                                       const Point& b,
                                       const std::vector<double>& alphas,
                                       int scales, int pairs_per_scale,
                                       std::uint64_t seed) {
  if (a.dim != b.dim) throw DimensionError("interval endpoints differ in dimension");
  std::vector<HolderSample> table;
  table.reserve(alphas.size());
  const double len = dist(a, b);
  if (len == 0.0) {
    for (double alpha : alphas) table.push_back({alpha, 0.0});
    return table;
  }
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 99ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> gaps;  // (separation, |delta f|)
  for (int s = 0; s < scales; ++s) {
    const double h = std::pow(0.5, s);
    for (int i = 0; i < pairs_per_scale; ++i) {
      const double t = u(rng) * (1.0 - h);
      const Point p = lerp(a, b, t);
      const Point q = lerp(a, b, t + h);
      gaps.emplace_back(h * len, std::abs(f(q) - f(p)));
    }
  }
  for (double alpha : alphas) {
    double best = 0.0;
    for (const auto& [d, df] : gaps) {
      if (d > 0.0) best = std::max(best, df / std::pow(d, alpha));
    }
    table.push_back({alpha, best});
  }
  return table;
}

}  // namespace roughforms
