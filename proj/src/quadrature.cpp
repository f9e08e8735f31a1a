#include "roughforms/quadrature.hpp"

#include <cmath>

#include "roughforms/errors.hpp"

namespace roughforms {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0)
    throw OracleError("quadrature depth limit reached before tolerance");
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadOptions& opts) {
  if (opts.abs_tol <= 0.0) throw ParameterError("quadrature tolerance must be > 0");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, opts.abs_tol,
                     opts.max_depth);
}

double line_form_integral(const Scalar0& f, const Scalar0& g,
                          const Simplex& seg, const QuadOptions& opts) {
  if (seg.degree != 1) throw DegreeError("line integral expects a segment");
  const Point p0 = seg.vertex(0);
  const Point p1 = seg.vertex(1);
  constexpr double h = 1e-5;
  const auto integrand = [&](double t) {
    const Point c = lerp(p0, p1, t);
    const double dg =
        (g(lerp(p0, p1, t + h)) - g(lerp(p0, p1, t - h))) / (2.0 * h);
    return f(c) * dg;
  };
  return adaptive_simpson(integrand, 0.0, 1.0, opts);
}

namespace {

// Degree-5 seven-point triangle rule (barycentric points and weights
// normalized to sum to 1).
struct RulePoint {
  double w, l1, l2, l3;
};

constexpr RulePoint kRule7[7] = {
    {0.225, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
    {0.132394152788506, 0.059715871789770, 0.470142064105115, 0.470142064105115},
    {0.132394152788506, 0.470142064105115, 0.059715871789770, 0.470142064105115},
    {0.132394152788506, 0.470142064105115, 0.470142064105115, 0.059715871789770},
    {0.125939180544827, 0.797426985353087, 0.101286507323456, 0.101286507323456},
    {0.125939180544827, 0.101286507323456, 0.797426985353087, 0.101286507323456},
    {0.125939180544827, 0.101286507323456, 0.101286507323456, 0.797426985353087},
};

struct Param2 {
  double a, b;
};

// Integrates G over a parameter-space triangle (unit measure = its area).
class TriangleIntegrator {
 public:
  TriangleIntegrator(std::function<double(double, double)> G,
                     const QuadOptions& opts)
      : g_(std::move(G)), opts_(opts) {}

  double run(Param2 A, Param2 B, Param2 C) {
    cells_ = 0;
    return refine(A, B, C, rule(A, B, C), opts_.abs_tol, opts_.max_depth);
  }

 private:
  static double area(Param2 A, Param2 B, Param2 C) {
    return 0.5 * std::abs((B.a - A.a) * (C.b - A.b) -
                          (C.a - A.a) * (B.b - A.b));
  }

  double rule(Param2 A, Param2 B, Param2 C) {
    ++cells_;
    if (cells_ > opts_.max_cells)
      throw OracleError("quadrature cell budget exhausted before tolerance");
    double s = 0.0;
    for (const RulePoint& p : kRule7) {
      const double a = p.l1 * A.a + p.l2 * B.a + p.l3 * C.a;
      const double b = p.l1 * A.b + p.l2 * B.b + p.l3 * C.b;
      s += p.w * g_(a, b);
    }
    return s * area(A, B, C);
  }

  double refine(Param2 A, Param2 B, Param2 C, double whole, double tol,
                int depth) {
    const Param2 AB{0.5 * (A.a + B.a), 0.5 * (A.b + B.b)};
    const Param2 BC{0.5 * (B.a + C.a), 0.5 * (B.b + C.b)};
    const Param2 CA{0.5 * (C.a + A.a), 0.5 * (C.b + A.b)};
    const double q0 = rule(A, AB, CA);
    const double q1 = rule(AB, B, BC);
    const double q2 = rule(CA, BC, C);
    const double q3 = rule(AB, BC, CA);
    const double sum = (q0 + q1) + (q2 + q3);
    if (std::abs(sum - whole) <= tol) return sum;
    if (depth <= 0)
      throw OracleError("quadrature depth limit reached before tolerance");
    const double ct = 0.25 * tol;
    return (refine(A, AB, CA, q0, ct, depth - 1) +
            refine(AB, B, BC, q1, ct, depth - 1)) +
           (refine(CA, BC, C, q2, ct, depth - 1) +
            refine(AB, BC, CA, q3, ct, depth - 1));
  }

  std::function<double(double, double)> g_;
  QuadOptions opts_;
  long long cells_ = 0;
};

}  // namespace

double triangle_form_integral(const std::function<double(const Point&)>& F,
                              const Simplex& tri, int i, int j,
                              const QuadOptions& opts) {
  if (tri.degree != 2) throw DegreeError("triangle integral expects a triangle");
  if (i < 0 || j < 0 || i >= tri.dim() || j >= tri.dim())
    throw DimensionError("form component index out of range");
  const Point p0 = tri.vertex(0);
  const Point u = tri.vertex(1) - p0;
  const Point v = tri.vertex(2) - p0;
  const double jac = u[i] * v[j] - u[j] * v[i];
  if (jac == 0.0) return 0.0;
  TriangleIntegrator integ(
      [&](double a, double b) { return F(p0 + a * u + b * v); }, opts);
  // dx^i wedge dx^j pulls back to jac * da db on the reference triangle.
  return jac * integ.run({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
}

double triangle_pair_form_integral(const Scalar0& f, const Scalar0& g1,
                                   const Scalar0& g2, const Simplex& tri,
                                   const QuadOptions& opts) {
  if (tri.degree != 2) throw DegreeError("triangle integral expects a triangle");
  const Point p0 = tri.vertex(0);
  const Point u = tri.vertex(1) - p0;
  const Point v = tri.vertex(2) - p0;
  constexpr double h = 1e-5;
  const auto at = [&](double a, double b) { return p0 + a * u + b * v; };
  const auto integrand = [&](double a, double b) {
    const double g1a = (g1(at(a + h, b)) - g1(at(a - h, b))) / (2.0 * h);
    const double g1b = (g1(at(a, b + h)) - g1(at(a, b - h))) / (2.0 * h);
    const double g2a = (g2(at(a + h, b)) - g2(at(a - h, b))) / (2.0 * h);
    const double g2b = (g2(at(a, b + h)) - g2(at(a, b - h))) / (2.0 * h);
    return f(at(a, b)) * (g1a * g2b - g1b * g2a);
  };
  TriangleIntegrator integ(integrand, opts);
  // The parameter-space gradient determinant already carries orientation
  // and scale, so the reference-triangle integral is the answer.
  return integ.run({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
}

}  // namespace roughforms
