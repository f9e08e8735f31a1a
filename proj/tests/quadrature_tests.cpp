#include <cmath>
#include <functional>

#include "doctest.h"
#include "roughforms/quadrature.hpp"

using namespace roughforms;

namespace {

constexpr double kPi = 3.14159265358979323846;

Scalar0 sc(std::function<double(const Point&)> f) {
  Scalar0 s;
  s.eval = std::move(f);
  return s;
}

}  // namespace

TEST_CASE("interval rule reproduces classical integrals") {
  QuadOptions opts;
  opts.abs_tol = 1e-12;
  CHECK(adaptive_simpson([](double t) { return std::sin(t); }, 0.0, kPi, opts) ==
        doctest::Approx(2.0).epsilon(1e-11));
  CHECK(adaptive_simpson([](double t) { return t * t; }, 0.0, 1.0, opts) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double t) { return std::exp(t); }, -1.0, 2.0, opts) ==
        doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-12));
  // Orientation: swapping the endpoints flips the sign.
  CHECK(adaptive_simpson([](double t) { return std::sin(t); }, kPi, 0.0, opts) ==
        doctest::Approx(-2.0).epsilon(1e-11));
}

TEST_CASE("interval rule flags unresolvable integrands") {
  QuadOptions opts;
  opts.abs_tol = 1e-14;
  opts.max_depth = 4;
  CHECK_THROWS_AS(
      adaptive_simpson([](double t) { return std::sin(500.0 * t * t); }, 0.0,
                       20.0, opts),
      OracleError);
}

TEST_CASE("triangle rule reproduces monomial moments") {
  // Reference facts over the triangle (0,0),(1,0),(0,1): area 1/2,
  // \iint x = 1/6, \iint x y = 1/24, \iint x^2 = 1/12.
  const Simplex tri = Simplex::triangle(Point{0.0, 0.0}, Point{1.0, 0.0},
                                        Point{0.0, 1.0});
  QuadOptions opts;
  opts.abs_tol = 1e-12;
  CHECK(triangle_form_integral([](const Point&) { return 1.0; }, tri, 0, 1,
                               opts) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(triangle_form_integral([](const Point& p) { return p[0]; }, tri, 0, 1,
                               opts) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(triangle_form_integral([](const Point& p) { return p[0] * p[1]; }, tri,
                               0, 1, opts) ==
        doctest::Approx(1.0 / 24.0).epsilon(1e-12));
  CHECK(triangle_form_integral([](const Point& p) { return p[0] * p[0]; }, tri,
                               0, 1, opts) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  // Exact: \iint sin(3x+y) = int_0^1 cos(3x) - cos(2x+1) dx
  //       = sin(1)/2 - sin(3)/6.
  const double exact = std::sin(1.0) / 2.0 - std::sin(3.0) / 6.0;
  CHECK(triangle_form_integral(
            [](const Point& p) { return std::sin(3.0 * p[0] + p[1]); }, tri, 0,
            1, opts) == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("line integral oracle matches closed forms") {
  QuadOptions opts;
  opts.abs_tol = 1e-12;
  // \int_0^1 t d(t^2) = \int_0^1 t 2t dt = 2/3.
  const Simplex seg = Simplex::segment(Point{0.0}, Point{1.0});
  const Scalar0 f = sc([](const Point& p) { return p[0]; });
  const Scalar0 g = sc([](const Point& p) { return p[0] * p[0]; });
  CHECK(line_form_integral(f, g, seg, opts) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  // Reversal flips the sign.
  const Simplex rev = Simplex::segment(Point{1.0}, Point{0.0});
  CHECK(line_form_integral(f, g, rev, opts) ==
        doctest::Approx(-2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("surface form oracle matches closed forms and signs") {
  QuadOptions opts;
  opts.abs_tol = 1e-11;
  const Simplex tri = Simplex::triangle(Point{0.0, 0.0}, Point{1.0, 0.0},
                                        Point{0.0, 1.0});
  // \int 1 dx . dy over the unit right triangle = its area 1/2.
  CHECK(triangle_form_integral([](const Point&) { return 1.0; }, tri, 0, 1,
                               opts) == doctest::Approx(0.5).epsilon(1e-12));
  // Orientation reversal flips the sign.
  const Simplex swp = Simplex::triangle(Point{0.0, 0.0}, Point{0.0, 1.0},
                                        Point{1.0, 0.0});
  CHECK(triangle_form_integral([](const Point&) { return 1.0; }, swp, 0, 1,
                               opts) == doctest::Approx(-0.5).epsilon(1e-12));
  // Index swap flips the sign too.
  CHECK(triangle_form_integral([](const Point&) { return 1.0; }, tri, 1, 0,
                               opts) == doctest::Approx(-0.5).epsilon(1e-12));
  // \int x dx . dy over the same triangle = 1/6.
  CHECK(triangle_form_integral([](const Point& p) { return p[0]; }, tri, 0, 1,
                               opts) == doctest::Approx(1.0 / 6.0).epsilon(1e-11));
  // A stretched copy scales by the Jacobian: triangle (0,0),(2,0),(0,3).
  const Simplex big = Simplex::triangle(Point{0.0, 0.0}, Point{2.0, 0.0},
                                        Point{0.0, 3.0});
  CHECK(triangle_form_integral([](const Point&) { return 1.0; }, big, 0, 1,
                               opts) == doctest::Approx(3.0).epsilon(1e-12));
  // Projection to a degenerate coordinate pair vanishes.
  CHECK(triangle_form_integral([](const Point& p) { return p[0]; }, tri, 0, 0,
                               opts) == doctest::Approx(0.0));
}

TEST_CASE("pair form oracle matches the chain rule determinant") {
  QuadOptions opts;
  opts.abs_tol = 1e-10;
  const Simplex tri = Simplex::triangle(Point{0.0, 0.0}, Point{1.0, 0.0},
                                        Point{0.0, 1.0});
  const Scalar0 cx = sc([](const Point& p) { return p[0]; });
  const Scalar0 cy = sc([](const Point& p) { return p[1]; });
  const Scalar0 cxx = sc([](const Point& p) { return p[0] * p[0]; });
  const Scalar0 one = sc([](const Point&) { return 1.0; });
  // f dg1 . dg2 with g1 = x, g2 = y reduces to f dx . dy.
  CHECK(triangle_pair_form_integral(cx, cx, cy, tri, opts) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  // g1 = x^2: d(x^2) . dy = 2x dx . dy, so \int 1 d(x^2) . dy = 2/6.
  CHECK(triangle_pair_form_integral(one, cxx, cy, tri, opts) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  // Swapping the pair flips the sign.
  CHECK(triangle_pair_form_integral(one, cy, cxx, tri, opts) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-8));
}
