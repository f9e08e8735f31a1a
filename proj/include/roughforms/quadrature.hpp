#pragma once

#include <functional>

#include "roughforms/germ.hpp"

namespace roughforms {

struct QuadOptions {
  double abs_tol = 1e-10;
  int max_depth = 30;
  // Refinement cell budget for the triangle rules.
  long long max_cells = 4000000;
};

// Adaptive Simpson with Richardson correction. OracleError when the depth
// limit is hit before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadOptions& opts = {});

// Line integral of f dg along the segment, with dg/dt taken by central
// differences (h = 1e-5) of t -> g(lerp(p0, p1, t)).
double line_form_integral(const Scalar0& f, const Scalar0& g,
                          const Simplex& seg, const QuadOptions& opts = {});

// Signed integral of F dx^i wedge dx^j over the triangle, using the affine
// parametrization (constant Jacobian) and an adaptive degree-5 rule.
double triangle_form_integral(const std::function<double(const Point&)>& F,
                              const Simplex& tri, int i, int j,
                              const QuadOptions& opts = {});

// Signed integral of f dg1 wedge dg2 over the triangle; the gradient
// determinant is taken by central differences in the parameter plane.
double triangle_pair_form_integral(const Scalar0& f, const Scalar0& g1,
                                   const Scalar0& g2, const Simplex& tri,
                                   const QuadOptions& opts = {});

}  // namespace roughforms
