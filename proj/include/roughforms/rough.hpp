#pragma once

#include <functional>
#include <vector>

#include "roughforms/integrals.hpp"

namespace roughforms {

// A germ together with the nonatomic corrector split off from it. The sewn
// value of (base - corrector) is the regular part; with_corrector_added
// restores the corrector pointwise on the queried simplex.
struct CorrectedGerm {
  Germ base;
  Germ corrector;
  bool with_corrector_added = false;
};

IntegralResult corrected_sew(const CorrectedGerm& c, const Simplex& s,
                             const SewOptions& opts = {});

// Oscillatory 1D family: f(p) = cos(n xi.p)/sqrt(n), g(p) = sin(n xi.p)/
// sqrt(n). The plain sewn integral of f dg tends to xi.(q-p)/2 although the
// functions themselves tend to zero. The corrector subtracts the exact
// antiderivative I(p) = xi.p/2 + sin(2n xi.p)/(2n), which makes
// base - corrector additive, so the corrected value is exact at level zero.
struct PureAreaFamily1D {
  int n = 1;
  std::vector<double> xi;
  Scalar0 f;
  Scalar0 g;
  Scalar0 antiderivative;
  Germ base;       // f cup delta g, degree 1
  Germ corrector;  // base - delta I, degree 1
  Germ corrected;  // delta I, degree 1: the exact corrected value
};

PureAreaFamily1D pure_area_family_1d(int n, const std::vector<double>& xi);

// The phi-composed corrected germ of the 1D family: base is
// (phi o f) cup delta g, the corrector is (phi' o f) cup omega.
CorrectedGerm phi_composed_1d(const PureAreaFamily1D& fam,
                              const std::function<double(double)>& phi,
                              const std::function<double(double)>& dphi);

// Oscillatory 2D family on the plane: f = n^{eps-1} cos(n x1) cos(n x2),
// g = n^{-(eps+1/2)} sin(n x1), h = n^{-1/2} sin(n x2). base = f cup delta
// eta with eta the sewn potential of (g, h); the corrector subtracts the
// classical integral of the closed-form density
// (1 - cos 2n x1)(1 - cos 2n x2)/4 over the queried triangle.
struct PureAreaFamily2D {
  int n = 1;
  double eps = 0.25;
  Scalar0 f;
  Scalar0 g;
  Scalar0 h;
  Germ eta;        // memoized sewn potential of (g, h), degree 1
  Germ base;       // f cup delta eta, degree 2
  Germ corrector;  // degree 2
};

struct PureArea2DOptions {
  SewOptions inner;      // stage-1 sewing for eta
  QuadOptions quad;      // corrector integral
  PureArea2DOptions() {
    inner.abs_tol = 1e-13;
    inner.rel_tol = 0.0;
    inner.max_level = 16;
    inner.extrapolate = true;
    quad.abs_tol = 1e-12;
  }
};

PureAreaFamily2D pure_area_family_2d(int n, double eps,
                                     const PureArea2DOptions& opts = {});

// Remainder germ of the corrector chain rule:
//   -delta(phi' o f) cup omega + (delta(phi o f) - (phi' o f) cup delta f)
//    cup delta eta,
// a (k+1)-germ for a degree-k corrector. Identically zero for phi = id.
Germ corrector_remainder_germ(const Scalar0& f, const Germ& eta,
                              const Germ& omega,
                              const std::function<double(double)>& phi,
                              const std::function<double(double)>& dphi);

struct RemainderReport {
  double constant = 0.0;  // measured seminorm against the prescribed gauge
  Simplex witness;
  long samples = 0;
};

RemainderReport corrector_remainder_check(
    const Scalar0& f, const Germ& eta, const Germ& omega,
    const std::function<double(double)>& phi,
    const std::function<double(double)>& dphi, const Gauge& u,
    const SamplerConfig& cfg);

}  // namespace roughforms
