#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "roughforms/geometry.hpp"

namespace roughforms {

// Pointwise scalar function on R^d with optional Holder metadata
// (alpha/const of 0 means unknown).
struct Scalar0 {
  std::function<double(const Point&)> eval;
  std::string label;
  double holder_alpha = 0.0;
  double holder_const = 0.0;

  double operator()(const Point& p) const;
};

Scalar0 scalar_constant(double c);
Scalar0 coordinate(int index);  // zero-based; label x{index+1}

// Real-valued function of ordered k-simplices. The evaluator must be pure:
// same simplex, same value.
struct Germ {
  int degree = 0;
  std::function<double(const Simplex&)> eval;
  std::string label;

  double operator()(const Simplex& s) const;
};

Germ germ_from_scalar(const Scalar0& f);  // degree 0
Germ zero_germ(int degree);

double eval_chain(const Germ& g, const Chain& c);

Germ add(const Germ& a, const Germ& b, double wa = 1.0, double wb = 1.0);
Germ scale(double c, const Germ& g);

// delta(omega)(S) = omega(boundary S); raises degree by one.
Germ coboundary(const Germ& g);

// (a cup b)([p0..pk..p{k+h}]) = a([p0..pk]) * b([pk..p{k+h}]).
Germ cup(const Germ& a, const Germ& b);

// phi-pullback: evaluate on the vertex-wise image simplex.
Germ pullback(const Germ& g, const PointMap& phi);

// Cone primitive: eta([p0..p{k-1}]) = omega([base p0 .. p{k-1}]).
Germ poincare_primitive(const Germ& g, const Point& base);

// Nonnegative reference scale on k-simplices. `power` is set for the
// closed-form family diam^gamma1 * vol2^gamma2, which transforms in closed
// form; general gauges fall back to truncated series.
struct PowerGauge {
  double gamma1 = 1.0;
  double gamma2 = 0.0;
  double scaling_exponent() const { return gamma1 + 2.0 * gamma2; }
};

struct Gauge {
  Germ germ;
  std::optional<PowerGauge> power;
};

Gauge power_gauge(int degree, double gamma1, double gamma2 = 0.0);

// Geometric resummation of the gauge along dyadic generations. For a power
// gauge with scaling 2^{-e} per halving this is multiplication by
// (1 - 2^{r-e})^{-1}; requires r < e, else DivergentGaugeError. General
// gauges sum the first truncation_depth generations pointwise.
Gauge dini_transform(const Gauge& u, double r, int truncation_depth = 40);

// Sampling plan shared by the seminorm estimator and the structure probes.
// Dyadic descendants of `reference` to dyadic_depth, random_count simplices
// with vertices in [box_lo, box_hi]^dim, and shrunk copies of `reference`
// scaled by 2^-n toward its first vertex for n = 1..multiscale_depth.
struct SamplerConfig {
  Simplex reference;
  double box_lo = 0.0;
  double box_hi = 1.0;
  int dyadic_depth = 8;
  int random_count = 10000;
  int multiscale_depth = 20;
  std::uint64_t seed = 0;
};

SamplerConfig default_sampler(const Simplex& reference);

struct SeminormEstimate {
  double value = 0.0;
  Simplex witness;
  long samples = 0;
};

// sup |g(S)| / u(S) over the sample plan; samples with u(S) <= 1e-300 are
// skipped. A lower bound for the true seminorm.
SeminormEstimate seminorm_estimate(const Germ& g, const Gauge& u,
                                   const SamplerConfig& cfg);

struct ProbeDefect {
  double defect = 0.0;
  Simplex witness;
};

struct RegularityReport {
  bool nonatomic = false;
  bool closed_on_planes = false;
  bool alternating = false;
  ProbeDefect nonatomic_defect;
  ProbeDefect closed_defect;
  ProbeDefect alternating_defect;
  double scale = 0.0;  // max |g| over nondegenerate probes, used to relativize

  bool regular() const { return nonatomic && closed_on_planes; }
};

// Randomized checks of the three germ structure properties: vanishing on
// degenerate simplices, cocycle behaviour on affine-plane images, and sign
// alternation under vertex permutations. Defects are compared against
// tol * max(1, scale).
RegularityReport regularity_probe(const Germ& g, const SamplerConfig& cfg,
                                  double tol = 1e-10);

struct MemoStats {
  std::atomic<long> hits{0};
  std::atomic<long> misses{0};
};

// Same function, cached behind quantized coordinates (1e-12 grid). The cache
// is shared by copies of the returned object and is safe to use from several
// threads.
Scalar0 memoized(const Scalar0& f, std::shared_ptr<MemoStats> stats = nullptr);
Germ memoized(const Germ& g, std::shared_ptr<MemoStats> stats = nullptr);

}  // namespace roughforms
