#include "roughforms/rough.hpp"

#include <cmath>

namespace roughforms {

IntegralResult corrected_sew(const CorrectedGerm& c, const Simplex& s,
                             const SewOptions& opts) {
  if (c.base.degree != c.corrector.degree)
    throw DegreeError("base and corrector degrees differ");
  const Germ diff = add(c.base, c.corrector, 1.0, -1.0);
  const SewReport rep = sew_eval(diff, s, opts);
  if (rep.status == SewStatus::diverged)
    throw NonConvergentError("corrected sewing diverged");
  IntegralResult r;
  r.provenance = "corrected_sew";
  r.value = rep.value + (c.with_corrector_added ? c.corrector(s) : 0.0);
  r.error_estimate = std::isnan(rep.error_estimate) ? 0.0 : rep.error_estimate;
  r.status = rep.status;
  r.outer = rep;
  return r;
}

namespace {

double dot_prefix(const std::vector<double>& xi, const Point& p) {
  if (static_cast<int>(xi.size()) > p.dim)
    throw DimensionError("direction has more components than the point");
  double s = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i)
    s += xi[i] * p[static_cast<int>(i)];
  return s;
}

double norm_of(const std::vector<double>& xi) {
  double s = 0.0;
  for (double c : xi) s += c * c;
  return std::sqrt(s);
}

}  // namespace

PureAreaFamily1D pure_area_family_1d(int n, const std::vector<double>& xi) {
  if (n < 1 || n > 512) throw ParameterError("family index must be in [1, 512]");
  if (xi.empty() || xi.size() > static_cast<std::size_t>(kMaxDim))
    throw ParameterError("direction must have 1 to 8 components");
  PureAreaFamily1D fam;
  fam.n = n;
  fam.xi = xi;
  const double nn = static_cast<double>(n);
  const double rootn = std::sqrt(nn);
  const double hc = std::sqrt(2.0 * std::max(norm_of(xi), 1.0));

  fam.f.label = "cos(n xi.p)/sqrt(n)";
  fam.f.holder_alpha = 0.5;
  fam.f.holder_const = hc;
  fam.f.eval = [n = nn, xi, rootn](const Point& p) {
    return std::cos(n * dot_prefix(xi, p)) / rootn;
  };

  fam.g.label = "sin(n xi.p)/sqrt(n)";
  fam.g.holder_alpha = 0.5;
  fam.g.holder_const = hc;
  fam.g.eval = [n = nn, xi, rootn](const Point& p) {
    return std::sin(n * dot_prefix(xi, p)) / rootn;
  };

  fam.antiderivative.label = "xi.p/2 + sin(2n xi.p)/(2n)";
  fam.antiderivative.eval = [n = nn, xi](const Point& p) {
    const double t = dot_prefix(xi, p);
    return 0.5 * t + std::sin(2.0 * n * t) / (2.0 * n);
  };

  fam.base = young_germ(fam.f, fam.g, false);
  fam.corrected = coboundary(germ_from_scalar(fam.antiderivative));
  fam.corrected.label = "delta I";
  fam.corrector = add(fam.base, fam.corrected, 1.0, -1.0);
  fam.corrector.label = "pure-area corrector";
  return fam;
}

CorrectedGerm phi_composed_1d(const PureAreaFamily1D& fam,
                              const std::function<double(double)>& phi,
                              const std::function<double(double)>& dphi) {
  Scalar0 pf, df;
  pf.label = "phi(f)";
  const Scalar0 f = fam.f;
  pf.eval = [phi, f](const Point& p) { return phi(f(p)); };
  df.label = "phi'(f)";
  df.eval = [dphi, f](const Point& p) { return dphi(f(p)); };
  CorrectedGerm c;
  c.base = young_germ(pf, fam.g, false);
  c.corrector = cup(germ_from_scalar(df), fam.corrector);
  c.corrector.label = "phi-composed corrector";
  return c;
}

PureAreaFamily2D pure_area_family_2d(int n, double eps,
                                     const PureArea2DOptions& opts) {
  if (n < 1 || n > 512) throw ParameterError("family index must be in [1, 512]");
  if (!(eps > 0.0 && eps < 1.0))
    throw ParameterError("oscillation exponent must lie in (0, 1)");
  PureAreaFamily2D fam;
  fam.n = n;
  fam.eps = eps;
  const double nn = static_cast<double>(n);

  fam.f.label = "n^{eps-1} cos(n x1) cos(n x2)";
  fam.f.holder_alpha = 1.0 - eps;
  fam.f.holder_const = 2.0;
  fam.f.eval = [nn, eps](const Point& p) {
    return std::pow(nn, eps - 1.0) * std::cos(nn * p[0]) * std::cos(nn * p[1]);
  };

  fam.g.label = "n^{-(eps+1/2)} sin(n x1)";
  fam.g.holder_alpha = eps + 0.5;
  fam.g.holder_const = 2.0;
  fam.g.eval = [nn, eps](const Point& p) {
    return std::pow(nn, -(eps + 0.5)) * std::sin(nn * p[0]);
  };

  fam.h.label = "n^{-1/2} sin(n x2)";
  fam.h.holder_alpha = 0.5;
  fam.h.holder_const = 2.0;
  fam.h.eval = [nn](const Point& p) {
    return std::sin(nn * p[1]) / std::sqrt(nn);
  };

  fam.eta = young_potential(fam.g, fam.h, opts.inner);
  fam.base = cup(germ_from_scalar(fam.f), coboundary(fam.eta));
  fam.base.label = "f cup delta eta";

  const Germ delta_eta = coboundary(fam.eta);
  const Scalar0 f = fam.f;
  const QuadOptions quad = opts.quad;
  Germ corr;
  corr.degree = 2;
  corr.label = "pure-area 2D corrector";
  corr.eval = [f, delta_eta, nn, quad](const Simplex& s) {
    const double lead = f(s.vertex(0)) * delta_eta(s);
    const double integral = triangle_form_integral(
        [nn](const Point& p) {
          return 0.25 * (1.0 - std::cos(2.0 * nn * p[0])) *
                 (1.0 - std::cos(2.0 * nn * p[1]));
        },
        s, 0, 1, quad);
    return lead - integral;
  };
  fam.corrector = corr;
  return fam;
}

Germ corrector_remainder_germ(const Scalar0& f, const Germ& eta,
                              const Germ& omega,
                              const std::function<double(double)>& phi,
                              const std::function<double(double)>& dphi) {
  if (omega.degree != eta.degree + 1)
    throw DegreeError("corrector degree must exceed the potential degree by one");
  Scalar0 pf, df;
  pf.label = "phi(f)";
  pf.eval = [phi, f](const Point& p) { return phi(f(p)); };
  df.label = "phi'(f)";
  df.eval = [dphi, f](const Point& p) { return dphi(f(p)); };

  const Germ term1 = cup(coboundary(germ_from_scalar(df)), omega);
  const Germ bracket =
      add(coboundary(germ_from_scalar(pf)),
          cup(germ_from_scalar(df), coboundary(germ_from_scalar(f))), 1.0,
          -1.0);
  const Germ term2 = cup(bracket, coboundary(eta));
  Germ r = add(term1, term2, -1.0, 1.0);
  r.label = "corrector remainder";
  return r;
}

RemainderReport corrector_remainder_check(
    const Scalar0& f, const Germ& eta, const Germ& omega,
    const std::function<double(double)>& phi,
    const std::function<double(double)>& dphi, const Gauge& u,
    const SamplerConfig& cfg) {
  const Germ r = corrector_remainder_germ(f, eta, omega, phi, dphi);
  const SeminormEstimate est = seminorm_estimate(r, u, cfg);
  RemainderReport rep;
  rep.constant = est.value;
  rep.witness = est.witness;
  rep.samples = est.samples;
  return rep;
}

}  // namespace roughforms
