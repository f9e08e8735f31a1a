#include "roughforms/integrals.hpp"

#include <cmath>

namespace roughforms {

namespace {

IntegralResult from_report(std::string provenance, const SewReport& rep) {
  IntegralResult r;
  r.provenance = std::move(provenance);
  r.value = rep.value;
  r.error_estimate = std::isnan(rep.error_estimate) ? 0.0 : rep.error_estimate;
  r.status = rep.status;
  r.outer = rep;
  return r;
}

void exponent_warning(IntegralResult& r, double alpha_sum, int degree) {
  if (alpha_sum > 0.0 && alpha_sum <= static_cast<double>(degree)) {
    r.warnings.push_back("exponent sum " + std::to_string(alpha_sum) +
                         " does not exceed the degree " +
                         std::to_string(degree) +
                         "; convergence is not guaranteed");
  }
}

}  // namespace

Germ young_germ(const Scalar0& f, const Scalar0& g, bool symmetrize) {
  Germ out;
  out.degree = 1;
  out.label = f.label + " d(" + g.label + ")";
  if (symmetrize) {
    out.eval = [f, g](const Simplex& s) {
      const Point& p = s.vertex(0);
      const Point& q = s.vertex(1);
      return 0.5 * (f(p) + f(q)) * (g(q) - g(p));
    };
  } else {
    out.eval = [f, g](const Simplex& s) {
      const Point& p = s.vertex(0);
      const Point& q = s.vertex(1);
      return f(p) * (g(q) - g(p));
    };
  }
  return out;
}

IntegralResult young(const Scalar0& f, const Scalar0& g, const Simplex& seg,
                     const YoungOptions& opts) {
  if (seg.degree != 1) throw DegreeError("young integral expects a segment");
  const SewReport rep = sew_eval(young_germ(f, g, opts.symmetrize), seg, opts.sew);
  if (rep.status == SewStatus::diverged)
    throw NonConvergentError("young sewing diverged after level " +
                             std::to_string(rep.stopped_at));
  IntegralResult r = from_report("young", rep);
  if (f.holder_alpha > 0.0 && g.holder_alpha > 0.0)
    exponent_warning(r, f.holder_alpha + g.holder_alpha, 1);
  return r;
}

double young_oracle(const Scalar0& f, const Scalar0& g, const Simplex& seg,
                    const QuadOptions& opts) {
  return line_form_integral(f, g, seg, opts);
}

Germ young_potential(const Scalar0& g1, const Scalar0& g2,
                     const SewOptions& inner,
                     std::shared_ptr<MemoStats> stats) {
  const Germ base = young_germ(g1, g2, false);
  Germ pot;
  pot.degree = 1;
  pot.label = "(" + g1.label + " d" + g2.label + ")";
  pot.eval = [base, inner](const Simplex& s) {
    const SewReport rep = sew_eval(base, s, inner);
    if (rep.status == SewStatus::diverged)
      throw NonConvergentError("stage-1 young sewing diverged on an edge");
    return rep.value;
  };
  return memoized(pot, std::move(stats));
}

namespace {

SewOptions derive_inner(const ZustOptions& opts) {
  if (!opts.inner_auto) return opts.inner;
  SewOptions inner;
  const int outer_max =
      opts.sew.max_level < 0 ? 10 : opts.sew.max_level;
  const double leaves = std::pow(4.0, outer_max);
  inner.abs_tol = std::max(opts.sew.abs_tol / (3.0 * leaves), 2.5e-14);
  inner.rel_tol = 0.0;
  inner.max_level = opts.inner_max_level;
  inner.extrapolate = true;
  inner.variant = SubdivideVariant::dya;
  inner.threads = 1;
  return inner;
}

}  // namespace

IntegralResult zust(const Scalar0& f, const Scalar0& g1, const Scalar0& g2,
                    const Simplex& tri, const ZustOptions& opts) {
  if (tri.degree != 2) throw DegreeError("zust integral expects a triangle");
  const SewOptions inner = derive_inner(opts);
  auto stats = std::make_shared<MemoStats>();
  const Germ pot = young_potential(g1, g2, inner, stats);
  const Germ outer_germ = cup(germ_from_scalar(f), coboundary(pot));
  const SewReport rep = sew_eval(outer_germ, tri, opts.sew);
  if (rep.status == SewStatus::diverged)
    throw NonConvergentError("zust outer sewing diverged after level " +
                             std::to_string(rep.stopped_at));
  IntegralResult r = from_report("zust", rep);
  r.stage1_cache_hits = stats->hits.load();
  r.stage1_evals = stats->misses.load();
  r.stage1_abs_tol = inner.abs_tol;
  // Every distinct edge contributes at most its inner tolerance once per
  // appearance; bound the accumulation by the evaluation count.
  r.error_estimate += 3.0 * static_cast<double>(rep.germ_evals) * inner.abs_tol;
  if (f.holder_alpha > 0.0 && g1.holder_alpha > 0.0 && g2.holder_alpha > 0.0)
    exponent_warning(r, f.holder_alpha + g1.holder_alpha + g2.holder_alpha, 2);
  return r;
}

double zust_oracle(const Scalar0& f, const Simplex& tri, int i, int j,
                   const QuadOptions& opts) {
  return triangle_form_integral([&f](const Point& p) { return f(p); }, tri, i,
                                j, opts);
}

StokesReport stokes_check(const Scalar0& f, const Scalar0& g,
                          const Simplex& tri, const YoungOptions& opts) {
  if (tri.degree != 2) throw DegreeError("stokes check expects a triangle");
  StokesReport rep;
  const Chain edges = boundary(tri);
  double err = 0.0;
  bool all_converged = true;
  for (const ChainTerm& t : edges.terms) {
    const IntegralResult side = young(f, g, t.simplex, opts);
    rep.lhs += t.weight * side.value;
    err += std::abs(t.weight) * side.error_estimate;
    if (side.status != SewStatus::converged) all_converged = false;
  }
  rep.lhs_error = err;
  rep.lhs_status = all_converged ? SewStatus::converged : SewStatus::max_level;

  SewOptions ropts = opts.sew;
  ropts.variant = SubdivideVariant::dya_dagger;
  const Germ rhs_germ = coboundary(young_germ(f, g, opts.symmetrize));
  const SewReport rrep = sew_eval(rhs_germ, tri, ropts);
  if (rrep.status == SewStatus::diverged)
    throw NonConvergentError("stokes right-hand sewing diverged");
  rep.rhs = rrep.value;
  rep.rhs_error = std::isnan(rrep.error_estimate) ? 0.0 : rrep.error_estimate;
  rep.rhs_status = rrep.status;
  rep.rhs_report = rrep;
  rep.defect = std::abs(rep.lhs - rep.rhs);
  return rep;
}

ChainRuleReport young_chain_rule_check(
    const Scalar0& f, const std::vector<Scalar0>& g,
    const std::function<double(const std::vector<double>&)>& Psi,
    const std::vector<std::function<double(const std::vector<double>&)>>& dPsi,
    const Simplex& seg, const YoungOptions& opts) {
  if (g.empty() || dPsi.size() != g.size())
    throw ParameterError("chain rule needs one partial per component");
  const auto values_at = [g](const Point& p) {
    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = g[i](p);
    return u;
  };
  Scalar0 psi_of_g;
  psi_of_g.label = "Psi(g)";
  psi_of_g.eval = [Psi, values_at](const Point& p) { return Psi(values_at(p)); };

  ChainRuleReport rep;
  const IntegralResult lhs = young(f, psi_of_g, seg, opts);
  rep.lhs = lhs.value;
  rep.combined_error = lhs.error_estimate;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Scalar0 weight;
    weight.label = "f dPsi_" + std::to_string(i + 1) + "(g)";
    const auto& partial = dPsi[i];
    weight.eval = [f, partial, values_at](const Point& p) {
      return f(p) * partial(values_at(p));
    };
    const IntegralResult side = young(weight, g[i], seg, opts);
    rep.rhs += side.value;
    rep.combined_error += side.error_estimate;
  }
  rep.defect = std::abs(rep.lhs - rep.rhs);
  return rep;
}

ChainRuleReport zust_chain_rule_check(
    const Scalar0& f, const Scalar0& g1, const Scalar0& g2,
    const std::function<double(double, double)>& Psi1,
    const std::function<double(double, double)>& Psi2,
    const std::function<double(double, double)>& detDPsi, const Simplex& tri,
    const ZustOptions& opts) {
  Scalar0 h1, h2, wf;
  h1.label = "Psi1(g)";
  h1.eval = [Psi1, g1, g2](const Point& p) { return Psi1(g1(p), g2(p)); };
  h2.label = "Psi2(g)";
  h2.eval = [Psi2, g1, g2](const Point& p) { return Psi2(g1(p), g2(p)); };
  wf.label = "f detDPsi(g)";
  wf.eval = [f, detDPsi, g1, g2](const Point& p) {
    return f(p) * detDPsi(g1(p), g2(p));
  };
  ChainRuleReport rep;
  const IntegralResult lhs = zust(f, h1, h2, tri, opts);
  const IntegralResult rhs = zust(wf, g1, g2, tri, opts);
  rep.lhs = lhs.value;
  rep.rhs = rhs.value;
  rep.defect = std::abs(rep.lhs - rep.rhs);
  rep.combined_error = lhs.error_estimate + rhs.error_estimate;
  return rep;
}

PointMap map_from_components(const std::vector<Scalar0>& comps) {
  if (comps.empty() || comps.size() > static_cast<std::size_t>(kMaxDim))
    throw DimensionError("map needs between 1 and 8 components");
  const int out_dim = static_cast<int>(comps.size());
  return [comps, out_dim](const Point& p) {
    Point q = Point::zero(out_dim);
    for (int i = 0; i < out_dim; ++i)
      q[i] = comps[static_cast<std::size_t>(i)](p);
    return q;
  };
}

Scalar0 composed(const Scalar0& f, const std::vector<Scalar0>& comps) {
  const PointMap phi = map_from_components(comps);
  Scalar0 out;
  out.label = f.label + " o phi";
  out.eval = [f, phi](const Point& p) { return f(phi(p)); };
  return out;
}

CurvePullbackReport pullback_curve(const Scalar0& f, const Scalar0& g,
                                   const std::vector<Scalar0>& phi,
                                   const Simplex& seg,
                                   const YoungOptions& opts) {
  if (seg.degree != 1) throw DegreeError("curve pull-back expects a segment");
  const PointMap map = map_from_components(phi);

  // Inner tolerance mirrors the two-stage budget: 2^max outer leaves.
  SewOptions inner;
  const int outer_max = opts.sew.max_level < 0 ? 14 : opts.sew.max_level;
  inner.abs_tol =
      std::max(opts.sew.abs_tol / (2.0 * std::pow(2.0, outer_max)), 2.5e-14);
  inner.rel_tol = 0.0;
  inner.max_level = 16;
  inner.extrapolate = true;

  auto stats = std::make_shared<MemoStats>();
  const Germ pot = young_potential(f, g, inner, stats);
  const Germ pulled_germ = pullback(pot, map);

  CurvePullbackReport rep;
  {
    const SewReport srep = sew_eval(pulled_germ, seg, opts.sew);
    if (srep.status == SewStatus::diverged)
      throw NonConvergentError("pulled-back sewing diverged");
    rep.pulled = from_report("pullback_curve", srep);
    rep.pulled.stage1_cache_hits = stats->hits.load();
    rep.pulled.stage1_evals = stats->misses.load();
    rep.pulled.stage1_abs_tol = inner.abs_tol;
    rep.pulled.error_estimate +=
        static_cast<double>(srep.germ_evals) * inner.abs_tol;
  }
  rep.direct = young(composed(f, phi), composed(g, phi), seg, opts);
  {
    // Reparametrize the source segment by t -> t^2 and integrate over the
    // parameter interval [0,1].
    const Point a = seg.vertex(0);
    const Point b = seg.vertex(1);
    std::vector<Scalar0> curve;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const Scalar0 comp = phi[i];
      Scalar0 c;
      c.label = comp.label + " o rho";
      c.eval = [comp, a, b](const Point& t) {
        const double u = t[0] * t[0];
        return comp(lerp(a, b, u));
      };
      curve.push_back(c);
    }
    const Simplex unit = Simplex::segment(Point{0.0}, Point{1.0});
    rep.reparam = young(composed(f, curve), composed(g, curve), unit, opts);
    rep.reparam.provenance = "pullback_curve_reparam";
  }
  rep.pulled_vs_direct = std::abs(rep.pulled.value - rep.direct.value);
  rep.direct_vs_reparam = std::abs(rep.direct.value - rep.reparam.value);
  rep.combined_error = rep.pulled.error_estimate + rep.direct.error_estimate +
                       rep.reparam.error_estimate;
  return rep;
}

SurfacePullbackReport pullback_surface(const Scalar0& f, const Scalar0& g1,
                                       const Scalar0& g2,
                                       const std::vector<Scalar0>& phi,
                                       const Simplex& tri,
                                       const SurfacePullbackOptions& opts) {
  if (tri.degree != 2) throw DegreeError("surface pull-back expects a triangle");
  const PointMap map = map_from_components(phi);
  const Simplex image = push_forward(map, tri);

  const SewOptions inner = derive_inner(opts.zust);
  auto stats = std::make_shared<MemoStats>();
  const Germ pot = young_potential(g1, g2, inner, stats);
  const Germ target_germ = cup(germ_from_scalar(f), coboundary(pot));

  SurfacePullbackReport rep;
  rep.identity_applicable = static_cast<int>(phi.size()) == 2;
  {
    const SewReport srep = sew_eval(target_germ, image, opts.zust.sew);
    if (srep.status == SewStatus::diverged)
      throw NonConvergentError("algebraic-side sewing diverged");
    rep.algebraic = from_report("pullback_surface_algebraic", srep);
    rep.algebraic.stage1_cache_hits = stats->hits.load();
    rep.algebraic.stage1_evals = stats->misses.load();
    rep.algebraic.stage1_abs_tol = inner.abs_tol;
    rep.algebraic.error_estimate +=
        3.0 * static_cast<double>(srep.germ_evals) * inner.abs_tol;
  }
  {
    ZustOptions zopts = opts.zust;
    rep.differential =
        zust(composed(f, phi), composed(g1, phi), composed(g2, phi), tri, zopts);
    rep.differential.provenance = "pullback_surface_differential";
  }
  {
    // Image-triangle values for the side compensators: small triangles only,
    // so a shallow sew with acceleration is enough.
    SewOptions side = opts.zust.sew;
    side.max_level = opts.side_max_level;
    side.extrapolate = true;
    Germ a_germ;
    a_germ.degree = 2;
    a_germ.label = "pulled zust";
    a_germ.eval = [target_germ, map, side](const Simplex& s) {
      return sew_eval(target_germ, push_forward(map, s), side).value;
    };
    const Germ a_memo = memoized(a_germ);
    const Chain edges = boundary(tri);
    for (const ChainTerm& t : edges.terms) {
      const CompensatorReport crep =
          side_compensator(a_memo, t.simplex, opts.comp);
      rep.boundary_term += t.weight * crep.value;
      rep.boundary_error += std::abs(t.weight) *
                            (std::isnan(crep.error_estimate)
                                 ? 0.0
                                 : crep.error_estimate);
    }
  }
  rep.defect = std::abs(rep.algebraic.value - rep.differential.value -
                        rep.boundary_term);
  rep.combined_error = rep.algebraic.error_estimate +
                       rep.differential.error_estimate + rep.boundary_error;
  return rep;
}

}  // namespace roughforms
