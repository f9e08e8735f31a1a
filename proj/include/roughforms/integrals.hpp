#pragma once

#include <memory>
#include <string>
#include <vector>

#include "roughforms/compensator.hpp"
#include "roughforms/quadrature.hpp"
#include "roughforms/sew.hpp"

namespace roughforms {

struct IntegralResult {
  std::string provenance;  // young / zust / pullback_curve / ...
  double value = 0.0;
  double error_estimate = 0.0;
  SewStatus status = SewStatus::max_level;
  SewReport outer;
  // Stage-1 statistics for the two-stage constructions.
  long long stage1_cache_hits = 0;
  long long stage1_evals = 0;
  double stage1_abs_tol = 0.0;
  std::vector<std::string> warnings;
};

struct YoungOptions {
  SewOptions sew;
  // Use the trapezoid representative (f(p)+f(q))/2 * (g(q)-g(p)) instead of
  // the left endpoint. Same sewn limit, but cancellation is exact for f = g,
  // which matters when the plain germ converges too slowly to finish.
  bool symmetrize = false;
};

// Germ [p,q] -> f(p) (g(q) - g(p)) (or its trapezoid variant).
Germ young_germ(const Scalar0& f, const Scalar0& g, bool symmetrize = false);

// Sewn Young integral of f dg over the segment. Throws NonConvergentError
// when the sewing diverges; a truncated (max_level) run is reported, not
// thrown.
IntegralResult young(const Scalar0& f, const Scalar0& g, const Simplex& seg,
                     const YoungOptions& opts = {});

// Classical quadrature of f dg along the segment; OracleError on failure.
double young_oracle(const Scalar0& f, const Scalar0& g, const Simplex& seg,
                    const QuadOptions& opts = {});

// Segment germ [a,b] -> young(g1, g2, [a,b]).value, memoized. The building
// block of the two-stage constructions; `stats` receives cache counters.
Germ young_potential(const Scalar0& g1, const Scalar0& g2,
                     const SewOptions& inner,
                     std::shared_ptr<MemoStats> stats = nullptr);

struct ZustOptions {
  SewOptions sew;  // outer, degree 2
  // Inner Young sewing: tolerance is derived from the outer one
  // (abs_tol / (3 * 4^max_level), floored near machine precision) unless
  // inner_auto is turned off, in which case `inner` is used as given.
  SewOptions inner;
  bool inner_auto = true;
  int inner_max_level = 16;
};

// Two-stage Zust integral of f dg1 wedge dg2 over the triangle.
IntegralResult zust(const Scalar0& f, const Scalar0& g1, const Scalar0& g2,
                    const Simplex& tri, const ZustOptions& opts = {});

// Classical integral of f dx^i wedge dx^j over the triangle.
double zust_oracle(const Scalar0& f, const Simplex& tri, int i, int j,
                   const QuadOptions& opts = {});

struct StokesReport {
  double lhs = 0.0;  // signed Young integrals over the boundary edges
  double rhs = 0.0;  // adjoint-variant sewing of the coboundary germ
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  double defect = 0.0;
  SewStatus lhs_status = SewStatus::max_level;
  SewStatus rhs_status = SewStatus::max_level;
  SewReport rhs_report;
};

StokesReport stokes_check(const Scalar0& f, const Scalar0& g,
                          const Simplex& tri, const YoungOptions& opts = {});

struct ChainRuleReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double defect = 0.0;
  double combined_error = 0.0;
};

// f d(Psi o g) vs sum_i f (d_i Psi o g) d g_i along the segment.
ChainRuleReport young_chain_rule_check(
    const Scalar0& f, const std::vector<Scalar0>& g,
    const std::function<double(const std::vector<double>&)>& Psi,
    const std::vector<std::function<double(const std::vector<double>&)>>& dPsi,
    const Simplex& seg, const YoungOptions& opts = {});

// f d(Psi1 o g) wedge d(Psi2 o g) vs f det(DPsi o g) d g1 wedge d g2 for a
// map Psi of the plane.
ChainRuleReport zust_chain_rule_check(
    const Scalar0& f, const Scalar0& g1, const Scalar0& g2,
    const std::function<double(double, double)>& Psi1,
    const std::function<double(double, double)>& Psi2,
    const std::function<double(double, double)>& detDPsi, const Simplex& tri,
    const ZustOptions& opts = {});

// Vertex-wise map built from component functions; output dimension is the
// number of components.
PointMap map_from_components(const std::vector<Scalar0>& comps);

// f o phi as a scalar on the source space.
Scalar0 composed(const Scalar0& f, const std::vector<Scalar0>& comps);

struct CurvePullbackReport {
  IntegralResult pulled;   // sewing of [s,t] -> young(f, g, [phi(s), phi(t)])
  IntegralResult direct;   // young(f o phi, g o phi) over the source segment
  IntegralResult reparam;  // direct side after the t -> t^2 reparametrization
  double pulled_vs_direct = 0.0;
  double direct_vs_reparam = 0.0;
  double combined_error = 0.0;
};

CurvePullbackReport pullback_curve(const Scalar0& f, const Scalar0& g,
                                   const std::vector<Scalar0>& phi,
                                   const Simplex& seg,
                                   const YoungOptions& opts = {});

struct SurfacePullbackOptions {
  ZustOptions zust;
  CompensatorOptions comp;
  // Sewing level for the per-triangle values fed to the side compensators;
  // these triangles are small, so a shallow sew suffices.
  int side_max_level = 6;
};

struct SurfacePullbackReport {
  IntegralResult algebraic;     // zust over the straight image triangle
  IntegralResult differential;  // zust of the composed functions at the source
  double boundary_term = 0.0;   // signed side compensators over the edges
  double boundary_error = 0.0;
  double defect = 0.0;  // |algebraic - differential - boundary_term|
  double combined_error = 0.0;
  bool identity_applicable = true;  // false when the target dimension is not 2
};

SurfacePullbackReport pullback_surface(const Scalar0& f, const Scalar0& g1,
                                       const Scalar0& g2,
                                       const std::vector<Scalar0>& phi,
                                       const Simplex& tri,
                                       const SurfacePullbackOptions& opts = {});

}  // namespace roughforms
