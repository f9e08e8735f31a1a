/*
 * capi.cpp
 *
 * C interface to the roughforms library: thin extern-C shims over the C++
 * core, with exception-to-status mapping and JSON/CSV report rendering.
 *
 * Copyright 2026 The roughforms authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "roughforms.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "roughforms/funcs.hpp"
#include "roughforms/integrals.hpp"
#include "roughforms/rough.hpp"

using json = nlohmann::ordered_json;
using namespace roughforms;

namespace {

thread_local std::string tl_error;

std::string& last_error_slot() { return tl_error; }

rf_status fail(rf_status code, const std::string& message) {
  last_error_slot() = message;
  return code;
}

std::string require_text(const char* text, const char* what) {
  if (text == nullptr || *text == '\0')
    throw ParameterError(std::string("missing ") + what);
  return text;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string item = text.substr(pos, next - pos);
    const char* begin = item.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0'))
      throw ParameterError(std::string("malformed ") + what + ": '" + item +
                           "'");
    out.push_back(v);
    pos = next + 1;
    if (next == text.size()) break;
  }
  if (out.empty()) throw ParameterError(std::string("empty ") + what);
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (double v : parse_double_list(text, what)) {
    const int n = static_cast<int>(v);
    if (static_cast<double>(n) != v)
      throw ParameterError(std::string(what) + " entries must be integers");
    out.push_back(n);
  }
  return out;
}

Simplex parse_simplex_text(const std::string& text) {
  std::vector<Point> pts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(';', pos);
    if (next == std::string::npos) next = text.size();
    const std::vector<double> coords =
        parse_double_list(text.substr(pos, next - pos), "vertex");
    if (coords.size() > static_cast<std::size_t>(kMaxDim))
      throw ParameterError("vertex has more than 8 coordinates");
    Point p = Point::zero(static_cast<int>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i)
      p[static_cast<int>(i)] = coords[i];
    pts.push_back(p);
    pos = next + 1;
    if (next == text.size()) break;
  }
  for (const Point& p : pts)
    if (p.dim != pts[0].dim)
      throw ParameterError("vertices have mixed dimensions");
  switch (pts.size()) {
    case 2:
      return Simplex::segment(pts[0], pts[1]);
    case 3:
      return Simplex::triangle(pts[0], pts[1], pts[2]);
    case 4:
      return Simplex::tetrahedron(pts[0], pts[1], pts[2], pts[3]);
    default:
      throw ParameterError("simplex text needs 2 to 4 vertices");
  }
}

SewOptions to_sew_options(const rf_sew_options* o) {
  SewOptions s;
  if (o == nullptr) return s;
  s.max_level = o->max_level;
  s.abs_tol = o->abs_tol;
  s.rel_tol = o->rel_tol;
  s.variant = o->variant == 1 ? SubdivideVariant::dya_dagger
                              : SubdivideVariant::dya;
  s.extrapolate = o->extrapolate != 0;
  s.divergence_ratio = o->divergence_ratio;
  s.divergence_window = o->divergence_window;
  s.threads = o->threads;
  s.kahan = o->kahan != 0;
  return s;
}

json options_json(const SewOptions& s, bool symmetrize) {
  return json{{"max_level", s.max_level},
              {"abs_tol", s.abs_tol},
              {"rel_tol", s.rel_tol},
              {"variant", s.variant == SubdivideVariant::dya ? "dya"
                                                             : "dya_dagger"},
              {"extrapolate", s.extrapolate},
              {"divergence_ratio", s.divergence_ratio},
              {"divergence_window", s.divergence_window},
              {"threads", s.threads},
              {"kahan", s.kahan},
              {"symmetrize", symmetrize}};
}

json levels_json(const std::vector<SewLevel>& rows) {
  json a = json::array();
  for (const SewLevel& r : rows)
    a.push_back(json{{"level", r.level},
                     {"n_leaves", r.n_leaves},
                     {"partial_sum", r.partial_sum},
                     {"increment", r.increment},
                     {"rate_estimate", r.rate_estimate}});
  return a;
}

json sew_report_json(const SewReport& rep) {
  return json{{"value", rep.value},
              {"status", to_string(rep.status)},
              {"stopped_at", rep.stopped_at},
              {"observed_rate", rep.observed_rate},
              {"error_estimate", rep.error_estimate},
              {"germ_evals", rep.germ_evals},
              {"levels", levels_json(rep.levels)}};
}

json integral_json(const IntegralResult& r) {
  json j{{"provenance", r.provenance},
         {"value", r.value},
         {"error_estimate", r.error_estimate},
         {"status", to_string(r.status)},
         {"warnings", r.warnings},
         {"outer", sew_report_json(r.outer)}};
  if (r.stage1_evals > 0)
    j["stage1"] = json{{"evals", r.stage1_evals},
                       {"cache_hits", r.stage1_cache_hits},
                       {"abs_tol", r.stage1_abs_tol}};
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string levels_csv(const std::vector<SewLevel>& rows) {
  std::string out = "level,n_leaves,partial_sum,increment,rate_estimate\n";
  for (const SewLevel& r : rows) {
    out += std::to_string(r.level) + "," + std::to_string(r.n_leaves) + "," +
           fmt(r.partial_sum) + "," + fmt(r.increment) + "," +
           fmt(r.rate_estimate) + "\n";
  }
  return out;
}

// The oscillatory families look divergent while the subdivision is still
// coarser than the oscillation, so the growth heuristic is silenced there.
SewOptions patient(SewOptions s) {
  s.divergence_window = 1 << 20;
  return s;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct rf_report {
  std::string command;
  json config;
  json result;
  double value = 0.0;
  double error = 0.0;
  int converged = 0;
  std::string status_name;
  std::string csv;
};

namespace {

Germ hook_germ(const std::string& name, const Scalar0& g) {
  if (name == "abs-increment") {
    Germ h;
    h.degree = 1;
    h.label = "|g(q) - g(p)|";
    h.eval = [g](const Simplex& s) {
      return std::abs(g(s.vertex(1)) - g(s.vertex(0)));
    };
    return h;
  }
  throw ParameterError("unknown germ hook '" + name + "'");
}

template <typename Fn>
rf_status guarded(rf_report** out, Fn&& fn) noexcept {
  if (out != nullptr) *out = nullptr;
  try {
    if (out == nullptr)
      throw ParameterError("output report pointer is null");
    auto rep = std::make_unique<rf_report>();
    fn(*rep);
    *out = rep.release();
    last_error_slot().clear();
    return RF_OK;
  } catch (const SyntaxError& e) {
    return fail(RF_ERROR_SYNTAX, e.what());
  } catch (const UnknownIdentifierError& e) {
    return fail(RF_ERROR_UNKNOWN_IDENTIFIER, e.what());
  } catch (const ArityError& e) {
    return fail(RF_ERROR_ARITY, e.what());
  } catch (const DomainError& e) {
    return fail(RF_ERROR_DOMAIN, e.what());
  } catch (const DimensionError& e) {
    return fail(RF_ERROR_DIMENSION, e.what());
  } catch (const DegreeError& e) {
    return fail(RF_ERROR_DEGREE, e.what());
  } catch (const PermutationError& e) {
    return fail(RF_ERROR_PERMUTATION, e.what());
  } catch (const ParameterError& e) {
    return fail(RF_ERROR_PARAMETER, e.what());
  } catch (const BudgetError& e) {
    return fail(RF_ERROR_BUDGET, e.what());
  } catch (const DivergentGaugeError& e) {
    return fail(RF_ERROR_DIVERGENT_GAUGE, e.what());
  } catch (const InsufficientDataError& e) {
    return fail(RF_ERROR_INSUFFICIENT_DATA, e.what());
  } catch (const OracleError& e) {
    return fail(RF_ERROR_ORACLE, e.what());
  } catch (const NonConvergentError& e) {
    return fail(RF_ERROR_NONCONVERGENT, e.what());
  } catch (const std::exception& e) {
    return fail(RF_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(RF_ERROR_INTERNAL, "unknown failure");
  }
}

void fill_from_integral(rf_report& rep, const IntegralResult& r) {
  rep.result = integral_json(r);
  rep.value = r.value;
  rep.error = r.error_estimate;
  rep.converged = r.status == SewStatus::converged ? 1 : 0;
  rep.status_name = to_string(r.status);
  rep.csv = levels_csv(r.outer.levels);
}

}  // namespace

extern "C" {

int rf_abi_version(void) { return RF_ABI_VERSION; }

const char* rf_status_name(rf_status status) {
  switch (status) {
    case RF_OK: return "RF_OK";
    case RF_ERROR_SYNTAX: return "RF_ERROR_SYNTAX";
    case RF_ERROR_UNKNOWN_IDENTIFIER: return "RF_ERROR_UNKNOWN_IDENTIFIER";
    case RF_ERROR_ARITY: return "RF_ERROR_ARITY";
    case RF_ERROR_DOMAIN: return "RF_ERROR_DOMAIN";
    case RF_ERROR_DIMENSION: return "RF_ERROR_DIMENSION";
    case RF_ERROR_DEGREE: return "RF_ERROR_DEGREE";
    case RF_ERROR_PERMUTATION: return "RF_ERROR_PERMUTATION";
    case RF_ERROR_PARAMETER: return "RF_ERROR_PARAMETER";
    case RF_ERROR_BUDGET: return "RF_ERROR_BUDGET";
    case RF_ERROR_DIVERGENT_GAUGE: return "RF_ERROR_DIVERGENT_GAUGE";
    case RF_ERROR_INSUFFICIENT_DATA: return "RF_ERROR_INSUFFICIENT_DATA";
    case RF_ERROR_ORACLE: return "RF_ERROR_ORACLE";
    case RF_ERROR_NONCONVERGENT: return "RF_ERROR_NONCONVERGENT";
    case RF_ERROR_INTERNAL: return "RF_ERROR_INTERNAL";
  }
  return "RF_ERROR_INTERNAL";
}

const char* rf_last_error(void) { return last_error_slot().c_str(); }

int rf_suggested_exit_code(rf_status status) {
  switch (status) {
    case RF_OK:
      return 0;
    case RF_ERROR_SYNTAX:
    case RF_ERROR_UNKNOWN_IDENTIFIER:
    case RF_ERROR_ARITY:
    case RF_ERROR_DOMAIN:
    case RF_ERROR_DIMENSION:
    case RF_ERROR_DEGREE:
    case RF_ERROR_PERMUTATION:
    case RF_ERROR_PARAMETER:
      return 2;
    case RF_ERROR_NONCONVERGENT:
      return 3;
    default:
      return 4;
  }
}

void rf_sew_options_init(rf_sew_options* opts) {
  if (opts == nullptr) return;
  const SewOptions d;
  opts->max_level = d.max_level;
  opts->abs_tol = d.abs_tol;
  opts->rel_tol = d.rel_tol;
  opts->variant = 0;
  opts->extrapolate = d.extrapolate ? 1 : 0;
  opts->divergence_ratio = d.divergence_ratio;
  opts->divergence_window = d.divergence_window;
  opts->threads = d.threads;
  opts->kahan = d.kahan ? 1 : 0;
  opts->symmetrize = 0;
}

rf_status rf_young(const char* f, const char* g, const char* simplex,
                   const char* germ_hook, const rf_sew_options* opts,
                   rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::string ftext = require_text(f, "--f expression");
    const std::string gtext = require_text(g, "--g expression");
    const Simplex seg = parse_simplex_text(require_text(simplex, "simplex"));
    if (seg.degree != 1) throw DegreeError("young integrates over a segment");
    const std::string hook = germ_hook == nullptr ? "" : germ_hook;
    const Scalar0 fs = scalar_from_expr(ftext, seg.dim());
    const Scalar0 gs = scalar_from_expr(gtext, seg.dim());
    YoungOptions yo;
    yo.sew = to_sew_options(opts);
    yo.symmetrize = opts != nullptr && opts->symmetrize != 0;

    rep.command = "young";
    rep.config = json{{"f", ftext},
                      {"g", gtext},
                      {"simplex", simplex},
                      {"germ", hook},
                      {"options", options_json(yo.sew, yo.symmetrize)}};
    if (hook.empty()) {
      fill_from_integral(rep, young(fs, gs, seg, yo));
    } else {
      const SewReport srep = sew_eval(hook_germ(hook, gs), seg, yo.sew);
      if (srep.status == SewStatus::diverged)
        throw NonConvergentError("hook germ sewing diverged");
      IntegralResult r;
      r.provenance = "young[" + hook + "]";
      r.value = srep.value;
      r.error_estimate = srep.error_estimate;
      r.status = srep.status;
      r.outer = srep;
      fill_from_integral(rep, r);
    }
  });
}

rf_status rf_zust(const char* f, const char* g1, const char* g2,
                  const char* simplex, const rf_sew_options* opts,
                  rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::string ftext = require_text(f, "--f expression");
    const std::string g1text = require_text(g1, "--g1 expression");
    const std::string g2text = require_text(g2, "--g2 expression");
    const Simplex tri = parse_simplex_text(require_text(simplex, "simplex"));
    if (tri.degree != 2) throw DegreeError("zust integrates over a triangle");
    ZustOptions zo;
    zo.sew = to_sew_options(opts);

    rep.command = "zust";
    rep.config = json{{"f", ftext},
                      {"g1", g1text},
                      {"g2", g2text},
                      {"simplex", simplex},
                      {"options", options_json(zo.sew, false)}};
    fill_from_integral(rep, zust(scalar_from_expr(ftext, tri.dim()),
                                 scalar_from_expr(g1text, tri.dim()),
                                 scalar_from_expr(g2text, tri.dim()), tri,
                                 zo));
  });
}

rf_status rf_stokes(const char* f, const char* g, const char* simplex,
                    const rf_sew_options* opts, rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::string ftext = require_text(f, "--f expression");
    const std::string gtext = require_text(g, "--g expression");
    const Simplex tri = parse_simplex_text(require_text(simplex, "simplex"));
    if (tri.degree != 2)
      throw DegreeError("the boundary identity needs a triangle");
    YoungOptions yo;
    yo.sew = to_sew_options(opts);
    yo.symmetrize = opts != nullptr && opts->symmetrize != 0;

    rep.command = "stokes";
    rep.config = json{{"f", ftext},
                      {"g", gtext},
                      {"simplex", simplex},
                      {"options", options_json(yo.sew, yo.symmetrize)}};
    const StokesReport sr =
        stokes_check(scalar_from_expr(ftext, tri.dim()),
                     scalar_from_expr(gtext, tri.dim()), tri, yo);
    rep.result = json{{"lhs", sr.lhs},
                      {"rhs", sr.rhs},
                      {"defect", sr.defect},
                      {"lhs_error", sr.lhs_error},
                      {"rhs_error", sr.rhs_error},
                      {"lhs_status", to_string(sr.lhs_status)},
                      {"rhs_status", to_string(sr.rhs_status)},
                      {"rhs_report", sew_report_json(sr.rhs_report)}};
    rep.value = sr.defect;
    rep.error = sr.lhs_error + sr.rhs_error;
    rep.converged = sr.lhs_status != SewStatus::diverged &&
                            sr.rhs_status != SewStatus::diverged
                        ? 1
                        : 0;
    rep.status_name = to_string(sr.rhs_status);
    rep.csv = levels_csv(sr.rhs_report.levels);
  });
}

rf_status rf_pullback_curve(const char* f, const char* g, const char* phi,
                            const char* simplex, const rf_sew_options* opts,
                            rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::string ftext = require_text(f, "--f expression");
    const std::string gtext = require_text(g, "--g expression");
    const std::string ptext = require_text(phi, "--phi components");
    const Simplex seg = parse_simplex_text(require_text(simplex, "simplex"));
    if (seg.degree != 1)
      throw DegreeError("curve pull-backs start from a segment");
    std::vector<Scalar0> comps;
    std::size_t pos = 0;
    while (pos <= ptext.size()) {
      std::size_t next = ptext.find(';', pos);
      if (next == std::string::npos) next = ptext.size();
      comps.push_back(
          scalar_from_expr(ptext.substr(pos, next - pos), seg.dim()));
      pos = next + 1;
      if (next == ptext.size()) break;
    }
    const int target_dim = static_cast<int>(comps.size());
    YoungOptions yo;
    yo.sew = to_sew_options(opts);
    yo.symmetrize = opts != nullptr && opts->symmetrize != 0;

    rep.command = "pullback";
    rep.config = json{{"f", ftext},
                      {"g", gtext},
                      {"phi", ptext},
                      {"simplex", simplex},
                      {"options", options_json(yo.sew, yo.symmetrize)}};
    const CurvePullbackReport pr =
        pullback_curve(scalar_from_expr(ftext, target_dim),
                       scalar_from_expr(gtext, target_dim), comps, seg, yo);
    rep.result = json{{"pulled", integral_json(pr.pulled)},
                      {"direct", integral_json(pr.direct)},
                      {"reparam", integral_json(pr.reparam)},
                      {"pulled_vs_direct", pr.pulled_vs_direct},
                      {"direct_vs_reparam", pr.direct_vs_reparam},
                      {"combined_error", pr.combined_error}};
    rep.value = pr.direct.value;
    rep.error = pr.combined_error;
    rep.converged = pr.direct.status == SewStatus::converged ? 1 : 0;
    rep.status_name = to_string(pr.direct.status);
    rep.csv = levels_csv(pr.direct.outer.levels);
  });
}

rf_status rf_pullback_surface(const char* f, const char* g1, const char* g2,
                              const char* phi, const char* simplex,
                              const rf_sew_options* opts, rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::string ftext = require_text(f, "--f expression");
    const std::string g1text = require_text(g1, "--g1 expression");
    const std::string g2text = require_text(g2, "--g2 expression");
    const std::string ptext = require_text(phi, "--phi components");
    const Simplex tri = parse_simplex_text(require_text(simplex, "simplex"));
    if (tri.degree != 2)
      throw DegreeError("surface pull-backs start from a triangle");
    std::vector<Scalar0> comps;
    std::size_t pos = 0;
    while (pos <= ptext.size()) {
      std::size_t next = ptext.find(';', pos);
      if (next == std::string::npos) next = ptext.size();
      comps.push_back(
          scalar_from_expr(ptext.substr(pos, next - pos), tri.dim()));
      pos = next + 1;
      if (next == ptext.size()) break;
    }
    const int target_dim = static_cast<int>(comps.size());
    SurfacePullbackOptions so;
    so.zust.sew = to_sew_options(opts);
    so.comp.max_depth = 10;
    so.side_max_level = 4;

    rep.command = "pullback";
    rep.config = json{{"f", ftext},
                      {"g1", g1text},
                      {"g2", g2text},
                      {"phi", ptext},
                      {"simplex", simplex},
                      {"options", options_json(so.zust.sew, false)}};
    const SurfacePullbackReport pr = pullback_surface(
        scalar_from_expr(ftext, target_dim),
        scalar_from_expr(g1text, target_dim),
        scalar_from_expr(g2text, target_dim), comps, tri, so);
    rep.result = json{{"algebraic", integral_json(pr.algebraic)},
                      {"differential", integral_json(pr.differential)},
                      {"boundary_term", pr.boundary_term},
                      {"boundary_error", pr.boundary_error},
                      {"defect", pr.defect},
                      {"combined_error", pr.combined_error},
                      {"identity_applicable", pr.identity_applicable}};
    rep.value = pr.algebraic.value;
    rep.error = pr.combined_error;
    rep.converged = pr.algebraic.status != SewStatus::diverged &&
                            pr.differential.status != SewStatus::diverged
                        ? 1
                        : 0;
    rep.status_name = to_string(pr.algebraic.status);
    rep.csv = levels_csv(pr.algebraic.outer.levels);
  });
}

rf_status rf_pure_area_1d(const char* n_list, const char* xi,
                          const char* simplex, const rf_sew_options* opts,
                          rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::vector<int> ns =
        parse_int_list(require_text(n_list, "--n-list"), "--n-list");
    const std::vector<double> dir =
        parse_double_list(require_text(xi, "--xi"), "--xi");
    const Simplex seg = parse_simplex_text(require_text(simplex, "simplex"));
    if (seg.degree != 1)
      throw DegreeError("the 1d oscillatory family lives on a segment");
    SewOptions so = patient(to_sew_options(opts));

    rep.command = "pure-area";
    rep.config = json{{"dim", 1},
                      {"n_list", n_list},
                      {"xi", xi},
                      {"simplex", simplex},
                      {"options", options_json(so, false)}};
    double drift = 0.0;
    for (std::size_t i = 0; i < dir.size(); ++i)
      drift += dir[i] * (seg.vertex(1)[static_cast<int>(i)] -
                         seg.vertex(0)[static_cast<int>(i)]);
    const double reference = 0.5 * drift;

    json rows = json::array();
    std::string csv = "n,value,corrected,reference,abs_error,corrected_defect\n";
    bool all_ok = true;
    double last = 0.0, last_err = 0.0;
    for (int n : ns) {
      const PureAreaFamily1D fam = pure_area_family_1d(n, dir);
      const SewReport plain = sew_eval(fam.base, seg, so);
      CorrectedGerm cg;
      cg.base = fam.base;
      cg.corrector = fam.corrector;
      const IntegralResult corrected = corrected_sew(cg, seg, so);
      const double closed = fam.antiderivative(seg.vertex(1)) -
                            fam.antiderivative(seg.vertex(0));
      const double err = std::abs(plain.value - reference);
      const double cdef = std::abs(corrected.value - closed);
      all_ok = all_ok && plain.status != SewStatus::diverged;
      rows.push_back(json{{"n", n},
                          {"value", plain.value},
                          {"status", to_string(plain.status)},
                          {"corrected", corrected.value},
                          {"reference", reference},
                          {"abs_error", err},
                          {"corrected_defect", cdef}});
      csv += std::to_string(n) + "," + fmt(plain.value) + "," +
             fmt(corrected.value) + "," + fmt(reference) + "," + fmt(err) +
             "," + fmt(cdef) + "\n";
      last = plain.value;
      last_err = err;
    }
    rep.result = json{{"reference", reference}, {"rows", rows}};
    rep.value = last;
    rep.error = last_err;
    rep.converged = all_ok ? 1 : 0;
    rep.status_name = all_ok ? "converged" : "diverged";
    rep.csv = csv;
  });
}

rf_status rf_pure_area_2d(const char* n_list, double eps, const char* simplex,
                          const rf_sew_options* opts, rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::vector<int> ns =
        parse_int_list(require_text(n_list, "--n-list"), "--n-list");
    const Simplex tri = parse_simplex_text(require_text(simplex, "simplex"));
    if (tri.degree != 2)
      throw DegreeError("the 2d oscillatory family lives on a triangle");
    ZustOptions zo;
    zo.sew = patient(to_sew_options(opts));
    // The oscillatory germ never meets a convergence tolerance (that is the
    // point of the family), so an unrestricted run always exhausts the full
    // level budget; depth 6 resolves frequencies up to n = 32 at a cost of
    // seconds instead of hours.
    if (opts == nullptr || opts->max_level < 0) zo.sew.max_level = 6;
    zo.inner_max_level = 12;

    rep.command = "pure-area";
    rep.config = json{{"dim", 2},
                      {"n_list", n_list},
                      {"eps", eps},
                      {"simplex", simplex},
                      {"options", options_json(zo.sew, false)}};
    const double reference = volume(tri) / 4.0;

    // The corrector is read off at the extrapolated limit, and its density
    // quadrature tolerance scales as n^4 to keep the adaptive cell count
    // flat across frequencies.
    SewOptions copt = zo.sew;
    copt.extrapolate = true;

    json rows = json::array();
    std::string csv = "n,value,corrected,reference,abs_error,corrected_defect\n";
    bool all_ok = true;
    double last = 0.0, last_err = 0.0;
    for (int n : ns) {
      PureArea2DOptions fo;
      fo.quad.abs_tol = 1e-12 * std::pow(static_cast<double>(n), 4.0);
      const PureAreaFamily2D fam = pure_area_family_2d(n, eps, fo);
      const IntegralResult zr = zust(fam.f, fam.g, fam.h, tri, zo);
      CorrectedGerm cg;
      cg.base = fam.base;
      cg.corrector = fam.corrector;
      const IntegralResult corrected = corrected_sew(cg, tri, copt);
      const double err = std::abs(zr.value - reference);
      const double cdef = std::abs(corrected.value - reference);
      all_ok = all_ok && zr.status != SewStatus::diverged;
      rows.push_back(json{{"n", n},
                          {"value", zr.value},
                          {"status", to_string(zr.status)},
                          {"corrected", corrected.value},
                          {"reference", reference},
                          {"abs_error", err},
                          {"corrected_defect", cdef}});
      csv += std::to_string(n) + "," + fmt(zr.value) + "," +
             fmt(corrected.value) + "," + fmt(reference) + "," + fmt(err) +
             "," + fmt(cdef) + "\n";
      last = zr.value;
      last_err = err;
    }
    rep.result = json{{"reference", reference}, {"rows", rows}};
    rep.value = last;
    rep.error = last_err;
    rep.converged = all_ok ? 1 : 0;
    rep.status_name = all_ok ? "converged" : "diverged";
    rep.csv = csv;
  });
}

rf_status rf_gauge_seminorm(const char* f, const char* g, const char* simplex,
                            double gamma1, double gamma2,
                            unsigned long long seed, rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::string ftext = require_text(f, "--f expression");
    const std::string gtext = require_text(g, "--g expression");
    const Simplex ref = parse_simplex_text(require_text(simplex, "simplex"));
    const Scalar0 fs = scalar_from_expr(ftext, ref.dim());
    const Scalar0 gs = scalar_from_expr(gtext, ref.dim());
    const Germ base = young_germ(fs, gs, false);
    const Germ target = coboundary(base);
    const Gauge u = power_gauge(target.degree, gamma1, gamma2);
    SamplerConfig cfg = default_sampler(ref);
    cfg.seed = static_cast<std::uint64_t>(seed);
    const SeminormEstimate est = seminorm_estimate(target, u, cfg);

    rep.command = "gauge";
    rep.config = json{{"f", ftext},
                      {"g", gtext},
                      {"simplex", simplex},
                      {"gamma1", gamma1},
                      {"gamma2", gamma2},
                      {"seed", seed}};
    json witness = json::array();
    for (int i = 0; i <= est.witness.degree; ++i) {
      json coords = json::array();
      for (int d = 0; d < est.witness.dim(); ++d)
        coords.push_back(est.witness.vertex(i)[d]);
      witness.push_back(coords);
    }
    rep.result = json{{"value", est.value},
                      {"samples", est.samples},
                      {"witness", witness}};
    rep.value = est.value;
    rep.error = 0.0;
    rep.converged = std::isfinite(est.value) ? 1 : 0;
    rep.status_name = rep.converged ? "converged" : "diverged";
    rep.csv = "value,samples\n" + fmt(est.value) + "," +
              std::to_string(est.samples) + "\n";
  });
}

rf_status rf_certify(const char* f, const char* g, const char* simplex,
                     const char* germ_hook, const rf_sew_options* opts,
                     double tol, rf_report** out) {
  return guarded(out, [&](rf_report& rep) {
    const std::string ftext = require_text(f, "--f expression");
    const std::string gtext = require_text(g, "--g expression");
    const Simplex ref = parse_simplex_text(require_text(simplex, "simplex"));
    const std::string hook = germ_hook == nullptr ? "" : germ_hook;
    const Scalar0 fs = scalar_from_expr(ftext, ref.dim());
    const Scalar0 gs = scalar_from_expr(gtext, ref.dim());
    const Germ target =
        hook.empty() ? young_germ(fs, gs, false) : hook_germ(hook, gs);
    const SewOptions so = to_sew_options(opts);

    rep.command = "certify";
    rep.config = json{{"f", ftext},
                      {"g", gtext},
                      {"simplex", simplex},
                      {"germ", hook},
                      {"tol", tol},
                      {"options", options_json(so, false)}};
    const CertifyReport cr = certify_sewn(target, ref, so, tol);
    json checks = json::array();
    std::string csv = "name,defect,pass\n";
    for (const CertifyCheck& c : cr.checks) {
      checks.push_back(
          json{{"name", c.name}, {"defect", c.defect}, {"pass", c.pass}});
      csv += c.name + "," + fmt(c.defect) + "," + (c.pass ? "1" : "0") + "\n";
    }
    rep.result = json{{"pass", cr.pass}, {"checks", checks}};
    rep.value = cr.pass ? 1.0 : 0.0;
    rep.error = 0.0;
    rep.converged = cr.pass ? 1 : 0;
    rep.status_name = cr.pass ? "converged" : "diverged";
    rep.csv = csv;
  });
}

double rf_report_value(const rf_report* report) {
  return report == nullptr ? 0.0 : report->value;
}

double rf_report_error(const rf_report* report) {
  return report == nullptr ? 0.0 : report->error;
}

int rf_report_converged(const rf_report* report) {
  return report == nullptr ? 0 : report->converged;
}

const char* rf_report_status(const rf_report* report) {
  return report == nullptr ? "" : report->status_name.c_str();
}

char* rf_report_json(const rf_report* report) {
  if (report == nullptr) return nullptr;
  json envelope{{"schema", "roughforms/1"},
                {"command", report->command},
                {"config", report->config},
                {"result", report->result}};
  return dup_string(envelope.dump(2));
}

char* rf_report_csv(const rf_report* report) {
  if (report == nullptr) return nullptr;
  return dup_string(report->csv);
}

void rf_report_free(rf_report* report) { delete report; }

void rf_string_free(char* text) { std::free(text); }

}  // extern "C"
