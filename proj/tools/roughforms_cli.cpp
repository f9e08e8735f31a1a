// Command line front end for the roughforms shared library. Every
// subcommand drives one C API entry point, prints the JSON report to
// stdout (plus the convergence table as CSV with --table), and exits with
// the stable code suggested by the library: 0 success, 2 usage, 3
// non-convergence, 4 budget or internal failure.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roughforms.h"

namespace {

struct SewFlags {
  int max_level = -1;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int variant = 0;
  bool extrapolate = false;
  double divergence_ratio = 0.95;
  int divergence_window = 4;
  int threads = 1;
  bool kahan = false;
  bool symmetrize = false;

  rf_sew_options to_options() const {
    rf_sew_options o;
    rf_sew_options_init(&o);
    o.max_level = max_level;
    o.abs_tol = abs_tol;
    o.rel_tol = rel_tol;
    o.variant = variant;
    o.extrapolate = extrapolate ? 1 : 0;
    o.divergence_ratio = divergence_ratio;
    o.divergence_window = divergence_window;
    o.threads = threads;
    o.kahan = kahan ? 1 : 0;
    o.symmetrize = symmetrize ? 1 : 0;
    return o;
  }
};

void add_sew_flags(CLI::App* cmd, SewFlags& s) {
  cmd->add_option("--max-level", s.max_level,
                  "Deepest subdivision level (-1: per-degree default)");
  cmd->add_option("--abs-tol", s.abs_tol, "Absolute increment tolerance");
  cmd->add_option("--rel-tol", s.rel_tol, "Relative tolerance on the sum");
  cmd->add_option("--variant", s.variant, "0 plain, 1 adjoint subdivision")
      ->check(CLI::Range(0, 1));
  cmd->add_flag("--extrapolate", s.extrapolate,
                "Richardson-accelerate the level sums");
  cmd->add_option("--divergence-ratio", s.divergence_ratio,
                  "Increment growth ratio flagged as divergence");
  cmd->add_option("--divergence-window", s.divergence_window,
                  "Consecutive growing levels before diverged")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", s.threads, "Parallel reduction width")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--kahan", s.kahan, "Compensated per-level summation");
  cmd->add_flag("--symmetrize", s.symmetrize,
                "Trapezoid representative for Young germs");
}

// Prints the report (and frees it). Returns the process exit code.
int emit(rf_status st, rf_report* rep, bool table) {
  if (st != RF_OK) {
    std::fprintf(stderr, "error: %s (%s)\n", rf_last_error(),
                 rf_status_name(st));
    return rf_suggested_exit_code(st);
  }
  char* js = rf_report_json(rep);
  std::fputs(js, stdout);
  std::fputc('\n', stdout);
  rf_string_free(js);
  if (table) {
    char* csv = rf_report_csv(rep);
    if (csv != nullptr && csv[0] != '\0') std::fputs(csv, stdout);
    rf_string_free(csv);
  }
  rf_report_free(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sewn integrals of rough differential forms over simplices"};
  app.require_subcommand(1);

  int exit_code = 0;
  std::string f, g, g1, g2, phi, simplex, germ, n_list = "4,8,16,32";
  std::string xi = "1";
  // The certification gate is structural: the failures it exists to catch
  // (non-additive or non-alternating germs) defect at order one, while an
  // honest germ only shows the truncation error of the requested sewing
  // options. Tighten together with --extrapolate / --abs-tol.
  double eps = 0.25, gamma1 = 1.0, gamma2 = 0.0, cert_tol = 1e-3;
  unsigned long long seed = 0;
  int dim = 1;
  bool table = false, strict = false;
  SewFlags sew;

  auto* young = app.add_subcommand("young", "Young integral of f dg");
  young->add_option("--f", f, "Integrand expression")->required();
  young->add_option("--g", g, "Integrator expression")->required();
  young->add_option("--simplex", simplex, "Segment \"a;b\"")->required();
  young->add_option("--germ", germ,
                    "Replace f cup delta g by a named test germ");
  young->add_flag("--table", table, "Append the per-level CSV table");
  young->add_flag("--strict", strict,
                  "Certify the germ first; exit 3 when certification fails");
  young->add_option("--cert-tol", cert_tol, "Certification tolerance");
  add_sew_flags(young, sew);
  young->callback([&] {
    const rf_sew_options o = sew.to_options();
    rf_report* rep = nullptr;
    if (strict) {
      rf_status st = rf_certify(f.c_str(), g.c_str(), simplex.c_str(),
                                germ.c_str(), &o, cert_tol, &rep);
      if (st != RF_OK || rf_report_converged(rep) == 0) {
        std::fprintf(stderr, "strict: germ certification failed\n");
        if (st == RF_OK) {
          emit(st, rep, table);
          exit_code = 3;
        } else {
          exit_code = emit(st, rep, table);
        }
        return;
      }
      rf_report_free(rep);
      rep = nullptr;
    }
    rf_status st = rf_young(f.c_str(), g.c_str(), simplex.c_str(),
                            germ.c_str(), &o, &rep);
    exit_code = emit(st, rep, table);
  });

  auto* zust = app.add_subcommand("zust", "Zust integral of f dg1 ^ dg2");
  zust->add_option("--f", f, "Integrand expression")->required();
  zust->add_option("--g1", g1, "First integrator")->required();
  zust->add_option("--g2", g2, "Second integrator")->required();
  zust->add_option("--simplex", simplex, "Triangle \"a;b;c\"")->required();
  zust->add_flag("--table", table, "Append the per-level CSV table");
  add_sew_flags(zust, sew);
  zust->callback([&] {
    const rf_sew_options o = sew.to_options();
    rf_report* rep = nullptr;
    rf_status st = rf_zust(f.c_str(), g1.c_str(), g2.c_str(), simplex.c_str(),
                           &o, &rep);
    exit_code = emit(st, rep, table);
  });

  auto* stokes =
      app.add_subcommand("stokes", "Both sides of the Stokes identity");
  stokes->add_option("--f", f, "Integrand expression")->required();
  stokes->add_option("--g", g, "Integrator expression")->required();
  stokes->add_option("--simplex", simplex, "Triangle \"a;b;c\"")->required();
  stokes->add_flag("--table", table, "Append the per-level CSV table");
  add_sew_flags(stokes, sew);
  stokes->callback([&] {
    const rf_sew_options o = sew.to_options();
    rf_report* rep = nullptr;
    rf_status st =
        rf_stokes(f.c_str(), g.c_str(), simplex.c_str(), &o, &rep);
    exit_code = emit(st, rep, table);
  });

  auto* pullback = app.add_subcommand(
      "pullback", "Pull-back comparison along a curve or surface map");
  pullback->add_option("--f", f, "Integrand expression")->required();
  pullback->add_option("--g", g, "Integrator (curve form)");
  pullback->add_option("--g1", g1, "First integrator (surface form)");
  pullback->add_option("--g2", g2, "Second integrator (surface form)");
  pullback->add_option("--phi", phi, "Map components \"expr;expr\"")
      ->required();
  pullback->add_option("--simplex", simplex, "Domain simplex")->required();
  pullback->add_flag("--table", table, "Append the per-level CSV table");
  add_sew_flags(pullback, sew);
  pullback->callback([&] {
    const rf_sew_options o = sew.to_options();
    rf_report* rep = nullptr;
    rf_status st;
    if (!g.empty() && g1.empty() && g2.empty()) {
      st = rf_pullback_curve(f.c_str(), g.c_str(), phi.c_str(),
                             simplex.c_str(), &o, &rep);
    } else if (g.empty() && !g1.empty() && !g2.empty()) {
      st = rf_pullback_surface(f.c_str(), g1.c_str(), g2.c_str(), phi.c_str(),
                               simplex.c_str(), &o, &rep);
    } else {
      std::fprintf(stderr,
                   "error: pass either --g (curve) or --g1 and --g2 "
                   "(surface)\n");
      exit_code = 2;
      return;
    }
    exit_code = emit(st, rep, table);
  });

  auto* pure = app.add_subcommand(
      "pure-area", "Oscillatory family: sewn vs corrected vs classical");
  pure->add_option("--dim", dim, "1: segment family, 2: triangle family")
      ->required()
      ->check(CLI::Range(1, 2));
  pure->add_option("--n-list", n_list, "Comma-separated frequencies");
  pure->add_option("--xi", xi, "Direction for the 1d family");
  pure->add_option("--eps", eps, "Oscillation exponent for the 2d family");
  pure->add_option("--simplex", simplex, "Domain simplex");
  pure->add_flag("--table", table, "Append the per-n CSV table");
  add_sew_flags(pure, sew);
  pure->callback([&] {
    const rf_sew_options o = sew.to_options();
    if (simplex.empty()) simplex = dim == 1 ? "0;1" : "0,0;1,0;0,1";
    rf_report* rep = nullptr;
    rf_status st =
        dim == 1 ? rf_pure_area_1d(n_list.c_str(), xi.c_str(),
                                   simplex.c_str(), &o, &rep)
                 : rf_pure_area_2d(n_list.c_str(), eps, simplex.c_str(), &o,
                                   &rep);
    exit_code = emit(st, rep, table);
  });

  auto* gauge = app.add_subcommand(
      "gauge", "Seminorm of the Young coboundary against a power gauge");
  gauge->add_option("--f", f, "Integrand expression")->required();
  gauge->add_option("--g", g, "Integrator expression")->required();
  gauge->add_option("--simplex", simplex, "Reference simplex")->required();
  gauge->add_option("--gamma1", gamma1, "Diameter exponent");
  gauge->add_option("--gamma2", gamma2, "Area exponent");
  gauge->add_option("--seed", seed, "Sampler seed");
  gauge->callback([&] {
    rf_report* rep = nullptr;
    rf_status st = rf_gauge_seminorm(f.c_str(), g.c_str(), simplex.c_str(),
                                     gamma1, gamma2, seed, &rep);
    exit_code = emit(st, rep, false);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}
