#include "roughforms/sew.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <limits>

namespace roughforms {

std::string to_string(SewStatus s) {
  switch (s) {
    case SewStatus::converged: return "converged";
    case SewStatus::max_level: return "max_level";
    case SewStatus::diverged: return "diverged";
  }
  return "unknown";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int default_max_level(int degree) { return degree == 2 ? 10 : 14; }

// Fixed pairwise reduction over the subdivision tree. The combination order
// is a property of the tree alone, so sequential and parallel runs produce
// bit-identical sums.
double subtree_sum(const Germ& g, const Simplex& s, double w, int depth,
                   SubdivideVariant variant, int split_depth,
                   std::atomic<long long>& evals) {
  if (depth == 0) {
    evals.fetch_add(1, std::memory_order_relaxed);
    return w * g(s);
  }
  const Chain c = subdivide(s, variant);
  const std::size_t n = c.terms.size();
  std::vector<double> vals(n);
  if (split_depth > 0) {
    std::vector<std::future<double>> futs;
    futs.reserve(n);
    for (const ChainTerm& t : c.terms) {
      futs.push_back(std::async(std::launch::async, [&, t]() {
        return subtree_sum(g, t.simplex, w * t.weight, depth - 1, variant,
                           split_depth - 1, evals);
      }));
    }
    for (std::size_t i = 0; i < n; ++i) vals[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < n; ++i)
      vals[i] = subtree_sum(g, c.terms[i].simplex, w * c.terms[i].weight,
                            depth - 1, variant, 0, evals);
  }
  if (n == 1) return vals[0];
  if (n == 2) return vals[0] + vals[1];
  return (vals[0] + vals[1]) + (vals[2] + vals[3]);
}

double kahan_level_sum(const Germ& g, const Simplex& s, int level,
                       SubdivideVariant variant,
                       std::atomic<long long>& evals) {
  double sum = 0.0;
  double comp = 0.0;
  dya_iter(s, level, variant, [&](const Simplex& leaf, double w) {
    evals.fetch_add(1, std::memory_order_relaxed);
    const double x = w * g(leaf);
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  });
  return sum + comp;
}

int pick_split_depth(int threads, int arity, int level) {
  if (threads <= 1 || arity <= 1) return 0;
  int depth = 0;
  long long leaves = 1;
  while (leaves < threads && depth < level && depth < 4) {
    leaves *= arity;
    ++depth;
  }
  return depth;
}

}  // namespace

SewReport sew_eval(const Germ& g, const Simplex& s, const SewOptions& opts) {
  if (g.degree != s.degree)
    throw DegreeError("sewing germ degree does not match simplex degree");
  if (s.degree > 2) throw DegreeError("sewing supports degrees 0 to 2");
  if (opts.abs_tol < 0.0 || opts.rel_tol < 0.0)
    throw ParameterError("tolerances must be nonnegative");

  const int max_level =
      opts.max_level < 0 ? default_max_level(s.degree) : opts.max_level;
  const int arity = subdivide_arity(s.degree);

  SewReport rep;
  rep.observed_rate = kNaN;
  rep.error_estimate = kNaN;
  std::atomic<long long> evals{0};

  double prev_sum = 0.0;
  double prev_inc = kNaN;
  double ext_prev = kNaN;
  double log_rate_sum = 0.0;
  int rate_count = 0;
  int ok_streak = 0;
  int div_streak = 0;
  bool stopped = false;

  for (int level = 0; level <= max_level; ++level) {
    if (s.degree * level > 30) {
      // Same cost cap dya_iter enforces; surfaces as a truncated run.
      rep.status = SewStatus::max_level;
      rep.stopped_at = level - 1;
      rep.value = opts.extrapolate && !std::isnan(ext_prev) ? ext_prev : prev_sum;
      stopped = true;
      break;
    }
    double sum;
    if (opts.kahan) {
      sum = kahan_level_sum(g, s, level, opts.variant, evals);
    } else {
      const int split = pick_split_depth(opts.threads, arity, level);
      sum = subtree_sum(g, s, 1.0, level, opts.variant, split, evals);
    }

    SewLevel row;
    row.level = level;
    row.n_leaves = 1;
    for (int i = 0; i < level; ++i) row.n_leaves *= arity;
    row.partial_sum = sum;
    row.increment = level == 0 ? 0.0 : sum - prev_sum;
    row.rate_estimate = kNaN;

    double ext = sum;
    if (level >= 1) {
      const double inc = row.increment;
      if (level >= 2 && prev_inc != 0.0 && !std::isnan(prev_inc)) {
        const double ratio = std::abs(inc) / std::abs(prev_inc);
        row.rate_estimate = ratio;
        if (inc != 0.0) {
          log_rate_sum += std::log(ratio);
          ++rate_count;
        }
        const double r = inc / prev_inc;
        if (opts.extrapolate && std::abs(r) < 0.98)
          ext = sum + inc * r / (1.0 - r);
      }
      rep.levels.push_back(row);

      const double tol = opts.abs_tol + opts.rel_tol * std::abs(sum);
      const double watched =
          opts.extrapolate && !std::isnan(ext_prev) ? ext - ext_prev : inc;

      if (inc == 0.0) {
        rep.status = SewStatus::converged;
        rep.value = opts.extrapolate ? ext : sum;
        rep.stopped_at = level;
        rep.error_estimate = 0.0;
        stopped = true;
      } else if (std::abs(watched) <= tol) {
        if (++ok_streak >= 2) {
          rep.status = SewStatus::converged;
          rep.value = opts.extrapolate ? ext : sum;
          rep.stopped_at = level;
          stopped = true;
        }
      } else {
        ok_streak = 0;
      }

      if (!stopped && !std::isnan(row.rate_estimate)) {
        if (row.rate_estimate >= opts.divergence_ratio &&
            std::abs(inc) > opts.abs_tol) {
          if (++div_streak >= opts.divergence_window) {
            rep.status = SewStatus::diverged;
            rep.value = sum;
            rep.stopped_at = level;
            stopped = true;
          }
        } else {
          div_streak = 0;
        }
      }
      prev_inc = inc;
    } else {
      rep.levels.push_back(row);
    }

    prev_sum = sum;
    ext_prev = ext;
    if (stopped) break;
    if (level == max_level) {
      rep.status = SewStatus::max_level;
      rep.value = opts.extrapolate ? ext : sum;
      rep.stopped_at = level;
      stopped = true;
    }
  }

  if (!stopped) {
    // max_level < 0 handled above; only reachable when the budget cap fired
    // before level 0, which cannot happen for degree <= 2.
    rep.status = SewStatus::max_level;
    rep.value = prev_sum;
  }

  if (rate_count > 0) rep.observed_rate = std::exp(log_rate_sum / rate_count);

  if (std::isnan(rep.error_estimate)) {
    const double last_inc =
        rep.levels.size() >= 2 ? rep.levels.back().increment : kNaN;
    if (!std::isnan(last_inc)) {
      const double r = rep.observed_rate;
      if (!std::isnan(r) && r < 0.9) {
        rep.error_estimate = std::abs(last_inc) / (1.0 - r);
      } else {
        rep.error_estimate = 10.0 * std::abs(last_inc);
      }
    }
  }
  rep.germ_evals = evals.load();
  return rep;
}

Germ sewn(const Germ& g, const SewOptions& opts) {
  Germ out;
  out.degree = g.degree;
  out.label = "sewn(" + g.label + ")";
  out.eval = [g, opts](const Simplex& s) { return sew_eval(g, s, opts).value; };
  return out;
}

double sew_rate(const Germ& g, const Simplex& s, SewOptions opts) {
  // Rate estimation wants the whole level history, not an early exit.
  opts.abs_tol = 0.0;
  opts.rel_tol = 0.0;
  opts.extrapolate = false;
  opts.divergence_window = 1 << 20;  // never flag
  const SewReport rep = sew_eval(g, s, opts);
  int nonzero = 0;
  for (const SewLevel& row : rep.levels) {
    if (row.level >= 1 && row.increment != 0.0) ++nonzero;
  }
  if (nonzero < 3 || std::isnan(rep.observed_rate))
    throw InsufficientDataError("rate estimate needs at least three nonzero increments");
  return rep.observed_rate;
}

namespace {

void add_check(CertifyReport& rep, const std::string& name, double defect,
               double tol, const Simplex& witness) {
  CertifyCheck c;
  c.name = name;
  c.defect = defect;
  c.pass = defect <= tol;
  c.witness = witness;
  rep.checks.push_back(c);
  rep.pass = rep.pass && c.pass;
}

}  // namespace

CertifyReport certify_sewn(const Germ& g, const Simplex& reference,
                           const SewOptions& opts, double tol) {
  const Germ sv = memoized(sewn(g, opts));
  CertifyReport rep;
  rep.pass = true;

  std::vector<Simplex> probes{reference};
  {
    const Point anchor = reference.vertex(0);
    for (double lam : {0.5, 0.25}) {
      probes.push_back(push_forward(
          [anchor, lam](const Point& p) { return anchor + lam * (p - anchor); },
          reference));
    }
  }

  double scale = 1.0;
  for (const Simplex& s : probes) scale = std::max(scale, std::abs(sv(s)));
  const double bar = tol * scale;

  {
    double worst = 0.0;
    Simplex witness = reference;
    for (const Simplex& s : probes) {
      const double base = sv(s);
      std::vector<std::vector<int>> sigmas;
      if (s.degree == 1) {
        sigmas = {{1, 0}};
      } else if (s.degree == 2) {
        sigmas = {{1, 0, 2}, {1, 2, 0}};
      }
      for (const auto& sigma : sigmas) {
        const SignedSimplex ss = permute(sigma, s);
        const double d = std::abs(sv(ss.simplex) - ss.sign * base);
        if (d > worst) {
          worst = d;
          witness = s;
        }
      }
    }
    add_check(rep, "alternating", worst, bar, witness);
  }

  {
    double worst = 0.0;
    Simplex witness = reference;
    for (const Simplex& s : probes) {
      const double whole = sv(s);
      if (s.degree == 1) {
        for (double t : {0.37, 0.5}) {
          const Point m = lerp(s.vertex(0), s.vertex(1), t);
          const double d = std::abs(sv(Simplex::segment(s.vertex(0), m)) +
                                    sv(Simplex::segment(m, s.vertex(1))) -
                                    whole);
          if (d > worst) {
            worst = d;
            witness = s;
          }
        }
      } else if (s.degree == 2) {
        for (double t : {0.3, 0.5}) {
          const double d = std::abs(eval_chain(sv, cut(s, t)) - whole);
          if (d > worst) {
            worst = d;
            witness = s;
          }
        }
      }
    }
    add_check(rep, "cut_additive", worst, bar, witness);
  }

  if (reference.degree == 2) {
    double worst = 0.0;
    Simplex witness = reference;
    for (const Simplex& s : probes) {
      const double d = std::abs(eval_chain(sv, flip(s)));
      if (d > worst) {
        worst = d;
        witness = s;
      }
    }
    add_check(rep, "flip_annihilation", worst, bar, witness);
  }

  {
    double worst = 0.0;
    const Point a = reference.vertex(0);
    const Point b = reference.vertex(reference.degree);
    Simplex witness = reference;
    std::vector<Simplex> degs;
    if (reference.degree == 1) {
      degs.push_back(Simplex::segment(a, a));
    } else if (reference.degree == 2) {
      degs.push_back(Simplex::triangle(a, a, b));
      degs.push_back(Simplex::triangle(a, b, b));
      degs.push_back(Simplex::triangle(a, midpoint(a, b), b));
    }
    for (const Simplex& s : degs) {
      const double d = std::abs(sv(s));
      if (d > worst) {
        worst = d;
        witness = s;
      }
    }
    add_check(rep, "degenerate_vanishing", worst, bar, witness);
  }

  return rep;
}

}  // namespace roughforms
