#include "roughforms/compensator.hpp"

#include <cmath>
#include <limits>

namespace roughforms {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mid_triangle_value(const Germ& omega, const Point& a, const Point& b) {
  return omega(Simplex::triangle(a, midpoint(a, b), b));
}

// Pairwise sum of mid-triangle values over the 2^depth dyadic subsegments.
double level_sum(const Germ& omega, const Point& a, const Point& b, int depth,
                 long long& evals) {
  if (depth == 0) {
    ++evals;
    return mid_triangle_value(omega, a, b);
  }
  const Point m = midpoint(a, b);
  return level_sum(omega, a, m, depth - 1, evals) +
         level_sum(omega, m, b, depth - 1, evals);
}

}  // namespace

CompensatorReport side_compensator(const Germ& omega, const Simplex& seg,
                                   const CompensatorOptions& opts) {
  if (omega.degree != 2)
    throw DegreeError("side compensator expects a 2-germ");
  if (seg.degree != 1)
    throw DegreeError("side compensator expects a segment");
  if (opts.max_depth < 0 || opts.max_depth > 40)
    throw ParameterError("compensator depth must be between 0 and 40");

  const Point a = seg.vertex(0);
  const Point b = seg.vertex(1);

  CompensatorReport rep;
  rep.observed_rate = kNaN;
  rep.error_estimate = kNaN;

  double running = 0.0;   // L_n
  double prev_s = 0.0;    // S_{n-1}
  double prev_inc = kNaN;
  double ext_prev = kNaN;
  double log_rate_sum = 0.0;
  int rate_count = 0;
  int ok_streak = 0;
  bool stopped = false;

  for (int level = 0; level <= opts.max_depth; ++level) {
    const double s = level_sum(omega, a, b, level, rep.germ_evals);
    const double inc = level == 0 ? s : s - 2.0 * prev_s;
    running = level == 0 ? s : running + inc;

    SewLevel row;
    row.level = level;
    row.n_leaves = 1LL << level;
    row.partial_sum = running;
    row.increment = level == 0 ? 0.0 : inc;
    row.rate_estimate = kNaN;

    double ext = running;
    if (level >= 1) {
      if (level >= 2 && prev_inc != 0.0 && !std::isnan(prev_inc)) {
        const double ratio = std::abs(inc) / std::abs(prev_inc);
        row.rate_estimate = ratio;
        if (inc != 0.0) {
          log_rate_sum += std::log(ratio);
          ++rate_count;
        }
        const double r = inc / prev_inc;
        if (opts.extrapolate && std::abs(r) < 0.98)
          ext = running + inc * r / (1.0 - r);
      }
      rep.levels.push_back(row);

      const double tol = opts.abs_tol + opts.rel_tol * std::abs(running);
      const double watched =
          opts.extrapolate && !std::isnan(ext_prev) ? ext - ext_prev : inc;
      if (inc == 0.0) {
        rep.status = SewStatus::converged;
        rep.value = opts.extrapolate ? ext : running;
        rep.stopped_at = level;
        rep.error_estimate = 0.0;
        stopped = true;
      } else if (std::abs(watched) <= tol) {
        if (++ok_streak >= 2) {
          rep.status = SewStatus::converged;
          rep.value = opts.extrapolate ? ext : running;
          rep.stopped_at = level;
          stopped = true;
        }
      } else {
        ok_streak = 0;
      }
      prev_inc = inc;
    } else {
      rep.levels.push_back(row);
    }

    prev_s = s;
    ext_prev = ext;
    if (stopped) break;
    if (level == opts.max_depth) {
      rep.status = SewStatus::max_level;
      rep.value = opts.extrapolate ? ext : running;
      rep.stopped_at = level;
    }
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
  return rep;
}

Germ side_compensator_germ(const Germ& omega, const CompensatorOptions& opts) {
  Germ g;
  g.degree = 1;
  g.label = "compensator(" + omega.label + ")";
  g.eval = [omega, opts](const Simplex& s) {
    return side_compensator(omega, s, opts).value;
  };
  return g;
}

double compensator_bound_constant(double alpha) {
  if (alpha <= 1.0)
    throw ParameterError("compensator bound needs exponent > 1");
  return 1.0 / (1.0 - std::pow(2.0, 1.0 - alpha));
}

namespace {

// Apex for a probe triangle over [p, q]: the midpoint pushed out along the
// rotated edge when the ambient space has room, the midpoint itself in 1D.
Point probe_apex(const Point& p, const Point& q) {
  const Point m = midpoint(p, q);
  if (p.dim < 2) return m;
  Point w = m;
  const Point u = q - p;
  w[0] -= 0.5 * u[1];
  w[1] += 0.5 * u[0];
  return w;
}

}  // namespace

CancellationReport cancellation_check(const Germ& omega, const Simplex& seg,
                                      const CompensatorOptions& opts,
                                      int samples) {
  if (seg.degree != 1) throw DegreeError("cancellation check expects a segment");
  const Germ L = side_compensator_germ(omega, opts);
  CancellationReport rep;
  rep.witness = seg;
  // Reconstruction: omega(T) should equal L(boundary T) on probe triangles
  // erected over the dyadic subsegments of `seg`.
  std::vector<Simplex> stack{seg};
  for (int i = 0; i < samples; ++i) {
    if (stack.empty()) break;
    const Simplex cur = stack.front();
    stack.erase(stack.begin());
    const Point p = cur.vertex(0);
    const Point q = cur.vertex(1);
    const Point m = midpoint(p, q);
    const Point w = probe_apex(p, q);
    const Simplex tri = Simplex::triangle(p, w, q);
    const double defect =
        std::abs(omega(tri) - eval_chain(L, boundary(tri)));
    ++rep.samples;
    if (defect > rep.max_defect) {
      rep.max_defect = defect;
      rep.witness = tri;
    }
    stack.push_back(Simplex::segment(p, m));
    stack.push_back(Simplex::segment(m, q));
  }
  return rep;
}

UniquenessProbe compensator_uniqueness_probe(const Germ& candidate,
                                             const Germ& omega,
                                             const Simplex& seg, int depth) {
  if (candidate.degree != 1)
    throw DegreeError("uniqueness probe expects a 1-germ candidate");
  UniquenessProbe probe;
  const Point a = seg.vertex(0);
  const Point b = seg.vertex(1);
  // Walk the dyadic tree: recursion defect everywhere, value decay at the
  // deepest level.
  for (int d = 0; d < depth; ++d) {
    const long long n = 1LL << d;
    for (long long i = 0; i < n; ++i) {
      const Point p = lerp(a, b, static_cast<double>(i) / static_cast<double>(n));
      const Point q =
          lerp(a, b, static_cast<double>(i + 1) / static_cast<double>(n));
      const Point m = midpoint(p, q);
      const double defect =
          std::abs(candidate(Simplex::segment(p, q)) -
                   candidate(Simplex::segment(p, m)) -
                   candidate(Simplex::segment(m, q)) +
                   omega(Simplex::triangle(p, m, q)));
      probe.additivity_defect = std::max(probe.additivity_defect, defect);
    }
  }
  {
    const long long n = 1LL << depth;
    const double h = dist(a, b) / static_cast<double>(n);
    for (long long i = 0; i < n; ++i) {
      const Point p = lerp(a, b, static_cast<double>(i) / static_cast<double>(n));
      const Point q =
          lerp(a, b, static_cast<double>(i + 1) / static_cast<double>(n));
      if (h > 0.0)
        probe.decay_tail = std::max(
            probe.decay_tail, std::abs(candidate(Simplex::segment(p, q))) / h);
    }
  }
  probe.point_value = std::abs(candidate(Simplex::segment(a, a)));
  return probe;
}

}  // namespace roughforms
