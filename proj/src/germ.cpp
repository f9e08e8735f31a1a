#include "roughforms/germ.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "roughforms/decompose.hpp"

namespace roughforms {

double Scalar0::operator()(const Point& p) const {
  if (!eval) throw ParameterError("scalar has no evaluator");
  return eval(p);
}

Scalar0 scalar_constant(double c) {
  Scalar0 f;
  f.eval = [c](const Point&) { return c; };
  f.label = std::to_string(c);
  f.holder_alpha = 1.0;
  f.holder_const = 0.0;
  return f;
}

Scalar0 coordinate(int index) {
  if (index < 0 || index >= kMaxDim)
    throw DimensionError("coordinate index out of range");
  Scalar0 f;
  f.eval = [index](const Point& p) {
    if (index >= p.dim) throw DimensionError("coordinate index exceeds point dimension");
    return p[index];
  };
  f.label = "x" + std::to_string(index + 1);
  f.holder_alpha = 1.0;
  f.holder_const = 1.0;
  return f;
}

double Germ::operator()(const Simplex& s) const {
  if (!eval) throw ParameterError("germ has no evaluator");
  if (s.degree != degree) throw DegreeError("germ applied to wrong degree");
  return eval(s);
}

Germ germ_from_scalar(const Scalar0& f) {
  Germ g;
  g.degree = 0;
  g.label = f.label;
  g.eval = [f](const Simplex& s) { return f(s.vertex(0)); };
  return g;
}

Germ zero_germ(int degree) {
  Germ g;
  g.degree = degree;
  g.label = "0";
  g.eval = [](const Simplex&) { return 0.0; };
  return g;
}

double eval_chain(const Germ& g, const Chain& c) {
  if (c.degree != g.degree && !c.terms.empty())
    throw DegreeError("chain degree does not match germ degree");
  double s = 0.0;
  for (const ChainTerm& t : c.terms) s += t.weight * g(t.simplex);
  return s;
}

Germ add(const Germ& a, const Germ& b, double wa, double wb) {
  if (a.degree != b.degree) throw DegreeError("germ degrees differ");
  Germ g;
  g.degree = a.degree;
  g.label = a.label + "+" + b.label;
  g.eval = [a, b, wa, wb](const Simplex& s) { return wa * a(s) + wb * b(s); };
  return g;
}

Germ scale(double c, const Germ& g) {
  Germ r;
  r.degree = g.degree;
  r.label = g.label;
  r.eval = [c, g](const Simplex& s) { return c * g(s); };
  return r;
}

Germ coboundary(const Germ& g) {
  if (g.degree >= kMaxDegree)
    throw DegreeError("coboundary would exceed the maximal degree");
  Germ d;
  d.degree = g.degree + 1;
  d.label = "d(" + g.label + ")";
  d.eval = [g](const Simplex& s) { return eval_chain(g, boundary(s)); };
  return d;
}

Germ cup(const Germ& a, const Germ& b) {
  if (a.degree + b.degree > kMaxDegree)
    throw DegreeError("cup product would exceed the maximal degree");
  Germ g;
  g.degree = a.degree + b.degree;
  g.label = a.label + " cup " + b.label;
  const int k = a.degree;
  const int h = b.degree;
  g.eval = [a, b, k, h](const Simplex& s) {
    std::array<Point, kMaxDegree + 1> front{};
    std::array<Point, kMaxDegree + 1> back{};
    for (int i = 0; i <= k; ++i)
      front[static_cast<std::size_t>(i)] = s.vertex(i);
    for (int i = k + 1; i <= kMaxDegree; ++i)
      front[static_cast<std::size_t>(i)] = front[static_cast<std::size_t>(k)];
    for (int i = 0; i <= h; ++i)
      back[static_cast<std::size_t>(i)] = s.vertex(k + i);
    for (int i = h + 1; i <= kMaxDegree; ++i)
      back[static_cast<std::size_t>(i)] = back[static_cast<std::size_t>(h)];
    return a(Simplex(k, front)) * b(Simplex(h, back));
  };
  return g;
}

Germ pullback(const Germ& g, const PointMap& phi) {
  Germ r;
  r.degree = g.degree;
  r.label = "pullback(" + g.label + ")";
  r.eval = [g, phi](const Simplex& s) { return g(push_forward(phi, s)); };
  return r;
}

Germ poincare_primitive(const Germ& g, const Point& base) {
  if (g.degree == 0)
    throw DegreeError("primitive needs degree >= 1");
  Germ r;
  r.degree = g.degree - 1;
  r.label = "primitive(" + g.label + ")";
  const int k = g.degree;
  r.eval = [g, base, k](const Simplex& s) {
    std::array<Point, kMaxDegree + 1> w{};
    w[0] = base;
    for (int i = 0; i < k; ++i)
      w[static_cast<std::size_t>(i + 1)] = s.vertex(i);
    for (int i = k + 1; i <= kMaxDegree; ++i)
      w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(k)];
    return g(Simplex(k, w));
  };
  return r;
}

Gauge power_gauge(int degree, double gamma1, double gamma2) {
  if (gamma1 < 0.0 || gamma2 < 0.0)
    throw ParameterError("gauge exponents must be nonnegative");
  if (gamma2 != 0.0 && degree < 2)
    throw DegreeError("area factor needs degree >= 2");
  Germ g;
  g.degree = degree;
  g.label = "diam^" + std::to_string(gamma1) +
            (gamma2 != 0.0 ? " vol2^" + std::to_string(gamma2) : "");
  g.eval = [gamma1, gamma2](const Simplex& s) {
    double v = gamma1 == 0.0 ? 1.0 : std::pow(diameter(s), gamma1);
    if (gamma2 != 0.0) v *= std::pow(volume(s, 2), gamma2);
    return v;
  };
  return Gauge{g, PowerGauge{gamma1, gamma2}};
}

namespace {

Simplex shrink_toward_first(const Simplex& s, double lambda) {
  const Point anchor = s.vertex(0);
  return push_forward(
      [anchor, lambda](const Point& p) {
        return anchor + lambda * (p - anchor);
      },
      s);
}

}  // namespace

Gauge dini_transform(const Gauge& u, double r, int truncation_depth) {
  if (u.power) {
    const double e = u.power->scaling_exponent();
    if (r >= e)
      throw DivergentGaugeError("gauge resummation diverges: rate >= scaling exponent");
    const double factor = 1.0 / (1.0 - std::pow(2.0, r - e));
    Gauge out;
    out.power = u.power;
    out.germ = scale(factor, u.germ);
    out.germ.degree = u.germ.degree;
    out.germ.label = "dini(" + u.germ.label + ")";
    return out;
  }
  if (truncation_depth < 2)
    throw ParameterError("gauge resummation needs depth >= 2");
  Germ base = u.germ;
  Germ g;
  g.degree = base.degree;
  g.label = "dini(" + base.label + ")";
  g.eval = [base, r, truncation_depth](const Simplex& s) {
    double sum = 0.0;
    double prev = -1.0;
    for (int n = 0; n <= truncation_depth; ++n) {
      const double term =
          std::pow(2.0, r * n) * base(shrink_toward_first(s, std::pow(0.5, n)));
      if (n == truncation_depth && prev > 0.0 && term >= prev)
        throw DivergentGaugeError("gauge resummation diverges: terms not decaying");
      sum += term;
      prev = term;
    }
    return sum;
  };
  return Gauge{g, std::nullopt};
}

SamplerConfig default_sampler(const Simplex& reference) {
  SamplerConfig cfg;
  cfg.reference = reference;
  double lo = reference.vertex(0)[0];
  double hi = lo;
  for (int i = 0; i <= reference.degree; ++i) {
    for (int j = 0; j < reference.dim(); ++j) {
      lo = std::min(lo, reference.vertex(i)[j]);
      hi = std::max(hi, reference.vertex(i)[j]);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  cfg.box_lo = lo - 0.25 * span;
  cfg.box_hi = hi + 0.25 * span;
  return cfg;
}

namespace {

template <typename Fn>
void visit_dyadic_tree(const Simplex& root, int depth, const Fn& fn) {
  fn(root);
  if (depth == 0 || root.degree == 0 || root.degree > 2) return;
  const Chain c = dya(root);
  for (const ChainTerm& t : c.terms)
    visit_dyadic_tree(t.simplex, depth - 1, fn);
}

Point random_point(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p = Point::zero(dim);
  for (int i = 0; i < dim; ++i) p[i] = u(rng);
  return p;
}

Simplex random_simplex(std::mt19937_64& rng, int degree, int dim, double lo,
                       double hi) {
  std::array<Point, kMaxDegree + 1> w{};
  for (int i = 0; i <= degree; ++i) w[static_cast<std::size_t>(i)] =
      random_point(rng, dim, lo, hi);
  for (int i = degree + 1; i <= kMaxDegree; ++i)
    w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(degree)];
  return Simplex(degree, w);
}

template <typename Fn>
void for_each_sample(const SamplerConfig& cfg, int degree, const Fn& fn) {
  if (cfg.reference.degree == degree)
    visit_dyadic_tree(cfg.reference, cfg.dyadic_depth, fn);
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 12345ULL);
  const int dim = cfg.reference.dim();
  for (int i = 0; i < cfg.random_count; ++i)
    fn(random_simplex(rng, degree, dim, cfg.box_lo, cfg.box_hi));
  if (cfg.reference.degree == degree) {
    for (int n = 1; n <= cfg.multiscale_depth; ++n)
      fn(shrink_toward_first(cfg.reference, std::pow(0.5, n)));
  }
}

}  // namespace

SeminormEstimate seminorm_estimate(const Germ& g, const Gauge& u,
                                   const SamplerConfig& cfg) {
  if (g.degree != u.germ.degree)
    throw DegreeError("gauge degree does not match germ degree");
  SeminormEstimate best;
  best.witness = cfg.reference;
  for_each_sample(cfg, g.degree, [&](const Simplex& s) {
    const double denom = u.germ(s);
    if (!(denom > 1e-300)) return;
    const double ratio = std::abs(g(s)) / denom;
    ++best.samples;
    if (ratio > best.value) {
      best.value = ratio;
      best.witness = s;
    }
  });
  return best;
}

RegularityReport regularity_probe(const Germ& g, const SamplerConfig& cfg,
                                  double tol) {
  RegularityReport rep;
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 777ULL);
  const int dim = cfg.reference.dim();
  const int k = g.degree;

  std::vector<Simplex> probes;
  for (int i = 0; i < 64; ++i) {
    const Simplex s = random_simplex(rng, k, dim, cfg.box_lo, cfg.box_hi);
    if (!is_degenerate(s)) probes.push_back(s);
  }
  for (const Simplex& s : probes)
    rep.scale = std::max(rep.scale, std::abs(g(s)));
  const double bar = tol * std::max(1.0, rep.scale);

  // Vanishing on degenerate simplices: repeated vertices and, for degree 2,
  // collinear triples.
  rep.nonatomic_defect.witness = cfg.reference;
  if (k >= 1) {
    std::uniform_real_distribution<double> ut(0.05, 0.95);
    for (int i = 0; i < 32; ++i) {
      const Point a = random_point(rng, dim, cfg.box_lo, cfg.box_hi);
      const Point b = random_point(rng, dim, cfg.box_lo, cfg.box_hi);
      std::vector<Simplex> degs;
      if (k == 1) {
        degs.push_back(Simplex::segment(a, a));
      } else if (k == 2) {
        degs.push_back(Simplex::triangle(a, a, b));
        degs.push_back(Simplex::triangle(a, b, b));
        degs.push_back(Simplex::triangle(a, b, a));
        degs.push_back(Simplex::triangle(a, lerp(a, b, ut(rng)), b));
      }
      for (const Simplex& s : degs) {
        const double d = std::abs(g(s));
        if (d > rep.nonatomic_defect.defect) {
          rep.nonatomic_defect.defect = d;
          rep.nonatomic_defect.witness = s;
        }
      }
    }
  }
  rep.nonatomic = rep.nonatomic_defect.defect <= bar;

  // Cocycle behaviour on k-plane images: g(boundary T) for (k+1)-simplices T
  // whose vertices lie in a random affine k-plane.
  rep.closed_defect.witness = cfg.reference;
  if (k >= 1 && k < kMaxDegree) {
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    for (int i = 0; i < 32; ++i) {
      Point origin = random_point(rng, dim, cfg.box_lo, cfg.box_hi);
      std::vector<Point> frame;
      for (int a = 0; a < k; ++a) {
        Point e = Point::zero(dim);
        for (int j = 0; j < dim; ++j)
          e[j] = uu(rng) * 0.5 * (cfg.box_hi - cfg.box_lo);
        frame.push_back(e);
      }
      std::array<Point, kMaxDegree + 1> w{};
      for (int vtx = 0; vtx <= k + 1; ++vtx) {
        Point p = origin;
        for (int a = 0; a < k; ++a) p = p + uu(rng) * frame[static_cast<std::size_t>(a)];
        w[static_cast<std::size_t>(vtx)] = p;
      }
      for (int vtx = k + 2; vtx <= kMaxDegree; ++vtx)
        w[static_cast<std::size_t>(vtx)] = w[static_cast<std::size_t>(k + 1)];
      const Simplex t(k + 1, w);
      const double d = std::abs(eval_chain(g, boundary(t)));
      if (d > rep.closed_defect.defect) {
        rep.closed_defect.defect = d;
        rep.closed_defect.witness = t;
      }
    }
  }
  rep.closed_on_planes = rep.closed_defect.defect <= bar;

  // Sign alternation under vertex permutations.
  rep.alternating_defect.witness = cfg.reference;
  if (k >= 1) {
    for (int i = 0; i < 16; ++i) {
      const Simplex s = random_simplex(rng, k, dim, cfg.box_lo, cfg.box_hi);
      const double base = g(s);
      std::vector<int> sigma(static_cast<std::size_t>(k) + 1);
      for (int j = 0; j <= k; ++j) sigma[static_cast<std::size_t>(j)] = j;
      do {
        const SignedSimplex ss = permute(sigma, s);
        const double d = std::abs(g(ss.simplex) - ss.sign * base);
        if (d > rep.alternating_defect.defect) {
          rep.alternating_defect.defect = d;
          rep.alternating_defect.witness = ss.simplex;
        }
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
  rep.alternating = rep.alternating_defect.defect <= bar;
  return rep;
}

namespace {

constexpr double kQuantum = 1e12;

std::int64_t quantize(double x) {
  return static_cast<std::int64_t>(std::llround(x * kQuantum));
}

struct PointKey {
  std::array<std::int64_t, kMaxDim + 1> q{};
  bool operator==(const PointKey&) const = default;
};

struct SimplexKey {
  std::array<std::int64_t, (kMaxDegree + 1) * kMaxDim + 2> q{};
  bool operator==(const SimplexKey&) const = default;
};

template <typename Key>
struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t v : k.q) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

PointKey make_key(const Point& p) {
  PointKey k;
  k.q[0] = p.dim;
  for (int i = 0; i < p.dim; ++i)
    k.q[static_cast<std::size_t>(i + 1)] = quantize(p[i]);
  return k;
}

SimplexKey make_key(const Simplex& s) {
  SimplexKey k;
  k.q[0] = s.degree;
  k.q[1] = s.dim();
  std::size_t at = 2;
  for (int i = 0; i <= s.degree; ++i) {
    for (int j = 0; j < s.dim(); ++j) k.q[at++] = quantize(s.vertex(i)[j]);
  }
  return k;
}

template <typename Key, typename Obj, typename Eval>
double cached_eval(std::unordered_map<Key, double, KeyHash<Key>>& cache,
                   std::shared_mutex& mu, MemoStats* stats, const Obj& obj,
                   const Key& key, const Eval& eval) {
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      if (stats) stats->hits.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }
  if (stats) stats->misses.fetch_add(1, std::memory_order_relaxed);
  const double value = eval(obj);
  std::unique_lock lock(mu);
  cache[key] = value;
  return value;
}

}  // namespace

Scalar0 memoized(const Scalar0& f, std::shared_ptr<MemoStats> stats) {
  struct State {
    std::unordered_map<PointKey, double, KeyHash<PointKey>> cache;
    std::shared_mutex mu;
  };
  auto state = std::make_shared<State>();
  Scalar0 out = f;
  out.eval = [f, state, stats](const Point& p) {
    return cached_eval(state->cache, state->mu, stats.get(), p, make_key(p),
                       [&f](const Point& q) { return f(q); });
  };
  return out;
}

Germ memoized(const Germ& g, std::shared_ptr<MemoStats> stats) {
  struct State {
    std::unordered_map<SimplexKey, double, KeyHash<SimplexKey>> cache;
    std::shared_mutex mu;
  };
  auto state = std::make_shared<State>();
  Germ out = g;
  out.eval = [g, state, stats](const Simplex& s) {
    return cached_eval(state->cache, state->mu, stats.get(), s, make_key(s),
                       [&g](const Simplex& t) { return g(t); });
  };
  return out;
}

}  // namespace roughforms
