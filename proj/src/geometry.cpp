#include "roughforms/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace roughforms {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw DimensionError(msg);
}

}  // namespace

Point::Point(std::initializer_list<double> coords) {
  if (coords.size() == 0 || coords.size() > static_cast<std::size_t>(kMaxDim))
    throw DimensionError("point dimension must be between 1 and 8");
  dim = static_cast<int>(coords.size());
  std::size_t i = 0;
  for (double c : coords) {
    if (!std::isfinite(c)) throw ParameterError("point coordinate not finite");
    x[i++] = c;
  }
}

Point Point::zero(int d) {
  if (d < 1 || d > kMaxDim)
    throw DimensionError("point dimension must be between 1 and 8");
  Point p;
  p.dim = d;
  return p;
}

bool operator==(const Point& a, const Point& b) {
  return a.dim == b.dim && a.x == b.x;
}

Point operator+(const Point& a, const Point& b) {
  require(a.dim == b.dim, "point dimensions differ");
  Point r = a;
  for (int i = 0; i < a.dim; ++i) r.x[static_cast<std::size_t>(i)] += b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  require(a.dim == b.dim, "point dimensions differ");
  Point r = a;
  for (int i = 0; i < a.dim; ++i) r.x[static_cast<std::size_t>(i)] -= b[i];
  return r;
}

Point operator*(double c, const Point& p) {
  Point r = p;
  for (int i = 0; i < p.dim; ++i) r.x[static_cast<std::size_t>(i)] *= c;
  return r;
}

double dot(const Point& a, const Point& b) {
  require(a.dim == b.dim, "point dimensions differ");
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& p) { return std::sqrt(dot(p, p)); }

double dist(const Point& a, const Point& b) { return norm(a - b); }

Point lerp(const Point& a, const Point& b, double t) {
  require(a.dim == b.dim, "point dimensions differ");
  Point r = a;
  for (int i = 0; i < a.dim; ++i)
    r.x[static_cast<std::size_t>(i)] = (1.0 - t) * a[i] + t * b[i];
  return r;
}

Point midpoint(const Point& a, const Point& b) { return lerp(a, b, 0.5); }

Simplex::Simplex(int k, const std::array<Point, kMaxDegree + 1>& verts) {
  if (k < 0 || k > kMaxDegree)
    throw DegreeError("simplex degree must be between 0 and 3");
  degree = k;
  v = verts;
  const int d = v[0].dim;
  if (d < 1 || d > kMaxDim) throw DimensionError("simplex vertex dimension");
  for (int i = 0; i <= k; ++i) {
    if (v[static_cast<std::size_t>(i)].dim != d)
      throw DimensionError("simplex vertices have mixed dimensions");
  }
  for (int i = k + 1; i <= kMaxDegree; ++i)
    v[static_cast<std::size_t>(i)] = Point::zero(d);
}

Simplex Simplex::vertex(const Point& p) { return Simplex(0, {p, p, p, p}); }

Simplex Simplex::segment(const Point& p0, const Point& p1) {
  return Simplex(1, {p0, p1, p1, p1});
}

Simplex Simplex::triangle(const Point& p0, const Point& p1, const Point& p2) {
  return Simplex(2, {p0, p1, p2, p2});
}

Simplex Simplex::tetrahedron(const Point& p0, const Point& p1, const Point& p2,
                             const Point& p3) {
  return Simplex(3, {p0, p1, p2, p3});
}

const Point& Simplex::vertex(int i) const {
  if (i < 0 || i > degree) throw ParameterError("vertex index out of range");
  return v[static_cast<std::size_t>(i)];
}

Simplex Simplex::face(int drop) const {
  if (degree == 0) throw DegreeError("a vertex has no faces");
  if (drop < 0 || drop > degree)
    throw ParameterError("face index out of range");
  std::array<Point, kMaxDegree + 1> w{};
  int j = 0;
  for (int i = 0; i <= degree; ++i) {
    if (i != drop) w[static_cast<std::size_t>(j++)] = vertex(i);
  }
  for (; j <= kMaxDegree; ++j)
    w[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j - 1)];
  return Simplex(degree - 1, w);
}

bool operator==(const Simplex& a, const Simplex& b) {
  if (a.degree != b.degree) return false;
  for (int i = 0; i <= a.degree; ++i) {
    if (!(a.vertex(i) == b.vertex(i))) return false;
  }
  return true;
}

Chain& Chain::add(double w, const Simplex& s) {
  if (terms.empty() && degree == 0 && s.degree != 0) degree = s.degree;
  if (s.degree != degree)
    throw DegreeError("chain terms must share one degree");
  terms.push_back({w, s});
  return *this;
}

Chain& Chain::add(const Chain& c, double scale) {
  for (const ChainTerm& t : c.terms) add(scale * t.weight, t.simplex);
  return *this;
}

Chain operator+(const Chain& a, const Chain& b) {
  Chain r = a;
  r.add(b);
  return r;
}

Chain operator-(const Chain& a, const Chain& b) {
  Chain r = a;
  r.add(b, -1.0);
  return r;
}

Chain operator*(double c, const Chain& a) {
  Chain r = a;
  for (ChainTerm& t : r.terms) t.weight *= c;
  return r;
}

namespace {

bool simplex_less(const Simplex& a, const Simplex& b) {
  for (int i = 0; i <= a.degree; ++i) {
    for (int j = 0; j < kMaxDim; ++j) {
      const double ax = a.vertex(i).x[static_cast<std::size_t>(j)];
      const double bx = b.vertex(i).x[static_cast<std::size_t>(j)];
      if (ax != bx) return ax < bx;
    }
  }
  return false;
}

}  // namespace

Chain normalize(const Chain& c) {
  Chain r(c.degree);
  r.terms = c.terms;
  std::stable_sort(r.terms.begin(), r.terms.end(),
                   [](const ChainTerm& a, const ChainTerm& b) {
                     return simplex_less(a.simplex, b.simplex);
                   });
  std::vector<ChainTerm> merged;
  for (const ChainTerm& t : r.terms) {
    if (!merged.empty() && merged.back().simplex == t.simplex) {
      merged.back().weight += t.weight;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const ChainTerm& t) { return t.weight == 0.0; });
  r.terms = std::move(merged);
  return r;
}

namespace {

bool simplices_close(const Simplex& a, const Simplex& b, double tol) {
  if (a.degree != b.degree || a.dim() != b.dim()) return false;
  for (int i = 0; i <= a.degree; ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (std::abs(a.vertex(i)[j] - b.vertex(i)[j]) > tol) return false;
    }
  }
  return true;
}

}  // namespace

bool chains_match(const Chain& a, const Chain& b, double coord_tol,
                  double weight_tol) {
  const Chain na = normalize(a);
  const Chain nb = normalize(b);
  if (na.degree != nb.degree || na.terms.size() != nb.terms.size())
    return false;
  std::vector<bool> used(nb.terms.size(), false);
  for (const ChainTerm& ta : na.terms) {
    bool found = false;
    for (std::size_t j = 0; j < nb.terms.size(); ++j) {
      if (used[j]) continue;
      const ChainTerm& tb = nb.terms[j];
      if (std::abs(ta.weight - tb.weight) <= weight_tol &&
          simplices_close(ta.simplex, tb.simplex, coord_tol)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Chain boundary(const Simplex& s) {
  if (s.degree == 0) throw DegreeError("boundary needs degree >= 1");
  Chain r(s.degree - 1);
  double sign = 1.0;
  for (int i = 0; i <= s.degree; ++i) {
    r.add(sign, s.face(i));
    sign = -sign;
  }
  return r;
}

Chain boundary(const Chain& c) {
  if (c.degree == 0) throw DegreeError("boundary needs degree >= 1");
  Chain r(c.degree - 1);
  for (const ChainTerm& t : c.terms) r.add(boundary(t.simplex), t.weight);
  return r;
}

Simplex push_forward(const PointMap& phi, const Simplex& s) {
  std::array<Point, kMaxDegree + 1> w{};
  for (int i = 0; i <= s.degree; ++i)
    w[static_cast<std::size_t>(i)] = phi(s.vertex(i));
  for (int i = s.degree + 1; i <= kMaxDegree; ++i)
    w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(s.degree)];
  return Simplex(s.degree, w);
}

Chain push_forward(const PointMap& phi, const Chain& c) {
  Chain r(c.degree);
  for (const ChainTerm& t : c.terms)
    r.add(t.weight, push_forward(phi, t.simplex));
  return r;
}

int permutation_sign(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> seen(sigma.size(), false);
  for (int s : sigma) {
    if (s < 0 || s >= n) throw PermutationError("permutation entry out of range");
    if (seen[static_cast<std::size_t>(s)])
      throw PermutationError("permutation entry repeated");
    seen[static_cast<std::size_t>(s)] = true;
  }
  int sign = 1;
  std::vector<bool> visited(sigma.size(), false);
  for (int i = 0; i < n; ++i) {
    if (visited[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    int j = i;
    while (!visited[static_cast<std::size_t>(j)]) {
      visited[static_cast<std::size_t>(j)] = true;
      j = sigma[static_cast<std::size_t>(j)];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

SignedSimplex permute(const std::vector<int>& sigma, const Simplex& s) {
  if (static_cast<int>(sigma.size()) != s.degree + 1)
    throw PermutationError("permutation size must be degree + 1");
  const int sign = permutation_sign(sigma);
  // Result slot sigma(i) holds input vertex i, i.e. slot i holds vertex
  // sigma^{-1}(i).
  std::array<Point, kMaxDegree + 1> w{};
  for (int i = 0; i <= s.degree; ++i)
    w[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] =
        s.vertex(i);
  for (int i = s.degree + 1; i <= kMaxDegree; ++i)
    w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(s.degree)];
  return {Simplex(s.degree, w), sign};
}

namespace {

// sqrt(det(P P^T)) / k! over the given vertex subset.
double tuple_volume(const Simplex& s, const std::array<int, 4>& idx, int k) {
  if (k == 0) return 1.0;
  double g[3][3] = {};
  const Point& base = s.vertex(idx[0]);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const double gij =
          dot(s.vertex(idx[static_cast<std::size_t>(i + 1)]) - base,
              s.vertex(idx[static_cast<std::size_t>(j + 1)]) - base);
      g[i][j] = gij;
      g[j][i] = gij;
    }
  }
  double det = 0.0;
  if (k == 1) {
    det = g[0][0];
  } else if (k == 2) {
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  } else {
    det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
          g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
          g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  }
  det = std::max(det, 0.0);
  static constexpr double kFactorial[4] = {1.0, 1.0, 2.0, 6.0};
  return std::sqrt(det) / kFactorial[k];
}

}  // namespace

double volume(const Simplex& s, int h) {
  if (h < 0 || h > s.degree)
    throw ParameterError("volume order must be between 0 and degree");
  if (h == 0) return 1.0;
  // Max over all (h+1)-vertex subtuples; for h == degree there is one.
  double best = 0.0;
  std::array<int, 4> idx{};
  const int n = s.degree + 1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != h + 1) continue;
    int j = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) idx[static_cast<std::size_t>(j++)] = i;
    }
    best = std::max(best, tuple_volume(s, idx, h));
  }
  return best;
}

double volume(const Simplex& s) { return volume(s, s.degree); }

double diameter(const Simplex& s) {
  if (s.degree == 0) return 0.0;
  return volume(s, 1);
}

bool is_degenerate(const Simplex& s, double rel_tol) {
  if (s.degree == 0) return false;
  const double d = diameter(s);
  double scale = 1.0;
  for (int i = 0; i < s.degree; ++i) scale *= d;
  return volume(s) <= rel_tol * scale;
}

}  // namespace roughforms
