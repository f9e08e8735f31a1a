#pragma once

#include <array>
#include <functional>
#include <initializer_list>
#include <vector>

#include "roughforms/errors.hpp"

namespace roughforms {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxDegree = 3;

// Point in R^d, d <= kMaxDim. Unused slots stay zero so exact comparison
// and hashing can look at the whole array.
struct Point {
  int dim = 0;
  std::array<double, kMaxDim> x{};

  Point() = default;
  Point(std::initializer_list<double> coords);
  static Point zero(int dim);

  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
};

bool operator==(const Point& a, const Point& b);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double c, const Point& p);
double dot(const Point& a, const Point& b);
double norm(const Point& p);
double dist(const Point& a, const Point& b);
Point lerp(const Point& a, const Point& b, double t);  // (1-t)a + t*b
Point midpoint(const Point& a, const Point& b);

// Ordered k-simplex [p0 ... pk], k <= kMaxDegree. Vertex order is part of
// the identity: [p,q] and [q,p] are different simplices.
struct Simplex {
  int degree = 0;
  std::array<Point, kMaxDegree + 1> v{};

  Simplex() = default;
  Simplex(int k, const std::array<Point, kMaxDegree + 1>& verts);

  static Simplex vertex(const Point& p);
  static Simplex segment(const Point& p0, const Point& p1);
  static Simplex triangle(const Point& p0, const Point& p1, const Point& p2);
  static Simplex tetrahedron(const Point& p0, const Point& p1, const Point& p2,
                             const Point& p3);

  int dim() const { return v[0].dim; }
  const Point& vertex(int i) const;
  Simplex face(int drop) const;  // omit vertex `drop`; degree k-1
};

bool operator==(const Simplex& a, const Simplex& b);

struct ChainTerm {
  double weight = 0.0;
  Simplex simplex;
};

// Finite real-weighted formal sum of equal-degree simplices.
struct Chain {
  int degree = 0;
  std::vector<ChainTerm> terms;

  Chain() = default;
  explicit Chain(int k) : degree(k) {}
  explicit Chain(const Simplex& s) : degree(s.degree) { add(1.0, s); }

  Chain& add(double w, const Simplex& s);
  Chain& add(const Chain& c, double scale = 1.0);
};

Chain operator+(const Chain& a, const Chain& b);
Chain operator-(const Chain& a, const Chain& b);
Chain operator*(double c, const Chain& a);

// Canonical form: terms sorted by vertex coordinates, exactly equal
// simplices merged, zero weights dropped.
Chain normalize(const Chain& c);

// True when the chains agree term by term after normalization, matching
// vertices within coord_tol and weights within weight_tol.
bool chains_match(const Chain& a, const Chain& b, double coord_tol = 0.0,
                  double weight_tol = 0.0);

Chain boundary(const Simplex& s);
Chain boundary(const Chain& c);

using PointMap = std::function<Point(const Point&)>;

Simplex push_forward(const PointMap& phi, const Simplex& s);
Chain push_forward(const PointMap& phi, const Chain& c);

struct SignedSimplex {
  Simplex simplex;
  int sign = 1;
};

// sigma acts on vertex slots: result vertex i is input vertex sigma^{-1}(i),
// sign is the parity of sigma.
SignedSimplex permute(const std::vector<int>& sigma, const Simplex& s);
int permutation_sign(const std::vector<int>& sigma);

// vol_h: h-dimensional volume. For h == degree this is
// sqrt(det(P P^T)) / h! with P the edge matrix rooted at v0; for h < degree
// it is the max over all (h+1)-vertex sub-simplices. vol_0 = 1.
double volume(const Simplex& s, int h);
double volume(const Simplex& s);  // vol_degree
double diameter(const Simplex& s);

// vol_k <= rel_tol * diam^k (degree 0 simplices are never degenerate).
bool is_degenerate(const Simplex& s, double rel_tol = 1e-14);

}  // namespace roughforms
