#include "roughforms/decompose.hpp"

#include "roughforms/errors.hpp"

namespace roughforms {

Chain dya(const Simplex& s) {
  if (s.degree == 0) return Chain(s);
  if (s.degree == 1) {
    const Point m = midpoint(s.vertex(0), s.vertex(1));
    Chain r(1);
    r.add(1.0, Simplex::segment(s.vertex(0), m));
    r.add(1.0, Simplex::segment(m, s.vertex(1)));
    return r;
  }
  if (s.degree == 2) {
    const Point& p0 = s.vertex(0);
    const Point& p1 = s.vertex(1);
    const Point& p2 = s.vertex(2);
    const Point q0 = midpoint(p1, p2);
    const Point q1 = midpoint(p0, p2);
    const Point q2 = midpoint(p0, p1);
    Chain r(2);
    r.add(1.0, Simplex::triangle(q0, q1, q2));
    r.add(1.0, Simplex::triangle(q1, q0, p2));
    r.add(1.0, Simplex::triangle(q2, p1, q0));
    r.add(1.0, Simplex::triangle(p0, q2, q1));
    return r;
  }
  throw DegreeError("dyadic subdivision supports degrees 0 to 2");
}

Chain dya_dagger(const Simplex& s) {
  if (s.degree != 2) return dya(s);
  const Point& p0 = s.vertex(0);
  const Point& p1 = s.vertex(1);
  const Point& p2 = s.vertex(2);
  const Point q0 = midpoint(p1, p2);
  const Point q1 = midpoint(p0, p2);
  const Point q2 = midpoint(p0, p1);
  Chain r(2);
  r.add(-1.0, Simplex::triangle(q2, q1, q0));
  r.add(1.0, Simplex::triangle(q1, q0, p2));
  r.add(1.0, Simplex::triangle(q2, p1, q0));
  r.add(1.0, Simplex::triangle(p0, q2, q1));
  return r;
}

Chain subdivide(const Simplex& s, SubdivideVariant variant) {
  return variant == SubdivideVariant::dya ? dya(s) : dya_dagger(s);
}

int subdivide_arity(int degree) {
  if (degree == 0) return 1;
  if (degree == 1) return 2;
  if (degree == 2) return 4;
  throw DegreeError("dyadic subdivision supports degrees 0 to 2");
}

namespace {

void iter_rec(const Simplex& s, double w, int levels, SubdivideVariant variant,
              const std::function<void(const Simplex&, double)>& leaf) {
  if (levels == 0 || s.degree == 0) {
    leaf(s, w);
    return;
  }
  const Chain c = subdivide(s, variant);
  for (const ChainTerm& t : c.terms)
    iter_rec(t.simplex, w * t.weight, levels - 1, variant, leaf);
}

}  // namespace

void dya_iter(const Simplex& s, int levels, SubdivideVariant variant,
              const std::function<void(const Simplex&, double)>& leaf) {
  if (levels < 0) throw ParameterError("subdivision level must be >= 0");
  if (s.degree * levels > 30)
    throw BudgetError("subdivision budget exceeded: degree * levels > 30");
  iter_rec(s, 1.0, levels, variant, leaf);
}

Chain cut(const Simplex& s, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw ParameterError("cut parameter must lie inside [0, 1]");
  if (s.degree == 1) {
    const Point pt = lerp(s.vertex(0), s.vertex(1), t);
    Chain r(1);
    r.add(1.0, Simplex::segment(s.vertex(0), pt));
    r.add(1.0, Simplex::segment(pt, s.vertex(1)));
    return r;
  }
  if (s.degree != 2) throw DegreeError("cut expects a segment or a triangle");
  const Point& p = s.vertex(0);
  const Point& p0 = s.vertex(1);
  const Point& p1 = s.vertex(2);
  const Point pt = lerp(p0, p1, t);
  Chain r(2);
  r.add(1.0, Simplex::triangle(pt, p1, p));
  r.add(1.0, Simplex::triangle(pt, p, p0));
  return r;
}

Chain cut_fan(const Simplex& s, int n) {
  if (n < 1) throw ParameterError("slice count must be >= 1");
  if (s.degree != 1 && s.degree != 2)
    throw DegreeError("cut expects a segment or a triangle");
  const bool seg = s.degree == 1;
  const Point& p0 = s.vertex(seg ? 0 : 1);
  const Point& p1 = s.vertex(seg ? 1 : 2);
  Chain r(s.degree);
  Point prev = p0;
  for (int i = 1; i <= n; ++i) {
    const Point next =
        i == n ? p1 : lerp(p0, p1, static_cast<double>(i) / n);
    if (seg)
      r.add(1.0, Simplex::segment(prev, next));
    else
      r.add(1.0, Simplex::triangle(s.vertex(0), prev, next));
    prev = next;
  }
  return r;
}

Chain flip(const Simplex& s) {
  if (s.degree != 2) throw DegreeError("flip expects a triangle");
  const Point& p0 = s.vertex(0);
  const Point& p1 = s.vertex(1);
  const Point& p2 = s.vertex(2);
  const Point p3 = p1 + p2 - p0;
  Chain r(2);
  r.add(1.0, Simplex::triangle(p0, p1, p2));
  r.add(1.0, Simplex::triangle(p3, p2, p1));
  r.add(-1.0, Simplex::triangle(p1, p3, p0));
  r.add(-1.0, Simplex::triangle(p2, p0, p3));
  return r;
}

Chain flip_dagger(const Simplex& s) {
  if (s.degree != 2) throw DegreeError("flip expects a triangle");
  const Point& p0 = s.vertex(0);
  const Point& p1 = s.vertex(1);
  const Point& p2 = s.vertex(2);
  const Point p3 = p1 + p2 - p0;
  Chain r(2);
  r.add(1.0, Simplex::triangle(p2, p0, p1));
  r.add(1.0, Simplex::triangle(p1, p3, p2));
  r.add(-1.0, Simplex::triangle(p3, p0, p1));
  r.add(-1.0, Simplex::triangle(p0, p3, p2));
  return r;
}

Chain apply_map(const GeometricMap& m, const Chain& c) {
  Chain r;
  bool first = true;
  for (const ChainTerm& t : c.terms) {
    const Chain image = m.apply(t.simplex);
    if (first) {
      r = Chain(image.degree);
      first = false;
    }
    r.add(image, t.weight);
  }
  return r;
}

}  // namespace roughforms
