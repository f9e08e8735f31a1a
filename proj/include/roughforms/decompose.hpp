#pragma once

#include <functional>
#include <string>

#include "roughforms/geometry.hpp"

namespace roughforms {

// Dyadic subdivision. Degree 1: [p0 m] + [m p1] with m the midpoint.
// Degree 2: with edge midpoints q0 = mid(p1,p2), q1 = mid(p0,p2),
// q2 = mid(p0,p1), the four children are
//   [q0 q1 q2] + [q1 q0 p2] + [q2 p1 q0] + [p0 q2 q1].
// Degree 0 is the identity.
Chain dya(const Simplex& s);

// Adjoint-compatible variant: same children except the central one is
// reversed and negatively weighted, -[q2 q1 q0] + [q1 q0 p2] + [q2 p1 q0]
// + [p0 q2 q1]. Satisfies boundary(dya_dagger S) = dya(boundary S) exactly.
// Degree 1 coincides with dya.
Chain dya_dagger(const Simplex& s);

enum class SubdivideVariant { dya, dya_dagger };

Chain subdivide(const Simplex& s, SubdivideVariant variant);

// Children count per step: 2 for degree 1, 4 for degree 2.
int subdivide_arity(int degree);

// Streams the weighted leaves of `levels` rounds of subdivision in
// depth-first order. Throws BudgetError when degree * levels > 30.
void dya_iter(const Simplex& s, int levels, SubdivideVariant variant,
              const std::function<void(const Simplex&, double)>& leaf);

// Splits a triangle [p p0 p1] along its last edge at p_t = lerp(p0, p1, t):
// [p_t p1 p] + [p_t p p0]. Requires 0 < t < 1.
Chain cut(const Simplex& s, double t);

// n equal fan slices off the last edge: sum of [p p_{(i-1)/n} p_{i/n}].
Chain cut_fan(const Simplex& s, int n);

// Parallelogram double cover minus its reversal. With p3 = p1 + p2 - p0:
// pi = [p0 p1 p2] + [p3 p2 p1], tilde = [p1 p3 p0] + [p2 p0 p3],
// flip = pi - tilde. Sewn germs annihilate it.
Chain flip(const Simplex& s);

// Companion built from rotated covers, compatible with dya_dagger:
// pi' = [p2 p0 p1] + [p1 p3 p2], tilde' = [p3 p0 p1] + [p0 p3 p2].
Chain flip_dagger(const Simplex& s);

struct GeometricMap {
  std::string name;
  std::function<Chain(const Simplex&)> apply;
};

// Linear extension of a simplex-to-chain map.
Chain apply_map(const GeometricMap& m, const Chain& c);

}  // namespace roughforms
