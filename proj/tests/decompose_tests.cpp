#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "roughforms/decompose.hpp"
#include "roughforms/germ.hpp"

using namespace roughforms;

namespace {

// Signed area of a planar triangle: nonatomic, closed, alternating, and
// additive under every decomposition map here.
Germ area_germ() {
  Germ g;
  g.degree = 2;
  g.label = "area";
  g.eval = [](const Simplex& s) {
    const Point u = s.vertex(1) - s.vertex(0);
    const Point w = s.vertex(2) - s.vertex(0);
    return 0.5 * (u[0] * w[1] - u[1] * w[0]);
  };
  return g;
}

// (x0-x1)(x1-x2)(x0-x2) on first coordinates: closed and alternating but
// atomic (nonzero on collinear triangles).
Germ vandermonde_germ() {
  Germ g;
  g.degree = 2;
  g.label = "vandermonde";
  g.eval = [](const Simplex& s) {
    const double a = s.vertex(0)[0];
    const double b = s.vertex(1)[0];
    const double c = s.vertex(2)[0];
    return (a - b) * (b - c) * (a - c);
  };
  return g;
}

Point rand_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Point{u(rng), u(rng)};
}

Simplex rand_triangle(std::mt19937_64& rng) {
  return Simplex::triangle(rand_point(rng), rand_point(rng), rand_point(rng));
}

const Simplex kTri = Simplex::triangle(Point{0.0, 0.0}, Point{1.0, 0.0},
                                       Point{0.0, 1.0});

}  // namespace

TEST_CASE("dyadic subdivision of a segment") {
  const Simplex seg = Simplex::segment(Point{0.0}, Point{1.0});
  Chain want(1);
  want.add(1.0, Simplex::segment(Point{0.0}, Point{0.5}));
  want.add(1.0, Simplex::segment(Point{0.5}, Point{1.0}));
  CHECK(chains_match(dya(seg), want));
  CHECK(chains_match(dya_dagger(seg), want));
  CHECK(subdivide_arity(1) == 2);
  CHECK(subdivide_arity(2) == 4);
}

TEST_CASE("dyadic subdivision of a triangle lists the four midpoint children") {
  const Chain c = dya(kTri);
  Chain want(2);
  want.add(1.0, Simplex::triangle(Point{0.5, 0.5}, Point{0.0, 0.5},
                                  Point{0.5, 0.0}));
  want.add(1.0, Simplex::triangle(Point{0.0, 0.5}, Point{0.5, 0.5},
                                  Point{0.0, 1.0}));
  want.add(1.0, Simplex::triangle(Point{0.5, 0.0}, Point{1.0, 0.0},
                                  Point{0.5, 0.5}));
  want.add(1.0, Simplex::triangle(Point{0.0, 0.0}, Point{0.5, 0.0},
                                  Point{0.0, 0.5}));
  CHECK(chains_match(c, want));

  // The adjoint-compatible variant reverses and negates the central child.
  const Chain d = dya_dagger(kTri);
  Chain wantd(2);
  wantd.add(-1.0, Simplex::triangle(Point{0.5, 0.0}, Point{0.0, 0.5},
                                    Point{0.5, 0.5}));
  wantd.add(1.0, Simplex::triangle(Point{0.0, 0.5}, Point{0.5, 0.5},
                                   Point{0.0, 1.0}));
  wantd.add(1.0, Simplex::triangle(Point{0.5, 0.0}, Point{1.0, 0.0},
                                   Point{0.5, 0.5}));
  wantd.add(1.0, Simplex::triangle(Point{0.0, 0.0}, Point{0.5, 0.0},
                                   Point{0.0, 0.5}));
  CHECK(chains_match(d, wantd));
}

TEST_CASE("subdivision preserves additive germs") {
  const Germ area = area_germ();
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const Simplex s = rand_triangle(rng);
    const double a = area(s);
    CHECK(eval_chain(area, dya(s)) == doctest::Approx(a).epsilon(1e-14));
    CHECK(eval_chain(area, dya_dagger(s)) == doctest::Approx(a).epsilon(1e-14));
  }
}

TEST_CASE("boundary intertwines the adjoint subdivision exactly") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    const Simplex s = rand_triangle(rng);
    const Chain lhs = boundary(dya_dagger(s));
    Chain rhs(1);
    for (const ChainTerm& t : boundary(s).terms) rhs.add(dya(t.simplex), t.weight);
    CHECK(chains_match(lhs, rhs));
  }
}

TEST_CASE("subdivision commutes with vertex permutations") {
  std::mt19937_64 rng(23);
  const Simplex s = rand_triangle(rng);
  std::vector<int> sigma = {0, 1, 2};
  std::sort(sigma.begin(), sigma.end());
  do {
    const SignedSimplex ps = permute(sigma, s);
    Chain lhs = static_cast<double>(ps.sign) * dya(ps.simplex);
    Chain rhs(2);
    for (const ChainTerm& t : dya(s).terms) {
      const SignedSimplex pt = permute(sigma, t.simplex);
      rhs.add(t.weight * pt.sign, pt.simplex);
    }
    CHECK(chains_match(lhs, rhs));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("cut splits segments and triangles and keeps additive germs") {
  const Simplex seg = Simplex::segment(Point{0.0}, Point{1.0});
  CHECK(chains_match(cut(seg, 0.5), dya(seg)));
  Chain want(1);
  want.add(1.0, Simplex::segment(Point{0.0}, Point{0.25}));
  want.add(1.0, Simplex::segment(Point{0.25}, Point{1.0}));
  CHECK(chains_match(cut(seg, 0.25), want, 1e-15));

  const Germ area = area_germ();
  std::mt19937_64 rng(24);
  for (double t : {0.3, 0.5, 0.9}) {
    for (int i = 0; i < 20; ++i) {
      const Simplex s = rand_triangle(rng);
      CHECK(eval_chain(area, cut(s, t)) ==
            doctest::Approx(area(s)).epsilon(1e-12));
    }
  }
  // Endpoint parameters are allowed; one child is degenerate and a
  // nonatomic germ only sees the surviving one.
  CHECK(eval_chain(area, cut(kTri, 0.0)) == doctest::Approx(area(kTri)));
  CHECK(eval_chain(area, cut(kTri, 1.0)) == doctest::Approx(area(kTri)));
  CHECK_THROWS_AS(cut(kTri, -0.1), ParameterError);
  CHECK_THROWS_AS(cut(kTri, 1.5), ParameterError);
  CHECK_THROWS_AS(cut(Simplex::vertex(Point{0.0}), 0.5), DegreeError);
}

TEST_CASE("fan cuts slice evenly") {
  const Simplex seg = Simplex::segment(Point{0.0}, Point{1.0});
  const Chain thirds = cut_fan(seg, 3);
  REQUIRE(thirds.terms.size() == 3);
  CHECK(thirds.terms[0].simplex.vertex(0) == Point{0.0});
  CHECK(thirds.terms[2].simplex.vertex(1) == Point{1.0});
  CHECK(thirds.terms[0].simplex.vertex(1)[0] == doctest::Approx(1.0 / 3.0));

  const Chain fan = cut_fan(kTri, 5);
  REQUIRE(fan.terms.size() == 5);
  for (const ChainTerm& t : fan.terms)
    CHECK(t.simplex.vertex(0) == kTri.vertex(0));  // shared apex

  const Germ area = area_germ();
  std::mt19937_64 rng(25);
  for (int n : {2, 3, 7}) {
    for (int i = 0; i < 20; ++i) {
      const Simplex s = rand_triangle(rng);
      CHECK(eval_chain(area, cut_fan(s, n)) ==
            doctest::Approx(area(s)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(cut_fan(kTri, 0), ParameterError);
}

TEST_CASE("edge flips annihilate closed alternating germs") {
  const Germ area = area_germ();
  const Germ vand = vandermonde_germ();
  std::mt19937_64 rng(26);
  for (int i = 0; i < 50; ++i) {
    const Simplex s = rand_triangle(rng);
    CHECK(eval_chain(area, flip(s)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eval_chain(area, flip_dagger(s)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // Closed and alternating suffices even for an atomic germ.
    CHECK(eval_chain(vand, flip(s)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  // Collinear input: every piece degenerate, nonatomic germs give zero.
  const Simplex flat = Simplex::triangle(Point{0.0, 0.0}, Point{1.0, 0.0},
                                         Point{2.0, 0.0});
  CHECK(eval_chain(area, flip(flat)) == doctest::Approx(0.0));
}

TEST_CASE("iterated subdivision streams weighted leaves") {
  int count = 0;
  dya_iter(kTri, 0, SubdivideVariant::dya, [&](const Simplex& s, double w) {
    ++count;
    CHECK(s == kTri);
    CHECK(w == 1.0);
  });
  CHECK(count == 1);

  count = 0;
  double total = 0.0;
  const Germ area = area_germ();
  const double d0 = diameter(kTri);
  dya_iter(kTri, 3, SubdivideVariant::dya, [&](const Simplex& s, double w) {
    ++count;
    total += w * area(s);
    CHECK(diameter(s) == doctest::Approx(d0 / 8.0).epsilon(1e-12));
  });
  CHECK(count == 64);
  CHECK(total == doctest::Approx(area(kTri)).epsilon(1e-14));

  // The adjoint variant carries signed weights but the same additive total.
  total = 0.0;
  dya_iter(kTri, 3, SubdivideVariant::dya_dagger,
           [&](const Simplex& s, double w) { total += w * area(s); });
  CHECK(total == doctest::Approx(area(kTri)).epsilon(1e-14));

  CHECK_THROWS_AS(dya_iter(kTri, 16, SubdivideVariant::dya,
                           [](const Simplex&, double) {}),
                  BudgetError);
  CHECK_THROWS_AS(dya_iter(kTri, -1, SubdivideVariant::dya,
                           [](const Simplex&, double) {}),
                  ParameterError);
}

TEST_CASE("all maps commute with affine push-forward") {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<GeometricMap> maps;
  maps.push_back({"dya", [](const Simplex& s) { return dya(s); }});
  maps.push_back({"dya_dagger", [](const Simplex& s) { return dya_dagger(s); }});
  maps.push_back({"cut_0.37", [](const Simplex& s) { return cut(s, 0.37); }});
  maps.push_back({"cut_fan_4", [](const Simplex& s) { return cut_fan(s, 4); }});
  maps.push_back({"flip", [](const Simplex& s) { return flip(s); }});
  maps.push_back({"flip_dagger", [](const Simplex& s) { return flip_dagger(s); }});
  for (const GeometricMap& m : maps) {
    for (int trial = 0; trial < 85; ++trial) {
      const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      const double e = u(rng), f = u(rng);
      const PointMap phi = [a, b, c, d, e, f](const Point& p) {
        return Point{a * p[0] + b * p[1] + e, c * p[0] + d * p[1] + f};
      };
      const Simplex s = rand_triangle(rng);
      const Chain lhs = m.apply(push_forward(phi, s));
      const Chain rhs = push_forward(phi, m.apply(s));
      CHECK(chains_match(lhs, rhs, 1e-12, 1e-12));
    }
  }
}

TEST_CASE("subdivision and fan cuts commute") {
  // On segments the two orders give the same breakpoints.
  const Simplex seg = Simplex::segment(Point{0.2}, Point{0.9});
  for (int n : {2, 3}) {
    Chain lhs(1);
    for (const ChainTerm& t : cut_fan(seg, n).terms) lhs.add(dya(t.simplex), t.weight);
    Chain rhs(1);
    for (const ChainTerm& t : dya(seg).terms) rhs.add(cut_fan(t.simplex, n), t.weight);
    CHECK(chains_match(lhs, rhs, 1e-14));
  }
  // On triangles the orders differ by a flip discrepancy which any closed
  // alternating germ annihilates.
  const Germ area = area_germ();
  std::mt19937_64 rng(28);
  for (int n : {2, 3}) {
    for (int i = 0; i < 20; ++i) {
      const Simplex s = rand_triangle(rng);
      Chain lhs(2);
      for (const ChainTerm& t : cut_fan(s, n).terms) lhs.add(dya(t.simplex), t.weight);
      Chain rhs(2);
      for (const ChainTerm& t : dya(s).terms) rhs.add(cut_fan(t.simplex, n), t.weight);
      CHECK(eval_chain(area, lhs - rhs) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("iterated leaves are pairwise isometric") {
  std::mt19937_64 rng(29);
  const Simplex s = rand_triangle(rng);
  std::array<double, 3> ref{};
  bool first = true;
  dya_iter(s, 2, SubdivideVariant::dya, [&](const Simplex& leaf, double) {
    std::array<double, 3> e = {dist(leaf.vertex(0), leaf.vertex(1)),
                               dist(leaf.vertex(1), leaf.vertex(2)),
                               dist(leaf.vertex(0), leaf.vertex(2))};
    std::sort(e.begin(), e.end());
    if (first) {
      ref = e;
      first = false;
      std::array<double, 3> parent = {dist(s.vertex(0), s.vertex(1)),
                                      dist(s.vertex(1), s.vertex(2)),
                                      dist(s.vertex(0), s.vertex(2))};
      std::sort(parent.begin(), parent.end());
      for (int i = 0; i < 3; ++i)
        CHECK(e[static_cast<std::size_t>(i)] ==
              doctest::Approx(parent[static_cast<std::size_t>(i)] / 4.0)
                  .epsilon(1e-12));
    } else {
      for (int i = 0; i < 3; ++i)
        CHECK(e[static_cast<std::size_t>(i)] ==
              doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
  });
}
