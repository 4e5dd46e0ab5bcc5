#include "helpers.hpp"

#include <doctest.h>

using namespace cubicbir;
using namespace cubicbir::test;

namespace {

// x and the ample class lie in the same chamber iff no wall of the box separates them.
bool same_side_of_all(const GramLattice& L, const std::vector<WallDivisor>& walls, const QVec& x) {
  for (const auto& w : walls) {
    Rational a = gram_eval(L, to_rational(w.vector), to_rational(L.ample));
    Rational b = gram_eval(L, to_rational(w.vector), x);
    if (a * b <= 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("nef cone of the syzygetic Fano variety") {
  const auto& L = scenario("syz").lattice;
  Chamber c = carve_chamber(L, L.ample);
  CHECK(same_vectors(facet_vectors(c), sorted({iv({1, 2, 0}), iv({1, -2, 0}), iv({1, 0, 2}), iv({1, 0, -2})})));
  CHECK(same_vectors(sorted(c.rays), sorted({iv({4, 3, 3}), iv({4, 3, -3}), iv({4, -3, 3}), iv({4, -3, -3})})));
  for (const auto& f : c.walls) {
    CHECK(f.wall.kind == WallKind::Flop);
    int on = 0;
    for (const auto& r : c.rays) {
      Integer x = gram_eval(L, f.wall.vector, r);
      CHECK(f.sign * x >= 0);
      on += x == 0;
    }
    CHECK(on == 2);
  }
  CHECK(equal(c.interior_point, iv({16, 0, 0})));
}

TEST_CASE("chamber membership agrees with the sign-vector oracle") {
  for (const char* name : {"syz", "nonsyz"}) {
    const auto& L = scenario(name).lattice;
    Chamber c = carve_chamber(L, L.ample);
    auto walls = enumerate_walls_brute(L, 30, {WallKind::Flop, WallKind::Pex});
    int inside = 0;
    for (int i = -9; i <= 9; ++i)
      for (int j = -9; j <= 9; ++j) {
        QVec x(3);
        x << Rational(10), Rational(i), Rational(j);
        if (i * i + j * j > 81) continue;
        if (std::any_of(walls.begin(), walls.end(),
                        [&](const WallDivisor& w) { return gram_eval(L, to_rational(w.vector), x) == 0; }))
          continue;
        bool want = same_side_of_all(L, walls, x);
        INFO(name << " " << i << " " << j);
        CHECK(strictly_inside(L, c, x) == want);
        inside += want;
      }
    CHECK(inside > 0);
  }
}

TEST_CASE("flopping across a wall of Nef(F)") {
  const auto& S = scenario("syz").lattice;
  Chamber nef = carve_chamber(S, S.ample);
  const Facet* f = find_facet(nef, iv({1, -2, 0}));
  REQUIRE(f);
  Chamber f1 = cross_wall(S, nef, f->wall);
  CHECK(same_vectors(facet_vectors(f1), sorted({iv({1, -2, 0}), iv({1, -1, 1}), iv({1, -1, -1}), iv({3, -4, 0})})));
  CHECK(find_facet(f1, iv({1, -1, 1}))->wall.kind == WallKind::Pex);
  CHECK_THROWS_AS(cross_wall(S, f1, find_facet(f1, iv({1, -1, 1}))->wall), CrossingPexWall);
  CHECK_THROWS_AS(cross_wall(S, nef, WallDivisor{iv({3, -4, 0}), WallKind::Flop}), Error);

  const auto& N = scenario("nonsyz").lattice;
  Chamber nnef = carve_chamber(N, N.ample);
  CHECK(nnef.walls.size() == 6);
  Chamber n1 = cross_wall(N, nnef, find_facet(nnef, iv({1, -2, 0}))->wall);
  CHECK(same_vectors(facet_vectors(n1), sorted({iv({1, -2, 0}), iv({1, 0, 2}), iv({3, -4, 0}), iv({1, -2, -2})})));
}

TEST_CASE("crossing a flop wall twice returns") {
  for (const char* name : {"c12", "syz", "nonsyz"}) {
    const auto& L = scenario(name).lattice;
    Chamber nef = carve_chamber(L, L.ample);
    for (const auto& f : nef.walls) {
      if (f.wall.kind != WallKind::Flop) continue;
      Chamber there = cross_wall(L, nef, f.wall);
      CHECK(!same_chamber(there, nef));
      CHECK(same_chamber(cross_wall(L, there, f.wall), nef));
    }
  }
}

TEST_CASE("nef cone of the one-scroll lattice") {
  const auto& L = scenario("c12").lattice;
  Chamber c = carve_chamber(L, L.ample);
  CHECK(same_vectors(facet_vectors(c), sorted({iv({1, -2}), iv({1, 2})})));
}

TEST_CASE("movable cone membership") {
  const auto& L = scenario("syz").lattice;
  CHECK(mov_membership(L, qv({"4", "7/2", "0"})));
  CHECK(mov_membership(L, L.ample));
  CHECK(!mov_membership(L, iv({5, 4, 4})));
  CHECK(separating_pex_walls(L, to_rational(iv({5, 4, 4}))).size() >= 1);
  CHECK(hyperplane_meets_mov(L, iv({1, -2, 0})));
  CHECK(hyperplane_meets_mov(L, iv({1, 1, 1})));
  CHECK_THROWS_AS(hyperplane_meets_mov(L, iv({1, 0, 0})), Error);
  CHECK_THROWS_AS(carve_chamber(L, iv({4, 3, 0})), PointOnWall);
}

TEST_CASE("symmetries of Nef(F)") {
  const auto& s = scenario("syz");
  Chamber c = carve_chamber(s.lattice, s.lattice.ample);
  auto isos = chamber_isometries(s.lattice, c, c);
  CHECK(isos.size() == 8);
  for (const auto& m : isos) CHECK(is_isometry(s.lattice, m));
}

TEST_CASE("slice export") {
  const auto& L = scenario("syz").lattice;
  Chamber c = carve_chamber(L, L.ample);
  auto objs = slice_export(L, {c}, Rational(24));
  REQUIRE(objs.size() == 2 + c.walls.size());
  CHECK(objs[0].type == "circle");
  for (const auto& o : objs) {
    if (o.type != "wall") continue;
    REQUIRE(o.points.size() == 2);
    // Lines y = +-3 or z = +-3 on the slice x = 4.
    bool horizontal = o.points[0](0) == o.points[1](0) && abs(o.points[0](0)) == 3;
    bool vertical = o.points[0](1) == o.points[1](1) && abs(o.points[0](1)) == 3;
    CHECK((horizontal || vertical));
  }
  for (const auto& p : objs[0].points) CHECK(Rational(4) * (p(0) * p(0) + p(1) * p(1)) <= Rational(6 * 16));
  CHECK(slice_export(L, {}, Rational(24)).size() == 1);
  CHECK_THROWS_AS(slice_export(scenario("c12").lattice, {}, Rational(1)), Error);
  CHECK_THROWS_AS(slice_export(L, {}, Rational(0)), Error);
}
