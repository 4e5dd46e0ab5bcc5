#include "helpers.hpp"

#include "cubicbir/census.hpp"

#include <doctest.h>

#include <random>

using namespace cubicbir;
using namespace cubicbir::test;

namespace {

const ChamberGraph& graph(const std::string& name, int order = 0) {
  static std::map<std::pair<std::string, int>, ChamberGraph> cache;
  auto key = std::make_pair(name, order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const auto& s = scenario(name);
    it = cache.emplace(key, census(s.lattice, s.config, {12, order})).first;
  }
  return it->second;
}

std::vector<size_t> class_shapes(const ChamberGraph& g) {
  std::vector<size_t> out;
  for (size_t r : g.class_reps) out.push_back(g.nodes[r].walls.size() * 100 + g.nodes[r].rays.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("census class counts") {
  CHECK(graph("c12").class_count() == 3);
  CHECK(graph("syz").class_count() == 5);
  CHECK(graph("nonsyz").class_count() == 8);
}

TEST_CASE("census does not depend on the facet order") {
  for (const char* name : {"c12", "syz", "nonsyz"})
    for (int order : {1, 2}) {
      INFO(name << " order " << order);
      CHECK(graph(name, order).class_count() == graph(name).class_count());
      CHECK(class_shapes(graph(name, order)) == class_shapes(graph(name)));
    }
}

TEST_CASE("every emitted isometry preserves the form and passes the criterion") {
  for (const char* name : {"c12", "syz", "nonsyz"}) {
    const auto& s = scenario(name);
    const auto& g = graph(name);
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      const IMat& m = g.certificates[i];
      CHECK(is_isometry(s.lattice, m));
      CHECK(bir_criterion(s.lattice, s.config, m));
      const Chamber& rep = g.nodes[g.class_reps[g.class_of[i]]];
      CHECK(strictly_inside(s.lattice, rep, to_rational(IVec(m * g.nodes[i].interior_point))));
    }
    for (const auto& e : g.edges) CHECK(is_isometry(s.lattice, e.mapping));
    for (size_t r : g.class_reps)
      for (const auto& m : nef_stabilizer(s.lattice, s.config, g.nodes[r])) {
        CHECK(is_isometry(s.lattice, m));
        CHECK(bir_criterion(s.lattice, s.config, m));
      }
  }
}

TEST_CASE("crossing any flop facet of any census chamber is an involution") {
  for (const char* name : {"syz", "nonsyz"}) {
    const auto& L = scenario(name).lattice;
    for (const auto& c : graph(name).nodes)
      for (const auto& f : c.walls) {
        if (f.wall.kind != WallKind::Flop) continue;
        Chamber other = cross_wall(L, c, f.wall);
        CHECK(same_chamber(cross_wall(L, other, f.wall), c));
      }
  }
}

TEST_CASE("reflections in all small -2 classes are involutive isometries") {
  const auto& L = scenario("syz").lattice;
  for (const auto& v : vectors_of_square(L, Integer(-2), 12)) {
    IMat r = reflection_in(L, v);
    CHECK(is_isometry(L, r));
    CHECK(equal(IMat(r * r), identity_matrix(3)));
  }
}

TEST_CASE("the criterion is closed under products and inverses") {
  std::mt19937 rng(12345);
  for (const char* name : {"syz", "nonsyz"}) {
    const auto& s = scenario(name);
    auto gens = involution_table(s);
    std::vector<IMat> pool;
    for (const auto& [n, m] : gens) pool.push_back(m);
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      IMat m = identity_matrix(3);
      int len = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < len; ++k) m = (m * pool[pick(rng)]).eval();
      CHECK(bir_criterion(s.lattice, s.config, m));
      CHECK(bir_criterion(s.lattice, s.config, isometry_inverse(s.lattice, m)));
    }
  }
}

TEST_CASE("orbit reduction is idempotent on square-6 vectors") {
  const auto& s = scenario("nonsyz");
  auto gens = involution_table(s);
  for (const auto& v : vectors_of_square(s.lattice, Integer(6), 25)) {
    auto r = orbit_reduce(s.lattice, gens, v, Integer(6));
    auto again = orbit_reduce(s.lattice, gens, r.representative, Integer(6));
    CHECK(equal(again.representative, r.representative));
    CHECK(again.word.empty());
  }
}
