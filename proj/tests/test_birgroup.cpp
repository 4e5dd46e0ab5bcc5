#include "helpers.hpp"

#include "cubicbir/census.hpp"

#include <doctest.h>

using namespace cubicbir;
using namespace cubicbir::test;

TEST_CASE("solving for the involutions reproduces the listed words") {
  for (const char* name : {"c12", "syz", "nonsyz"}) {
    const auto& s = scenario(name);
    for (const auto& inv : s.involutions) {
      INFO(name << " " << inv.name);
      IMat m = solve_involution(s.lattice, s.config, inv.fixed);
      CHECK(equal(m, word_eval(s.generators, inv.word, s.lattice.rank())));
      CHECK(equal(IMat(m * m), identity_matrix(s.lattice.rank())));
      CHECK(equal(IVec(m * inv.fixed), inv.fixed));
      CHECK(bir_criterion(s.lattice, s.config, m));
    }
  }
  const auto& s = scenario("syz");
  CHECK(equal(solve_involution(s.lattice, s.config, iv({1, -1, 0})), s.generators.at("R1")));
}

TEST_CASE("involution solver failure modes") {
  const auto& s = scenario("syz");
  CHECK_THROWS_AS(solve_involution(s.lattice, s.config, iv({1, 0, 0})), NoSolution);
  CHECK_THROWS_AS(solve_involution(s.lattice, s.config, iv({2, -2, 0})), Error);
  CHECK_THROWS_AS(solve_involution(s.lattice, s.config, iv({1, 2, 0})), Error);
  CHECK_THROWS_AS(solve_involution(s.lattice, s.config, iv({1, 0})), Error);
}

TEST_CASE("Bir criterion on simple isometries") {
  const auto& s = scenario("syz");
  const auto& L = s.lattice;
  CHECK(bir_criterion(L, s.config, identity_matrix(3)));
  CHECK(!bir_criterion(L, s.config, IMat(-identity_matrix(3))));
  CHECK(bir_criterion(L, s.config, s.generators.at("R1")));
  // Symmetries of the square act on the discriminant by something other than +-1.
  CHECK(!bir_criterion(L, s.config, s.generators.at("R2")));
  CHECK(!bir_criterion(L, s.config, s.generators.at("R3")));
  CHECK(!bir_criterion(L, s.config, im({{1, 0, 0}, {0, 2, 0}, {0, 0, 1}})));
  auto stab = nef_stabilizer(L, s.config, carve_chamber(L, L.ample));
  REQUIRE(stab.size() == 1);
  CHECK(equal(stab[0], identity_matrix(3)));
}

TEST_CASE("glue configuration is validated") {
  const auto& s = scenario("syz");
  BirCriterionConfig bad = s.config;
  bad.glue_gens.pop_back();
  CHECK_THROWS_AS(validate_config(s.lattice, bad), Error);
  bad.glue_gens.clear();
  CHECK_THROWS_AS(validate_config(s.lattice, bad), Error);
  CHECK_NOTHROW(validate_config(s.lattice, s.config));
}

TEST_CASE("orbit reduction") {
  const auto& s = scenario("syz");
  auto gens = involution_table(s);
  for (const auto& v : vectors_of_square(s.lattice, Integer(-10), 15)) {
    if (divisibility_full(s.lattice, v) != 2) continue;
    auto r = orbit_reduce(s.lattice, gens, v, Integer(-10));
    IVec image = word_eval(gens, r.word, 3) * v;
    CHECK(equal(image, IVec(Integer(r.sign) * r.representative)));
    auto again = orbit_reduce(s.lattice, gens, r.representative, Integer(-10));
    CHECK(equal(again.representative, r.representative));
    CHECK(again.word.empty());
    CHECK(abs(r.representative(0)) <= abs(v(0)));
  }
  CHECK_THROWS_AS(orbit_reduce(s.lattice, gens, iv({1, 0, 0}), Integer(-10)), Error);
}

TEST_CASE("orbits of wall vectors in the syzygetic case") {
  const auto& s = scenario("syz");
  auto gens = involution_table(s);
  auto flop = orbit_count(s.lattice, gens, OrbitKind::DeltaFlop, 0, 20);
  CHECK(flop.orbits.size() == 4);
  CHECK(flop.freeness_failures == 0);
  std::vector<IVec> reps;
  for (const auto& o : flop.orbits) reps.push_back(o.representative);
  CHECK(same_vectors(sorted(reps), sorted({iv({1, 2, 0}), iv({1, -2, 0}), iv({1, 0, 2}), iv({1, 0, -2})})));
  auto pex = orbit_count(s.lattice, gens, OrbitKind::DeltaPex, 0, 12);
  CHECK(pex.orbits.size() == 4);
  size_t total = 0;
  for (const auto& o : pex.orbits) total += o.size;
  CHECK(total == pex.elements);
  CHECK_THROWS_AS(orbit_count(s.lattice, gens, OrbitKind::DeltaPex, 0, 2), Error);
}

TEST_CASE("relations among involutions") {
  auto c12 = scenario("c12");
  CHECK(find_relations(involution_table(c12), 2, 10).empty());
  auto syz = scenario("syz");
  CHECK(find_relations(involution_table(syz), 3, 8).empty());
  auto non = scenario("nonsyz");
  auto rels = find_relations(involution_table(non), 3, 6);
  Word want = canonical_relator(parse_word("iota1 iota2v iota3 iota1v iota2 iota3v"));
  CHECK(std::find(rels.begin(), rels.end(), want) != rels.end());
  for (const auto& r : rels) CHECK(equal(word_eval(involution_table(non), r, 3), identity_matrix(3)));
  CHECK_THROWS_AS(find_relations(non.generators, 3, 4), Error);
}

TEST_CASE("canonical relator is invariant under rotation and reversal") {
  Word w = parse_word("a b c a d");
  Word c = canonical_relator(w);
  for (size_t k = 0; k < w.size(); ++k) {
    Word rot(w.begin() + static_cast<long>(k), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(k));
    CHECK(canonical_relator(rot) == c);
    CHECK(canonical_relator(Word(rot.rbegin(), rot.rend())) == c);
  }
}

TEST_CASE("factoring an isometry through the involutions") {
  const auto& s = scenario("syz");
  auto gens = involution_table(s);
  Chamber nef = carve_chamber(s.lattice, s.lattice.ample);
  IMat phi = word_eval(gens, {"iota1", "iota2v"}, 3);
  auto f = factor_isometry(s.lattice, s.config, gens, nef, phi, 3);
  REQUIRE(f);
  CHECK(f->word == Word{"iota1", "iota2v"});
  CHECK(equal(IMat(word_eval(gens, f->word, 3) * f->stabilizer), phi));
}
