#include "helpers.hpp"

#include "cubicbir/cubicsurface.hpp"

#include <doctest.h>

#include <functional>

using namespace cubicbir;
using namespace cubicbir::test;

TEST_CASE("the 27 lines are exactly the exceptional classes") {
  auto lines = line_classes();
  REQUIRE(lines.size() == 27);
  IVec k = canonical_class();
  CHECK(picard_dot(k, k) == 3);
  // Exceptional classes: square -1 and degree 1; the coefficients are small.
  std::vector<IVec> brute;
  IVec v(7);
  std::function<void(int)> rec = [&](int i) {
    if (i == 7) {
      if (picard_dot(v, v) == -1 && picard_dot(v, k) == -1) brute.push_back(v);
      return;
    }
    for (long c = (i == 0 ? 0 : -2); c <= (i == 0 ? 3 : 2); ++c) {
      v(i) = c;
      rec(i + 1);
    }
  };
  rec(0);
  CHECK(same_vectors(sorted(brute), sorted(lines)));
  for (size_t i = 0; i < lines.size(); ++i) {
    int meets = 0;
    for (size_t j = 0; j < lines.size(); ++j)
      if (i != j) {
        Integer d = picard_dot(lines[i], lines[j]);
        CHECK((d == 0 || d == 1));
        meets += d == 1;
      }
    CHECK(meets == 10);
  }
}

TEST_CASE("twisted cubic classes and their residuals") {
  IVec k = canonical_class();
  for (const char* name : {"syz", "nonsyz"}) {
    const auto& s = scenario(name);
    REQUIRE(s.twisted_cubics.size() == 2);
    auto pair = twisted_cubic_pair(s.twisted_cubics[0], s.twisted_cubics[1]);
    for (const IVec& c : {pair.gamma1, pair.gamma1_dual, pair.gamma2, pair.gamma2_dual}) {
      CHECK(picard_dot(c, c) == 1);
      CHECK(picard_dot(c, k) == -3);
    }
    CHECK(equal(IVec(pair.gamma1 + pair.gamma1_dual), IVec(Integer(-2) * k)));
    auto comp = component_classes(pair.gamma1, pair.gamma1_dual);
    CHECK(comp.bisecant.size() == 6);
    CHECK(comp.mixed.size() == 15);
    CHECK(comp.dual_bisecant.size() == 6);
  }
  CHECK_THROWS_AS(twisted_cubic_pair(test::iv({1, 1, 0, 0, 0, 0, 0}), test::iv({1, 0, 0, 0, 0, 0, 0})), Error);
}

TEST_CASE("plane intersection tables") {
  const std::map<std::string, IMat> want{{"syz", im({{1, 4, 1}, {4, 7, 4}, {1, 4, 1}})},
                                         {"nonsyz", im({{6, 0, 0}, {0, 15, 0}, {0, 0, 6}})}};
  for (const auto& [name, table] : want) {
    const auto& s = scenario(name);
    IMat t = intersection_table(twisted_cubic_pair(s.twisted_cubics[0], s.twisted_cubics[1]));
    CHECK(equal(t, table));
    // Each component of one pair is partitioned by the components of the other.
    const long sizes[3] = {6, 15, 6};
    for (Eigen::Index i = 0; i < 3; ++i) {
      CHECK(t.row(i).sum() == sizes[i]);
      CHECK(t.col(i).sum() == sizes[i]);
    }
  }
}
