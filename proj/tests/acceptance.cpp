#include "helpers.hpp"

#include "cubicbir/cubicsurface.hpp"
#include "cubicbir/report.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace cubicbir;
using namespace cubicbir::test;

namespace {

constexpr double kCensusSeconds = 10;
constexpr double kOrbitSeconds = 30;
constexpr double kRelationSeconds = 60;
constexpr double kScanSeconds = 120;
constexpr long kOrbitBound = 50;
constexpr int kFreeLength = 14;
constexpr int kNonsyzRelatorLength = 6;

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

template <typename F>
double timed(F&& f) {
  auto t = std::chrono::steady_clock::now();
  f();
  return seconds_since(t);
}

std::vector<IVec> normalized(const GramLattice& L, std::vector<IVec> vs) {
  for (auto& v : vs) v = normalize_wall(L, v);
  return sorted(vs);
}

struct Criterion {
  int id;
  std::string name;
  bool passed = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

void census_counts(Criterion& c) {
  const std::map<std::string, size_t> want{{"c12", 3}, {"syz", 5}, {"nonsyz", 8}};
  for (const auto& [name, n] : want) {
    const auto& s = scenario(name);
    Report r;
    double t = timed([&] { r = census_report(s, census(s.lattice, s.config)); });
    size_t got = r.data["census"]["class_count"].get<size_t>();
    c.detail << name << "=" << got << " (" << t << " s) ";
    c.require(got == n, name + " class count");
    c.require(t < kCensusSeconds, name + " time");
  }
}

void nef_walls(Criterion& c) {
  const auto& S = scenario("syz").lattice;
  Chamber nef = carve_chamber(S, S.ample);
  c.require(same_vectors(facet_vectors(nef), sorted({iv({1, 2, 0}), iv({1, -2, 0}), iv({1, 0, 2}), iv({1, 0, -2})})),
            "syz Nef(F)");
  Chamber f1 = cross_wall(S, nef, find_facet(nef, iv({1, -2, 0}))->wall);
  c.require(same_vectors(facet_vectors(f1), sorted({iv({1, -2, 0}), iv({1, -1, 1}), iv({1, -1, -1}), iv({3, -4, 0})})),
            "syz Nef(F1)");

  const auto& s = scenario("nonsyz");
  const auto& N = s.lattice;
  Chamber nnef = carve_chamber(N, N.ample);
  c.require(same_vectors(facet_vectors(nnef), sorted({iv({1, 2, 0}), iv({1, -2, 0}), iv({1, 0, 2}), iv({1, 0, -2}),
                                                      iv({1, 2, 2}), iv({1, -2, -2})})),
            "nonsyz Nef(F)");
  Chamber n1 = cross_wall(N, nnef, find_facet(nnef, iv({1, -2, 0}))->wall);
  c.require(same_vectors(facet_vectors(n1), sorted({iv({1, -2, 0}), iv({1, 0, 2}), iv({3, -4, 0}), iv({1, -2, -2})})),
            "nonsyz Nef(F1)");
  IMat r2 = s.generators.at("R2");
  Chamber f12 = carve_chamber(N, IVec(r2 * N.ample));
  std::vector<IVec> image;
  for (const auto& v : facet_vectors(nnef)) image.push_back(r2 * v);
  c.require(same_vectors(facet_vectors(f12), normalized(N, image)), "Nef(F12) = R2 Nef(F)");
  c.detail << "syz 4+4 walls, nonsyz 6+4 walls, Nef(F12) " << f12.walls.size() << " walls";
}

void discriminants(Criterion& c) {
  const std::map<std::string, std::vector<long>> want{{"c12", {2, 12}}, {"syz", {2, 4, 12}}, {"nonsyz", {2, 6, 6}}};
  for (const auto& [name, factors] : want) {
    auto d = discriminant_group(scenario(name).lattice);
    std::vector<long> got;
    for (const auto& f : d.invariant_factors) got.push_back(to_long(f));
    c.require(got == factors, name);
    c.detail << name << " " << nlohmann::json(got).dump() << " ";
  }
}

void representability(Criterion& c) {
  for (const char* name : {"c12", "nonsyz"}) {
    const auto& L = scenario(name).lattice;
    auto cert = represents(L, -2);
    bool ok = cert.verdict == RepresentabilityCertificate::Verdict::Obstructed && residue_obstructed(L, -2, cert.modulus);
    c.require(ok, std::string(name) + " obstructed");
    c.detail << name << " obstructed mod " << cert.modulus << "; ";
  }
  const auto& S = scenario("syz").lattice;
  auto cert = represents(S, -2);
  c.require(cert.verdict == RepresentabilityCertificate::Verdict::Represented && square(S, cert.witness) == -2,
            "syz witness");
  c.detail << "syz witness " << to_string(cert.witness);
}

void involutions(Criterion& c) {
  const auto& s = scenario("syz");
  c.require(equal(solve_involution(s.lattice, s.config, iv({1, -1, 0})), s.generators.at("R1")), "syz iota1 = R1");
  const auto& n = scenario("nonsyz");
  int matched = 0;
  for (const auto& inv : n.involutions) {
    bool ok = equal(solve_involution(n.lattice, n.config, inv.fixed), word_eval(n.generators, inv.word, 3));
    c.require(ok, inv.name);
    matched += ok;
  }
  c.detail << "syz R1 and " << matched << "/6 nonsyz words";
}

void orbits(Criterion& c) {
  const auto& s = scenario("syz");
  auto gens = involution_table(s);
  for (auto [kind, label] : {std::pair{OrbitKind::DeltaFlop, "flop"}, std::pair{OrbitKind::DeltaPex, "pex"}}) {
    OrbitPartition p;
    double t = timed([&] { p = orbit_count(s.lattice, gens, kind, 0, kOrbitBound); });
    c.require(p.orbits.size() == 4, std::string("syz ") + label);
    c.require(t < kOrbitSeconds, std::string("syz ") + label + " time");
    c.detail << "syz " << label << " " << p.orbits.size() << " orbits of " << p.elements << " (" << t << " s) ";
  }
  const auto& n = scenario("nonsyz");
  OrbitPartition p;
  double t = timed([&] { p = orbit_count(n.lattice, involution_table(n), OrbitKind::Square, 6, kOrbitBound); });
  std::vector<IVec> reps;
  for (const auto& o : p.orbits) reps.push_back(o.representative);
  c.require(same_vectors(sorted(reps), sorted({iv({1, 0, 0}), iv({3, -4, -2}), iv({3, -2, -4}), iv({3, -2, 2}),
                                               iv({3, 2, -2}), iv({3, 2, 4}), iv({3, 4, 2})})),
            "nonsyz square 6 representatives");
  c.require(t < kOrbitSeconds, "nonsyz time");
  c.detail << "nonsyz square6 " << reps.size() << " representatives (" << t << " s)";
}

void relations(Criterion& c) {
  for (const char* name : {"c12", "syz"}) {
    const auto& s = scenario(name);
    std::vector<Word> rels;
    double t = timed([&] { rels = find_relations(involution_table(s), s.lattice.rank(), kFreeLength); });
    c.require(rels.empty(), std::string(name) + " free");
    c.require(t < kRelationSeconds, std::string(name) + " time");
    c.detail << name << " " << rels.size() << " relators <= " << kFreeLength << " (" << t << " s) ";
  }
  const auto& n = scenario("nonsyz");
  std::vector<Word> rels;
  double t = timed([&] { rels = find_relations(involution_table(n), 3, kNonsyzRelatorLength); });
  Word want = canonical_relator(parse_word("iota1 iota2v iota3 iota1v iota2 iota3v"));
  c.require(std::find(rels.begin(), rels.end(), want) != rels.end(), "nonsyz relator");
  c.require(t < kRelationSeconds, "nonsyz time");
  c.detail << "nonsyz " << rels.size() << " relators of length <= " << kNonsyzRelatorLength << " (" << t << " s)";
}

void plane_tables(Criterion& c) {
  const std::map<std::string, IMat> want{{"syz", im({{1, 4, 1}, {4, 7, 4}, {1, 4, 1}})},
                                         {"nonsyz", im({{6, 0, 0}, {0, 15, 0}, {0, 0, 6}})}};
  for (const auto& [name, table] : want) {
    const auto& s = scenario(name);
    IMat t = intersection_table(twisted_cubic_pair(s.twisted_cubics[0], s.twisted_cubics[1]));
    c.require(equal(t, table), name);
    c.detail << name << " " << to_string(t) << " ";
  }
}

void sweep(Criterion& c) {
  const auto& n = scenario("nonsyz");
  IVec h = n.generators.at("R2") * n.lattice.ample;
  auto found = negdef_obstruction_sweep(n.lattice, h, {Integer(-2), Integer(-6)}, Integer(2));
  c.require(found.empty(), "sweep empty");
  c.detail << "polarization " << to_string(h) << ", " << found.size() << " obstructions";
}

void appendix(Criterion& c) {
  for (const char* name : {"syz", "nonsyz"}) {
    AppendixData d = load_appendix(name);
    std::vector<ClaimResult> claims;
    double t = timed([&] { claims = verify_appendix(d, std::nullopt, 1); });
    size_t failed = 0;
    for (const auto& cl : claims)
      if (!cl.passed) {
        ++failed;
        c.require(false, std::string(name) + ": " + cl.claim);
      }
    c.detail << name << " " << claims.size() - failed << "/" << claims.size() << " claims (" << t << " s) ";
  }
  // The largest single scan: all of P^5(F_29) against the cubic alone.
  AppendixData d = load_appendix("syz");
  ScanResult r;
  double t = timed([&] { r = projective_scan({parse_fp_poly(d.cubic, d.prime, 6)}, d.prime, 6); });
  c.require(t < kScanSeconds, "full scan time");
  c.detail << "full P^5 scan " << r.visited << " points in " << t << " s";
}

void properties(Criterion& c) {
  size_t isometries = 0, crossings = 0, reductions = 0;
  for (const char* name : {"c12", "syz", "nonsyz"}) {
    const auto& s = scenario(name);
    ChamberGraph g = census(s.lattice, s.config);
    for (int order : {1, 2}) {
      ChamberGraph h = census(s.lattice, s.config, {12, order});
      c.require(h.class_count() == g.class_count(), std::string(name) + " order " + std::to_string(order));
    }
    for (const auto& m : g.certificates) {
      c.require(is_isometry(s.lattice, m) && bir_criterion(s.lattice, s.config, m), "certificate");
      ++isometries;
    }
    for (const auto& inv : s.involutions) {
      IMat m = solve_involution(s.lattice, s.config, inv.fixed);
      c.require(is_isometry(s.lattice, m), "involution");
      ++isometries;
    }
    for (const auto& node : g.nodes)
      for (const auto& f : node.walls)
        if (f.wall.kind == WallKind::Flop) {
          c.require(same_chamber(cross_wall(s.lattice, cross_wall(s.lattice, node, f.wall), f.wall), node),
                    "cross_wall involutive");
          ++crossings;
        }
    if (s.lattice.rank() == 3) {
      for (const auto& v : vectors_of_square(s.lattice, Integer(-2), 12)) {
        IMat r = reflection_in(s.lattice, v);
        c.require(is_isometry(s.lattice, r) && equal(IMat(r * r), identity_matrix(3)), "reflection");
      }
      auto gens = involution_table(s);
      for (const auto& v : vectors_of_square(s.lattice, Integer(6), 20)) {
        auto r = orbit_reduce(s.lattice, gens, v, Integer(6));
        auto again = orbit_reduce(s.lattice, gens, r.representative, Integer(6));
        c.require(equal(again.representative, r.representative) && again.word.empty(), "reduction idempotent");
        ++reductions;
      }
    }
    std::string first;
    for (int run = 0; run < 3; ++run) {
      std::string text = census_report(s, census(s.lattice, s.config)).json_text();
      if (run == 0) first = text;
      c.require(text == first, std::string(name) + " report determinism");
    }
  }
  c.detail << isometries << " isometries, " << crossings << " double crossings, " << reductions
           << " reductions, 3 facet orders, 3 identical reports per scenario";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Criterion&)>> criteria{
      {"census class counts", census_counts},
      {"nef cone wall sets", nef_walls},
      {"discriminant groups", discriminants},
      {"representability of -2", representability},
      {"involution identification", involutions},
      {"orbit structure", orbits},
      {"relations", relations},
      {"plane intersection tables", plane_tables},
      {"obstruction sweep", sweep},
      {"appendix verification", appendix},
      {"property suites", properties},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Criterion c{static_cast<int>(i + 1), criteria[i].first};
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    failures += !c.passed;
    std::cout << (c.passed ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << c.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
