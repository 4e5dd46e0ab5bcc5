#include "cubicbir/report.hpp"

#include "cubicbir/cubicsurface.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cubicbir {

using nlohmann::json;

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 15];
  return s;
}

namespace {

json wall_json(const WallDivisor& w) { return {{"vector", to_json(w.vector)}, {"kind", to_string(w.kind)}}; }

WallDivisor wall_from_json(const json& j) {
  auto kind = j.at("kind").get<std::string>();
  if (kind != "pex" && kind != "flop") throw Error("unknown wall kind '" + kind + "'");
  return {ivec_from_json(j.at("vector")), kind == "pex" ? WallKind::Pex : WallKind::Flop};
}

json vectors_json(const std::vector<IVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

std::string vectors_text(const std::vector<IVec>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + to_string(v);
  return s.empty() ? "none" : s;
}

std::vector<IVec> facet_vectors(const Chamber& c) {
  std::vector<IVec> out;
  for (const auto& f : c.walls) out.push_back(f.wall.vector);
  return out;
}

std::vector<IVec> sorted_vectors(std::vector<IVec> vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  return vs;
}

std::string key_of(const IVec& v) {
  std::string s = to_string(v);
  return s.substr(1, s.size() - 2);
}

}  // namespace

json to_json(const Chamber& c) {
  json walls = json::array();
  for (const auto& f : c.walls) {
    json w = wall_json(f.wall);
    w["sign"] = f.sign;
    walls.push_back(w);
  }
  return {{"label", c.label}, {"walls", walls}, {"rays", vectors_json(c.rays)}, {"interior", to_json(c.interior_point)}};
}

Chamber chamber_from_json(const json& j) {
  Chamber c;
  c.label = j.at("label").get<std::string>();
  for (const auto& w : j.at("walls")) c.walls.push_back({wall_from_json(w), w.at("sign").get<int>()});
  for (const auto& r : j.at("rays")) c.rays.push_back(ivec_from_json(r));
  c.interior_point = ivec_from_json(j.at("interior"));
  return c;
}

json to_json(const ChamberGraph& g) {
  json nodes = json::array(), edges = json::array(), certs = json::array();
  for (const auto& c : g.nodes) nodes.push_back(to_json(c));
  for (const auto& e : g.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"wall", wall_json(e.wall)}, {"mapping", to_json(e.mapping)}});
  for (const auto& m : g.certificates) certs.push_back(to_json(m));
  return {{"nodes", nodes}, {"edges", edges}, {"class_of", g.class_of}, {"class_reps", g.class_reps},
          {"certificates", certs}};
}

ChamberGraph graph_from_json(const json& j) {
  ChamberGraph g;
  for (const auto& n : j.at("nodes")) g.nodes.push_back(chamber_from_json(n));
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at("from").get<size_t>(), e.at("to").get<size_t>(), wall_from_json(e.at("wall")),
                       imat_from_json(e.at("mapping"))});
  g.class_of = j.at("class_of").get<std::vector<size_t>>();
  g.class_reps = j.at("class_reps").get<std::vector<size_t>>();
  for (const auto& m : j.at("certificates")) g.certificates.push_back(imat_from_json(m));
  if (g.class_of.size() != g.nodes.size() || g.certificates.size() != g.nodes.size())
    throw Error("chamber graph: inconsistent sizes");
  return g;
}

std::optional<std::string> cache_dir() {
  const char* d = std::getenv("CUBICBIR_CACHE_DIR");
  if (!d || !*d) return std::nullopt;
  return std::string(d);
}

CachedCensus cached_census(const Scenario& s, const CensusOptions& options) {
  auto dir = cache_dir();
  if (!dir) return {census(s.lattice, s.config, options), false, ""};
  std::string key = hex64(fnv1a64(s.source + "|" + std::to_string(options.max_depth) + "|" +
                                  std::to_string(options.facet_order) + "|" + kToolVersion));
  std::filesystem::path path = std::filesystem::path(*dir) / (s.name + "-" + key + ".json");
  CachedCensus out;
  if (std::filesystem::exists(path)) {
    try {
      std::ifstream in(path);
      json j = json::parse(in);
      std::string payload = j.at("graph").dump();
      if (j.at("key").get<std::string>() != key || j.at("checksum").get<std::string>() != hex64(fnv1a64(payload)))
        throw Error("checksum mismatch");
      out.graph = graph_from_json(j.at("graph"));
      out.from_cache = true;
      return out;
    } catch (const std::exception& e) {
      out.warning = "cache entry " + path.string() + " rejected (" + e.what() + "); recomputing";
    }
  }
  out.graph = census(s.lattice, s.config, options);
  json graph = to_json(out.graph);
  std::filesystem::create_directories(*dir);
  std::ofstream(path) << json{{"key", key}, {"checksum", hex64(fnv1a64(graph.dump()))}, {"graph", graph}}.dump()
                      << "\n";
  return out;
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Report::text() const {
  std::ostringstream out;
  if (data.contains("summary"))
    for (const auto& line : data.at("summary")) out << line.get<std::string>() << "\n";
  for (const auto& c : checks)
    out << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return out.str();
}

std::string Report::json_text() const {
  json j = data;
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = cs;
  j["tool_version"] = kToolVersion;
  return j.dump(2) + "\n";
}

namespace {

void expect_equal(Report& r, const std::string& name, const std::string& want, const std::string& got) {
  r.checks.push_back({name, want == got, "expected " + want + ", got " + got});
}

std::string representability_text(const RepresentabilityCertificate& c) {
  if (c.verdict == RepresentabilityCertificate::Verdict::Represented) return "represented by " + to_string(c.witness);
  return "obstructed modulo " + std::to_string(c.modulus);
}

json representability_json(const GramLattice& L, const Integer& n) {
  auto c = represents(L, n);
  if (c.verdict == RepresentabilityCertificate::Verdict::Represented)
    return {{"verdict", "represented"}, {"witness", to_json(c.witness)}};
  return {{"verdict", "obstructed"}, {"modulus", c.modulus}, {"reverified", residue_obstructed(L, n, c.modulus)}};
}

}  // namespace

Report census_report(const Scenario& s, const ChamberGraph& g) {
  const GramLattice& L = s.lattice;
  Report r;
  json& d = r.data;
  std::vector<std::string> summary;
  d["scenario"] = s.name;

  auto disc = discriminant_group(L);
  std::vector<long> factors;
  for (const auto& f : disc.invariant_factors) factors.push_back(to_long(f));
  d["discriminant"] = factors;
  d["represents"] = {{"-2", representability_json(L, -2)}, {"-10", representability_json(L, -10)}};
  auto cert2 = represents(L, -2);
  summary.push_back("discriminant group invariant factors " + json(factors).dump() + "; -2 " +
                    representability_text(cert2));

  json classes = json::array();
  GeneratorTable gens = involution_table(s);
  size_t factored = 0;
  for (size_t k = 0; k < g.class_reps.size(); ++k) {
    const Chamber& rep = g.nodes[g.class_reps[k]];
    json members = json::array();
    for (size_t i = 0; i < g.nodes.size(); ++i)
      if (g.class_of[i] == k) members.push_back(g.nodes[i].label);
    auto stab = nef_stabilizer(L, s.config, rep);
    json stab_json = json::array();
    for (const auto& m : stab) stab_json.push_back(to_json(m));
    json c = to_json(rep);
    c["members"] = members;
    c["stabilizer"] = stab_json;
    classes.push_back(c);
    std::string kinds;
    for (const auto& f : rep.walls) kinds += f.wall.kind == WallKind::Pex ? "p" : "f";
    summary.push_back("class " + std::to_string(k) + " " + rep.label + ": " + std::to_string(rep.walls.size()) +
                      " walls (" + vectors_text(facet_vectors(rep)) + "), " + std::to_string(members.size()) +
                      " chambers seen, stabilizer of order " + std::to_string(stab.size()));
  }
  const auto ball = word_ball(gens, 6, L.rank());
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    auto fac = factor_isometry(L, s.config, ball, g.nodes[0], g.certificates[i]);
    factored += fac.has_value();
  }
  d["census"] = {{"class_count", g.class_count()}, {"chambers", g.nodes.size()}, {"edges", g.edges.size()},
                 {"classes", classes}, {"certificates_factored", factored}};
  summary.insert(summary.begin() + 1, "census: " + std::to_string(g.class_count()) + " classes over " +
                                          std::to_string(g.nodes.size()) + " chambers");
  r.checks.push_back({"every class certificate factors through the involutions", factored == g.nodes.size(),
                      std::to_string(factored) + " of " + std::to_string(g.nodes.size())});

  json invs = json::array();
  for (const auto& inv : s.involutions) {
    IMat want = gens.at(inv.name);
    std::string got;
    bool match = false;
    try {
      IMat m = solve_involution(L, s.config, inv.fixed);
      match = equal(m, want);
      got = to_string(m);
    } catch (const Error& e) {
      got = e.what();
    }
    invs.push_back({{"name", inv.name}, {"word", word_to_string(inv.word)}, {"matrix", to_json(want)},
                    {"fixed", to_json(inv.fixed)}, {"solved", got}});
    r.checks.push_back({"involution fixing " + to_string(inv.fixed) + " is " + word_to_string(inv.word), match,
                        "solved " + got});
  }
  d["involutions"] = invs;

  if (s.double_flop) {
    IMat phi = word_eval(s.generators, *s.double_flop, L.rank());
    IVec gp = phi * L.ample;
    Chamber c = carve_chamber(L, gp);
    std::vector<IVec> image;
    for (const auto& f : g.nodes[0].walls) image.push_back(normalize_wall(L, IVec(phi * f.wall.vector)));
    bool is_image = sorted_vectors(image) == sorted_vectors(facet_vectors(c));
    long cls = -1;
    for (size_t k = 0; k < g.class_reps.size() && cls < 0; ++k)
      for (const auto& m : chamber_isometries(L, c, g.nodes[g.class_reps[k]]))
        if (bir_criterion(L, s.config, m)) {
          cls = static_cast<long>(k);
          break;
        }
    auto sweep = negdef_obstruction_sweep(L, gp, {Integer(-2), Integer(-6)}, 2);
    d["double_flop"] = {{"word", word_to_string(*s.double_flop)}, {"polarization", to_json(gp)},
                        {"class", cls}, {"sweep", vectors_json(sweep)}};
    r.checks.push_back({"double-flop nef cone is " + word_to_string(*s.double_flop) + " applied to Nef(F)", is_image,
                        vectors_text(facet_vectors(c))});
    r.checks.push_back({"double-flop chamber belongs to a census class", cls >= 0 && cls != 0,
                        "class " + std::to_string(cls)});
    summary.push_back("double flop class " + std::to_string(cls) + (sweep.empty() ? " (Fano of a second cubic)" : "") + ", polarization " + to_string(gp) +
                      ": obstruction sweep " + (sweep.empty() ? "empty" : vectors_text(sweep)));
  }

  const json& e = s.expected;
  if (e.is_object()) {
    if (e.contains("classes"))
      expect_equal(r, "class count", std::to_string(e.at("classes").get<long>()), std::to_string(g.class_count()));
    if (e.contains("nef_walls"))
      expect_equal(r, "Nef(F) walls", vectors_text(sorted_vectors([&] {
                     std::vector<IVec> v;
                     for (const auto& w : e.at("nef_walls")) v.push_back(ivec_from_json(w));
                     return v;
                   }())),
                   vectors_text(sorted_vectors(facet_vectors(g.nodes[0]))));
    if (e.contains("flop_nef_walls"))
      for (const auto& [key, walls] : e.at("flop_nef_walls").items()) {
        std::vector<IVec> want;
        for (const auto& w : walls) want.push_back(ivec_from_json(w));
        std::string got = "no such facet";
        for (const auto& f : g.nodes[0].walls)
          if (key_of(f.wall.vector) == key) got = vectors_text(sorted_vectors(facet_vectors(cross_wall(L, g.nodes[0], f.wall))));
        expect_equal(r, "walls after flopping (" + key + ")", vectors_text(sorted_vectors(want)), got);
      }
    if (e.contains("discriminant"))
      expect_equal(r, "discriminant invariant factors", e.at("discriminant").dump(), json(factors).dump());
    if (e.contains("minus2"))
      expect_equal(r, "-2 representability", e.at("minus2").get<std::string>(),
                   d["represents"]["-2"]["verdict"].get<std::string>());
    if (e.contains("double_flop_sweep") && d.contains("double_flop"))
      expect_equal(r, "obstruction sweep at the double-flop polarization", e.at("double_flop_sweep").dump(),
                   d["double_flop"]["sweep"].dump());
  }
  d["summary"] = summary;
  return r;
}

Report walls_report(const Scenario& s, const std::vector<IVec>& rays, const std::set<WallKind>& kinds) {
  Report r;
  auto walls = enumerate_walls_in_region(s.lattice, rays, kinds);
  json list = json::array();
  std::vector<std::string> summary{"walls meeting the cone over " + vectors_text(rays) + ":"};
  for (const auto& w : walls) {
    list.push_back(wall_json(w));
    summary.push_back("  " + to_string(w.vector) + " " + to_string(w.kind));
  }
  r.data = {{"scenario", s.name}, {"region", vectors_json(rays)}, {"walls", list}, {"summary", summary}};
  return r;
}

Report orbits_report(const Scenario& s, const std::string& kind, long bound) {
  OrbitKind k;
  Integer sq = 0;
  if (kind == "flop")
    k = OrbitKind::DeltaFlop;
  else if (kind == "pex")
    k = OrbitKind::DeltaPex;
  else if (kind.rfind("square", 0) == 0 && kind.size() > 6) {
    k = OrbitKind::Square;
    sq = Integer(kind.substr(6));
  } else
    throw Error("orbits: kind must be flop, pex or squareN");
  auto part = orbit_count(s.lattice, involution_table(s), k, sq, bound);
  Report r;
  json orbits = json::array();
  std::vector<std::string> summary{kind + " vectors with first coordinate <= " + std::to_string(bound) + ": " +
                                   std::to_string(part.elements) + " elements in " +
                                   std::to_string(part.orbits.size()) + " orbits"};
  std::vector<IVec> reps;
  for (const auto& o : part.orbits) {
    orbits.push_back({{"representative", to_json(o.representative)}, {"size", o.size}});
    summary.push_back("  " + to_string(o.representative) + " x" + std::to_string(o.size));
    reps.push_back(o.representative);
  }
  r.data = {{"scenario", s.name}, {"kind", kind},          {"bound", bound},
            {"elements", part.elements}, {"orbits", orbits}, {"summary", summary},
            {"freeness", {{"checked", part.freeness_checked}, {"failures", part.freeness_failures}}}};
  if (kind != "square6" || s.name == "syz")
    r.checks.push_back({"reduction words are unique (free action evidence)", part.freeness_failures == 0,
                        std::to_string(part.freeness_checked) + " elements checked"});
  const json& e = s.expected;
  if (e.is_object() && e.contains("orbits") && e.at("orbits").contains(kind)) {
    const json& want = e.at("orbits").at(kind);
    if (want.is_number())
      expect_equal(r, kind + " orbit count", std::to_string(want.get<long>()), std::to_string(part.orbits.size()));
    else {
      std::vector<IVec> w;
      for (const auto& v : want) w.push_back(ivec_from_json(v));
      expect_equal(r, kind + " orbit representatives", vectors_text(sorted_vectors(w)), vectors_text(reps));
    }
  }
  if (kind != "square6" || s.name == "syz") return r;
  // Freeness is not expected where relations exist.
  r.data["freeness"]["note"] = "not asserted: the generators satisfy relations";
  return r;
}

Report relations_report(const Scenario& s, int max_length) {
  auto gens = involution_table(s);
  auto rels = find_relations(gens, s.lattice.rank(), max_length);
  Report r;
  json list = json::array();
  std::vector<std::string> summary{"relations up to length " + std::to_string(max_length) +
                                   " among the involutions (besides squares): " + std::to_string(rels.size())};
  std::set<std::string> texts;
  for (const auto& w : rels) {
    std::string t;
    for (const auto& x : w) t += (t.empty() ? "" : " ") + x;
    texts.insert(t);
    list.push_back(t);
    summary.push_back("  " + t);
  }
  r.data = {{"scenario", s.name},
            {"max_length", max_length},
            {"relators", list},
            {"summary", summary},
            {"note", "relations up to the length bound only; matrices are compared in O(NS), into which Bir(F) embeds"}};
  const json& e = s.expected;
  if (e.is_object() && e.contains("relations") && e.at("relations").at("max_length").get<int>() == max_length) {
    const json& want = e.at("relations");
    if (want.contains("count"))
      expect_equal(r, "relator count", std::to_string(want.at("count").get<long>()), std::to_string(rels.size()));
    if (want.contains("contains"))
      for (const auto& w : want.at("contains")) {
        Word canon = canonical_relator(parse_word(w.get<std::string>()));
        std::string t;
        for (const auto& x : canon) t += (t.empty() ? "" : " ") + x;
        r.checks.push_back({"relator " + w.get<std::string>() + " found", texts.count(t) > 0, t});
      }
  }
  return r;
}

Report surface_report(const Scenario& s) {
  if (s.twisted_cubics.size() != 2) throw Error("surface-lines: scenario " + s.name + " has no twisted cubic data");
  auto pair = twisted_cubic_pair(s.twisted_cubics[0], s.twisted_cubics[1]);
  IMat t = intersection_table(pair);
  auto c1 = component_classes(pair.gamma1, pair.gamma1_dual);
  Report r;
  std::vector<std::string> summary{"plane intersection degrees (rows P1, S1, P1v; columns P2, S2, P2v):"};
  for (Eigen::Index i = 0; i < 3; ++i) summary.push_back("  " + to_string(IVec(t.row(i).transpose())));
  r.data = {{"scenario", s.name},
            {"gamma1", to_json(pair.gamma1)},
            {"gamma1_dual", to_json(pair.gamma1_dual)},
            {"gamma2", to_json(pair.gamma2)},
            {"gamma2_dual", to_json(pair.gamma2_dual)},
            {"component_sizes", {c1.bisecant.size(), c1.mixed.size(), c1.dual_bisecant.size()}},
            {"table", to_json(t)},
            {"summary", summary}};
  if (s.expected.is_object() && s.expected.contains("plane_table"))
    expect_equal(r, "plane intersection table", to_string(imat_from_json(s.expected.at("plane_table"))), to_string(t));
  return r;
}

Report appendix_report(const AppendixData& d, std::optional<uint32_t> prime, int threads) {
  Report r;
  auto claims = verify_appendix(d, prime, threads);
  json list = json::array();
  const uint32_t p = prime.value_or(d.prime);
  std::vector<std::string> summary{"example " + d.name + " over F_" + std::to_string(p) +
                                   "; containment is scan-certified and smoothness covers rational points only"};
  for (const auto& c : claims) {
    list.push_back({{"claim", c.claim}, {"passed", c.passed}, {"asserted", c.asserted}, {"detail", c.detail}});
    if (c.asserted)
      r.checks.push_back({c.claim, c.passed, c.detail});
    else
      summary.push_back(std::string(c.passed ? "holds " : "fails ") + c.claim + " (" + c.detail + ")");
  }
  r.data = {{"example", d.name}, {"prime", p}, {"claims", list}, {"summary", summary}};
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string slice_csv(const std::vector<SliceObject>& objects) {
  std::string out = "object_type,id,x_num,x_den,y_num,y_den\n";
  for (const auto& o : objects)
    for (const auto& p : o.points)
      out += o.type + "," + csv_field(o.id) + "," + boost::multiprecision::numerator(p(0)).str() + "," +
             boost::multiprecision::denominator(p(0)).str() + "," + boost::multiprecision::numerator(p(1)).str() + "," +
             boost::multiprecision::denominator(p(1)).str() + "\n";
  return out;
}

std::string slice_json(const std::vector<SliceObject>& objects) {
  json list = json::array();
  for (const auto& o : objects) {
    json pts = json::array();
    for (const auto& p : o.points) pts.push_back({to_string(p(0)), to_string(p(1))});
    list.push_back({{"type", o.type}, {"id", o.id}, {"points", pts}});
  }
  return json{{"objects", list}}.dump(2) + "\n";
}

}  // namespace cubicbir
