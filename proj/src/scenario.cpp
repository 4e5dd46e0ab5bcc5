#include "cubicbir/scenario.hpp"

#include <fstream>
#include <sstream>
#include <string_view>

namespace cubicbir {

namespace embedded {
const std::vector<std::pair<std::string_view, std::string_view>>& table();
}

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw Error("scenario: missing key '" + key + "'");
  return j.at(key);
}

std::optional<std::string> embedded_text(const std::string& key) {
  for (const auto& [k, v] : embedded::table())
    if (k == key) return std::string(v);
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string registry_or_file(const std::string& dir, const std::string& name_or_path) {
  if (auto t = embedded_text(dir + "/" + name_or_path)) return *t;
  if (name_or_path.find('/') == std::string::npos && name_or_path.find('.') == std::string::npos)
    throw Error("unknown " + dir + " entry '" + name_or_path + "'");
  return read_file(name_or_path);
}

}  // namespace

IVec ivec_from_json(const json& j) {
  if (!j.is_array()) throw Error("expected an integer array");
  IVec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_number_integer())
      v(static_cast<Eigen::Index>(i)) = Integer(j[i].get<long long>());
    else if (j[i].is_string())
      v(static_cast<Eigen::Index>(i)) = Integer(j[i].get<std::string>());
    else
      throw Error("expected an integer entry");
  }
  return v;
}

IMat imat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("expected a nonempty matrix");
  const size_t cols = j[0].size();
  IMat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != cols) throw Error("ragged matrix");
    m.row(static_cast<Eigen::Index>(r)) = ivec_from_json(j[r]).transpose();
  }
  return m;
}

json to_json(const IVec& v) {
  json out = json::array();
  for (const auto& x : v) {
    if (abs(x) < Integer(1) << 62)
      out.push_back(x.convert_to<long long>());
    else
      out.push_back(x.str());
  }
  return out;
}

json to_json(const IMat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(IVec(m.row(r).transpose())));
  return out;
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("scenario: invalid JSON: ") + e.what());
  }
  Scenario s;
  s.source = text;
  try {
    s.name = require(j, "name").get<std::string>();
    IMat gram = imat_from_json(require(j, "gram"));
    auto labels = require(j, "basis").get<std::vector<std::string>>();
    std::vector<QVec> glue;
    for (const auto& g : require(j, "glue")) {
      QVec v(static_cast<Eigen::Index>(g.size()));
      for (size_t i = 0; i < g.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_rational(g[i].get<std::string>());
      glue.push_back(v);
    }
    s.lattice = make_lattice(gram, labels, glue);
    auto mode = require(j, "mov_mode").get<std::string>();
    if (mode != "round" && mode != "pex") throw Error("scenario: mov_mode must be 'round' or 'pex'");
    s.config = {glue, mode == "pex" ? MovMode::PexBounded : MovMode::RoundPos};
    validate_config(s.lattice, s.config);

    if (j.contains("intersection_table")) {
      const auto& t = j.at("intersection_table");
      IntersectionLattice a{imat_from_json(require(t, "gram")), 0};
      if (t.contains("eta_index")) a.eta_index = t.at("eta_index").get<long>();
      if (!equal(abel_jacobi(a), gram))
        throw Error("scenario: gram does not match the intersection table");
      s.intersection = a;
    }
    for (const auto& [name, m] : require(j, "generators").items()) {
      IMat g = imat_from_json(m);
      if (!is_isometry(s.lattice, g)) throw Error("scenario: generator " + name + " is not an isometry");
      s.generators[name] = g;
    }
    for (const auto& inv : require(j, "involutions")) {
      InvolutionSpec spec{require(inv, "name").get<std::string>(), ivec_from_json(require(inv, "fixed")),
                          parse_word(require(inv, "word").get<std::string>())};
      IMat m = word_eval(s.generators, spec.word, s.lattice.rank());
      if (!equal(IMat(m * m), identity_matrix(s.lattice.rank())))
        throw Error("scenario: involution " + spec.name + " does not square to the identity");
      if (!equal(IVec(m * spec.fixed), spec.fixed))
        throw Error("scenario: involution " + spec.name + " does not fix " + to_string(spec.fixed));
      s.involutions.push_back(std::move(spec));
    }
    if (j.contains("twisted_cubics"))
      for (const auto& g : j.at("twisted_cubics")) s.twisted_cubics.push_back(ivec_from_json(g));
    if (j.contains("double_flop")) s.double_flop = parse_word(require(j.at("double_flop"), "word").get<std::string>());
    if (j.contains("expected")) s.expected = j.at("expected");
  } catch (const json::exception& e) {
    throw Error("scenario '" + s.name + "': " + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& name_or_path) {
  return parse_scenario(registry_or_file("scenarios", name_or_path));
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : embedded::table())
    if (k.substr(0, 10) == "scenarios/") out.emplace_back(k.substr(10));
  return out;
}

GeneratorTable involution_table(const Scenario& s) {
  GeneratorTable t;
  for (const auto& inv : s.involutions) t[inv.name] = word_eval(s.generators, inv.word, s.lattice.rank());
  return t;
}

AppendixData parse_appendix(const std::string& text) {
  AppendixData d;
  try {
    json j = json::parse(text);
    d.name = require(j, "name").get<std::string>();
    d.prime = require(j, "prime").get<uint32_t>();
    d.variables = require(j, "variables").get<int>();
    d.cubic = require(j, "cubic").get<std::string>();
    d.hyperplanes = require(j, "hyperplanes").get<std::map<std::string, std::string>>();
    for (const auto& [name, sj] : require(j, "scrolls").items()) {
      AppendixScroll sc;
      sc.hyperplane = require(sj, "hyperplane").get<std::string>();
      if (sj.contains("matrix")) {
        std::array<std::array<std::string, 3>, 2> m;
        const auto& mj = sj.at("matrix");
        if (mj.size() != 2 || mj[0].size() != 3 || mj[1].size() != 3) throw Error("scroll matrix must be 2x3");
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 3; ++c) m[r][c] = mj[r][c].get<std::string>();
        sc.matrix = m;
      } else {
        sc.quadrics = require(sj, "quadrics").get<std::vector<std::string>>();
      }
      d.scrolls[name] = sc;
    }
    for (const auto& ij : require(j, "intersections")) {
      auto pair = require(ij, "scrolls").get<std::vector<std::string>>();
      if (pair.size() != 2) throw Error("intersection must name two scrolls");
      d.intersections.push_back({pair[0], pair[1], require(ij, "points").get<std::vector<std::vector<long>>>()});
    }
    for (const auto& sj : require(j, "surfaces")) {
      auto pair = sj.get<std::vector<std::string>>();
      if (pair.size() != 2) throw Error("surface must name two hyperplanes");
      d.surfaces.emplace_back(pair[0], pair[1]);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("appendix data: ") + e.what());
  }
  return d;
}

AppendixData load_appendix(const std::string& name_or_path) {
  return parse_appendix(registry_or_file("appendix", name_or_path));
}

}  // namespace cubicbir
