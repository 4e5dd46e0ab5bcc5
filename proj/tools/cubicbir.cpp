#include "cubicbir/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace cubicbir;

namespace {

constexpr int kExitMismatch = 2;
constexpr int kExitIncomplete = 3;

std::vector<QVec> parse_region(const std::string& text) {
  std::vector<QVec> rays;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    std::string body;
    for (char c : item)
      if (c != '(' && c != ')' && c != ' ') body += c;
    if (body.empty()) continue;
    std::vector<Rational> coords;
    std::stringstream parts(body);
    std::string x;
    while (std::getline(parts, x, ',')) coords.push_back(parse_rational(x));
    QVec v(static_cast<Eigen::Index>(coords.size()));
    for (size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords[i];
    rays.push_back(v);
  }
  if (rays.empty()) throw Error("--region: no rays given");
  return rays;
}

int emit(const Report& r, bool as_json, const std::string& json_path) {
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw Error("cannot write " + json_path);
    out << r.json_text();
  }
  std::cout << (as_json ? r.json_text() : r.text());
  return r.ok() ? 0 : kExitMismatch;
}

struct Timer {
  std::string what;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << what << " took " << s << " s\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birational models of Fano varieties of lines on cubic fourfolds containing cubic scrolls"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  int threads = 1;
  bool as_json = false;
  app.add_option("--threads", threads, "worker threads (output does not depend on it)")->check(CLI::PositiveNumber);
  app.add_flag("--json-stdout", as_json, "print JSON instead of text");

  std::string scenario, json_path;
  CensusOptions census_opts;
  auto* census_cmd = app.add_subcommand("census", "chamber census and birational automorphism analysis");
  census_cmd->add_option("scenario", scenario, "registry name or scenario file")->required();
  census_cmd->add_option("--depth", census_opts.max_depth, "maximum BFS depth")->check(CLI::NonNegativeNumber);
  census_cmd->add_option("--facet-order", census_opts.facet_order, "facet visiting order")->check(CLI::Range(0, 2));
  census_cmd->add_option("--json", json_path, "also write the JSON report here");

  std::string region;
  std::vector<std::string> kinds{"flop", "pex"};
  auto* walls_cmd = app.add_subcommand("walls", "walls meeting a rational cone");
  walls_cmd->add_option("scenario", scenario)->required();
  walls_cmd->add_option("--region", region, "rays such as \"(4,3,3);(4,-3,3)\"")->required();
  walls_cmd->add_option("--kind", kinds)->check(CLI::IsMember({"flop", "pex"}));

  std::string orbit_kind;
  long bound = 50;
  auto* orbits_cmd = app.add_subcommand("orbits", "orbits of wall or fixed-square vectors");
  orbits_cmd->add_option("scenario", scenario)->required();
  orbits_cmd->add_option("--kind", orbit_kind)->required()->check(CLI::IsMember({"flop", "pex", "square6"}));
  orbits_cmd->add_option("--bound", bound, "bound on the first coordinate");

  int max_length = 14;
  auto* relations_cmd = app.add_subcommand("relations", "relators among the involutions");
  relations_cmd->add_option("scenario", scenario)->required();
  relations_cmd->add_option("--max-length", max_length)->check(CLI::Range(1, 40));

  auto* surface_cmd = app.add_subcommand("surface-lines", "Lagrangian plane intersection table");
  surface_cmd->add_option("scenario", scenario)->required();

  std::string example;
  std::optional<uint32_t> prime;
  auto* appendix_cmd = app.add_subcommand("verify-appendix", "finite-field checks of the explicit examples");
  appendix_cmd->add_option("example", example, "syz, nonsyz or a data file")->required();
  appendix_cmd->add_option("--prime", prime)->check(CLI::Range(3u, 1000u));

  std::string level = "1", format = "csv", out_path, chambers_sel = "all";
  auto* slice_cmd = app.add_subcommand("slice", "chamber cross-section data");
  slice_cmd->add_option("scenario", scenario)->required();
  slice_cmd->add_option("--level", level, "value of q(g, x) on the slice");
  slice_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  slice_cmd->add_option("--out", out_path, "output file (default stdout)");
  slice_cmd->add_option("--chambers", chambers_sel, "all, reps, none, or comma-separated labels");

  std::string cache_action;
  auto* cache_cmd = app.add_subcommand("cache", "manage cached chamber graphs");
  cache_cmd->add_option("action", cache_action)->required()->check(CLI::IsMember({"clear", "status"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (census_cmd->parsed()) {
      Scenario s = load_scenario(scenario);
      Timer t{"census " + s.name};
      CachedCensus c = cached_census(s, census_opts);
      if (!c.warning.empty()) std::cerr << "warning: " << c.warning << "\n";
      return emit(census_report(s, c.graph), as_json, json_path);
    }
    if (walls_cmd->parsed()) {
      Scenario s = load_scenario(scenario);
      std::set<WallKind> ks;
      for (const auto& k : kinds) ks.insert(k == "pex" ? WallKind::Pex : WallKind::Flop);
      std::vector<IVec> rays;
      for (const auto& q : parse_region(region)) {
        if (q.size() != s.lattice.rank()) throw Error("--region: ray dimension does not match the lattice");
        rays.push_back(primitive(q));
      }
      return emit(walls_report(s, rays, ks), as_json, "");
    }
    if (orbits_cmd->parsed()) {
      Scenario s = load_scenario(scenario);
      Timer t{"orbits " + s.name};
      return emit(orbits_report(s, orbit_kind, bound), as_json, "");
    }
    if (relations_cmd->parsed()) {
      Scenario s = load_scenario(scenario);
      Timer t{"relations " + s.name};
      return emit(relations_report(s, max_length), as_json, "");
    }
    if (surface_cmd->parsed()) return emit(surface_report(load_scenario(scenario)), as_json, "");
    if (appendix_cmd->parsed()) {
      AppendixData d = load_appendix(example);
      Timer t{"verify-appendix " + d.name};
      return emit(appendix_report(d, prime, threads), as_json, "");
    }
    if (slice_cmd->parsed()) {
      Scenario s = load_scenario(scenario);
      std::vector<Chamber> chosen;
      if (chambers_sel != "none") {
        ChamberGraph g = cached_census(s, {}).graph;
        if (chambers_sel == "all")
          chosen = g.nodes;
        else if (chambers_sel == "reps")
          for (size_t i : g.class_reps) chosen.push_back(g.nodes[i]);
        else {
          std::stringstream in(chambers_sel);
          std::string label;
          while (std::getline(in, label, ',')) {
            auto it = std::find_if(g.nodes.begin(), g.nodes.end(), [&](const Chamber& c) { return c.label == label; });
            if (it == g.nodes.end()) throw Error("--chambers: no chamber labelled " + label);
            chosen.push_back(*it);
          }
        }
      }
      auto objects = slice_export(s.lattice, chosen, parse_rational(level));
      std::string text = format == "csv" ? slice_csv(objects) : slice_json(objects);
      if (out_path.empty())
        std::cout << text;
      else
        std::ofstream(out_path, std::ios::binary) << text;
      return 0;
    }
    if (cache_cmd->parsed()) {
      auto dir = cache_dir();
      if (!dir) {
        std::cout << "caching disabled (set CUBICBIR_CACHE_DIR)\n";
        return 0;
      }
      namespace fs = std::filesystem;
      size_t n = 0;
      uintmax_t bytes = 0;
      if (fs::exists(*dir))
        for (const auto& e : fs::directory_iterator(*dir)) {
          if (e.path().extension() != ".json") continue;
          ++n;
          bytes += e.file_size();
          if (cache_action == "clear") fs::remove(e.path());
        }
      std::cout << (cache_action == "clear" ? "removed " : "") << n << " cached graph(s), " << bytes << " bytes in "
                << *dir << "\n";
      return 0;
    }
  } catch (const ClosureNotReached& e) {
    std::cerr << "incomplete: " << e.what() << "\n";
    return kExitIncomplete;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
