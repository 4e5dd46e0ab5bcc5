#pragma once

#include "cubicbir/census.hpp"
#include "cubicbir/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cubicbir {

inline constexpr const char* kToolVersion = "0.1.0";

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t h);

nlohmann::json to_json(const Chamber& c);
Chamber chamber_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChamberGraph& g);
ChamberGraph graph_from_json(const nlohmann::json& j);

// Directory from CUBICBIR_CACHE_DIR; nullopt disables caching.
std::optional<std::string> cache_dir();

struct CachedCensus {
  ChamberGraph graph;
  bool from_cache = false;
  std::string warning;  // set when a cache entry was unreadable or corrupt
};
CachedCensus cached_census(const Scenario& s, const CensusOptions& options);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  nlohmann::json data;
  std::vector<Check> checks;
  bool ok() const;
  // Human-readable summary followed by one line per check.
  std::string text() const;
  // Deterministic JSON (sorted keys), checks included.
  std::string json_text() const;
};

Report census_report(const Scenario& s, const ChamberGraph& g);
Report walls_report(const Scenario& s, const std::vector<IVec>& rays, const std::set<WallKind>& kinds);
Report orbits_report(const Scenario& s, const std::string& kind, long bound);
Report relations_report(const Scenario& s, int max_length);
Report surface_report(const Scenario& s);
Report appendix_report(const AppendixData& d, std::optional<uint32_t> prime, int threads);

// Slice at q(g, x) = level as CSV rows or a JSON document.
std::string slice_csv(const std::vector<SliceObject>& objects);
std::string slice_json(const std::vector<SliceObject>& objects);

}  // namespace cubicbir
