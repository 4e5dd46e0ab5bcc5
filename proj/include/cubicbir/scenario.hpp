#pragma once

#include "cubicbir/birgroup.hpp"
#include "cubicbir/fqgeom.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cubicbir {

struct InvolutionSpec {
  std::string name;
  IVec fixed;
  Word word;  // over the scenario generators
};

struct Scenario {
  std::string name;
  std::string source;  // raw file text, hashed for the cache
  GramLattice lattice;
  GeneratorTable generators;
  BirCriterionConfig config;
  std::vector<InvolutionSpec> involutions;
  std::optional<IntersectionLattice> intersection;
  std::vector<IVec> twisted_cubics;     // Picard classes, empty when not applicable
  std::optional<Word> double_flop;      // isometry taking Nef(F) to a double-flop chamber
  nlohmann::json expected;              // null when absent
};

// Parses and validates; throws Error with the offending key.
Scenario parse_scenario(const std::string& text);
// A registry name ("c12", "syz", "nonsyz") or a path to a scenario file.
Scenario load_scenario(const std::string& name_or_path);
std::vector<std::string> scenario_names();

// Involution generators keyed by involution name.
GeneratorTable involution_table(const Scenario& s);

AppendixData parse_appendix(const std::string& text);
AppendixData load_appendix(const std::string& name_or_path);

// JSON helpers shared with the report writer.
IVec ivec_from_json(const nlohmann::json& j);
IMat imat_from_json(const nlohmann::json& j);  // row-major nested arrays
nlohmann::json to_json(const IVec& v);
nlohmann::json to_json(const IMat& m);

}  // namespace cubicbir
