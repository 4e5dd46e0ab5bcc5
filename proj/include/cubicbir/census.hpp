#pragma once

#include "cubicbir/birgroup.hpp"

#include <vector>

namespace cubicbir {

struct ChamberEdge {
  size_t from = 0, to = 0;
  WallDivisor wall;
  IMat mapping;  // identity: crossing a flop wall does not move the lattice
};

struct ChamberGraph {
  std::vector<Chamber> nodes;  // nodes[0] is the start chamber
  std::vector<ChamberEdge> edges;
  std::vector<size_t> class_of;       // per node
  std::vector<size_t> class_reps;     // node index of each class representative
  std::vector<IMat> certificates;     // per node: Bir isometry taking it onto its representative
  size_t class_count() const { return class_reps.size(); }
};

struct ClosureNotReached : Error {
  using Error::Error;
};

struct CensusOptions {
  int max_depth = 12;
  // 0: facets in canonical order, 1: reversed, 2: rotated by one.
  int facet_order = 0;
};

// Breadth-first search across flop facets from the chamber of the ample class,
// grouping chambers up to Bir-induced isometries.
ChamberGraph census(const GramLattice& L, const BirCriterionConfig& config, const CensusOptions& options = {});

}  // namespace cubicbir
