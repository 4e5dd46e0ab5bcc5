#include "cubicbir/census.hpp"

#include <algorithm>
#include <deque>

namespace cubicbir {

namespace {

std::vector<const Facet*> ordered_flop_facets(const Chamber& c, int order) {
  std::vector<const Facet*> out;
  for (const auto& f : c.walls)
    if (f.wall.kind == WallKind::Flop) out.push_back(&f);
  if (order == 1) std::reverse(out.begin(), out.end());
  if (order == 2 && !out.empty()) std::rotate(out.begin(), out.begin() + 1, out.end());
  return out;
}

}  // namespace

ChamberGraph census(const GramLattice& L, const BirCriterionConfig& config, const CensusOptions& options) {
  ChamberGraph g;
  std::vector<int> depth;
  auto add_node = [&](Chamber c, int d) {
    g.nodes.push_back(std::move(c));
    depth.push_back(d);
    return g.nodes.size() - 1;
  };
  auto new_class = [&](size_t node) {
    g.class_of.push_back(g.class_reps.size());
    g.class_reps.push_back(node);
    g.certificates.push_back(identity_matrix(L.rank()));
  };

  Chamber start = carve_chamber(L, L.ample);
  start.label = "F";
  new_class(add_node(std::move(start), 0));
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (const Facet* f : ordered_flop_facets(g.nodes[cur], options.facet_order)) {
      Chamber next = cross_wall(L, g.nodes[cur], f->wall);
      size_t target = g.nodes.size();
      for (size_t i = 0; i < g.nodes.size(); ++i)
        if (same_chamber(g.nodes[i], next)) target = i;
      if (target < g.nodes.size()) {
        g.edges.push_back({cur, target, f->wall, identity_matrix(L.rank())});
        continue;
      }
      next.label = g.nodes[cur].label + "/" + to_string(f->wall.vector);
      int d = depth[cur] + 1;
      target = add_node(std::move(next), d);
      g.edges.push_back({cur, target, f->wall, identity_matrix(L.rank())});
      bool matched = false;
      for (size_t k = 0; k < g.class_reps.size() && !matched; ++k)
        for (const auto& phi : chamber_isometries(L, g.nodes[target], g.nodes[g.class_reps[k]]))
          if (bir_criterion(L, config, phi)) {
            g.class_of.push_back(k);
            g.certificates.push_back(phi);
            matched = true;
            break;
          }
      if (matched) continue;
      if (d > options.max_depth)
        throw ClosureNotReached("census: new class beyond depth " + std::to_string(options.max_depth));
      new_class(target);
      queue.push_back(target);
    }
  }
  return g;
}

}  // namespace cubicbir
