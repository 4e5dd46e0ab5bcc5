#pragma once

#include "cubicbir/walls.hpp"

#include <string>
#include <vector>

namespace cubicbir {

struct Facet {
  WallDivisor wall;
  int sign;  // sign * q(wall, x) >= 0 on the chamber
};

struct Chamber {
  std::vector<Facet> walls;  // sorted by wall vector
  std::vector<IVec> rays;    // rank 3: cyclic order, starting at the lexicographically smallest
  IVec interior_point;       // sum of the rays
  std::string label;
};

bool same_chamber(const Chamber& a, const Chamber& b);
const Facet* find_facet(const Chamber& c, const IVec& wall);

struct PointOnWall : Error {
  using Error::Error;
};
struct CrossingPexWall : Error {
  using Error::Error;
};

// The chamber of the wall arrangement (both kinds) containing p.
Chamber carve_chamber(const GramLattice& L, const QVec& p);
Chamber carve_chamber(const GramLattice& L, const IVec& p);

// Neighbour across a flop facet.
Chamber cross_wall(const GramLattice& L, const Chamber& c, const WallDivisor& w);

// Pex walls with q(rho, p) < 0, i.e. separating p from the ample class.
std::vector<WallDivisor> separating_pex_walls(const GramLattice& L, const QVec& p);
bool mov_membership(const GramLattice& L, const QVec& p);
bool mov_membership(const GramLattice& L, const IVec& p);

// Whether v^perp meets the (closed) movable cone inside the positive cone.
bool hyperplane_meets_mov(const GramLattice& L, const IVec& v);

// All isometries mapping chamber a onto chamber b (ray bijections).
std::vector<IMat> chamber_isometries(const GramLattice& L, const Chamber& a, const Chamber& b);

bool strictly_inside(const GramLattice& L, const Chamber& c, const QVec& x);

struct SliceObject {
  std::string type;  // "wall", "circle", "chamber"
  std::string id;
  std::vector<QVec> points;  // 2-D
};

// Rank 3 only. Coordinates are (v_1, v_2) of points with q(g, v) = level.
std::vector<SliceObject> slice_export(const GramLattice& L, const std::vector<Chamber>& chambers,
                                      const Rational& level, int circle_samples = 64);

}  // namespace cubicbir
