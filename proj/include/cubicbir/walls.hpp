#pragma once

#include "cubicbir/lattice.hpp"

#include <optional>
#include <set>
#include <vector>

namespace cubicbir {

enum class WallKind { Pex, Flop };
enum class WallClass { Pex, Flop, NotWall };

struct WallDivisor {
  IVec vector;
  WallKind kind;
};

inline bool operator==(const WallDivisor& a, const WallDivisor& b) {
  return a.kind == b.kind && equal(a.vector, b.vector);
}
inline bool operator<(const WallDivisor& a, const WallDivisor& b) {
  if (!equal(a.vector, b.vector)) return lex_less(a.vector, b.vector);
  return a.kind < b.kind;
}

const char* to_string(WallKind k);
Integer wall_square(WallKind k);

// Primitive, q(v, g) >= 0, first nonzero coordinate positive on ties.
IVec normalize_wall(const GramLattice& L, const IVec& v);
WallClass classify_wall(const GramLattice& L, const IVec& v);
// Normalized wall divisor, or nullopt.
std::optional<WallDivisor> make_wall(const GramLattice& L, const IVec& v);

// Every wall of the requested kinds whose hyperplane meets the closed cone
// spanned by rays (all of positive square).
std::vector<WallDivisor> enumerate_walls_in_region(const GramLattice& L, const std::vector<QVec>& rays,
                                                   const std::set<WallKind>& kinds);
std::vector<WallDivisor> enumerate_walls_in_region(const GramLattice& L, const std::vector<IVec>& rays,
                                                   const std::set<WallKind>& kinds);

// Largest |first coordinate| a wall meeting the region can have; exposed for reports.
Integer wall_coordinate_bound(const GramLattice& L, const std::vector<QVec>& rays, WallKind kind);

// Oracle: box enumeration over all coordinates.
std::vector<WallDivisor> enumerate_walls_brute(const GramLattice& L, int coord_bound,
                                               const std::set<WallKind>& kinds);

struct RepresentabilityCertificate {
  enum class Verdict { Represented, Obstructed };
  Verdict verdict;
  IVec witness;     // Represented
  long modulus = 0; // Obstructed
};

struct Undecided : Error {
  using Error::Error;
};

RepresentabilityCertificate represents(const GramLattice& L, const Integer& n, long max_first_coord = 1000);
// True when q(v, v) = n has no solution mod m (exhaustive over (Z/m)^rank).
bool residue_obstructed(const GramLattice& L, const Integer& n, long m);

std::vector<IVec> negdef_obstruction_sweep(const GramLattice& L, const IVec& orthogonal_to,
                                           const std::vector<Integer>& squares, const Integer& required_div);

// All v with q(v, v) = n, v_0 >= 0 (lexicographically positive when v_0 = 0), |v_0| <= bound.
std::vector<IVec> vectors_of_square(const GramLattice& L, const Integer& n, long first_coord_bound);

// Slice coordinates (v_1/v_0, ..., v_{r-1}/v_0) of a vector with v_0 > 0.
QVec slice_point(const QVec& v);
QVec slice_point(const IVec& v);
QVec lift_slice_point(const QVec& y);

}  // namespace cubicbir
