#pragma once

#include "cubicbir/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace cubicbir {

using Word = std::vector<std::string>;

struct Isometry {
  IMat matrix;
  Word word;  // empty when not expressed over a generator table
};

// Named generators, iterated in name order.
using GeneratorTable = std::map<std::string, IMat>;

struct NonIntegralReflection : Error {
  using Error::Error;
};

bool is_isometry(const GramLattice& L, const IMat& m);
bool preserves_positive_cone(const GramLattice& L, const IMat& m);

IMat identity_matrix(Eigen::Index n);
// Inverse of an isometry: G^-1 M^T G.
IMat isometry_inverse(const GramLattice& L, const IMat& m);
IMat matrix_power(const IMat& m, int k);

// x -> x - 2 q(x, rho)/q(rho, rho) rho, for q(rho, rho) in {-2, -10}.
IMat reflection_in(const GramLattice& L, const IVec& rho);

// (a, b, c) evaluates to A * B * C.
IMat word_eval(const GeneratorTable& table, const Word& word, Eigen::Index rank);
// "R4^3 R1 R4^3" -> R4 R4 R4 R1 R4 R4 R4
Word parse_word(const std::string& text);
std::string word_to_string(const Word& word);

// All M with |entries| <= bound and M^T G M = G, sorted lexicographically.
std::vector<IMat> bounded_isometry_search(const GramLattice& L, int entry_bound);

// Distinct group elements reachable by words of length <= max_length.
std::map<IMat, Word, LexLess> word_ball(const GeneratorTable& table, int max_length, Eigen::Index rank);

}  // namespace cubicbir
