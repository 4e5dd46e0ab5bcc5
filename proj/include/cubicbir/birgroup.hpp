#pragma once

#include "cubicbir/chambers.hpp"
#include "cubicbir/isometry.hpp"

#include <map>
#include <string>
#include <vector>

namespace cubicbir {

enum class MovMode { RoundPos, PexBounded };

struct BirCriterionConfig {
  std::vector<QVec> glue_gens;
  MovMode mov_mode = MovMode::RoundPos;
};

// Throws unless the glue generators span an index-two subgroup of the discriminant group.
void validate_config(const GramLattice& L, const BirCriterionConfig& config);

// +-Id on the glue subgroup, and preserves the positive cone (and Mov when pex-bounded).
bool bir_criterion(const GramLattice& L, const BirCriterionConfig& config, const IMat& phi);

struct NoSolution : Error {
  using Error::Error;
};
struct NotUnique : Error {
  using Error::Error;
};

// The unique Bir-induced involution fixing the vector that moves Nef(F).
IMat solve_involution(const GramLattice& L, const BirCriterionConfig& config, const IVec& fixed_vector);

struct OrbitReduction {
  IVec representative;
  Word word;  // word_eval(word) * input = sign * representative
  int sign = 1;
};

struct NonTermination : Error {
  using Error::Error;
};

OrbitReduction orbit_reduce(const GramLattice& L, const GeneratorTable& gens, const IVec& v,
                            const Integer& target_square);

enum class OrbitKind { DeltaFlop, DeltaPex, Square };

struct OrbitClass {
  IVec representative;
  size_t size = 0;
};

struct OrbitPartition {
  std::vector<OrbitClass> orbits;  // sorted by representative
  size_t elements = 0;
  // Elements with first coordinate <= freeness_bound whose reduction word is the
  // only reduced word of that length reaching them.
  size_t freeness_checked = 0;
  size_t freeness_failures = 0;
};

// Square is only read for OrbitKind::Square.
OrbitPartition orbit_count(const GramLattice& L, const GeneratorTable& gens, OrbitKind kind,
                           const Integer& square, long coefficient_bound, long freeness_bound = 20);

// Words in involutions that evaluate to the identity, cyclically reduced, up to
// rotation and reversal, with no shorter relator inside. Sorted by length then name.
std::vector<Word> find_relations(const GeneratorTable& gens, Eigen::Index rank, int max_length);
// Smallest rotation or reversal of a cyclic word.
Word canonical_relator(const Word& w);

std::vector<IMat> nef_stabilizer(const GramLattice& L, const BirCriterionConfig& config, const Chamber& c);

struct Factorization {
  Word word;
  IMat stabilizer;  // phi = word_eval(word) * stabilizer
};

// Writes phi as a word in the generators times an element fixing the chamber c,
// searching words up to max_length. Nullopt when none is found.
std::optional<Factorization> factor_isometry(const GramLattice& L, const BirCriterionConfig& config,
                                             const GeneratorTable& gens, const Chamber& c, const IMat& phi,
                                             int max_length = 6);
// Same, over a precomputed word_ball.
std::optional<Factorization> factor_isometry(const GramLattice& L, const BirCriterionConfig& config,
                                             const std::map<IMat, Word, LexLess>& ball, const Chamber& c,
                                             const IMat& phi);

}  // namespace cubicbir
