#pragma once

#include "cubicbir/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cubicbir {

// Even hyperbolic lattice of rank 2 or 3 with the ample class as first basis
// vector, orthogonal to the remaining ones.
struct GramLattice {
  IMat gram;
  QMat gram_q;
  std::vector<std::string> basis_labels;
  IVec ample;
  std::vector<QVec> glue_gens;

  Eigen::Index rank() const { return gram.rows(); }
  // q(g, g)
  const Integer& ample_square() const { return gram(0, 0); }
  // Positive definite form -q restricted to the span of e_2, ..., e_r.
  IMat definite_part() const { return -gram.bottomRightCorner(rank() - 1, rank() - 1); }
};

GramLattice make_lattice(IMat gram, std::vector<std::string> labels,
                         std::vector<QVec> glue_gens = {});

template <typename DX, typename DY>
typename DX::Scalar gram_eval(const GramLattice& L, const Eigen::MatrixBase<DX>& x,
                              const Eigen::MatrixBase<DY>& y) {
  using S = typename DX::Scalar;
  static_assert(std::is_same_v<S, typename DY::Scalar>, "mixed scalar types");
  if (x.size() != L.rank() || y.size() != L.rank()) throw Error("gram_eval: dimension mismatch");
  if constexpr (std::is_same_v<S, Integer>)
    return (x.transpose() * L.gram * y)(0, 0);
  else
    return (x.transpose() * L.gram_q * y)(0, 0);
}

template <typename D>
typename D::Scalar square(const GramLattice& L, const Eigen::MatrixBase<D>& x) {
  return gram_eval(L, x, x);
}

// Intersection form on A(X) in a basis whose entry eta_index is eta.
struct IntersectionLattice {
  IMat gram;
  Eigen::Index eta_index = 0;
};

// NS(F) Gram in basis (g, lambda_1, ...), lambda_i = alpha(T_i - eta).
IMat abel_jacobi(const IntersectionLattice& A);

// Characteristic polynomial coefficients c_0..c_n of det(tI - M), c_n = 1.
std::vector<Integer> charpoly(const IMat& m);
// (positive, negative) eigenvalue counts of a symmetric matrix.
std::pair<int, int> signature(const IMat& symmetric);

struct SmithForm {
  IMat U, D, V;  // U * M * V = D
};
SmithForm smith_normal_form(const IMat& m);
Integer det(const IMat& m);

// Columns form a basis of {x in Z^n : M x = 0}.
IMat integer_kernel(const IMat& m);

struct DiscriminantGroup {
  std::vector<Integer> invariant_factors;  // only factors > 1
  std::vector<QVec> generator_lifts;
  std::vector<Rational> q_values;  // in [0, 2)
  Integer order() const;
};
DiscriminantGroup discriminant_group(const GramLattice& L);

// Invariant factors of a direct sum of cyclic groups of the given orders.
std::vector<Integer> invariant_factors(const std::vector<Integer>& cyclic_orders);

// Smallest d with d*w integral.
Integer element_order(const QVec& w);
// Reduce coordinates into [0, 1).
QVec reduce_mod_lattice(const QVec& w);
// Number of elements of the subgroup of (L (x) Q)/L generated by gens.
Integer subgroup_order(const std::vector<QVec>& gens);

// Column j holds the coefficients of phi(w_j) in the w_i, reduced mod ord(w_i).
IMat disc_action(const GramLattice& L, const IMat& phi, const std::vector<QVec>& gens);
bool is_plus_minus_identity(const IMat& action, const std::vector<QVec>& gens);

Integer divisibility(const GramLattice& L, const IVec& v);
Integer divisibility_full(const GramLattice& L, const IVec& v);

// All y in Z^n with y^T M y = target, M positive definite.
std::vector<IVec> definite_shell(const IMat& m, const Integer& target);
bool is_positive_definite(const IMat& m);

}  // namespace cubicbir
