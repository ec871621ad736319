#pragma once

#include "symlie/lie.hpp"

namespace symlie {

/// Ordered word bases.  tensor_words enumerates all n^k words; guarded.
const std::vector<Word>& tensor_words(const Ctx& ctx, int k);
const std::vector<Word>& sym_words(const Ctx& ctx, int k);
const std::vector<Word>& ext_words(const Ctx& ctx, int k);

/// Natural projection H^{(x)k} -> S^k H (words to sorted multisets).
SymPoly abelianize(const TensorPoly& t);

/// Symplectic pairing on H, extended bilinearly; omega(a_i, b_i) = 1.
Rational omega_pairing(const TensorPoly& u, const TensorPoly& v);

/// omega_0 as Sum a_i ^ b_i and as Sum [a_i, b_i].
struct OmegaClass {
  ExtPoly ext;
  LiePoly lie;
};
OmegaClass omega_class(const Ctx& ctx);

/// Basis of sp(2g, Q) acting on H (dimension g(2g+1)).  The first g*g entries
/// are the gl-corner A_ij (a_j -> a_i, b_i -> -b_j); A_ii form the Cartan.
std::vector<SparseMatrix> sp_generators(const Ctx& ctx);
/// Indices of the Cartan elements inside sp_generators.
std::vector<int> sp_cartan_indices(const Ctx& ctx);

/// Space descriptors for induced actions and invariants.
struct SpaceDesc {
  enum class Kind { Tensor, Sym, Ext, Der, ExtOfExt };
  Kind kind = Kind::Tensor;
  int k = 1;      // inner power (for Der: the derivation degree)
  int outer = 0;  // ExtOfExt: outer exterior power of Lambda^k H
};

long long space_dim(const Ctx& ctx, const SpaceDesc& d);
/// Leibniz/functorial extension of X (an n x n matrix on H) to the space.
SparseMatrix induced_action(const Ctx& ctx, const SparseMatrix& X, const SpaceDesc& d);
/// sp-weight of each basis coordinate of the space.
std::vector<std::vector<int>> space_weights(const Ctx& ctx, const SpaceDesc& d);

/// Action on Der+(L_n)(k) = Hom(H, L(k+1)); defined in derivation.cpp.
SparseMatrix der_action(const Ctx& ctx, const SparseMatrix& X, int k);
long long der_dim(const Ctx& ctx, int k);
std::vector<int> der_coord_weight(const Ctx& ctx, int k, int coord);
/// Leibniz action of X on L_n(degree) in the Lyndon basis.
SparseMatrix lie_action_matrix(const Ctx& ctx, const SparseMatrix& X, int degree);

/// Exterior power of an arbitrary representation: basis = strictly increasing
/// p-tuples of 0..dim-1 in lexicographic order.
std::vector<std::vector<int>> ext_tuples(int dim, int p);
SparseMatrix ext_power_action(const SparseMatrix& A, int p);

/// Common kernel of all sp generators on the space: for rational
/// finite-dimensional representations this is the Sp(2g,Q)-invariant part.
Subspace invariant_subspace(const Ctx& ctx, const SpaceDesc& d);

/// Generic engine: invariant vectors of a family of actions.  When weights
/// are supplied, restricts to the weight-zero coordinates first (the Cartan
/// kernel) and stacks only the listed non-Cartan generators.
Subspace invariants_from_actions(const std::vector<SparseMatrix>& actions,
                                 const std::vector<std::vector<int>>* weights,
                                 const std::vector<int>& cartan_indices);

/// Kernel of the contraction Lambda^3 H -> H, with the Sp-equivariant
/// projection of Lambda^3 H onto it along omega_0 ^ H.
struct USubspace {
  Ctx ctx;
  Subspace sub;  // inside the ext_words(ctx, 3) coordinate space
};
USubspace u_subspace(const Ctx& ctx);  // g >= 2
/// Contraction c(u^v^w) = w(u,v) w + w(v,w) u + w(w,u) v.
TensorPoly ext3_contract(const ExtPoly& t);
/// Projection Lambda^3 H -> U along omega_0 ^ H.
ExtPoly u_project(const ExtPoly& t);

/// Higher intersection pairings.
/// iota_{2k+1} on S^{2k+1} H: sum over bijections of products of omega.
Rational iota_pairing_sym(const SymPoly& u, const SymPoly& v);
/// iota_1 on U (inside Lambda^3 H): determinant pairing det[omega(u_i, v_j)].
/// Arguments must lie in U.
Rational iota_pairing_u(const ExtPoly& u, const ExtPoly& v);

}  // namespace symlie
