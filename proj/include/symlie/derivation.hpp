#pragma once

#include "symlie/tensor.hpp"

namespace symlie {

/// Homogeneous element of Der+(L_n)(k): images of the n generators, each a
/// LiePoly of degree k+1.
struct Derivation {
  Ctx ctx;
  int degree = 1;
  std::vector<LiePoly> images;

  void validate() const;
  bool is_zero() const {
    for (const auto& u : images)
      if (!u.is_zero()) return false;
    return true;
  }
};

Derivation der_zero(const Ctx& ctx, int k);
/// Basis element E_{i,w}: x_i -> w, other generators -> 0.
Derivation der_basis_elem(const Ctx& ctx, int k, int gen, const Word& lyndon);

/// Coordinate space of Der+(L_n)(k): index = gen * witt(n,k+1) + lyndon pos.
SparseVec der_to_vec(const Derivation& d);
Derivation der_from_vec(const Ctx& ctx, int k, const SparseVec& v);

/// Substitutes images[letter] for each slot of t (degree-raising Leibniz).
TensorPoly slot_substitute(const TensorPoly& t, const std::vector<TensorPoly>& images);

/// Leibniz action of the derivation on a Lie element.
LiePoly apply_der(const Derivation& d, const LiePoly& u);
/// Same through the tensor embedding, without the final Lie conversion.
TensorPoly apply_der_tensor(const Derivation& d, const TensorPoly& t);

Derivation bracket_der(const Derivation& a, const Derivation& b);
Derivation der_add(const Derivation& a, const Derivation& b);
Derivation der_scale(const Derivation& a, const Rational& c);

/// D(omega_0) = Sum_i [D(a_i), b_i] + [a_i, D(b_i)]  in L(k+2).
LiePoly omega_action(const Derivation& d);

/// h_{g,1}(k) as an explicit echelon subspace of the Der+(L_{2g})(k)
/// coordinate space, with the sp-weight of each basis vector.
struct HSlice {
  int g = 0;
  int degree = 0;
  Subspace sub;
  std::vector<std::vector<int>> weights;
  int dim() const { return sub.dim(); }
};
const HSlice& h_basis(int g, int k);
Derivation h_vector(int g, int k, int i);  // i-th basis vector as a Derivation
/// Installs a precomputed slice (disk cache); returns false when already cached.
bool h_basis_install(int g, int k, Subspace sub);

/// The matrix of D -> D(omega_0) on Der+(2g)(k), rows over L(k+2) Lyndon words.
SparseMatrix omega_map_matrix(int g, int k);

/// Lambda^3 H <-> h_{g,1}(1).
struct Tau1 {
  Ctx ctx;
  SparseMatrix to_der;  // der_dim(1) x ext3_dim; columns = images of wedges
  /// tau_1: coordinates of a degree-1 h-element in the Lambda^3 basis.
  ExtPoly inverse(const Derivation& d) const;
  Derivation forward(const ExtPoly& xi) const;
};
const Tau1& tau1_iso(int g);

/// U-projected tau_1 (the composition h(1) -> Lambda^3 H -> U).
ExtPoly tau1_bar(int g, const Derivation& d);

/// Span of all [E_a, E_b] with deg E_a + deg E_b = d inside Der+(L_n)(d).
Subspace commutator_span(const Ctx& ctx, int d);

}  // namespace symlie
