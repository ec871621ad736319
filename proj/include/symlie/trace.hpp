#pragma once

#include "symlie/derivation.hpp"

namespace symlie {

/// Fox partials of a degree-(k+1) tensor: eta = sum_i (d eta / d x_i) (x) x_i.
struct FoxRow {
  Ctx ctx;
  int degree = 0;  // degree of each partial
  std::vector<TensorPoly> partials;
};
FoxRow fox_partials(const TensorPoly& eta);

/// trace(k)(D) = (sum_i d(D(x_i))/d x_i)^ab in S^k H.
SymPoly trace_k(const Derivation& d);

enum class ContractionRoute { C1, CkPlus1 };
/// Contraction realization: CkPlus1 equals trace(k); C1 equals (-1)^k trace(k).
SymPoly trace_via_contraction(const Derivation& d, ContractionRoute route);

/// Matrix of trace(k) from Der+(L_n)(k) coordinates to sym_words(ctx, k).
SparseMatrix trace_matrix(const Ctx& ctx, int k);

/// Rank of trace(2k+1) restricted to h_{g,1}(2k+1); surjective iff this is
/// dim S^{2k+1} H = C(2g + 2k, 2k+1).
int trace_odd_rank(int g, int degree);

}  // namespace symlie
