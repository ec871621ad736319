#pragma once

#include "symlie/trace.hpp"

namespace symlie {

inline constexpr long long kDefaultCap = 200000;

/// Basis element of (Lambda^d h_{g,1})_n: a wedge of h-basis vectors, stored
/// as (degree, index) pairs sorted by degree then index.
using WedgeTuple = std::vector<std::pair<int, int>>;

struct ComplexSlice {
  int g = 0, d = 0, n = 0;
  std::vector<WedgeTuple> basis;
  std::map<WedgeTuple, int> index;
  std::vector<std::vector<int>> weights;

  int dim() const { return (int)basis.size(); }
};

/// Multigraded dimension of the slice: sum over degree partitions of n into d
/// parts of products of binomial counts (computed without enumeration).
long long slice_dim_formula(int g, int d, int n);

const ComplexSlice& build_slice(int g, int d, int n, long long cap = kDefaultCap);

/// Bracket of two h-basis vectors, as coordinates in h_{g,1}(k1+k2).
const SparseVec& bracket_h_coords(int g, int k1, int i1, int k2, int i2);

/// Matrix of an sp generator on h_{g,1}(k) in the HSlice basis.
const SparseMatrix& h_action(int g, int k, int gen_idx);

/// Chevalley-Eilenberg differential from slice (d, n) to slice (d+1, n):
/// (delta f)(D_0 ^...^ D_d) = sum_{i<j} (-1)^{i+j} f([D_i,D_j] ^ ... ^).
/// Acts on cochain coordinate vectors.
const SparseMatrix& differential(int g, int d, int n, long long cap = kDefaultCap);

/// Action of sp generator gen_idx on the slice (vectors, not functionals).
const SparseMatrix& slice_action(int g, int d, int n, int gen_idx,
                                 long long cap = kDefaultCap);

/// Invariant cochains (functionals annihilated by the sp action).
const Subspace& invariant_cochains(int g, int d, int n, long long cap = kDefaultCap);

/// Weight-homogeneous cochain on a complex slice.
struct Cochain {
  int g = 0, d = 0, n = 0;
  SparseVec coords;

  bool is_zero() const { return coords.empty(); }
};

bool is_cocycle(const Cochain& c, long long cap = kDefaultCap);
bool is_sp_invariant(const Cochain& c, long long cap = kDefaultCap);
/// delta of a cochain (coordinates on slice (d+1, n)).
Cochain coboundary(const Cochain& c, long long cap = kDefaultCap);

struct InvariantCohomology {
  int g = 0, d = 0, n = 0;
  long long dim_slice = 0;
  int dim_invariant = 0;
  int dim_cocycles = 0;    // invariant cocycles
  int dim_boundaries = 0;  // delta of invariant (d-1)-cochains
  int dim_h = 0;
  std::vector<SparseVec> representatives;  // slice-coordinate cocycles
};
InvariantCohomology invariant_cohomology(int g, int d, int n, long long cap = kDefaultCap);

/// e_1 = pullback of iota_1 along the U-projected tau_1 (degree 2, weight 2).
Cochain build_e1(int g, long long cap = kDefaultCap);
/// t_{2k+1} = pullback of iota_{2k+1} along trace(2k+1) (degree 2, weight 4k+2).
Cochain build_t(int g, int k, long long cap = kDefaultCap);

/// Class coordinates of a cocycle in the invariant cohomology basis.
std::vector<Rational> class_of(const Cochain& c, long long cap = kDefaultCap);

}  // namespace symlie
