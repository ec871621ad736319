#pragma once

#include "symlie/derivation.hpp"

namespace symlie {

/// Freely reduced word in F_n; letters are +-(index+1).
struct GroupWord {
  Ctx ctx;
  std::vector<int> letters;

  bool is_identity() const { return letters.empty(); }
  bool operator==(const GroupWord& o) const { return ctx == o.ctx && letters == o.letters; }
};

GroupWord gw_identity(const Ctx& ctx);
GroupWord gw_gen(const Ctx& ctx, int i, bool inverse = false);
GroupWord gw_reduce(GroupWord w);
GroupWord gw_mul(const GroupWord& a, const GroupWord& b);
GroupWord gw_inv(const GroupWord& a);
/// [a, b] = a b a^-1 b^-1
GroupWord gw_commutator(const GroupWord& a, const GroupWord& b);
/// gamma = [a_1, b_1] ... [a_g, b_g] (symplectic contexts).
GroupWord boundary_word(const Ctx& ctx);
/// Dotted or compact word syntax; capital letters denote inverses.
GroupWord gw_parse(const Ctx& ctx, const std::string& s);
std::string gw_render(const GroupWord& w);

/// Truncated Magnus expansion: components of degree 0..truncation.
struct MagnusSeries {
  Ctx ctx;
  int truncation = 0;
  std::vector<TensorPoly> comp;

  const TensorPoly& component(int d) const { return comp.at(d); }
};
MagnusSeries magnus(const GroupWord& w, int truncation);
MagnusSeries magnus_mul(const MagnusSeries& a, const MagnusSeries& b);

/// Largest k <= m_max with w in Gamma_k (Gamma_1 = [Gamma, Gamma]); detected
/// as: magnus(w) - 1 has lowest degree >= k+1.  `at_least` is set when the
/// depth is only bounded below (w in Gamma_{m_max+1}).
struct LcsDepth {
  int depth = 0;
  bool at_least = false;
  LiePoly certificate;  // degree-(depth+1) Magnus component, a Lie element
};
LcsDepth lcs_depth(const GroupWord& w, int m_max);

/// Endomorphism of F_n by generator images.
struct Endomorphism {
  Ctx ctx;
  std::vector<GroupWord> images;
};
Endomorphism endo_identity(const Ctx& ctx);
GroupWord endo_apply(const Endomorphism& e, const GroupWord& w);
/// (a o b)(x) = a(b(x))
Endomorphism endo_compose(const Endomorphism& a, const Endomorphism& b);

/// Largest k <= k_max with phi(x_i) x_i^-1 in Gamma_k for all i.  Level 1 is
/// the IA/Torelli condition.  `invertible` reports whether the degree-1
/// matrix lies in GL(n, Z) (so phi is an automorphism of every nilpotent
/// quotient); the level is reported either way.
struct FiltrationLevel {
  int level = 0;
  bool at_least = false;
  bool invertible = true;
};
FiltrationLevel filtration_level(const Endomorphism& e, int k_max);

/// k-th Johnson homomorphism: x_i -> class of phi(x_i) x_i^-1 in L(k+1).
/// Requires filtration level >= k.
Derivation johnson_tau(const Endomorphism& e, int k);

/// True iff phi(gamma) gamma^-1 lies in Gamma_{k+1}.
bool fixes_boundary(const Endomorphism& e, int k);

}  // namespace symlie
