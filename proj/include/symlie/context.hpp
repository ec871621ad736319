#pragma once

#include <string>
#include <vector>

#include "symlie/rational.hpp"

namespace symlie {

/// Basis context for H = H_1(F_n): n generators, optionally a symplectic
/// structure.  In the symplectic case n = 2g and the generators are ordered
/// a1, b1, a2, b2, ..., a_g, b_g with omega(a_i, b_j) = delta_ij and
/// omega(a_i, a_j) = omega(b_i, b_j) = 0.
struct Ctx {
  int n = 2;
  bool symplectic = false;

  bool operator==(const Ctx&) const = default;

  void validate() const {
    if (n < 2) throw ValidationError("context: n must be >= 2");
    if (symplectic && n % 2 != 0) throw ValidationError("context: symplectic n must be even");
  }
  int genus() const {
    if (!symplectic) throw ValidationError("context: genus requires symplectic");
    return n / 2;
  }

  /// omega(e_i, e_j) on basis vectors: 0 or +-1.
  int omega_basis(int i, int j) const {
    if (!symplectic) throw ValidationError("omega requires a symplectic context");
    if (i / 2 != j / 2) return 0;
    if (i % 2 == 0 && j == i + 1) return 1;
    if (i % 2 == 1 && j == i - 1) return -1;
    return 0;
  }
  /// The unique partner p with omega(e_i, e_p) != 0.
  int omega_partner(int i) const {
    if (!symplectic) throw ValidationError("omega requires a symplectic context");
    return (i % 2 == 0) ? i + 1 : i - 1;
  }

  std::string letter_name(int i) const {
    if (i < 0 || i >= n) throw ValidationError("letter index out of range");
    if (!symplectic) return "x" + std::to_string(i + 1);
    return std::string(i % 2 == 0 ? "a" : "b") + std::to_string(i / 2 + 1);
  }
  int letter_index(const std::string& name) const;

  /// sp-weight of a basis vector, as a vector in Z^g (a_i -> +e_i, b_i -> -e_i).
  std::vector<int> letter_weight(int i) const {
    std::vector<int> w(genus(), 0);
    w[i / 2] = (i % 2 == 0) ? 1 : -1;
    return w;
  }
};

inline Ctx make_context(int n, bool symplectic) {
  Ctx c{n, symplectic};
  c.validate();
  return c;
}
inline Ctx symplectic_context(int g) { return make_context(2 * g, true); }

/// Words over the basis letters are byte strings with values 0..n-1; byte-wise
/// lexicographic order matches the generator order.
using Word = std::string;

std::vector<int> word_weight(const Ctx& ctx, const Word& w);

/// Rendering: dotted letter names ("a1.b2.a1"); non-symplectic contexts with
/// n <= 26 also render compactly ('a' = x1, 'b' = x2, ...).
std::string render_word(const Ctx& ctx, const Word& w, bool compact);
Word parse_word(const Ctx& ctx, const std::string& s);

}  // namespace symlie
