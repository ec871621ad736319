#pragma once

#include <map>

#include "symlie/context.hpp"
#include "symlie/sparse.hpp"

namespace symlie {

using TermMap = std::map<Word, Rational>;

inline void add_term(TermMap& m, const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

inline void add_scaled(TermMap& dst, const TermMap& src, const Rational& c) {
  if (c.is_zero()) return;
  for (const auto& [w, x] : src) add_term(dst, w, c * x);
}

/// Element of H^{(x)k}: words of length `degree` over the context letters.
struct TensorPoly {
  Ctx ctx;
  int degree = 0;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const TensorPoly& o) const {
    return ctx == o.ctx && degree == o.degree && terms == o.terms;
  }
};

/// Element of S^k H: sorted words (multisets).
struct SymPoly {
  Ctx ctx;
  int degree = 0;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const SymPoly& o) const {
    return ctx == o.ctx && degree == o.degree && terms == o.terms;
  }
};

/// Element of Lambda^k H: strictly increasing words with sign normalization.
struct ExtPoly {
  Ctx ctx;
  int degree = 0;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const ExtPoly& o) const {
    return ctx == o.ctx && degree == o.degree && terms == o.terms;
  }
};

/// Element of L_n(k) in the Lyndon-word basis (standard bracketing).
struct LiePoly {
  Ctx ctx;
  int degree = 0;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const LiePoly& o) const {
    return ctx == o.ctx && degree == o.degree && terms == o.terms;
  }
};

TensorPoly tensor_zero(const Ctx& ctx, int degree);
TensorPoly tensor_word(const Ctx& ctx, const Word& w, const Rational& c = Rational(1));
TensorPoly tensor_add(const TensorPoly& a, const TensorPoly& b);
TensorPoly tensor_scale(const TensorPoly& a, const Rational& c);
/// Concatenation product extended bilinearly.
TensorPoly tensor_mul(const TensorPoly& a, const TensorPoly& b);
/// a (x) b - b (x) a
TensorPoly tensor_commutator(const TensorPoly& a, const TensorPoly& b);

/// Wedge-normalizes a word: sorts, returns sign (0 if repeated letters).
int ext_normalize(Word& w);
ExtPoly ext_term(const Ctx& ctx, Word w, Rational c);
ExtPoly ext_add(const ExtPoly& a, const ExtPoly& b);
/// Wedge product extended bilinearly.
ExtPoly ext_mul(const ExtPoly& a, const ExtPoly& b);

SymPoly sym_term(const Ctx& ctx, Word w, Rational c);

/// Coordinate vectors against a fixed ordered word basis.
SparseVec poly_to_vec(const TermMap& terms, const std::map<Word, int>& index);
std::map<Word, int> index_of(const std::vector<Word>& basis);

}  // namespace symlie
