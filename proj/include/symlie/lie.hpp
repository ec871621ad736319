#pragma once

#include <optional>

#include "symlie/poly.hpp"

namespace symlie {

/// dim L_n(k) = (1/k) sum_{d|k} mu(d) n^{k/d}  (Witt / necklace formula).
long long witt_dim(int n, int k);

/// All Lyndon words of length k over n letters, lexicographic.  Cached.
const std::vector<Word>& lyndon_words(int n, int k);

bool is_lyndon(const Word& w);

/// Standard factorization w = u.v of a Lyndon word (|w| >= 2): v is the
/// longest proper Lyndon suffix; the basis element is [b(u), b(v)].
std::pair<Word, Word> lyndon_factorize(const Word& w);

LiePoly lie_zero(const Ctx& ctx, int degree);
LiePoly lie_term(const Ctx& ctx, const Word& lyndon, const Rational& c = Rational(1));
LiePoly lie_add(const LiePoly& a, const LiePoly& b);
LiePoly lie_scale(const LiePoly& a, const Rational& c);

/// Tensor expansion of the standard bracketing of a Lyndon word.  Memoized.
const TensorPoly& embed_lyndon(const Ctx& ctx, const Word& w);

/// Injective Lie algebra map L_n(k) -> H^{(x)k}.
TensorPoly embed_to_tensor(const LiePoly& u);

struct LieProjection {
  std::optional<LiePoly> lie;  // set iff t is a Lie element
  TensorPoly defect;           // theta(t) - k*t when not
};

/// Dynkin criterion: t in H^{(x)k} is a Lie element iff theta(t) = k*t, where
/// theta is the left-normed bracketing map; then returns theta(t)/k.
LieProjection project_to_lie(const TensorPoly& t);

/// Converts a tensor already known to lie in L_n(k) to Lyndon coordinates
/// (triangular elimination against embed_lyndon).  Throws if not a Lie element.
LiePoly lie_from_tensor(const TensorPoly& t);

/// Lie bracket, computed through the tensor embedding.
LiePoly bracket(const LiePoly& u, const LiePoly& v);

/// Left-normed bracketing of a tensor polynomial (the Dynkin map theta).
TensorPoly dynkin_theta(const TensorPoly& t);

/// Integer fast path used by the bracket-heavy inner loops.  Terms are kept
/// as word-sorted vectors with int64 coefficients; overflow throws.
using ITerms = std::vector<std::pair<Word, long long>>;
const ITerms& embed_lyndon_int(int n, const Word& w);
/// Triangular conversion of an integer Lie tensor to Lyndon coordinates.
ITerms lie_from_tensor_int(int n, ITerms t);

/// Nested-array bracket expressions, e.g. ["x1", ["x1", "x2"]].
struct BracketExpr {
  int leaf = -1;  // letter index when a leaf
  std::vector<BracketExpr> children;  // exactly two when internal

  bool is_leaf() const { return children.empty(); }
  int degree() const;
};
LiePoly eval_bracket_expr(const Ctx& ctx, const BracketExpr& e);

}  // namespace symlie
