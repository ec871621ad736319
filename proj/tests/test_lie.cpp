#include <doctest.h>

#include <random>

#include "support/naive.hpp"
#include "symlie/lie.hpp"

using namespace symlie;

namespace {

Word W(std::initializer_list<int> letters) {
  Word w;
  for (int l : letters) w.push_back((char)l);
  return w;
}

LiePoly random_lie(std::mt19937& rng, const Ctx& ctx, int degree, int nterms) {
  const auto& words = lyndon_words(ctx.n, degree);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> coeff(-4, 4);
  LiePoly p = lie_zero(ctx, degree);
  for (int t = 0; t < nterms; ++t)
    add_term(p.terms, words[pick(rng)], Rational((long)coeff(rng)));
  return p;
}

}  // namespace

TEST_CASE("witt dimensions") {
  CHECK(witt_dim(2, 1) == 2);
  CHECK(witt_dim(2, 3) == 2);
  CHECK(witt_dim(4, 4) == 60);
  CHECK(witt_dim(4, 4) == (256 - 16) / 4);  // (4^4 - 4^2)/4
  CHECK(witt_dim(4, 6) == 670);
  CHECK_THROWS_AS(witt_dim(0, 1), ValidationError);
}

TEST_CASE("lyndon word enumeration examples") {
  Ctx c2 = make_context(2, false);
  const auto& l22 = lyndon_words(2, 2);
  REQUIRE(l22.size() == 1);
  CHECK(render_word(c2, l22[0], true) == "ab");

  const auto& l23 = lyndon_words(2, 3);
  REQUIRE(l23.size() == 2);
  CHECK(render_word(c2, l23[0], true) == "aab");
  CHECK(render_word(c2, l23[1], true) == "abb");

  Ctx c3 = make_context(3, false);
  const auto& l32 = lyndon_words(3, 2);
  REQUIRE(l32.size() == 3);
  CHECK(render_word(c3, l32[0], true) == "ab");
  CHECK(render_word(c3, l32[1], true) == "ac");
  CHECK(render_word(c3, l32[2], true) == "bc");
}

TEST_CASE("lyndon count matches witt and rotation oracle") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= 8; ++k) {
      if ((long long)std::pow(n, k) > 2000000) continue;
      CHECK((long long)lyndon_words(n, k).size() == witt_dim(n, k));
    }
  // independent brute force on the smaller range
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= 6; ++k) {
      auto oracle = naive::lyndon_by_rotation(n, k);
      const auto& lib = lyndon_words(n, k);
      CHECK(std::vector<Word>(oracle.begin(), oracle.end()) == lib);
    }
}

TEST_CASE("bracket examples") {
  Ctx c2 = make_context(2, false);
  LiePoly x1 = lie_term(c2, W({0}));
  LiePoly x2 = lie_term(c2, W({1}));

  LiePoly b = bracket(x1, x2);
  CHECK(b == lie_term(c2, W({0, 1})));

  CHECK(bracket(b, b).is_zero());

  // [[a,b],a] = -aab
  LiePoly t = bracket(b, x1);
  CHECK(t == lie_scale(lie_term(c2, W({0, 0, 1})), Rational(-1)));

  Ctx c3 = make_context(3, false);
  CHECK_THROWS_AS(bracket(x1, lie_term(c3, W({2}))), ValidationError);
}

TEST_CASE("embedding examples") {
  Ctx c2 = make_context(2, false);
  TensorPoly e = embed_to_tensor(lie_term(c2, W({0, 1})));
  TensorPoly expect = tensor_word(c2, W({0, 1}));
  add_term(expect.terms, W({1, 0}), Rational(-1));
  CHECK(e == expect);

  CHECK(embed_to_tensor(lie_term(c2, W({0}))) == tensor_word(c2, W({0})));

  // [x1,[x1,x2]] -> x1 x1 x2 - 2 x1 x2 x1 + x2 x1 x1
  TensorPoly e2 = embed_to_tensor(lie_term(c2, W({0, 0, 1})));
  TensorPoly expect2 = tensor_word(c2, W({0, 0, 1}));
  add_term(expect2.terms, W({0, 1, 0}), Rational(-2));
  add_term(expect2.terms, W({1, 0, 0}), Rational(1));
  CHECK(e2 == expect2);
}

TEST_CASE("dynkin projection") {
  Ctx c2 = make_context(2, false);
  TensorPoly comm = tensor_word(c2, W({0, 1}));
  add_term(comm.terms, W({1, 0}), Rational(-1));
  auto p = project_to_lie(comm);
  REQUIRE(p.lie.has_value());
  CHECK(*p.lie == lie_term(c2, W({0, 1})));

  auto bad = project_to_lie(tensor_word(c2, W({0, 1})));
  CHECK_FALSE(bad.lie.has_value());
  CHECK_FALSE(bad.defect.terms.empty());
}

TEST_CASE("round trip project(embed) = id") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 3;
    int k = 1 + trial % 6;
    Ctx ctx = make_context(n, false);
    LiePoly u = random_lie(rng, ctx, k, 3);
    auto p = project_to_lie(embed_to_tensor(u));
    REQUIRE(p.lie.has_value());
    CHECK(*p.lie == u);
  }
  // higher degrees on two letters
  std::mt19937 rng2(556);
  Ctx c2 = make_context(2, false);
  for (int k = 7; k <= 8; ++k) {
    LiePoly u = random_lie(rng2, c2, k, 4);
    auto p = project_to_lie(embed_to_tensor(u));
    REQUIRE(p.lie.has_value());
    CHECK(*p.lie == u);
  }
}

TEST_CASE("embedding is a Lie map") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    Ctx ctx = make_context(2 + trial % 3, false);
    LiePoly u = random_lie(rng, ctx, 1 + trial % 3, 3);
    LiePoly v = random_lie(rng, ctx, 1 + (trial + 1) % 3, 3);
    CHECK(embed_to_tensor(bracket(u, v)) ==
          tensor_commutator(embed_to_tensor(u), embed_to_tensor(v)));
  }
}

TEST_CASE("jacobi identity") {
  std::mt19937 rng(888);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 3;
    Ctx ctx = make_context(n, false);
    int da = 1 + trial % 3, db = 1 + (trial / 3) % 2, dc = 1 + (trial / 7) % 2;
    if (n == 2 && trial % 5 == 0) {
      da = 3;
      db = 3;
      dc = 2;  // total degree 8
    }
    LiePoly a = random_lie(rng, ctx, da, 2);
    LiePoly b = random_lie(rng, ctx, db, 2);
    LiePoly c = random_lie(rng, ctx, dc, 2);
    LiePoly s = lie_add(lie_add(bracket(a, bracket(b, c)), bracket(b, bracket(c, a))),
                        bracket(c, bracket(a, b)));
    CHECK(s.is_zero());
  }
}

TEST_CASE("bracket expressions") {
  Ctx c2 = make_context(2, false);
  BracketExpr inner;
  inner.children.push_back(BracketExpr{0, {}});
  inner.children.push_back(BracketExpr{1, {}});
  BracketExpr outer;
  outer.children.push_back(BracketExpr{0, {}});
  outer.children.push_back(inner);
  CHECK(outer.degree() == 3);
  CHECK(eval_bracket_expr(c2, outer) == lie_term(c2, W({0, 0, 1})));
}

TEST_CASE("integer fast path agrees with rational conversion") {
  std::mt19937 rng(1212);
  Ctx c4 = make_context(4, false);
  for (int trial = 0; trial < 20; ++trial) {
    LiePoly u = random_lie(rng, c4, 3, 2);
    LiePoly v = random_lie(rng, c4, 4, 2);
    TensorPoly t = tensor_commutator(embed_to_tensor(u), embed_to_tensor(v));
    // integer route
    ITerms it;
    for (const auto& [w, c] : t.terms) {
      REQUIRE(c.is_integer());
      it.emplace_back(w, (long long)c.num().get_si());
    }
    ITerms lie_int = lie_from_tensor_int(4, it);
    LiePoly expect = lie_from_tensor(t);
    LiePoly got = lie_zero(c4, 7);
    for (const auto& [w, c] : lie_int) add_term(got.terms, w, Rational((long)c));
    CHECK(got == expect);
  }
}
