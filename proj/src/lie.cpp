#include "symlie/lie.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>

namespace symlie {

namespace {

std::vector<int> mobius_table(int k) {
  std::vector<int> mu(k + 1, 1);
  std::vector<char> primed(k + 1, 0);
  for (int p = 2; p <= k; ++p) {
    if (primed[p]) continue;
    for (int m = p; m <= k; m += p) {
      primed[m] = (m != p);
      mu[m] *= -1;
    }
    long long p2 = (long long)p * p;
    for (long long m = p2; m <= k; m += p2) mu[m] = 0;
  }
  mu[1] = 1;
  return mu;
}

}  // namespace

long long witt_dim(int n, int k) {
  if (n < 1 || k < 1) throw ValidationError("witt_dim: need n >= 1, k >= 1");
  auto mu = mobius_table(k);
  mpz_class total = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0 || mu[d] == 0) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), (unsigned long)n, (unsigned long)(k / d));
    total += mu[d] * p;
  }
  mpz_class q = total / k;
  if (!q.fits_slong_p()) throw CapExceeded("witt_dim overflow");
  return q.get_si();
}

const std::vector<Word>& lyndon_words(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<Word>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (n < 1 || k < 1) throw ValidationError("lyndon_words: need n >= 1, k >= 1");

  std::vector<Word> out;
  // Duval's generation of Lyndon words of length <= k in lexicographic order.
  Word w(1, (char)0);
  while (true) {
    if ((int)w.size() == k) out.push_back(w);
    Word t;
    t.reserve(k);
    for (int i = 0; i < k; ++i) t.push_back(w[i % w.size()]);
    while (!t.empty() && (unsigned char)t.back() == (unsigned char)(n - 1)) t.pop_back();
    if (t.empty()) break;
    t.back() = (char)((unsigned char)t.back() + 1);
    w = std::move(t);
  }
  auto [pos, ok] = cache.emplace(key, std::move(out));
  return pos->second;
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w.compare(w.substr(i)) >= 0) return false;
  }
  return true;
}

std::pair<Word, Word> lyndon_factorize(const Word& w) {
  if (w.size() < 2 || !is_lyndon(w)) throw ValidationError("lyndon_factorize: not a Lyndon word");
  // right factor = lexicographically least proper suffix
  std::size_t best = 1;
  for (std::size_t i = 2; i < w.size(); ++i)
    if (w.compare(i, Word::npos, w, best, Word::npos) < 0) best = i;
  return {w.substr(0, best), w.substr(best)};
}

LiePoly lie_zero(const Ctx& ctx, int degree) { return LiePoly{ctx, degree, {}}; }

LiePoly lie_term(const Ctx& ctx, const Word& lyndon, const Rational& c) {
  if (!is_lyndon(lyndon)) throw ValidationError("lie_term: not a Lyndon word");
  for (unsigned char ch : lyndon)
    if (ch >= ctx.n) throw ValidationError("lie_term: letter outside context");
  LiePoly p{ctx, (int)lyndon.size(), {}};
  add_term(p.terms, lyndon, c);
  return p;
}

LiePoly lie_add(const LiePoly& a, const LiePoly& b) {
  if (a.ctx != b.ctx || a.degree != b.degree) throw ValidationError("lie_add: mismatch");
  LiePoly out = a;
  add_scaled(out.terms, b.terms, Rational(1));
  return out;
}

LiePoly lie_scale(const LiePoly& a, const Rational& c) {
  LiePoly out{a.ctx, a.degree, {}};
  add_scaled(out.terms, a.terms, c);
  return out;
}

const TensorPoly& embed_lyndon(const Ctx& ctx, const Word& w) {
  static std::map<std::tuple<int, bool, Word>, TensorPoly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(ctx.n, ctx.symplectic, w);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::function<TensorPoly(const Word&)> go = [&](const Word& u) -> TensorPoly {
    auto k = std::make_tuple(ctx.n, ctx.symplectic, u);
    auto hit = cache.find(k);
    if (hit != cache.end()) return hit->second;
    TensorPoly result;
    if (u.size() == 1) {
      result = tensor_word(ctx, u);
    } else {
      auto [l, r] = lyndon_factorize(u);
      result = tensor_commutator(go(l), go(r));
    }
    cache.emplace(k, result);
    return result;
  };
  go(w);
  return cache.at(key);
}

TensorPoly embed_to_tensor(const LiePoly& u) {
  TensorPoly out = tensor_zero(u.ctx, u.degree);
  for (const auto& [w, c] : u.terms) add_scaled(out.terms, embed_lyndon(u.ctx, w).terms, c);
  return out;
}

TensorPoly dynkin_theta(const TensorPoly& t) {
  TensorPoly out = tensor_zero(t.ctx, t.degree);
  for (const auto& [w, c] : t.terms) {
    // left-normed bracketing [[...[w0,w1],w2],...]
    TensorPoly p = tensor_word(t.ctx, Word(1, w[0]));
    for (std::size_t i = 1; i < w.size(); ++i)
      p = tensor_commutator(p, tensor_word(t.ctx, Word(1, w[i])));
    add_scaled(out.terms, p.terms, c);
  }
  return out;
}

LiePoly lie_from_tensor(const TensorPoly& t) {
  LiePoly out{t.ctx, t.degree, {}};
  TermMap rest = t.terms;
  while (!rest.empty()) {
    const Word& w = rest.begin()->first;
    if (!is_lyndon(w))
      throw ValidationError("lie_from_tensor: leading word is not Lyndon; not a Lie element");
    Rational c = rest.begin()->second;
    add_term(out.terms, w, c);
    add_scaled(rest, embed_lyndon(t.ctx, w).terms, -c);
  }
  return out;
}

LieProjection project_to_lie(const TensorPoly& t) {
  if (t.degree < 1) throw ValidationError("project_to_lie: degree must be >= 1");
  TensorPoly theta = dynkin_theta(t);
  TensorPoly defect = theta;
  add_scaled(defect.terms, t.terms, Rational(-(long)t.degree));
  if (!defect.terms.empty()) return LieProjection{std::nullopt, defect};
  return LieProjection{lie_from_tensor(t), tensor_zero(t.ctx, t.degree)};
}

LiePoly bracket(const LiePoly& u, const LiePoly& v) {
  if (u.ctx != v.ctx) throw ValidationError("bracket: context mismatch");
  return lie_from_tensor(tensor_commutator(embed_to_tensor(u), embed_to_tensor(v)));
}

namespace {

constexpr long long kIntGuard = 1LL << 56;

void iterms_axpy(ITerms& dst, long long c, const ITerms& src) {
  if (c == 0) return;
  ITerms out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      long long v = c * src[j].second;
      if (std::llabs(v) > kIntGuard) throw CapExceeded("integer bracket overflow");
      if (v != 0) out.emplace_back(src[j].first, v);
      ++j;
    } else {
      long long v = dst[i].second + c * src[j].second;
      if (std::llabs(v) > kIntGuard) throw CapExceeded("integer bracket overflow");
      if (v != 0) out.emplace_back(dst[i].first, v);
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

}  // namespace

const ITerms& embed_lyndon_int(int n, const Word& w) {
  static std::map<std::pair<int, Word>, ITerms> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, w);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Ctx ctx = make_context(std::max(n, 2), false);
  const TensorPoly& emb = embed_lyndon(ctx, w);
  ITerms terms;
  terms.reserve(emb.terms.size());
  for (const auto& [word, c] : emb.terms) {
    if (!c.is_integer()) throw ValidationError("embed_lyndon_int: non-integer coefficient");
    mpz_class z = c.num();
    if (!z.fits_slong_p()) throw CapExceeded("embed_lyndon_int: coefficient overflow");
    terms.emplace_back(word, z.get_si());
  }
  return cache.emplace(key, std::move(terms)).first->second;
}

ITerms lie_from_tensor_int(int n, ITerms t) {
  ITerms out;
  while (!t.empty()) {
    const Word w = t.front().first;
    long long c = t.front().second;
    if (!is_lyndon(w))
      throw ValidationError("lie_from_tensor_int: leading word is not Lyndon");
    out.emplace_back(w, c);
    iterms_axpy(t, -c, embed_lyndon_int(n, w));
  }
  return out;
}

int BracketExpr::degree() const {
  if (is_leaf()) return 1;
  int d = 0;
  for (const auto& c : children) d += c.degree();
  return d;
}

LiePoly eval_bracket_expr(const Ctx& ctx, const BracketExpr& e) {
  if (e.is_leaf()) {
    if (e.leaf < 0 || e.leaf >= ctx.n) throw ValidationError("bracket expr: bad leaf");
    return lie_term(ctx, Word(1, (char)e.leaf));
  }
  if (e.children.size() != 2) throw ValidationError("bracket expr: nodes must be binary");
  return bracket(eval_bracket_expr(ctx, e.children[0]), eval_bracket_expr(ctx, e.children[1]));
}

}  // namespace symlie
