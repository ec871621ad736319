#include "symlie/poly.hpp"

#include <algorithm>

namespace symlie {

std::vector<int> word_weight(const Ctx& ctx, const Word& w) {
  std::vector<int> wt(ctx.genus(), 0);
  for (unsigned char c : w) wt[c / 2] += (c % 2 == 0) ? 1 : -1;
  return wt;
}

std::string render_word(const Ctx& ctx, const Word& w, bool compact) {
  if (compact && !ctx.symplectic && ctx.n <= 26) {
    std::string out;
    for (unsigned char c : w) out.push_back((char)('a' + c));
    return out;
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back('.');
    out += ctx.letter_name((unsigned char)w[i]);
  }
  return out;
}

int Ctx::letter_index(const std::string& name) const {
  if (name.empty()) throw ValidationError("empty letter name");
  char head = name[0];
  if (name.size() >= 2) {
    int idx = 0;
    try {
      idx = std::stoi(name.substr(1));
    } catch (...) {
      throw ValidationError("bad letter name '" + name + "'");
    }
    if (idx < 1) throw ValidationError("bad letter index in '" + name + "'");
    int i = -1;
    if (!symplectic && head == 'x') i = idx - 1;
    if (symplectic && head == 'a') i = 2 * (idx - 1);
    if (symplectic && head == 'b') i = 2 * (idx - 1) + 1;
    if (i < 0 || i >= n) throw ValidationError("letter '" + name + "' not in context");
    return i;
  }
  // compact single letter: 'a' = first generator, etc.
  if (!symplectic && head >= 'a' && head - 'a' < n) return head - 'a';
  throw ValidationError("letter '" + name + "' not in context");
}

Word parse_word(const Ctx& ctx, const std::string& s) {
  Word w;
  if (s.empty()) return w;
  if (s.find('.') == std::string::npos && s.find_first_of("0123456789") == std::string::npos) {
    for (char c : s) w.push_back((char)ctx.letter_index(std::string(1, c)));
    return w;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    w.push_back((char)ctx.letter_index(tok));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return w;
}

TensorPoly tensor_zero(const Ctx& ctx, int degree) { return TensorPoly{ctx, degree, {}}; }

TensorPoly tensor_word(const Ctx& ctx, const Word& w, const Rational& c) {
  TensorPoly t{ctx, (int)w.size(), {}};
  add_term(t.terms, w, c);
  return t;
}

TensorPoly tensor_add(const TensorPoly& a, const TensorPoly& b) {
  if (a.ctx != b.ctx || a.degree != b.degree) throw ValidationError("tensor_add: mismatch");
  TensorPoly out = a;
  add_scaled(out.terms, b.terms, Rational(1));
  return out;
}

TensorPoly tensor_scale(const TensorPoly& a, const Rational& c) {
  TensorPoly out{a.ctx, a.degree, {}};
  add_scaled(out.terms, a.terms, c);
  return out;
}

TensorPoly tensor_mul(const TensorPoly& a, const TensorPoly& b) {
  if (a.ctx != b.ctx) throw ValidationError("tensor_mul: context mismatch");
  TensorPoly out{a.ctx, a.degree + b.degree, {}};
  for (const auto& [u, x] : a.terms)
    for (const auto& [v, y] : b.terms) add_term(out.terms, u + v, x * y);
  return out;
}

TensorPoly tensor_commutator(const TensorPoly& a, const TensorPoly& b) {
  TensorPoly ab = tensor_mul(a, b);
  TensorPoly ba = tensor_mul(b, a);
  add_scaled(ab.terms, ba.terms, Rational(-1));
  return ab;
}

int ext_normalize(Word& w) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < w.size(); ++i) {
    char c = w[i];
    std::size_t j = i;
    while (j > 0 && w[j - 1] > c) {
      w[j] = w[j - 1];
      --j;
      sign = -sign;
    }
    w[j] = c;
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;
  return sign;
}

ExtPoly ext_term(const Ctx& ctx, Word w, Rational c) {
  ExtPoly e{ctx, (int)w.size(), {}};
  int s = ext_normalize(w);
  if (s != 0) add_term(e.terms, w, s == 1 ? c : -c);
  return e;
}

ExtPoly ext_add(const ExtPoly& a, const ExtPoly& b) {
  if (a.ctx != b.ctx || a.degree != b.degree) throw ValidationError("ext_add: mismatch");
  ExtPoly out = a;
  add_scaled(out.terms, b.terms, Rational(1));
  return out;
}

ExtPoly ext_mul(const ExtPoly& a, const ExtPoly& b) {
  if (a.ctx != b.ctx) throw ValidationError("ext_mul: context mismatch");
  ExtPoly out{a.ctx, a.degree + b.degree, {}};
  for (const auto& [u, x] : a.terms)
    for (const auto& [v, y] : b.terms) {
      Word w = u + v;
      int s = ext_normalize(w);
      if (s != 0) add_term(out.terms, w, s == 1 ? x * y : -(x * y));
    }
  return out;
}

SymPoly sym_term(const Ctx& ctx, Word w, Rational c) {
  SymPoly p{ctx, (int)w.size(), {}};
  std::sort(w.begin(), w.end());
  add_term(p.terms, w, c);
  return p;
}

SparseVec poly_to_vec(const TermMap& terms, const std::map<Word, int>& index) {
  SparseVec v;
  v.reserve(terms.size());
  for (const auto& [w, c] : terms) {
    auto it = index.find(w);
    if (it == index.end()) throw ValidationError("poly_to_vec: word outside basis");
    v.emplace_back(it->second, c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

std::map<Word, int> index_of(const std::vector<Word>& basis) {
  std::map<Word, int> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], (int)i);
  return idx;
}

}  // namespace symlie
