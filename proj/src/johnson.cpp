#include "symlie/johnson.hpp"

#include <algorithm>

namespace symlie {

GroupWord gw_identity(const Ctx& ctx) { return GroupWord{ctx, {}}; }

GroupWord gw_gen(const Ctx& ctx, int i, bool inverse) {
  if (i < 0 || i >= ctx.n) throw ValidationError("gw_gen: index out of range");
  return GroupWord{ctx, {inverse ? -(i + 1) : i + 1}};
}

GroupWord gw_reduce(GroupWord w) {
  std::vector<int> out;
  out.reserve(w.letters.size());
  for (int l : w.letters) {
    if (l == 0 || std::abs(l) > w.ctx.n) throw ValidationError("GroupWord: bad letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  w.letters = std::move(out);
  return w;
}

GroupWord gw_mul(const GroupWord& a, const GroupWord& b) {
  if (a.ctx != b.ctx) throw ValidationError("gw_mul: context mismatch");
  GroupWord w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return gw_reduce(std::move(w));
}

GroupWord gw_inv(const GroupWord& a) {
  GroupWord w{a.ctx, {}};
  w.letters.reserve(a.letters.size());
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it) w.letters.push_back(-*it);
  return w;
}

GroupWord gw_commutator(const GroupWord& a, const GroupWord& b) {
  return gw_mul(gw_mul(a, b), gw_mul(gw_inv(a), gw_inv(b)));
}

GroupWord boundary_word(const Ctx& ctx) {
  if (!ctx.symplectic) throw ValidationError("boundary_word: non-symplectic context");
  GroupWord g = gw_identity(ctx);
  for (int i = 0; i < ctx.genus(); ++i)
    g = gw_mul(g, gw_commutator(gw_gen(ctx, 2 * i), gw_gen(ctx, 2 * i + 1)));
  return g;
}

GroupWord gw_parse(const Ctx& ctx, const std::string& s) {
  GroupWord w = gw_identity(ctx);
  if (s.empty() || s == "1") return w;
  auto push_tok = [&](const std::string& tok) {
    if (tok.empty()) throw ValidationError("gw_parse: empty token");
    bool inv = std::isupper((unsigned char)tok[0]);
    std::string lower = tok;
    lower[0] = (char)std::tolower((unsigned char)lower[0]);
    int idx = ctx.letter_index(lower);
    w.letters.push_back(inv ? -(idx + 1) : idx + 1);
  };
  if (s.find('.') == std::string::npos && s.find_first_of("0123456789") == std::string::npos) {
    for (char c : s) push_tok(std::string(1, c));
  } else {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t dot = s.find('.', pos);
      push_tok(s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos));
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
  }
  return gw_reduce(std::move(w));
}

std::string gw_render(const GroupWord& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out.push_back('.');
    int l = w.letters[i];
    std::string name = w.ctx.letter_name(std::abs(l) - 1);
    if (l < 0) name[0] = (char)std::toupper((unsigned char)name[0]);
    out += name;
  }
  return out;
}

namespace {

MagnusSeries magnus_one(const Ctx& ctx, int m) {
  MagnusSeries s{ctx, m, {}};
  for (int d = 0; d <= m; ++d) s.comp.push_back(tensor_zero(ctx, d));
  add_term(s.comp[0].terms, Word(), Rational(1));
  return s;
}

// series for a single letter: 1 + X  or  1 - X + X^2 - ...
MagnusSeries magnus_letter(const Ctx& ctx, int letter, int m) {
  MagnusSeries s = magnus_one(ctx, m);
  int idx = std::abs(letter) - 1;
  if (letter > 0) {
    if (m >= 1) add_term(s.comp[1].terms, Word(1, (char)idx), Rational(1));
  } else {
    Word w;
    for (int d = 1; d <= m; ++d) {
      w.push_back((char)idx);
      add_term(s.comp[d].terms, w, Rational(d % 2 == 0 ? 1 : -1));
    }
  }
  return s;
}

}  // namespace

MagnusSeries magnus_mul(const MagnusSeries& a, const MagnusSeries& b) {
  if (a.ctx != b.ctx || a.truncation != b.truncation)
    throw ValidationError("magnus_mul: mismatch");
  MagnusSeries out{a.ctx, a.truncation, {}};
  for (int d = 0; d <= a.truncation; ++d) {
    TensorPoly acc = tensor_zero(a.ctx, d);
    for (int i = 0; i <= d; ++i) {
      if (a.comp[i].terms.empty() || b.comp[d - i].terms.empty()) continue;
      for (const auto& [u, x] : a.comp[i].terms)
        for (const auto& [v, y] : b.comp[d - i].terms) add_term(acc.terms, u + v, x * y);
    }
    out.comp.push_back(std::move(acc));
  }
  return out;
}

MagnusSeries magnus(const GroupWord& w, int truncation) {
  if (truncation < 1) throw ValidationError("magnus: truncation >= 1 expected");
  MagnusSeries s = magnus_one(w.ctx, truncation);
  for (int l : w.letters) s = magnus_mul(s, magnus_letter(w.ctx, l, truncation));
  return s;
}

LcsDepth lcs_depth(const GroupWord& w, int m_max) {
  GroupWord r = gw_reduce(w);
  if (r.is_identity()) throw ValidationError("lcs_depth: trivial word");
  if (m_max < 1) throw ValidationError("lcs_depth: m_max >= 1 expected");
  MagnusSeries s = magnus(r, m_max + 1);
  for (int d = 1; d <= m_max + 1; ++d) {
    if (s.comp[d].terms.empty()) continue;
    LcsDepth out;
    out.depth = d - 1;
    out.at_least = false;
    if (d == 1) {
      // abelianization certificate: a degree-1 Lie element
      LiePoly cert{r.ctx, 1, {}};
      for (const auto& [word, c] : s.comp[1].terms) add_term(cert.terms, word, c);
      out.certificate = cert;
    } else {
      auto proj = project_to_lie(s.comp[d]);
      if (!proj.lie)
        throw ValidationError("lcs_depth: lowest Magnus component is not a Lie element");
      out.certificate = *proj.lie;
    }
    return out;
  }
  LcsDepth out;
  out.depth = m_max;
  out.at_least = true;
  out.certificate = lie_zero(r.ctx, m_max + 1);
  return out;
}

Endomorphism endo_identity(const Ctx& ctx) {
  Endomorphism e{ctx, {}};
  for (int i = 0; i < ctx.n; ++i) e.images.push_back(gw_gen(ctx, i));
  return e;
}

GroupWord endo_apply(const Endomorphism& e, const GroupWord& w) {
  if (e.ctx != w.ctx) throw ValidationError("endo_apply: context mismatch");
  GroupWord out = gw_identity(e.ctx);
  std::vector<int> acc;
  for (int l : w.letters) {
    const GroupWord& img = e.images.at(std::abs(l) - 1);
    if (l > 0)
      acc.insert(acc.end(), img.letters.begin(), img.letters.end());
    else {
      for (auto it = img.letters.rbegin(); it != img.letters.rend(); ++it) acc.push_back(-*it);
    }
  }
  out.letters = std::move(acc);
  return gw_reduce(std::move(out));
}

Endomorphism endo_compose(const Endomorphism& a, const Endomorphism& b) {
  if (a.ctx != b.ctx) throw ValidationError("endo_compose: context mismatch");
  Endomorphism out{a.ctx, {}};
  for (int i = 0; i < a.ctx.n; ++i) out.images.push_back(endo_apply(a, b.images[i]));
  return out;
}

namespace {

// determinant of a small integer matrix (fraction-free Gaussian elimination)
mpz_class int_det(std::vector<std::vector<mpz_class>> m) {
  int n = (int)m.size();
  mpz_class det = 1, prev = 1;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r)
      for (int j = c + 1; j < n; ++j) m[r][j] = (m[c][c] * m[r][j] - m[r][c] * m[c][j]) / prev;
    prev = m[c][c];
  }
  det = sign * m[n - 1][n - 1];
  return det;
}

}  // namespace

FiltrationLevel filtration_level(const Endomorphism& e, int k_max) {
  if ((int)e.images.size() != e.ctx.n) throw ValidationError("filtration_level: bad image count");
  FiltrationLevel out;
  out.level = k_max;
  out.at_least = true;
  for (int i = 0; i < e.ctx.n; ++i) {
    GroupWord defect = gw_mul(e.images[i], gw_inv(gw_gen(e.ctx, i)));
    if (defect.is_identity()) continue;
    LcsDepth d = lcs_depth(defect, k_max);
    if (d.at_least) continue;
    if (d.depth < out.level || (d.depth == out.level && out.at_least)) {
      out.level = d.depth;
      out.at_least = false;
    }
  }
  // invertibility of the degree-1 matrix over Z
  std::vector<std::vector<mpz_class>> m(e.ctx.n, std::vector<mpz_class>(e.ctx.n, 0));
  for (int i = 0; i < e.ctx.n; ++i)
    for (int l : e.images[i].letters) m[std::abs(l) - 1][i] += (l > 0 ? 1 : -1);
  mpz_class det = int_det(std::move(m));
  out.invertible = (det == 1 || det == -1);
  return out;
}

Derivation johnson_tau(const Endomorphism& e, int k) {
  if (k < 1) throw ValidationError("johnson_tau: k >= 1 expected");
  FiltrationLevel lv = filtration_level(e, k);
  if (lv.level < k)
    throw ValidationError("johnson_tau: filtration level below k");
  Derivation d = der_zero(e.ctx, k);
  for (int i = 0; i < e.ctx.n; ++i) {
    GroupWord defect = gw_mul(e.images[i], gw_inv(gw_gen(e.ctx, i)));
    if (defect.is_identity()) continue;
    MagnusSeries s = magnus(defect, k + 1);
    for (int low = 1; low <= k; ++low)
      if (!s.comp[low].terms.empty())
        throw ValidationError("johnson_tau: defect has unexpected low-degree term");
    if (s.comp[k + 1].terms.empty()) continue;
    auto proj = project_to_lie(s.comp[k + 1]);
    if (!proj.lie) throw ValidationError("johnson_tau: component is not a Lie element");
    d.images[i] = *proj.lie;
  }
  return d;
}

bool fixes_boundary(const Endomorphism& e, int k) {
  if (!e.ctx.symplectic) throw ValidationError("fixes_boundary: non-symplectic context");
  if (k < 0) throw ValidationError("fixes_boundary: k >= 0 expected");
  GroupWord gamma = boundary_word(e.ctx);
  GroupWord defect = gw_mul(endo_apply(e, gamma), gw_inv(gamma));
  if (defect.is_identity()) return true;
  // defect in Gamma_{k+1}  <=>  all Magnus components of degree <= k+1 vanish
  MagnusSeries s = magnus(defect, k + 1);
  for (int d = 1; d <= k + 1; ++d)
    if (!s.comp[d].terms.empty()) return false;
  return true;
}

}  // namespace symlie
