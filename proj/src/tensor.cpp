#include "symlie/tensor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace symlie {

namespace {

constexpr long long kEnumGuard = 5'000'000;

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    if (r > kEnumGuard) throw CapExceeded("word basis too large");
  }
  return r;
}

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  if (!b.fits_slong_p()) throw CapExceeded("binomial overflow");
  return b.get_si();
}

std::vector<Word> gen_words(int n, int k, int mode) {
  // mode 0: all, 1: nondecreasing, 2: strictly increasing
  std::vector<Word> out;
  Word w;
  std::function<void(int)> rec = [&](int min_letter) {
    if ((int)w.size() == k) {
      out.push_back(w);
      return;
    }
    for (int c = (mode == 0 ? 0 : min_letter); c < n; ++c) {
      w.push_back((char)c);
      rec(mode == 2 ? c + 1 : c);
      w.pop_back();
    }
  };
  rec(0);
  return out;
}

using WordsKey = std::tuple<int, int, int>;
const std::vector<Word>& cached_words(const Ctx& ctx, int k, int mode) {
  static std::map<WordsKey, std::vector<Word>> cache;
  static std::mutex mtx;
  if (k < 0) throw ValidationError("word basis: negative degree");
  if (mode == 0) ipow(ctx.n, k);  // guard
  std::lock_guard<std::mutex> lock(mtx);
  WordsKey key{ctx.n, k, mode};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, gen_words(ctx.n, k, mode)).first;
  return it->second;
}

}  // namespace

const std::vector<Word>& tensor_words(const Ctx& ctx, int k) { return cached_words(ctx, k, 0); }
const std::vector<Word>& sym_words(const Ctx& ctx, int k) { return cached_words(ctx, k, 1); }
const std::vector<Word>& ext_words(const Ctx& ctx, int k) { return cached_words(ctx, k, 2); }

SymPoly abelianize(const TensorPoly& t) {
  SymPoly out{t.ctx, t.degree, {}};
  for (const auto& [w, c] : t.terms) {
    Word s = w;
    std::sort(s.begin(), s.end());
    add_term(out.terms, s, c);
  }
  return out;
}

Rational omega_pairing(const TensorPoly& u, const TensorPoly& v) {
  if (u.ctx != v.ctx) throw ValidationError("omega_pairing: context mismatch");
  if (u.degree != 1 || v.degree != 1) throw ValidationError("omega_pairing: vectors in H expected");
  const Ctx& ctx = u.ctx;
  if (!ctx.symplectic) throw ValidationError("omega_pairing: non-symplectic context");
  Rational s(0);
  for (const auto& [a, x] : u.terms)
    for (const auto& [b, y] : v.terms) {
      int o = ctx.omega_basis((unsigned char)a[0], (unsigned char)b[0]);
      if (o != 0) s += Rational(o) * x * y;
    }
  return s;
}

OmegaClass omega_class(const Ctx& ctx) {
  if (!ctx.symplectic) throw ValidationError("omega_class: non-symplectic context");
  OmegaClass w;
  w.ext = ExtPoly{ctx, 2, {}};
  w.lie = LiePoly{ctx, 2, {}};
  for (int i = 0; i < ctx.genus(); ++i) {
    Word ab;
    ab.push_back((char)(2 * i));
    ab.push_back((char)(2 * i + 1));
    add_term(w.ext.terms, ab, Rational(1));
    add_term(w.lie.terms, ab, Rational(1));  // [a_i, b_i] is the Lyndon word a_i b_i
  }
  return w;
}

std::vector<SparseMatrix> sp_generators(const Ctx& ctx) {
  if (!ctx.symplectic) throw ValidationError("sp_generators: non-symplectic context");
  int g = ctx.genus();
  auto a = [](int i) { return 2 * i; };
  auto b = [](int i) { return 2 * i + 1; };
  std::vector<SparseMatrix> gens;
  // A_ij: a_j -> a_i, b_i -> -b_j
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      std::vector<std::tuple<int, int, Rational>> t;
      t.emplace_back(a(i), a(j), Rational(1));
      t.emplace_back(b(j), b(i), Rational(-1));
      gens.push_back(SparseMatrix::from_triplets(ctx.n, ctx.n, t));
    }
  // B_ij (i <= j): b_j -> a_i, b_i -> a_j
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      std::vector<std::tuple<int, int, Rational>> t;
      t.emplace_back(a(i), b(j), Rational(1));
      if (i != j) t.emplace_back(a(j), b(i), Rational(1));
      gens.push_back(SparseMatrix::from_triplets(ctx.n, ctx.n, t));
    }
  // C_ij (i <= j): a_j -> b_i, a_i -> b_j
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      std::vector<std::tuple<int, int, Rational>> t;
      t.emplace_back(b(i), a(j), Rational(1));
      if (i != j) t.emplace_back(b(j), a(i), Rational(1));
      gens.push_back(SparseMatrix::from_triplets(ctx.n, ctx.n, t));
    }
  return gens;
}

std::vector<int> sp_cartan_indices(const Ctx& ctx) {
  int g = ctx.genus();
  std::vector<int> idx;
  for (int i = 0; i < g; ++i) idx.push_back(i * g + i);
  return idx;
}

long long space_dim(const Ctx& ctx, const SpaceDesc& d) {
  switch (d.kind) {
    case SpaceDesc::Kind::Tensor:
      return ipow(ctx.n, d.k);
    case SpaceDesc::Kind::Sym:
      return binom(ctx.n + d.k - 1, d.k);
    case SpaceDesc::Kind::Ext:
      return binom(ctx.n, d.k);
    case SpaceDesc::Kind::Der:
      return (long long)ctx.n * witt_dim(ctx.n, d.k + 1);
    case SpaceDesc::Kind::ExtOfExt:
      return binom(binom(ctx.n, d.k), d.outer);
  }
  throw ValidationError("space_dim: unsupported descriptor");
}

namespace {

// Leibniz action on a word basis; normalize = how a substituted word re-enters
// the basis (identity for tensors, sort for sym, sort-with-sign for ext).
SparseMatrix word_action(const Ctx&, const SparseMatrix& X, const std::vector<Word>& basis,
                         int mode) {
  auto index = index_of(basis);
  std::vector<std::tuple<int, int, Rational>> trips;
  std::map<std::pair<int, int>, Rational> acc;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Word& w = basis[col];
    for (std::size_t s = 0; s < w.size(); ++s) {
      int letter = (unsigned char)w[s];
      // column `letter` of X lists the images
      for (int r = 0; r < X.rows(); ++r) {
        Rational c = X.at(r, letter);
        if (c.is_zero()) continue;
        Word nw = w;
        nw[s] = (char)r;
        int sign = 1;
        if (mode == 1) {
          std::sort(nw.begin(), nw.end());
        } else if (mode == 2) {
          sign = ext_normalize(nw);
          if (sign == 0) continue;
        }
        auto it = index.find(nw);
        if (it == index.end()) throw ValidationError("word_action: image outside basis");
        auto key = std::make_pair(it->second, (int)col);
        auto a = acc.find(key);
        if (a == acc.end())
          acc.emplace(key, sign == 1 ? c : -c);
        else
          a->second += sign == 1 ? c : -c;
      }
    }
  }
  for (auto& [rc, v] : acc)
    if (!v.is_zero()) trips.emplace_back(rc.first, rc.second, v);
  return SparseMatrix::from_triplets((int)basis.size(), (int)basis.size(), trips);
}

}  // namespace

SparseMatrix induced_action(const Ctx& ctx, const SparseMatrix& X, const SpaceDesc& d) {
  if (X.rows() != ctx.n || X.cols() != ctx.n)
    throw ValidationError("induced_action: operator incompatible with context");
  switch (d.kind) {
    case SpaceDesc::Kind::Tensor:
      return word_action(ctx, X, tensor_words(ctx, d.k), 0);
    case SpaceDesc::Kind::Sym:
      return word_action(ctx, X, sym_words(ctx, d.k), 1);
    case SpaceDesc::Kind::Ext:
      return word_action(ctx, X, ext_words(ctx, d.k), 2);
    case SpaceDesc::Kind::Der:
      return der_action(ctx, X, d.k);
    case SpaceDesc::Kind::ExtOfExt:
      return ext_power_action(word_action(ctx, X, ext_words(ctx, d.k), 2), d.outer);
  }
  throw ValidationError("induced_action: unsupported descriptor");
}

std::vector<std::vector<int>> space_weights(const Ctx& ctx, const SpaceDesc& d) {
  std::vector<std::vector<int>> out;
  auto word_wts = [&](const std::vector<Word>& basis) {
    for (const auto& w : basis) out.push_back(word_weight(ctx, w));
  };
  switch (d.kind) {
    case SpaceDesc::Kind::Tensor:
      word_wts(tensor_words(ctx, d.k));
      return out;
    case SpaceDesc::Kind::Sym:
      word_wts(sym_words(ctx, d.k));
      return out;
    case SpaceDesc::Kind::Ext:
      word_wts(ext_words(ctx, d.k));
      return out;
    case SpaceDesc::Kind::Der: {
      long long dim = der_dim(ctx, d.k);
      for (long long c = 0; c < dim; ++c) out.push_back(der_coord_weight(ctx, d.k, (int)c));
      return out;
    }
    case SpaceDesc::Kind::ExtOfExt: {
      const auto& inner = ext_words(ctx, d.k);
      for (const auto& tup : ext_tuples((int)inner.size(), d.outer)) {
        std::vector<int> wt(ctx.genus(), 0);
        for (int i : tup) {
          auto w = word_weight(ctx, inner[i]);
          for (std::size_t q = 0; q < wt.size(); ++q) wt[q] += w[q];
        }
        out.push_back(std::move(wt));
      }
      return out;
    }
  }
  throw ValidationError("space_weights: unsupported descriptor");
}

std::vector<std::vector<int>> ext_tuples(int dim, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > dim) return out;
  std::vector<int> tup(p);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == p) {
      out.push_back(tup);
      return;
    }
    for (int i = start; i < dim; ++i) {
      tup[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

SparseMatrix ext_power_action(const SparseMatrix& A, int p) {
  if (A.rows() != A.cols()) throw ValidationError("ext_power_action: square matrix expected");
  int dim = A.rows();
  auto tuples = ext_tuples(dim, p);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < tuples.size(); ++i) index.emplace(tuples[i], (int)i);

  SparseMatrix At = A.transpose();  // row i of At = images of basis vector i
  std::map<std::pair<int, int>, Rational> acc;
  for (std::size_t col = 0; col < tuples.size(); ++col) {
    const auto& tup = tuples[col];
    for (int s = 0; s < p; ++s) {
      for (const auto& [img, c] : At.row(tup[s])) {
        std::vector<int> nt = tup;
        nt[s] = img;
        // sort with sign
        int sign = 1;
        for (int i = 1; i < p; ++i) {
          int v = nt[i], j = i;
          while (j > 0 && nt[j - 1] > v) {
            nt[j] = nt[j - 1];
            --j;
            sign = -sign;
          }
          nt[j] = v;
        }
        bool repeat = false;
        for (int i = 1; i < p; ++i)
          if (nt[i] == nt[i - 1]) repeat = true;
        if (repeat) continue;
        auto key = std::make_pair(index.at(nt), (int)col);
        Rational v = sign == 1 ? c : -c;
        auto it = acc.find(key);
        if (it == acc.end())
          acc.emplace(key, v);
        else
          it->second += v;
      }
    }
  }
  std::vector<std::tuple<int, int, Rational>> trips;
  for (auto& [rc, v] : acc)
    if (!v.is_zero()) trips.emplace_back(rc.first, rc.second, v);
  return SparseMatrix::from_triplets((int)tuples.size(), (int)tuples.size(), trips);
}

Subspace invariants_from_actions(const std::vector<SparseMatrix>& actions,
                                 const std::vector<std::vector<int>>* weights,
                                 const std::vector<int>& cartan_indices) {
  if (actions.empty()) throw ValidationError("invariants_from_actions: no actions");
  int dim = actions[0].cols();
  if (weights == nullptr) {
    std::vector<const SparseMatrix*> parts;
    for (const auto& a : actions) parts.push_back(&a);
    return kernel_basis(SparseMatrix::vstack(parts));
  }
  // restrict to weight-zero coordinates, then stack the non-Cartan generators
  std::vector<int> w0;
  std::vector<int> pos(dim, -1);
  for (int i = 0; i < dim; ++i) {
    bool zero = true;
    for (int x : (*weights)[i])
      if (x != 0) zero = false;
    if (zero) {
      pos[i] = (int)w0.size();
      w0.push_back(i);
    }
  }
  std::set<int> cartans(cartan_indices.begin(), cartan_indices.end());
  std::vector<SparseVec> rows;
  for (std::size_t a = 0; a < actions.size(); ++a) {
    if (cartans.count((int)a)) continue;
    // transpose-free restriction: rows of the stacked system are the rows of
    // each action matrix restricted to weight-zero columns
    const SparseMatrix& M = actions[a];
    for (int r = 0; r < M.rows(); ++r) {
      SparseVec row;
      for (const auto& [c, v] : M.row(r))
        if (pos[c] >= 0) row.emplace_back(pos[c], v);
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  SparseMatrix sys = SparseMatrix::from_rows((int)w0.size(), std::move(rows));
  Subspace ker = kernel_basis(sys);
  // re-embed into the full coordinate space
  Subspace out;
  out.ambient = dim;
  for (std::size_t i = 0; i < ker.basis.size(); ++i) {
    SparseVec v;
    for (const auto& [c, x] : ker.basis[i]) v.emplace_back(w0[c], x);
    out.basis.push_back(std::move(v));
    out.pivots.push_back(w0[ker.pivots[i]]);
  }
  return out;
}

Subspace invariant_subspace(const Ctx& ctx, const SpaceDesc& d) {
  if (!ctx.symplectic) throw ValidationError("invariant_subspace: non-symplectic context");
  std::vector<SparseMatrix> actions;
  for (const auto& X : sp_generators(ctx)) actions.push_back(induced_action(ctx, X, d));
  auto wts = space_weights(ctx, d);
  return invariants_from_actions(actions, &wts, sp_cartan_indices(ctx));
}

TensorPoly ext3_contract(const ExtPoly& t) {
  const Ctx& ctx = t.ctx;
  if (!ctx.symplectic) throw ValidationError("ext3_contract: non-symplectic context");
  if (t.degree != 3) throw ValidationError("ext3_contract: degree-3 input expected");
  TensorPoly out = tensor_zero(ctx, 1);
  for (const auto& [w, c] : t.terms) {
    int u = (unsigned char)w[0], v = (unsigned char)w[1], x = (unsigned char)w[2];
    int ouv = ctx.omega_basis(u, v), ovx = ctx.omega_basis(v, x), oxu = ctx.omega_basis(x, u);
    if (ouv != 0) add_term(out.terms, Word(1, (char)x), c * Rational(ouv));
    if (ovx != 0) add_term(out.terms, Word(1, (char)u), c * Rational(ovx));
    if (oxu != 0) add_term(out.terms, Word(1, (char)v), c * Rational(oxu));
  }
  return out;
}

USubspace u_subspace(const Ctx& ctx) {
  if (!ctx.symplectic || ctx.genus() < 2) throw ValidationError("u_subspace: needs g >= 2");
  const auto& basis = ext_words(ctx, 3);
  std::vector<std::tuple<int, int, Rational>> trips;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    ExtPoly e{ctx, 3, {}};
    add_term(e.terms, basis[col], Rational(1));
    TensorPoly c = ext3_contract(e);
    for (const auto& [w, v] : c.terms)
      trips.emplace_back((unsigned char)w[0], (int)col, v);
  }
  SparseMatrix m = SparseMatrix::from_triplets(ctx.n, (int)basis.size(), trips);
  return USubspace{ctx, kernel_basis(m)};
}

ExtPoly u_project(const ExtPoly& t) {
  const Ctx& ctx = t.ctx;
  if (!ctx.symplectic || ctx.genus() < 2) throw ValidationError("u_project: needs g >= 2");
  if (t.degree != 3) throw ValidationError("u_project: degree-3 input expected");
  TensorPoly c = ext3_contract(t);
  ExtPoly h1{ctx, 1, {}};
  for (const auto& [w, v] : c.terms) add_term(h1.terms, w, v);
  ExtPoly corr = ext_mul(omega_class(ctx).ext, h1);
  ExtPoly out = t;
  add_scaled(out.terms, corr.terms, Rational(-1, ctx.genus() - 1));
  return out;
}

Rational iota_pairing_sym(const SymPoly& u, const SymPoly& v) {
  if (u.ctx != v.ctx) throw ValidationError("iota: context mismatch");
  const Ctx& ctx = u.ctx;
  if (!ctx.symplectic) throw ValidationError("iota: non-symplectic context");
  if (u.degree != v.degree) throw ValidationError("iota: degree mismatch");
  if (u.degree % 2 == 0) throw ValidationError("iota: odd degree expected");
  int m = u.degree;
  Rational total(0);
  std::vector<int> perm(m);
  for (const auto& [a, x] : u.terms)
    for (const auto& [b, y] : v.terms) {
      for (int i = 0; i < m; ++i) perm[i] = i;
      Rational s(0);
      do {
        int prod = 1;
        for (int i = 0; i < m && prod != 0; ++i)
          prod *= ctx.omega_basis((unsigned char)a[i], (unsigned char)b[perm[i]]);
        if (prod != 0) s += Rational(prod);
      } while (std::next_permutation(perm.begin(), perm.end()));
      total += s * x * y;
    }
  return total;
}

Rational iota_pairing_u(const ExtPoly& u, const ExtPoly& v) {
  if (u.ctx != v.ctx) throw ValidationError("iota1: context mismatch");
  const Ctx& ctx = u.ctx;
  if (u.degree != 3 || v.degree != 3) throw ValidationError("iota1: degree-3 arguments expected");
  const auto& basis = ext_words(ctx, 3);
  auto index = index_of(basis);
  USubspace U = u_subspace(ctx);
  if (!U.sub.contains(poly_to_vec(u.terms, index)) || !U.sub.contains(poly_to_vec(v.terms, index)))
    throw ValidationError("iota1: argument not in U");
  Rational total(0);
  for (const auto& [a, x] : u.terms)
    for (const auto& [b, y] : v.terms) {
      // det[omega(a_i, b_j)]
      Rational det(0);
      int p[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {1, 0, 2}, {0, 2, 1}};
      for (int t = 0; t < 6; ++t) {
        int prod = ctx.omega_basis((unsigned char)a[0], (unsigned char)b[p[t][0]]) *
                   ctx.omega_basis((unsigned char)a[1], (unsigned char)b[p[t][1]]) *
                   ctx.omega_basis((unsigned char)a[2], (unsigned char)b[p[t][2]]);
        det += Rational(t < 3 ? prod : -prod);
      }
      total += det * x * y;
    }
  return total;
}

}  // namespace symlie
