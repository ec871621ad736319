#include "symlie/derivation.hpp"

#include <map>
#include <mutex>

namespace symlie {

void Derivation::validate() const {
  ctx.validate();
  if (degree < 1) throw ValidationError("Derivation: degree must be >= 1");
  if ((int)images.size() != ctx.n) throw ValidationError("Derivation: wrong image count");
  for (const auto& u : images) {
    if (u.ctx != ctx) throw ValidationError("Derivation: image context mismatch");
    if (u.degree != degree + 1) throw ValidationError("Derivation: image degree mismatch");
  }
}

Derivation der_zero(const Ctx& ctx, int k) {
  Derivation d{ctx, k, {}};
  for (int i = 0; i < ctx.n; ++i) d.images.push_back(lie_zero(ctx, k + 1));
  return d;
}

Derivation der_basis_elem(const Ctx& ctx, int k, int gen, const Word& lyndon) {
  Derivation d = der_zero(ctx, k);
  if (gen < 0 || gen >= ctx.n) throw ValidationError("der_basis_elem: bad generator");
  d.images[gen] = lie_term(ctx, lyndon);
  return d;
}

long long der_dim(const Ctx& ctx, int k) { return (long long)ctx.n * witt_dim(ctx.n, k + 1); }

SparseVec der_to_vec(const Derivation& d) {
  const auto& words = lyndon_words(d.ctx.n, d.degree + 1);
  auto index = index_of(words);
  long long w = (long long)words.size();
  SparseVec v;
  for (int i = 0; i < d.ctx.n; ++i)
    for (const auto& [word, c] : d.images[i].terms)
      v.emplace_back((int)(i * w + index.at(word)), c);
  return v;  // construction order is already sorted: generator-major, word lex
}

Derivation der_from_vec(const Ctx& ctx, int k, const SparseVec& v) {
  const auto& words = lyndon_words(ctx.n, k + 1);
  long long w = (long long)words.size();
  Derivation d = der_zero(ctx, k);
  for (const auto& [idx, c] : v) {
    int gen = (int)(idx / w);
    if (gen >= ctx.n) throw ValidationError("der_from_vec: index out of range");
    add_term(d.images[gen].terms, words[idx % w], c);
  }
  return d;
}

std::vector<int> der_coord_weight(const Ctx& ctx, int k, int coord) {
  const auto& words = lyndon_words(ctx.n, k + 1);
  long long w = (long long)words.size();
  int gen = (int)(coord / w);
  auto wt = word_weight(ctx, words[coord % w]);
  auto gw = ctx.letter_weight(gen);
  for (std::size_t i = 0; i < wt.size(); ++i) wt[i] -= gw[i];
  return wt;
}

TensorPoly slot_substitute(const TensorPoly& t, const std::vector<TensorPoly>& images) {
  int d = -1;
  for (const auto& im : images)
    if (d == -1)
      d = im.degree;
    else if (im.degree != d)
      throw ValidationError("slot_substitute: mixed image degrees");
  TensorPoly out = tensor_zero(t.ctx, t.degree + (d < 0 ? 0 : d - 1));
  for (const auto& [w, c] : t.terms) {
    for (std::size_t s = 0; s < w.size(); ++s) {
      const TensorPoly& im = images[(unsigned char)w[s]];
      if (im.terms.empty()) continue;
      Word prefix = w.substr(0, s);
      Word suffix = w.substr(s + 1);
      for (const auto& [iw, ic] : im.terms) add_term(out.terms, prefix + iw + suffix, c * ic);
    }
  }
  return out;
}

TensorPoly apply_der_tensor(const Derivation& d, const TensorPoly& t) {
  std::vector<TensorPoly> images;
  images.reserve(d.ctx.n);
  for (int i = 0; i < d.ctx.n; ++i) images.push_back(embed_to_tensor(d.images[i]));
  return slot_substitute(t, images);
}

LiePoly apply_der(const Derivation& d, const LiePoly& u) {
  if (d.ctx != u.ctx) throw ValidationError("apply_der: context mismatch");
  return lie_from_tensor(apply_der_tensor(d, embed_to_tensor(u)));
}

Derivation der_add(const Derivation& a, const Derivation& b) {
  if (a.ctx != b.ctx || a.degree != b.degree) throw ValidationError("der_add: mismatch");
  Derivation out = a;
  for (int i = 0; i < a.ctx.n; ++i) out.images[i] = lie_add(out.images[i], b.images[i]);
  return out;
}

Derivation der_scale(const Derivation& a, const Rational& c) {
  Derivation out = a;
  for (auto& u : out.images) u = lie_scale(u, c);
  return out;
}

Derivation bracket_der(const Derivation& a, const Derivation& b) {
  if (a.ctx != b.ctx) throw ValidationError("bracket_der: context mismatch");
  Derivation out = der_zero(a.ctx, a.degree + b.degree);
  for (int i = 0; i < a.ctx.n; ++i) {
    TensorPoly t = apply_der_tensor(a, embed_to_tensor(b.images[i]));
    add_scaled(t.terms, apply_der_tensor(b, embed_to_tensor(a.images[i])).terms, Rational(-1));
    out.images[i] = lie_from_tensor(t);
  }
  return out;
}

LiePoly omega_action(const Derivation& d) {
  const Ctx& ctx = d.ctx;
  if (!ctx.symplectic) throw ValidationError("omega_action: non-symplectic context");
  TensorPoly acc = tensor_zero(ctx, d.degree + 2);
  for (int i = 0; i < ctx.genus(); ++i) {
    TensorPoly da = embed_to_tensor(d.images[2 * i]);
    TensorPoly db = embed_to_tensor(d.images[2 * i + 1]);
    TensorPoly a = tensor_word(ctx, Word(1, (char)(2 * i)));
    TensorPoly b = tensor_word(ctx, Word(1, (char)(2 * i + 1)));
    add_scaled(acc.terms, tensor_commutator(da, b).terms, Rational(1));
    add_scaled(acc.terms, tensor_commutator(a, db).terms, Rational(1));
  }
  return lie_from_tensor(acc);
}

SparseMatrix omega_map_matrix(int g, int k) {
  Ctx ctx = symplectic_context(g);
  const auto& cols_words = lyndon_words(ctx.n, k + 1);
  const auto& rows_words = lyndon_words(ctx.n, k + 2);
  auto row_index = index_of(rows_words);
  long long w = (long long)cols_words.size();
  std::vector<std::tuple<int, int, Rational>> trips;
  for (int i = 0; i < ctx.n; ++i) {
    int partner = ctx.omega_partner(i);
    for (long long j = 0; j < w; ++j) {
      // E_{i,word}(omega_0) = [word, b_p] if i = a_p, [a_p, word] if i = b_p
      const ITerms& emb = embed_lyndon_int(ctx.n, cols_words[j]);
      std::map<Word, long long> acc;
      for (const auto& [word, c] : emb) {
        if (i % 2 == 0) {
          acc[word + Word(1, (char)partner)] += c;
          acc[Word(1, (char)partner) + word] -= c;
        } else {
          acc[Word(1, (char)partner) + word] += c;
          acc[word + Word(1, (char)partner)] -= c;
        }
      }
      ITerms t;
      for (auto& [word, c] : acc)
        if (c != 0) t.emplace_back(word, c);
      for (const auto& [word, c] : lie_from_tensor_int(ctx.n, std::move(t)))
        trips.emplace_back(row_index.at(word), (int)(i * w + j), Rational((long)c));
    }
  }
  return SparseMatrix::from_triplets((int)rows_words.size(), (int)(ctx.n * w), trips);
}

namespace {

std::map<std::pair<int, int>, HSlice>& h_cache() {
  static std::map<std::pair<int, int>, HSlice> cache;
  return cache;
}
std::mutex& h_mtx() {
  static std::mutex mtx;
  return mtx;
}

HSlice make_h_slice(int g, int k, Subspace sub) {
  Ctx ctx = symplectic_context(g);
  if (sub.ambient != (int)der_dim(ctx, k)) throw ValidationError("h slice: ambient mismatch");
  HSlice h{g, k, std::move(sub), {}};
  for (const auto& v : h.sub.basis) {
    if (v.empty()) throw ValidationError("h_basis: empty kernel vector");
    h.weights.push_back(der_coord_weight(ctx, k, v[0].first));
  }
  return h;
}

}  // namespace

const HSlice& h_basis(int g, int k) {
  std::lock_guard<std::mutex> lock(h_mtx());
  auto key = std::make_pair(g, k);
  auto it = h_cache().find(key);
  if (it != h_cache().end()) return it->second;
  if (g < 1 || k < 1) throw ValidationError("h_basis: need g >= 1, k >= 1");
  Subspace ker = kernel_basis(omega_map_matrix(g, k));
  return h_cache().emplace(key, make_h_slice(g, k, std::move(ker))).first->second;
}

bool h_basis_install(int g, int k, Subspace sub) {
  std::lock_guard<std::mutex> lock(h_mtx());
  auto key = std::make_pair(g, k);
  if (h_cache().count(key)) return false;
  h_cache().emplace(key, make_h_slice(g, k, std::move(sub)));
  return true;
}

Derivation h_vector(int g, int k, int i) {
  const HSlice& h = h_basis(g, k);
  return der_from_vec(symplectic_context(g), k, h.sub.basis.at(i));
}

SparseMatrix lie_action_matrix(const Ctx& ctx, const SparseMatrix& X, int degree) {
  const auto& words = lyndon_words(ctx.n, degree);
  auto index = index_of(words);
  std::vector<TensorPoly> images;
  for (int j = 0; j < ctx.n; ++j) {
    TensorPoly im = tensor_zero(ctx, 1);
    for (int r = 0; r < ctx.n; ++r) {
      Rational c = X.at(r, j);
      if (!c.is_zero()) add_term(im.terms, Word(1, (char)r), c);
    }
    images.push_back(std::move(im));
  }
  std::vector<std::tuple<int, int, Rational>> trips;
  for (std::size_t col = 0; col < words.size(); ++col) {
    LiePoly val = lie_from_tensor(slot_substitute(embed_lyndon(ctx, words[col]), images));
    for (const auto& [w, c] : val.terms) trips.emplace_back(index.at(w), (int)col, c);
  }
  return SparseMatrix::from_triplets((int)words.size(), (int)words.size(), trips);
}

SparseMatrix der_action(const Ctx& ctx, const SparseMatrix& X, int k) {
  // (X . D)(x) = X(D(x)) - D(X x)
  const auto& words = lyndon_words(ctx.n, k + 1);
  long long w = (long long)words.size();
  SparseMatrix Lt = lie_action_matrix(ctx, X, k + 1).transpose();  // row j = images of word j
  std::map<std::pair<int, int>, Rational> acc;
  auto put = [&](int r, int c, const Rational& v) {
    auto key = std::make_pair(r, c);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, v);
    else
      it->second += v;
  };
  for (int i = 0; i < ctx.n; ++i) {
    for (long long j = 0; j < w; ++j) {
      int col = (int)(i * w + j);
      // X(D(x_i)) part: column j of the Lie action, in generator block i
      for (const auto& [r, c] : Lt.row((int)j)) put((int)(i * w + r), col, c);
      // -D(X x_t) contributes -X[i][t] E_{t, word j} for every generator t
      for (int t = 0; t < ctx.n; ++t) {
        Rational c = X.at(i, t);
        if (!c.is_zero()) put((int)(t * w + j), col, -c);
      }
    }
  }
  std::vector<std::tuple<int, int, Rational>> out;
  for (auto& [rc, v] : acc)
    if (!v.is_zero()) out.emplace_back(rc.first, rc.second, v);
  return SparseMatrix::from_triplets((int)(ctx.n * w), (int)(ctx.n * w), out);
}

namespace {

// Column-iteration of L would be O(rows) per entry through at(); build the
// transpose once instead when the degree is large.
SparseMatrix column_major(const SparseMatrix& m) { return m.transpose(); }

}  // namespace

const Tau1& tau1_iso(int g) {
  static std::map<int, Tau1> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;
  if (g < 2) throw ValidationError("tau1_iso: needs g >= 2");

  Ctx ctx = symplectic_context(g);
  const auto& wedges = ext_words(ctx, 3);
  const auto& l2 = lyndon_words(ctx.n, 2);
  auto l2_index = index_of(l2);
  long long w = (long long)l2.size();
  std::vector<std::tuple<int, int, Rational>> trips;
  for (std::size_t col = 0; col < wedges.size(); ++col) {
    int u = (unsigned char)wedges[col][0];
    int v = (unsigned char)wedges[col][1];
    int x = (unsigned char)wedges[col][2];
    // D(y) = w(u,y)[v,x] + w(v,y)[x,u] + w(x,y)[u,v]
    auto put = [&](int first, int second, int y_partner, int sign_from_omega) {
      // contribution to generator y = partner index with coefficient
      Word word;
      Rational c(sign_from_omega);
      if (first < second) {
        word.push_back((char)first);
        word.push_back((char)second);
      } else if (second < first) {
        word.push_back((char)second);
        word.push_back((char)first);
        c = -c;
      } else {
        return;
      }
      trips.emplace_back((int)(y_partner * w + l2_index.at(word)), (int)col, c);
    };
    // w(u, y) is nonzero only for y = partner(u)
    put(v, x, ctx.omega_partner(u), ctx.omega_basis(u, ctx.omega_partner(u)));
    put(x, u, ctx.omega_partner(v), ctx.omega_basis(v, ctx.omega_partner(v)));
    put(u, v, ctx.omega_partner(x), ctx.omega_basis(x, ctx.omega_partner(x)));
  }
  Tau1 t;
  t.ctx = ctx;
  t.to_der = SparseMatrix::from_triplets((int)der_dim(ctx, 1), (int)wedges.size(), trips);
  return cache.emplace(g, std::move(t)).first->second;
}

Derivation Tau1::forward(const ExtPoly& xi) const {
  const auto& wedges = ext_words(ctx, 3);
  auto index = index_of(wedges);
  SparseVec coords = poly_to_vec(xi.terms, index);
  SparseMatrix cm = column_major(to_der);
  SparseVec acc;
  for (const auto& [c, x] : coords) acc = sv_axpy(acc, x, cm.row(c));
  return der_from_vec(ctx, 1, acc);
}

ExtPoly Tau1::inverse(const Derivation& d) const {
  static std::map<int, Subspace> solver_cache;
  static std::mutex mtx;
  const auto& wedges = ext_words(ctx, 3);
  int m = (int)der_dim(ctx, 1);
  Subspace* solver;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = solver_cache.find(ctx.genus());
    if (it == solver_cache.end()) {
      // rows (column_i | e_i); reduction of (v | 0) leaves (0 | -x) iff v = Ax
      SparseMatrix cm = column_major(to_der);
      std::vector<SparseVec> rows;
      for (int i = 0; i < (int)wedges.size(); ++i) {
        SparseVec r = cm.row(i);
        r.emplace_back(m + i, Rational(1));
        rows.push_back(std::move(r));
      }
      it = solver_cache.emplace(ctx.genus(), row_space(SparseMatrix::from_rows(
                                                 m + (int)wedges.size(), std::move(rows))))
               .first;
    }
    solver = &it->second;
  }
  SparseVec rem = solver->reduce(der_to_vec(d));
  ExtPoly out{ctx, 3, {}};
  for (const auto& [i, c] : rem) {
    if (i < m) throw ValidationError("tau1: derivation not in the image of Lambda^3 H");
    add_term(out.terms, wedges[i - m], -c);
  }
  return out;
}

ExtPoly tau1_bar(int g, const Derivation& d) {
  if (d.degree != 1) throw ValidationError("tau1_bar: degree-1 derivation expected");
  return u_project(tau1_iso(g).inverse(d));
}

Subspace commutator_span(const Ctx& ctx, int d) {
  if (d < 2) throw ValidationError("commutator_span: d >= 2 required");
  IncrementalRref span((int)der_dim(ctx, d));
  for (int a = 1; a <= d / 2; ++a) {
    int b = d - a;
    const auto& wa = lyndon_words(ctx.n, a + 1);
    const auto& wb = lyndon_words(ctx.n, b + 1);
    for (int i = 0; i < ctx.n; ++i)
      for (const auto& u : wa)
        for (int j = 0; j < ctx.n; ++j)
          for (const auto& v : wb) {
            if (a == b) {
              // skip duplicate unordered pairs and self-brackets
              if (i > j || (i == j && u >= v)) continue;
            }
            Derivation da = der_basis_elem(ctx, a, i, u);
            Derivation db = der_basis_elem(ctx, b, j, v);
            span.insert(der_to_vec(bracket_der(da, db)));
          }
  }
  return span.take();
}

}  // namespace symlie
