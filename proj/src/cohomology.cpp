#include "symlie/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace symlie {

namespace {

std::mutex g_mtx;  // guards all module-level caches

std::vector<std::vector<int>> partitions(int n, int d) {
  // non-decreasing positive tuples of length d summing to n
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int min_part) {
    if ((int)cur.size() == d) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    int remaining_slots = d - (int)cur.size();
    for (int p = min_part; p * remaining_slots <= rest; ++p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, 1);
  std::sort(out.begin(), out.end());
  return out;
}

mpz_class binom_z(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  return b;
}

}  // namespace

long long slice_dim_formula(int g, int d, int n) {
  if (d == 0) return n == 0 ? 1 : 0;
  mpz_class total = 0;
  for (const auto& part : partitions(n, d)) {
    mpz_class prod = 1;
    int i = 0;
    while (i < d) {
      int j = i;
      while (j < d && part[j] == part[i]) ++j;
      int mult = j - i;
      prod *= binom_z(h_basis(g, part[i]).dim(), mult);
      i = j;
    }
    total += prod;
  }
  if (!total.fits_slong_p()) throw CapExceeded("slice dimension overflow");
  return total.get_si();
}

const ComplexSlice& build_slice(int g, int d, int n, long long cap) {
  static std::map<std::tuple<int, int, int>, ComplexSlice> cache;
  if (g < 1 || d < 1 || n < 1) throw ValidationError("build_slice: g, d, n must be >= 1");
  long long dim = slice_dim_formula(g, d, n);
  if (dim > cap) throw CapExceeded("slice (" + std::to_string(d) + "," + std::to_string(n) +
                                   ") dimension " + std::to_string(dim) + " exceeds cap");
  std::lock_guard<std::mutex> lock(g_mtx);
  auto key = std::make_tuple(g, d, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  ComplexSlice s;
  s.g = g;
  s.d = d;
  s.n = n;
  for (const auto& part : partitions(n, d)) {
    // groups of equal degrees
    std::vector<std::pair<int, int>> groups;  // (degree, multiplicity)
    int i = 0;
    while (i < d) {
      int j = i;
      while (j < d && part[j] == part[i]) ++j;
      groups.emplace_back(part[i], j - i);
      i = j;
    }
    // per-group combinations, in lexicographic order
    std::vector<std::vector<std::vector<int>>> combos;
    bool empty = false;
    for (auto [k, m] : groups) {
      auto tuples = ext_tuples(h_basis(g, k).dim(), m);
      if (tuples.empty()) empty = true;
      combos.push_back(std::move(tuples));
    }
    if (empty) continue;
    // odometer over groups, leftmost slowest
    std::vector<std::size_t> pos(groups.size(), 0);
    while (true) {
      WedgeTuple w;
      for (std::size_t gidx = 0; gidx < groups.size(); ++gidx)
        for (int idx : combos[gidx][pos[gidx]]) w.emplace_back(groups[gidx].first, idx);
      s.basis.push_back(w);
      // advance
      int gi = (int)groups.size() - 1;
      while (gi >= 0) {
        if (++pos[gi] < combos[gi].size()) break;
        pos[gi] = 0;
        --gi;
      }
      if (gi < 0) break;
    }
  }
  for (std::size_t b = 0; b < s.basis.size(); ++b) s.index.emplace(s.basis[b], (int)b);
  for (const auto& w : s.basis) {
    std::vector<int> wt(g, 0);
    for (auto [k, idx] : w) {
      const auto& hw = h_basis(g, k).weights[idx];
      for (int q = 0; q < g; ++q) wt[q] += hw[q];
    }
    s.weights.push_back(std::move(wt));
  }
  return cache.emplace(key, std::move(s)).first->second;
}

namespace {

// integer slot substitution: replaces every `gen`-slot of src by rep
ITerms islot_substitute(const ITerms& src, int gen, const ITerms& rep) {
  std::map<Word, long long> acc;
  for (const auto& [u, c2] : src)
    for (std::size_t s = 0; s < u.size(); ++s) {
      if ((unsigned char)u[s] != (unsigned char)gen) continue;
      Word prefix = u.substr(0, s);
      Word suffix = u.substr(s + 1);
      for (const auto& [v, c1] : rep) acc[prefix + v + suffix] += c2 * c1;
    }
  ITerms out;
  out.reserve(acc.size());
  for (auto& [word, c] : acc)
    if (c != 0) out.emplace_back(word, c);
  return out;
}

using IVec = std::vector<std::pair<int, long long>>;

// [E_{gen1,w1}, E_{gen2,w2}] in Der coordinates (integer fast path), cached
// per normalized pair across all callers.
const IVec& e_pair_bracket(const Ctx& ctx, int gen1, const Word& w1, int gen2, const Word& w2,
                           int* sign_out) {
  static std::map<std::tuple<int, int, Word, int, Word>, IVec> cache;
  bool swap = std::make_pair(w1.size(), std::make_pair(gen1, w1)) >
              std::make_pair(w2.size(), std::make_pair(gen2, w2));
  const Word& u1 = swap ? w2 : w1;
  const Word& u2 = swap ? w1 : w2;
  int g1 = swap ? gen2 : gen1, g2 = swap ? gen1 : gen2;
  *sign_out = swap ? -1 : 1;
  auto key = std::make_tuple(ctx.n, g1, u1, g2, u2);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const auto& words = lyndon_words(ctx.n, (int)(u1.size() + u2.size()) - 1);
  auto index = index_of(words);
  long long w = (long long)words.size();
  // images: at x_{g2}: apply(E1, u2); at x_{g1}: -apply(E2, u1)
  std::map<int, long long> acc;
  for (const auto& [word, c] :
       lie_from_tensor_int(ctx.n, islot_substitute(embed_lyndon_int(ctx.n, u2), g1,
                                                   embed_lyndon_int(ctx.n, u1))))
    acc[(int)(g2 * w + index.at(word))] += c;
  for (const auto& [word, c] :
       lie_from_tensor_int(ctx.n, islot_substitute(embed_lyndon_int(ctx.n, u1), g2,
                                                   embed_lyndon_int(ctx.n, u2))))
    acc[(int)(g1 * w + index.at(word))] -= c;
  IVec out;
  for (auto& [i, c] : acc)
    if (c != 0) out.emplace_back(i, c);
  return cache.emplace(key, std::move(out)).first->second;
}

// ad of the i1-th h(g,k1) basis vector, transposed: row j lists the
// Der(k1+k2) coordinates of [v, E_j] for the j-th Der(k2) basis element.
const SparseMatrix& ad_h_matrix_t(int g, int k1, int i1, int k2) {
  static std::map<std::tuple<int, int, int, int>, SparseMatrix> cache;
  auto key = std::make_tuple(g, k1, i1, k2);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  Ctx ctx = symplectic_context(g);
  const SparseVec& v = h_basis(g, k1).sub.basis.at(i1);
  const auto& w1s = lyndon_words(ctx.n, k1 + 1);
  const auto& w2s = lyndon_words(ctx.n, k2 + 1);
  long long w1count = (long long)w1s.size();
  long long w2count = (long long)w2s.size();
  SparseMatrix m((int)(ctx.n * w2count), (int)der_dim(ctx, k1 + k2));
  for (int gen2 = 0; gen2 < ctx.n; ++gen2)
    for (long long j = 0; j < w2count; ++j) {
      SparseVec acc;
      for (const auto& [coord, c] : v) {
        int gen1 = (int)(coord / w1count);
        const Word& word1 = w1s[coord % w1count];
        int sign = 1;
        const IVec& pb = e_pair_bracket(ctx, gen1, word1, gen2, w2s[j], &sign);
        SparseVec pbv;
        pbv.reserve(pb.size());
        for (const auto& [idx, z] : pb) pbv.emplace_back(idx, Rational((long)z));
        acc = sv_axpy(acc, sign == 1 ? c : -c, pbv);
      }
      m.set_row((int)(gen2 * w2count + j), std::move(acc));
    }
  return cache.emplace(key, std::move(m)).first->second;
}

SparseVec to_h_coords(int g, int k, const SparseVec& der_vec) {
  const HSlice& h = h_basis(g, k);
  auto coords = h.sub.coordinates(der_vec);
  if (!coords) throw ValidationError("bracket left h_{g,1}; convention bug");
  SparseVec out;
  for (std::size_t i = 0; i < coords->size(); ++i)
    if (!(*coords)[i].is_zero()) out.emplace_back((int)i, (*coords)[i]);
  return out;
}

}  // namespace

const SparseVec& bracket_h_coords(int g, int k1, int i1, int k2, int i2) {
  static std::map<std::tuple<int, int, int, int, int>, SparseVec> cache;
  std::lock_guard<std::mutex> lock(g_mtx);
  auto key = std::make_tuple(g, k1, i1, k2, i2);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  bool swap = (k1 > k2 || (k1 == k2 && i1 > i2));
  int a1 = swap ? k2 : k1, j1 = swap ? i2 : i1;
  int a2 = swap ? k1 : k2, j2 = swap ? i1 : i2;
  SparseVec result;
  if (!(k1 == k2 && i1 == i2)) {
    const SparseMatrix& adt = ad_h_matrix_t(g, a1, j1, a2);
    SparseVec der_vec;
    const SparseVec& v2 = h_basis(g, a2).sub.basis.at(j2);
    for (const auto& [c, x] : v2) der_vec = sv_axpy(der_vec, x, adt.row(c));
    result = to_h_coords(g, a1 + a2, der_vec);
    if (swap) result = sv_scale(result, Rational(-1));
  }
  return cache.emplace(key, std::move(result)).first->second;
}

const SparseMatrix& h_action(int g, int k, int gen_idx) {
  static std::map<std::tuple<int, int, int>, SparseMatrix> cache;
  std::lock_guard<std::mutex> lock(g_mtx);
  auto key = std::make_tuple(g, k, gen_idx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  Ctx ctx = symplectic_context(g);
  auto gens = sp_generators(ctx);
  SparseMatrix da = der_action(ctx, gens.at(gen_idx), k);
  SparseMatrix dat = da.transpose();
  const HSlice& h = h_basis(g, k);
  std::vector<std::tuple<int, int, Rational>> trips;
  for (int i = 0; i < h.dim(); ++i) {
    SparseVec img;
    for (const auto& [c, x] : h.sub.basis[i]) img = sv_axpy(img, x, dat.row(c));
    for (const auto& [r, x] : to_h_coords(g, k, img)) trips.emplace_back(r, i, x);
  }
  SparseMatrix m = SparseMatrix::from_triplets(h.dim(), h.dim(), trips);
  return cache.emplace(key, std::move(m)).first->second;
}

namespace {

// inserts (K, t) into the remaining tuple, returning sorted tuple and sign,
// or sign 0 on a repeat.
int wedge_insert(WedgeTuple& rest, std::pair<int, int> elem) {
  int pos = 0;
  for (const auto& e : rest) {
    if (elem == e) return 0;
    if (e < elem) ++pos;
  }
  rest.insert(rest.begin() + pos, elem);
  return pos % 2 == 0 ? 1 : -1;
}

}  // namespace

const SparseMatrix& differential(int g, int d, int n, long long cap) {
  static std::map<std::tuple<int, int, int>, SparseMatrix> cache;
  auto key = std::make_tuple(g, d, n);
  {
    std::lock_guard<std::mutex> lock(g_mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const ComplexSlice& src = build_slice(g, d, n, cap);
  const ComplexSlice& dst = build_slice(g, d + 1, n, cap);
  std::map<std::pair<int, int>, Rational> acc;
  for (int row = 0; row < dst.dim(); ++row) {
    const WedgeTuple& w = dst.basis[row];
    for (int p = 0; p < d + 1; ++p)
      for (int q = p + 1; q < d + 1; ++q) {
        const auto& [kp, ip] = w[p];
        const auto& [kq, iq] = w[q];
        const SparseVec& br = bracket_h_coords(g, kp, ip, kq, iq);
        if (br.empty()) continue;
        WedgeTuple rest;
        rest.reserve(d - 1);
        for (int r = 0; r < d + 1; ++r)
          if (r != p && r != q) rest.push_back(w[r]);
        int base_sign = ((p + q) % 2 == 0) ? 1 : -1;
        for (const auto& [t, c] : br) {
          WedgeTuple u = rest;
          int s = wedge_insert(u, {kp + kq, t});
          if (s == 0) continue;
          auto it = src.index.find(u);
          if (it == src.index.end()) throw ValidationError("differential: wedge not in slice");
          Rational val = c * Rational(base_sign * s);
          auto a = acc.find({row, it->second});
          if (a == acc.end())
            acc.emplace(std::make_pair(row, it->second), val);
          else
            a->second += val;
        }
      }
  }
  std::vector<std::tuple<int, int, Rational>> trips;
  for (auto& [rc, v] : acc)
    if (!v.is_zero()) trips.emplace_back(rc.first, rc.second, v);
  SparseMatrix m = SparseMatrix::from_triplets(dst.dim(), src.dim(), trips);
  std::lock_guard<std::mutex> lock(g_mtx);
  return cache.emplace(key, std::move(m)).first->second;
}

const SparseMatrix& slice_action(int g, int d, int n, int gen_idx, long long cap) {
  static std::map<std::tuple<int, int, int, int>, SparseMatrix> cache;
  auto key = std::make_tuple(g, d, n, gen_idx);
  {
    std::lock_guard<std::mutex> lock(g_mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const ComplexSlice& s = build_slice(g, d, n, cap);
  // per-degree action matrices, transposed for row access
  std::map<int, SparseMatrix> acts;
  for (const auto& w : s.basis)
    for (auto [k, idx] : w)
      if (!acts.count(k)) acts.emplace(k, h_action(g, k, gen_idx).transpose());
  std::map<std::pair<int, int>, Rational> acc;
  for (int col = 0; col < s.dim(); ++col) {
    const WedgeTuple& w = s.basis[col];
    for (int slot = 0; slot < d; ++slot) {
      auto [k, idx] = w[slot];
      WedgeTuple rest;
      rest.reserve(d - 1);
      for (int r = 0; r < d; ++r)
        if (r != slot) rest.push_back(w[r]);
      for (const auto& [t, c] : acts.at(k).row(idx)) {
        WedgeTuple u = rest;
        int sgn = wedge_insert(u, {k, t});
        if (sgn == 0) continue;
        if (slot % 2 != 0) sgn = -sgn;  // the image enters at the replaced slot
        auto it = s.index.find(u);
        if (it == s.index.end()) throw ValidationError("slice_action: wedge not in slice");
        Rational val = c * Rational(sgn);
        auto a = acc.find({it->second, col});
        if (a == acc.end())
          acc.emplace(std::make_pair(it->second, col), val);
        else
          a->second += val;
      }
    }
  }
  std::vector<std::tuple<int, int, Rational>> trips;
  for (auto& [rc, v] : acc)
    if (!v.is_zero()) trips.emplace_back(rc.first, rc.second, v);
  SparseMatrix m = SparseMatrix::from_triplets(s.dim(), s.dim(), trips);
  std::lock_guard<std::mutex> lock(g_mtx);
  return cache.emplace(key, std::move(m)).first->second;
}

const Subspace& invariant_cochains(int g, int d, int n, long long cap) {
  static std::map<std::tuple<int, int, int>, Subspace> cache;
  auto key = std::make_tuple(g, d, n);
  {
    std::lock_guard<std::mutex> lock(g_mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const ComplexSlice& s = build_slice(g, d, n, cap);
  Ctx ctx = symplectic_context(g);
  int ngen = (int)sp_generators(ctx).size();
  std::vector<SparseMatrix> actions;
  actions.reserve(ngen);
  for (int a = 0; a < ngen; ++a) actions.push_back(slice_action(g, d, n, a, cap).transpose());
  Subspace inv = s.dim() == 0
                     ? Subspace{0, {}, {}}
                     : invariants_from_actions(actions, &s.weights, sp_cartan_indices(ctx));
  std::lock_guard<std::mutex> lock(g_mtx);
  return cache.emplace(key, std::move(inv)).first->second;
}

Cochain coboundary(const Cochain& c, long long cap) {
  const SparseMatrix& D = differential(c.g, c.d, c.n, cap);
  return Cochain{c.g, c.d + 1, c.n, D.apply(c.coords)};
}

bool is_cocycle(const Cochain& c, long long cap) { return coboundary(c, cap).is_zero(); }

bool is_sp_invariant(const Cochain& c, long long cap) {
  Ctx ctx = symplectic_context(c.g);
  int ngen = (int)sp_generators(ctx).size();
  for (int a = 0; a < ngen; ++a) {
    // f invariant iff f(X w) = 0 for all basis wedges w, i.e. f^T . act = 0
    const SparseMatrix& act = slice_action(c.g, c.d, c.n, a, cap);
    SparseVec composed;
    for (const auto& [i, x] : c.coords) composed = sv_axpy(composed, x, act.row(i));
    if (!composed.empty()) return false;
  }
  return true;
}

InvariantCohomology invariant_cohomology(int g, int d, int n, long long cap) {
  InvariantCohomology out;
  out.g = g;
  out.d = d;
  out.n = n;
  out.dim_slice = slice_dim_formula(g, d, n);
  if (out.dim_slice == 0) return out;
  const ComplexSlice& s = build_slice(g, d, n, cap);
  const Subspace& inv = invariant_cochains(g, d, n, cap);
  out.dim_invariant = inv.dim();
  if (inv.dim() == 0) return out;

  // invariant cocycles: kernel of delta restricted to the invariant basis
  long long next_dim = slice_dim_formula(g, d + 1, n);
  std::vector<SparseVec> cocycles;
  if (next_dim == 0) {
    cocycles = inv.basis;
  } else {
    const SparseMatrix& D = differential(g, d, n, cap);
    std::vector<std::tuple<int, int, Rational>> trips;
    for (int j = 0; j < inv.dim(); ++j) {
      SparseVec img = D.apply(inv.basis[j]);
      for (const auto& [r, x] : img) trips.emplace_back(r, j, x);
    }
    SparseMatrix P = SparseMatrix::from_triplets((int)next_dim, inv.dim(), trips);
    Subspace K = kernel_basis(P);
    for (const auto& kv : K.basis) {
      SparseVec z;
      for (const auto& [j, x] : kv) z = sv_axpy(z, x, inv.basis[j]);
      cocycles.push_back(std::move(z));
    }
  }
  out.dim_cocycles = (int)cocycles.size();

  // boundaries of invariant (d-1)-cochains
  IncrementalRref bnd(s.dim());
  if (d >= 2) {
    const Subspace& inv_prev = invariant_cochains(g, d - 1, n, cap);
    if (inv_prev.dim() > 0) {
      const SparseMatrix& Dprev = differential(g, d - 1, n, cap);
      for (const auto& b : inv_prev.basis) bnd.insert(Dprev.apply(b));
    }
  }
  out.dim_boundaries = bnd.dim();

  IncrementalRref quotient(s.dim());
  for (const auto& b : bnd.space().basis) quotient.insert(b);
  for (const auto& z : cocycles)
    if (quotient.insert(z)) out.representatives.push_back(z);
  out.dim_h = out.dim_cocycles - out.dim_boundaries;
  if ((int)out.representatives.size() != out.dim_h)
    throw ValidationError("invariant_cohomology: representative count mismatch");
  return out;
}

Cochain build_e1(int g, long long cap) {
  if (g < 2) throw ValidationError("build_e1: needs g >= 2");
  const ComplexSlice& s = build_slice(g, 2, 2, cap);
  const HSlice& h1 = h_basis(g, 1);
  std::vector<ExtPoly> taubar;
  for (int i = 0; i < h1.dim(); ++i) taubar.push_back(tau1_bar(g, h_vector(g, 1, i)));
  Cochain c{g, 2, 2, {}};
  for (int b = 0; b < s.dim(); ++b) {
    const WedgeTuple& w = s.basis[b];
    Rational val = iota_pairing_u(taubar[w[0].second], taubar[w[1].second]);
    if (!val.is_zero()) c.coords.emplace_back(b, val);
  }
  return c;
}

Cochain build_t(int g, int k, long long cap) {
  if (k < 1) throw ValidationError("build_t: k >= 1 expected");
  int deg = 2 * k + 1;
  const ComplexSlice& s = build_slice(g, 2, 4 * k + 2, cap);
  const HSlice& h = h_basis(g, deg);
  std::vector<SymPoly> traces;
  for (int i = 0; i < h.dim(); ++i) traces.push_back(trace_k(h_vector(g, deg, i)));
  Cochain c{g, 2, 4 * k + 2, {}};
  for (int b = 0; b < s.dim(); ++b) {
    const WedgeTuple& w = s.basis[b];
    if (w[0].first != deg || w[1].first != deg) continue;
    Rational val = iota_pairing_sym(traces[w[0].second], traces[w[1].second]);
    if (!val.is_zero()) c.coords.emplace_back(b, val);
  }
  return c;
}

std::vector<Rational> class_of(const Cochain& c, long long cap) {
  if (!is_cocycle(c, cap)) throw ValidationError("class_of: not a cocycle");
  InvariantCohomology ic = invariant_cohomology(c.g, c.d, c.n, cap);
  const ComplexSlice& s = build_slice(c.g, c.d, c.n, cap);
  // solve c = sum x_i b_i + sum y_j rep_j via augmented rows (column | e_col)
  IncrementalRref solver(s.dim() + ic.dim_boundaries + ic.dim_h);
  int m = s.dim();
  // recompute boundary basis deterministically
  IncrementalRref bnd(s.dim());
  if (c.d >= 2) {
    const Subspace& inv_prev = invariant_cochains(c.g, c.d - 1, c.n, cap);
    if (inv_prev.dim() > 0) {
      const SparseMatrix& Dprev = differential(c.g, c.d - 1, c.n, cap);
      for (const auto& b : inv_prev.basis) bnd.insert(Dprev.apply(b));
    }
  }
  int col = 0;
  for (const auto& b : bnd.space().basis) {
    SparseVec r = b;
    r.emplace_back(m + col, Rational(1));
    solver.insert(std::move(r));
    ++col;
  }
  for (const auto& rep : ic.representatives) {
    SparseVec r = rep;
    r.emplace_back(m + col, Rational(1));
    solver.insert(std::move(r));
    ++col;
  }
  SparseVec rem = solver.space().reduce(c.coords);
  std::vector<Rational> coords(ic.dim_h, Rational(0));
  for (const auto& [i, x] : rem) {
    if (i < m) throw ValidationError("class_of: cocycle outside invariant span");
    int j = i - m - ic.dim_boundaries;
    if (j >= 0) coords[j] = -x;
  }
  return coords;
}

}  // namespace symlie
