#include "symlie/sparse.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace symlie {

SparseVec sv_unit(int i) { return {{i, Rational(1)}}; }

Rational sv_get(const SparseVec& v, int i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return Rational(0);
}

SparseVec sv_scale(const SparseVec& v, const Rational& c) {
  if (c.is_zero()) return {};
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, x * c);
  return out;
}

SparseVec sv_axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
  if (c.is_zero()) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Rational x = c * b[j].second;
      if (!x.is_zero()) out.emplace_back(b[j].first, std::move(x));
      ++j;
    } else {
      Rational x = a[i].second + c * b[j].second;
      if (!x.is_zero()) out.emplace_back(a[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  return out;
}

void sv_check(const SparseVec& v, int ambient) {
  int last = -1;
  for (const auto& [i, x] : v) {
    if (i <= last || i >= ambient) throw ValidationError("SparseVec: bad index");
    if (x.is_zero()) throw ValidationError("SparseVec: stored zero");
    last = i;
  }
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         const std::vector<std::tuple<int, int, Rational>>& trips) {
  SparseMatrix m(rows, cols);
  std::vector<std::map<int, Rational>> acc(rows);
  for (const auto& [r, c, v] : trips) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw ValidationError("SparseMatrix: index out of range");
    if (acc[r].count(c)) throw ValidationError("SparseMatrix: duplicate entry");
    if (!v.is_zero()) acc[r].emplace(c, v);
  }
  for (int r = 0; r < rows; ++r)
    m.data_[r] = SparseVec(acc[r].begin(), acc[r].end());
  return m;
}

SparseMatrix SparseMatrix::from_rows(int cols, std::vector<SparseVec> rows) {
  SparseMatrix m((int)rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    sv_check(rows[r], cols);
    m.data_[r] = std::move(rows[r]);
  }
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i] = sv_unit(i);
  return m;
}

SparseMatrix SparseMatrix::vstack(const std::vector<const SparseMatrix*>& parts) {
  int cols = parts.empty() ? 0 : parts[0]->cols();
  int rows = 0;
  for (auto* p : parts) {
    if (p->cols() != cols) throw ValidationError("vstack: column mismatch");
    rows += p->rows();
  }
  SparseMatrix m(rows, cols);
  int r = 0;
  for (auto* p : parts)
    for (int i = 0; i < p->rows(); ++i) m.data_[r++] = p->row(i);
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

void SparseMatrix::set_row(int r, SparseVec v) {
  sv_check(v, cols_);
  data_.at(r) = std::move(v);
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> cnt(cols_, 0);
  for (const auto& row : data_)
    for (const auto& [c, v] : row) ++cnt[c];
  SparseMatrix t(cols_, rows_);
  for (int c = 0; c < cols_; ++c) t.data_[c].reserve(cnt[c]);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw ValidationError("matmul: shape mismatch");
  SparseMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r) {
    std::map<int, Rational> acc;
    for (const auto& [k, a] : data_[r])
      for (const auto& [c, b] : o.data_[k]) {
        auto it = acc.find(c);
        if (it == acc.end())
          acc.emplace(c, a * b);
        else
          it->second += a * b;
      }
    SparseVec row;
    for (auto& [c, v] : acc)
      if (!v.is_zero()) row.emplace_back(c, std::move(v));
    out.data_[r] = std::move(row);
  }
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("sub: shape mismatch");
  SparseMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) out.data_[r] = sv_axpy(data_[r], Rational(-1), o.data_[r]);
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  if (!v.empty() && v.back().first >= cols_) throw ValidationError("apply: vector too long");
  SparseVec out;
  for (int r = 0; r < rows_; ++r) {
    // dot(row r, v)
    Rational s(0);
    std::size_t i = 0, j = 0;
    const auto& row = data_[r];
    while (i < row.size() && j < v.size()) {
      if (row[i].first < v[j].first)
        ++i;
      else if (v[j].first < row[i].first)
        ++j;
      else {
        s += row[i].second * v[j].second;
        ++i;
        ++j;
      }
    }
    if (!s.is_zero()) out.emplace_back(r, std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination engine.
//
// Fraction-free forward elimination on integer-scaled rows with Markowitz
// pivot selection (minimal (nnz(row)-1)*(nnz(col)-1), ties broken by lowest
// (row, col)).  Updated rows are divided by their integer content, which
// keeps coefficients no larger than Bareiss' scheme.  Afterwards the echelon
// rows are back-substituted over Q; the resulting RREF is the canonical one
// of the row space, independent of pivot order.
// ---------------------------------------------------------------------------

namespace {

using ZRow = std::vector<std::pair<int, mpz_class>>;

ZRow scale_to_int(const SparseVec& v) {
  mpz_class l(1);
  for (const auto& [i, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  ZRow out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, x.num() * (l / x.den()));
  return out;
}

void divide_content(ZRow& r) {
  if (r.empty()) return;
  mpz_class g(0);
  for (const auto& [i, x] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& [i, x] : r) x /= g;
}

// a*denom_b - b*num_b style combination: p*row - q*pivot_row
ZRow zrow_combine(const mpz_class& p, const ZRow& row, const mpz_class& q, const ZRow& piv) {
  ZRow out;
  out.reserve(row.size() + piv.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < piv.size()) {
    if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
      out.emplace_back(row[i].first, p * row[i].second);
      ++i;
    } else if (i == row.size() || piv[j].first < row[i].first) {
      out.emplace_back(piv[j].first, -q * piv[j].second);
      ++j;
    } else {
      mpz_class v = p * row[i].second - q * piv[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  divide_content(out);
  return out;
}

struct Echelon {
  std::vector<ZRow> rows;   // one per pivot
  std::vector<int> pivots;  // pivot column of each row
};

// Forward-eliminates the given rows (indices are identities for tie-breaks).
// With full_reduce, retired pivot rows are also cleared at every new pivot
// column, so the result is fully reduced (Gauss-Jordan) up to scaling.
Echelon eliminate(std::vector<ZRow> rows, bool full_reduce) {
  Echelon ech;
  std::vector<char> active(rows.size(), 1);
  std::vector<int> colcnt;
  int maxcol = -1;
  for (const auto& r : rows)
    if (!r.empty()) maxcol = std::max(maxcol, r.back().first);
  colcnt.assign(maxcol + 1, 0);
  for (const auto& r : rows)
    for (const auto& [c, v] : r) ++colcnt[c];

  std::size_t remaining = 0;
  for (const auto& r : rows)
    if (!r.empty()) ++remaining;

  std::vector<std::size_t> retired;  // indices into `rows` kept as pivot rows
  std::vector<int> retired_pivot;

  while (remaining > 0) {
    // Markowitz pivot search over active rows
    long long best = std::numeric_limits<long long>::max();
    int br = -1, bc = -1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r] || rows[r].empty()) continue;
      long long rf = (long long)rows[r].size() - 1;
      for (const auto& [c, v] : rows[r]) {
        long long cost = rf * (colcnt[c] - 1);
        if (cost < best || (cost == best && ((int)r < br || ((int)r == br && c < bc)))) {
          best = cost;
          br = (int)r;
          bc = c;
        }
      }
    }
    if (br < 0) break;

    active[br] = 0;
    --remaining;
    for (const auto& [c, v] : rows[br]) --colcnt[c];
    mpz_class pval;
    for (const auto& [c, v] : rows[br])
      if (c == bc) pval = v;

    for (std::size_t r = 0; r < rows.size(); ++r) {
      bool is_active = active[r] && !rows[r].empty();
      bool is_retired = full_reduce && !active[r] && r != (std::size_t)br && !rows[r].empty();
      if (!is_active && !is_retired) continue;
      mpz_class x(0);
      for (const auto& [c, v] : rows[r])
        if (c == bc) {
          x = v;
          break;
        }
      if (x == 0) continue;
      if (is_active)
        for (const auto& [c, v] : rows[r]) --colcnt[c];
      rows[r] = zrow_combine(pval, rows[r], x, rows[br]);
      if (is_active) {
        if (rows[r].empty()) {
          active[r] = 0;
          --remaining;
        } else {
          for (const auto& [c, v] : rows[r]) ++colcnt[c];
        }
      }
    }
    retired.push_back((std::size_t)br);
    retired_pivot.push_back(bc);
  }
  for (std::size_t t = 0; t < retired.size(); ++t) {
    ech.rows.push_back(std::move(rows[retired[t]]));
    ech.pivots.push_back(retired_pivot[t]);
  }
  return ech;
}

// Scaling of fully reduced echelon rows into canonical RREF over Q.
Subspace to_rref(Echelon ech, int ambient) {
  std::vector<std::size_t> order(ech.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ech.pivots[a] < ech.pivots[b]; });

  std::vector<SparseVec> rows;
  std::vector<int> pivots;
  rows.reserve(order.size());
  for (std::size_t k : order) {
    mpz_class pval;
    for (const auto& [c, z] : ech.rows[k])
      if (c == ech.pivots[k]) pval = z;
    SparseVec v;
    v.reserve(ech.rows[k].size());
    for (const auto& [c, z] : ech.rows[k]) v.emplace_back(c, Rational(mpq_class(z, pval)));
    rows.push_back(std::move(v));
    pivots.push_back(ech.pivots[k]);
  }
  return Subspace{ambient, std::move(rows), std::move(pivots)};
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Splits rows into connected components of the column-incidence graph and
// eliminates each separately; the elimination output (a biorthogonal pivot
// basis) is then canonicalized into the unique RREF, whose pivots are the
// leading entries.
Subspace rref_rows(const std::vector<SparseVec>& input, int ambient) {
  UnionFind uf(ambient > 0 ? ambient : 1);
  for (const auto& r : input)
    for (std::size_t i = 1; i < r.size(); ++i) uf.unite(r[0].first, r[i].first);

  std::map<int, std::vector<ZRow>> comp;
  for (const auto& r : input) {
    if (r.empty()) continue;
    comp[uf.find(r[0].first)].push_back(scale_to_int(r));
  }

  IncrementalRref canon(ambient);
  for (auto& [root, zrows] : comp) {
    Subspace part = to_rref(eliminate(std::move(zrows), true), ambient);
    for (auto& row : part.basis) canon.insert(std::move(row));
  }
  return canon.take();
}

}  // namespace

int rank(const SparseMatrix& m) {
  UnionFind uf(m.cols() > 0 ? m.cols() : 1);
  for (int r = 0; r < m.rows(); ++r) {
    const auto& row = m.row(r);
    for (std::size_t i = 1; i < row.size(); ++i) uf.unite(row[0].first, row[i].first);
  }
  std::map<int, std::vector<ZRow>> comp;
  for (int r = 0; r < m.rows(); ++r) {
    const auto& row = m.row(r);
    if (row.empty()) continue;
    comp[uf.find(row[0].first)].push_back(scale_to_int(row));
  }
  int rk = 0;
  for (auto& [root, zrows] : comp) rk += (int)eliminate(std::move(zrows), false).rows.size();
  return rk;
}

Subspace row_space(const SparseMatrix& m) {
  std::vector<SparseVec> rows;
  rows.reserve(m.rows());
  for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rref_rows(rows, m.cols());
}

Subspace kernel_basis(const SparseMatrix& m) {
  Subspace r = row_space(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int p : r.pivots) is_pivot[p] = 1;

  std::vector<SparseVec> kv;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    v.emplace_back(f, Rational(1));
    for (std::size_t t = 0; t < r.basis.size(); ++t) {
      Rational x = sv_get(r.basis[t], f);
      if (!x.is_zero()) v = sv_axpy(v, -x, sv_unit(r.pivots[t]));
    }
    kv.push_back(std::move(v));
  }
  return rref_rows(kv, m.cols());
}

SparseVec Subspace::reduce(SparseVec v) const {
  for (std::size_t t = 0; t < basis.size(); ++t) {
    Rational x = sv_get(v, pivots[t]);
    if (!x.is_zero()) v = sv_axpy(v, -x, basis[t]);
  }
  return v;
}

std::optional<std::vector<Rational>> Subspace::coordinates(const SparseVec& v) const {
  std::vector<Rational> coords(basis.size(), Rational(0));
  SparseVec rem = v;
  for (std::size_t t = 0; t < basis.size(); ++t) {
    Rational x = sv_get(rem, pivots[t]);
    if (!x.is_zero()) {
      coords[t] = x;
      rem = sv_axpy(rem, -x, basis[t]);
    }
  }
  if (!rem.empty()) return std::nullopt;
  return coords;
}

bool IncrementalRref::insert(SparseVec v) {
  v = space_.reduce(std::move(v));
  if (v.empty()) return false;
  int piv = v[0].first;
  v = sv_scale(v, Rational(1) / v[0].second);
  // back-reduce existing rows
  for (std::size_t t = 0; t < space_.basis.size(); ++t) {
    Rational x = sv_get(space_.basis[t], piv);
    if (!x.is_zero()) space_.basis[t] = sv_axpy(space_.basis[t], -x, v);
  }
  auto pos = std::lower_bound(space_.pivots.begin(), space_.pivots.end(), piv);
  std::size_t idx = pos - space_.pivots.begin();
  space_.pivots.insert(pos, piv);
  space_.basis.insert(space_.basis.begin() + idx, std::move(v));
  return true;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw ValidationError("subspace_sum: ambient mismatch");
  std::vector<SparseVec> rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return rref_rows(rows, a.ambient);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw ValidationError("subspace_intersection: ambient mismatch");
  // Zassenhaus: rows (x|x) for x in a, (y|0) for y in b; rows of the RREF with
  // zero left half have right halves spanning the intersection.
  int w = a.ambient;
  std::vector<SparseVec> rows;
  for (const auto& x : a.basis) {
    SparseVec r = x;
    for (const auto& [i, c] : x) r.emplace_back(i + w, c);
    rows.push_back(std::move(r));
  }
  for (const auto& y : b.basis) rows.push_back(y);
  Subspace z = rref_rows(rows, 2 * w);
  std::vector<SparseVec> inter;
  for (const auto& r : z.basis) {
    if (r.empty() || r[0].first < w) continue;
    SparseVec v;
    for (const auto& [i, c] : r) v.emplace_back(i - w, c);
    inter.push_back(std::move(v));
  }
  return rref_rows(inter, w);
}

bool subspace_member(const Subspace& a, const SparseVec& v) { return a.contains(v); }

int quotient_dim(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw ValidationError("quotient_dim: ambient mismatch");
  for (const auto& v : b.basis)
    if (!a.contains(v)) throw ValidationError("quotient_dim: b is not contained in a");
  return a.dim() - b.dim();
}

}  // namespace symlie
