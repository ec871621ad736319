#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "symlie/rational.hpp"

namespace symlie {

/// Sparse coordinate vector: (index, coefficient) pairs, strictly increasing
/// indices, no zero coefficients.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sv_unit(int i);
Rational sv_get(const SparseVec& v, int i);
SparseVec sv_scale(const SparseVec& v, const Rational& c);
/// a + c*b
SparseVec sv_axpy(const SparseVec& a, const Rational& c, const SparseVec& b);
inline SparseVec sv_add(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, Rational(1), b); }
void sv_check(const SparseVec& v, int ambient);

/// Immutable sparse rational matrix, entries sorted by (row, col).
class SparseMatrix {
 public:
  SparseMatrix() : rows_(0), cols_(0) {}
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0) throw ValidationError("SparseMatrix: negative shape");
  }
  static SparseMatrix from_triplets(int rows, int cols,
                                    const std::vector<std::tuple<int, int, Rational>>& trips);
  static SparseMatrix from_rows(int cols, std::vector<SparseVec> rows);
  static SparseMatrix identity(int n);
  static SparseMatrix vstack(const std::vector<const SparseMatrix*>& parts);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVec& row(int r) const { return data_.at(r); }
  Rational at(int r, int c) const { return sv_get(data_.at(r), c); }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  /// Overwrites row r (used by builders; keeps sortedness invariant).
  void set_row(int r, SparseVec v);

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseVec apply(const SparseVec& v) const;  // matrix * column vector
  bool operator==(const SparseMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

 private:
  int rows_, cols_;
  std::vector<SparseVec> data_;
};

/// Linear subspace of Q^ambient with a reduced-row-echelon basis.
struct Subspace {
  int ambient = 0;
  std::vector<SparseVec> basis;  // RREF rows; pivot columns strictly increase
  std::vector<int> pivots;

  int dim() const { return (int)basis.size(); }
  /// Eliminates the pivot coordinates of v; zero remainder means membership.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  /// Coefficients of v in the RREF basis, or nullopt if v is outside.
  std::optional<std::vector<Rational>> coordinates(const SparseVec& v) const;
  bool operator==(const Subspace& o) const {
    return ambient == o.ambient && pivots == o.pivots && basis == o.basis;
  }
};

/// Maintains a reduced echelon basis under row insertion (rational pivoting).
class IncrementalRref {
 public:
  explicit IncrementalRref(int ambient) : space_{ambient, {}, {}} {}
  /// Returns true if the row enlarged the span.
  bool insert(SparseVec v);
  int dim() const { return space_.dim(); }
  const Subspace& space() const { return space_; }
  Subspace take() { return std::move(space_); }

 private:
  Subspace space_;
};

/// Rank over Q. Fraction-free elimination, Markowitz pivoting, deterministic.
int rank(const SparseMatrix& m);
/// Canonical RREF basis of the row space.
Subspace row_space(const SparseMatrix& m);
/// Canonical RREF basis of the null space; dim = cols - rank.
Subspace kernel_basis(const SparseMatrix& m);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b);
bool subspace_member(const Subspace& a, const SparseVec& v);
/// dim a - dim b; requires b subset of a.
int quotient_dim(const Subspace& a, const Subspace& b);

}  // namespace symlie
