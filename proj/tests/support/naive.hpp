#pragma once

// Test-only oracles, independent of the library's elimination engine:
// dense textbook Gauss-Jordan over mpq and brute-force word enumeration.

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

#include "symlie/sparse.hpp"

namespace naive {

using Dense = std::vector<std::vector<mpq_class>>;

inline Dense to_dense(const symlie::SparseMatrix& m) {
  Dense d(m.rows(), std::vector<mpq_class>(m.cols(), 0));
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) d[r][c] = v.raw();
  return d;
}

// returns rank; reduces d to RREF in place
inline int rref(Dense& d) {
  if (d.empty()) return 0;
  int rows = (int)d.size(), cols = (int)d[0].size();
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (d[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(d[p], d[rank]);
    mpq_class inv = d[rank][c];
    for (int j = 0; j < cols; ++j) d[rank][j] /= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || d[r][c] == 0) continue;
      mpq_class f = d[r][c];
      for (int j = 0; j < cols; ++j) d[r][j] -= f * d[rank][j];
    }
    ++rank;
  }
  d.resize(rank, std::vector<mpq_class>(cols, 0));
  return rank;
}

inline int rank(const symlie::SparseMatrix& m) {
  Dense d = to_dense(m);
  return rref(d);
}

inline symlie::Subspace row_space(const symlie::SparseMatrix& m) {
  Dense d = to_dense(m);
  int rk = rref(d);
  symlie::Subspace s;
  s.ambient = m.cols();
  for (int r = 0; r < rk; ++r) {
    symlie::SparseVec v;
    int pivot = -1;
    for (int c = 0; c < m.cols(); ++c)
      if (d[r][c] != 0) {
        if (pivot < 0) pivot = c;
        v.emplace_back(c, symlie::Rational(mpq_class(d[r][c])));
      }
    s.basis.push_back(std::move(v));
    s.pivots.push_back(pivot);
  }
  return s;
}

inline bool word_is_lyndon(const std::string& w) {
  if (w.empty()) return false;
  // strictly smaller than all proper rotations
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::string rot = w.substr(i) + w.substr(0, i);
    if (w >= rot) return false;
  }
  return true;
}

inline std::vector<std::string> lyndon_by_rotation(int n, int k) {
  std::vector<std::string> out;
  std::string w(k, 0);
  while (true) {
    if (word_is_lyndon(w)) out.push_back(w);
    int i = k - 1;
    while (i >= 0 && w[i] == n - 1) --i;
    if (i < 0) break;
    w[i]++;
    for (int j = i + 1; j < k; ++j) w[j] = 0;
  }
  return out;
}

inline symlie::SparseMatrix random_matrix(std::mt19937& rng, int rows, int cols, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  std::vector<std::tuple<int, int, symlie::Rational>> trips;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (u(rng) < density) {
        symlie::Rational v((long)num(rng), (long)den(rng));
        if (!v.is_zero()) trips.emplace_back(r, c, v);
      }
  return symlie::SparseMatrix::from_triplets(rows, cols, trips);
}

}  // namespace naive
