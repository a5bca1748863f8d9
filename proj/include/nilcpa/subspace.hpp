#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilcpa/matrix.hpp"
#include "nilcpa/sparse_vec.hpp"

namespace nilcpa {

/// Linear subspace of Q^n held as a canonical RREF basis, one row per basis
/// vector. Two subspaces are equal iff their basis matrices are identical.
class Subspace {
public:
  static Subspace zero(std::size_t ambient) { return Subspace(ambient, Matrix(0, ambient)); }

  static Subspace full(std::size_t ambient) {
    return Subspace(ambient, Matrix::identity(ambient));
  }

  static Subspace from_vectors(std::size_t ambient, const std::vector<Vec>& vectors) {
    const Matrix r = rref(Matrix::from_rows(ambient, vectors));
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      bool nz = false;
      for (std::size_t j = 0; j < ambient; ++j)
        if (!r(i, j).is_zero()) { nz = true; break; }
      if (nz) ++nonzero;
    }
    Matrix basis(nonzero, ambient);
    for (std::size_t i = 0; i < nonzero; ++i)
      for (std::size_t j = 0; j < ambient; ++j) basis(i, j) = r(i, j);
    return Subspace(ambient, std::move(basis));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vec basis_row(std::size_t i) const { return basis_.row(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool member(const Vec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace: ambient-dimension mismatch");
    Vec w = v;
    reduce_in_place(w);
    for (const auto& x : w)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Reduces v modulo this subspace (eliminates the pivot coordinates).
  void reduce_in_place(Vec& w) const {
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
      const Rational& c = w[pivots_[r]];
      if (c.is_zero()) continue;
      const Rational f = c;  // pivot entries are 1
      for (std::size_t j = pivots_[r]; j < ambient_; ++j)
        if (!basis_(r, j).is_zero()) w[j] -= f * basis_(r, j);
    }
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_)
      throw std::invalid_argument("Subspace: ambient-dimension mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!member(other.basis_row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

private:
  Subspace(std::size_t ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {
    pivots_.reserve(basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      std::size_t c = 0;
      while (c < ambient_ && basis_(i, c).is_zero()) ++c;
      pivots_.push_back(c);
    }
  }

  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Sum and intersection in one Zassenhaus elimination.
inline std::pair<Subspace, Subspace> sum_and_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("Subspace: ambient-dimension mismatch");
  const std::size_t n = a.ambient_dim();
  std::vector<Vec> rows;
  rows.reserve(a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec r(2 * n);
    for (std::size_t j = 0; j < n; ++j) r[j] = r[n + j] = a.basis()(i, j);
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    Vec r(2 * n);
    for (std::size_t j = 0; j < n; ++j) r[j] = b.basis()(i, j);
    rows.push_back(std::move(r));
  }
  const Matrix red = rref(Matrix::from_rows(2 * n, rows));
  std::vector<Vec> sum_rows, int_rows;
  for (std::size_t i = 0; i < red.rows(); ++i) {
    bool left_nonzero = false;
    for (std::size_t j = 0; j < n; ++j)
      if (!red(i, j).is_zero()) { left_nonzero = true; break; }
    Vec half(n);
    if (left_nonzero) {
      for (std::size_t j = 0; j < n; ++j) half[j] = red(i, j);
      sum_rows.push_back(std::move(half));
    } else {
      bool right_nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        half[j] = red(i, n + j);
        if (!half[j].is_zero()) right_nonzero = true;
      }
      if (right_nonzero) int_rows.push_back(std::move(half));
    }
  }
  return {Subspace::from_vectors(n, sum_rows), Subspace::from_vectors(n, int_rows)};
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  return sum_and_intersection(a, b).first;
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  return sum_and_intersection(a, b).second;
}

/// Kernel of m as a canonical subspace of Q^cols.
inline Subspace nullspace(const Matrix& m) {
  const Matrix r = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  std::vector<std::pair<std::size_t, std::size_t>> pivot_rows;  // (row, col)
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (c < C && r(i, c).is_zero()) ++c;
    if (c == C) break;
    is_pivot[c] = true;
    pivot_rows.emplace_back(i, c);
  }
  std::vector<Vec> kernel;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    Vec v(C);
    v[f] = Rational(1);
    for (const auto& [i, c] : pivot_rows) v[c] = -r(i, f);
    kernel.push_back(std::move(v));
  }
  return Subspace::from_vectors(C, kernel);
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

}  // namespace detail

/// Kernel of a sparse row system over Q^cols. Rows touching disjoint column
/// sets are eliminated independently, which keeps graded systems cheap.
inline Subspace nullspace_sparse(std::size_t cols, const std::vector<SparseVec>& rows) {
  detail::UnionFind uf(cols);
  std::vector<bool> touched(cols, false);
  for (const auto& row : rows) {
    for (const auto& [j, c] : row) {
      (void)c;
      touched[static_cast<std::size_t>(j)] = true;
      uf.unite(row.front().first, j);
    }
  }
  // group rows by component
  std::vector<std::vector<const SparseVec*>> by_root(cols);
  for (const auto& row : rows) {
    if (row.empty()) continue;
    by_root[static_cast<std::size_t>(uf.find(row.front().first))].push_back(&row);
  }
  std::vector<std::vector<std::size_t>> cols_by_root(cols);
  for (std::size_t j = 0; j < cols; ++j)
    if (touched[j]) cols_by_root[static_cast<std::size_t>(uf.find(static_cast<int>(j)))].push_back(j);
  std::vector<Vec> kernel;
  // columns never touched by a row are free
  for (std::size_t j = 0; j < cols; ++j) {
    if (touched[j]) continue;
    Vec v(cols);
    v[j] = Rational(1);
    kernel.push_back(std::move(v));
  }
  std::vector<int> to_local(cols, -1);
  for (std::size_t root = 0; root < cols; ++root) {
    if (by_root[root].empty()) continue;
    const std::vector<std::size_t>& local_cols = cols_by_root[root];
    for (std::size_t k = 0; k < local_cols.size(); ++k)
      to_local[local_cols[k]] = static_cast<int>(k);
    Matrix local(by_root[root].size(), local_cols.size());
    for (std::size_t i = 0; i < by_root[root].size(); ++i)
      for (const auto& [j, c] : *by_root[root][i])
        local(i, static_cast<std::size_t>(to_local[j])) = c;
    const Subspace k = nullspace(local);
    for (std::size_t i = 0; i < k.dim(); ++i) {
      Vec v(cols);
      for (std::size_t lj = 0; lj < local_cols.size(); ++lj) v[local_cols[lj]] = k.basis()(i, lj);
      kernel.push_back(std::move(v));
    }
  }
  return Subspace::from_vectors(cols, kernel);
}

}  // namespace nilcpa
