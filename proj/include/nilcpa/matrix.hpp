#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilcpa/rational.hpp"

namespace nilcpa {

using Vec = std::vector<Rational>;

/// Dense matrix of exact rationals, row-major.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Matrix: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Rational& y = o(k, j);
          if (!y.is_zero()) r(i, j) += x * y;
        }
      }
    return r;
  }

  Vec operator*(const Vec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("Matrix: shape mismatch in apply");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

namespace detail {

// Scales a rational row to a primitive integer row (content 1). Zero rows stay zero.
inline std::vector<mpz_class> primitive_int_row(const Vec& row) {
  mpz_class lcm_den = 1;
  for (const auto& x : row)
    if (!x.is_zero()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.den().get_mpz_t());
  std::vector<mpz_class> r(row.size());
  mpz_class g = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j].is_zero()) continue;
    r[j] = row[j].num() * (lcm_den / row[j].den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[j].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : r)
      if (x != 0) x /= g;
  return r;
}

inline void make_primitive(std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& x : row) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : row)
      if (x != 0) x /= g;
}

}  // namespace detail

/// Unique reduced row echelon form. Elimination runs fraction-free over
/// primitive integer rows; the emitted form has unit pivots.
inline Matrix rref(const Matrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<mpz_class>> rows(R);
  for (std::size_t i = 0; i < R; ++i) rows[i] = detail::primitive_int_row(m.row(i));

  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && rows[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < R; ++i) {
      if (rows[i][c] == 0) continue;
      const mpz_class piv = rows[r][c], fac = rows[i][c];
      for (std::size_t j = c; j < C; ++j) rows[i][j] = piv * rows[i][j] - fac * rows[r][j];
      detail::make_primitive(rows[i]);
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t c = pivcol[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (rows[i][c] == 0) continue;
      const mpz_class piv = rows[k][c], fac = rows[i][c];
      for (std::size_t j = 0; j < C; ++j) rows[i][j] = piv * rows[i][j] - fac * rows[k][j];
      detail::make_primitive(rows[i]);
    }
  }
  Matrix out(R, C);
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& piv = rows[i][pivcol[i]];
    for (std::size_t j = pivcol[i]; j < C; ++j)
      if (rows[i][j] != 0) out(i, j) = Rational(rows[i][j], piv);
  }
  return out;
}

inline std::size_t rank(const Matrix& m) {
  const Matrix r = rref(m);
  std::size_t n = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!r(i, j).is_zero()) { nonzero = true; break; }
    if (nonzero) ++n;
  }
  return n;
}

/// Solves A x = b when the solution exists and is unique.
inline std::optional<Vec> solve_unique(const Matrix& a, const Vec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_unique: shape mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const Matrix r = rref(aug);
  const std::size_t n = a.cols();
  Vec x(n);
  std::size_t pivots = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (c < n + 1 && r(i, c).is_zero()) ++c;
    if (c == n + 1) continue;            // zero row
    if (c == n) return std::nullopt;     // 0 = nonzero, inconsistent
    x[c] = r(i, n);
    ++pivots;
  }
  if (pivots != n) return std::nullopt;  // underdetermined
  return x;
}

}  // namespace nilcpa
