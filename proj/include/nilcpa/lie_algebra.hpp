#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcpa/matrix.hpp"
#include "nilcpa/sparse_vec.hpp"
#include "nilcpa/subspace.hpp"

namespace nilcpa {

struct JacobiViolation {
  int i, j, k;  // 0-based basis triple, i < j < k
  Vec residual;
};

/// Finite-dimensional Lie algebra given by structure constants. Only the
/// brackets [e_i, e_j] with i < j are stored; antisymmetry is implied.
class LieAlgebraTable {
public:
  LieAlgebraTable(std::size_t dim, std::vector<std::string> names,
                  const std::map<std::pair<int, int>, SparseVec>& brackets)
      : dim_(dim), names_(std::move(names)), tri_(dim * (dim + 1) / 2) {
    if (names_.empty()) {
      names_.reserve(dim);
      for (std::size_t i = 0; i < dim; ++i) names_.push_back("e" + std::to_string(i + 1));
    }
    if (names_.size() != dim_) throw std::invalid_argument("LieAlgebraTable: names/dim mismatch");
    for (const auto& [ij, v] : brackets) {
      const auto [i, j] = ij;
      if (i < 0 || j < 0 || i >= static_cast<int>(dim) || j >= static_cast<int>(dim) || i >= j)
        throw std::invalid_argument("LieAlgebraTable: bracket indices must satisfy 0 <= i < j < dim");
      int prev = -1;
      for (const auto& [k, c] : v) {
        if (k < 0 || k >= static_cast<int>(dim) || k <= prev)
          throw std::invalid_argument("LieAlgebraTable: ill-formed sparse vector");
        if (c.is_zero()) throw std::invalid_argument("LieAlgebraTable: stored zero coefficient");
        prev = k;
      }
      tri_[tri_index(i, j)] = v;
    }
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  /// [e_i, e_j] for i < j, by reference.
  const SparseVec& bracket_pair(int i, int j) const { return tri_[tri_index(i, j)]; }

  /// [e_i, e_j] for arbitrary i, j (sign handled, diagonal zero).
  SparseVec bracket_basis(int i, int j) const {
    if (i == j) return {};
    if (i < j) return bracket_pair(i, j);
    return sv_neg(bracket_pair(j, i));
  }

  /// [e_i, v] accumulated into acc with scale c.
  void accumulate_bracket(int i, const SparseVec& v, const Rational& c, SparseVec& acc) const {
    for (const auto& [t, ct] : v) {
      if (t == i) continue;
      const Rational scale = c * ct;
      if (i < t)
        sv_axpy(acc, scale, bracket_pair(i, t));
      else
        sv_axpy(acc, -scale, bracket_pair(t, i));
    }
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    if (x.size() != dim_ || y.size() != dim_)
      throw std::invalid_argument("LieAlgebraTable: vector length mismatch");
    Vec out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (i == j || y[j].is_zero()) continue;
        const Rational c = x[i] * y[j];
        if (i < j) {
          for (const auto& [k, ck] : bracket_pair(static_cast<int>(i), static_cast<int>(j)))
            out[static_cast<std::size_t>(k)] += c * ck;
        } else {
          for (const auto& [k, ck] : bracket_pair(static_cast<int>(j), static_cast<int>(i)))
            out[static_cast<std::size_t>(k)] -= c * ck;
        }
      }
    }
    return out;
  }

  /// Matrix of y -> [x, y] in the table basis.
  Matrix ad(const Vec& x) const {
    if (x.size() != dim_) throw std::invalid_argument("LieAlgebraTable: vector length mismatch");
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t i = 0; i < dim_; ++i) {
        if (i == j || x[i].is_zero()) continue;
        if (i < j) {
          for (const auto& [k, ck] : bracket_pair(static_cast<int>(i), static_cast<int>(j)))
            m(static_cast<std::size_t>(k), j) += x[i] * ck;
        } else {
          for (const auto& [k, ck] : bracket_pair(static_cast<int>(j), static_cast<int>(i)))
            m(static_cast<std::size_t>(k), j) -= x[i] * ck;
        }
      }
    }
    return m;
  }

  /// Checks the Jacobi identity over all basis triples; returns the first
  /// failure (lexicographically least triple) or nullopt.
  std::optional<JacobiViolation> validate() const {
    const int n = static_cast<int>(dim_);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const SparseVec& bij = bracket_pair(i, j);
        for (int k = j + 1; k < n; ++k) {
          const SparseVec& bjk = bracket_pair(j, k);
          const SparseVec& bik = bracket_pair(i, k);
          if (bij.empty() && bjk.empty() && bik.empty()) continue;
          SparseVec acc;
          accumulate_bracket(i, bjk, Rational(1), acc);   // [e_i, [e_j, e_k]]
          accumulate_bracket(j, bik, Rational(-1), acc);  // [e_j, [e_k, e_i]]
          accumulate_bracket(k, bij, Rational(1), acc);   // [e_k, [e_i, e_j]]
          if (!acc.empty()) return JacobiViolation{i, j, k, sv_dense(dim_, acc)};
        }
      }
    return std::nullopt;
  }

  void ensure_valid() const {
    if (auto v = validate()) {
      std::ostringstream os;
      os << "Jacobi identity fails at basis triple (" << v->i + 1 << ", " << v->j + 1 << ", "
         << v->k + 1 << "); residual";
      for (const auto& c : v->residual) os << " " << c.str();
      throw std::invalid_argument(os.str());
    }
  }

  template <typename F>
  void for_each_bracket(F&& f) const {
    const int n = static_cast<int>(dim_);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const SparseVec& v = bracket_pair(i, j);
        if (!v.empty()) f(i, j, v);
      }
  }

private:
  std::size_t tri_index(int i, int j) const {
    // i < j
    const std::size_t si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
    return si * dim_ - si * (si + 1) / 2 + (sj - si - 1);
  }

  std::size_t dim_;
  std::vector<std::string> names_;
  std::vector<SparseVec> tri_;
};

struct SeriesReport {
  std::vector<Subspace> lower_central;  // [0] = g^1 = g, chain until stable
  std::vector<Subspace> derived;        // [0] = g^(1) = g
  Subspace center;
  Subspace commutator;
  std::optional<int> nilpotency_class;  // nullopt when not nilpotent

  SeriesReport() : center(Subspace::zero(0)), commutator(Subspace::zero(0)) {}
};

/// Span of [A, B] for subspaces A, B.
inline Subspace bracket_span(const LieAlgebraTable& t, const Subspace& a, const Subspace& b) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Vec ai = a.basis_row(i);
    for (std::size_t j = 0; j < b.dim(); ++j) rows.push_back(t.bracket(ai, b.basis_row(j)));
  }
  return Subspace::from_vectors(t.dim(), rows);
}

/// [g, B] computed over basis elements of g (avoids the dense double loop).
inline Subspace algebra_bracket_span(const LieAlgebraTable& t, const Subspace& b) {
  std::vector<Vec> rows;
  const int n = static_cast<int>(t.dim());
  for (int i = 0; i < n; ++i)
    for (std::size_t r = 0; r < b.dim(); ++r) {
      SparseVec acc;
      t.accumulate_bracket(i, sv_from_dense(b.basis_row(r)), Rational(1), acc);
      if (!acc.empty()) rows.push_back(sv_dense(t.dim(), acc));
    }
  return Subspace::from_vectors(t.dim(), rows);
}

inline Subspace center_of(const LieAlgebraTable& t) {
  // x central iff sum_i x_i [e_i, e_j] = 0 for all j; one sparse row per (j, m).
  std::map<std::pair<int, int>, SparseVec> rows_map;
  t.for_each_bracket([&](int i, int j, const SparseVec& v) {
    for (const auto& [m, c] : v) {
      rows_map[{j, m}].emplace_back(i, c);
      rows_map[{i, m}].emplace_back(j, -c);
    }
  });
  std::vector<SparseVec> rows;
  rows.reserve(rows_map.size());
  for (auto& [jm, row] : rows_map) {
    sv_normalize(row);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return nullspace_sparse(t.dim(), rows);
}

inline SeriesReport series(const LieAlgebraTable& t) {
  SeriesReport rep;
  rep.lower_central.push_back(Subspace::full(t.dim()));
  for (;;) {
    Subspace next = algebra_bracket_span(t, rep.lower_central.back());
    if (next == rep.lower_central.back()) break;  // stable (non-nilpotent tail)
    rep.lower_central.push_back(next);
    if (next.dim() == 0) break;
  }
  rep.derived.push_back(Subspace::full(t.dim()));
  for (;;) {
    Subspace next = bracket_span(t, rep.derived.back(), rep.derived.back());
    if (next == rep.derived.back()) break;
    rep.derived.push_back(next);
    if (next.dim() == 0) break;
  }
  rep.center = center_of(t);
  rep.commutator = rep.lower_central.size() > 1 ? rep.lower_central[1]
                                                : algebra_bracket_span(t, rep.lower_central[0]);
  if (rep.lower_central.back().dim() == 0)
    rep.nilpotency_class = static_cast<int>(rep.lower_central.size()) - 1;
  return rep;
}

struct AlgebraInvariants {
  bool is_stem;
  Rational z_ratio;
  std::size_t codim_commutator;
};

inline AlgebraInvariants invariants(const LieAlgebraTable& t) {
  const SeriesReport rep = series(t);
  const Rational ratio = t.dim() == 0
                             ? Rational(1)
                             : Rational(static_cast<long>(rep.center.dim()),
                                        static_cast<long>(t.dim()));
  return AlgebraInvariants{rep.commutator.contains(rep.center), ratio,
                           t.dim() - rep.commutator.dim()};
}

}  // namespace nilcpa
