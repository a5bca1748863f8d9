#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilcpa/free_nilpotent.hpp"
#include "nilcpa/lie_algebra.hpp"
#include "nilcpa/matrix.hpp"
#include "nilcpa/subspace.hpp"

namespace nilcpa {

/// Symmetric bilinear product tensor on a Lie algebra:
/// e_i . e_j = sum_k t[i][j][k] e_k.
class CpaProduct {
public:
  /// Entries for i <= j only; mirrored to (j, i).
  CpaProduct(LieAlgebraTable algebra, const std::map<std::pair<int, int>, SparseVec>& entries)
      : alg_(std::move(algebra)), t_(alg_.dim() * alg_.dim() * alg_.dim()) {
    const int n = static_cast<int>(alg_.dim());
    for (const auto& [ij, v] : entries) {
      const auto [i, j] = ij;
      if (i < 0 || j < 0 || i >= n || j >= n || i > j)
        throw std::invalid_argument("CpaProduct: entries must satisfy 0 <= i <= j < dim");
      for (const auto& [k, c] : v) {
        if (k < 0 || k >= n) throw std::invalid_argument("CpaProduct: tensor shape mismatch");
        at(i, j, k) = c;
        at(j, i, k) = c;
      }
    }
  }

  static CpaProduct zero(LieAlgebraTable algebra) { return CpaProduct(std::move(algebra), {}); }

  /// Raw tensor of dim^3 coefficients, (i*dim + j)*dim + k layout. Symmetry is
  /// not enforced here; verify() reports on it.
  static CpaProduct from_tensor(LieAlgebraTable algebra, std::vector<Rational> tensor) {
    CpaProduct p(std::move(algebra), {});
    if (tensor.size() != p.t_.size()) throw std::invalid_argument("CpaProduct: tensor shape mismatch");
    p.t_ = std::move(tensor);
    return p;
  }

  const LieAlgebraTable& algebra() const { return alg_; }
  std::size_t dim() const { return alg_.dim(); }

  const Rational& coeff(int i, int j, int k) const { return at(i, j, k); }

  Vec product_basis(int i, int j) const {
    const std::size_t n = alg_.dim();
    Vec out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = at(i, j, static_cast<int>(k));
    return out;
  }

  Vec product(const Vec& x, const Vec& y) const {
    const std::size_t n = alg_.dim();
    if (x.size() != n || y.size() != n)
      throw std::invalid_argument("CpaProduct: vector length mismatch");
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        const Rational c = x[i] * y[j];
        for (std::size_t k = 0; k < n; ++k) {
          const Rational& tk = at(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
          if (!tk.is_zero()) out[k] += c * tk;
        }
      }
    }
    return out;
  }

  /// L(x): y -> x . y.
  Matrix left_mult(const Vec& x) const {
    const std::size_t n = alg_.dim();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Rational& tk = at(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
          if (!tk.is_zero()) m(k, j) += x[i] * tk;
        }
    }
    return m;
  }

  /// Sparse pair entries (i <= j), for serialization.
  std::map<std::pair<int, int>, SparseVec> entries() const {
    std::map<std::pair<int, int>, SparseVec> out;
    const int n = static_cast<int>(alg_.dim());
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        SparseVec v;
        for (int k = 0; k < n; ++k)
          if (!at(i, j, k).is_zero()) v.emplace_back(k, at(i, j, k));
        if (!v.empty()) out[{i, j}] = std::move(v);
      }
    return out;
  }

private:
  Rational& at(int i, int j, int k) {
    return t_[(static_cast<std::size_t>(i) * alg_.dim() + static_cast<std::size_t>(j)) * alg_.dim() +
              static_cast<std::size_t>(k)];
  }
  const Rational& at(int i, int j, int k) const {
    return t_[(static_cast<std::size_t>(i) * alg_.dim() + static_cast<std::size_t>(j)) * alg_.dim() +
              static_cast<std::size_t>(k)];
  }

  LieAlgebraTable alg_;
  std::vector<Rational> t_;
};

struct AxiomWitness {
  int i, j, k;  // 0-based basis triple
  Vec residual;
};

struct CpaReport {
  bool axiom4_ok = true, axiom5_ok = true, axiom6_ok = true;
  std::optional<AxiomWitness> axiom4_witness, axiom5_witness, axiom6_witness;
  bool is_complete = false;
  bool is_central = false;
  bool gZ_is_zero = false;     // g . Z(g) = 0
  bool gComm_is_zero = false;  // g . [g,g] = 0

  bool axioms_ok() const { return axiom4_ok && axiom5_ok && axiom6_ok; }
};

namespace detail {

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = Rational(1);
  return v;
}

inline bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// W_{k+1} = sum_i L(e_i)(W_k); the joint chain reaches zero iff all left
// multiplications are nilpotent.
inline bool joint_chain_vanishes(const CpaProduct& p) {
  const std::size_t n = p.dim();
  Subspace w = Subspace::full(n);
  for (std::size_t step = 0; step <= n && w.dim() > 0; ++step) {
    std::vector<Vec> images;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < w.dim(); ++r)
        images.push_back(p.product(unit_vec(n, i), w.basis_row(r)));
    Subspace next = Subspace::from_vectors(n, images);
    if (next == w) return false;  // stabilized above zero
    w = std::move(next);
  }
  return w.dim() == 0;
}

}  // namespace detail

inline bool is_complete(const CpaProduct& p) { return detail::joint_chain_vanishes(p); }

/// Exhaustive axiom check plus the completeness/centrality flags.
inline CpaReport verify(const CpaProduct& p) {
  const int n = static_cast<int>(p.dim());
  const LieAlgebraTable& g = p.algebra();
  CpaReport rep;

  // axiom (4): x.y = y.x, structural but re-checked
  for (int i = 0; i < n && rep.axiom4_ok; ++i)
    for (int j = i + 1; j < n && rep.axiom4_ok; ++j)
      for (int k = 0; k < n; ++k)
        if (p.coeff(i, j, k) != p.coeff(j, i, k)) {
          rep.axiom4_ok = false;
          Vec diff(n);
          for (int m = 0; m < n; ++m) diff[m] = p.coeff(i, j, m) - p.coeff(j, i, m);
          rep.axiom4_witness = AxiomWitness{i, j, k, std::move(diff)};
          break;
        }

  // axiom (5): [x,y].z = x.(y.z) - y.(x.z)
  for (int i = 0; i < n && rep.axiom5_ok; ++i)
    for (int j = i + 1; j < n && rep.axiom5_ok; ++j) {
      const Vec bij = sv_dense(n, g.bracket_pair(i, j));
      for (int k = 0; k < n; ++k) {
        const Vec ek = detail::unit_vec(n, k);
        Vec res = p.product(bij, ek);
        const Vec jk = p.product_basis(j, k);
        const Vec ik = p.product_basis(i, k);
        const Vec t1 = p.product(detail::unit_vec(n, i), jk);
        const Vec t2 = p.product(detail::unit_vec(n, j), ik);
        for (int m = 0; m < n; ++m) res[m] = res[m] - t1[m] + t2[m];
        if (!detail::vec_is_zero(res)) {
          rep.axiom5_ok = false;
          rep.axiom5_witness = AxiomWitness{i, j, k, std::move(res)};
          break;
        }
      }
    }

  // axiom (6): x.[y,z] = [x.y, z] + [y, x.z]
  for (int i = 0; i < n && rep.axiom6_ok; ++i)
    for (int j = 0; j < n && rep.axiom6_ok; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vec bjk = sv_dense(n, g.bracket_pair(j, k));
        Vec res = p.product(detail::unit_vec(n, i), bjk);
        const Vec xij = p.product_basis(i, j);
        const Vec xik = p.product_basis(i, k);
        const Vec t1 = g.bracket(xij, detail::unit_vec(n, k));
        const Vec t2 = g.bracket(detail::unit_vec(n, j), xik);
        for (int m = 0; m < n; ++m) res[m] = res[m] - t1[m] - t2[m];
        if (!detail::vec_is_zero(res)) {
          rep.axiom6_ok = false;
          rep.axiom6_witness = AxiomWitness{i, j, k, std::move(res)};
          break;
        }
      }

  const SeriesReport ser = series(g);
  rep.is_complete = is_complete(p);
  rep.is_central = true;
  for (int i = 0; i < n && rep.is_central; ++i)
    for (int j = i; j < n; ++j)
      if (!ser.center.member(p.product_basis(i, j))) {
        rep.is_central = false;
        break;
      }
  rep.gZ_is_zero = true;
  for (std::size_t r = 0; r < ser.center.dim() && rep.gZ_is_zero; ++r) {
    const Vec z = ser.center.basis_row(r);
    for (int i = 0; i < n; ++i)
      if (!detail::vec_is_zero(p.product(detail::unit_vec(n, i), z))) {
        rep.gZ_is_zero = false;
        break;
      }
  }
  rep.gComm_is_zero = true;
  for (std::size_t r = 0; r < ser.commutator.dim() && rep.gComm_is_zero; ++r) {
    const Vec c = ser.commutator.basis_row(r);
    for (int i = 0; i < n; ++i)
      if (!detail::vec_is_zero(p.product(detail::unit_vec(n, i), c))) {
        rep.gComm_is_zero = false;
        break;
      }
  }
  return rep;
}

/// Fitting-null component g_0 = intersection of ker(L(e_i)^dim).
inline Subspace fitting_null(const CpaProduct& p) {
  const std::size_t n = p.dim();
  if (n == 0) return Subspace::zero(0);
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix base = p.left_mult(detail::unit_vec(n, i));
    Matrix power = Matrix::identity(n);
    for (std::size_t e = n; e > 0; e >>= 1) {  // base^n by squaring
      if (e & 1) power = power * base;
      if (e > 1) base = base * base;
    }
    for (std::size_t r = 0; r < n; ++r) {
      SparseVec row;
      for (std::size_t c = 0; c < n; ++c)
        if (!power(r, c).is_zero()) row.emplace_back(static_cast<int>(c), power(r, c));
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  return nullspace_sparse(n, rows);
}

struct AnnihilationBound {
  std::size_t r;
  bool holds;
};

/// r = ceil((dim a + t - 1) / t); holds iff every length-r composition of
/// L(v), v over a basis of a, annihilates g.
inline AnnihilationBound annihilation_bound(const CpaProduct& p, const Subspace& a,
                                            std::size_t t) {
  const std::size_t n = p.dim();
  if (a.ambient_dim() != n) throw std::invalid_argument("annihilation_bound: ambient mismatch");
  if (t < 1) throw std::invalid_argument("annihilation_bound: need t >= 1");
  const SeriesReport ser = series(p.algebra());
  const Subspace gt = t - 1 < ser.lower_central.size() ? ser.lower_central[t - 1]
                                                       : ser.lower_central.back();
  if (!gt.contains(a))
    throw std::invalid_argument("annihilation_bound: a is not inside the lower central term g^t");
  AnnihilationBound out{};
  out.r = a.dim() == 0 ? 0 : (a.dim() + 2 * t - 2) / t;  // ceil((dim a + t - 1)/t)
  Subspace w = Subspace::full(n);
  for (std::size_t step = 0; step < out.r; ++step) {
    std::vector<Vec> images;
    for (std::size_t v = 0; v < a.dim(); ++v)
      for (std::size_t r = 0; r < w.dim(); ++r)
        images.push_back(p.product(a.basis_row(v), w.basis_row(r)));
    w = Subspace::from_vectors(n, images);
  }
  out.holds = out.r == 0 || w.dim() == 0;
  return out;
}

/// Central product on a free-nilpotent algebra: x_i . x_j = sum_k alpha[i][j][k] z_k
/// with z_k a basis of the center (the top-degree block).
inline CpaProduct construct_central(const FreeNilpotentPresentation& p,
                                    const std::vector<std::vector<std::vector<Rational>>>& alpha) {
  const int g = p.generators;
  const auto [z_begin, z_end] = p.center_block();
  const int zr = z_end - z_begin;
  if (static_cast<int>(alpha.size()) != g)
    throw std::invalid_argument("construct_central: coefficient shape mismatch");
  for (const auto& row : alpha) {
    if (static_cast<int>(row.size()) != g)
      throw std::invalid_argument("construct_central: coefficient shape mismatch");
    for (const auto& cell : row)
      if (static_cast<int>(cell.size()) != zr)
        throw std::invalid_argument("construct_central: coefficient shape mismatch");
  }
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      for (int k = 0; k < zr; ++k)
        if (alpha[i][j][k] != alpha[j][i][k])
          throw std::invalid_argument("construct_central: non-symmetric coefficients");
  std::map<std::pair<int, int>, SparseVec> entries;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      SparseVec v;
      for (int k = 0; k < zr; ++k)
        if (!alpha[i][j][k].is_zero()) v.emplace_back(z_begin + k, alpha[i][j][k]);
      if (!v.empty()) entries[{i, j}] = std::move(v);
    }
  return CpaProduct(p.table, entries);
}

/// On a nilpotent non-stem algebra, v.v = v for a central v outside the
/// commutator gives a CPA structure that is not complete. Refuses stem input.
inline CpaProduct construct_incomplete(const LieAlgebraTable& t) {
  const SeriesReport ser = series(t);
  if (!ser.nilpotency_class)
    throw std::invalid_argument("construct_incomplete: algebra is not nilpotent");
  if (ser.commutator.contains(ser.center))
    throw std::invalid_argument(
        "construct_incomplete: stem algebra, every CPA structure is complete");
  const std::size_t n = t.dim();
  // first center basis vector outside [g,g]
  Vec v;
  for (std::size_t r = 0; r < ser.center.dim(); ++r)
    if (!ser.commutator.member(ser.center.basis_row(r))) {
      v = ser.center.basis_row(r);
      break;
    }
  // complement ideal a = [g,g] + coordinate vectors avoiding span([g,g], v)
  std::vector<Vec> span_rows;
  for (std::size_t r = 0; r < ser.commutator.dim(); ++r)
    span_rows.push_back(ser.commutator.basis_row(r));
  span_rows.push_back(v);
  const Subspace comm_plus_v = Subspace::from_vectors(n, span_rows);
  std::vector<Vec> a_rows;
  for (std::size_t r = 0; r < ser.commutator.dim(); ++r)
    a_rows.push_back(ser.commutator.basis_row(r));
  std::vector<bool> pivot(n, false);
  for (std::size_t c : comm_plus_v.pivots()) pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c]) a_rows.push_back(detail::unit_vec(n, c));
  const Subspace a = Subspace::from_vectors(n, a_rows);
  if (a.dim() != n - 1 || a.member(v))
    throw std::logic_error("construct_incomplete: complement construction failed");
  // functional phi with phi(a) = 0, phi(v) = 1; product x.y = phi(x)phi(y) v
  Matrix m(n, n);
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = a.basis()(r, c);
  for (std::size_t c = 0; c < n; ++c) m(n - 1, c) = v[c];
  Vec rhs(n);
  rhs[n - 1] = Rational(1);
  const auto phi = solve_unique(m, rhs);
  if (!phi) throw std::logic_error("construct_incomplete: functional solve failed");
  std::vector<Rational> tensor(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((*phi)[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if ((*phi)[j].is_zero()) continue;
      const Rational c = (*phi)[i] * (*phi)[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) tensor[(i * n + j) * n + k] = c * v[k];
    }
  }
  return CpaProduct::from_tensor(t, std::move(tensor));
}

/// For a verified central structure on a stem algebra, g.Z(g) and g.[g,g]
/// must both vanish; a false return flags a contradiction.
inline bool central_implies_annihilation(const CpaProduct& p) {
  const CpaReport rep = verify(p);
  const AlgebraInvariants inv = invariants(p.algebra());
  if (!inv.is_stem)
    throw std::invalid_argument("central_implies_annihilation: algebra is not stem");
  if (!rep.axioms_ok() || !rep.is_central)
    throw std::invalid_argument("central_implies_annihilation: product is not a central CPA structure");
  return rep.gZ_is_zero && rep.gComm_is_zero;
}

}  // namespace nilcpa
