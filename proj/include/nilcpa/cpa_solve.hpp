#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nilcpa/cpa.hpp"
#include "nilcpa/groebner.hpp"
#include "nilcpa/lie_algebra.hpp"
#include "nilcpa/poly.hpp"
#include "nilcpa/subspace.hpp"

namespace nilcpa {

/// Index bookkeeping for the tensor unknowns t[i][j][k] with i <= j.
struct CpaUnknowns {
  int dim = 0;

  int pair_count() const { return dim * (dim + 1) / 2; }
  int count() const { return pair_count() * dim; }

  int pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * dim - i * (i + 1) / 2 + j;
  }
  int index(int i, int j, int k) const { return pair_index(i, j) * dim + k; }

  // unknown -> ((i, j), k) with i <= j
  std::pair<std::pair<int, int>, int> decode(int u) const {
    const int pr = u / dim, k = u % dim;
    int i = 0, acc = 0;
    while (acc + (dim - i) <= pr) acc += dim - i++;
    return {{i, i + (pr - acc)}, k};
  }
};

/// Axiom constraints over the unknown product tensor: axiom (6) rows are
/// linear, axiom (5) residuals are polynomials of degree <= 2.
struct ConstraintSystem {
  CpaUnknowns unknowns;
  std::vector<SparseVec> linear;
  std::vector<MultiPoly> quadratic;
};

inline ConstraintSystem assemble_constraints(const LieAlgebraTable& t) {
  const int n = static_cast<int>(t.dim());
  ConstraintSystem cs;
  cs.unknowns.dim = n;
  const CpaUnknowns& u = cs.unknowns;
  const std::uint32_t nvars = static_cast<std::uint32_t>(u.count());

  // axiom (6): x_i . [x_j, x_k] - [x_i . x_j, x_k] - [x_j, x_i . x_k] = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::map<int, std::map<int, Rational>> rows;  // coordinate m -> unknown -> coeff
        for (const auto& [w, c] : t.bracket_pair(j, k))
          for (int m = 0; m < n; ++m) rows[m][u.index(i, w, m)] += c;
        for (int w = 0; w < n; ++w) {
          // -[x_i.x_j, x_k] contributes -t[i][j][w] c_{wk}^m
          for (const auto& [m, c] : t.bracket_basis(w, k)) rows[m][u.index(i, j, w)] -= c;
          // -[x_j, x_i.x_k] contributes -t[i][k][w] c_{jw}^m
          for (const auto& [m, c] : t.bracket_basis(j, w)) rows[m][u.index(i, k, w)] -= c;
        }
        for (auto& [m, row] : rows) {
          SparseVec sv;
          for (auto& [idx, c] : row)
            if (!c.is_zero()) sv.emplace_back(idx, c);
          if (!sv.empty()) cs.linear.push_back(std::move(sv));
        }
      }

  // axiom (5): [x_i, x_j] . x_k - x_i . (x_j . x_k) + x_j . (x_i . x_k) = 0
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          std::vector<MultiPoly::Term> terms;
          for (const auto& [w, c] : t.bracket_pair(i, j))
            terms.emplace_back(Monomial::var(static_cast<std::uint32_t>(u.index(w, k, m))), c);
          for (int w = 0; w < n; ++w) {
            terms.emplace_back(Monomial::var(static_cast<std::uint32_t>(u.index(j, k, w))) *
                                   Monomial::var(static_cast<std::uint32_t>(u.index(i, w, m))),
                               Rational(-1));
            terms.emplace_back(Monomial::var(static_cast<std::uint32_t>(u.index(i, k, w))) *
                                   Monomial::var(static_cast<std::uint32_t>(u.index(j, w, m))),
                               Rational(1));
          }
          MultiPoly p = MultiPoly::from_terms(nvars, std::move(terms));
          if (!p.is_zero()) cs.quadratic.push_back(std::move(p));
        }
  return cs;
}

enum class VarietyStatus { linear_only, groebner_done, budget_exceeded };

/// All CPA structures on an algebra after eliminating the linear axioms:
/// tensors t = P s over free parameters s, constrained by the quadratic ideal.
struct SolutionVariety {
  CpaUnknowns unknowns;
  Matrix parametrization;  // count x free_parameters
  std::size_t free_parameters = 0;
  std::vector<MultiPoly> quadratic_ideal;  // in the parameters s
  std::vector<MultiPoly> groebner_basis;   // filled when status == groebner_done
  VarietyStatus status = VarietyStatus::linear_only;
  std::uint64_t spairs = 0;

  std::vector<Rational> tensor_at(const std::vector<Rational>& params) const {
    std::vector<Rational> t(static_cast<std::size_t>(unknowns.count()));
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t s = 0; s < free_parameters; ++s)
        if (!parametrization(a, s).is_zero() && !params[s].is_zero())
          t[a] += parametrization(a, s) * params[s];
    return t;
  }

  /// The linear form lambda_a(s) expressing unknown a on the variety.
  MultiPoly coordinate_form(int a) const {
    std::vector<MultiPoly::Term> terms;
    for (std::size_t s = 0; s < free_parameters; ++s)
      if (!parametrization(static_cast<std::size_t>(a), s).is_zero())
        terms.emplace_back(Monomial::var(static_cast<std::uint32_t>(s)),
                           parametrization(static_cast<std::size_t>(a), s));
    return MultiPoly::from_terms(static_cast<std::uint32_t>(free_parameters), std::move(terms));
  }

  /// Full product tensor (dim^3, both orders) at a parameter point.
  std::vector<Rational> full_tensor_at(const std::vector<Rational>& params) const {
    const int n = unknowns.dim;
    const std::vector<Rational> packed = tensor_at(params);
    std::vector<Rational> full(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          full[(static_cast<std::size_t>(i) * n + j) * n + k] =
              packed[static_cast<std::size_t>(unknowns.index(i, j, k))];
    return full;
  }
};

namespace detail {

// Substitutes the parametrization of `space` (rows = basis of the solution
// space over the ambient unknowns) into a polynomial over those unknowns.
inline MultiPoly substitute_forms(const MultiPoly& q, const std::vector<MultiPoly>& forms,
                                  std::uint32_t nparams) {
  MultiPoly r(nparams);
  for (const auto& [mono, c] : q.terms()) {
    MultiPoly term = MultiPoly::constant(nparams, c);
    for (const auto& [var, exp] : mono.exps())
      for (std::uint32_t e = 0; e < exp; ++e) term = term * forms[var];
    r += term;
  }
  return r;
}

}  // namespace detail

inline SolutionVariety solve_cpa(const LieAlgebraTable& t, const Budget& budget = {}) {
  const ConstraintSystem cs = assemble_constraints(t);
  SolutionVariety v;
  v.unknowns = cs.unknowns;
  const std::size_t ambient = static_cast<std::size_t>(cs.unknowns.count());

  // The quadratic residuals imply further linear relations (directly, or as
  // degree-1 elements of their Groebner basis). Fold those back into the
  // linear part until the ideal is purely quadratic on the variety; the
  // solution space stays a canonical RREF subspace throughout.
  Subspace space = nullspace_sparse(ambient, cs.linear);
  std::vector<MultiPoly> quadratics;
  for (;;) {
    const std::uint32_t nparams = static_cast<std::uint32_t>(space.dim());
    std::vector<MultiPoly> forms(ambient);
    for (std::size_t a = 0; a < ambient; ++a) {
      std::vector<MultiPoly::Term> terms;
      for (std::size_t s = 0; s < space.dim(); ++s)
        if (!space.basis()(s, a).is_zero())
          terms.emplace_back(Monomial::var(static_cast<std::uint32_t>(s)), space.basis()(s, a));
      forms[a] = MultiPoly::from_terms(nparams, std::move(terms));
    }
    quadratics.clear();
    std::vector<SparseVec> linear_rows;
    for (const auto& q : cs.quadratic) {
      MultiPoly r = detail::substitute_forms(q, forms, nparams);
      if (r.is_zero()) continue;
      r.make_primitive();
      if (r.degree() <= 1) {
        SparseVec row;
        for (const auto& [mono, c] : r.terms())
          row.emplace_back(static_cast<int>(mono.exps().front().first), c);
        sv_normalize(row);
        linear_rows.push_back(std::move(row));
      } else {
        quadratics.push_back(std::move(r));
      }
    }
    std::sort(quadratics.begin(), quadratics.end(), [](const MultiPoly& a, const MultiPoly& b) {
      if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
      return grevlex_less(a.leading_monomial(), b.leading_monomial());
    });
    quadratics.erase(std::unique(quadratics.begin(), quadratics.end()), quadratics.end());

    if (linear_rows.empty()) {
      if (quadratics.empty()) {
        v.status = VarietyStatus::linear_only;
        break;
      }
      GroebnerResult gb = buchberger(quadratics, budget);
      v.spairs += gb.spairs_processed;
      if (gb.status == GbStatus::budget_exceeded) {
        v.status = VarietyStatus::budget_exceeded;
        break;
      }
      for (const auto& f : gb.basis)
        if (f.degree() <= 1) {
          SparseVec row;
          for (const auto& [mono, c] : f.terms())
            row.emplace_back(static_cast<int>(mono.exps().front().first), c);
          sv_normalize(row);
          linear_rows.push_back(std::move(row));
        }
      if (linear_rows.empty()) {
        v.status = VarietyStatus::groebner_done;
        v.groebner_basis = std::move(gb.basis);
        break;
      }
      // degree-1 basis elements vanish on the variety: absorb and start over
    }
    const Subspace param_kernel = nullspace_sparse(space.dim(), linear_rows);
    std::vector<Vec> new_basis;
    for (std::size_t r = 0; r < param_kernel.dim(); ++r) {
      Vec row(ambient);
      for (std::size_t s = 0; s < space.dim(); ++s) {
        const Rational& c = param_kernel.basis()(r, s);
        if (c.is_zero()) continue;
        for (std::size_t a = 0; a < ambient; ++a)
          if (!space.basis()(s, a).is_zero()) row[a] += c * space.basis()(s, a);
      }
      new_basis.push_back(std::move(row));
    }
    space = Subspace::from_vectors(ambient, new_basis);
  }

  v.free_parameters = space.dim();
  v.parametrization = space.basis().transpose();
  v.quadratic_ideal = std::move(quadratics);
  return v;
}

struct VarietyWitness {
  std::vector<Rational> params;
  std::vector<Rational> full_tensor;  // dim^3 layout, feeds CpaProduct::from_tensor
};

struct CentralityResult {
  Trilean verdict = Trilean::unknown;
  std::optional<VarietyWitness> witness;             // non-central point
  std::optional<VarietyWitness> witness_gz_nonzero;  // point with g . Z(g) != 0
};

namespace detail {

// Residual linear forms of t[i][j][.] after reduction against the center:
// all of them vanish at s iff the product at s is central.
inline std::vector<MultiPoly> noncentral_forms(const SolutionVariety& v, const Subspace& center) {
  const int n = v.unknowns.dim;
  std::vector<MultiPoly> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<MultiPoly> coords(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k)
        coords[static_cast<std::size_t>(k)] = v.coordinate_form(v.unknowns.index(i, j, k));
      for (std::size_t r = 0; r < center.dim(); ++r) {
        const std::size_t p = center.pivots()[r];
        const MultiPoly f = coords[p];
        if (f.is_zero()) continue;
        for (std::size_t c = p; c < static_cast<std::size_t>(n); ++c)
          if (!center.basis()(r, c).is_zero()) coords[c] -= f * center.basis()(r, c);
      }
      for (auto& f : coords)
        if (!f.is_zero()) {
          f.make_primitive();
          out.push_back(std::move(f));
        }
    }
  std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) {
    if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
    return grevlex_less(a.leading_monomial(), b.leading_monomial());
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool tensor_is_central(const SolutionVariety& v, const Subspace& center,
                              const std::vector<Rational>& packed) {
  const int n = v.unknowns.dim;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec prod(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k)
        prod[static_cast<std::size_t>(k)] = packed[static_cast<std::size_t>(v.unknowns.index(i, j, k))];
      if (!center.member(prod)) return false;
    }
  return true;
}

inline bool tensor_has_gz_nonzero(const SolutionVariety& v, const Subspace& center,
                                  const std::vector<Rational>& packed) {
  const int n = v.unknowns.dim;
  for (std::size_t r = 0; r < center.dim(); ++r) {
    const Vec z = center.basis_row(r);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        Rational acc(0);
        for (int j = 0; j < n; ++j)
          if (!z[static_cast<std::size_t>(j)].is_zero())
            acc += z[static_cast<std::size_t>(j)] *
                   packed[static_cast<std::size_t>(v.unknowns.index(i, j, k))];
        if (!acc.is_zero()) return true;
      }
    }
  }
  return false;
}

// Enumerates sparse rational points on the variety by increasing support and
// height, looking for a non-central witness (and one with g.Z(g) != 0).
inline void witness_search(const SolutionVariety& v, const Subspace& center, const Budget& budget,
                           CentralityResult& res) {
  const std::size_t s = v.free_parameters;
  if (s == 0) return;
  const std::vector<Rational> values{Rational(1), Rational(-1), Rational(2), Rational(-2)};
  std::uint64_t tried = 0;
  std::vector<Rational> point(s);

  auto consider = [&](const std::vector<Rational>& pt) -> bool {
    ++tried;
    for (const auto& q : v.quadratic_ideal)
      if (!q.eval(pt).is_zero()) return false;
    const std::vector<Rational> packed = v.tensor_at(pt);
    const bool central = tensor_is_central(v, center, packed);
    if (!central && !res.witness)
      res.witness = VarietyWitness{pt, v.full_tensor_at(pt)};
    if (tensor_has_gz_nonzero(v, center, packed) && !res.witness_gz_nonzero)
      res.witness_gz_nonzero = VarietyWitness{pt, v.full_tensor_at(pt)};
    return res.witness && res.witness_gz_nonzero;
  };

  auto next_combination = [&](std::vector<std::size_t>& idx) -> bool {
    const std::size_t k = idx.size();
    for (std::size_t pos = k; pos-- > 0;) {
      if (idx[pos] < s - k + pos) {
        ++idx[pos];
        for (std::size_t q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        return true;
      }
    }
    return false;
  };

  const std::size_t max_support = std::min<std::size_t>(4, s);
  for (std::size_t support = 1; support <= max_support; ++support) {
    std::vector<std::size_t> idx(support);
    for (std::size_t i = 0; i < support; ++i) idx[i] = i;
    do {
      std::vector<std::size_t> val_sel(support, 0);
      for (;;) {
        if (tried >= budget.max_witness_points) return;
        std::fill(point.begin(), point.end(), Rational(0));
        for (std::size_t i = 0; i < support; ++i) point[idx[i]] = values[val_sel[i]];
        if (consider(point)) return;
        std::size_t pos = 0;
        while (pos < support && ++val_sel[pos] == values.size()) val_sel[pos++] = 0;
        if (pos == support) break;
      }
    } while (next_combination(idx));
  }
}

}  // namespace detail

/// Decides whether every point of the variety is central: yes when each
/// residual non-central form lies in the radical of the quadratic ideal, no
/// with a rational witness, unknown on budget exhaustion.
inline CentralityResult variety_is_central(const SolutionVariety& v, const Subspace& center,
                                           const Budget& budget = {}) {
  CentralityResult res;
  const std::vector<MultiPoly> forms = detail::noncentral_forms(v, center);
  if (forms.empty()) {
    // the linear part already pins every product into the center
    res.verdict = Trilean::yes;
    return res;
  }

  // radical membership of every noncentral form against the quadratic ideal
  auto radical_pass = [&]() -> Trilean {
    const std::vector<MultiPoly>& ideal =
        v.status == VarietyStatus::groebner_done ? v.groebner_basis : v.quadratic_ideal;
    bool unknown_seen = false;
    for (const auto& f : forms) {
      const Trilean r = radical_member(f, ideal, budget);
      if (r == Trilean::no) return Trilean::no;
      if (r == Trilean::unknown) unknown_seen = true;
    }
    return unknown_seen ? Trilean::unknown : Trilean::yes;
  };

  if (v.status == VarietyStatus::groebner_done) {
    // a completed basis makes the ideal-theoretic test cheap and definite
    const Trilean all_central = radical_pass();
    if (all_central == Trilean::yes) {
      res.verdict = Trilean::yes;
      return res;
    }
    detail::witness_search(v, center, budget, res);
    if (res.witness) res.verdict = Trilean::no;
    return res;
  }

  // incomplete ideal processing: a rational witness is the only cheap verdict
  detail::witness_search(v, center, budget, res);
  if (res.witness) {
    res.verdict = Trilean::no;
    return res;
  }
  if (radical_pass() == Trilean::yes) res.verdict = Trilean::yes;
  return res;
}

}  // namespace nilcpa
