#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcpa/cpa_solve.hpp"
#include "nilcpa/free_nilpotent.hpp"
#include "nilcpa/groebner.hpp"
#include "nilcpa/lie_algebra.hpp"
#include "nilcpa/subspace.hpp"

namespace nilcpa {

/// The pair system [x,u] + [y,v] = 0, [x,v] + [y,w] = 0 with u, v, w ranging
/// over a domain subspace (the commutator by default). Solutions are stored
/// stacked, ambient dimension 3 dim(g).
struct PairSystem {
  Vec x, y;
  Subspace domain;
  Subspace solution;
};

namespace detail {

inline Subspace canonical_center_cubed(const Subspace& center, const Subspace& domain) {
  // central solutions live in (Z ∩ domain)^3
  const Subspace zd = intersect(center, domain);
  const std::size_t n = center.ambient_dim();
  std::vector<Vec> rows;
  for (int block = 0; block < 3; ++block)
    for (std::size_t r = 0; r < zd.dim(); ++r) {
      Vec v(3 * n);
      for (std::size_t c = 0; c < n; ++c)
        v[static_cast<std::size_t>(block) * n + c] = zd.basis()(r, c);
      rows.push_back(std::move(v));
    }
  return Subspace::from_vectors(3 * n, rows);
}

inline bool spans_modulo(const LieAlgebraTable& t, const Subspace& commutator,
                         const std::vector<Vec>& vectors) {
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < commutator.dim(); ++r) rows.push_back(commutator.basis_row(r));
  for (const auto& v : vectors) rows.push_back(v);
  return Subspace::from_vectors(t.dim(), rows).dim() == t.dim();
}

}  // namespace detail

inline PairSystem solve_pair(const LieAlgebraTable& t, const Vec& x, const Vec& y) {
  const SeriesReport rep = series(t);
  if (!rep.nilpotency_class) throw std::invalid_argument("solve_pair: algebra is not nilpotent");
  const std::size_t n = t.dim();
  if (t.dim() - rep.commutator.dim() != 2)
    throw std::invalid_argument("solve_pair: need dim g/[g,g] = 2");
  if (!detail::spans_modulo(t, rep.commutator, {x, y}))
    throw std::invalid_argument("solve_pair: (x, y) is not a generating pair");

  const Subspace domain = rep.commutator;
  const std::size_t r = domain.dim();
  const Matrix adx = t.ad(x), ady = t.ad(y);
  // columns: images of the domain basis under ad(x), ad(y)
  Matrix axb(n, r), ayb(n, r);
  for (std::size_t c = 0; c < r; ++c) {
    const Vec img_x = adx * domain.basis_row(c);
    const Vec img_y = ady * domain.basis_row(c);
    for (std::size_t i = 0; i < n; ++i) {
      axb(i, c) = img_x[i];
      ayb(i, c) = img_y[i];
    }
  }
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec top, bottom;
    for (std::size_t c = 0; c < r; ++c) {
      if (!axb(i, c).is_zero()) top.emplace_back(static_cast<int>(c), axb(i, c));
      if (!ayb(i, c).is_zero()) top.emplace_back(static_cast<int>(r + c), ayb(i, c));
      if (!axb(i, c).is_zero()) bottom.emplace_back(static_cast<int>(r + c), axb(i, c));
      if (!ayb(i, c).is_zero()) bottom.emplace_back(static_cast<int>(2 * r + c), ayb(i, c));
    }
    sv_normalize(top);
    sv_normalize(bottom);
    if (!top.empty()) rows.push_back(std::move(top));
    if (!bottom.empty()) rows.push_back(std::move(bottom));
  }
  const Subspace coeff_solutions = nullspace_sparse(3 * r, rows);
  // map coordinate triples (a, b, c) to ambient stacked (u, v, w)
  std::vector<Vec> ambient_rows;
  for (std::size_t row = 0; row < coeff_solutions.dim(); ++row) {
    Vec v(3 * n);
    for (int block = 0; block < 3; ++block)
      for (std::size_t c = 0; c < r; ++c) {
        const Rational& coef = coeff_solutions.basis()(row, static_cast<std::size_t>(block) * r + c);
        if (coef.is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i)
          v[static_cast<std::size_t>(block) * n + i] += coef * domain.basis()(c, i);
      }
    ambient_rows.push_back(std::move(v));
  }
  return PairSystem{x, y, domain, Subspace::from_vectors(3 * n, ambient_rows)};
}

/// True iff every solution triple lies in the center slice-wise.
inline bool pair_solutions_central(const PairSystem& ps, const Subspace& center) {
  const std::size_t n = center.ambient_dim();
  for (std::size_t r = 0; r < ps.solution.dim(); ++r) {
    const Vec row = ps.solution.basis_row(r);
    for (int block = 0; block < 3; ++block) {
      Vec slice(n);
      for (std::size_t i = 0; i < n; ++i) slice[i] = row[static_cast<std::size_t>(block) * n + i];
      if (!center.member(slice)) return false;
    }
  }
  return true;
}

enum class PFVerdict { true_all, true_for_tested_pairs, false_with_witness };

struct PFWitness {
  Vec x, y;
  Vec u, v, w;  // a non-central solution triple
};

struct PropertyFReport {
  PFVerdict verdict = PFVerdict::true_for_tested_pairs;
  std::optional<PFWitness> witness;
  int pairs_tested = 0;
  Rational z_ratio;
  std::size_t solution_dim = 0;  // for the canonical pair
  std::size_t central_dim = 0;
};

enum class PairPolicy {
  canonical_transitive,  // one canonical pair decides (free-nilpotent inputs)
  sampled                // canonical pair plus seeded random pairs
};

inline PropertyFReport has_property_f(const LieAlgebraTable& t, PairPolicy policy,
                                      std::uint64_t seed = 12345, int extra_pairs = 25) {
  const SeriesReport rep = series(t);
  if (!rep.nilpotency_class)
    throw std::invalid_argument("has_property_f: algebra is not nilpotent");
  if (t.dim() - rep.commutator.dim() != 2)
    throw std::invalid_argument("has_property_f: need dim g/[g,g] = 2");
  const std::size_t n = t.dim();

  // canonical pair: coordinate vectors on the free columns of the commutator
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : rep.commutator.pivots()) is_pivot[c] = true;
  Vec cx(n), cy(n);
  int found = 0;
  for (std::size_t c = 0; c < n && found < 2; ++c) {
    if (is_pivot[c]) continue;
    (found == 0 ? cx : cy)[c] = Rational(1);
    ++found;
  }

  std::vector<std::pair<Vec, Vec>> pairs{{cx, cy}};
  if (policy == PairPolicy::sampled) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> small(-3, 3);
    std::uniform_int_distribution<std::size_t> comm_row(0, rep.commutator.dim() > 0
                                                               ? rep.commutator.dim() - 1
                                                               : 0);
    while (static_cast<int>(pairs.size()) < 1 + extra_pairs) {
      long a = small(rng), b = small(rng), c = small(rng), d = small(rng);
      if (a * d - b * c == 0) continue;  // must stay a generating pair
      Vec nx(n), ny(n);
      for (std::size_t i = 0; i < n; ++i) {
        nx[i] = Rational(a) * cx[i] + Rational(b) * cy[i];
        ny[i] = Rational(c) * cx[i] + Rational(d) * cy[i];
      }
      if (rep.commutator.dim() > 0) {
        for (int k = 0; k < 2; ++k) {
          const Vec row = rep.commutator.basis_row(comm_row(rng));
          const Rational s1(small(rng)), s2(small(rng));
          for (std::size_t i = 0; i < n; ++i) {
            nx[i] += s1 * row[i];
            ny[i] += s2 * row[i];
          }
        }
      }
      pairs.emplace_back(std::move(nx), std::move(ny));
    }
  }

  PropertyFReport out;
  out.z_ratio = Rational(static_cast<long>(rep.center.dim()), static_cast<long>(n));
  const Subspace central = detail::canonical_center_cubed(rep.center, rep.commutator);
  for (const auto& [px, py] : pairs) {
    const PairSystem ps = solve_pair(t, px, py);
    ++out.pairs_tested;
    if (out.pairs_tested == 1) {
      out.solution_dim = ps.solution.dim();
      out.central_dim = central.dim();
    }
    if (!pair_solutions_central(ps, rep.center)) {
      out.verdict = PFVerdict::false_with_witness;
      for (std::size_t r = 0; r < ps.solution.dim(); ++r) {
        const Vec row = ps.solution.basis_row(r);
        Vec u(n), v(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
          u[i] = row[i];
          v[i] = row[n + i];
          w[i] = row[2 * n + i];
        }
        if (!rep.center.member(u) || !rep.center.member(v) || !rep.center.member(w)) {
          out.witness = PFWitness{px, py, std::move(u), std::move(v), std::move(w)};
          break;
        }
      }
      break;
    }
  }
  if (out.verdict != PFVerdict::false_with_witness)
    out.verdict =
        policy == PairPolicy::canonical_transitive ? PFVerdict::true_all : PFVerdict::true_for_tested_pairs;

  // the dimension-count obstruction must never contradict the verdict
  if (out.z_ratio < Rational(1, 3) && out.verdict != PFVerdict::false_with_witness)
    throw std::logic_error("has_property_f: z(g) < 1/3 requires a non-central solution");
  return out;
}

struct Lemma53Report {
  Rational z_ratio;
  bool obstructed;  // z < 1/3 rules property F out
};

inline Lemma53Report lemma53_bound(const LieAlgebraTable& t) {
  const SeriesReport rep = series(t);
  if (!rep.nilpotency_class)
    throw std::invalid_argument("lemma53_bound: algebra is not nilpotent");
  if (t.dim() - rep.commutator.dim() != 2)
    throw std::invalid_argument("lemma53_bound: need dim g/[g,g] = 2");
  Lemma53Report out{Rational(static_cast<long>(rep.center.dim()), static_cast<long>(t.dim())),
                    false};
  out.obstructed = out.z_ratio < Rational(1, 3);
  return out;
}

/// The grid system [u_{ij}, x_k] + [x_j, u_{ik}] = 0 over all ordered triples,
/// with symmetric unknowns u_{ij} = u_{ji} in the commutator.
struct GridSystem {
  std::vector<Vec> generators;
  Subspace domain;
  Subspace solution;  // stacked blocks u_{11}, u_{12}, ..., ambient P dim(g)
  int blocks = 0;     // P = g(g+1)/2
};

inline GridSystem solve_grid(const LieAlgebraTable& t, const std::vector<Vec>& generators) {
  const SeriesReport rep = series(t);
  if (!rep.nilpotency_class) throw std::invalid_argument("solve_grid: algebra is not nilpotent");
  const std::size_t g = generators.size();
  if (g < 3) throw std::invalid_argument("solve_grid: need at least 3 generators");
  if (t.dim() - rep.commutator.dim() != g)
    throw std::invalid_argument("solve_grid: generator count must match dim g/[g,g]");
  if (!detail::spans_modulo(t, rep.commutator, generators))
    throw std::invalid_argument("solve_grid: insufficient generators");

  const std::size_t n = t.dim();
  const Subspace domain = rep.commutator;
  const std::size_t r = domain.dim();
  const int blocks = static_cast<int>(g * (g + 1) / 2);
  auto block_of = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return static_cast<int>(i * g - i * (i + 1) / 2 + j);
  };

  std::vector<Matrix> ad_b;  // ad(x_k) restricted to the domain basis
  for (std::size_t k = 0; k < g; ++k) {
    const Matrix adk = t.ad(generators[k]);
    Matrix m(n, r);
    for (std::size_t c = 0; c < r; ++c) {
      const Vec img = adk * domain.basis_row(c);
      for (std::size_t i = 0; i < n; ++i) m(i, c) = img[i];
    }
    ad_b.push_back(std::move(m));
  }

  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t k = 0; k < g; ++k) {
        // [u_{ij}, x_k] + [x_j, u_{ik}] = -ad(x_k) u_{ij} + ad(x_j) u_{ik}
        const int bij = block_of(i, j), bik = block_of(i, k);
        for (std::size_t m = 0; m < n; ++m) {
          SparseVec row;
          for (std::size_t c = 0; c < r; ++c) {
            if (!ad_b[k](m, c).is_zero())
              row.emplace_back(bij * static_cast<int>(r) + static_cast<int>(c), -ad_b[k](m, c));
            if (!ad_b[j](m, c).is_zero())
              row.emplace_back(bik * static_cast<int>(r) + static_cast<int>(c), ad_b[j](m, c));
          }
          sv_normalize(row);
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }

  const Subspace coeff_solutions = nullspace_sparse(static_cast<std::size_t>(blocks) * r, rows);
  std::vector<Vec> ambient_rows;
  for (std::size_t row = 0; row < coeff_solutions.dim(); ++row) {
    Vec v(static_cast<std::size_t>(blocks) * n);
    for (int b = 0; b < blocks; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        const Rational& coef =
            coeff_solutions.basis()(row, static_cast<std::size_t>(b) * r + c);
        if (coef.is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i)
          v[static_cast<std::size_t>(b) * n + i] += coef * domain.basis()(c, i);
      }
    ambient_rows.push_back(std::move(v));
  }
  return GridSystem{generators, domain, Subspace::from_vectors(static_cast<std::size_t>(blocks) * n,
                                                               ambient_rows),
                    blocks};
}

/// The space of all center-valued assignments, for exact comparison with the
/// grid solution space.
inline Subspace grid_central_space(const GridSystem& gs, const Subspace& center) {
  const std::size_t n = center.ambient_dim();
  const Subspace zd = intersect(center, gs.domain);
  std::vector<Vec> rows;
  for (int b = 0; b < gs.blocks; ++b)
    for (std::size_t r = 0; r < zd.dim(); ++r) {
      Vec v(static_cast<std::size_t>(gs.blocks) * n);
      for (std::size_t c = 0; c < n; ++c) v[static_cast<std::size_t>(b) * n + c] = zd.basis()(r, c);
      rows.push_back(std::move(v));
    }
  return Subspace::from_vectors(static_cast<std::size_t>(gs.blocks) * n, rows);
}

struct ConjectureClassResult {
  int nil_class = 0;
  std::size_t dim = 0;
  PFVerdict property_f = PFVerdict::true_for_tested_pairs;
  std::size_t solution_dim = 0;
  std::size_t central_dim = 0;
  bool base_case_ran = false;
  Trilean base_case_central = Trilean::unknown;
  std::size_t base_case_parameters = 0;
  bool budget_exceeded = false;
  std::string error;
  double seconds = 0.0;
};

struct ConjectureReport {
  int generators = 2;
  int c_max = 0;
  std::vector<ConjectureClassResult> classes;
  std::string method_note;

  bool all_central() const {
    for (const auto& c : classes) {
      if (!c.error.empty()) return false;
      if (c.property_f != PFVerdict::true_all) return false;
      if (c.base_case_ran && c.base_case_central != Trilean::yes) return false;
    }
    return true;
  }
};

/// Scans F_{2,c} for 3 <= c <= c_max: property F on the canonical generating
/// pair (transitivity covers all pairs on a free-nilpotent algebra), plus the
/// full solver pipeline at the base class c = 3.
inline ConjectureReport conjecture_scan(int generators, int c_max, const Budget& budget = {}) {
  if (generators != 2) throw std::invalid_argument("conjecture_scan: only g = 2 is implemented");
  if (c_max < 3) throw std::invalid_argument("conjecture_scan: need c_max >= 3");
  ConjectureReport rep;
  rep.c_max = c_max;
  rep.method_note =
      "Scheme: products of the two generators land in the commutator and satisfy the pair "
      "system [x,u]+[y,v]=0, [x,v]+[y,w]=0; central pair-system solutions push the product "
      "values into the top degree term, which settles the class from the base case upward. "
      "Base case c = 3 is certified by the full solver; higher classes by the canonical "
      "generating pair (the automorphism group is transitive on generating pairs).";
  for (int c = 3; c <= c_max; ++c) {
    ConjectureClassResult row;
    row.nil_class = c;
    const auto start = std::chrono::steady_clock::now();
    try {
      const FreeNilpotentPresentation p = build_free_nilpotent(2, c);
      row.dim = p.table.dim();
      const PropertyFReport pf = has_property_f(p.table, PairPolicy::canonical_transitive);
      row.property_f = pf.verdict;
      row.solution_dim = pf.solution_dim;
      row.central_dim = pf.central_dim;
      if (c == 3) {
        const SolutionVariety v = solve_cpa(p.table, budget);
        const CentralityResult central = variety_is_central(v, series(p.table).center, budget);
        row.base_case_ran = true;
        row.base_case_central = central.verdict;
        row.base_case_parameters = v.free_parameters;
        if (v.status == VarietyStatus::budget_exceeded || central.verdict == Trilean::unknown)
          row.budget_exceeded = true;
      }
    } catch (const BudgetExceeded& e) {
      row.budget_exceeded = true;
      row.error = e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.classes.push_back(std::move(row));
  }
  return rep;
}

}  // namespace nilcpa
