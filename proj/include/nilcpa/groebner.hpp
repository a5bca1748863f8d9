#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "nilcpa/poly.hpp"

namespace nilcpa {

/// Resource limits for polynomial and search computations. Exceeding a budget
/// yields an explicit "unknown"/"budget exceeded" status, never a wrong answer.
struct Budget {
  std::uint64_t max_spairs = 10000;
  std::uint32_t max_degree = 40;
  double max_seconds = 0.0;  // 0 = unlimited
  std::uint64_t max_witness_points = 200000;
};

enum class GbStatus { done, budget_exceeded };

struct GroebnerResult {
  GbStatus status = GbStatus::done;
  std::vector<MultiPoly> basis;
  std::uint64_t spairs_processed = 0;
};

enum class Trilean { yes, no, unknown };

/// Full normal form of f against G (deterministic: first divisor in G order).
inline MultiPoly normal_form(MultiPoly f, const std::vector<MultiPoly>& basis) {
  MultiPoly remainder(f.nvars());
  while (!f.is_zero()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (g.leading_monomial().divides(f.leading_monomial())) {
        const Monomial q = f.leading_monomial().divide(g.leading_monomial());
        f -= g.scaled_by(q, f.leading_coeff() / g.leading_coeff());
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      remainder += MultiPoly::from_terms(f.nvars(), {{f.leading_monomial(), f.leading_coeff()}});
      f -= MultiPoly::from_terms(f.nvars(), {{f.leading_monomial(), f.leading_coeff()}});
    }
  }
  return remainder;
}

namespace detail {

inline MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  MultiPoly s = f.scaled_by(l.divide(f.leading_monomial()), Rational(1) / f.leading_coeff());
  s -= g.scaled_by(l.divide(g.leading_monomial()), Rational(1) / g.leading_coeff());
  return s;
}

struct PairEntry {
  std::uint32_t deg;
  Monomial l;
  std::size_t i, j;
};

inline bool pair_before(const PairEntry& a, const PairEntry& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  if (!(a.l == b.l)) return grevlex_less(a.l, b.l);
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

struct PairAfter {
  bool operator()(const PairEntry& a, const PairEntry& b) const { return pair_before(b, a); }
};

}  // namespace detail

/// Buchberger's algorithm with the coprime and chain criteria; returns the
/// reduced Groebner basis (unique under grevlex) or stops on budget.
inline GroebnerResult buchberger(std::vector<MultiPoly> gens, const Budget& budget = {}) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto out_of_time = [&]() {
    return budget.max_seconds > 0.0 &&
           std::chrono::duration<double>(clock::now() - start).count() > budget.max_seconds;
  };

  GroebnerResult res;
  std::vector<MultiPoly> pre;
  for (auto& f : gens) {
    if (f.is_zero()) continue;
    f.make_primitive();
    pre.push_back(std::move(f));
  }
  std::sort(pre.begin(), pre.end(), [](const MultiPoly& a, const MultiPoly& b) {
    if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
    return grevlex_less(a.leading_monomial(), b.leading_monomial());
  });
  pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
  // interreduce the input: redundant generators only slow the pair queue down
  std::vector<MultiPoly> g;
  for (auto& f : pre) {
    MultiPoly r = normal_form(std::move(f), g);
    if (r.is_zero()) continue;
    r.make_primitive();
    g.push_back(std::move(r));
  }

  std::priority_queue<detail::PairEntry, std::vector<detail::PairEntry>, detail::PairAfter> pending;
  std::set<std::pair<std::size_t, std::size_t>> done_pairs;
  auto push_pair = [&](std::size_t i, std::size_t j) {
    const Monomial l = lcm(g[i].leading_monomial(), g[j].leading_monomial());
    pending.push(detail::PairEntry{l.degree(), l, i, j});
  };
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) push_pair(i, j);

  while (!pending.empty()) {
    if (res.spairs_processed >= budget.max_spairs || out_of_time()) {
      res.status = GbStatus::budget_exceeded;
      res.basis = std::move(g);
      return res;
    }
    const detail::PairEntry pair = pending.top();
    pending.pop();
    ++res.spairs_processed;
    done_pairs.insert({pair.i, pair.j});

    if (coprime(g[pair.i].leading_monomial(), g[pair.j].leading_monomial())) continue;
    // chain criterion: some g_k divides the lcm and both side pairs are done
    bool skip = false;
    for (std::size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (!g[k].leading_monomial().divides(pair.l)) continue;
      const auto ik = std::minmax(pair.i, k);
      const auto jk = std::minmax(pair.j, k);
      if (done_pairs.count({ik.first, ik.second}) && done_pairs.count({jk.first, jk.second}))
        skip = true;
    }
    if (skip) continue;

    MultiPoly s = normal_form(detail::s_polynomial(g[pair.i], g[pair.j]), g);
    if (s.is_zero()) continue;
    if (s.degree() > budget.max_degree) {
      res.status = GbStatus::budget_exceeded;
      res.basis = std::move(g);
      return res;
    }
    s.make_primitive();
    g.push_back(std::move(s));
    for (std::size_t i = 0; i + 1 < g.size(); ++i) push_pair(i, g.size() - 1);
  }

  // interreduce to the unique reduced basis
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::vector<MultiPoly> others;
      others.reserve(g.size() - 1);
      for (std::size_t j = 0; j < g.size(); ++j)
        if (j != i) others.push_back(g[j]);
      MultiPoly r = normal_form(g[i], others);
      if (!(r == g[i])) {
        changed = true;
        if (r.is_zero()) {
          g.erase(g.begin() + static_cast<long>(i));
          --i;
        } else {
          r.make_primitive();
          g[i] = std::move(r);
        }
      }
    }
  }
  for (auto& f : g) f.make_monic();
  std::sort(g.begin(), g.end(), [](const MultiPoly& a, const MultiPoly& b) {
    return grevlex_less(b.leading_monomial(), a.leading_monomial());
  });
  res.basis = std::move(g);
  return res;
}

inline bool basis_contains_one(const std::vector<MultiPoly>& basis) {
  for (const auto& f : basis)
    if (!f.is_zero() && f.leading_monomial().is_one()) return true;
  return false;
}

/// f in radical(I) via the Rabinowitsch trick: 1 in I + (1 - y f) over an
/// extended ring with a fresh last variable y.
inline Trilean radical_member(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                              const Budget& budget = {}) {
  if (f.is_zero()) return Trilean::yes;
  std::uint32_t nvars = f.nvars();
  for (const auto& g : gens) nvars = std::max(nvars, g.nvars());
  const std::uint32_t ext = nvars + 1;
  std::vector<MultiPoly> lifted;
  lifted.reserve(gens.size() + 1);
  for (const auto& g : gens)
    if (!g.is_zero()) lifted.push_back(g.with_nvars(ext));
  MultiPoly saturator = MultiPoly::constant(ext, Rational(1));
  saturator -= f.with_nvars(ext) * MultiPoly::variable(ext, nvars);
  lifted.push_back(std::move(saturator));
  const GroebnerResult gb = buchberger(std::move(lifted), budget);
  if (gb.status == GbStatus::budget_exceeded) return Trilean::unknown;
  return basis_contains_one(gb.basis) ? Trilean::yes : Trilean::no;
}

}  // namespace nilcpa
