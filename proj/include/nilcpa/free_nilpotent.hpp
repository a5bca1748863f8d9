#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcpa/lie_algebra.hpp"
#include "nilcpa/rational.hpp"
#include "nilcpa/sparse_vec.hpp"

namespace nilcpa {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Moebius function; n >= 1.
inline int moebius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

struct WittDims {
  std::vector<mpz_class> per_degree;  // per_degree[m-1] = I_m(g)
  mpz_class total;
  mpz_class center_dim;  // I_c(g) = dim Z(F_{g,c})
};

/// Dimensions of the homogeneous components of the free Lie algebra:
/// I_m(g) = (1/m) * sum_{d | m} mu(d) g^{m/d}.
inline WittDims witt_dimension(long generators, long nil_class) {
  if (generators < 1 || nil_class < 1)
    throw std::invalid_argument("witt_dimension: need g >= 1 and c >= 1");
  WittDims w;
  w.total = 0;
  for (long m = 1; m <= nil_class; ++m) {
    mpz_class s = 0;
    for (long d = 1; d <= m; ++d) {
      if (m % d) continue;
      const int mu = moebius(d);
      if (mu == 0) continue;
      mpz_class power;
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(generators),
                    static_cast<unsigned long>(m / d));
      s += mu * power;
    }
    s /= m;
    w.per_degree.push_back(s);
    w.total += s;
  }
  w.center_dim = w.per_degree.back();
  return w;
}

/// Basis element of a free-nilpotent Lie algebra: a Lyndon word together with
/// its standard factorization.
struct LyndonElement {
  std::vector<int> word;  // generator indices, 1-based
  int degree = 0;
  int left = -1, right = -1;  // basis indices of the standard factorization; -1 for letters
  int basis_index = 0;
  std::string label;
};

struct FreeNilpotentBudget {
  std::size_t max_dimension = 5000;
};

/// All Lyndon words of length <= max_len over {1..alphabet}, by Duval's
/// algorithm, returned in lexicographic order.
inline std::vector<std::vector<int>> lyndon_words(int alphabet, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<int> w{1};
  while (!w.empty()) {
    out.push_back(w);
    std::vector<int> next;
    next.reserve(max_len);
    for (int i = 0; i < max_len; ++i) next.push_back(w[i % w.size()]);
    while (!next.empty() && next.back() == alphabet) next.pop_back();
    if (!next.empty()) ++next.back();
    w = std::move(next);
  }
  return out;
}

namespace detail {

// Lexicographically smallest proper suffix = right factor of the standard
// factorization of a Lyndon word.
inline std::size_t standard_split(const std::vector<int>& w) {
  std::size_t best = 1;
  for (std::size_t p = 2; p < w.size(); ++p)
    if (std::lexicographical_compare(w.begin() + p, w.end(), w.begin() + best, w.end())) best = p;
  return best;
}

inline std::string bracket_label(const std::vector<LyndonElement>& basis, int idx) {
  const LyndonElement& e = basis[idx];
  if (e.left < 0) return std::to_string(e.word[0]);
  return "[" + bracket_label(basis, e.left) + "," + bracket_label(basis, e.right) + "]";
}

// Rewrites brackets of Lyndon basis elements into the basis by recursion on
// the standard factorization; coefficients stay integral.
class LyndonBracketEngine {
public:
  LyndonBracketEngine(const std::vector<LyndonElement>& basis,
                      const std::map<std::vector<int>, int>& index_of, int nil_class)
      : basis_(basis), index_of_(index_of), nil_class_(nil_class) {}

  // [b_i, b_j] for arbitrary i, j.
  SparseVec bracket(int i, int j) {
    if (i == j) return {};
    if (word_less(j, i)) return sv_neg(pair_positive(j, i));
    return pair_positive(i, j);
  }

private:
  bool word_less(int i, int j) const {
    return std::lexicographical_compare(basis_[i].word.begin(), basis_[i].word.end(),
                                        basis_[j].word.begin(), basis_[j].word.end());
  }

  // [b_i, b_j] with word(i) < word(j).
  const SparseVec& pair_positive(int i, int j) {
    const auto key = std::make_pair(i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (in_progress_.count(key))
      throw std::logic_error("LyndonBracketEngine: rewriting cycle");
    in_progress_.insert(key);

    SparseVec out;
    const LyndonElement& u = basis_[i];
    const LyndonElement& v = basis_[j];
    if (u.degree + v.degree <= nil_class_) {
      const bool standard =
          u.left < 0 || !std::lexicographical_compare(basis_[u.right].word.begin(),
                                                      basis_[u.right].word.end(),
                                                      v.word.begin(), v.word.end());
      if (standard) {
        std::vector<int> w = u.word;
        w.insert(w.end(), v.word.begin(), v.word.end());
        out.emplace_back(index_of_.at(w), Rational(1));
      } else {
        // [[a,b], v] = [a, [b,v]] - [b, [a,v]]
        const int a = u.left, b = u.right;
        SparseVec bv = bracket(b, j);
        SparseVec av = bracket(a, j);
        for (const auto& [t, c] : bv) sv_axpy(out, c, bracket(a, t));
        for (const auto& [t, c] : av) sv_axpy(out, -c, bracket(b, t));
      }
    }
    in_progress_.erase(key);
    return memo_.emplace(key, std::move(out)).first->second;
  }

  const std::vector<LyndonElement>& basis_;
  const std::map<std::vector<int>, int>& index_of_;
  int nil_class_;
  std::map<std::pair<int, int>, SparseVec> memo_;
  std::set<std::pair<int, int>> in_progress_;
};

}  // namespace detail

/// Free-nilpotent Lie algebra F_{g,c} on the Chen-Fox-Lyndon basis, ordered
/// by degree then lexicographically.
struct FreeNilpotentPresentation {
  int generators;
  int nil_class;
  std::vector<LyndonElement> basis;
  std::map<std::vector<int>, int> index_of;
  LieAlgebraTable table;

  /// First basis index of each degree; degree_start[c] .. dim is the top block.
  std::vector<int> degree_start;

  int degree_of(int basis_index) const { return basis[basis_index].degree; }

  /// Basis indices of the top-degree component (= the center).
  std::pair<int, int> center_block() const {
    return {degree_start[nil_class - 1], static_cast<int>(basis.size())};
  }
};

inline FreeNilpotentPresentation build_free_nilpotent(int generators, int nil_class,
                                                      const FreeNilpotentBudget& budget = {}) {
  if (generators < 2 || nil_class < 1)
    throw std::invalid_argument("build_free_nilpotent: need g >= 2 and c >= 1");
  const WittDims w = witt_dimension(generators, nil_class);
  if (w.total > static_cast<long>(budget.max_dimension))
    throw BudgetExceeded("build_free_nilpotent: dimension " + w.total.get_str() +
                         " exceeds budget " + std::to_string(budget.max_dimension));

  std::vector<std::vector<int>> words = lyndon_words(generators, nil_class);
  std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<LyndonElement> basis(words.size());
  std::map<std::vector<int>, int> index_of;
  for (std::size_t i = 0; i < words.size(); ++i) index_of[words[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < words.size(); ++i) {
    LyndonElement& e = basis[i];
    e.word = words[i];
    e.degree = static_cast<int>(words[i].size());
    e.basis_index = static_cast<int>(i);
    if (e.degree > 1) {
      const std::size_t split = detail::standard_split(e.word);
      e.left = index_of.at(std::vector<int>(e.word.begin(), e.word.begin() + split));
      e.right = index_of.at(std::vector<int>(e.word.begin() + split, e.word.end()));
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    LyndonElement& e = basis[i];
    e.label = e.degree == 1 ? "x" + std::to_string(e.word[0])
                            : "x" + detail::bracket_label(basis, static_cast<int>(i));
  }

  // per-degree counts must match the Witt formula
  std::vector<long> counts(nil_class, 0);
  for (const auto& e : basis) ++counts[e.degree - 1];
  for (int m = 0; m < nil_class; ++m)
    if (w.per_degree[m] != counts[m])
      throw std::logic_error("build_free_nilpotent: Lyndon count disagrees with Witt formula");

  detail::LyndonBracketEngine engine(basis, index_of, nil_class);
  std::map<std::pair<int, int>, SparseVec> brackets;
  const int n = static_cast<int>(basis.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SparseVec v = engine.bracket(i, j);
      if (!v.empty()) brackets[{i, j}] = std::move(v);
    }

  std::vector<std::string> labels;
  labels.reserve(basis.size());
  for (const auto& e : basis) labels.push_back(e.label);

  FreeNilpotentPresentation p{generators, nil_class, std::move(basis), std::move(index_of),
                              LieAlgebraTable(words.size(), std::move(labels), brackets),
                              {}};
  p.degree_start.assign(nil_class, 0);
  for (int d = 1; d < nil_class; ++d)
    p.degree_start[d] = p.degree_start[d - 1] + static_cast<int>(counts[d - 1]);
  p.table.ensure_valid();
  return p;
}

/// [b_i, b_j] in the Lyndon basis (integer coefficients).
inline SparseVec normalize_bracket(const FreeNilpotentPresentation& p, int i, int j) {
  if (i < 0 || j < 0 || i >= static_cast<int>(p.table.dim()) || j >= static_cast<int>(p.table.dim()))
    throw std::invalid_argument("normalize_bracket: index out of range");
  return p.table.bracket_basis(i, j);
}

}  // namespace nilcpa
