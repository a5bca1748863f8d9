#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcpa/rational.hpp"

namespace nilcpa {

/// Monomial with sparse exponent support, sorted by variable index.
class Monomial {
public:
  Monomial() = default;

  static Monomial var(std::uint32_t v, std::uint32_t e = 1) {
    Monomial m;
    if (e > 0) {
      m.e_.emplace_back(v, e);
      m.deg_ = e;
    }
    return m;
  }

  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return e_.empty(); }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& exps() const { return e_; }

  std::uint32_t exp_of(std::uint32_t v) const {
    for (const auto& [var, e] : e_)
      if (var == v) return e;
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.e_.reserve(a.e_.size() + b.e_.size());
    std::size_t i = 0, j = 0;
    while (i < a.e_.size() || j < b.e_.size()) {
      if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first))
        m.e_.push_back(a.e_[i++]);
      else if (i == a.e_.size() || b.e_[j].first < a.e_[i].first)
        m.e_.push_back(b.e_[j++]);
      else {
        m.e_.emplace_back(a.e_[i].first, a.e_[i].second + b.e_[j].second);
        ++i;
        ++j;
      }
    }
    m.deg_ = a.deg_ + b.deg_;
    return m;
  }

  bool divides(const Monomial& m) const {
    std::size_t j = 0;
    for (const auto& [v, e] : e_) {
      while (j < m.e_.size() && m.e_[j].first < v) ++j;
      if (j == m.e_.size() || m.e_[j].first != v || m.e_[j].second < e) return false;
    }
    return true;
  }

  /// this / by; requires divisibility.
  Monomial divide(const Monomial& by) const {
    Monomial m;
    std::size_t j = 0;
    for (const auto& [v, e] : e_) {
      std::uint32_t sub = 0;
      while (j < by.e_.size() && by.e_[j].first < v) ++j;
      if (j < by.e_.size() && by.e_[j].first == v) sub = by.e_[j].second;
      if (sub > e) throw std::invalid_argument("Monomial: not divisible");
      if (e > sub) {
        m.e_.emplace_back(v, e - sub);
        m.deg_ += e - sub;
      }
    }
    return m;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    std::size_t i = 0, j = 0;
    while (i < a.e_.size() || j < b.e_.size()) {
      if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first))
        m.e_.push_back(a.e_[i++]);
      else if (i == a.e_.size() || b.e_[j].first < a.e_[i].first)
        m.e_.push_back(b.e_[j++]);
      else {
        m.e_.emplace_back(a.e_[i].first, std::max(a.e_[i].second, b.e_[j].second));
        ++i;
        ++j;
      }
    }
    for (const auto& [v, e] : m.e_) {
      (void)v;
      m.deg_ += e;
    }
    return m;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.e_.size() && j < b.e_.size()) {
      if (a.e_[i].first < b.e_[j].first)
        ++i;
      else if (b.e_[j].first < a.e_[i].first)
        ++j;
      else
        return false;
    }
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e_;
  std::uint32_t deg_ = 0;
};

/// Graded reverse lexicographic order: higher total degree wins; on ties the
/// monomial with the smaller exponent at the highest differing variable wins.
inline bool grevlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ae = a.exps();
  const auto& be = b.exps();
  auto i = ae.rbegin();
  auto j = be.rbegin();
  while (i != ae.rend() || j != be.rend()) {
    if (j == be.rend()) return true;   // a has extra high variable -> a smaller
    if (i == ae.rend()) return false;  // b has extra high variable -> b smaller
    if (i->first != j->first) {
      // the one owning the higher variable has more of it there -> smaller
      return i->first > j->first;
    }
    if (i->second != j->second) return i->second > j->second;
    ++i;
    ++j;
  }
  return false;  // equal
}

/// Multivariate polynomial over the rationals with terms kept in descending
/// grevlex order, no zero coefficients.
class MultiPoly {
public:
  using Term = std::pair<Monomial, Rational>;

  explicit MultiPoly(std::uint32_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(std::uint32_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace_back(Monomial(), c);
    return p;
  }

  static MultiPoly variable(std::uint32_t nvars, std::uint32_t v, const Rational& c = Rational(1)) {
    if (v >= nvars) throw std::invalid_argument("MultiPoly: variable index out of range");
    MultiPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace_back(Monomial::var(v), c);
    return p;
  }

  static MultiPoly from_terms(std::uint32_t nvars, std::vector<Term> terms) {
    MultiPoly p(nvars);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  std::uint32_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::uint32_t degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("MultiPoly: leading term of zero");
    return terms_.front().first;
  }
  const Rational& leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("MultiPoly: leading term of zero");
    return terms_.front().second;
  }

  /// Same polynomial viewed in a larger variable universe.
  MultiPoly with_nvars(std::uint32_t nvars) const {
    if (nvars < nvars_) throw std::invalid_argument("MultiPoly: cannot shrink variable universe");
    MultiPoly p = *this;
    p.nvars_ = nvars;
    return p;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    merge(o, Rational(1));
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    merge(o, Rational(-1));
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  MultiPoly& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  /// this * (c * m); order is preserved under monomial multiplication.
  MultiPoly scaled_by(const Monomial& m, const Rational& c) const {
    MultiPoly p(nvars_);
    if (c.is_zero()) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& [mono, coeff] : terms_) p.terms_.emplace_back(mono * m, coeff * c);
    return p;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out(std::max(a.nvars_, b.nvars_));
    for (const auto& [m, c] : b.terms_) out += a.scaled_by(m, c);
    return out;
  }

  Rational eval(const std::vector<Rational>& point) const {
    if (point.size() < nvars_) throw std::invalid_argument("MultiPoly: point length mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (const auto& [var, e] : m.exps()) {
        if (point[var].is_zero()) {
          v = Rational(0);
          break;
        }
        for (std::uint32_t k = 0; k < e; ++k) v *= point[var];
      }
      total += v;
    }
    return total;
  }

  /// Scales to integer coefficients with content 1 and positive leading
  /// coefficient. A no-op on zero.
  void make_primitive() {
    if (terms_.empty()) return;
    mpz_class l = 1;
    for (const auto& [m, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    mpz_class g = 0;
    std::vector<mpz_class> nums(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      nums[i] = terms_[i].second.num() * (l / terms_[i].second.den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nums[i].get_mpz_t());
    }
    if (terms_.front().second.sign() < 0) g = -g;
    for (std::size_t i = 0; i < terms_.size(); ++i) terms_[i].second = Rational(nums[i], g);
  }

  void make_monic() {
    if (terms_.empty()) return;
    const Rational lc = terms_.front().second;
    for (auto& [m, c] : terms_) c /= lc;
  }

  std::string str(const std::string& var_prefix = "s") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const Rational a = first ? c : abs(c);
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      if (m.is_one()) {
        os << a.str();
      } else {
        if (a != Rational(1)) os << a.str() << "*";
        bool inner_first = true;
        for (const auto& [v, e] : m.exps()) {
          if (!inner_first) os << "*";
          os << var_prefix << (v + 1);
          if (e > 1) os << "^" << e;
          inner_first = false;
        }
      }
      first = false;
    }
    return os.str();
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grevlex_less(b.first, a.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.second.is_zero(); }),
              out.end());
    terms_ = std::move(out);
  }

  void merge(const MultiPoly& o, const Rational& scale) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() ||
          (i < terms_.size() && grevlex_less(o.terms_[j].first, terms_[i].first))) {
        out.push_back(std::move(terms_[i++]));
      } else if (i == terms_.size() || grevlex_less(terms_[i].first, o.terms_[j].first)) {
        out.emplace_back(o.terms_[j].first, scale * o.terms_[j].second);
        ++j;
      } else {
        Rational c = terms_[i].second + scale * o.terms_[j].second;
        if (!c.is_zero()) out.emplace_back(terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    nvars_ = std::max(nvars_, o.nvars_);
    terms_ = std::move(out);
  }

  std::uint32_t nvars_;
  std::vector<Term> terms_;
};

/// Polynomial ideal under the fixed grevlex order.
struct PolyIdeal {
  std::vector<MultiPoly> generators;
};

}  // namespace nilcpa
