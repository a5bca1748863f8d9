#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "nilcpa/matrix.hpp"
#include "nilcpa/rational.hpp"

namespace nilcpa {

/// Sparse coordinate vector: (index, coefficient) pairs, sorted by index,
/// no zero coefficients.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline void sv_normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, c);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& p) { return p.second.is_zero(); }),
            out.end());
  v = std::move(out);
}

/// dst += c * src, both sorted.
inline void sv_axpy(SparseVec& dst, const Rational& c, const SparseVec& src) {
  if (c.is_zero() || src.empty()) return;
  SparseVec out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, c * src[j].second);
      ++j;
    } else {
      Rational s = dst[i].second + c * src[j].second;
      if (!s.is_zero()) out.emplace_back(dst[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& p) { return p.second.is_zero(); }),
            out.end());
  dst = std::move(out);
}

inline SparseVec sv_scaled(const SparseVec& v, const Rational& c) {
  SparseVec out;
  if (c.is_zero()) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, c * x);
  return out;
}

inline SparseVec sv_neg(const SparseVec& v) { return sv_scaled(v, Rational(-1)); }

inline Vec sv_dense(std::size_t n, const SparseVec& v) {
  Vec d(n);
  for (const auto& [i, c] : v) d[static_cast<std::size_t>(i)] = c;
  return d;
}

inline SparseVec sv_from_dense(const Vec& d) {
  SparseVec v;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) v.emplace_back(static_cast<int>(i), d[i]);
  return v;
}

}  // namespace nilcpa
