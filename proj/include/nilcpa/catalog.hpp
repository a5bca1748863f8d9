#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcpa/free_nilpotent.hpp"
#include "nilcpa/lie_algebra.hpp"

namespace nilcpa {

namespace detail {

inline SparseVec unit(int k) { return {{k, Rational(1)}}; }

inline LieAlgebraTable heisenberg(int m) {
  if (m < 1) throw std::invalid_argument("catalog: heisenberg needs m >= 1");
  const int dim = 2 * m + 1;
  std::vector<std::string> names;
  if (m == 1) {
    names = {"x", "y", "z"};
  } else {
    for (int i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= m; ++i) names.push_back("y" + std::to_string(i));
    names.push_back("z");
  }
  std::map<std::pair<int, int>, SparseVec> b;
  for (int i = 0; i < m; ++i) b[{i, m + i}] = unit(dim - 1);  // [x_i, y_i] = z
  return LieAlgebraTable(dim, names, b);
}

inline LieAlgebraTable filiform(int n) {
  if (n < 3) throw std::invalid_argument("catalog: filiform needs n >= 3");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  std::map<std::pair<int, int>, SparseVec> b;
  for (int i = 2; i <= n - 1; ++i) b[{0, i - 1}] = unit(i);  // [x1, x_i] = x_{i+1}
  return LieAlgebraTable(n, names, b);
}

inline LieAlgebraTable g_6_14() {
  std::vector<std::string> names;
  for (int i = 1; i <= 6; ++i) names.push_back("x" + std::to_string(i));
  std::map<std::pair<int, int>, SparseVec> b;
  b[{0, 1}] = unit(2);  // [x1,x2] = x3
  b[{0, 2}] = unit(3);  // [x1,x3] = x4
  b[{0, 3}] = unit(4);  // [x1,x4] = x5
  b[{1, 2}] = unit(5);  // [x2,x3] = x6
  return LieAlgebraTable(6, names, b);
}

inline LieAlgebraTable abelian(int n) {
  if (n < 0) throw std::invalid_argument("catalog: abelian needs n >= 0");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("e" + std::to_string(i));
  return LieAlgebraTable(n, names, {});
}

// Tables printed in the source material, stored verbatim.
inline LieAlgebraTable paper_F_2_3() {
  std::vector<std::string> names{"e1", "e2", "e3", "e4", "e5"};
  std::map<std::pair<int, int>, SparseVec> b;
  b[{0, 1}] = unit(2);
  b[{0, 2}] = unit(3);
  b[{1, 2}] = unit(4);
  return LieAlgebraTable(5, names, b);
}

inline LieAlgebraTable paper_F_3_2() {
  std::vector<std::string> names{"e1", "e2", "e3", "e4", "e5", "e6"};
  std::map<std::pair<int, int>, SparseVec> b;
  b[{0, 1}] = unit(3);
  b[{0, 2}] = unit(4);
  b[{1, 2}] = unit(5);
  return LieAlgebraTable(6, names, b);
}

inline LieAlgebraTable paper_F_3_3() {
  std::vector<std::string> names;
  for (int i = 1; i <= 14; ++i) names.push_back("x" + std::to_string(i));
  std::map<std::pair<int, int>, SparseVec> b;
  b[{0, 1}] = unit(3);                                // [x1,x2] = x4
  b[{0, 2}] = unit(4);                                // [x1,x3] = x5
  b[{0, 3}] = unit(6);                                // [x1,x4] = x7
  b[{0, 4}] = unit(7);                                // [x1,x5] = x8
  b[{0, 5}] = unit(8);                                // [x1,x6] = x9
  b[{1, 2}] = unit(5);                                // [x2,x3] = x6
  b[{1, 3}] = unit(9);                                // [x2,x4] = x10
  b[{1, 4}] = unit(10);                               // [x2,x5] = x11
  b[{1, 5}] = unit(11);                               // [x2,x6] = x12
  b[{2, 3}] = {{8, Rational(-1)}, {10, Rational(1)}}; // [x3,x4] = x11 - x9
  b[{2, 4}] = unit(12);                               // [x3,x5] = x13
  b[{2, 5}] = unit(13);                               // [x3,x6] = x14
  return LieAlgebraTable(14, names, b);
}

inline bool parse_suffix_ints(const std::string& s, const std::string& prefix,
                              std::vector<int>& out, std::size_t expected) {
  if (s.rfind(prefix, 0) != 0) return false;
  out.clear();
  std::string rest = s.substr(prefix.size());
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t next = rest.find('_', pos);
    if (next == std::string::npos) next = rest.size();
    const std::string tok = rest.substr(pos, next - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return false;
    out.push_back(std::stoi(tok));
    pos = next + 1;
  }
  return out.size() == expected;
}

}  // namespace detail

/// Named algebras: every bracket table appearing in the source material plus
/// generated free-nilpotent algebras.
///
///   heisenberg            3-dimensional Heisenberg algebra (alias h3)
///   heisenberg_<2m+1>     Heisenberg algebra of dimension 2m+1
///   n<k>                  model filiform algebra of dimension k
///   g_6_14                the 6-dimensional stem algebra g_{6,14}
///   F_2_3, F_3_2, F_3_3   printed free-nilpotent bracket tables
///   free_<g>_<c>          generated F_{g,c} on the Lyndon basis
///   abelian_<n>           abelian algebra of dimension n
inline LieAlgebraTable catalog(const std::string& name) {
  auto lookup = [&]() -> LieAlgebraTable {
    std::vector<int> args;
    if (name == "heisenberg" || name == "h3") return detail::heisenberg(1);
    if (name == "h5") return detail::heisenberg(2);
    if (detail::parse_suffix_ints(name, "heisenberg_", args, 1)) {
      if (args[0] < 3 || args[0] % 2 == 0)
        throw std::invalid_argument("catalog: heisenberg dimension must be odd and >= 3");
      return detail::heisenberg((args[0] - 1) / 2);
    }
    if (detail::parse_suffix_ints(name, "n", args, 1)) return detail::filiform(args[0]);
    if (name == "g_6_14") return detail::g_6_14();
    if (name == "F_2_3") return detail::paper_F_2_3();
    if (name == "F_3_2") return detail::paper_F_3_2();
    if (name == "F_3_3") return detail::paper_F_3_3();
    if (detail::parse_suffix_ints(name, "free_", args, 2))
      return build_free_nilpotent(args[0], args[1]).table;
    if (detail::parse_suffix_ints(name, "abelian_", args, 1)) return detail::abelian(args[0]);
    throw std::invalid_argument("catalog: unknown algebra \"" + name + "\"");
  };
  LieAlgebraTable t = lookup();
  t.ensure_valid();
  return t;
}

/// True when the named algebra is free-nilpotent, so that a single canonical
/// generating pair decides property F (automorphisms act transitively).
inline bool catalog_is_free_nilpotent(const std::string& name) {
  std::vector<int> args;
  return name == "F_2_3" || name == "F_3_2" || name == "F_3_3" ||
         detail::parse_suffix_ints(name, "free_", args, 2) || name == "h3" ||
         name == "heisenberg" || name == "heisenberg_3";  // h3 = F_{2,2}
}

inline std::vector<std::pair<std::string, std::string>> catalog_names() {
  return {
      {"heisenberg", "3-dimensional Heisenberg algebra (alias h3)"},
      {"heisenberg_5", "5-dimensional Heisenberg algebra (alias h5)"},
      {"n4", "filiform algebra of dimension 4 (n<k> for dimension k)"},
      {"n5", "filiform algebra of dimension 5"},
      {"n6", "filiform algebra of dimension 6"},
      {"g_6_14", "6-dimensional stem algebra g_{6,14}"},
      {"F_2_3", "printed bracket table of F_{2,3}"},
      {"F_3_2", "printed bracket table of F_{3,2}"},
      {"F_3_3", "printed bracket table of F_{3,3}"},
      {"free_2_3", "generated F_{g,c} on the Lyndon basis (free_<g>_<c>)"},
      {"abelian_4", "abelian algebra (abelian_<n>)"},
  };
}

}  // namespace nilcpa
