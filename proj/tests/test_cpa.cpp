#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "nilcpa/catalog.hpp"
#include "nilcpa/cpa.hpp"
#include "nilcpa/free_nilpotent.hpp"

using namespace nilcpa;

namespace {

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = Rational(1);
  return v;
}

// e1.e1 = alpha e4 + beta e5, e1.e2 = gamma e4 + delta e5, e2.e2 = eps e4 + kappa e5
CpaProduct family_on_f23(const FreeNilpotentPresentation& p, long alpha, long beta, long gamma,
                         long delta, long eps, long kappa) {
  std::map<std::pair<int, int>, SparseVec> e;
  auto put = [](long a, long b) {
    SparseVec v;
    if (a) v.emplace_back(3, Rational(a));
    if (b) v.emplace_back(4, Rational(b));
    return v;
  };
  if (alpha || beta) e[{0, 0}] = put(alpha, beta);
  if (gamma || delta) e[{0, 1}] = put(gamma, delta);
  if (eps || kappa) e[{1, 1}] = put(eps, kappa);
  return CpaProduct(p.table, e);
}

// e1.e1 = e2, e1.e2 = alpha e3 on the Heisenberg algebra
CpaProduct heisenberg_noncentral(const LieAlgebraTable& h3, long alpha = 1) {
  std::map<std::pair<int, int>, SparseVec> e;
  e[{0, 0}] = SparseVec{{1, Rational(1)}};
  e[{0, 1}] = SparseVec{{2, Rational(alpha)}};
  return CpaProduct(h3, e);
}

LieAlgebraTable h3_plus_line() {
  // h3 + a 1-dimensional abelian factor
  std::map<std::pair<int, int>, SparseVec> b;
  b[{0, 1}] = SparseVec{{2, Rational(1)}};
  return LieAlgebraTable(4, {}, b);
}

}  // namespace

TEST_CASE("zero product verifies on every catalog algebra") {
  for (const std::string name : {"h3", "h5", "n4", "g_6_14", "F_2_3", "F_3_2", "abelian_4"}) {
    const CpaProduct p = CpaProduct::zero(catalog(name));
    const CpaReport rep = verify(p);
    CHECK(rep.axioms_ok());
    CHECK(rep.is_complete);
    CHECK(rep.is_central);
    CHECK(rep.gZ_is_zero);
    CHECK(rep.gComm_is_zero);
  }
}

TEST_CASE("the six-parameter family on F_{2,3} is central and complete") {
  const FreeNilpotentPresentation p23 = build_free_nilpotent(2, 3);
  const CpaProduct p = family_on_f23(p23, 1, 2, 3, 4, 5, 6);
  const CpaReport rep = verify(p);
  CHECK(rep.axioms_ok());
  CHECK(rep.is_central);
  CHECK(rep.is_complete);
  CHECK(rep.gZ_is_zero);
  CHECK(rep.gComm_is_zero);
}

TEST_CASE("the non-central Heisenberg product") {
  const CpaProduct p = heisenberg_noncentral(catalog("h3"));
  const CpaReport rep = verify(p);
  CHECK(rep.axioms_ok());
  CHECK_FALSE(rep.is_central);
  CHECK(rep.is_complete);
  CHECK(rep.gZ_is_zero);     // g . Z(g) = 0 still holds
  CHECK(rep.gComm_is_zero);  // Z = [g,g] here
}

TEST_CASE("a broken product is caught with a witness") {
  // x.x = x on h3 violates axiom (5): L(x) would not be nilpotent either
  std::map<std::pair<int, int>, SparseVec> e;
  e[{0, 0}] = SparseVec{{0, Rational(1)}};
  const CpaProduct p(catalog("h3"), e);
  const CpaReport rep = verify(p);
  CHECK_FALSE(rep.axioms_ok());
  REQUIRE(rep.axiom6_witness.has_value());
  bool nonzero = false;
  for (const auto& x : rep.axiom6_witness->residual) nonzero = nonzero || !x.is_zero();
  CHECK(nonzero);
}

TEST_CASE("tensor shape mismatches are rejected") {
  std::map<std::pair<int, int>, SparseVec> e;
  e[{0, 0}] = SparseVec{{5, Rational(1)}};
  CHECK_THROWS_AS(CpaProduct(catalog("h3"), e), std::invalid_argument);
  std::map<std::pair<int, int>, SparseVec> rev;
  rev[{1, 0}] = SparseVec{{0, Rational(1)}};
  CHECK_THROWS_AS(CpaProduct(catalog("h3"), rev), std::invalid_argument);
}

TEST_CASE("completeness chain") {
  CHECK(is_complete(CpaProduct::zero(catalog("n5"))));
  // v.v = v on a non-stem algebra is not complete
  const CpaProduct p = construct_incomplete(catalog("abelian_2"));
  CHECK(verify(p).axioms_ok());
  CHECK_FALSE(is_complete(p));
}

TEST_CASE("a verified non-central product on F_{3,2} with g.Z nonzero") {
  // e1.e1 = e2, e2.e3 = -e6, e1.e5 = e6, derived by solving the axioms by hand
  const LieAlgebraTable f32 = catalog("F_3_2");
  std::map<std::pair<int, int>, SparseVec> e;
  e[{0, 0}] = SparseVec{{1, Rational(1)}};
  e[{1, 2}] = SparseVec{{5, Rational(-1)}};
  e[{0, 4}] = SparseVec{{5, Rational(1)}};
  const CpaProduct p(f32, e);
  const CpaReport rep = verify(p);
  CHECK(rep.axioms_ok());
  CHECK_FALSE(rep.is_central);
  CHECK(rep.is_complete);  // F_{3,2} is stem
  CHECK_FALSE(rep.gZ_is_zero);
  CHECK_FALSE(rep.gComm_is_zero);
}

TEST_CASE("fitting-null component") {
  const LieAlgebraTable h3 = catalog("h3");
  CHECK(fitting_null(CpaProduct::zero(h3)) == Subspace::full(3));

  const CpaProduct p = heisenberg_noncentral(h3);
  const Subspace g0 = fitting_null(p);
  const Subspace comm = series(h3).commutator;
  CHECK(g0.contains(Subspace::from_vectors(3, {unit(3, 1), unit(3, 2)})));
  CHECK(g0.contains(comm));
}

TEST_CASE("commutator always lies in the fitting-null component") {
  const FreeNilpotentPresentation p23 = build_free_nilpotent(2, 3);
  const Subspace comm = series(p23.table).commutator;
  std::mt19937_64 rng(7331);
  std::uniform_int_distribution<long> coeff(-3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<std::vector<Rational>>> alpha(
        2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j)
        for (int k = 0; k < 2; ++k) alpha[i][j][k] = alpha[j][i][k] = Rational(coeff(rng));
    const CpaProduct p = construct_central(p23, alpha);
    REQUIRE(verify(p).axioms_ok());
    CHECK(fitting_null(p).contains(comm));
  }
  CHECK(fitting_null(heisenberg_noncentral(catalog("h3"))).contains(series(catalog("h3")).commutator));
}

TEST_CASE("annihilation bound") {
  const LieAlgebraTable h3 = catalog("h3");
  const SeriesReport rep = series(h3);
  const CpaProduct p = heisenberg_noncentral(h3);
  const AnnihilationBound b = annihilation_bound(p, rep.center, 2);
  CHECK(b.r == 1);
  CHECK(b.holds);

  const FreeNilpotentPresentation p23 = build_free_nilpotent(2, 3);
  const SeriesReport rep23 = series(p23.table);
  const CpaProduct q = family_on_f23(p23, 1, 2, 3, 4, 5, 6);
  // dim Z = 2 inside g^3, so the formula gives r = 2
  const AnnihilationBound b23 = annihilation_bound(q, rep23.center, 3);
  CHECK(b23.r == 2);
  CHECK(b23.holds);
  // direct evaluation: even one application annihilates, g . Z(g) = 0
  CHECK(verify(q).gZ_is_zero);

  const AnnihilationBound empty = annihilation_bound(p, Subspace::zero(3), 2);
  CHECK(empty.r == 0);
  CHECK(empty.holds);

  // precondition: a must lie inside g^t
  CHECK_THROWS_AS(annihilation_bound(p, Subspace::full(3), 2), std::invalid_argument);
}

TEST_CASE("construct_central reproduces the printed family") {
  const FreeNilpotentPresentation p23 = build_free_nilpotent(2, 3);
  std::vector<std::vector<std::vector<Rational>>> zero_alpha(
      2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
  const CpaProduct z = construct_central(p23, zero_alpha);
  CHECK(z.entries().empty());

  std::vector<std::vector<std::vector<Rational>>> alpha = zero_alpha;
  alpha[0][0] = {Rational(1), Rational(2)};
  alpha[0][1] = alpha[1][0] = {Rational(3), Rational(4)};
  alpha[1][1] = {Rational(5), Rational(6)};
  const CpaProduct p = construct_central(p23, alpha);
  CHECK(p.product_basis(0, 0) == Vec{Rational(0), Rational(0), Rational(0), Rational(1), Rational(2)});
  CHECK(p.product_basis(0, 1) == Vec{Rational(0), Rational(0), Rational(0), Rational(3), Rational(4)});
  CHECK(p.product_basis(1, 1) == Vec{Rational(0), Rational(0), Rational(0), Rational(5), Rational(6)});
  CHECK(p.product_basis(1, 0) == p.product_basis(0, 1));
  const CpaReport rep = verify(p);
  CHECK(rep.axioms_ok());
  CHECK(rep.is_central);

  // non-symmetric coefficients are rejected
  auto bad = alpha;
  bad[0][1][0] = Rational(9);
  CHECK_THROWS_AS(construct_central(p23, bad), std::invalid_argument);
}

TEST_CASE("random central products on F_{3,4} verify") {
  const FreeNilpotentPresentation p34 = build_free_nilpotent(3, 4);
  const auto [zb, ze] = p34.center_block();
  const int zr = ze - zb;
  std::mt19937_64 rng(90210);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<std::vector<std::vector<Rational>>> alpha(
        3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(zr)));
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        for (int k = 0; k < zr; ++k)
          alpha[i][j][k] = alpha[j][i][k] = Rational(num(rng), den(rng));
    const CpaProduct p = construct_central(p34, alpha);
    const CpaReport rep = verify(p);
    CHECK(rep.axioms_ok());
    CHECK(rep.is_central);
    CHECK(rep.is_complete);
  }
}

TEST_CASE("construct_incomplete") {
  // abelian plane: v.v = v on the first coordinate
  const CpaProduct p2 = construct_incomplete(catalog("abelian_2"));
  const CpaReport rep2 = verify(p2);
  CHECK(rep2.axioms_ok());
  CHECK_FALSE(rep2.is_complete);

  // h3 + line: center escapes the commutator
  const CpaProduct p4 = construct_incomplete(h3_plus_line());
  const CpaReport rep4 = verify(p4);
  CHECK(rep4.axioms_ok());
  CHECK_FALSE(rep4.is_complete);

  // stem algebras refuse
  CHECK_THROWS_AS(construct_incomplete(catalog("h3")), std::invalid_argument);
}

TEST_CASE("central products on stem algebras annihilate center and commutator") {
  const FreeNilpotentPresentation p23 = build_free_nilpotent(2, 3);
  CHECK(central_implies_annihilation(family_on_f23(p23, 1, 2, 3, 4, 5, 6)));
  CHECK(central_implies_annihilation(CpaProduct::zero(p23.table)));

  const FreeNilpotentPresentation p24 = build_free_nilpotent(2, 4);
  const auto [zb, ze] = p24.center_block();
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<long> num(-5, 5);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::vector<std::vector<Rational>>> alpha(
        2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(ze - zb)));
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j)
        for (int k = 0; k < ze - zb; ++k) alpha[i][j][k] = alpha[j][i][k] = Rational(num(rng));
    CHECK(central_implies_annihilation(construct_central(p24, alpha)));
  }

  // non-central products are rejected by the precondition
  CHECK_THROWS_AS(central_implies_annihilation(heisenberg_noncentral(catalog("h3"))),
                  std::invalid_argument);
}

TEST_CASE("left multiplication is a representation and acts by derivations") {
  // restatements of axioms (5) and (6) as matrix identities
  const FreeNilpotentPresentation p23 = build_free_nilpotent(2, 3);
  const CpaProduct p = family_on_f23(p23, 2, -1, 0, 3, 1, 1);
  REQUIRE(verify(p).axioms_ok());
  const std::size_t n = p.dim();
  std::vector<Matrix> L;
  for (std::size_t i = 0; i < n; ++i) L.push_back(p.left_mult(unit(n, i)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // L([e_i, e_j]) = L(e_i) L(e_j) - L(e_j) L(e_i)
      const Matrix lhs = p.left_mult(sv_dense(n, p23.table.bracket_pair(
                                                      static_cast<int>(i), static_cast<int>(j))));
      Matrix rhs = L[i] * L[j];
      const Matrix sub = L[j] * L[i];
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) rhs(a, b) -= sub(a, b);
      CHECK(lhs == rhs);
      // L(e_k) is a derivation on each bracket
      for (std::size_t k = 0; k < n; ++k) {
        const Vec br = sv_dense(n, p23.table.bracket_pair(static_cast<int>(i), static_cast<int>(j)));
        const Vec lhs2 = L[k] * br;
        const Vec t1 = p23.table.bracket(L[k] * unit(n, i), unit(n, j));
        const Vec t2 = p23.table.bracket(unit(n, i), L[k] * unit(n, j));
        for (std::size_t m = 0; m < n; ++m) CHECK(lhs2[m] == t1[m] + t2[m]);
      }
    }
}
