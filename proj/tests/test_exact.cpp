#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "nilcpa/matrix.hpp"
#include "nilcpa/rational.hpp"
#include "nilcpa/subspace.hpp"

using namespace nilcpa;

namespace {

Rational rand_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return Rational(num(rng), den(rng));
}

Matrix rand_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_rational(rng);
  return m;
}

// Independent rank oracle: fraction-free Bareiss elimination over the
// integers after clearing denominators.
std::size_t bareiss_rank(const Matrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<mpz_class>> a(R);
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < C; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
    a[i].resize(C);
    for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j).num() * (l / m(i, j).den());
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < C && rank < R; ++c) {
    std::size_t p = rank;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[rank], a[p]);
    for (std::size_t i = rank + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j)
        a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Rank mod a 30-bit prime, an independent probe for dimension identities.
constexpr long kProbePrime = 1073741789;

long inv_mod(long a, long p) {
  long r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<long>((__int128)r * b % p);
    b = static_cast<long>((__int128)b * b % p);
    e >>= 1;
  }
  return r;
}

std::size_t rank_mod_p(const std::vector<Vec>& rows, std::size_t cols) {
  std::vector<std::vector<long>> a;
  for (const auto& row : rows) {
    std::vector<long> r(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      const long num = mpz_class(row[j].num() % kProbePrime).get_si();
      const long den = mpz_class(row[j].den() % kProbePrime).get_si();
      REQUIRE(den != 0);
      long v = ((num % kProbePrime) + kProbePrime) % kProbePrime;
      r[j] = static_cast<long>((__int128)v * inv_mod(den, kProbePrime) % kProbePrime);
    }
    a.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[rank], a[p]);
    const long inv = inv_mod(a[rank][c], kProbePrime);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const long f = static_cast<long>((__int128)a[i][c] * inv % kProbePrime);
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] = static_cast<long>(
            ((a[i][j] - (__int128)f * a[rank][j]) % kProbePrime + kProbePrime) % kProbePrime);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("rational canonical form and parsing") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, -4).str() == "1/2");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational::parse("41/152").str() == "41/152");
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK(Rational::parse("17").str() == "17");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = rand_rational(rng), b = rand_rational(rng);
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Rational::parse(a.str()) == a);  // textual round-trip
    CHECK(a.den() > 0);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.num().get_mpz_t(), a.den().get_mpz_t());
    CHECK((a.is_zero() || g == 1));
  }
}

TEST_CASE("rref fixed cases") {
  CHECK(rref(Matrix::identity(2)) == Matrix::identity(2));

  Matrix m(2, 2);
  m(0, 0) = Rational(2);
  m(0, 1) = Rational(4);
  m(1, 0) = Rational(1);
  m(1, 1) = Rational(2);
  Matrix expect(2, 2);
  expect(0, 0) = Rational(1);
  expect(0, 1) = Rational(2);
  CHECK(rref(m) == expect);
  CHECK(rank(m) == 1);
}

TEST_CASE("rref is idempotent and rank matches Bareiss") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix m = rand_matrix(rng, 5, 7);
    const Matrix r = rref(m);
    CHECK(rref(r) == r);
    CHECK(rank(m) == bareiss_rank(m));
  }
}

TEST_CASE("nullspace basics") {
  CHECK(nullspace(Matrix(3, 3)).dim() == 3);
  CHECK(nullspace(Matrix::identity(4)).dim() == 0);

  Matrix m(1, 3);
  m(0, 0) = Rational(1);
  m(0, 1) = Rational(1);
  const Subspace ns = nullspace(m);
  CHECK(ns.dim() == 2);
  CHECK(ns.member({Rational(1), Rational(-1), Rational(0)}));
  CHECK(ns.member({Rational(0), Rational(0), Rational(1)}));
  CHECK_FALSE(ns.member({Rational(1), Rational(0), Rational(0)}));
}

TEST_CASE("nullspace vectors multiply back to zero") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix m = rand_matrix(rng, 4, 6);
    const Subspace ns = nullspace(m);
    CHECK(ns.dim() == 6 - rank(m));
    for (std::size_t i = 0; i < ns.dim(); ++i) {
      const Vec prod = m * ns.basis_row(i);
      for (const auto& x : prod) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("subspace lattice basics") {
  const Subspace e1 = Subspace::from_vectors(3, {{Rational(1), Rational(0), Rational(0)}});
  const Subspace e2 = Subspace::from_vectors(3, {{Rational(0), Rational(1), Rational(0)}});
  CHECK(sum(e1, e2).dim() == 2);
  CHECK(intersect(e1, e2).dim() == 0);
  CHECK(sum(e1, e1) == e1);        // idempotence
  CHECK(intersect(e1, e1) == e1);
  CHECK(sum(e1, e2).contains(e1));
  CHECK_THROWS_AS(sum(e1, Subspace::full(4)), std::invalid_argument);
}

TEST_CASE("dimension formula with modular rank probe") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec> arows, brows;
    std::uniform_int_distribution<int> count(1, 4);
    const int na = count(rng), nb = count(rng);
    for (int i = 0; i < na; ++i) {
      Vec v(6);
      for (auto& x : v) x = rand_rational(rng);
      arows.push_back(v);
    }
    for (int i = 0; i < nb; ++i) {
      Vec v(6);
      for (auto& x : v) x = rand_rational(rng);
      brows.push_back(v);
    }
    const Subspace a = Subspace::from_vectors(6, arows);
    const Subspace b = Subspace::from_vectors(6, brows);
    const auto [s, n] = sum_and_intersection(a, b);
    CHECK(a.dim() + b.dim() == s.dim() + n.dim());

    // the probe: dim A = rank_p(A rows), dim(A+B) = rank_p(A rows + B rows)
    std::vector<Vec> stacked = arows;
    stacked.insert(stacked.end(), brows.begin(), brows.end());
    CHECK(a.dim() == rank_mod_p(arows, 6));
    CHECK(b.dim() == rank_mod_p(brows, 6));
    CHECK(s.dim() == rank_mod_p(stacked, 6));
  }
}

TEST_CASE("subspace equality is basis identity") {
  const Subspace a =
      Subspace::from_vectors(3, {{Rational(1), Rational(1), Rational(0)},
                                 {Rational(0), Rational(1), Rational(1)}});
  const Subspace b =
      Subspace::from_vectors(3, {{Rational(1), Rational(0), Rational(-1)},
                                 {Rational(0), Rational(2), Rational(2)}});
  CHECK(a == b);  // same span, same canonical basis
}

TEST_CASE("sparse nullspace agrees with dense") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = rand_matrix(rng, 5, 8);
    std::vector<SparseVec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(sv_from_dense(m.row(i)));
    CHECK(nullspace_sparse(8, rows) == nullspace(m));
  }
}
