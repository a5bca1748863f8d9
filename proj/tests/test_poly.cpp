#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "nilcpa/groebner.hpp"
#include "nilcpa/poly.hpp"

using namespace nilcpa;

namespace {

// x, y, z = variables 0, 1, 2
MultiPoly mono(std::uint32_t nvars, std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> ve,
               long c = 1) {
  Monomial m;
  for (const auto& [v, e] : ve) m = m * Monomial::var(v, e);
  return MultiPoly::from_terms(nvars, {{m, Rational(c)}});
}

// Buchberger's criterion: every S-polynomial reduces to zero.
bool is_groebner(const std::vector<MultiPoly>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Monomial l = lcm(basis[i].leading_monomial(), basis[j].leading_monomial());
      MultiPoly s = basis[i].scaled_by(l.divide(basis[i].leading_monomial()),
                                       Rational(1) / basis[i].leading_coeff());
      s -= basis[j].scaled_by(l.divide(basis[j].leading_monomial()),
                              Rational(1) / basis[j].leading_coeff());
      if (!normal_form(s, basis).is_zero()) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("grevlex order") {
  const Monomial x = Monomial::var(0), y = Monomial::var(1), z = Monomial::var(2);
  CHECK(grevlex_less(y, x));
  CHECK(grevlex_less(x, x * x));               // degree dominates
  CHECK(grevlex_less(x * x * z, x * y * y));   // xy^2 > x^2 z
  CHECK(grevlex_less(x * y, x * x));
  CHECK_FALSE(grevlex_less(x, x));
  CHECK(grevlex_less(Monomial(), z));
}

TEST_CASE("polynomial arithmetic and printing") {
  const std::uint32_t n = 3;
  MultiPoly f = mono(n, {{0, 2}}) - mono(n, {{1, 1}});  // x^2 - y
  MultiPoly g = mono(n, {{1, 2}}) - mono(n, {{0, 1}});  // y^2 - x
  CHECK((f + g).str("s") == "s1^2 + s2^2 - s1 - s2");
  CHECK((f - f).is_zero());
  CHECK((f * g).degree() == 4);
  CHECK(mono(n, {{0, 1}, {1, 2}}, 3).str("s") == "3*s1*s2^2");
  CHECK(MultiPoly(n).str() == "0");

  const std::vector<Rational> point{Rational(2), Rational(4), Rational(0)};
  CHECK(f.eval(point) == Rational(0));
  CHECK(g.eval(point) == Rational(14));
}

TEST_CASE("normal form is a projection") {
  const std::uint32_t n = 2;
  std::vector<MultiPoly> basis{mono(n, {{0, 2}}) - mono(n, {{1, 1}})};
  const MultiPoly f = mono(n, {{0, 3}}) + mono(n, {{0, 1}, {1, 1}}, 2) + mono(n, {{1, 1}}, -1);
  const MultiPoly r = normal_form(f, basis);
  CHECK(normal_form(r, basis) == r);
}

TEST_CASE("principal ideal") {
  const std::uint32_t n = 2;
  const GroebnerResult gb = buchberger({mono(n, {{0, 1}})});
  REQUIRE(gb.status == GbStatus::done);
  REQUIRE(gb.basis.size() == 1);
  CHECK(gb.basis[0] == mono(n, {{0, 1}}));
}

TEST_CASE("x^2 - y, y^2 - x: substitution oracle") {
  const std::uint32_t n = 2;
  const MultiPoly f = mono(n, {{0, 2}}) - mono(n, {{1, 1}});
  const MultiPoly g = mono(n, {{1, 2}}) - mono(n, {{0, 1}});
  const GroebnerResult gb = buchberger({f, g});
  REQUIRE(gb.status == GbStatus::done);
  CHECK(is_groebner(gb.basis));
  // x^4 = (x^2)^2 = y^2 = x modulo the ideal, so x^4 - x reduces to zero
  const MultiPoly probe = mono(n, {{0, 4}}) - mono(n, {{0, 1}});
  CHECK(normal_form(probe, gb.basis).is_zero());
  // and something outside the ideal does not
  CHECK_FALSE(normal_form(mono(n, {{0, 1}}), gb.basis).is_zero());
}

TEST_CASE("textbook elimination pair") {
  const std::uint32_t n = 2;
  const MultiPoly f =
      mono(n, {{0, 2}}) + mono(n, {{1, 2}}) - MultiPoly::constant(n, Rational(1));
  const MultiPoly g = mono(n, {{0, 1}}) - mono(n, {{1, 1}});
  const GroebnerResult gb = buchberger({f, g});
  REQUIRE(gb.status == GbStatus::done);
  CHECK(is_groebner(gb.basis));
  // hand elimination: substituting x = y gives 2y^2 - 1
  const MultiPoly target = mono(n, {{1, 2}}, 2) - MultiPoly::constant(n, Rational(1));
  bool found = false;
  for (const auto& b : gb.basis) {
    MultiPoly scaled = b;
    scaled.make_primitive();
    MultiPoly t = target;
    t.make_primitive();
    if (scaled == t) found = true;
  }
  CHECK(found);
}

TEST_CASE("reduced basis is deterministic and order-independent") {
  const std::uint32_t n = 3;
  const MultiPoly f = mono(n, {{0, 1}, {1, 1}}) - mono(n, {{2, 2}});
  const MultiPoly g = mono(n, {{1, 2}}) - mono(n, {{2, 1}});
  const MultiPoly h = mono(n, {{0, 1}, {2, 1}}, 3) - mono(n, {{1, 1}});
  const GroebnerResult a = buchberger({f, g, h});
  const GroebnerResult b = buchberger({h, f, g});
  REQUIRE(a.status == GbStatus::done);
  REQUIRE(b.status == GbStatus::done);
  CHECK(a.basis == b.basis);
  CHECK(is_groebner(a.basis));
}

TEST_CASE("radical membership") {
  const std::uint32_t n = 2;
  // x in radical(x^2)
  CHECK(radical_member(mono(n, {{0, 1}}), {mono(n, {{0, 2}})}) == Trilean::yes);
  // x not in radical(y)
  CHECK(radical_member(mono(n, {{0, 1}}), {mono(n, {{1, 1}})}) == Trilean::no);
  // x + y is a generator of (x^2 - y^2, x + y)
  const MultiPoly s = mono(n, {{0, 1}}) + mono(n, {{1, 1}});
  const MultiPoly d2 = mono(n, {{0, 2}}) - mono(n, {{1, 2}});
  CHECK(radical_member(s, {d2, s}) == Trilean::yes);
  // zero is in every radical
  CHECK(radical_member(MultiPoly(n), {mono(n, {{1, 1}})}) == Trilean::yes);
}

TEST_CASE("budgets stop the computation with an explicit status") {
  const std::uint32_t n = 3;
  Budget tiny;
  tiny.max_spairs = 1;
  const MultiPoly f = mono(n, {{0, 1}, {1, 1}}) - mono(n, {{2, 2}});
  const MultiPoly g = mono(n, {{1, 2}}) - mono(n, {{2, 1}});
  const MultiPoly h = mono(n, {{0, 1}, {2, 1}}, 3) - mono(n, {{1, 1}});
  const GroebnerResult gb = buchberger({f, g, h}, tiny);
  CHECK(gb.status == GbStatus::budget_exceeded);
  CHECK(radical_member(f, {g, h}, tiny) == Trilean::unknown);
}
