#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shifttower/errors.hpp"
#include "shifttower/scalars.hpp"

#include <cmath>

using namespace shifttower;

TEST_CASE("root of unity arithmetic") {
  const RootOfUnity z(2, 1);
  CHECK(z * z == RootOfUnity::one(2));
  CHECK(RootOfUnity(6, 7).exponent() == 1);
  CHECK(RootOfUnity(6, -1).exponent() == 5);
  CHECK(RootOfUnity(6, 2).inverse() == RootOfUnity(6, 4));
  CHECK(RootOfUnity(6, 5).pow(3) == RootOfUnity(6, 3));
  CHECK(std::abs(RootOfUnity(4, 1).value() - std::complex<double>(0, 1)) < 1e-15);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK((RootOfUnity(6, a) * RootOfUnity(6, b)).exponent() == (a + b) % 6);
}

TEST_CASE("cyclotomic examples") {
  const auto z = CycNumber::from_root(RootOfUnity(6, 1));
  CHECK((z + (-z)).is_zero());
  CHECK((z + (-z)).formally_zero());

  const auto z2 = CycNumber::from_root(RootOfUnity(2, 1));
  CHECK(z2 * z2 == CycNumber::from_rational(2, 1));

  // (1 + ζ_6^2)·ζ_6^3 = ζ_6^3 + ζ_6^5
  const auto lhs = (CycNumber::from_rational(6, 1) + CycNumber::from_root(RootOfUnity(6, 2))) *
                   CycNumber::from_root(RootOfUnity(6, 3));
  const auto rhs = CycNumber::from_root(RootOfUnity(6, 3)) + CycNumber::from_root(RootOfUnity(6, 5));
  CHECK(lhs == rhs);
  CHECK(lhs.terms() == rhs.terms());
}

TEST_CASE("field equality is not formal equality") {
  // 1 + ζ_2 = 0 although the formal sum has two terms.
  const auto x = CycNumber::from_rational(2, 1) + CycNumber::from_root(RootOfUnity(2, 1));
  CHECK_FALSE(x.formally_zero());
  CHECK(x.is_zero());
  // 1 + ζ_3 + ζ_3^2 = 0
  const auto y = CycNumber::from_rational(3, 1) + CycNumber::from_root(RootOfUnity(3, 1)) +
                 CycNumber::from_root(RootOfUnity(3, 2));
  CHECK(y.is_zero());
  // ζ_6 + ζ_6^5 = 1
  const auto w = CycNumber::from_root(RootOfUnity(6, 1)) + CycNumber::from_root(RootOfUnity(6, 5));
  CHECK(w == CycNumber::from_rational(6, 1));
  CHECK(w.as_rational() == Rational(1));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<BigInt>{1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<BigInt>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
  CHECK(reduce_cyclotomic(6, {{0, 1}}).size() == 2);
}

TEST_CASE("conjugation, complex value and rationals") {
  const auto x = CycNumber::from_root(RootOfUnity(6, 1), Rational(1, 3));
  CHECK(x.conj() == CycNumber::from_root(RootOfUnity(6, 5), Rational(1, 3)));
  CHECK(std::abs(x.to_complex() - std::polar(1.0 / 3, M_PI / 3)) < 1e-15);
  CHECK(x.single_term().has_value());
  CHECK_FALSE(x.as_rational().has_value());
  CHECK((x * Rational(3)).single_term()->second == 1);
  CHECK(to_string(Rational(2, 4)) == "1/2");
}

TEST_CASE("mixed orders are rejected") {
  CHECK_THROWS_AS(CycNumber::from_rational(2, 1) + CycNumber::from_rational(3, 1), ShapeError);
}

TEST_CASE("gcd and lcm") {
  CHECK(gcd_ll(12, 18) == 6);
  CHECK(lcm_ll(2, 3) == 6);
  CHECK(lcm_ll(lcm_ll(2, 1), 6) == 6);
}
