#include <doctest.h>

#include <set>
#include <stdexcept>

#include "ddlab/rational.hpp"
#include "ddlab/rng.hpp"

using namespace ddlab;

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0).str() == "0");
  CHECK(Rational(-6, 4).str() == "-3/2");
  CHECK(Rational(5).str() == "5");
}

TEST_CASE("rational parsing") {
  CHECK(Rational::from_string("3/4") == Rational(3, 4));
  CHECK(Rational::from_string("-7") == Rational(-7));
  CHECK(Rational::from_string("0") == Rational(0));
  CHECK(Rational::from_string("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/ 2"), std::invalid_argument);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK(Rational(9, 10).pow(2) == Rational(81, 100));
  CHECK(Rational(-2, 3).pow(3) == Rational(-8, 27));
  CHECK(Rational(7, 3).inverse() == Rational(3, 7));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
}

TEST_CASE("rational ordering and map keys") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1) < Rational(0));
  std::set<Rational> keys{Rational(1, 2), Rational(2, 4), Rational(3, 4)};
  CHECK(keys.size() == 2);
}

TEST_CASE("rational field axioms on random values") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    Rational a = rng.small_rational(50, 20);
    Rational b = rng.small_rational(50, 20);
    Rational c = rng.small_rational(50, 20);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("half-angle points sit exactly on the unit circle") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto pt = half_angle_point(rng.rational31());
    CHECK(pt.sin_v * pt.sin_v + pt.cos_v * pt.cos_v == Rational(1));
  }
}
