#include <numeric>
#include <random>
#include <stdexcept>

#include "core/rational.hpp"
#include "doctest.h"

using fsr::Rational;

TEST_CASE("decimal literals parse exactly") {
  CHECK(Rational::parse("0.4") == Rational(2, 5));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse(" .5 ") == Rational(1, 2));
  CHECK(Rational::parse("1.50") == Rational(3, 2));
}

TEST_CASE("malformed literals are rejected") {
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("."), std::invalid_argument);
}

TEST_CASE("canonical form") {
  Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational::parse(Rational(22, 7).str()) == Rational(22, 7));
}

TEST_CASE("0.3 - 3*0.1 is exactly zero") {
  Rational d = Rational::parse("0.3") - Rational(3) * Rational::parse("0.1");
  CHECK(d == Rational(0));
  CHECK(d.is_zero());
}

TEST_CASE("ordering agrees with cross multiplication") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    long long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational x(a, b), y(c, d);
    CHECK((x < y) == (a * d < c * b));
    CHECK((x == y) == (a * d == c * b));
    // Sum oracle: reduced a/b + c/d.
    long long sn = a * d + c * b, sd = b * d;
    long long g = std::gcd(sn < 0 ? -sn : sn, sd);
    CHECK((x + y) == Rational(sn / g, sd / g));
  }
}

TEST_CASE("overflow is reported, not wrapped") {
  Rational big(INT64_MAX / 2 + 1);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
}
