#include "doctest.h"
#include "rgather/rational.hpp"

using rgather::Rational;

TEST_CASE("rational arithmetic stays normalized") {
  Rational a(1, 2), b(1, 3);
  CHECK((a + b) == Rational(5, 6));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a / b) == Rational(3, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
}

TEST_CASE("rational comparisons cross-multiply exactly") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(1, 3) > Rational(33, 100));
  CHECK(Rational(7, 7) == Rational(1));
  CHECK(Rational(1'000'000, 3) < Rational(1'000'001, 3));
}

TEST_CASE("floor and floor_div") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(6, 3).floor() == 2);
  Rational t(4);
  CHECK(t.floor_div(5) == 1);
  CHECK(t.floor_div(8) == 2);
  CHECK(Rational(3, 7).floor_div(2) == 4);  // floor(14/3)
  CHECK_THROWS_AS(Rational(0).floor_div(1), rgather::Error);
}

TEST_CASE("parse accepts p and p/q") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-4/6") == Rational(-2, 3));
  CHECK_THROWS_AS(Rational::parse("1/0"), rgather::Error);
  CHECK_THROWS_AS(Rational::parse("x"), rgather::Error);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), rgather::Error);
  CHECK(Rational::parse("1/2").str() == "1/2");
  CHECK(Rational::parse("4/2").str() == "2");
}
