#include <doctest.h>

#include "monoext/error.hpp"
#include "monoext/rational.hpp"

using namespace monoext;

TEST_CASE("parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(to_fraction_string(Rational(2)) == "2/1");
  CHECK(to_fraction_string(parse_rational("-3/9")) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("doubles convert exactly") {
  CHECK(rational_from_double(0.375) == Rational(3, 8));
  CHECK(rational_from_double(0.1).get_d() == 0.1);
}
