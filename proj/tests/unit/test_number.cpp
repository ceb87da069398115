#include <cmath>
#include <limits>

#include "doctest.h"
#include "stochsym/expr/number.hpp"

using stochsym::expr::Number;

TEST_CASE("rationals are reduced with a positive denominator") {
    auto q = Number::rational(6, -4);
    CHECK(q.exact());
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    CHECK(q.to_string() == "-3/2");
}

TEST_CASE("exact arithmetic") {
    auto a = Number::rational(1, 3);
    auto b = Number::rational(1, 6);
    CHECK((a + b) == Number::rational(1, 2));
    CHECK((a * b) == Number::rational(1, 18));
    CHECK((a - a).is_zero());
    CHECK(Number::rational(-2, 3).reciprocal() == Number::rational(-3, 2));
    CHECK(Number::rational(2, 3).pow(-2) == Number::rational(9, 4));
}

TEST_CASE("overflow promotes to double") {
    auto big = Number::rational(std::numeric_limits<std::int64_t>::max() / 2 + 1);
    auto s = big + big + big;
    CHECK_FALSE(s.exact());
    CHECK(s.to_double() == doctest::Approx(1.5 * 9223372036854775808.0));
}

TEST_CASE("mixed exact and real") {
    auto r = Number::rational(1, 2) + Number::real(0.25);
    CHECK_FALSE(r.exact());
    CHECK(r.to_double() == 0.75);
}

TEST_CASE("ordering puts exact before inexact at equal value") {
    CHECK(compare(Number::rational(1, 2), Number::real(0.5)) < 0);
    CHECK(compare(Number::rational(1), Number::rational(2)) < 0);
    CHECK(Number::rational(-1).is_minus_one());
    CHECK(Number::rational(-1, 7).is_negative());
}

TEST_CASE("zero reciprocal throws") { CHECK_THROWS(Number::rational(0).reciprocal()); }
