#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"

using namespace mixedcore;
using fixtures::q;

TEST_CASE("parse accepts integers and fractions in lowest terms") {
    CHECK(Rational::parse("3/4")->str() == "3/4");
    CHECK(Rational::parse("6/8")->str() == "3/4");
    CHECK(Rational::parse("-2")->str() == "-2");
    CHECK(Rational::parse("0/5")->str() == "0");
    CHECK(Rational::parse("4/-2") == std::nullopt);
    CHECK(Rational::parse("1/0") == std::nullopt);
    CHECK(Rational::parse("0.5") == std::nullopt);
    CHECK(Rational::parse("") == std::nullopt);
    CHECK(Rational::parse("1/") == std::nullopt);
    CHECK(Rational::parse(" 1") == std::nullopt);
}

TEST_CASE("arithmetic is exact") {
    CHECK(q("1/3") + q("1/6") == q("1/2"));
    CHECK(q("3/4") * q("4/3") == Rational(1));
    CHECK(q("1/2") - q("3/4") == q("-1/4"));
    CHECK(q("2/3") / q("4/9") == q("3/2"));
    CHECK((-q("5/7")).str() == "-5/7");
    CHECK(q("-5/7").abs() == q("5/7"));
    CHECK(q("-5/7").reciprocal() == q("-7/5"));
    CHECK(q("6/4").numerator() == Rational(3));
    CHECK(q("6/4").denominator() == Rational(2));
    CHECK_THROWS_AS(q("1/2") / Rational(0), std::domain_error);
}

TEST_CASE("large values do not overflow") {
    Rational x(1);
    for (int i = 0; i < 100; ++i) {
        x *= Rational(1000000007L, 3);
    }
    for (int i = 0; i < 100; ++i) {
        x /= Rational(1000000007L, 3);
    }
    CHECK(x == Rational(1));
    CHECK(Rational(9223372036854775807LL) + Rational(1) > Rational(9223372036854775807LL));
}

TEST_CASE("ordering and signs") {
    CHECK(q("1/3") < q("1/2"));
    CHECK(q("-1/3") > q("-1/2"));
    CHECK(q("2/4") == q("1/2"));
    CHECK(q("-1/9").is_negative());
    CHECK(Rational(0).is_zero());
    CHECK(q("1/9").sign() == 1);
}

TEST_CASE("vector helpers") {
    const RationalVector a = fixtures::v({"1/2", "1/3"});
    const RationalVector b = fixtures::v({"2", "3"});
    CHECK(dot(a, b) == Rational(2));
    CHECK(sum(a) == q("5/6"));
    CHECK(scaled(a, Rational(6)) == fixtures::v({"3", "2"}));
    std::ostringstream os;
    os << q("-3/9");
    CHECK(os.str() == "-1/3");
}
