#include "doctest.h"

#include "deckrecon/rational.hpp"

using deckrecon::Rational;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
    CHECK(-Rational(3, 7) == Rational(-3, 7));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1, 2) / Rational(0));
}

TEST_CASE("rational comparisons") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 7) == Rational(1));
    CHECK(Rational(5, 2) > Rational(2));
    CHECK(Rational(5, 2) >= Rational(5, 2));
    CHECK(Rational(5, 2) <= Rational(5, 2));
}

TEST_CASE("floor, ceil and round half up, including negatives") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(6).floor() == 6);
    CHECK(Rational(6).ceil() == 6);

    CHECK(Rational(5, 2).round_half_up() == 3);   // tie goes up
    CHECK(Rational(-5, 2).round_half_up() == -2); // tie goes up
    CHECK(Rational(49, 10).round_half_up() == 5);
    CHECK(Rational(44, 10).round_half_up() == 4);
    CHECK(Rational(-49, 10).round_half_up() == -5);
    CHECK(Rational(-44, 10).round_half_up() == -4);
}

TEST_CASE("string form and ceil_div") {
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(deckrecon::ceil_div(98, 10) == 10);
    CHECK(deckrecon::ceil_div(100, 10) == 10);
    CHECK(deckrecon::ceil_div(1, 7) == 1);
}

TEST_CASE("abs and to_double") {
    CHECK(Rational(-3, 4).abs() == Rational(3, 4));
    CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
}
