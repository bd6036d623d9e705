#include <doctest.h>

#include "asymsched/rational.hpp"
#include "asymsched/errors.hpp"
#include "support/corpus.hpp"

using namespace asymsched;

TEST_CASE("[rational] construction keeps lowest terms and positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("[rational] arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(a < Rational(1, 2));
    CHECK(Rational(7, 3) > Rational(2));
}

TEST_CASE("[rational] parse/render round-trips") {
    for (const char* text : {"0", "4", "-7", "1/4", "7/3", "-22/7", "123456789/987654321"}) {
        Rational q = Rational::parse(text);
        CHECK(Rational::parse(q.str()) == q);
    }
    CHECK(Rational::parse("4/8").str() == "1/2");
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/"), ParseError);
}

TEST_CASE("[rational] parse/render round-trips on random values") {
    testsupport::Rng rng(42);
    for (int i = 0; i < 500; ++i) {
        long num = rng.below(2000001) - 1000000;
        long den = 1 + rng.below(999999);
        Rational q(num, den);
        CHECK(Rational::parse(q.str()) == q);
    }
}

TEST_CASE("[rational] integer powers") {
    CHECK(Rational(2).pow_int(10) == Rational(1024));
    CHECK(Rational(2, 3).pow_int(3) == Rational(8, 27));
    CHECK(Rational(2).pow_int(0) == Rational(1));
    CHECK(Rational(2).pow_int(-2) == Rational(1, 4));
}

TEST_CASE("[rational] exact_pow recognizes perfect roots") {
    CHECK(*exact_pow(Rational(4), Rational(1, 2)) == Rational(2));
    CHECK(*exact_pow(Rational(8, 27), Rational(1, 3)) == Rational(2, 3));
    CHECK(*exact_pow(Rational(4), Rational(3, 2)) == Rational(8));
    CHECK(!exact_pow(Rational(2), Rational(1, 2)).has_value());
    CHECK(!exact_pow(Rational(1, 3), Rational(1, 2)).has_value());
}

TEST_CASE("[rational] fixed_pow is a 64-fractional-bit rounding of the real power") {
    // sqrt(2): compare the fixed-point value against the tight rational
    // bracket n/2^64 where n = round(2^64 sqrt 2).
    Rational r = fixed_pow(Rational(2), Rational(1, 2));
    Rational lo = r - Rational(1, 2) * Rational(mpz_class(1), mpz_class(1) << 64);
    Rational hi = r + Rational(1, 2) * Rational(mpz_class(1), mpz_class(1) << 64);
    CHECK(lo * lo <= Rational(2));
    CHECK(hi * hi >= Rational(2));
    // Exact powers pass through unchanged.
    CHECK(fixed_pow(Rational(9), Rational(1, 2)) == Rational(3));
    CHECK(fixed_pow(Rational(4), Rational(-1, 2)) == Rational(1, 2));
}

TEST_CASE("[rational] log threshold comparison") {
    // ln(100)/100 ~ 0.04605: 1/1000 is below, 1/2 is above.
    CHECK(compare_to_log_over_n(Rational(1, 1000), 100) < 0);
    CHECK(compare_to_log_over_n(Rational(1, 2), 100) > 0);
    // n = 1: threshold is exactly zero.
    CHECK(compare_to_log_over_n(Rational(0), 1) == 0);
    CHECK(compare_to_log_over_n(Rational(1, 10), 1) > 0);
    // ln(2)/2 ~ 0.3466.
    CHECK(compare_to_log_over_n(Rational(34, 100), 2) < 0);
    CHECK(compare_to_log_over_n(Rational(35, 100), 2) > 0);
}
