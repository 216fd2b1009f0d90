#include "doctest.h"

#include "core/rational.hpp"

using namespace dagsched;

TEST_SUITE("rational") {

TEST_CASE("string parsing covers fractions, integers and decimals") {
    CHECK(rat_from_string("3/2") == rat(3, 2));
    CHECK(rat_from_string("2") == 2);
    CHECK(rat_from_string("-7/4") == rat(-7, 4));
    CHECK(rat_from_string("0.5") == rat(1, 2));
    // leading zeros must not trigger octal auto-detection
    CHECK(rat_from_string("0.9") == rat(9, 10));
    CHECK(rat_from_string("0.35") == rat(7, 20));
    CHECK(rat_from_string("007") == 7);
    CHECK(rat_from_string("-1.25") == rat(-5, 4));
    CHECK(rat_from_string("1.000") == 1);
    CHECK_THROWS(rat_from_string(""));
    CHECK_THROWS(rat_from_string("1/0"));
}

TEST_CASE("floor and ceiling") {
    CHECK(rat_ceil_ll(rat(7, 2)) == 4);
    CHECK(rat_ceil_ll(rat(-7, 2)) == -3);
    CHECK(rat_ceil_ll(Rat(3)) == 3);
    CHECK(rat_floor_ll(rat(7, 2)) == 3);
    CHECK(rat_floor_ll(rat(-7, 2)) == -4);
}

TEST_CASE("decimal rendering is exact or falls back to the fraction") {
    CHECK(rat_decimal_or_fraction(rat(1, 10)) == "0.1");
    CHECK(rat_decimal_or_fraction(rat(7, 20)) == "0.35");
    CHECK(rat_decimal_or_fraction(Rat(4)) == "4");
    CHECK(rat_decimal_or_fraction(rat(-3, 8)) == "-0.375");
    CHECK(rat_decimal_or_fraction(rat(1, 3)) == "1/3");
}

TEST_CASE("square-root enclosures are tight and ordered") {
    for (unsigned long n : {2ul, 3ul, 5ul, 33ul}) {
        RatInterval e = sqrt_enclosure(n);
        CHECK(e.lo < e.hi);
        CHECK(e.lo * e.lo <= rat(static_cast<long long>(n)));
        CHECK(e.hi * e.hi >= rat(static_cast<long long>(n)));
        CHECK(e.hi - e.lo <= rat(1, 1'000'000'000'000'000'000LL));
    }
}

}  // TEST_SUITE
