#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freespectra/series.hpp"

using namespace freespectra;
using series::PowerSeries;
using series::Rational;
using series::RationalComplex;

TEST_CASE("rational complex arithmetic is exact") {
    const RationalComplex a(Rational(1, 3), Rational(2, 7));
    const RationalComplex b(Rational(-2, 5), Rational(1, 2));
    const RationalComplex prod = a * b;
    CHECK(prod.re == Rational(1, 3) * Rational(-2, 5) - Rational(2, 7) * Rational(1, 2));
    const RationalComplex quot = prod / b;
    CHECK(quot == a);
    CHECK_THROWS_AS(a / RationalComplex(0), DegenerateError);
    CHECK(RationalComplex::from_double(0.5).re == Rational(1, 2));
    CHECK(RationalComplex::from_double(0.1).re == Rational(0.1));  // exact binary value
}

TEST_CASE("series multiplication and reciprocal") {
    // (1 + u)^2 = 1 + 2u + u^2
    PowerSeries one_plus(3);
    one_plus[0] = RationalComplex(1);
    one_plus[1] = RationalComplex(1);
    const auto sq = series::mul(one_plus, one_plus, 2);
    CHECK(sq[0] == RationalComplex(1));
    CHECK(sq[1] == RationalComplex(2));
    CHECK(sq[2] == RationalComplex(1));

    // reciprocal of 1 - u is the geometric series
    PowerSeries geom_den(2);
    geom_den[0] = RationalComplex(1);
    geom_den[1] = RationalComplex(-1);
    const auto geom = series::reciprocal(geom_den, 8);
    for (int k = 0; k <= 8; ++k) CHECK(geom[k] == RationalComplex(1));

    // a * (1/a) = 1 for a random-ish rational series
    std::mt19937_64 rng(3);
    PowerSeries a(9);
    a[0] = RationalComplex(Rational(3, 2));
    for (int k = 1; k <= 8; ++k)
        a[k] = RationalComplex(Rational(static_cast<int>(rng() % 19) - 9,
                                        1 + static_cast<int>(rng() % 7)));
    const auto inv = series::reciprocal(a, 8);
    const auto prod = series::mul(a, inv, 8);
    CHECK(prod[0] == RationalComplex(1));
    for (int k = 1; k <= 8; ++k) CHECK(prod[k].is_zero());

    PowerSeries no_const(3);
    CHECK_THROWS_AS(series::reciprocal(no_const, 3), DegenerateError);
}

TEST_CASE("composition") {
    // compose 1/(1-u) with u = w + w^2: coefficients count compositions
    PowerSeries outer(4);
    for (int k = 0; k <= 3; ++k) outer[k] = RationalComplex(1);
    PowerSeries inner(3);
    inner[1] = RationalComplex(1);
    inner[2] = RationalComplex(1);
    const auto comp = series::compose(outer, inner, 3);
    CHECK(comp[0] == RationalComplex(1));
    CHECK(comp[1] == RationalComplex(1));
    CHECK(comp[2] == RationalComplex(2));
    CHECK(comp[3] == RationalComplex(3));

    PowerSeries bad_inner(2);
    bad_inner[0] = RationalComplex(1);
    CHECK_THROWS_AS(series::compose(outer, bad_inner, 2), InvalidInput);
}

TEST_CASE("compositional inverse of the shifted geometric map") {
    // g(u) = u/(1-u) = u + u^2 + ...; inverse is w/(1+w) = w - w^2 + w^3 - ...
    const int order = 10;
    PowerSeries g(order + 1);
    for (int k = 1; k <= order; ++k) g[k] = RationalComplex(1);
    const auto h = series::compositional_inverse(g, order);
    for (int k = 1; k <= order; ++k)
        CHECK(h[k] == RationalComplex(k % 2 == 1 ? 1 : -1));
}

TEST_CASE("compositional inverse round trip on random series") {
    std::mt19937_64 rng(17);
    const int order = 12;
    for (int trial = 0; trial < 10; ++trial) {
        PowerSeries g(order + 1);
        g[1] = RationalComplex(1);
        for (int k = 2; k <= order; ++k)
            g[k] = RationalComplex(Rational(static_cast<int>(rng() % 11) - 5,
                                            1 + static_cast<int>(rng() % 5)),
                                   Rational(static_cast<int>(rng() % 7) - 3, 2));
        const auto h = series::compositional_inverse(g, order);
        const auto round = series::compose(g, h, order);
        CHECK(round[0].is_zero());
        CHECK(round[1] == RationalComplex(1));
        for (int k = 2; k <= order; ++k) CHECK(round[k].is_zero());
    }
    PowerSeries bad(3);
    bad[1] = RationalComplex(2);  // g'(0) != 1
    CHECK_THROWS_AS(series::compositional_inverse(bad, 3), InvalidInput);
}
