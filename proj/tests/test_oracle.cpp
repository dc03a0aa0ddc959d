#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freespectra/freesum.hpp"
#include "freespectra/oracle.hpp"

using namespace freespectra;
using oracle::AlgebraElement;
using oracle::BigInt;
using oracle::Complex;
using oracle::GroupSpec;
using oracle::GroupWord;

namespace {

GroupWord random_word(std::mt19937_64& rng, const GroupSpec& group, int max_len) {
    GroupWord w;
    const int len = static_cast<int>(rng() % (max_len + 1));
    int prev = -1;
    for (int k = 0; k < len; ++k) {
        int factor = static_cast<int>(rng() % group.factors());
        if (factor == prev) factor = (factor + 1) % group.factors();
        if (group.factors() == 1) break;
        const int e = 1 + static_cast<int>(rng() % (group.orders[factor] - 1));
        w.letters.emplace_back(factor, e);
        prev = factor;
    }
    return w;
}

}  // namespace

TEST_CASE("word concatenation reduces at the seam") {
    const GroupSpec group({2, 3});
    const GroupWord u{{{0, 1}}};
    const GroupWord v{{{1, 1}}};
    CHECK(oracle::word_concat(group, u, u).is_identity());

    // (u v) (v^2 u) -> u v^3 u -> u u -> e
    const GroupWord uv{{{0, 1}, {1, 1}}};
    const GroupWord v2u{{{1, 2}, {0, 1}}};
    CHECK(oracle::word_concat(group, uv, v2u).is_identity());

    const GroupWord w{{{0, 1}, {1, 2}}};
    CHECK(oracle::word_concat(group, GroupWord{}, w) == w);
    CHECK(oracle::word_concat(group, w, GroupWord{}) == w);
}

TEST_CASE("word concatenation is associative (fuzz)") {
    const GroupSpec group({2, 3, 4});
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto a = random_word(rng, group, 4);
        const auto b = random_word(rng, group, 4);
        const auto c = random_word(rng, group, 4);
        const auto left = oracle::word_concat(group, oracle::word_concat(group, a, b), c);
        const auto right = oracle::word_concat(group, a, oracle::word_concat(group, b, c));
        REQUIRE(left == right);
    }
}

TEST_CASE("algebra multiplication") {
    const GroupSpec group({2, 3});
    using Elem = AlgebraElement<BigInt>;
    Elem one_plus_u = Elem::unit();
    one_plus_u += Elem::word(GroupWord{{{0, 1}}});
    Elem one_minus_u = Elem::unit();
    one_minus_u -= Elem::word(GroupWord{{{0, 1}}});
    const auto prod = oracle::algebra_mul(group, one_plus_u, one_minus_u);
    CHECK(prod.terms.empty());  // (1+u)(1-u) = 1 - u^2 = 0

    Elem a = Elem::word(GroupWord{{{0, 1}, {1, 2}}}, BigInt(3));
    a += Elem::word(GroupWord{{{1, 1}}}, BigInt(-2));
    const auto same = oracle::algebra_mul(group, a, Elem::unit());
    CHECK(same.terms == a.terms);
}

TEST_CASE("geometric resolvent inverse in the group algebra") {
    // (1 - s u)^{-1} = (1 + s u)/(1 - s^2) for u of order 2
    const GroupSpec group({2, 3});
    using Elem = AlgebraElement<Complex>;
    const Complex s(0.3, 0.2);
    Elem inv = Elem::unit();
    inv += Elem::word(GroupWord{{{0, 1}}}, s);
    inv *= 1.0 / (1.0 - s * s);
    Elem factor = Elem::unit();
    factor -= Elem::word(GroupWord{{{0, 1}}}, s);
    const auto prod = oracle::algebra_mul(group, inv, factor);
    CHECK(std::abs(prod.trace() - Complex(1.0, 0.0)) < 1e-15);
    for (const auto& [w, c] : prod.terms)
        if (!w.is_identity()) CHECK(std::abs(c) < 1e-15);
}

TEST_CASE("trace moments by word enumeration") {
    const GroupSpec group({2, 3});
    CHECK(oracle::trace_moment(group, 0) == 1);
    CHECK(oracle::trace_moment(group, 1) == 0);
    CHECK(oracle::trace_moment(group, 2) == 1);
    CHECK(oracle::trace_moment(group, 5) == 5);
    CHECK_THROWS_AS(oracle::trace_moment(group, 25), CapacityError);
    CHECK_THROWS_AS(oracle::trace_moment(group, -1), InvalidInput);
}

TEST_CASE("trace moments are invariant under factor permutation") {
    const GroupSpec a({2, 3, 4}), b({4, 2, 3});
    for (int p = 0; p <= 8; ++p)
        CHECK(oracle::trace_moment(a, p) == oracle::trace_moment(b, p));
}

TEST_CASE("trace moments match the formal free convolution") {
    const GroupSpec group({2, 3});
    std::vector<std::vector<series::RationalComplex>> sequences;
    for (int m : {2, 3}) {
        std::vector<series::RationalComplex> seq(11);
        for (int k = 0; k <= 10; ++k) seq[k] = series::RationalComplex(k % m == 0 ? 1 : 0);
        sequences.push_back(std::move(seq));
    }
    const auto moments = freesum::free_convolution_moments(sequences, 10);
    for (int p = 0; p <= 10; ++p) {
        CHECK(moments[p].im == 0);
        CHECK(moments[p].re == series::Rational(oracle::trace_moment(group, p)));
    }
}

TEST_CASE("L2 norm bound for products (fuzz)") {
    const GroupSpec group({2, 3});
    using Elem = AlgebraElement<Complex>;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    auto l2 = [](const Elem& e) {
        double n = 0.0;
        for (const auto& [w, c] : e.terms) n += std::norm(c);
        return std::sqrt(n);
    };
    for (int trial = 0; trial < 200; ++trial) {
        Elem a, b;
        for (int k = 0; k < 5; ++k) {
            a += Elem::word(random_word(rng, group, 3), Complex(coeff(rng), coeff(rng)));
            b += Elem::word(random_word(rng, group, 3), Complex(coeff(rng), coeff(rng)));
        }
        double crude = 0.0;
        for (const auto& [w, c] : a.terms) crude += std::abs(c);
        CHECK(l2(oracle::algebra_mul(group, a, b)) <= crude * l2(b) + 1e-12);
    }
}

TEST_CASE("ball words and the ball operator") {
    const GroupSpec group({2, 3});
    const auto ball0 = oracle::ball_words(group, 0);
    REQUIRE(ball0.size() == 1);
    CHECK(ball0[0].is_identity());

    const auto ball1 = oracle::ball_words(group, 1);
    REQUIRE(ball1.size() == 4);  // e, u, v, v^2
    CHECK(ball1[0].is_identity());
    CHECK(ball1[1] == GroupWord{{{0, 1}}});
    CHECK(ball1[2] == GroupWord{{{1, 1}}});
    CHECK(ball1[3] == GroupWord{{{1, 2}}});

    const std::vector<Complex> weights{{1.0, 0.0}, {1.0, 0.0}};
    const auto m0 = oracle::ball_operator(group, weights, 0);
    REQUIRE(m0.rows() == 1);
    CHECK(std::abs(m0(0, 0)) < 1e-15);  // both generators move e off the ball

    const auto m1 = oracle::ball_operator(group, weights, 1);
    REQUIRE(m1.rows() == 4);
    // u * e = u, v * e = v; u * u = e; v * v = v^2, v * v^2 = e
    CHECK(std::abs(m1(1, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(m1(2, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(m1(0, 1) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(m1(3, 2) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(m1(0, 3) - Complex(1, 0)) < 1e-15);
    // absolute column sums bounded by sum of |weights|
    for (int col = 0; col < 4; ++col) {
        double sum = 0.0;
        for (int row = 0; row < 4; ++row) sum += std::abs(m1(row, col));
        CHECK(sum <= 2.0 + 1e-15);
    }

    CHECK_THROWS_AS(oracle::ball_words(group, 12, 100), CapacityError);
}
