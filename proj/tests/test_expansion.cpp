#include "doctest.h"

#include <random>

#include "betalab/expansion.hpp"
#include "oracles.hpp"

using namespace betalab;
using oracle::Rat;
using oracle::to_rat;

namespace {
std::vector<Digit> vec(const Word& w) { return w.digits; }
}

TEST_CASE("beta_transform edges") {
    CHECK(beta_transform(Dyadic(0), to_dyadic("1.5")).is_zero());
    CHECK(beta_transform(Dyadic(1), Dyadic(2)).is_zero());               // 2 - floor(2)
    CHECK(beta_transform(Dyadic(1), to_dyadic("1.5")) == to_dyadic("0.5"));
    CHECK_THROWS_AS(beta_transform(to_dyadic("1.25"), Dyadic(2)), error);
    CHECK_THROWS_AS(beta_transform(to_dyadic("0.5"), Dyadic(1)), error);
}

TEST_CASE("greedy digits match the rational oracle") {
    std::mt19937_64 rng(3);
    for (const char* bs : {"1.5", "1.9", "2", "2.5", "1.618"}) {
        Dyadic beta = to_dyadic(bs);
        for (int i = 0; i < 40; ++i) {
            Dyadic x(bigint(rng() % (1ull << 20)), -20);
            auto got = expand(x, beta, 24);
            auto want = oracle::expand(to_rat(x), to_rat(beta), 24);
            CHECK(vec(got.digits) == want.digits);
            CHECK(to_rat(got.remainder) == want.remainder);
        }
    }
    // worked example: 0.75 at 1.5 starts 1000
    CHECK(word_to_string(expand(to_dyadic("0.75"), to_dyadic("1.5"), 4).digits) == "1000");
}

TEST_CASE("f_w is the iterated map on its own cylinder") {
    Dyadic beta = to_dyadic("1.9"), x = to_dyadic("0.7");
    auto r = expand(x, beta, 10);
    CHECK(eval_fw(r.digits, x, beta) == r.remainder);
    CHECK(eval_fw(Word{}, x, beta) == x);
    // digit recurrence: f_{w j} = beta f_w - j
    Word w = prefix(r.digits, 4);
    Word wj = prefix(r.digits, 5);
    CHECK(eval_fw(wj, x, beta) == beta * eval_fw(w, x, beta) - Dyadic((long)wj[4]));
}

TEST_CASE("expansion of 1 and termination") {
    auto one2 = one_expansion(Dyadic(2), 8);
    CHECK(word_to_string(one2.digits) == "20000000");
    CHECK(one2.terminated);
    CHECK(one2.last_nonzero == 1);

    for (const char* bs : {"1.5", "1.9", "2.5", "1.75"}) {
        Dyadic beta = to_dyadic(bs);
        auto got = one_expansion(beta, 20);
        auto want = oracle::expand(Rat(1), to_rat(beta), 20);
        CHECK(vec(got.digits) == want.digits);
        // once the remainder hits zero it stays zero, so the final remainder decides
        CHECK(got.terminated == (want.remainder == 0));
    }
}

TEST_CASE("infinite expansion of 1 matches the oracle stream") {
    CHECK(star_expansion_of_one(Dyadic(2), 8).to_string() == "(1)");
    for (const char* bs : {"1.5", "1.9", "2.5", "3", "1.75"}) {
        Dyadic beta = to_dyadic(bs);
        DigitStream star = star_expansion_of_one(beta, 24);
        auto want = oracle::star_digits(to_rat(beta), 24);
        for (size_t i = 0; i < 24; ++i) {
            auto d = star.digit(i);
            REQUIRE(d.has_value());
            CHECK(*d == want[i]);
        }
    }
}

TEST_CASE("capped orbit tracks the exact orbit while mantissas fit") {
    Dyadic beta = to_dyadic("1.5");  // 2-bit mantissa: exact for ~120 steps at cap 256
    Dyadic x(bigint(0x3f2e9cull), -24);
    CappedOrbit orb(x, beta, 256);
    auto r = expand(x, beta, 100);
    Word got;
    for (int i = 0; i < 100; ++i) got.digits.push_back(orb.step());
    CHECK(got == r.digits);
    CHECK(orb.remainder() == r.remainder);
}

TEST_CASE("capped orbit is deterministic after rounding kicks in") {
    Dyadic beta = to_dyadic("1.8");
    Dyadic x = to_dyadic("0.7");
    auto run = [&] {
        CappedOrbit orb(x, beta, 128);
        Word w;
        for (int i = 0; i < 400; ++i) w.digits.push_back(orb.step());
        return std::pair(w, orb.remainder());
    };
    auto a = run(), b = run();
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.second >= Dyadic(0));
    CHECK(a.second < Dyadic(1));
}

TEST_CASE("orbit landing exactly on an integer boundary is ambiguous") {
    // 2^-20 doubles up to 0.5, whose next pre-floor value is exactly 1
    CappedOrbit orb(Dyadic(bigint(1), -20), Dyadic(2), 64);
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 30; ++i) orb.step();
        }(),
        ambiguous_digit);
}
