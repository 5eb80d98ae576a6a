#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "betalab/param_cylinders.hpp"
#include "oracles.hpp"

using namespace betalab;

namespace {

const double kGolden = 1.6180339887498949;

double mid(const Enclosure& e) { return e.mid().to_double(); }

}  // namespace

TEST_CASE("lower endpoint: the three shapes") {
    // blocks realized arbitrarily close to base 1
    LowerBeta a = lower_beta(parse_word("00"), to_dyadic("0.7"));
    CHECK(a.is_one);
    LowerBeta b = lower_beta(parse_word("10"), Dyadic(1));
    CHECK(b.is_one);

    // interior root: value("11") = 1 at the golden ratio
    LowerBeta c = lower_beta(parse_word("11"), Dyadic(1));
    CHECK_FALSE(c.is_one);
    CHECK(std::abs(mid(c.beta) - kGolden) < 1e-12);
    CHECK(c.beta.width() <= Dyadic(1, -60));

    // the value root exists but the digits jump over the word first
    CHECK_THROWS_AS(lower_beta(parse_word("19"), to_dyadic("0.9")), not_in_omega);
    // no base > 1 reaches x at all
    CHECK_THROWS_AS(lower_beta(parse_word("0"), Dyadic(1)), not_in_omega);
    CHECK_THROWS_AS(lower_beta(Word(), Dyadic(1)), error);
}

TEST_CASE("upper endpoint: minimum of the digit jump points") {
    CHECK(std::abs(mid(upper_beta(parse_word("11"), Dyadic(1))) - 2.0) < 1e-12);
    CHECK(std::abs(mid(upper_beta(parse_word("10"), Dyadic(1))) - kGolden) < 1e-12);
    // for 00 at x = 0.7 the second digit jumps first, at sqrt(10/7)
    CHECK(std::abs(mid(upper_beta(parse_word("00"), to_dyadic("0.7"))) - std::sqrt(10.0 / 7.0)) <
          1e-9);
    // 12 at x = 0.7: the first digit jumps first, at 2/0.7
    CHECK(std::abs(mid(upper_beta(parse_word("12"), to_dyadic("0.7"))) - 20.0 / 7.0) < 1e-9);
    // empty cylinders are rejected, not returned as inverted intervals
    CHECK_THROWS_AS(upper_beta(parse_word("02"), to_dyadic("0.5")), not_in_omega);
    CHECK_THROWS_AS(upper_beta(parse_word("13"), to_dyadic("0.7")), not_in_omega);
}

TEST_CASE("fullness of a parameter cylinder") {
    CHECK(is_full_param(parse_word("11"), Dyadic(1)));       // both jumps tie at 2
    CHECK_FALSE(is_full_param(parse_word("10"), Dyadic(1))); // bottom endpoint is 1
    CHECK(is_full_param(parse_word("10"), to_dyadic("0.7")));
    CHECK_FALSE(is_full_param(parse_word("12"), to_dyadic("0.7")));
    CHECK_THROWS_AS(is_full_param(parse_word("13"), to_dyadic("0.7")), not_in_omega);
}

TEST_CASE("window enumeration at x = 1, order 2") {
    ParamWindowResult r = enumerate_param_window(Dyadic(1), 2, to_dyadic("1.1"), to_dyadic("1.99"));
    REQUIRE(r.cylinders.size() == 2);
    const ParamCylinder& c10 = r.cylinders[0];
    const ParamCylinder& c11 = r.cylinders[1];
    CHECK(word_to_string(c10.w) == "10");
    CHECK(c10.lower_is_one);
    CHECK_FALSE(c10.full);
    CHECK(std::abs(mid(c10.hi) - kGolden) < 1e-9);
    CHECK(word_to_string(c11.w) == "11");
    CHECK(std::abs(mid(c11.lo) - kGolden) < 1e-9);
    CHECK(std::abs(mid(c11.hi) - 2.0) < 1e-9);
    CHECK(c11.full);
    CHECK(r.nodes_visited >= 3);
}

TEST_CASE("window enumeration covers and tiles the base axis") {
    Dyadic x = to_dyadic("0.7");
    const size_t n = 3;
    ParamWindowResult r = enumerate_param_window(x, n, Dyadic(1), Dyadic(4));
    REQUIRE(r.cylinders.size() > 10);

    for (size_t i = 0; i + 1 < r.cylinders.size(); ++i) {
        // strict lexicographic order
        CHECK(compare_words(r.cylinders[i].w, r.cylinders[i + 1].w) == Ord::Less);
        // shared boundary: consecutive endpoint enclosures intersect
        const Enclosure& a = r.cylinders[i].hi;
        const Enclosure& b = r.cylinders[i + 1].lo;
        CHECK(std::max(a.lo, b.lo) <= std::min(a.hi, b.hi));
    }

    // the expansion at an interior point reproduces the word
    for (const ParamCylinder& c : r.cylinders) {
        if (!(c.lo.hi < c.hi.lo)) continue;  // boundary sliver, nothing strictly inside
        Dyadic m = (c.lo.hi + c.hi.lo).mul_pow2(-1);
        CHECK(expand(x, m, n).digits == c.w);
        if (!c.lower_is_one) CHECK(c.full == is_full_param(c.w, x));
    }

    // every base on a grid lands in a listed cylinder that contains it
    Dyadic slack(1, -40);
    for (int k = 1; k <= 188; ++k) {
        Dyadic b = Dyadic(1) + Dyadic(bigint(k), -6);  // 1 + k/64, up to ~3.94
        Word w = expand(x, b, n).digits;
        auto it = std::lower_bound(r.cylinders.begin(), r.cylinders.end(), w,
                                   [](const ParamCylinder& c, const Word& key) {
                                       return compare_words(c.w, key) == Ord::Less;
                                   });
        REQUIRE(it != r.cylinders.end());
        REQUIRE(it->w == w);
        CHECK(it->lo.lo - slack <= b);
        CHECK(b <= it->hi.hi + slack);
    }
}

TEST_CASE("window filter keeps only intersecting cylinders") {
    Dyadic x = to_dyadic("0.7");
    ParamWindowResult r = enumerate_param_window(x, 2, Dyadic(2), to_dyadic("2.5"));
    CHECK(!r.cylinders.empty());
    for (const ParamCylinder& c : r.cylinders) {
        CHECK(c.hi.hi > Dyadic(2));
        Dyadic bottom = c.lower_is_one ? Dyadic(1) : c.lo.lo;
        CHECK(bottom < to_dyadic("2.5"));
    }
    // 2.3 lies in [2.107.., 2.549..) = I(11)
    Word w = expand(x, to_dyadic("2.3"), 2).digits;
    bool present = false;
    for (const ParamCylinder& c : r.cylinders) present |= (c.w == w);
    CHECK(present);
}

TEST_CASE("slice of a cylinder by a target band") {
    // w = 1 at x = 1: I = (1,2), f(beta) = beta - 1
    PhiSlice s = phi_slice(parse_word("1"), Dyadic(1), to_dyadic("0.5"), to_dyadic("0.25"));
    CHECK_FALSE(s.empty);
    CHECK_FALSE(s.clipped_left);
    CHECK_FALSE(s.clipped_right);
    CHECK(std::abs(mid(s.lo) - 1.25) < 1e-12);
    CHECK(std::abs(mid(s.hi) - 1.75) < 1e-12);
    CHECK(std::abs(mid(s.length) - 0.5) < 1e-12);

    // band around 0 clips at the cylinder bottom
    PhiSlice t = phi_slice(parse_word("1"), Dyadic(1), Dyadic(0), to_dyadic("0.5"));
    CHECK_FALSE(t.empty);
    CHECK(t.clipped_left);
    CHECK_FALSE(t.clipped_right);
    CHECK(t.lo.is_point());
    CHECK(t.lo.lo == Dyadic(1));
    CHECK(std::abs(mid(t.hi) - 1.5) < 1e-12);

    // band entirely above the attained values
    PhiSlice u = phi_slice(parse_word("1"), Dyadic(1), Dyadic(5), to_dyadic("0.25"));
    CHECK(u.empty);
    CHECK(u.length.is_point());
    CHECK(u.length.lo.is_zero());

    CHECK_THROWS_AS(phi_slice(parse_word("1"), Dyadic(1), Dyadic(0), Dyadic(0)), error);
    CHECK_THROWS_AS(phi_slice(parse_word("13"), to_dyadic("0.7"), Dyadic(0), Dyadic(1)),
                    not_in_omega);
}

TEST_CASE("structural sweep is clean on a well-behaved window") {
    StructuralReport rep = structural_checks(to_dyadic("0.7"), 3, to_dyadic("1.05"), Dyadic(3));
    CHECK(rep.cylinders > 5);
    CHECK(rep.ok);
    CHECK(rep.length_upper.checked == rep.cylinders);
    CHECK(rep.length_upper.violations == 0);
    CHECK(rep.full_length_lower.violations == 0);
    CHECK(rep.prefix_at_lower.violations == 0);
    CHECK(rep.admissible_above.violations == 0);
    CHECK(rep.full_extension.violations == 0);
    CHECK(rep.admissible_above.checked >= rep.cylinders);
}

TEST_CASE("parameter enumeration cap") {
    CHECK_THROWS_AS(enumerate_param_window(to_dyadic("0.7"), 4, to_dyadic("1.05"), Dyadic(3),
                                           Tolerance{}, 3),
                    cap_exceeded);
}
