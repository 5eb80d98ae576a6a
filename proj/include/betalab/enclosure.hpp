#pragma once

#include <functional>

#include "betalab/dyadic.hpp"

namespace betalab {

// Certified interval [lo, hi] with dyadic endpoints, lo <= hi.
struct Enclosure {
    Dyadic lo, hi;

    Enclosure() = default;
    Enclosure(Dyadic v) : lo(v), hi(std::move(v)) {}
    Enclosure(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw error("enclosure: lo > hi");
    }

    Dyadic width() const { return hi - lo; }
    Dyadic mid() const { return (lo + hi).mul_pow2(-1); }
    bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }
    bool is_point() const { return lo == hi; }
};

// Bisection tolerance: stop at width 2^-bits; escalation doubles bits up to
// the hard ceiling max_bits.
struct Tolerance {
    long long bits = 64;
    long long max_bits = 4096;

    Dyadic eps() const { return Dyadic(1, -bits); }

    Tolerance escalated() const {
        if (bits >= max_bits)
            throw tolerance_unreachable("tolerance ceiling 2^-" + std::to_string(max_bits) + " reached");
        Tolerance t = *this;
        t.bits = std::min(bits * 2, max_bits);
        return t;
    }
};

// Outward-rounded interval operations at `prec` fractional bits. Inputs and
// outputs always contain the exact real result.
Enclosure iadd(const Enclosure& a, const Enclosure& b);
Enclosure isub(const Enclosure& a, const Enclosure& b);
Enclosure imul(const Enclosure& a, const Enclosure& b);
Enclosure idiv(const Enclosure& a, const Enclosure& b, long long prec);
Enclosure ipow(const Enclosure& a, unsigned long long n);

// Certified elementary enclosures (width about 2^-prec).
Enclosure ln_enclosure(const Dyadic& x, long long prec);   // x > 0
Enclosure exp_enclosure(const Enclosure& x, long long prec);

// Root of g(t) = target for exact strictly increasing g with
// g(lo) <= target <= g(hi); result width <= tol (exact hits collapse to a point).
Enclosure solve_increasing(const std::function<Dyadic(const Dyadic&)>& g,
                           Dyadic lo, Dyadic hi, const Dyadic& target,
                           const Tolerance& tol);

// Boundary of a monotone predicate that is true at lo and false at hi;
// returns [a, b] with p(a) true, p(b) false, b - a <= 2^-bits.
Enclosure bisect_predicate(const std::function<bool(const Dyadic&)>& p,
                           Dyadic lo, Dyadic hi, const Tolerance& tol);

}  // namespace betalab
