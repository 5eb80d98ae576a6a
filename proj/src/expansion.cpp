#include "betalab/expansion.hpp"

namespace betalab {

namespace {

void check_domain(const Dyadic& x, const Dyadic& beta) {
    if (x.sign() < 0 || x > Dyadic(1)) throw error("expansion: x outside [0,1]");
    if (beta <= Dyadic(1)) throw error("expansion: beta must exceed 1");
}

Digit floor_digit(const Dyadic& y) {
    bigint f = y.floor();
    if (f < 0) throw error("expansion: negative digit");
    return f.convert_to<Digit>();
}

}  // namespace

Dyadic beta_transform(const Dyadic& x, const Dyadic& beta) {
    check_domain(x, beta);
    Dyadic y = beta * x;
    return y - Dyadic(y.floor(), 0);
}

ExpandResult expand(const Dyadic& x, const Dyadic& beta, size_t n) {
    check_domain(x, beta);
    ExpandResult out;
    out.digits.digits.reserve(n);
    Dyadic r = x;
    for (size_t i = 0; i < n; ++i) {
        Dyadic y = beta * r;
        Digit d = floor_digit(y);
        out.digits.digits.push_back(d);
        r = y - Dyadic(bigint(d), 0);
    }
    out.remainder = std::move(r);
    return out;
}

Dyadic eval_fw(const Word& w, const Dyadic& x, const Dyadic& beta) {
    Dyadic r = x;
    for (Digit d : w.digits) r = beta * r - Dyadic(bigint(d), 0);
    return r;
}

OneExpansion one_expansion(const Dyadic& beta, size_t n) {
    if (beta <= Dyadic(1)) throw error("expansion: beta must exceed 1");
    OneExpansion out;
    out.terminated = false;
    out.last_nonzero = 0;
    out.digits.digits.reserve(n);
    Dyadic r(1);
    for (size_t i = 0; i < n; ++i) {
        if (r.is_zero()) {
            out.digits.digits.push_back(0);
            continue;
        }
        Dyadic y = beta * r;
        Digit d = floor_digit(y);
        out.digits.digits.push_back(d);
        r = y - Dyadic(bigint(d), 0);
        if (r.is_zero()) {
            // First exact zero: the digit emitted here is the last nonzero one.
            out.terminated = true;
            out.last_nonzero = i + 1;
        }
    }
    return out;
}

DigitStream star_expansion_of_one(const Dyadic& beta, size_t horizon) {
    if (horizon == 0) horizon = 1;
    OneExpansion e = one_expansion(beta, horizon);
    if (!e.terminated) return DigitStream::partial(std::move(e.digits));
    Word block = prefix(e.digits, e.last_nonzero);
    --block.digits.back();  // last digit was >= 1 at the first exact zero
    return DigitStream::eventually_periodic(Word(), std::move(block));
}

CappedOrbit::CappedOrbit(const Dyadic& x, const Dyadic& beta, long long cap)
    : r_(x), beta_(beta), cap_(cap), margin_(Dyadic(1, -(cap - 16))) {
    check_domain(x, beta);
    if (cap < 64) throw error("capped orbit: cap below 64 bits");
    r_ = r_.round_to(cap_, Rounding::Nearest);
}

Digit CappedOrbit::step() {
    Dyadic y = beta_ * r_;
    bigint f = y.floor();
    Dyadic frac = y - Dyadic(f, 0);
    if (frac < margin_ || frac > Dyadic(1) - margin_)
        throw ambiguous_digit("capped orbit: floor decision within rounding margin");
    if (f < 0) throw error("capped orbit: negative digit");
    r_ = frac.round_to(cap_, Rounding::Nearest);
    return f.convert_to<Digit>();
}

}  // namespace betalab
