#include "betalab/enclosure.hpp"

#include <algorithm>

namespace betalab {

Enclosure iadd(const Enclosure& a, const Enclosure& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

Enclosure isub(const Enclosure& a, const Enclosure& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

Enclosure imul(const Enclosure& a, const Enclosure& b) {
    Dyadic c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Dyadic lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (c[i] > hi) hi = c[i];
    }
    return {lo, hi};
}

Enclosure idiv(const Enclosure& a, const Enclosure& b, long long prec) {
    if (b.lo.sign() <= 0 && b.hi.sign() >= 0)
        throw error("idiv: denominator interval contains zero");
    Dyadic lo = std::min({div_round(a.lo, b.lo, prec, Rounding::Down),
                          div_round(a.lo, b.hi, prec, Rounding::Down),
                          div_round(a.hi, b.lo, prec, Rounding::Down),
                          div_round(a.hi, b.hi, prec, Rounding::Down)});
    Dyadic hi = std::max({div_round(a.lo, b.lo, prec, Rounding::Up),
                          div_round(a.lo, b.hi, prec, Rounding::Up),
                          div_round(a.hi, b.lo, prec, Rounding::Up),
                          div_round(a.hi, b.hi, prec, Rounding::Up)});
    return {lo, hi};
}

Enclosure ipow(const Enclosure& a, unsigned long long n) {
    Enclosure r{Dyadic(1), Dyadic(1)};
    Enclosure b = a;
    while (n > 0) {
        if (n & 1ULL) r = imul(r, b);
        n >>= 1;
        if (n > 0) b = imul(b, b);
    }
    return r;
}

namespace {

// atanh series: 2 * sum_{j>=0} t^(2j+1)/(2j+1) on an interval t in [0, 1/2],
// with the truncation tail added outward.
Enclosure atanh2_series(const Enclosure& t, long long prec) {
    Enclosure t2 = imul(t, t);
    Enclosure term = t;  // t^(2j+1)
    Enclosure sum{Dyadic(0), Dyadic(0)};
    long long j = 0;
    while (true) {
        Enclosure contrib = idiv(term, Enclosure(Dyadic(2 * j + 1)), prec + 8);
        sum = iadd(sum, contrib);
        // Tail bound: next term magnitude / (1 - t^2) with t.hi <= 1/2 (factor <= 4/3).
        Enclosure next = imul(term, t2);
        Dyadic tail_hi = div_round(next.hi * Dyadic(2), Dyadic(2 * j + 3), prec + 8, Rounding::Up);
        if (tail_hi <= Dyadic(1, -(prec + 4)) || j > 4 * prec) {
            sum = Enclosure{sum.lo, sum.hi + tail_hi};
            break;
        }
        term = next;
        ++j;
    }
    return iadd(sum, sum);  // times 2
}

Enclosure ln2_enclosure(long long prec) {
    Enclosure third = idiv(Enclosure(Dyadic(1)), Enclosure(Dyadic(3)), prec + 8);
    return atanh2_series(third, prec);
}

}  // namespace

Enclosure ln_enclosure(const Dyadic& x, long long prec) {
    if (x.sign() <= 0) throw error("ln_enclosure: nonpositive argument");
    // Normalize x = a * 2^k with a in [1, 2).
    long long bl = static_cast<long long>(boost::multiprecision::msb(boost::multiprecision::abs(x.mantissa()))) + 1;
    long long k = x.exponent() + bl - 1;
    Dyadic a = x.mul_pow2(-k);  // in [1, 2)
    // ln a = 2 atanh((a-1)/(a+1)), argument in [0, 1/3].
    Enclosure t = idiv(Enclosure(a - Dyadic(1)), Enclosure(a + Dyadic(1)), prec + 8);
    Enclosure lna = atanh2_series(t, prec);
    if (k == 0) return lna;
    Enclosure l2 = ln2_enclosure(prec + 8);
    return iadd(lna, imul(Enclosure(Dyadic(static_cast<long>(k))), l2));
}

Enclosure exp_enclosure(const Enclosure& x, long long prec) {
    // Range-reduce so |arg| <= 1/2, then square back.
    long long s = 0;
    Enclosure t = x;
    Dyadic bound = Dyadic(1, -1);
    Dyadic amax = std::max(t.hi.abs(), t.lo.abs());
    while (amax > bound) {
        t = Enclosure{t.lo.mul_pow2(-1), t.hi.mul_pow2(-1)};
        amax = amax.mul_pow2(-1);
        ++s;
        if (s > 64) throw error("exp_enclosure: argument too large");
    }
    long long p = prec + 2 * s + 16;
    // exp(t) = sum t^k / k!, |t| <= 1/2: tail after K terms <= 2 |t|^(K+1)/(K+1)!.
    Enclosure sum{Dyadic(1), Dyadic(1)};
    Enclosure term{Dyadic(1), Dyadic(1)};
    bigint kfact = 1;
    long long kk = 0;
    while (true) {
        ++kk;
        term = imul(term, t);
        kfact *= kk;
        Enclosure contrib = idiv(term, Enclosure(Dyadic(kfact, 0)), p);
        sum = iadd(sum, contrib);
        Dyadic tmag = std::max(term.lo.abs(), term.hi.abs());
        Dyadic tail = div_round(tmag, Dyadic(bigint(kfact * (kk + 1)), 0), p, Rounding::Up).mul_pow2(1);
        if (tail <= Dyadic(1, -(p - 4)) || kk > 4 * p) {
            sum = Enclosure{sum.lo - tail, sum.hi + tail};
            break;
        }
    }
    for (long long i = 0; i < s; ++i) sum = imul(sum, sum);
    return sum;
}

Enclosure solve_increasing(const std::function<Dyadic(const Dyadic&)>& g,
                           Dyadic lo, Dyadic hi, const Dyadic& target,
                           const Tolerance& tol) {
    if (lo > hi) throw error("solve_increasing: empty bracket");
    Dyadic glo = g(lo);
    Dyadic ghi = g(hi);
    if (glo == target) return Enclosure(lo);
    if (ghi == target) return Enclosure(hi);
    if (glo > target || ghi < target)
        throw no_sign_change("solve_increasing: bracket does not straddle target");
    Dyadic eps = tol.eps();
    while (hi - lo > eps) {
        Dyadic mid = (lo + hi).mul_pow2(-1);
        Dyadic gm = g(mid);
        if (gm == target) return Enclosure(mid);
        if (gm < target)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

Enclosure bisect_predicate(const std::function<bool(const Dyadic&)>& p,
                           Dyadic lo, Dyadic hi, const Tolerance& tol) {
    if (lo > hi) throw error("bisect_predicate: empty bracket");
    if (!p(lo) || p(hi))
        throw no_sign_change("bisect_predicate: predicate not true at lo / false at hi");
    Dyadic eps = tol.eps();
    while (hi - lo > eps) {
        Dyadic mid = (lo + hi).mul_pow2(-1);
        if (p(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

}  // namespace betalab
