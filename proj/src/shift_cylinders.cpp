#include "betalab/shift_cylinders.hpp"

#include <algorithm>

namespace betalab {

namespace {

// Digits of the infinite expansion of 1 materialized to a horizon, with the
// invariant that the true sequence has a nonzero digit after every position.
struct StarDigits {
    DigitStream stream;
    size_t horizon;

    Digit at(size_t i) const {
        auto d = stream.digit(i);
        if (!d) throw depth_exhausted("expansion-of-1 digits exhausted at index " + std::to_string(i));
        return *d;
    }
};

StarDigits star_digits(const Dyadic& beta, size_t depth) {
    return {star_expansion_of_one(beta, depth), depth};
}

// Admissibility automaton: the state after reading a prefix is the set of
// suffix lengths that currently coincide with the star expansion's prefix.
// Appending d is allowed iff d <= star[t] for every tracked t and for t = 0;
// matches stay tracked, strict drops leave the set.
struct TightSet {
    std::vector<size_t> tights;

    // Returns false when the extended word is inadmissible.
    bool advance(Digit d, const StarDigits& star, std::vector<size_t>& next) const {
        next.clear();
        Digit bound0 = star.at(0);
        if (d > bound0) return false;
        if (d == bound0) next.push_back(1);
        for (size_t t : tights) {
            Digit b = star.at(t);
            if (d > b) return false;
            if (d == b) next.push_back(t + 1);
        }
        return true;
    }
};

}  // namespace

bool is_admissible(const Word& w, const Dyadic& beta, size_t depth) {
    if (beta <= Dyadic(1)) throw error("is_admissible: beta must exceed 1");
    if (depth == 0) depth = w.size() + 32;
    if (depth < w.size())
        throw depth_exhausted("is_admissible: depth shorter than the word");
    StarDigits star = star_digits(beta, depth);
    // Shift i is checked against star digit-by-digit; the word's zero tail
    // against an agreeing star prefix decides Less because the star sequence
    // has a nonzero digit beyond any horizon.
    for (size_t i = 0; i < w.size(); ++i) {
        bool decided = false;
        for (size_t j = 0; i + j < w.size(); ++j) {
            Digit ws = w[i + j];
            Digit ss = star.at(j);
            if (ws != ss) {
                if (ws > ss) return false;
                decided = true;
                break;
            }
        }
        (void)decided;  // agreement through the suffix: zero tail vs star => Less
    }
    return true;
}

SigmaResult enumerate_sigma(const Dyadic& beta, size_t n, std::uint64_t cap) {
    if (beta <= Dyadic(1)) throw error("enumerate_sigma: beta must exceed 1");
    if (n == 0) throw error("enumerate_sigma: order must be positive");
    StarDigits star = star_digits(beta, n + 1);

    SigmaResult out;
    struct Frame {
        std::vector<size_t> tights;
        Dyadic value;  // sum_{i<=k} w_i beta^(k-i)
        Digit next_digit = 0;
    };
    std::vector<Frame> stack;
    stack.reserve(n + 1);
    stack.push_back({{}, Dyadic(0), 0});
    Word current;
    std::vector<size_t> scratch;

    while (!stack.empty()) {
        Frame& f = stack.back();
        size_t depth_here = stack.size() - 1;
        if (depth_here == n) {
            if (out.cylinders.size() >= cap)
                throw cap_exceeded("enumerate_sigma: more than " + std::to_string(cap) + " cylinders");
            out.cylinders.push_back({current, f.value, Dyadic(0), false});
            stack.pop_back();
            if (!current.empty()) current.digits.pop_back();
            continue;
        }
        bool descended = false;
        while (f.next_digit <= star.at(0)) {
            Digit d = f.next_digit++;
            if (!TightSet{f.tights}.advance(d, star, scratch)) continue;
            Frame child;
            child.tights = scratch;
            child.value = f.value * beta + Dyadic(bigint(d), 0);
            current.digits.push_back(d);
            stack.push_back(std::move(child));
            descended = true;
            break;
        }
        if (!descended) {
            stack.pop_back();
            if (!current.empty()) current.digits.pop_back();
        }
    }

    // Cylinder lengths come from the partition of [0,1): consecutive scaled
    // left endpoints, closing with beta^n.
    Dyadic total = Dyadic::pow(beta, n);
    for (size_t i = 0; i < out.cylinders.size(); ++i) {
        const Dyadic& right =
            (i + 1 < out.cylinders.size()) ? out.cylinders[i + 1].left_scaled : total;
        out.cylinders[i].len_scaled = right - out.cylinders[i].left_scaled;
        out.cylinders[i].full = out.cylinders[i].len_scaled == Dyadic(1);
    }

    CountReport& rep = out.report;
    rep.n = n;
    rep.sigma_count = out.cylinders.size();
    rep.xi_count = static_cast<std::uint64_t>(
        std::count_if(out.cylinders.begin(), out.cylinders.end(),
                      [](const ShiftCylinder& c) { return c.full; }));
    rep.lower_bound = total;
    Dyadic bn1 = total * beta;
    rep.upper_bound = idiv(Enclosure(bn1), Enclosure(beta - Dyadic(1)), 64);
    Dyadic count(bigint(rep.sigma_count), 0);
    rep.lower_ok = count >= total;
    rep.upper_ok = count * (beta - Dyadic(1)) <= bn1;
    return out;
}

bool is_full_word(const Word& w, const Dyadic& beta) {
    if (w.empty()) throw error("is_full_word: empty word");
    size_t n = w.size();
    Word bumped = increment_last(w);
    OneExpansion one = one_expansion(beta, n);
    for (size_t i = 0; i < n; ++i) {
        // sigma^i(bumped) vs the first n-i digits of the expansion of 1.
        for (size_t j = 0; i + j < n; ++j) {
            Digit a = bumped[i + j];
            Digit b = one.digits[j];
            if (a != b) {
                if (a > b) return false;
                break;
            }
        }
    }
    return true;
}

ProportionReport full_proportion_report(const Dyadic& beta, const Dyadic& lambda,
                                        size_t n_lo, size_t n_hi, std::uint64_t cap) {
    if (lambda.sign() <= 0 || lambda >= Dyadic(1))
        throw error("full_proportion_report: lambda outside (0,1)");
    if (n_lo == 0 || n_hi < n_lo) throw error("full_proportion_report: bad order range");

    ProportionReport rep;
    rep.beta = beta;
    rep.lambda = lambda;
    rep.lambda_below_inv_beta = lambda * beta < Dyadic(1);

    // Certified premise: lambda - lambda*ln(lambda) < (beta-1)^2/beta^3,
    // widened precision until the comparison is strict one way or the other.
    long long prec = 74;  // 64 target bits + ~3 guard digits
    bool premise_ok = false;
    for (;;) {
        Enclosure lnl = ln_enclosure(lambda, prec);
        rep.premise_lhs = isub(Enclosure(lambda), imul(Enclosure(lambda), lnl));
        Dyadic num = (beta - Dyadic(1)) * (beta - Dyadic(1));
        rep.premise_rhs = idiv(Enclosure(num), Enclosure(Dyadic::pow(beta, 3)), prec);
        if (rep.premise_lhs.hi < rep.premise_rhs.lo) {
            premise_ok = true;
            break;
        }
        if (rep.premise_lhs.lo > rep.premise_rhs.hi) {
            premise_ok = false;
            break;
        }
        if (prec >= 4096)
            throw tolerance_unreachable("full_proportion_report: premise comparison undecided");
        prec *= 2;
    }
    rep.hypothesis_violated = !(premise_ok && rep.lambda_below_inv_beta);

    rep.all_ok = !rep.hypothesis_violated;
    for (size_t n = n_lo; n <= n_hi; ++n) {
        SigmaResult sr = enumerate_sigma(beta, n, cap);
        ProportionRow row;
        row.n = n;
        row.sigma_count = sr.report.sigma_count;
        row.xi_count = sr.report.xi_count;
        row.order_in_range = lambda * Dyadic::pow(beta, n) >= Dyadic(1);
        row.ratio_ok = Dyadic(bigint(row.xi_count), 0) >=
                       lambda * Dyadic(bigint(row.sigma_count), 0);
        if (row.order_in_range && !row.ratio_ok) rep.all_ok = false;
        rep.rows.push_back(row);
    }
    return rep;
}

WindowScanReport full_window_scan(const Dyadic& beta, size_t n, std::uint64_t cap) {
    SigmaResult sr = enumerate_sigma(beta, n, cap);
    WindowScanReport rep;
    rep.n = n;
    rep.cylinder_count = sr.cylinders.size();
    if (sr.cylinders.size() < n + 1) return rep;
    size_t window = n + 1;
    // Rolling count of full cylinders inside the window.
    size_t full_in_window = 0;
    for (size_t i = 0; i < sr.cylinders.size(); ++i) {
        if (sr.cylinders[i].full) ++full_in_window;
        if (i + 1 >= window) {
            ++rep.window_count;
            if (full_in_window == 0) {
                ++rep.violations;
                if (rep.violation_at.size() < 16) rep.violation_at.push_back(i + 1 - window);
            }
            if (sr.cylinders[i + 1 - window].full) --full_in_window;
        }
    }
    return rep;
}

}  // namespace betalab
