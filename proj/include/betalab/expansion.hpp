#pragma once

#include "betalab/dyadic.hpp"
#include "betalab/word.hpp"

namespace betalab {

// One exact step of the base-beta map: beta*x - floor(beta*x).
// Requires 0 <= x <= 1 and beta > 1; x = 1 is allowed (first step of the
// expansion of 1).
Dyadic beta_transform(const Dyadic& x, const Dyadic& beta);

struct ExpandResult {
    Word digits;      // first n digits of the greedy expansion
    Dyadic remainder; // exact orbit point after n steps, in [0,1)
};

// First n digits of the greedy expansion of x in base beta, exactly.
ExpandResult expand(const Dyadic& x, const Dyadic& beta, size_t n);

// f_w(beta) = beta^n * (x - sum_i w_i beta^-i), evaluated exactly by Horner:
// r0 = x, r_i = beta*r_{i-1} - w_i. Equals the orbit remainder when w is the
// digit block of x at beta.
Dyadic eval_fw(const Word& w, const Dyadic& x, const Dyadic& beta);

struct OneExpansion {
    Word digits;        // digits of the expansion of 1, length n (zero-padded past termination)
    bool terminated;    // orbit of 1 hit zero exactly
    size_t last_nonzero; // 1-based index of the final nonzero digit when terminated
};

// Expansion of 1 in base beta to n digits, with exact termination detection.
OneExpansion one_expansion(const Dyadic& beta, size_t n);

// The infinite expansion of 1: equal to the plain expansion when that never
// terminates (partial stream with the given horizon); when the expansion of 1
// terminates with last nonzero digit at position k, the stream is the periodic
// repetition of the first k digits with the last one decremented.
DigitStream star_expansion_of_one(const Dyadic& beta, size_t horizon);

// Proxy orbit for long Monte Carlo runs: the remainder is rounded to `cap`
// fractional bits (to nearest) after every step, so the trajectory is the
// dyadic proxy of the true orbit. A step throws ambiguous_digit when the
// pre-floor value lands within 2^-(cap-16) of an integer, i.e. when the floor
// decision is at the rounding scale.
class CappedOrbit {
  public:
    CappedOrbit(const Dyadic& x, const Dyadic& beta, long long cap = 256);

    const Dyadic& remainder() const { return r_; }
    Digit step();

  private:
    Dyadic r_;
    Dyadic beta_;
    long long cap_;
    Dyadic margin_;
};

}  // namespace betalab
