#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "betalab/enclosure.hpp"
#include "betalab/expansion.hpp"
#include "betalab/shift_cylinders.hpp"
#include "betalab/word.hpp"

namespace betalab {

// Lower endpoint of the parameter interval of w at x: either exactly 1 (the
// all-zero block for x < 1, or 1 followed by zeros for x = 1) or an enclosure
// of the unique root of x = sum_i w_i beta^-i above 1.
struct LowerBeta {
    bool is_one = false;
    Enclosure beta;  // [1,1] when is_one
};

LowerBeta lower_beta(const Word& w, const Dyadic& x, const Tolerance& tol = {});

// Upper endpoint: the least base at which some prefix of the expansion jumps
// lexicographically past the matching prefix of w. Digit k jumps exactly at
// the root of  x = value of w1..w(k-1) (wk + 1),  so the endpoint is the
// minimum of those n roots. Throws not_in_omega when that minimum does not
// exceed the lower endpoint (the cylinder is empty).
Enclosure upper_beta(const Word& w, const Dyadic& x, const Tolerance& tol = {});

// Exact fullness decision for the parameter cylinder of w: full iff the last
// jump point (the root of f_w = 1) is the minimum of all n jump points, ties
// allowed. Decided by exact sign tests on refining root enclosures; an exact
// tie between two jump points is settled by a polynomial gcd, so the answer
// is never tolerance-limited except at the hard bit ceiling.
bool is_full_param(const Word& w, const Dyadic& x, const Tolerance& tol = {});

struct ParamCylinder {
    Word w;
    bool lower_is_one = false;
    Enclosure lo;  // [1,1] when lower_is_one
    Enclosure hi;
    bool full = false;
};

struct ParamWindowResult {
    std::vector<ParamCylinder> cylinders;  // lexicographic = positional order
    std::uint64_t nodes_visited = 0;
};

inline constexpr std::uint64_t kDefaultParamCap = 1'000'000;

// Order-n parameter cylinders meeting the window (wlo, whi]. Intervals are
// reported unclipped. Children of a cylinder split at the integer crossings of
// beta * f_w(beta); every non-rightmost child attains 1 at its upper endpoint
// and is full by structure unless its lower endpoint is 1, while rightmost
// children are resolved by is_full_param.
ParamWindowResult enumerate_param_window(const Dyadic& x, size_t n,
                                         const Dyadic& wlo, const Dyadic& whi,
                                         const Tolerance& tol = {},
                                         std::uint64_t cap = kDefaultParamCap);

struct PhiSlice {
    bool empty = false;
    Enclosure lo, hi;      // endpoints of {beta in I(w): |f_w(beta) - target| < radius}
    Enclosure length;      // hi - lo, outward; [0,0] when empty
    bool clipped_left = false;   // left end is the cylinder's lower endpoint
    bool clipped_right = false;  // right end is the cylinder's upper endpoint
};

PhiSlice phi_slice(const Word& w, const Dyadic& x, const Dyadic& target,
                   const Dyadic& radius, const Tolerance& tol = {});

struct CheckCounter {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
};

struct StructuralReport {
    std::uint64_t cylinders = 0;
    CheckCounter length_upper;     // |I(w)| <= x^-1 * upper^(1-n)
    CheckCounter full_length_lower;// full w: |I(w)| >= (lower-1)^2 * upper^-(1+n)
    CheckCounter prefix_at_lower;  // expansion just above the lower endpoint is w 0^16
    CheckCounter admissible_above; // w admissible at sampled bases above the lower endpoint
    CheckCounter full_extension;   // full w: w0 and w·d (d <= lower-1) stay full
    std::uint64_t tail_premise_count = 0;  // cylinders with x*lower^n >= 2n^2 and 2n^2 > max(upper, 1/(lower-1))
    CheckCounter ratio_power;      // diagnostics: (upper/lower)^(n+1) < 3
    CheckCounter ratio_square;     // diagnostics: upper < lower^2
    bool ok = false;               // no violations among the non-diagnostic checks
};

StructuralReport structural_checks(const Dyadic& x, size_t n,
                                   const Dyadic& wlo, const Dyadic& whi,
                                   const Tolerance& tol = {},
                                   std::uint64_t cap = kDefaultParamCap);

}  // namespace betalab
