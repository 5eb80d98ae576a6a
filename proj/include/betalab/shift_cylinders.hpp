#pragma once

#include <cstdint>
#include <vector>

#include "betalab/dyadic.hpp"
#include "betalab/enclosure.hpp"
#include "betalab/expansion.hpp"
#include "betalab/word.hpp"

namespace betalab {

// Cylinder of the order-n partition of [0,1) for a fixed base. Endpoints are
// stored scaled by beta^n, which keeps them dyadic: the real interval is
// [left_scaled/beta^n, (left_scaled+len_scaled)/beta^n). A cylinder has the
// maximal length beta^-n exactly when len_scaled == 1.
struct ShiftCylinder {
    Word w;
    Dyadic left_scaled;
    Dyadic len_scaled;
    bool full = false;
};

struct CountReport {
    size_t n = 0;
    std::uint64_t sigma_count = 0;
    std::uint64_t xi_count = 0;
    Dyadic lower_bound;        // beta^n, exact
    Enclosure upper_bound;     // beta^(n+1)/(beta-1), outward-rounded
    bool lower_ok = false;     // sigma_count >= beta^n, exact test
    bool upper_ok = false;     // sigma_count * (beta-1) <= beta^(n+1), exact test
};

struct SigmaResult {
    std::vector<ShiftCylinder> cylinders;  // lexicographic order
    CountReport report;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Admissibility of w as a digit block of the base-beta shift: every suffix of
// w padded with zeros must precede the infinite expansion of 1. Depth 0 picks
// |w| + 32 guard digits. Agreement through the word's zero tail decides Less
// because the infinite expansion of 1 is never eventually zero.
bool is_admissible(const Word& w, const Dyadic& beta, size_t depth = 0);

// All admissible words of order n in lexicographic order, with exact scaled
// cylinder endpoints derived from the partition.
SigmaResult enumerate_sigma(const Dyadic& beta, size_t n,
                            std::uint64_t cap = kDefaultEnumerationCap);

// Maximal-length test by the prefix criterion: every suffix of the word with
// its last digit incremented stays <= the matching prefix of the expansion of
// 1 (the true digits, including a terminating tail of zeros).
bool is_full_word(const Word& w, const Dyadic& beta);

struct ProportionRow {
    size_t n = 0;
    std::uint64_t sigma_count = 0;
    std::uint64_t xi_count = 0;
    bool order_in_range = false;  // lambda * beta^n >= 1, exact
    bool ratio_ok = false;        // xi_count >= lambda * sigma_count, exact
};

struct ProportionReport {
    Dyadic beta, lambda;
    Enclosure premise_lhs;    // lambda - lambda*ln(lambda), certified
    Enclosure premise_rhs;    // (beta-1)^2 / beta^3, certified
    bool lambda_below_inv_beta = false;  // lambda * beta < 1, exact
    bool hypothesis_violated = false;    // premise fails; rows become informational
    std::vector<ProportionRow> rows;
    bool all_ok = false;
};

// Checks xi/sigma >= lambda over the order range after certifying the
// premise lambda - lambda*ln(lambda) < (beta-1)^2/beta^3 with outward
// rounding. A failed premise marks the report informational instead of
// asserting the rows.
ProportionReport full_proportion_report(const Dyadic& beta, const Dyadic& lambda,
                                        size_t n_lo, size_t n_hi,
                                        std::uint64_t cap = kDefaultEnumerationCap);

struct WindowScanReport {
    size_t n = 0;
    std::uint64_t cylinder_count = 0;
    std::uint64_t window_count = 0;
    std::uint64_t violations = 0;           // windows of n+1 cylinders with no full one
    std::vector<std::uint64_t> violation_at; // start indices (capped at 16 entries)
};

WindowScanReport full_window_scan(const Dyadic& beta, size_t n,
                                  std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace betalab
