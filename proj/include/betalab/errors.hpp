#pragma once

#include <stdexcept>
#include <string>

namespace betalab {

// Base class for all library errors so callers can catch the whole family.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input text could not be parsed (words, streams, decimals, rate specs).
struct parse_error : error {
    using error::error;
};

// A digit index or word position outside the valid range.
struct index_out_of_range : error {
    using error::error;
};

// A lexicographic comparison could not be decided within the requested depth.
struct depth_exhausted : error {
    using error::error;
};

// Bisection bracket does not straddle the target.
struct no_sign_change : error {
    using error::error;
};

// Tolerance escalation hit the hard precision ceiling without resolving.
struct tolerance_unreachable : error {
    using error::error;
};

// An enumeration exceeded its configured output cap.
struct cap_exceeded : error {
    using error::error;
};

// A word is not realized as an expansion prefix for any base above the root.
struct not_in_omega : error {
    using error::error;
};

// A capped-precision orbit step could not commit to a digit.
struct ambiguous_digit : error {
    using error::error;
};

// Slice order too small for the slope window of the affine-recurrence solve.
struct slope_too_small : error {
    using error::error;
};

// Rate shape outside the analytically supported family.
struct unsupported_form : error {
    using error::error;
};

}  // namespace betalab
