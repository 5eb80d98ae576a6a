"""Python surface of the beta-expansion laboratory.

Numeric inputs are decimal strings; they parse onto the dyadic grid the C++
core computes on. Structured results come back as plain dicts/lists matching
the CLI's JSON output.
"""

from _betalab import (
    CapExceeded,
    NotInOmega,
    ParseError,
    ToleranceUnreachable,
    admissible,
    beta_star,
    expand,
    full_check_param,
    full_check_shift,
    omega,
    phi_slice,
    proportion,
    recurrence_slice,
    scan_param,
    scan_recurrence,
    sigma,
    star,
    structural,
    tail_sum,
)

__all__ = [
    "CapExceeded",
    "NotInOmega",
    "ParseError",
    "ToleranceUnreachable",
    "admissible",
    "beta_star",
    "expand",
    "full_check_param",
    "full_check_shift",
    "omega",
    "phi_slice",
    "proportion",
    "recurrence_slice",
    "scan_param",
    "scan_recurrence",
    "sigma",
    "star",
    "structural",
    "tail_sum",
]
