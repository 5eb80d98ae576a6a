#include "betalab/serialize.hpp"

namespace betalab {

void to_json(json& j, const Dyadic& d) {
    j = json{{"m", d.mantissa().str()}, {"e", d.exponent()}, {"dec", d.to_decimal()}};
}

void to_json(json& j, const Enclosure& e) {
    j = json{{"lo", e.lo}, {"hi", e.hi}};
}

void to_json(json& j, const Word& w) { j = word_to_string(w); }

void to_json(json& j, const ShiftCylinder& c) {
    j = json{{"w", c.w},
             {"left_scaled", c.left_scaled},
             {"len_scaled", c.len_scaled},
             {"full", c.full}};
}

void to_json(json& j, const CountReport& r) {
    j = json{{"n", r.n},
             {"sigma", r.sigma_count},
             {"xi", r.xi_count},
             {"lower_bound", r.lower_bound},
             {"upper_bound", r.upper_bound},
             {"lower_ok", r.lower_ok},
             {"upper_ok", r.upper_ok}};
}

void to_json(json& j, const ProportionRow& r) {
    j = json{{"n", r.n},
             {"sigma", r.sigma_count},
             {"xi", r.xi_count},
             {"order_in_range", r.order_in_range},
             {"ratio_ok", r.ratio_ok}};
}

void to_json(json& j, const ProportionReport& r) {
    j = json{{"beta", r.beta},
             {"lambda", r.lambda},
             {"premise_lhs", r.premise_lhs},
             {"premise_rhs", r.premise_rhs},
             {"lambda_below_inv_beta", r.lambda_below_inv_beta},
             {"hypothesis_violated", r.hypothesis_violated},
             {"rows", r.rows},
             {"all_ok", r.all_ok}};
}

void to_json(json& j, const WindowScanReport& r) {
    j = json{{"n", r.n},
             {"cylinders", r.cylinder_count},
             {"windows", r.window_count},
             {"violations", r.violations},
             {"violation_at", r.violation_at}};
}

void to_json(json& j, const LowerBeta& l) {
    j = json{{"is_one", l.is_one}, {"beta", l.beta}};
}

void to_json(json& j, const ParamCylinder& c) {
    j = json{{"w", c.w},
             {"lower_is_one", c.lower_is_one},
             {"lo", c.lo},
             {"hi", c.hi},
             {"full", c.full}};
}

void to_json(json& j, const PhiSlice& s) {
    j = json{{"empty", s.empty},
             {"lo", s.lo},
             {"hi", s.hi},
             {"length", s.length},
             {"clipped_left", s.clipped_left},
             {"clipped_right", s.clipped_right}};
}

void to_json(json& j, const CheckCounter& c) {
    j = json{{"checked", c.checked}, {"violations", c.violations}};
}

void to_json(json& j, const StructuralReport& r) {
    j = json{{"cylinders", r.cylinders},
             {"length_upper", r.length_upper},
             {"full_length_lower", r.full_length_lower},
             {"prefix_at_lower", r.prefix_at_lower},
             {"admissible_above", r.admissible_above},
             {"full_extension", r.full_extension},
             {"tail_premise_count", r.tail_premise_count},
             {"ratio_power", r.ratio_power},
             {"ratio_square", r.ratio_square},
             {"ok", r.ok}};
}

void to_json(json& j, const HitCurve& c) {
    json grid = json::array();
    for (size_t i = 0; i < c.grid.size(); ++i)
        grid.push_back(json{{"N", c.grid[i]},
                            {"hit", c.hit_by[i]},
                            {"fraction", c.fraction_by(i)}});
    json blocks = json::array();
    for (size_t k = 0; k < c.block_hit.size(); ++k)
        blocks.push_back(json{{"from", (std::uint64_t)1 << k},
                              {"block_hit", c.block_hit[k]},
                              {"block_fraction", c.block_fraction(k)},
                              {"tail_hit", c.tail_hit[k]},
                              {"tail_fraction", c.tail_fraction(k)}});
    j = json{{"seed", c.seed},
             {"samples", c.samples},
             {"nmax", c.nmax},
             {"discarded", c.discarded},
             {"grid", grid},
             {"blocks", blocks}};
}

void to_json(json& j, const BetaStar& b) {
    if (b.infinite)
        j = json{{"beta_star", "inf"}, {"rigorous", b.rigorous}};
    else
        j = json{{"beta_star", b.value}, {"rigorous", b.rigorous}};
    if (!b.rigorous) j["heuristic"] = b.heuristic;
}

void to_json(json& j, const RecurrenceSlice& s) {
    j = json{{"n", s.n},
             {"slope", rational_string(s.slope)},
             {"slope_in_window", s.slope_in_window},
             {"full", s.full},
             {"exact", s.exact},
             {"empty", s.empty},
             {"lo", s.lo},
             {"hi", s.hi},
             {"length", s.length},
             {"upper_ok", s.upper_ok},
             {"lower_checked", s.lower_checked},
             {"lower_ok", s.lower_ok}};
    if (s.exact) {
        j["lo_exact"] = rational_string(s.lo_exact);
        j["hi_exact"] = rational_string(s.hi_exact);
        j["length_exact"] = rational_string(s.length_exact);
    }
}

std::string rational_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace betalab
