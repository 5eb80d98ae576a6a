#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "betalab/dyadic.hpp"
#include "betalab/enclosure.hpp"
#include "betalab/expansion.hpp"
#include "betalab/measure_lab.hpp"
#include "betalab/param_cylinders.hpp"
#include "betalab/shift_cylinders.hpp"
#include "betalab/word.hpp"

// JSON renderings shared by the CLI and the python bindings. Dyadics carry
// the exact (m, e) pair alongside a 30-significant-digit decimal.

namespace betalab {

using json = nlohmann::ordered_json;

void to_json(json& j, const Dyadic& d);
void to_json(json& j, const Enclosure& e);
void to_json(json& j, const Word& w);
void to_json(json& j, const ShiftCylinder& c);
void to_json(json& j, const CountReport& r);
void to_json(json& j, const ProportionRow& r);
void to_json(json& j, const ProportionReport& r);
void to_json(json& j, const WindowScanReport& r);
void to_json(json& j, const LowerBeta& l);
void to_json(json& j, const ParamCylinder& c);
void to_json(json& j, const PhiSlice& s);
void to_json(json& j, const CheckCounter& c);
void to_json(json& j, const StructuralReport& r);
void to_json(json& j, const HitCurve& c);
void to_json(json& j, const BetaStar& b);
void to_json(json& j, const RecurrenceSlice& s);

std::string rational_string(const Rational& r);

// FNV-1a 64-bit, used for config fingerprints in scan summaries.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace betalab
