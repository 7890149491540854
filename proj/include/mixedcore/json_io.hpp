#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "mixedcore/economy.hpp"

namespace mixedcore::io {

using nlohmann::json;

// Rationals travel as fraction strings ("3/4", "2"); anything else is a
// MalformedRational error.
json to_json(const Rational& value);
json to_json(const RationalVector& values);
Rational rational_from_json(const json& value, const std::string& where);
RationalVector vector_from_json(const json& value, const std::string& where);

/// Structural parse of an economy document; throws MalformedDocument or
/// MalformedRational. Does not check economic invariants.
Economy parse_economy(const json& document);

/// parse_economy followed by validate_economy.
Economy read_economy(const json& document);

json to_json(const Economy& economy);

Allocation parse_allocation(const json& document);
json to_json(const Allocation& allocation);

/// `{"<id>": "<rational>", ...}`
std::map<std::string, Rational> parse_rational_map(const json& document, const std::string& where);

}  // namespace mixedcore::io
