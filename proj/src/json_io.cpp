#include "mixedcore/json_io.hpp"

namespace mixedcore::io {

namespace {

const json& member(const json& object, const char* key, const std::string& where) {
    if (!object.is_object()) {
        throw Error(ErrorCode::MalformedDocument, where + " must be a JSON object");
    }
    auto it = object.find(key);
    if (it == object.end()) {
        throw Error(ErrorCode::MalformedDocument, where + " is missing \"" + key + "\"");
    }
    return *it;
}

}  // namespace

json to_json(const Rational& value) { return value.str(); }

json to_json(const RationalVector& values) {
    json out = json::array();
    for (const auto& v : values) {
        out.push_back(v.str());
    }
    return out;
}

Rational rational_from_json(const json& value, const std::string& where) {
    if (!value.is_string()) {
        throw Error(ErrorCode::MalformedRational, where + " must be a fraction string");
    }
    auto parsed = Rational::parse(value.get<std::string>());
    if (!parsed) {
        throw Error(ErrorCode::MalformedRational,
                    where + ": '" + value.get<std::string>() + "' is not a fraction");
    }
    return *parsed;
}

RationalVector vector_from_json(const json& value, const std::string& where) {
    if (!value.is_array()) {
        throw Error(ErrorCode::MalformedDocument, where + " must be an array");
    }
    RationalVector out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(rational_from_json(value[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Economy parse_economy(const json& document) {
    Economy economy;
    const json& l = member(document, "commodities", "economy");
    if (!l.is_number_integer() || l.get<long long>() <= 0) {
        throw Error(ErrorCode::MalformedDocument, "\"commodities\" must be a positive integer");
    }
    economy.commodities = static_cast<std::size_t>(l.get<long long>());

    const json& cohorts = member(document, "cohorts", "economy");
    if (!cohorts.is_array() || cohorts.empty()) {
        throw Error(ErrorCode::MalformedDocument, "\"cohorts\" must be a non-empty array");
    }
    for (std::size_t i = 0; i < cohorts.size(); ++i) {
        const json& entry = cohorts[i];
        const std::string where = "cohorts[" + std::to_string(i) + "]";
        Cohort c;
        const json& id = member(entry, "id", where);
        const json& atomic = member(entry, "atomic", where);
        if (!id.is_string() || !atomic.is_boolean()) {
            throw Error(ErrorCode::MalformedDocument, where + ": id must be a string, atomic a bool");
        }
        c.id = id.get<std::string>();
        c.atomic = atomic.get<bool>();
        c.mass = rational_from_json(member(entry, "mass", where), where + ".mass");
        c.endowment = vector_from_json(member(entry, "endowment", where), where + ".endowment");
        c.utility = vector_from_json(member(entry, "utility", where), where + ".utility");
        economy.cohorts.push_back(std::move(c));
    }
    return economy;
}

Economy read_economy(const json& document) { return validate_economy(parse_economy(document)); }

json to_json(const Economy& economy) {
    json cohorts = json::array();
    for (const auto& c : economy.cohorts) {
        cohorts.push_back({{"id", c.id},
                           {"atomic", c.atomic},
                           {"mass", to_json(c.mass)},
                           {"endowment", to_json(c.endowment)},
                           {"utility", to_json(c.utility)}});
    }
    return {{"commodities", economy.commodities}, {"cohorts", std::move(cohorts)}};
}

Allocation parse_allocation(const json& document) {
    const json& bundles = member(document, "bundles", "allocation");
    if (!bundles.is_object()) {
        throw Error(ErrorCode::MalformedDocument, "\"bundles\" must be an object");
    }
    Allocation x;
    for (const auto& [id, bundle] : bundles.items()) {
        x.bundles.emplace(id, vector_from_json(bundle, "bundles." + id));
    }
    return x;
}

json to_json(const Allocation& allocation) {
    json bundles = json::object();
    for (const auto& [id, bundle] : allocation.bundles) {
        bundles[id] = to_json(bundle);
    }
    return {{"bundles", std::move(bundles)}};
}

std::map<std::string, Rational> parse_rational_map(const json& document, const std::string& where) {
    if (!document.is_object()) {
        throw Error(ErrorCode::MalformedDocument, where + " must be an object");
    }
    std::map<std::string, Rational> out;
    for (const auto& [key, value] : document.items()) {
        out.emplace(key, rational_from_json(value, where + "." + key));
    }
    return out;
}

}  // namespace mixedcore::io
