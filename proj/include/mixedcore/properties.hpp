#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mixedcore::properties {

enum class Property {
    EconomyRoundTrip,
    AggregateLinearInMass,
    UtilityLinear,
    LpSelfCheck,
    BangSetsDisjoint,
    WalrasAndSubset,
    DemandHomogeneity,
    IndirectUtilityBound,
    NoDecentralizationAtCrossPrices,
    CoreMaxUnblocked,
    NoncompetitiveCoreCertified,
    RescalingInvariance,
    SupportingPrice,
    EquilibriaUnblocked,
    DecentralizationConsistency,
};

std::vector<Property> all_properties();
std::string_view name(Property property);

struct Tally {
    std::string property;
    std::size_t trials = 0;
    std::size_t passed = 0;
    /// Informational counts that are recorded but never asserted.
    std::map<std::string, std::size_t> notes;
    /// First failing instance, serialized for replay.
    std::optional<nlohmann::json> first_failure;

    bool ok() const { return passed == trials; }
    nlohmann::json to_json() const;
};

/// Runs `trials` seeded instances of one property. Deterministic in
/// (property, seed, trials).
Tally run_property(Property property, std::uint64_t seed, std::size_t trials);

struct SuiteReport {
    std::vector<Tally> tallies;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

/// Every property, `trials` instances each, in declaration order.
SuiteReport run_suite(std::uint64_t seed, std::size_t trials);

}  // namespace mixedcore::properties
