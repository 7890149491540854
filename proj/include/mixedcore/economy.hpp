#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixedcore/errors.hpp"
#include "mixedcore/rational.hpp"

namespace mixedcore {

/// Per-capita commodity quantities, one entry per good (0-indexed).
using Bundle = RationalVector;

/// Linear utility weights: strictly positive, summing to exactly one.
using UtilityWeights = RationalVector;

/// One agent type. An atomic cohort is a single indivisible agent of measure
/// `mass`; a non-atomic cohort is a continuum of negligible agents whose total
/// measure is `mass`. Endowments are per capita.
struct Cohort {
    std::string id;
    bool atomic = false;
    Rational mass;
    Bundle endowment;
    UtilityWeights utility;

    friend bool operator==(const Cohort&, const Cohort&) = default;
};

struct Economy {
    std::size_t commodities = 0;
    std::vector<Cohort> cohorts;

    std::size_t index_of(const std::string& id) const;
    const Cohort& cohort(const std::string& id) const;

    friend bool operator==(const Economy&, const Economy&) = default;
};

/// Per-capita bundle for every cohort (equal treatment inside a cohort).
struct Allocation {
    std::map<std::string, Bundle> bundles;

    const Bundle& at(const std::string& id) const;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct Violation {
    ErrorCode code;
    std::string message;
};

/// All invariant violations of an already-parsed economy; empty when valid.
std::vector<Violation> economy_violations(const Economy& economy);

/// Throws the first violation as an Error, otherwise returns the economy.
Economy validate_economy(Economy economy);

Bundle aggregate_endowment(const Economy& economy);

/// The allocation that hands every cohort its own endowment.
Allocation endowment_allocation(const Economy& economy);

enum class FeasibilityMode { Exact, FreeDisposal };

/// Throws ShapeMismatch / NegativeQuantity when `x` does not fit `economy`.
void require_shape(const Economy& economy, const Allocation& x);

/// Sum of mass-weighted bundles.
Bundle aggregate(const Economy& economy, const Allocation& x);

bool is_feasible(const Economy& economy, const Allocation& x,
                 FeasibilityMode mode = FeasibilityMode::Exact);

Rational utility(const Cohort& cohort, const Bundle& x);

}  // namespace mixedcore
