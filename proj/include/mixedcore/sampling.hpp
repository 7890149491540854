#pragma once

#include <cstdint>
#include <random>

#include "mixedcore/core.hpp"
#include "mixedcore/economy.hpp"
#include "mixedcore/lp.hpp"

namespace mixedcore::sampling {

/// Seeded generator whose draws are reproducible across platforms
/// (std::mt19937_64 plus explicit range reduction, no std distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform-ish integer in [lo, hi].
    long uniform(long lo, long hi);
    bool chance(long numerator, long denominator);

private:
    std::mt19937_64 engine_;
};

enum class AtomPolicy { Any, AtLeastOne, Both, None };

/// Integer grid point with entries in [1, grid], divided by its sum.
UtilityWeights random_weights(Rng& rng, std::size_t l, long grid = 9);

/// Entries k/2 with k in [0, 8].
Bundle random_bundle(Rng& rng, std::size_t l);

/// p/q with p in [1, 6], q in [1, 3].
Rational random_mass(Rng& rng);

/// Valid economy with `cohorts` cohorts and between 2 and max_goods goods.
Economy random_economy(Rng& rng, std::size_t cohorts, AtomPolicy atoms, std::size_t max_goods = 5);

/// Two cohorts of distinct type, at least one atom, endowment not Pareto
/// optimal: the class the certifier accepts.
Economy random_certifiable_economy(Rng& rng);

/// Non-trivial economy with two atoms.
Economy random_two_atom_economy(Rng& rng);

/// Economy whose endowment maximizes a random positive welfare weighting,
/// hence is Pareto optimal.
Economy random_pareto_optimal_economy(Rng& rng, std::size_t cohorts);

/// Exactly feasible allocation splitting each good in random proportions.
Allocation random_feasible_allocation(Rng& rng, const Economy& economy);

PriceSystem random_positive_price(Rng& rng, std::size_t l);

/// Positive λ for every cohort.
Lambda random_lambda(Rng& rng, const Economy& economy);

/// Small LP with integer data, a mix of relations and column bound kinds.
/// With `pointed` every column gets at least one finite bound.
lp::LinearProgram random_lp(Rng& rng, std::size_t max_columns, std::size_t max_rows, bool pointed);

}  // namespace mixedcore::sampling
