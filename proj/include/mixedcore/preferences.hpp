#pragma once

#include <cstddef>
#include <vector>

#include "mixedcore/economy.hpp"

namespace mixedcore {

/// Non-negative, not identically zero price vector, stored normalized so its
/// components sum to one. Proportional inputs construct equal systems.
class PriceSystem {
public:
    explicit PriceSystem(RationalVector prices);

    const RationalVector& prices() const { return prices_; }
    std::size_t size() const { return prices_.size(); }
    const Rational& operator[](std::size_t j) const { return prices_[j]; }
    bool strictly_positive() const;

    Rational value(const Bundle& bundle) const;

    friend bool operator==(const PriceSystem&, const PriceSystem&) = default;

private:
    RationalVector prices_;
};

/// Goods with maximal marginal utility per unit of money, ascending.
using BangSet = std::vector<std::size_t>;

/// {j : a_j p_k >= a_k p_j for all k}, by cross-multiplication.
/// Throws ZeroPrice if some price is zero, ShapeMismatch on length mismatch.
BangSet max_bang_set(const PriceSystem& p, const UtilityWeights& a);

/// The budget p·ω spent entirely on the lowest-indexed bang good.
Bundle demand(const Cohort& cohort, const PriceSystem& p);

/// (p·ω) · max_j a_j / p_j, the optimal utility at prices p.
Rational indirect_utility(const Cohort& cohort, const PriceSystem& p);

/// Indices j with x_j > 0.
std::vector<std::size_t> support(const Bundle& x);

}  // namespace mixedcore
