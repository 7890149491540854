#include "mixedcore/preferences.hpp"

namespace mixedcore {

PriceSystem::PriceSystem(RationalVector prices) : prices_(std::move(prices)) {
    if (prices_.empty()) {
        throw Error(ErrorCode::InvalidPrice, "price system has no components");
    }
    for (const auto& p : prices_) {
        if (p.is_negative()) {
            throw Error(ErrorCode::InvalidPrice, "negative price " + p.str());
        }
    }
    const Rational total = sum(prices_);
    if (total.is_zero()) {
        throw Error(ErrorCode::InvalidPrice, "all prices are zero");
    }
    for (auto& p : prices_) {
        p /= total;
    }
}

bool PriceSystem::strictly_positive() const {
    for (const auto& p : prices_) {
        if (!p.is_positive()) {
            return false;
        }
    }
    return true;
}

Rational PriceSystem::value(const Bundle& bundle) const {
    if (bundle.size() != prices_.size()) {
        throw Error(ErrorCode::ShapeMismatch, "bundle and price lengths differ");
    }
    return dot(prices_, bundle);
}

namespace {

void require_positive_prices(const PriceSystem& p, std::size_t length) {
    if (p.size() != length) {
        throw Error(ErrorCode::ShapeMismatch, "price has " + std::to_string(p.size()) +
                                                  " components, expected " + std::to_string(length));
    }
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j].is_zero()) {
            throw Error(ErrorCode::ZeroPrice, "good " + std::to_string(j) + " has price zero");
        }
    }
}

}  // namespace

BangSet max_bang_set(const PriceSystem& p, const UtilityWeights& a) {
    require_positive_prices(p, a.size());
    BangSet out;
    for (std::size_t j = 0; j < a.size(); ++j) {
        bool maximal = true;
        for (std::size_t k = 0; k < a.size() && maximal; ++k) {
            maximal = a[j] * p[k] >= a[k] * p[j];
        }
        if (maximal) {
            out.push_back(j);
        }
    }
    return out;
}

Bundle demand(const Cohort& cohort, const PriceSystem& p) {
    const BangSet bang = max_bang_set(p, cohort.utility);
    Bundle x(cohort.utility.size(), Rational(0));
    const std::size_t good = bang.front();
    x[good] = p.value(cohort.endowment) / p[good];
    return x;
}

Rational indirect_utility(const Cohort& cohort, const PriceSystem& p) {
    const BangSet bang = max_bang_set(p, cohort.utility);
    const std::size_t good = bang.front();
    return p.value(cohort.endowment) * cohort.utility[good] / p[good];
}

std::vector<std::size_t> support(const Bundle& x) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j].is_positive()) {
            out.push_back(j);
        }
    }
    return out;
}

}  // namespace mixedcore
