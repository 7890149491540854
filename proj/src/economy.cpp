#include "mixedcore/economy.hpp"

#include <set>

namespace mixedcore {

std::size_t Economy::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < cohorts.size(); ++i) {
        if (cohorts[i].id == id) {
            return i;
        }
    }
    throw Error(ErrorCode::UnknownCohortId, "no cohort named '" + id + "'");
}

const Cohort& Economy::cohort(const std::string& id) const { return cohorts[index_of(id)]; }

const Bundle& Allocation::at(const std::string& id) const {
    auto it = bundles.find(id);
    if (it == bundles.end()) {
        throw Error(ErrorCode::ShapeMismatch, "allocation has no bundle for '" + id + "'");
    }
    return it->second;
}

std::vector<Violation> economy_violations(const Economy& economy) {
    std::vector<Violation> out;
    const auto l = economy.commodities;
    if (l == 0) {
        out.push_back({ErrorCode::MalformedDocument, "commodity count must be positive"});
        return out;
    }
    if (economy.cohorts.empty()) {
        out.push_back({ErrorCode::MalformedDocument, "economy has no cohorts"});
        return out;
    }

    std::set<std::string> seen;
    bool shapes_ok = true;
    for (const auto& c : economy.cohorts) {
        const std::string who = "cohort '" + c.id + "'";
        if (!seen.insert(c.id).second) {
            out.push_back({ErrorCode::DuplicateCohortId, who + " appears more than once"});
        }
        if (!c.mass.is_positive()) {
            out.push_back({ErrorCode::NonPositiveMass, who + " has mass " + c.mass.str()});
        }
        if (c.endowment.size() != l) {
            out.push_back({ErrorCode::LengthMismatch, who + " endowment has length " +
                                                          std::to_string(c.endowment.size())});
            shapes_ok = false;
        } else {
            for (std::size_t j = 0; j < l; ++j) {
                if (c.endowment[j].is_negative()) {
                    out.push_back({ErrorCode::NegativeQuantity,
                                   who + " endowment of good " + std::to_string(j) + " is negative"});
                }
            }
        }
        if (c.utility.size() != l) {
            out.push_back({ErrorCode::LengthMismatch,
                           who + " utility has length " + std::to_string(c.utility.size())});
        } else {
            bool positive = true;
            for (const auto& w : c.utility) {
                positive = positive && w.is_positive();
            }
            const Rational total = sum(c.utility);
            if (!positive || total != 1) {
                out.push_back({ErrorCode::WeightsNotNormalized,
                               who + " utility weights must be positive and sum to 1 (sum " +
                                   total.str() + ")"});
            }
        }
    }

    if (shapes_ok) {
        for (std::size_t j = 0; j < l; ++j) {
            Rational total;
            for (const auto& c : economy.cohorts) {
                total += c.mass * c.endowment[j];
            }
            if (!total.is_positive()) {
                out.push_back({ErrorCode::ZeroAggregateCommodity,
                               "aggregate endowment of good " + std::to_string(j) + " is " +
                                   total.str()});
            }
        }
    }
    return out;
}

Economy validate_economy(Economy economy) {
    auto violations = economy_violations(economy);
    if (!violations.empty()) {
        throw Error(violations.front().code, violations.front().message);
    }
    return economy;
}

Bundle aggregate_endowment(const Economy& economy) {
    return aggregate(economy, endowment_allocation(economy));
}

Allocation endowment_allocation(const Economy& economy) {
    Allocation x;
    for (const auto& c : economy.cohorts) {
        x.bundles.emplace(c.id, c.endowment);
    }
    return x;
}

void require_shape(const Economy& economy, const Allocation& x) {
    if (x.bundles.size() != economy.cohorts.size()) {
        throw Error(ErrorCode::ShapeMismatch, "allocation covers " +
                                                  std::to_string(x.bundles.size()) +
                                                  " cohorts, economy has " +
                                                  std::to_string(economy.cohorts.size()));
    }
    for (const auto& c : economy.cohorts) {
        const Bundle& b = x.at(c.id);
        if (b.size() != economy.commodities) {
            throw Error(ErrorCode::ShapeMismatch, "bundle for '" + c.id + "' has length " +
                                                      std::to_string(b.size()));
        }
        for (const auto& q : b) {
            if (q.is_negative()) {
                throw Error(ErrorCode::NegativeQuantity, "bundle for '" + c.id + "' is negative");
            }
        }
    }
}

Bundle aggregate(const Economy& economy, const Allocation& x) {
    Bundle total(economy.commodities);
    for (const auto& c : economy.cohorts) {
        const Bundle& b = x.at(c.id);
        for (std::size_t j = 0; j < economy.commodities; ++j) {
            total[j] += c.mass * b[j];
        }
    }
    return total;
}

bool is_feasible(const Economy& economy, const Allocation& x, FeasibilityMode mode) {
    require_shape(economy, x);
    const Bundle used = aggregate(economy, x);
    const Bundle available = aggregate_endowment(economy);
    for (std::size_t j = 0; j < economy.commodities; ++j) {
        const bool ok = mode == FeasibilityMode::Exact ? used[j] == available[j]
                                                       : used[j] <= available[j];
        if (!ok) {
            return false;
        }
    }
    return true;
}

Rational utility(const Cohort& cohort, const Bundle& x) {
    if (cohort.utility.size() != x.size()) {
        throw Error(ErrorCode::ShapeMismatch, "bundle length " + std::to_string(x.size()) +
                                                  " does not match weights of '" + cohort.id + "'");
    }
    return dot(cohort.utility, x);
}

}  // namespace mixedcore
