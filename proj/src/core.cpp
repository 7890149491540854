#include "mixedcore/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixedcore {

using lp::Relation;

namespace {

RationalVector unit_row(std::size_t n) { return RationalVector(n, Rational(0)); }

}  // namespace

// ---------------------------------------------------------------------------

lp::LinearProgram pareto_program(const Economy& economy) {
    const std::size_t l = economy.commodities;
    const std::size_t k = economy.cohorts.size();
    const std::size_t delta = k * l;
    auto program = lp::LinearProgram::nonnegative(k * l + 1);
    program.objective[delta] = 1;

    const Bundle total = aggregate_endowment(economy);
    for (std::size_t j = 0; j < l; ++j) {
        auto row = unit_row(program.columns());
        for (std::size_t i = 0; i < k; ++i) {
            row[i * l + j] = economy.cohorts[i].mass;
        }
        program.add_row(std::move(row), Relation::Equal, total[j]);
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Cohort& c = economy.cohorts[i];
        auto row = unit_row(program.columns());
        for (std::size_t j = 0; j < l; ++j) {
            row[i * l + j] = c.utility[j];
        }
        row[delta] = -1;
        program.add_row(std::move(row), Relation::GreaterEqual, utility(c, c.endowment));
    }
    return program;
}

ParetoResult pareto_check(const Economy& economy) {
    const auto program = pareto_program(economy);
    const auto outcome = lp::solve_lp(program);
    if (outcome.status != lp::Status::Optimal) {
        throw std::logic_error("pareto_check: program is not optimal");
    }
    ParetoResult result;
    result.delta = outcome.value;
    result.optimal = result.delta.is_zero();
    if (!result.optimal) {
        const std::size_t l = economy.commodities;
        Allocation y;
        for (std::size_t i = 0; i < economy.cohorts.size(); ++i) {
            y.bundles.emplace(economy.cohorts[i].id,
                              Bundle(outcome.primal.begin() + static_cast<long>(i * l),
                                     outcome.primal.begin() + static_cast<long>((i + 1) * l)));
        }
        result.witness = std::move(y);
    }
    return result;
}

PriceSystem supporting_price(const Economy& economy) {
    const auto program = pareto_program(economy);
    const auto outcome = lp::solve_lp(program);
    if (outcome.status != lp::Status::Optimal) {
        throw std::logic_error("supporting_price: program is not optimal");
    }
    if (!outcome.value.is_zero()) {
        throw Error(ErrorCode::NotParetoOptimal,
                    "the endowment admits a uniform improvement of " + outcome.value.str());
    }
    // Resource-row duals: mass_i π_j >= a_ij |η_i| with equality on supp ω_i.
    RationalVector pi(outcome.dual.begin(),
                      outcome.dual.begin() + static_cast<long>(economy.commodities));
    PriceSystem p(std::move(pi));
    if (!check_competitive(economy, p, endowment_allocation(economy)).ok) {
        throw std::logic_error("supporting_price: dual price does not support the endowment");
    }
    return p;
}

// ---------------------------------------------------------------------------

CompetitiveCheck check_competitive(const Economy& economy, const PriceSystem& p, const Allocation& x) {
    require_shape(economy, x);
    if (p.size() != economy.commodities) {
        throw Error(ErrorCode::ShapeMismatch, "price length does not match commodity count");
    }
    CompetitiveCheck check;
    if (!is_feasible(economy, x, FeasibilityMode::Exact)) {
        check.violations.push_back({"", "allocation is not feasible"});
    }
    const bool positive = p.strictly_positive();
    if (!positive) {
        check.violations.push_back({"", "price is not strictly positive"});
    }
    for (const auto& c : economy.cohorts) {
        const Bundle& bundle = x.at(c.id);
        if (p.value(bundle) != p.value(c.endowment)) {
            check.violations.push_back({c.id, "budget does not bind"});
        }
        if (positive) {
            const BangSet bang = max_bang_set(p, c.utility);
            for (std::size_t j : support(bundle)) {
                if (!std::binary_search(bang.begin(), bang.end(), j)) {
                    check.violations.push_back(
                        {c.id, "consumes good " + std::to_string(j) + " outside its bang set"});
                    break;
                }
            }
        }
    }
    check.ok = check.violations.empty();
    return check;
}

namespace {

bool weights_compatible(const UtilityWeights& a1, const UtilityWeights& a2, std::uint32_t d1,
                        std::uint32_t d2, std::size_t l) {
    // j bang for cohort 1 and k bang for cohort 2 forces a1j a2k >= a1k a2j.
    for (std::size_t j = 0; j < l; ++j) {
        if (!(d1 >> j & 1u)) {
            continue;
        }
        for (std::size_t k = 0; k < l; ++k) {
            if ((d2 >> k & 1u) && a1[j] * a2[k] < a1[k] * a2[j]) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::vector<CompetitiveEquilibrium> find_equilibrium(const Economy& economy) {
    const std::size_t l = economy.commodities;
    if (economy.cohorts.size() != 2 || l > 8) {
        throw Error(ErrorCode::UnsupportedShape,
                    "equilibrium search needs exactly 2 cohorts and at most 8 goods");
    }
    const Cohort& c1 = economy.cohorts[0];
    const Cohort& c2 = economy.cohorts[1];
    const Bundle total = aggregate_endowment(economy);
    const std::uint32_t full = (1u << l) - 1u;

    std::vector<CompetitiveEquilibrium> found;
    for (std::uint32_t d1 = 1; d1 <= full; ++d1) {
        for (std::uint32_t d2 = 1; d2 <= full; ++d2) {
            if (!weights_compatible(c1.utility, c2.utility, d1, d2, l)) {
                continue;
            }
            // Columns: prices, then spending e_1j (j in d1), then e_2j (j in d2).
            std::vector<std::size_t> spend1, spend2;
            for (std::size_t j = 0; j < l; ++j) {
                if (d1 >> j & 1u) spend1.push_back(j);
                if (d2 >> j & 1u) spend2.push_back(j);
            }
            const std::size_t n = l + spend1.size() + spend2.size();
            auto program = lp::LinearProgram::nonnegative(n);
            for (std::size_t j = 0; j < l; ++j) {
                program.lower[j] = Rational(1);
                program.objective[j] = -1;
            }
            for (std::size_t j = 0; j < l; ++j) {
                auto row = unit_row(n);
                row[j] = -total[j];
                for (std::size_t s = 0; s < spend1.size(); ++s) {
                    if (spend1[s] == j) row[l + s] = c1.mass;
                }
                for (std::size_t s = 0; s < spend2.size(); ++s) {
                    if (spend2[s] == j) row[l + spend1.size() + s] = c2.mass;
                }
                program.add_row(std::move(row), Relation::Equal, 0);
            }
            auto add_cohort_rows = [&](const Cohort& c, const std::vector<std::size_t>& spend,
                                       std::size_t offset) {
                auto budget = unit_row(n);
                for (std::size_t j = 0; j < l; ++j) {
                    budget[j] = -c.endowment[j];
                }
                for (std::size_t s = 0; s < spend.size(); ++s) {
                    budget[offset + s] = 1;
                }
                program.add_row(std::move(budget), Relation::Equal, 0);
                const std::size_t anchor = spend.front();
                for (std::size_t k = 0; k < l; ++k) {
                    if (k == anchor) {
                        continue;
                    }
                    auto row = unit_row(n);
                    row[k] = c.utility[anchor];
                    row[anchor] = -c.utility[k];
                    const bool inside = std::find(spend.begin(), spend.end(), k) != spend.end();
                    program.add_row(std::move(row), inside ? Relation::Equal : Relation::GreaterEqual, 0);
                }
            };
            add_cohort_rows(c1, spend1, l);
            add_cohort_rows(c2, spend2, l + spend1.size());

            const auto outcome = lp::solve_lp(program);
            if (outcome.status != lp::Status::Optimal) {
                continue;
            }
            const RationalVector& v = outcome.primal;
            Allocation x;
            Bundle x1(l, Rational(0)), x2(l, Rational(0));
            for (std::size_t s = 0; s < spend1.size(); ++s) {
                x1[spend1[s]] = v[l + s] / v[spend1[s]];
            }
            for (std::size_t s = 0; s < spend2.size(); ++s) {
                x2[spend2[s]] = v[l + spend1.size() + s] / v[spend2[s]];
            }
            x.bundles.emplace(c1.id, std::move(x1));
            x.bundles.emplace(c2.id, std::move(x2));
            CompetitiveEquilibrium eq{PriceSystem(RationalVector(v.begin(), v.begin() + static_cast<long>(l))),
                                      std::move(x)};
            if (!check_competitive(economy, eq.price, eq.allocation).ok) {
                throw std::logic_error("find_equilibrium: support-pattern solution is not competitive");
            }
            if (std::find(found.begin(), found.end(), eq) == found.end()) {
                found.push_back(std::move(eq));
            }
        }
    }
    return found;
}

// ---------------------------------------------------------------------------

CoreMaxResult core_max_allocation(const Economy& economy) {
    if (economy.cohorts.size() != 2) {
        throw Error(ErrorCode::UnsupportedShape, "core-max allocation needs exactly 2 cohorts");
    }
    return core_max_allocation(economy, economy.cohorts[economy.cohorts[0].atomic ? 0 : 1].id);
}

CoreMaxResult core_max_allocation(const Economy& economy, const std::string& atom_id) {
    if (economy.cohorts.size() != 2) {
        throw Error(ErrorCode::UnsupportedShape, "core-max allocation needs exactly 2 cohorts");
    }
    const std::size_t atom_index = economy.index_of(atom_id);
    if (!economy.cohorts[atom_index].atomic) {
        throw Error(ErrorCode::UnsupportedShape, "core-max allocation needs an atomic cohort");
    }
    const Cohort& atom = economy.cohorts[atom_index];
    const Cohort& other = economy.cohorts[1 - atom_index];
    const std::size_t l = economy.commodities;

    // Columns: atom bundle [0, l), other bundle [l, 2l).
    auto program = lp::LinearProgram::nonnegative(2 * l);
    for (std::size_t j = 0; j < l; ++j) {
        program.objective[j] = atom.utility[j];
    }
    const Bundle total = aggregate_endowment(economy);
    for (std::size_t j = 0; j < l; ++j) {
        auto row = unit_row(2 * l);
        row[j] = atom.mass;
        row[l + j] = other.mass;
        program.add_row(std::move(row), Relation::LessEqual, total[j]);
    }
    auto indifference = unit_row(2 * l);
    for (std::size_t j = 0; j < l; ++j) {
        indifference[l + j] = other.utility[j];
    }
    program.add_row(std::move(indifference), Relation::Equal, utility(other, other.endowment));

    const auto outcome = lp::solve_lp(program);
    if (outcome.status != lp::Status::Optimal) {
        throw std::logic_error("core_max_allocation: program is not optimal");
    }
    CoreMaxResult result;
    result.atom = atom.id;
    result.value = outcome.value;
    result.allocation.bundles.emplace(atom.id, Bundle(outcome.primal.begin(),
                                                      outcome.primal.begin() + static_cast<long>(l)));
    result.allocation.bundles.emplace(other.id, Bundle(outcome.primal.begin() + static_cast<long>(l),
                                                       outcome.primal.end()));
    result.trivial = pareto_check(economy).optimal;
    return result;
}

// ---------------------------------------------------------------------------

Economy rescale(const Economy& economy, const Lambda& lambda) {
    for (const auto& [id, value] : lambda) {
        economy.index_of(id);
        if (!value.is_positive()) {
            throw Error(ErrorCode::NonPositiveLambda, "lambda for '" + id + "' is " + value.str());
        }
    }
    Economy out = economy;
    for (auto& c : out.cohorts) {
        auto it = lambda.find(c.id);
        if (it == lambda.end()) {
            throw Error(ErrorCode::NonPositiveLambda, "no lambda given for '" + c.id + "'");
        }
        c.mass /= it->second;
        c.endowment = scaled(c.endowment, it->second);
    }
    return out;
}

Allocation transport_allocation(const Allocation& x, const Lambda& lambda) {
    for (const auto& [id, value] : lambda) {
        if (!x.bundles.contains(id)) {
            throw Error(ErrorCode::UnknownCohortId, "no bundle for lambda key '" + id + "'");
        }
        if (!value.is_positive()) {
            throw Error(ErrorCode::NonPositiveLambda, "lambda for '" + id + "' is " + value.str());
        }
    }
    Allocation out;
    for (const auto& [id, bundle] : x.bundles) {
        auto it = lambda.find(id);
        if (it == lambda.end()) {
            throw Error(ErrorCode::NonPositiveLambda, "no lambda given for '" + id + "'");
        }
        out.bundles.emplace(id, scaled(bundle, it->second));
    }
    return out;
}

// ---------------------------------------------------------------------------

lp::LinearProgram decentralization_program(const Economy& economy, const Allocation& x) {
    require_shape(economy, x);
    const std::size_t l = economy.commodities;
    auto program = lp::LinearProgram::nonnegative(l);
    for (std::size_t j = 0; j < l; ++j) {
        program.lower[j] = Rational(1);
        program.objective[j] = -1;
    }
    for (const auto& c : economy.cohorts) {
        const Bundle& bundle = x.at(c.id);
        auto row = unit_row(l);
        for (std::size_t j = 0; j < l; ++j) {
            row[j] = bundle[j] - c.endowment[j];
        }
        program.add_row(std::move(row), Relation::Equal, 0);
    }
    for (const auto& c : economy.cohorts) {
        for (std::size_t j : support(x.at(c.id))) {
            for (std::size_t k = 0; k < l; ++k) {
                if (k == j) {
                    continue;
                }
                auto row = unit_row(l);
                row[k] = c.utility[j];
                row[j] = -c.utility[k];
                program.add_row(std::move(row), Relation::GreaterEqual, 0);
            }
        }
    }
    return program;
}

Decentralization decentralizing_prices(const Economy& economy, const Allocation& x) {
    require_shape(economy, x);
    if (!is_feasible(economy, x, FeasibilityMode::Exact)) {
        throw Error(ErrorCode::NotFeasible, "allocation does not exactly exhaust the endowment");
    }
    const auto program = decentralization_program(economy, x);
    auto outcome = lp::solve_lp(program);
    if (outcome.status == lp::Status::Infeasible) {
        return lp::InfeasibleSystem{std::move(outcome.certificate)};
    }
    if (outcome.status != lp::Status::Optimal) {
        throw std::logic_error("decentralizing_prices: price program is unbounded");
    }
    PriceSystem p(std::move(outcome.primal));
    if (!check_competitive(economy, p, x).ok) {
        throw std::logic_error("decentralizing_prices: price fails the competitive check");
    }
    return p;
}

}  // namespace mixedcore
