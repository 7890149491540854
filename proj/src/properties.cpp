#include "mixedcore/properties.hpp"

#include <algorithm>
#include <functional>

#include "mixedcore/core.hpp"
#include "mixedcore/json_io.hpp"
#include "mixedcore/sampling.hpp"

namespace mixedcore::properties {

using nlohmann::json;
using sampling::AtomPolicy;
using sampling::Rng;

std::vector<Property> all_properties() {
    return {Property::EconomyRoundTrip,
            Property::AggregateLinearInMass,
            Property::UtilityLinear,
            Property::LpSelfCheck,
            Property::BangSetsDisjoint,
            Property::WalrasAndSubset,
            Property::DemandHomogeneity,
            Property::IndirectUtilityBound,
            Property::NoDecentralizationAtCrossPrices,
            Property::CoreMaxUnblocked,
            Property::NoncompetitiveCoreCertified,
            Property::RescalingInvariance,
            Property::SupportingPrice,
            Property::EquilibriaUnblocked,
            Property::DecentralizationConsistency};
}

std::string_view name(Property property) {
    switch (property) {
        case Property::EconomyRoundTrip: return "economy_round_trip";
        case Property::AggregateLinearInMass: return "aggregate_linear_in_mass";
        case Property::UtilityLinear: return "utility_linear";
        case Property::LpSelfCheck: return "lp_self_check";
        case Property::BangSetsDisjoint: return "bang_sets_disjoint";
        case Property::WalrasAndSubset: return "walras_and_subset";
        case Property::DemandHomogeneity: return "demand_homogeneity";
        case Property::IndirectUtilityBound: return "indirect_utility_bound";
        case Property::NoDecentralizationAtCrossPrices: return "no_decentralization_at_cross_prices";
        case Property::CoreMaxUnblocked: return "core_max_unblocked";
        case Property::NoncompetitiveCoreCertified: return "noncompetitive_core_certified";
        case Property::RescalingInvariance: return "rescaling_invariance";
        case Property::SupportingPrice: return "supporting_price";
        case Property::EquilibriaUnblocked: return "equilibria_unblocked";
        case Property::DecentralizationConsistency: return "decentralization_consistency";
    }
    return "unknown";
}

namespace {

// A trial draws its instance, records it for replay, and returns pass/fail.
using Trial = std::function<bool(Rng&, json& instance, Tally& tally)>;

bool leq(const Bundle& lhs, const Bundle& rhs) {
    for (std::size_t j = 0; j < lhs.size(); ++j) {
        if (lhs[j] > rhs[j]) {
            return false;
        }
    }
    return true;
}

bool subset(const std::vector<std::size_t>& inner, const std::vector<std::size_t>& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

Cohort random_cohort(Rng& rng, std::size_t l) {
    Cohort c;
    c.id = "c";
    c.mass = 1;
    c.endowment = sampling::random_bundle(rng, l);
    c.utility = sampling::random_weights(rng, l);
    return c;
}

json cohort_json(const Cohort& c) {
    return {{"endowment", io::to_json(c.endowment)}, {"utility", io::to_json(c.utility)}};
}

Rational random_nonnegative(Rng& rng) {
    const long numerator = rng.uniform(0, 9);
    const long denominator = rng.uniform(1, 4);
    return Rational(numerator, denominator);
}

json lp_json(const lp::LinearProgram& program) { return program.debug_string(); }

// Allocation to probe, chosen by trial parity: random split, an equilibrium
// allocation (with its price), or the core-max allocation.
struct Probe {
    Allocation allocation;
    PriceSystem price;
};

Probe probe_allocation(Rng& rng, const Economy& e, long mode) {
    Probe probe{sampling::random_feasible_allocation(rng, e),
                sampling::random_positive_price(rng, e.commodities)};
    if (mode == 1) {
        const auto equilibria = find_equilibrium(e);
        if (!equilibria.empty()) {
            const auto pick = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(equilibria.size()) - 1));
            probe = {equilibria[pick].allocation, equilibria[pick].price};
        }
    } else if (mode == 2 && (e.cohorts[0].atomic || e.cohorts[1].atomic)) {
        probe.allocation = core_max_allocation(e).allocation;
    }
    return probe;
}

Trial trial_for(Property property) {
    switch (property) {
        case Property::EconomyRoundTrip:
            return [](Rng& rng, json& instance, Tally&) {
                const auto k = static_cast<std::size_t>(rng.uniform(1, 3));
                const Economy e = sampling::random_economy(rng, k, AtomPolicy::Any);
                instance = io::to_json(e);
                const std::string text = instance.dump();
                const Economy back = io::read_economy(json::parse(text));
                return back == e && io::to_json(back).dump() == text;
            };
        case Property::AggregateLinearInMass:
            return [](Rng& rng, json& instance, Tally&) {
                const Economy e = sampling::random_economy(rng, 3, AtomPolicy::Any);
                instance = io::to_json(e);
                Economy doubled = e;
                for (auto& c : doubled.cohorts) {
                    c.mass *= 2;
                }
                return aggregate_endowment(doubled) == scaled(aggregate_endowment(e), Rational(2));
            };
        case Property::UtilityLinear:
            return [](Rng& rng, json& instance, Tally&) {
                const auto l = static_cast<std::size_t>(rng.uniform(2, 6));
                const Cohort c = random_cohort(rng, l);
                const Bundle x = sampling::random_bundle(rng, l);
                const Bundle y = sampling::random_bundle(rng, l);
                const Rational alpha = random_nonnegative(rng);
                const Rational beta = random_nonnegative(rng);
                instance = {{"cohort", cohort_json(c)}, {"x", io::to_json(x)}, {"y", io::to_json(y)},
                            {"alpha", alpha.str()}, {"beta", beta.str()}};
                Bundle mix(l);
                for (std::size_t j = 0; j < l; ++j) {
                    mix[j] = alpha * x[j] + beta * y[j];
                }
                return utility(c, mix) == alpha * utility(c, x) + beta * utility(c, y);
            };
        case Property::LpSelfCheck:
            return [](Rng& rng, json& instance, Tally& tally) {
                const bool pointed = rng.chance(1, 2);
                const auto program = sampling::random_lp(rng, 8, 8, pointed);
                instance = lp_json(program);
                const auto first = lp::solve_lp(program);
                ++tally.notes[std::string(lp::to_string(first.status))];
                return lp::verify(program, first) && lp::solve_lp(program) == first;
            };
        case Property::BangSetsDisjoint:
            return [](Rng& rng, json& instance, Tally&) {
                const auto l = static_cast<std::size_t>(rng.uniform(2, 6));
                const UtilityWeights a1 = sampling::random_weights(rng, l);
                UtilityWeights a2 = sampling::random_weights(rng, l);
                while (a2 == a1) {
                    a2 = sampling::random_weights(rng, l);
                }
                instance = {{"a1", io::to_json(a1)}, {"a2", io::to_json(a2)}};
                const BangSet s1 = max_bang_set(PriceSystem(a2), a1);
                const BangSet s2 = max_bang_set(PriceSystem(a1), a2);
                std::vector<std::size_t> both;
                std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(both));
                return both.empty();
            };
        case Property::WalrasAndSubset:
            return [](Rng& rng, json& instance, Tally&) {
                const auto l = static_cast<std::size_t>(rng.uniform(2, 6));
                const Cohort c = random_cohort(rng, l);
                const PriceSystem p = sampling::random_positive_price(rng, l);
                instance = {{"cohort", cohort_json(c)}, {"price", io::to_json(p.prices())}};
                const Bundle x = demand(c, p);
                return p.value(x) == p.value(c.endowment) &&
                       subset(support(x), max_bang_set(p, c.utility));
            };
        case Property::DemandHomogeneity:
            return [](Rng& rng, json& instance, Tally&) {
                const auto l = static_cast<std::size_t>(rng.uniform(2, 6));
                const Cohort c = random_cohort(rng, l);
                RationalVector raw(l);
                for (auto& v : raw) {
                    v = rng.uniform(1, 20);
                }
                const Rational factor(rng.uniform(1, 50), 7);
                instance = {{"cohort", cohort_json(c)}, {"raw_price", io::to_json(raw)},
                            {"factor", factor.str()}};
                const PriceSystem p(raw);
                const PriceSystem q(scaled(raw, factor));
                return p == q && demand(c, p) == demand(c, q) &&
                       max_bang_set(p, c.utility) == max_bang_set(q, c.utility);
            };
        case Property::IndirectUtilityBound:
            return [](Rng& rng, json& instance, Tally&) {
                const auto l = static_cast<std::size_t>(rng.uniform(2, 6));
                const Cohort c = random_cohort(rng, l);
                const PriceSystem p = sampling::random_positive_price(rng, l);
                instance = {{"cohort", cohort_json(c)}, {"price", io::to_json(p.prices())}};
                const Rational v = indirect_utility(c, p);
                const Rational budget = p.value(c.endowment);

                auto program = lp::LinearProgram::nonnegative(l);
                program.objective = c.utility;
                program.add_row(p.prices(), lp::Relation::LessEqual, budget);
                const auto best = lp::solve_lp(program);

                // A random affordable bundle: a random direction scaled onto the budget line.
                Bundle y = sampling::random_bundle(rng, l);
                const Rational cost = p.value(y);
                if (cost.is_positive()) {
                    y = scaled(y, budget / cost);
                }
                return best.status == lp::Status::Optimal && best.value == v &&
                       utility(c, demand(c, p)) == v && (cost.is_zero() || utility(c, y) <= v);
            };
        case Property::NoDecentralizationAtCrossPrices:
            return [](Rng& rng, json& instance, Tally& tally) {
                const Economy original = sampling::random_two_atom_economy(rng);
                instance = io::to_json(original);
                Lambda unit_mass;
                for (const auto& c : original.cohorts) {
                    unit_mass.emplace(c.id, c.mass);
                }
                const Economy e = rescale(original, unit_mass);
                const Cohort& first = e.cohorts[0];
                const Cohort& second = e.cohorts[1];
                const Bundle total = aggregate_endowment(e);
                const bool first_fits = leq(demand(first, PriceSystem(second.utility)), total);
                const bool second_fits = leq(demand(second, PriceSystem(first.utility)), total);
                if (!first_fits && !second_fits) {
                    ++tally.notes["conjunction_held"];
                }
                return e.cohorts[0].mass == 1 && e.cohorts[1].mass == 1 && (!first_fits || !second_fits);
            };
        case Property::CoreMaxUnblocked:
            return [](Rng& rng, json& instance, Tally&) {
                const Economy e = sampling::random_certifiable_economy(rng);
                instance = io::to_json(e);
                return !find_blocking_coalition(e, core_max_allocation(e).allocation).has_value();
            };
        case Property::NoncompetitiveCoreCertified:
            return [](Rng& rng, json& instance, Tally&) {
                const Economy e = sampling::random_certifiable_economy(rng);
                instance = io::to_json(e);
                const auto cert = certify_noncompetitive_core(e);
                const auto reread = certificate_from_json(json::parse(to_json(cert).dump()));
                return verify_certificate(e, reread).ok;
            };
        case Property::RescalingInvariance:
            return [](Rng& rng, json& instance, Tally& tally) {
                const Economy e = sampling::random_economy(rng, 2, AtomPolicy::Any);
                const Lambda lambda = sampling::random_lambda(rng, e);
                const Probe probe = probe_allocation(rng, e, rng.uniform(0, 2));
                json lambda_json = json::object();
                for (const auto& [id, v] : lambda) {
                    lambda_json[id] = v.str();
                }
                instance = {{"economy", io::to_json(e)}, {"lambda", lambda_json},
                            {"allocation", io::to_json(probe.allocation)},
                            {"price", io::to_json(probe.price.prices())}};
                const Economy scaled_economy = rescale(e, lambda);
                const Allocation moved = transport_allocation(probe.allocation, lambda);
                const bool blocked = find_blocking_coalition(e, probe.allocation).has_value();
                const bool competitive = check_competitive(e, probe.price, probe.allocation).ok;
                if (blocked) ++tally.notes["blocked"];
                if (competitive) ++tally.notes["competitive"];
                return blocked == find_blocking_coalition(scaled_economy, moved).has_value() &&
                       competitive == check_competitive(scaled_economy, probe.price, moved).ok;
            };
        case Property::SupportingPrice:
            return [](Rng& rng, json& instance, Tally&) {
                const auto k = static_cast<std::size_t>(rng.uniform(1, 3));
                const Economy e = sampling::random_pareto_optimal_economy(rng, k);
                instance = io::to_json(e);
                return check_competitive(e, supporting_price(e), endowment_allocation(e)).ok;
            };
        case Property::EquilibriaUnblocked:
            return [](Rng& rng, json& instance, Tally& tally) {
                const Economy e = sampling::random_economy(rng, 2, AtomPolicy::Any);
                instance = io::to_json(e);
                const auto equilibria = find_equilibrium(e);
                if (equilibria.empty()) {
                    ++tally.notes["empty_equilibrium_sets"];
                }
                tally.notes["equilibria"] += equilibria.size();
                for (const auto& eq : equilibria) {
                    if (!check_competitive(e, eq.price, eq.allocation).ok ||
                        find_blocking_coalition(e, eq.allocation).has_value()) {
                        return false;
                    }
                }
                return true;
            };
        case Property::DecentralizationConsistency:
            return [](Rng& rng, json& instance, Tally& tally) {
                const Economy e = sampling::random_economy(rng, 2, AtomPolicy::Any);
                const Probe probe = probe_allocation(rng, e, rng.uniform(0, 2));
                instance = {{"economy", io::to_json(e)}, {"allocation", io::to_json(probe.allocation)}};
                const auto result = decentralizing_prices(e, probe.allocation);
                if (const auto* p = std::get_if<PriceSystem>(&result)) {
                    ++tally.notes["decentralizable"];
                    return check_competitive(e, *p, probe.allocation).ok;
                }
                ++tally.notes["not_decentralizable"];
                const auto& farkas = std::get<lp::InfeasibleSystem>(result).farkas;
                if (!lp::certifies_infeasible(decentralization_program(e, probe.allocation), farkas)) {
                    return false;
                }
                for (int sample = 0; sample < 100; ++sample) {
                    const PriceSystem q = sampling::random_positive_price(rng, e.commodities);
                    if (check_competitive(e, q, probe.allocation).ok) {
                        return false;
                    }
                }
                return true;
            };
    }
    return {};
}

}  // namespace

json Tally::to_json() const {
    json out = {{"property", property}, {"trials", trials}, {"passed", passed}};
    if (!notes.empty()) {
        out["notes"] = notes;
    }
    if (first_failure) {
        out["first_failure"] = *first_failure;
    }
    return out;
}

Tally run_property(Property property, std::uint64_t seed, std::size_t trials) {
    Tally tally;
    tally.property = std::string(name(property));
    tally.trials = trials;
    const auto salt = static_cast<std::uint64_t>(property) + 1;
    Rng rng(seed ^ (salt * 0x9E3779B97F4A7C15ULL));
    const Trial trial = trial_for(property);
    for (std::size_t t = 0; t < trials; ++t) {
        json instance;
        bool passed = false;
        std::string error;
        try {
            passed = trial(rng, instance, tally);
        } catch (const std::exception& e) {
            error = e.what();
        }
        if (passed) {
            ++tally.passed;
        } else if (!tally.first_failure) {
            tally.first_failure = json{{"trial", t}, {"instance", instance}};
            if (!error.empty()) {
                (*tally.first_failure)["error"] = error;
            }
        }
    }
    return tally;
}

bool SuiteReport::all_passed() const {
    return std::all_of(tallies.begin(), tallies.end(), [](const Tally& t) { return t.ok(); });
}

json SuiteReport::to_json() const {
    json props = json::array();
    for (const auto& t : tallies) {
        props.push_back(t.to_json());
    }
    return {{"all_passed", all_passed()}, {"properties", std::move(props)}};
}

SuiteReport run_suite(std::uint64_t seed, std::size_t trials) {
    SuiteReport report;
    for (Property p : all_properties()) {
        report.tallies.push_back(run_property(p, seed, trials));
    }
    return report;
}

}  // namespace mixedcore::properties
