#include <algorithm>
#include <set>

#include "mixedcore/core.hpp"
#include "mixedcore/json_io.hpp"

namespace mixedcore {

using nlohmann::json;

namespace {

constexpr const char* kCoalitionScope =
    "cohort-symmetric coalitions: any subset of atoms at full mass together with a "
    "participating fraction of each atomless cohort, equal treatment inside each group";

json witness_json(const BlockingWitness& w) {
    json fractions = json::object();
    for (const auto& [id, s] : w.fractions) {
        fractions[id] = s.str();
    }
    json bundles = json::object();
    for (const auto& [id, b] : w.per_capita_bundles) {
        bundles[id] = io::to_json(b);
    }
    return {{"included_atoms", w.included_atoms},
            {"fractions", std::move(fractions)},
            {"per_capita_bundles", std::move(bundles)},
            {"margin", w.margin.str()}};
}

}  // namespace

HypothesisViolation::HypothesisViolation(std::string hypothesis, const std::string& detail)
    : Error(ErrorCode::HypothesisViolation, hypothesis + ": " + detail),
      hypothesis_(std::move(hypothesis)) {}

CertificationFailure::CertificationFailure(const std::string& message, json evidence)
    : Error(ErrorCode::CertificationFailure, message), evidence_(std::move(evidence)) {}

void require_certifier_hypotheses(const Economy& economy) {
    for (const auto& v : economy_violations(economy)) {
        if (v.code == ErrorCode::WeightsNotNormalized) {
            throw HypothesisViolation("linear", v.message);
        }
    }
    validate_economy(economy);
    if (economy.cohorts.size() != 2) {
        throw HypothesisViolation("two-type", "economy has " + std::to_string(economy.cohorts.size()) +
                                                  " cohorts, expected 2");
    }
    const Cohort& a = economy.cohorts[0];
    const Cohort& b = economy.cohorts[1];
    if (a.utility == b.utility && a.endowment == b.endowment) {
        throw HypothesisViolation("two-type", "both cohorts share one type");
    }
    if (!a.atomic && !b.atomic) {
        throw HypothesisViolation("unbalanced", "no cohort is an atom");
    }
    const auto pareto = pareto_check(economy);
    if (pareto.optimal) {
        throw HypothesisViolation("non-trivial", "the endowment is already Pareto optimal");
    }
}

NoncompetitivenessCertificate certify_noncompetitive_core(const Economy& economy) {
    require_certifier_hypotheses(economy);

    // The first atom, then the other cohort if it is an atom as well.
    std::vector<std::string> maximizers;
    for (const auto& c : economy.cohorts) {
        if (c.atomic) {
            maximizers.push_back(c.id);
        }
    }

    json competitive_attempts = json::array();
    for (const auto& atom_id : maximizers) {
        const CoreMaxResult core = core_max_allocation(economy, atom_id);
        if (!is_feasible(economy, core.allocation, FeasibilityMode::Exact)) {
            throw CertificationFailure("core-max allocation wastes resources",
                                       {{"atom", atom_id}, {"core_allocation", io::to_json(core.allocation)}});
        }
        BlockingScan scan = scan_blocking_coalitions(economy, core.allocation);
        if (scan.witness) {
            throw CertificationFailure("core-max allocation is blocked",
                                       {{"atom", atom_id},
                                        {"core_allocation", io::to_json(core.allocation)},
                                        {"witness", witness_json(*scan.witness)}});
        }
        auto decentralized = decentralizing_prices(economy, core.allocation);
        if (const auto* price = std::get_if<PriceSystem>(&decentralized)) {
            competitive_attempts.push_back({{"atom", atom_id},
                                            {"core_allocation", io::to_json(core.allocation)},
                                            {"price", io::to_json(price->prices())}});
            continue;
        }
        NoncompetitivenessCertificate cert;
        cert.economy = economy;
        cert.atom = core.atom;
        cert.core_allocation = core.allocation;
        cert.core_value = core.value;
        cert.blocking_scan = std::move(scan.patterns);
        cert.farkas = std::get<lp::InfeasibleSystem>(decentralized).farkas;
        return cert;
    }
    throw CertificationFailure("core-max allocation is competitive", {{"attempts", competitive_attempts}});
}

json to_json(const NoncompetitivenessCertificate& cert) {
    json scan = json::array();
    for (const auto& p : cert.blocking_scan) {
        scan.push_back({{"members", p.members}, {"delta", p.delta.str()}, {"dual", io::to_json(p.dual)}});
    }
    return {{"claim", "non-competitive core allocation"},
            {"coalition_scope", kCoalitionScope},
            {"economy", io::to_json(cert.economy)},
            {"atom", cert.atom},
            {"core_allocation", io::to_json(cert.core_allocation)},
            {"core_value", cert.core_value.str()},
            {"blocking_scan", std::move(scan)},
            {"decentralization", {{"status", "infeasible"}, {"farkas", io::to_json(cert.farkas)}}}};
}

NoncompetitivenessCertificate certificate_from_json(const json& document) {
    if (!document.is_object()) {
        throw Error(ErrorCode::MalformedDocument, "certificate must be a JSON object");
    }
    try {
        NoncompetitivenessCertificate cert;
        cert.economy = io::parse_economy(document.at("economy"));
        cert.atom = document.at("atom").get<std::string>();
        cert.core_allocation = io::parse_allocation(document.at("core_allocation"));
        cert.core_value = io::rational_from_json(document.at("core_value"), "core_value");
        for (const auto& entry : document.at("blocking_scan")) {
            PatternOutcome p;
            p.members = entry.at("members").get<std::vector<std::string>>();
            p.delta = io::rational_from_json(entry.at("delta"), "blocking_scan.delta");
            p.dual = io::vector_from_json(entry.at("dual"), "blocking_scan.dual");
            cert.blocking_scan.push_back(std::move(p));
        }
        cert.farkas = io::vector_from_json(document.at("decentralization").at("farkas"),
                                           "decentralization.farkas");
        return cert;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("certificate: ") + e.what());
    }
}

CertificateCheck verify_certificate(const Economy& economy, const NoncompetitivenessCertificate& cert) {
    CertificateCheck check;
    auto fail = [&](std::string message) { check.failures.push_back(std::move(message)); };

    if (!(cert.economy == economy)) {
        fail("certificate was issued for a different economy");
        return check;
    }
    const Allocation& x = cert.core_allocation;
    try {
        require_shape(economy, x);
    } catch (const Error& e) {
        fail(std::string("core allocation: ") + e.what());
        return check;
    }
    if (!is_feasible(economy, x, FeasibilityMode::Exact)) {
        fail("core allocation is not exactly feasible");
    }
    const auto atom = std::find_if(economy.cohorts.begin(), economy.cohorts.end(),
                                   [&](const Cohort& c) { return c.id == cert.atom; });
    if (atom == economy.cohorts.end() || !atom->atomic) {
        fail("'" + cert.atom + "' is not an atomic cohort");
    } else if (utility(*atom, x.at(atom->id)) != cert.core_value) {
        fail("core value does not match the atom's utility");
    }

    // Every inclusion pattern must appear once, each with a dual bound <= 0.
    std::set<std::uint32_t> expected;
    for (auto mask : inclusion_patterns(economy.cohorts.size())) {
        expected.insert(mask);
    }
    for (const auto& p : cert.blocking_scan) {
        std::uint32_t mask = 0;
        bool known = true;
        for (const auto& id : p.members) {
            const auto it = std::find_if(economy.cohorts.begin(), economy.cohorts.end(),
                                         [&](const Cohort& c) { return c.id == id; });
            if (it == economy.cohorts.end()) {
                known = false;
                break;
            }
            mask |= 1u << static_cast<unsigned>(it - economy.cohorts.begin());
        }
        if (!known || expected.erase(mask) == 0) {
            fail("blocking scan has an unknown or repeated pattern");
            continue;
        }
        const auto program = blocking_program(economy, x, mask);
        const auto bound = lp::dual_bound(program, p.dual);
        if (!bound) {
            fail("blocking scan dual is not dual-feasible");
        } else if (*bound != p.delta) {
            fail("blocking scan dual bound differs from recorded delta");
        } else if (bound->is_positive()) {
            fail("blocking scan admits a positive margin");
        }
    }
    if (!expected.empty()) {
        fail("blocking scan misses " + std::to_string(expected.size()) + " pattern(s)");
    }

    const auto price_program = decentralization_program(economy, x);
    if (!lp::certifies_infeasible(price_program, cert.farkas)) {
        fail("Farkas multipliers do not prove the price system infeasible");
    }
    check.ok = check.failures.empty();
    return check;
}

}  // namespace mixedcore
