#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mixedcore/economy.hpp"
#include "mixedcore/lp.hpp"
#include "mixedcore/preferences.hpp"

namespace mixedcore {

// ---------------------------------------------------------------------------
// Pareto analysis of the endowment

struct ParetoResult {
    bool optimal = false;
    /// Largest uniform utility gain the grand coalition can achieve (>= 0).
    Rational delta;
    /// Improving allocation; set only when !optimal.
    std::optional<Allocation> witness;
};

/// maximize δ  s.t.  Σ mass_i y_i = Σ mass_i ω_i,
///                   a_i·y_i >= a_i·ω_i + δ,  y >= 0, δ >= 0.
/// Column layout: cohort i's bundle at [i*l, (i+1)*l), δ last.
lp::LinearProgram pareto_program(const Economy& economy);

ParetoResult pareto_check(const Economy& economy);

/// Price read off the resource-row duals of pareto_program; supports ω as a
/// competitive equilibrium. Throws NotParetoOptimal if ω can be improved.
PriceSystem supporting_price(const Economy& economy);

// ---------------------------------------------------------------------------
// Competitive equilibrium

struct CompetitiveViolation {
    std::string cohort;  // empty for market-wide clauses
    std::string clause;
};

struct CompetitiveCheck {
    bool ok = false;
    std::vector<CompetitiveViolation> violations;
};

/// Budget-binding plus support-in-bang-set test, which for strictly positive
/// linear utilities is exactly budget-constrained utility maximization.
CompetitiveCheck check_competitive(const Economy& economy, const PriceSystem& p, const Allocation& x);

struct CompetitiveEquilibrium {
    PriceSystem price;
    Allocation allocation;

    friend bool operator==(const CompetitiveEquilibrium&, const CompetitiveEquilibrium&) = default;
};

/// Every distinct equilibrium found by enumerating support patterns of a
/// two-cohort economy with at most 8 goods. May be empty.
std::vector<CompetitiveEquilibrium> find_equilibrium(const Economy& economy);

// ---------------------------------------------------------------------------
// The atom-optimal core allocation

struct CoreMaxResult {
    Allocation allocation;
    /// Utility of the atom at its bundle.
    Rational value;
    std::string atom;
    /// Set when ω is already Pareto optimal; the construction still runs.
    bool trivial = false;
};

/// maximize a_atom·x_atom over mass-weighted free-disposal feasibility with
/// the other cohort held exactly at its endowment utility. Requires two
/// cohorts and at least one atom; with two atoms the first one is maximized.
CoreMaxResult core_max_allocation(const Economy& economy);

/// Same construction with the named atomic cohort as the maximizer.
CoreMaxResult core_max_allocation(const Economy& economy, const std::string& atom_id);

// ---------------------------------------------------------------------------
// Blocking coalitions (cohort-symmetric)

struct BlockingWitness {
    std::vector<std::string> included_atoms;
    std::map<std::string, Rational> fractions;
    std::map<std::string, Bundle> per_capita_bundles;
    Rational margin;
};

/// One inclusion pattern: atoms join whole, atomless cohorts join with a
/// fraction s_c in [0, mass_c].
struct PatternOutcome {
    std::vector<std::string> members;
    Rational delta;
    /// Optimal row multipliers of blocking_program; bound the optimum by delta.
    RationalVector dual;
};

struct BlockingScan {
    std::vector<PatternOutcome> patterns;
    std::optional<BlockingWitness> witness;
};

/// Bit i of `members` includes cohort i. Columns, per included cohort in index
/// order: l bundle entries (aggregate z for atomless, then its fraction s),
/// and δ (free) last. Rows: l resource balances, then one improvement row per
/// included cohort.
lp::LinearProgram blocking_program(const Economy& economy, const Allocation& x,
                                   std::uint32_t members);

/// Non-empty patterns ordered by size, then by bitmask.
std::vector<std::uint32_t> inclusion_patterns(std::size_t cohorts);

BlockingScan scan_blocking_coalitions(const Economy& economy, const Allocation& x);
std::optional<BlockingWitness> find_blocking_coalition(const Economy& economy, const Allocation& x);

/// Checks a witness against the definition without solving anything.
bool witness_blocks(const Economy& economy, const Allocation& x, const BlockingWitness& witness);

// ---------------------------------------------------------------------------
// Rescaling

using Lambda = std::map<std::string, Rational>;

/// Endowments scaled by λ_i, masses divided by λ_i, weights unchanged.
Economy rescale(const Economy& economy, const Lambda& lambda);
Allocation transport_allocation(const Allocation& x, const Lambda& lambda);

// ---------------------------------------------------------------------------
// Decentralization

/// Columns p (each >= 1); rows p·(x_i - ω_i) = 0 per cohort, then the
/// bang-set inequalities a_ij p_k >= a_ik p_j for j in supp x_i, k != j.
lp::LinearProgram decentralization_program(const Economy& economy, const Allocation& x);

using Decentralization = std::variant<PriceSystem, lp::InfeasibleSystem>;

/// A price system supporting x, or a Farkas proof that none exists.
/// Throws NotFeasible unless x is exactly feasible.
Decentralization decentralizing_prices(const Economy& economy, const Allocation& x);

// ---------------------------------------------------------------------------
// Certification

class HypothesisViolation : public Error {
public:
    explicit HypothesisViolation(std::string hypothesis, const std::string& detail);
    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

class CertificationFailure : public Error {
public:
    CertificationFailure(const std::string& message, nlohmann::json evidence);
    const nlohmann::json& evidence() const noexcept { return evidence_; }

private:
    nlohmann::json evidence_;
};

struct NoncompetitivenessCertificate {
    Economy economy;
    std::string atom;
    Allocation core_allocation;
    Rational core_value;
    std::vector<PatternOutcome> blocking_scan;
    RationalVector farkas;
};

/// Throws HypothesisViolation naming "linear", "two-type", "unbalanced" or
/// "non-trivial" when the economy falls outside the certifier's class.
void require_certifier_hypotheses(const Economy& economy);

/// core_max_allocation, a full blocking scan with every δ* <= 0, and a Farkas
/// proof that no price decentralizes the allocation. When both cohorts are
/// atoms and the first atom's allocation is competitive, the second atom is
/// tried as the maximizer. Throws CertificationFailure, with the supporting
/// price of each attempt as evidence, when no attempt certifies.
NoncompetitivenessCertificate certify_noncompetitive_core(const Economy& economy);

nlohmann::json to_json(const NoncompetitivenessCertificate& certificate);
NoncompetitivenessCertificate certificate_from_json(const nlohmann::json& document);

struct CertificateCheck {
    bool ok = false;
    std::vector<std::string> failures;
};

/// Re-checks every claim of a certificate by substitution; never re-solves.
CertificateCheck verify_certificate(const Economy& economy,
                                    const NoncompetitivenessCertificate& certificate);

}  // namespace mixedcore
