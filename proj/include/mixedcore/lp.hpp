#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mixedcore/rational.hpp"

namespace mixedcore::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
    RationalVector coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/// maximize objective·x  s.t.  rows, lower ≤ x ≤ upper.
/// A missing lower bound is −∞, a missing upper bound is +∞.
struct LinearProgram {
    RationalVector objective;
    std::vector<std::optional<Rational>> lower;
    std::vector<std::optional<Rational>> upper;
    std::vector<Constraint> rows;

    /// n columns, all in [0, +∞), zero objective, no rows.
    static LinearProgram nonnegative(std::size_t n);

    std::size_t columns() const { return objective.size(); }
    void add_row(RationalVector coefficients, Relation relation, Rational rhs);

    /// Throws DimensionMismatch if lengths disagree or some lower > upper.
    void check_well_formed() const;

    /// Human-readable dump, for debugging only.
    std::string debug_string() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status status);

/// Result of solve_lp. Which fields are populated depends on `status`:
///   Optimal    - primal, value, dual (one multiplier per row)
///   Unbounded  - primal (a feasible point), certificate (improving ray)
///   Infeasible - certificate (Farkas multipliers, one per row)
///
/// Row multipliers follow one sign convention everywhere: ≥ 0 on ≤ rows,
/// ≤ 0 on ≥ rows, free on = rows.
struct LpOutcome {
    Status status = Status::Infeasible;
    RationalVector primal;
    Rational value;
    RationalVector dual;
    RationalVector certificate;

    friend bool operator==(const LpOutcome&, const LpOutcome&) = default;
};

/// Two-phase dense-tableau simplex with Bland's rule over exact rationals.
/// The outcome is re-verified by substitution before it is returned; a failed
/// self-check throws std::logic_error.
LpOutcome solve_lp(const LinearProgram& lp);

struct FeasiblePoint {
    RationalVector point;
};
struct InfeasibleSystem {
    RationalVector farkas;
};

/// Ignores the objective.
std::variant<FeasiblePoint, InfeasibleSystem> feasibility(const LinearProgram& lp);

// --- Certificate checks. None of these solve anything. ---

bool satisfies(const LinearProgram& lp, std::span<const Rational> x);

/// Upper bound on the optimum implied by row multipliers `y`, or nullopt if
/// `y` has the wrong signs or leaves a reduced cost pointing at an infinite
/// bound.
std::optional<Rational> dual_bound(const LinearProgram& lp, std::span<const Rational> y);

/// True iff `y` proves that no x satisfies the rows and bounds.
bool certifies_infeasible(const LinearProgram& lp, std::span<const Rational> y);

/// True iff `ray` is a recession direction of the feasible set with positive
/// objective slope.
bool certifies_unbounded(const LinearProgram& lp, std::span<const Rational> ray);

/// Full re-check of an outcome: feasibility, objective value, strong duality
/// and complementary slackness for Optimal; the certificate otherwise.
bool verify(const LinearProgram& lp, const LpOutcome& outcome);

}  // namespace mixedcore::lp
