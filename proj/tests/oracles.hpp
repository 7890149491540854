#pragma once

// Independent reference computations used only by the tests. None of these
// call the simplex code.

#include <optional>
#include <vector>

#include "mixedcore/core.hpp"
#include "mixedcore/lp.hpp"

namespace oracle {

using mixedcore::Allocation;
using mixedcore::Economy;
using mixedcore::Rational;
using mixedcore::RationalVector;

struct VertexResult {
    bool feasible = false;     // some vertex exists
    Rational best;             // max objective over all vertices
    RationalVector argmax;
    std::size_t vertices = 0;  // basic feasible solutions visited
};

/// Brute-force enumeration of every basic solution (choose n linearly
/// independent tight constraints, solve by Gaussian elimination, keep the
/// feasible ones). Only meaningful when every column has a finite bound, so
/// the feasible set has a vertex whenever it is non-empty.
VertexResult vertex_enumeration(const mixedcore::lp::LinearProgram& lp);

/// Solves a square system by Gaussian elimination; nullopt if singular.
std::optional<RationalVector> solve_square(std::vector<RationalVector> a, RationalVector b);

struct GridPoint {
    Rational value;
    Allocation allocation;
};

/// Two goods, two cohorts, `atom` is the maximizer: scan the other cohort's
/// per-capita bundle over {k/denominator} on its indifference line, give the
/// atom everything left. Returns the best point found.
GridPoint grid_core_max(const Economy& e, std::size_t atom, long denominator);

/// Two goods, two cohorts: max over grid splits y of
/// min_i (a_i·y_i - a_i·ω_i), with y exhausting the aggregate endowment.
GridPoint grid_pareto_delta(const Economy& e, long denominator);

struct GridEquilibrium {
    RationalVector price;  // sums to one
    Allocation allocation;
};

/// Two goods, two cohorts: every grid price (k/d, 1-k/d) at which demand
/// correspondences can clear the market exactly, by case analysis of the
/// bang sets.
std::vector<GridEquilibrium> grid_equilibria(const Economy& e, long denominator);

/// Utility maximization over the budget set by checking every vertex of
/// {y >= 0, p·y <= p·ω}: the origin and budget/p_j on each axis.
Rational budget_vertex_value(const mixedcore::Cohort& c, const RationalVector& p);

}  // namespace oracle
