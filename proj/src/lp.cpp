#include "mixedcore/lp.hpp"

#include <sstream>
#include <stdexcept>

#include "mixedcore/errors.hpp"

namespace mixedcore::lp {

LinearProgram LinearProgram::nonnegative(std::size_t n) {
    LinearProgram lp;
    lp.objective.assign(n, Rational(0));
    lp.lower.assign(n, Rational(0));
    lp.upper.assign(n, std::nullopt);
    return lp;
}

void LinearProgram::add_row(RationalVector coefficients, Relation relation, Rational rhs) {
    rows.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::check_well_formed() const {
    const auto n = columns();
    if (lower.size() != n || upper.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "bound vectors must have one entry per column");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (lower[j] && upper[j] && *lower[j] > *upper[j]) {
            throw Error(ErrorCode::DimensionMismatch,
                        "column " + std::to_string(j) + " has lower bound above upper bound");
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].coefficients.size() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].coefficients.size()) + " coefficients, expected " +
                            std::to_string(n));
        }
    }
}

std::string LinearProgram::debug_string() const {
    std::ostringstream os;
    os << "maximize";
    for (std::size_t j = 0; j < columns(); ++j) {
        os << ' ' << objective[j] << "*x" << j;
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.coefficients.size(); ++j) {
            os << ' ' << row.coefficients[j] << "*x" << j;
        }
        os << (row.relation == Relation::LessEqual ? " <= "
                                                   : (row.relation == Relation::Equal ? " = " : " >= "))
           << row.rhs << '\n';
    }
    for (std::size_t j = 0; j < columns(); ++j) {
        os << "  " << (lower[j] ? lower[j]->str() : "-inf") << " <= x" << j
           << " <= " << (upper[j] ? upper[j]->str() : "+inf") << '\n';
    }
    return os.str();
}

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

Rational row_activity(const Constraint& row, std::span<const Rational> x) {
    return dot(row.coefficients, x);
}

bool relation_holds(Relation relation, const Rational& lhs, const Rational& rhs) {
    switch (relation) {
        case Relation::LessEqual: return lhs <= rhs;
        case Relation::Equal: return lhs == rhs;
        case Relation::GreaterEqual: return lhs >= rhs;
    }
    return false;
}

bool multiplier_sign_ok(Relation relation, const Rational& y) {
    switch (relation) {
        case Relation::LessEqual: return !y.is_negative();
        case Relation::Equal: return true;
        case Relation::GreaterEqual: return !y.is_positive();
    }
    return false;
}

RationalVector transpose_times(const LinearProgram& lp, std::span<const Rational> y) {
    RationalVector g(lp.columns());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (y[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < lp.columns(); ++j) {
            g[j] += y[i] * lp.rows[i].coefficients[j];
        }
    }
    return g;
}

// How an original column is expressed through non-negative tableau columns.
struct ColumnMap {
    enum class Kind { Shift, Mirror, Split };
    Kind kind;
    std::size_t z;   // first tableau column
    Rational offset; // x = offset + z, x = offset - z, or x = z - z'
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t columns)
        : rows_(rows), width_(columns + 1), cells_(rows * width_), obj_(width_) {}

    Rational& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }
    Rational& rhs(std::size_t r) { return at(r, width_ - 1); }
    Rational& obj(std::size_t c) { return obj_[c]; }
    std::size_t rows() const { return rows_; }
    std::size_t columns() const { return width_ - 1; }

    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t k) {
        const Rational inv = at(r, k).reciprocal();
        std::vector<std::size_t> support;
        for (std::size_t c = 0; c < width_; ++c) {
            if (!at(r, c).is_zero()) {
                at(r, c) *= inv;
                support.push_back(c);
            }
        }
        auto eliminate = [&](Rational* row) {
            if (row[k].is_zero()) {
                return;
            }
            const Rational factor = row[k];
            for (std::size_t c : support) {
                row[c] -= factor * at(r, c);
            }
        };
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i != r) {
                eliminate(&cells_[i * width_]);
            }
        }
        eliminate(obj_.data());
        basis[r] = k;
    }

    void load_objective(const RationalVector& cost) {
        for (std::size_t c = 0; c < width_; ++c) {
            Rational v = c < cost.size() ? -cost[c] : Rational(0);
            for (std::size_t r = 0; r < rows_; ++r) {
                const Rational& cb = cost[basis[r]];
                if (!cb.is_zero() && !at(r, c).is_zero()) {
                    v += cb * at(r, c);
                }
            }
            obj_[c] = std::move(v);
        }
    }

    // Bland's rule: lowest-index improving column enters; among minimum-ratio
    // rows the lowest-index basic variable leaves. Returns the column that
    // proved unboundedness, or nullopt at optimality.
    std::optional<std::size_t> run(std::size_t allowed_columns) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t c = 0; c < allowed_columns; ++c) {
                if (obj_[c].is_negative()) {
                    entering = c;
                    break;
                }
            }
            if (!entering) {
                return std::nullopt;
            }
            const std::size_t k = *entering;
            std::optional<std::size_t> leaving;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (!at(r, k).is_positive()) {
                    continue;
                }
                if (!leaving) {
                    leaving = r;
                    continue;
                }
                const std::size_t s = *leaving;
                // rhs(r)/a(r,k) vs rhs(s)/a(s,k), both denominators positive
                const auto cmp = (at(r, width_ - 1) * at(s, k)) <=> (at(s, width_ - 1) * at(r, k));
                if (cmp < 0 || (cmp == 0 && basis[r] < basis[s])) {
                    leaving = r;
                }
            }
            if (!leaving) {
                return k;
            }
            pivot(*leaving, k);
        }
    }

private:
    std::size_t rows_;
    std::size_t width_;
    std::vector<Rational> cells_;
    std::vector<Rational> obj_;
};

LpOutcome solve_unchecked(const LinearProgram& lp) {
    const std::size_t n = lp.columns();
    const std::size_t original_rows = lp.rows.size();

    std::vector<ColumnMap> maps;
    maps.reserve(n);
    std::size_t structural = 0;
    std::vector<std::size_t> capped;  // shifted columns that also carry an upper bound row
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.lower[j]) {
            maps.push_back({ColumnMap::Kind::Shift, structural++, *lp.lower[j]});
            if (lp.upper[j]) {
                capped.push_back(j);
            }
        } else if (lp.upper[j]) {
            maps.push_back({ColumnMap::Kind::Mirror, structural++, *lp.upper[j]});
        } else {
            maps.push_back({ColumnMap::Kind::Split, structural, Rational(0)});
            structural += 2;
        }
    }

    const std::size_t m = original_rows + capped.size();
    std::size_t slack_count = capped.size();
    for (const auto& row : lp.rows) {
        if (row.relation != Relation::Equal) {
            ++slack_count;
        }
    }
    const std::size_t N = structural + slack_count;
    const std::size_t C = N + m;

    Tableau t(m, C);
    std::vector<int> flip(m, 1);
    std::size_t next_slack = structural;
    for (std::size_t i = 0; i < original_rows; ++i) {
        const auto& row = lp.rows[i];
        Rational rhs = row.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& a = row.coefficients[j];
            if (a.is_zero()) {
                continue;
            }
            const auto& map = maps[j];
            switch (map.kind) {
                case ColumnMap::Kind::Shift:
                    t.at(i, map.z) += a;
                    rhs -= a * map.offset;
                    break;
                case ColumnMap::Kind::Mirror:
                    t.at(i, map.z) -= a;
                    rhs -= a * map.offset;
                    break;
                case ColumnMap::Kind::Split:
                    t.at(i, map.z) += a;
                    t.at(i, map.z + 1) -= a;
                    break;
            }
        }
        if (row.relation == Relation::LessEqual) {
            t.at(i, next_slack++) = 1;
        } else if (row.relation == Relation::GreaterEqual) {
            t.at(i, next_slack++) = -1;
        }
        t.rhs(i) = rhs;
    }
    for (std::size_t b = 0; b < capped.size(); ++b) {
        const std::size_t i = original_rows + b;
        const std::size_t j = capped[b];
        t.at(i, maps[j].z) = 1;
        t.at(i, next_slack++) = 1;
        t.rhs(i) = *lp.upper[j] - *lp.lower[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (t.rhs(i).is_negative()) {
            flip[i] = -1;
            for (std::size_t c = 0; c <= N; ++c) {
                const std::size_t col = c == N ? C : c;
                t.at(i, col) = -t.at(i, col);
            }
        }
        t.at(i, N + i) = 1;
    }
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        t.basis[i] = N + i;
    }

    // Phase 1: maximize -(sum of artificials).
    RationalVector phase1_cost(C, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        phase1_cost[N + i] = -1;
    }
    t.load_objective(phase1_cost);
    t.run(C);

    LpOutcome out;
    if (t.obj(C).is_negative()) {
        out.status = Status::Infeasible;
        out.certificate.resize(original_rows);
        for (std::size_t i = 0; i < original_rows; ++i) {
            out.certificate[i] = (t.obj(N + i) - 1) * flip[i];
        }
        return out;
    }

    for (std::size_t r = 0; r < m; ++r) {
        if (t.basis[r] < N) {
            continue;
        }
        for (std::size_t k = 0; k < N; ++k) {
            if (!t.at(r, k).is_zero()) {
                t.pivot(r, k);
                break;
            }
        }
        // A row with no structural entry left is redundant; its artificial
        // stays basic at zero and can never move again.
    }

    // Phase 2.
    RationalVector cost(C, Rational(0));
    Rational constant;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& map = maps[j];
        const Rational& c = lp.objective[j];
        switch (map.kind) {
            case ColumnMap::Kind::Shift:
                cost[map.z] = c;
                constant += c * map.offset;
                break;
            case ColumnMap::Kind::Mirror:
                cost[map.z] = -c;
                constant += c * map.offset;
                break;
            case ColumnMap::Kind::Split:
                cost[map.z] = c;
                cost[map.z + 1] = -c;
                break;
        }
    }
    t.load_objective(cost);
    const auto unbounded_column = t.run(N);

    RationalVector z(C, Rational(0));
    for (std::size_t r = 0; r < m; ++r) {
        z[t.basis[r]] = t.rhs(r);
    }
    auto to_original = [&](const RationalVector& values, bool with_offset) {
        RationalVector x(n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& map = maps[j];
            switch (map.kind) {
                case ColumnMap::Kind::Shift:
                    x[j] = values[map.z] + (with_offset ? map.offset : Rational(0));
                    break;
                case ColumnMap::Kind::Mirror:
                    x[j] = (with_offset ? map.offset : Rational(0)) - values[map.z];
                    break;
                case ColumnMap::Kind::Split:
                    x[j] = values[map.z] - values[map.z + 1];
                    break;
            }
        }
        return x;
    };
    out.primal = to_original(z, true);

    if (unbounded_column) {
        const std::size_t k = *unbounded_column;
        RationalVector direction(C, Rational(0));
        direction[k] = 1;
        for (std::size_t r = 0; r < m; ++r) {
            direction[t.basis[r]] = -t.at(r, k);
        }
        out.status = Status::Unbounded;
        out.certificate = to_original(direction, false);
        return out;
    }

    out.status = Status::Optimal;
    out.value = dot(lp.objective, out.primal);
    out.dual.resize(original_rows);
    for (std::size_t i = 0; i < original_rows; ++i) {
        out.dual[i] = t.obj(N + i) * flip[i];
    }
    return out;
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
    lp.check_well_formed();
    LpOutcome out = solve_unchecked(lp);
    if (!verify(lp, out)) {
        throw std::logic_error("solve_lp: " + std::string(to_string(out.status)) +
                               " outcome failed self-verification for\n" + lp.debug_string());
    }
    return out;
}

std::variant<FeasiblePoint, InfeasibleSystem> feasibility(const LinearProgram& lp) {
    LinearProgram zero = lp;
    zero.objective.assign(lp.columns(), Rational(0));
    LpOutcome out = solve_lp(zero);
    if (out.status == Status::Infeasible) {
        return InfeasibleSystem{std::move(out.certificate)};
    }
    return FeasiblePoint{std::move(out.primal)};
}

bool satisfies(const LinearProgram& lp, std::span<const Rational> x) {
    if (x.size() != lp.columns()) {
        return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if ((lp.lower[j] && x[j] < *lp.lower[j]) || (lp.upper[j] && x[j] > *lp.upper[j])) {
            return false;
        }
    }
    for (const auto& row : lp.rows) {
        if (!relation_holds(row.relation, row_activity(row, x), row.rhs)) {
            return false;
        }
    }
    return true;
}

std::optional<Rational> dual_bound(const LinearProgram& lp, std::span<const Rational> y) {
    if (y.size() != lp.rows.size()) {
        return std::nullopt;
    }
    Rational bound;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!multiplier_sign_ok(lp.rows[i].relation, y[i])) {
            return std::nullopt;
        }
        bound += y[i] * lp.rows[i].rhs;
    }
    const RationalVector g = transpose_times(lp, y);
    for (std::size_t j = 0; j < lp.columns(); ++j) {
        const Rational reduced = lp.objective[j] - g[j];
        if (reduced.is_positive()) {
            if (!lp.upper[j]) {
                return std::nullopt;
            }
            bound += reduced * *lp.upper[j];
        } else if (reduced.is_negative()) {
            if (!lp.lower[j]) {
                return std::nullopt;
            }
            bound += reduced * *lp.lower[j];
        }
    }
    return bound;
}

bool certifies_infeasible(const LinearProgram& lp, std::span<const Rational> y) {
    if (y.size() != lp.rows.size()) {
        return false;
    }
    Rational combined_rhs;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!multiplier_sign_ok(lp.rows[i].relation, y[i])) {
            return false;
        }
        combined_rhs += y[i] * lp.rows[i].rhs;
    }
    // Every feasible x has g·x <= y·b; show the box forces g·x above that.
    const RationalVector g = transpose_times(lp, y);
    Rational box_min;
    for (std::size_t j = 0; j < lp.columns(); ++j) {
        if (g[j].is_positive()) {
            if (!lp.lower[j]) {
                return false;
            }
            box_min += g[j] * *lp.lower[j];
        } else if (g[j].is_negative()) {
            if (!lp.upper[j]) {
                return false;
            }
            box_min += g[j] * *lp.upper[j];
        }
    }
    return box_min > combined_rhs;
}

bool certifies_unbounded(const LinearProgram& lp, std::span<const Rational> ray) {
    if (ray.size() != lp.columns()) {
        return false;
    }
    for (std::size_t j = 0; j < ray.size(); ++j) {
        if ((lp.lower[j] && ray[j].is_negative()) || (lp.upper[j] && ray[j].is_positive())) {
            return false;
        }
    }
    for (const auto& row : lp.rows) {
        if (!relation_holds(row.relation, row_activity(row, ray), Rational(0))) {
            return false;
        }
    }
    return dot(lp.objective, ray).is_positive();
}

bool verify(const LinearProgram& lp, const LpOutcome& outcome) {
    switch (outcome.status) {
        case Status::Infeasible:
            return certifies_infeasible(lp, outcome.certificate);
        case Status::Unbounded:
            return satisfies(lp, outcome.primal) && certifies_unbounded(lp, outcome.certificate);
        case Status::Optimal:
            break;
    }
    if (!satisfies(lp, outcome.primal) || outcome.value != dot(lp.objective, outcome.primal)) {
        return false;
    }
    const auto bound = dual_bound(lp, outcome.dual);
    if (!bound || *bound != outcome.value) {
        return false;
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (!outcome.dual[i].is_zero() &&
            row_activity(lp.rows[i], outcome.primal) != lp.rows[i].rhs) {
            return false;
        }
    }
    const RationalVector g = transpose_times(lp, outcome.dual);
    for (std::size_t j = 0; j < lp.columns(); ++j) {
        const Rational reduced = lp.objective[j] - g[j];
        if (reduced.is_positive() && outcome.primal[j] != *lp.upper[j]) {
            return false;
        }
        if (reduced.is_negative() && outcome.primal[j] != *lp.lower[j]) {
            return false;
        }
    }
    return true;
}

}  // namespace mixedcore::lp
