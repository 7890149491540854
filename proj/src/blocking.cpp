#include <algorithm>
#include <bit>
#include <stdexcept>

#include "mixedcore/core.hpp"

namespace mixedcore {

using lp::Relation;

std::vector<std::uint32_t> inclusion_patterns(std::size_t cohorts) {
    if (cohorts == 0 || cohorts > 20) {
        throw Error(ErrorCode::UnsupportedShape, "blocking scan supports 1 to 20 cohorts");
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 1; mask < (1u << cohorts); ++mask) {
        out.push_back(mask);
    }
    std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    return out;
}

namespace {

struct Layout {
    // First column of each included cohort's bundle; fraction column for
    // atomless cohorts sits right after the bundle.
    std::vector<std::size_t> included;
    std::vector<std::size_t> start;
    std::size_t delta = 0;
};

Layout layout_for(const Economy& economy, std::uint32_t members) {
    Layout layout;
    std::size_t column = 0;
    for (std::size_t i = 0; i < economy.cohorts.size(); ++i) {
        if (!(members >> i & 1u)) {
            continue;
        }
        layout.included.push_back(i);
        layout.start.push_back(column);
        column += economy.commodities + (economy.cohorts[i].atomic ? 0 : 1);
    }
    layout.delta = column;
    return layout;
}

}  // namespace

lp::LinearProgram blocking_program(const Economy& economy, const Allocation& x, std::uint32_t members) {
    require_shape(economy, x);
    const std::size_t l = economy.commodities;
    const Layout layout = layout_for(economy, members);
    const std::size_t n = layout.delta + 1;

    auto program = lp::LinearProgram::nonnegative(n);
    program.objective[layout.delta] = 1;
    program.lower[layout.delta] = std::nullopt;

    // Resource balance: Σ mass_A y_A + Σ z_c - Σ s_c ω_c = Σ mass_A ω_A.
    for (std::size_t j = 0; j < l; ++j) {
        RationalVector row(n, Rational(0));
        Rational rhs;
        for (std::size_t m = 0; m < layout.included.size(); ++m) {
            const Cohort& c = economy.cohorts[layout.included[m]];
            const std::size_t s = layout.start[m];
            if (c.atomic) {
                row[s + j] = c.mass;
                rhs += c.mass * c.endowment[j];
            } else {
                row[s + j] = 1;
                row[s + l] = -c.endowment[j];
            }
        }
        program.add_row(std::move(row), Relation::Equal, rhs);
    }
    for (std::size_t m = 0; m < layout.included.size(); ++m) {
        const Cohort& c = economy.cohorts[layout.included[m]];
        const std::size_t s = layout.start[m];
        const Rational current = utility(c, x.at(c.id));
        RationalVector row(n, Rational(0));
        for (std::size_t j = 0; j < l; ++j) {
            row[s + j] = c.utility[j];
        }
        row[layout.delta] = -1;
        if (c.atomic) {
            program.add_row(std::move(row), Relation::GreaterEqual, current);
        } else {
            row[s + l] = -current;
            program.upper[s + l] = c.mass;
            program.add_row(std::move(row), Relation::GreaterEqual, 0);
        }
    }
    return program;
}

BlockingScan scan_blocking_coalitions(const Economy& economy, const Allocation& x) {
    require_shape(economy, x);
    const std::size_t l = economy.commodities;
    BlockingScan scan;
    for (std::uint32_t members : inclusion_patterns(economy.cohorts.size())) {
        const auto program = blocking_program(economy, x, members);
        const auto outcome = lp::solve_lp(program);
        if (outcome.status != lp::Status::Optimal) {
            throw std::logic_error("blocking scan: pattern program is not optimal");
        }
        const Layout layout = layout_for(economy, members);
        PatternOutcome pattern;
        for (std::size_t i : layout.included) {
            pattern.members.push_back(economy.cohorts[i].id);
        }
        pattern.delta = outcome.value;
        pattern.dual = outcome.dual;

        // Patterns are visited smallest first, so the first improving one has
        // no improving sub-pattern and every fraction in it is positive.
        if (!scan.witness && pattern.delta.is_positive()) {
            BlockingWitness witness;
            witness.margin = pattern.delta;
            for (std::size_t m = 0; m < layout.included.size(); ++m) {
                const Cohort& c = economy.cohorts[layout.included[m]];
                const auto first = outcome.primal.begin() + static_cast<long>(layout.start[m]);
                Bundle bundle(first, first + static_cast<long>(l));
                if (c.atomic) {
                    witness.included_atoms.push_back(c.id);
                } else {
                    const Rational& share = outcome.primal[layout.start[m] + l];
                    if (!share.is_positive()) {
                        throw std::logic_error("blocking scan: minimal pattern has a zero fraction");
                    }
                    bundle = scaled(bundle, share.reciprocal());
                    witness.fractions.emplace(c.id, share);
                    witness.margin = std::min(witness.margin, pattern.delta / share);
                }
                witness.per_capita_bundles.emplace(c.id, std::move(bundle));
            }
            if (!witness_blocks(economy, x, witness)) {
                throw std::logic_error("blocking scan: witness fails its own check");
            }
            scan.witness = std::move(witness);
        }
        scan.patterns.push_back(std::move(pattern));
    }
    return scan;
}

std::optional<BlockingWitness> find_blocking_coalition(const Economy& economy, const Allocation& x) {
    return scan_blocking_coalitions(economy, x).witness;
}

bool witness_blocks(const Economy& economy, const Allocation& x, const BlockingWitness& witness) {
    if (!witness.margin.is_positive()) {
        return false;
    }
    const std::size_t l = economy.commodities;
    Bundle used(l), owned(l);
    std::size_t members = 0;
    for (const auto& c : economy.cohorts) {
        const bool is_member = c.atomic ? std::find(witness.included_atoms.begin(),
                                                    witness.included_atoms.end(),
                                                    c.id) != witness.included_atoms.end()
                                        : witness.fractions.contains(c.id);
        if (!is_member) {
            continue;
        }
        ++members;
        Rational weight = c.mass;
        if (!c.atomic) {
            weight = witness.fractions.at(c.id);
            if (!weight.is_positive() || weight > c.mass) {
                return false;
            }
        }
        auto it = witness.per_capita_bundles.find(c.id);
        if (it == witness.per_capita_bundles.end() || it->second.size() != l) {
            return false;
        }
        for (const auto& q : it->second) {
            if (q.is_negative()) {
                return false;
            }
        }
        if (utility(c, it->second) < utility(c, x.at(c.id)) + witness.margin) {
            return false;
        }
        for (std::size_t j = 0; j < l; ++j) {
            used[j] += weight * it->second[j];
            owned[j] += weight * c.endowment[j];
        }
    }
    return members > 0 && members == witness.per_capita_bundles.size() &&
           members == witness.included_atoms.size() + witness.fractions.size() && used == owned;
}

}  // namespace mixedcore
