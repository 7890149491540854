#include "mixedcore/sampling.hpp"

namespace mixedcore::sampling {

long Rng::uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
}

bool Rng::chance(long numerator, long denominator) { return uniform(0, denominator - 1) < numerator; }

UtilityWeights random_weights(Rng& rng, std::size_t l, long grid) {
    UtilityWeights a(l);
    Rational total;
    for (auto& w : a) {
        w = rng.uniform(1, grid);
        total += w;
    }
    for (auto& w : a) {
        w /= total;
    }
    return a;
}

Bundle random_bundle(Rng& rng, std::size_t l) {
    Bundle b(l);
    for (auto& q : b) {
        // Zeros are common so that specialised endowments show up.
        q = rng.chance(1, 3) ? Rational(0) : Rational(rng.uniform(1, 8), 2);
    }
    return b;
}

namespace {

// Two draws, sequenced explicitly so the stream is compiler-independent.
Rational draw_fraction(Rng& rng, long max_numerator, long max_denominator) {
    const long numerator = rng.uniform(1, max_numerator);
    const long denominator = rng.uniform(1, max_denominator);
    return Rational(numerator, denominator);
}

}  // namespace

Rational random_mass(Rng& rng) { return draw_fraction(rng, 6, 3); }

Economy random_economy(Rng& rng, std::size_t cohorts, AtomPolicy atoms, std::size_t max_goods) {
    for (;;) {
        Economy e;
        e.commodities = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(max_goods)));
        for (std::size_t i = 0; i < cohorts; ++i) {
            Cohort c;
            c.id = std::string(1, static_cast<char>('A' + i));
            switch (atoms) {
                case AtomPolicy::Any: c.atomic = rng.chance(1, 2); break;
                case AtomPolicy::AtLeastOne: c.atomic = i == 0 || rng.chance(1, 2); break;
                case AtomPolicy::Both: c.atomic = true; break;
                case AtomPolicy::None: c.atomic = false; break;
            }
            c.id += c.atomic ? "tom" : "cont";
            c.mass = random_mass(rng);
            c.endowment = random_bundle(rng, e.commodities);
            c.utility = random_weights(rng, e.commodities);
            e.cohorts.push_back(std::move(c));
        }
        if (atoms == AtomPolicy::AtLeastOne && cohorts == 2 && rng.chance(1, 2)) {
            std::swap(e.cohorts[0], e.cohorts[1]);
        }
        if (economy_violations(e).empty()) {
            return e;
        }
    }
}

Economy random_certifiable_economy(Rng& rng) {
    for (;;) {
        Economy e = random_economy(rng, 2, AtomPolicy::AtLeastOne);
        if (!pareto_check(e).optimal) {
            return e;
        }
    }
}

Economy random_two_atom_economy(Rng& rng) {
    for (;;) {
        Economy e = random_economy(rng, 2, AtomPolicy::Both);
        if (!pareto_check(e).optimal) {
            return e;
        }
    }
}

Economy random_pareto_optimal_economy(Rng& rng, std::size_t cohorts) {
    Economy e = random_economy(rng, cohorts, AtomPolicy::Any);
    const std::size_t l = e.commodities;
    const Bundle total = aggregate_endowment(e);

    // maximize Σ θ_i mass_i a_i·y_i  s.t.  Σ mass_i y_i = total, y >= 0.
    auto program = lp::LinearProgram::nonnegative(cohorts * l);
    for (std::size_t i = 0; i < cohorts; ++i) {
        const Rational theta(rng.uniform(1, 5));
        for (std::size_t j = 0; j < l; ++j) {
            program.objective[i * l + j] = theta * e.cohorts[i].mass * e.cohorts[i].utility[j];
        }
    }
    for (std::size_t j = 0; j < l; ++j) {
        RationalVector row(cohorts * l, Rational(0));
        for (std::size_t i = 0; i < cohorts; ++i) {
            row[i * l + j] = e.cohorts[i].mass;
        }
        program.add_row(std::move(row), lp::Relation::Equal, total[j]);
    }
    const auto outcome = lp::solve_lp(program);
    for (std::size_t i = 0; i < cohorts; ++i) {
        e.cohorts[i].endowment.assign(outcome.primal.begin() + static_cast<long>(i * l),
                                      outcome.primal.begin() + static_cast<long>((i + 1) * l));
    }
    return e;
}

Allocation random_feasible_allocation(Rng& rng, const Economy& economy) {
    const std::size_t l = economy.commodities;
    const Bundle total = aggregate_endowment(economy);
    Allocation x;
    std::vector<RationalVector> shares(economy.cohorts.size(), RationalVector(l));
    for (std::size_t j = 0; j < l; ++j) {
        Rational weighted;
        for (std::size_t i = 0; i < economy.cohorts.size(); ++i) {
            shares[i][j] = rng.uniform(0, 4);
            weighted += shares[i][j] * economy.cohorts[i].mass;
        }
        if (weighted.is_zero()) {
            shares[0][j] = 1;
            weighted = economy.cohorts[0].mass;
        }
        for (std::size_t i = 0; i < economy.cohorts.size(); ++i) {
            shares[i][j] = shares[i][j] * total[j] / weighted;
        }
    }
    for (std::size_t i = 0; i < economy.cohorts.size(); ++i) {
        x.bundles.emplace(economy.cohorts[i].id, std::move(shares[i]));
    }
    return x;
}

PriceSystem random_positive_price(Rng& rng, std::size_t l) {
    RationalVector p(l);
    for (auto& v : p) {
        v = draw_fraction(rng, 12, 4);
    }
    return PriceSystem(std::move(p));
}

Lambda random_lambda(Rng& rng, const Economy& economy) {
    Lambda lambda;
    for (const auto& c : economy.cohorts) {
        lambda.emplace(c.id, draw_fraction(rng, 7, 4));
    }
    return lambda;
}

lp::LinearProgram random_lp(Rng& rng, std::size_t max_columns, std::size_t max_rows, bool pointed) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_columns)));
    const auto m = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_rows)));
    lp::LinearProgram program;
    program.objective.resize(n);
    program.lower.resize(n);
    program.upper.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        program.objective[j] = rng.uniform(-3, 3);
        switch (rng.uniform(0, pointed ? 3 : 4)) {
            case 0:
            case 1:
                program.lower[j] = Rational(0);
                break;
            case 2:
                program.lower[j] = Rational(rng.uniform(-3, 2));
                program.upper[j] = *program.lower[j] + rng.uniform(0, 4);
                break;
            case 3:
                program.upper[j] = Rational(rng.uniform(-2, 3));
                break;
            default:
                break;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        RationalVector row(n);
        for (auto& a : row) {
            a = rng.chance(1, 4) ? 0 : rng.uniform(-3, 3);
        }
        const long pick = rng.uniform(0, 9);
        const lp::Relation rel = pick < 5 ? lp::Relation::LessEqual
                                          : (pick < 8 ? lp::Relation::GreaterEqual : lp::Relation::Equal);
        program.add_row(std::move(row), rel, Rational(rng.uniform(-4, 8)));
    }
    return program;
}

}  // namespace mixedcore::sampling
