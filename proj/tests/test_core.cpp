#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mixedcore;
using fixtures::alloc;
using fixtures::q;
using fixtures::v;

namespace {

Economy with_atom_moved(Economy e) {
    e.cohorts[0].atomic = false;
    e.cohorts[1].atomic = true;
    return e;
}

Economy same_weights() {
    Economy e = fixtures::e0();
    e.cohorts[1].utility = e.cohorts[0].utility;
    return e;
}

}  // namespace

TEST_CASE("Pareto check on E0 matches the grid oracle") {
    const Economy e = fixtures::e0();
    const auto r = pareto_check(e);
    CHECK_FALSE(r.optimal);
    CHECK(r.delta == q("1/2"));
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == alloc({{"A1", v({"1", "0"})}, {"C2", v({"0", "1"})}}));

    const auto grid = oracle::grid_pareto_delta(e, 24);
    CHECK(grid.value == r.delta);
    CHECK(grid.allocation == *r.witness);
}

TEST_CASE("Pareto-optimal endowments") {
    CHECK(pareto_check(fixtures::e1()).optimal);
    CHECK(pareto_check(fixtures::e1()).delta == Rational(0));
    CHECK(oracle::grid_pareto_delta(fixtures::e1(), 24).value == Rational(0));
    CHECK(pareto_check(same_weights()).optimal);
}

TEST_CASE("supporting price") {
    const Economy e1 = fixtures::e1();
    const PriceSystem p = supporting_price(e1);
    CHECK(p[0] >= p[1] / 3);
    CHECK(p[0] <= p[1] * 3);
    CHECK(check_competitive(e1, p, endowment_allocation(e1)).ok);

    Economy single;
    single.commodities = 3;
    single.cohorts.push_back({"solo", false, Rational(2), v({"1", "0", "2"}), v({"1/6", "1/3", "1/2"})});
    CHECK(supporting_price(single).prices() == v({"1/6", "1/3", "1/2"}));

    const Economy scaled_economy = rescale(e1, {{"A1", Rational(2)}, {"C2", Rational(1)}});
    const PriceSystem ps = supporting_price(scaled_economy);
    CHECK(check_competitive(scaled_economy, ps, endowment_allocation(scaled_economy)).ok);

    try {
        supporting_price(fixtures::e0());
        FAIL("E0 accepted");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::NotParetoOptimal);
    }
}

TEST_CASE("competitive check clauses") {
    const Economy e = fixtures::e0();
    const PriceSystem half(v({"1/2", "1/2"}));
    const Allocation eq = alloc({{"A1", v({"1", "0"})}, {"C2", v({"0", "1"})}});
    CHECK(check_competitive(e, half, eq).ok);

    const auto at_omega = check_competitive(e, half, endowment_allocation(e));
    CHECK_FALSE(at_omega.ok);
    REQUIRE_FALSE(at_omega.violations.empty());
    CHECK(at_omega.violations.front().cohort == "A1");

    const Allocation x_star = alloc({{"A1", v({"1", "2/3"})}, {"C2", v({"0", "1/3"})}});
    const auto r = check_competitive(e, PriceSystem(v({"1/4", "3/4"})), x_star);
    CHECK_FALSE(r.ok);
    bool names_a1 = false;
    for (const auto& viol : r.violations) {
        names_a1 = names_a1 || viol.cohort == "A1";
    }
    CHECK(names_a1);

    CHECK_FALSE(check_competitive(e, PriceSystem(v({"0", "1"})), eq).ok);
    CHECK_THROWS_AS(check_competitive(e, PriceSystem(v({"1", "1", "1"})), eq), Error);
}

TEST_CASE("equilibria of E0 agree with the grid oracle") {
    const Economy e = fixtures::e0();
    const auto found = find_equilibrium(e);
    REQUIRE(found.size() == 1);
    CHECK(found[0].price.prices() == v({"1/2", "1/2"}));
    CHECK(found[0].allocation == alloc({{"A1", v({"1", "0"})}, {"C2", v({"0", "1"})}}));

    const auto grid = oracle::grid_equilibria(e, 48);
    REQUIRE(grid.size() == 1);
    CHECK(grid[0].price == found[0].price.prices());
    CHECK(grid[0].allocation == found[0].allocation);
}

TEST_CASE("equilibria of E1 include a no-trade equilibrium") {
    const Economy e = fixtures::e1();
    const auto found = find_equilibrium(e);
    REQUIRE_FALSE(found.empty());
    bool no_trade = false;
    for (const auto& eq : found) {
        CHECK(check_competitive(e, eq.price, eq.allocation).ok);
        if (eq.allocation == endowment_allocation(e)) {
            no_trade = true;
            CHECK(eq.price[0] >= eq.price[1] / 3);
            CHECK(eq.price[0] <= eq.price[1] * 3);
        }
    }
    CHECK(no_trade);
    // Every grid equilibrium price is one at which E1's endowment is competitive.
    for (const auto& g : oracle::grid_equilibria(e, 24)) {
        CHECK(check_competitive(e, PriceSystem(g.price), g.allocation).ok);
    }
}

TEST_CASE("identical weights admit the no-trade equilibrium at p = a") {
    const Economy e = same_weights();
    const auto found = find_equilibrium(e);
    bool no_trade_at_a = false;
    for (const auto& eq : found) {
        CHECK(check_competitive(e, eq.price, eq.allocation).ok);
        no_trade_at_a = no_trade_at_a || eq.price.prices() == e.cohorts[0].utility;
    }
    CHECK(no_trade_at_a);
    CHECK(check_competitive(e, PriceSystem(e.cohorts[0].utility), endowment_allocation(e)).ok);
}

TEST_CASE("find_equilibrium shape limits") {
    Economy three = fixtures::e0();
    three.cohorts.push_back({"D3", false, Rational(1), v({"1", "1"}), v({"1/2", "1/2"})});
    try {
        find_equilibrium(three);
        FAIL("three cohorts accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedShape);
    }
}

TEST_CASE("core-max allocation of E0 matches the grid oracle") {
    const Economy e = fixtures::e0();
    const auto r = core_max_allocation(e);
    CHECK(r.atom == "A1");
    CHECK(r.value == q("11/12"));
    CHECK(r.allocation == alloc({{"A1", v({"1", "2/3"})}, {"C2", v({"0", "1/3"})}}));
    CHECK_FALSE(r.trivial);

    const auto grid = oracle::grid_core_max(e, 0, 24);
    CHECK(grid.value == r.value);
    CHECK(grid.allocation == r.allocation);
}

TEST_CASE("core-max with the atom flag moved") {
    const Economy e = with_atom_moved(fixtures::e0());
    const auto r = core_max_allocation(e);
    CHECK(r.atom == "C2");
    CHECK(r.value == q("11/12"));
    CHECK(r.allocation == alloc({{"C2", v({"2/3", "1"})}, {"A1", v({"1/3", "0"})}}));
    CHECK(oracle::grid_core_max(e, 1, 24).value == r.value);
}

TEST_CASE("core-max on the trivial economy E1 returns the endowment") {
    const Economy e = fixtures::e1();
    const auto r = core_max_allocation(e);
    CHECK(r.trivial);
    CHECK(r.value == q("3/4"));
    CHECK(r.allocation == endowment_allocation(e));
    CHECK(oracle::grid_core_max(e, 0, 24).value == r.value);
}

TEST_CASE("core-max shape errors") {
    Economy none = fixtures::e0();
    none.cohorts[0].atomic = false;
    CHECK_THROWS_AS(core_max_allocation(none), Error);
    CHECK_THROWS_AS(core_max_allocation(fixtures::e0(), "C2"), Error);
}

TEST_CASE("rescale and transport") {
    const Economy e = fixtures::e0();
    const Lambda lambda{{"A1", Rational(2)}, {"C2", Rational(1)}};
    const Economy r = rescale(e, lambda);
    CHECK(r.cohorts[0].mass == q("1/2"));
    CHECK(r.cohorts[0].endowment == v({"0", "2"}));
    CHECK(r.cohorts[1] == e.cohorts[1]);
    CHECK(aggregate_endowment(r) == aggregate_endowment(e));

    const Lambda ones{{"A1", Rational(1)}, {"C2", Rational(1)}};
    CHECK(rescale(e, ones) == e);
    const Lambda odd{{"A1", q("3/7")}, {"C2", q("5/2")}};
    const Lambda inverse{{"A1", q("7/3")}, {"C2", q("2/5")}};
    CHECK(rescale(rescale(e, odd), inverse) == e);

    const Allocation x_star = alloc({{"A1", v({"1", "2/3"})}, {"C2", v({"0", "1/3"})}});
    CHECK(transport_allocation(x_star, lambda) == alloc({{"A1", v({"2", "4/3"})}, {"C2", v({"0", "1/3"})}}));
    CHECK(transport_allocation(x_star, ones) == x_star);
    CHECK(transport_allocation(endowment_allocation(e), lambda) == endowment_allocation(r));

    auto code = [&](const Lambda& l) {
        try {
            rescale(e, l);
        } catch (const Error& err) {
            return err.code();
        }
        return ErrorCode::MalformedDocument;
    };
    CHECK(code({{"A1", Rational(0)}, {"C2", Rational(1)}}) == ErrorCode::NonPositiveLambda);
    CHECK(code({{"A1", Rational(1)}}) == ErrorCode::NonPositiveLambda);
    CHECK(code({{"A1", Rational(1)}, {"C2", Rational(1)}, {"Z", Rational(1)}}) == ErrorCode::UnknownCohortId);
}

TEST_CASE("decentralizing prices") {
    const Economy e = fixtures::e0();
    const Allocation eq = alloc({{"A1", v({"1", "0"})}, {"C2", v({"0", "1"})}});
    const auto found = decentralizing_prices(e, eq);
    REQUIRE(std::holds_alternative<PriceSystem>(found));
    CHECK(std::get<PriceSystem>(found).prices() == v({"1/2", "1/2"}));

    const Allocation x_star = alloc({{"A1", v({"1", "2/3"})}, {"C2", v({"0", "1/3"})}});
    const auto none = decentralizing_prices(e, x_star);
    REQUIRE(std::holds_alternative<lp::InfeasibleSystem>(none));
    CHECK(lp::certifies_infeasible(decentralization_program(e, x_star), std::get<lp::InfeasibleSystem>(none).farkas));

    const auto at_omega = decentralizing_prices(e, endowment_allocation(e));
    CHECK(std::holds_alternative<lp::InfeasibleSystem>(at_omega));

    try {
        decentralizing_prices(e, alloc({{"A1", v({"1", "0"})}, {"C2", v({"0", "1/2"})}}));
        FAIL("wasteful allocation accepted");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::NotFeasible);
    }
}

TEST_CASE("a heavier continuum makes the core-max allocation competitive") {
    // Atom (mass 1, ω=(0,1), a=(3/4,1/4)) against a continuum of mass 3
    // (ω=(1,0), a=(1/4,3/4)).
    const Economy e = fixtures::e0_heavy();
    const auto r = core_max_allocation(e);
    CHECK(r.value == q("9/4"));
    CHECK(r.allocation == alloc({{"A1", v({"3", "0"})}, {"C2", v({"0", "1/3"})}}));
    CHECK(oracle::grid_core_max(e, 0, 24).value == r.value);
    CHECK_FALSE(find_blocking_coalition(e, r.allocation).has_value());

    const PriceSystem a2(e.cohorts[1].utility);
    CHECK(check_competitive(e, a2, r.allocation).ok);

    // Raising the continuum above its endowment utility by t along the
    // frontier is blocked by the atom with part of the continuum.
    for (const char* t : {"1/100", "1/20", "1/8"}) {
        CAPTURE(t);
        const Rational tt = q(t);
        const Allocation xt = alloc({{"A1", v({"3", "0"})}, {"C2", v({"0", "1/3"})}});
        Allocation shifted = xt;
        shifted.bundles["A1"] = {Rational(3) - 12 * tt, Rational(0)};
        shifted.bundles["C2"] = {4 * tt, q("1/3")};
        REQUIRE(is_feasible(e, shifted, FeasibilityMode::Exact));
        CHECK(utility(e.cohorts[1], shifted.at("C2")) == q("1/4") + tt);
        const auto witness = find_blocking_coalition(e, shifted);
        REQUIRE(witness.has_value());
        CHECK(witness->included_atoms == std::vector<std::string>{"A1"});
        CHECK(witness->fractions.at("C2") < Rational(3));
        CHECK(witness_blocks(e, shifted, *witness));
    }

    try {
        certify_noncompetitive_core(e);
        FAIL("certified");
    } catch (const CertificationFailure& f) {
        CHECK(f.evidence()["attempts"][0]["price"] == nlohmann::json{"1/4", "3/4"});
    }
}
