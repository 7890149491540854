#include <doctest.h>

#include "fixtures.hpp"

using namespace mixedcore;
using fixtures::alloc;
using fixtures::q;
using fixtures::v;
using nlohmann::json;

namespace {

ErrorCode code_of(const json& document) {
    try {
        io::read_economy(document);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("document was accepted");
    return ErrorCode::MalformedDocument;
}

}  // namespace

TEST_CASE("E0 is valid and its aggregate is (1,1)") {
    const Economy e = fixtures::e0();
    CHECK(e.commodities == 2);
    CHECK(e.cohorts.size() == 2);
    CHECK(e.cohorts[0].atomic);
    CHECK_FALSE(e.cohorts[1].atomic);
    CHECK(aggregate_endowment(e) == v({"1", "1"}));
    CHECK(economy_violations(e).empty());
}

TEST_CASE("validation rejects each broken invariant with its code") {
    CHECK(code_of(fixtures::load("bad_weights.json")) == ErrorCode::WeightsNotNormalized);
    CHECK(code_of(fixtures::load("zero_aggregate.json")) == ErrorCode::ZeroAggregateCommodity);

    json doc = fixtures::load("e0.json");
    SUBCASE("duplicate id") {
        doc["cohorts"][1]["id"] = "A1";
        CHECK(code_of(doc) == ErrorCode::DuplicateCohortId);
    }
    SUBCASE("non-positive mass") {
        doc["cohorts"][0]["mass"] = "0";
        CHECK(code_of(doc) == ErrorCode::NonPositiveMass);
    }
    SUBCASE("length mismatch") {
        doc["cohorts"][0]["endowment"] = {"0", "1", "0"};
        CHECK(code_of(doc) == ErrorCode::LengthMismatch);
    }
    SUBCASE("zero weight") {
        doc["cohorts"][0]["utility"] = {"1", "0"};
        CHECK(code_of(doc) == ErrorCode::WeightsNotNormalized);
    }
    SUBCASE("decimal token") {
        doc["cohorts"][0]["mass"] = "0.5";
        CHECK(code_of(doc) == ErrorCode::MalformedRational);
    }
    SUBCASE("numeric token") {
        doc["cohorts"][0]["mass"] = 1;
        CHECK(code_of(doc) == ErrorCode::MalformedRational);
    }
    SUBCASE("negative endowment") {
        doc["cohorts"][0]["endowment"] = {"-1", "2"};
        CHECK(code_of(doc) == ErrorCode::NegativeQuantity);
    }
    SUBCASE("missing field") {
        doc["cohorts"][0].erase("atomic");
        CHECK(code_of(doc) == ErrorCode::MalformedDocument);
    }
    SUBCASE("no cohorts") {
        doc["cohorts"] = json::array();
        CHECK(code_of(doc) == ErrorCode::MalformedDocument);
    }
}

TEST_CASE("economy documents round-trip canonically") {
    json doc = fixtures::load("e0.json");
    doc["cohorts"][0]["mass"] = "4/4";
    const Economy e = io::read_economy(doc);
    const json out = io::to_json(e);
    CHECK(out["cohorts"][0]["mass"] == "1");
    CHECK(io::read_economy(out) == e);
    CHECK(io::to_json(io::read_economy(json::parse(out.dump()))).dump() == out.dump());
}

TEST_CASE("aggregate is linear in the masses") {
    Economy e = fixtures::e0();
    const Bundle base = aggregate_endowment(e);
    e.cohorts[0].mass = q("5/2");
    e.cohorts[1].mass = q("5/2");
    CHECK(aggregate_endowment(e) == scaled(base, q("5/2")));
}

TEST_CASE("feasibility, shape and utility") {
    const Economy e = fixtures::e0();
    const Allocation exact = alloc({{"A1", v({"1", "2/3"})}, {"C2", v({"0", "1/3"})}});
    const Allocation wasteful = alloc({{"A1", v({"1", "0"})}, {"C2", v({"0", "1/2"})}});
    const Allocation over = alloc({{"A1", v({"1", "1"})}, {"C2", v({"1", "0"})}});
    CHECK(is_feasible(e, exact, FeasibilityMode::Exact));
    CHECK(is_feasible(e, exact, FeasibilityMode::FreeDisposal));
    CHECK_FALSE(is_feasible(e, wasteful, FeasibilityMode::Exact));
    CHECK(is_feasible(e, wasteful, FeasibilityMode::FreeDisposal));
    CHECK_FALSE(is_feasible(e, over, FeasibilityMode::FreeDisposal));
    CHECK(aggregate(e, exact) == v({"1", "1"}));

    CHECK_THROWS_AS(require_shape(e, alloc({{"A1", v({"1", "0"})}})), Error);
    CHECK_THROWS_AS(require_shape(e, alloc({{"A1", v({"-1", "0"})}, {"C2", v({"0", "1"})}})), Error);
    CHECK_THROWS_AS(require_shape(e, alloc({{"A1", v({"1"})}, {"C2", v({"0", "1"})}})), Error);

    CHECK(utility(e.cohorts[0], v({"1", "2/3"})) == q("11/12"));
    CHECK(utility(e.cohorts[1], e.cohorts[1].endowment) == q("1/4"));
    CHECK_THROWS_AS(utility(e.cohorts[0], v({"1"})), Error);
}

TEST_CASE("utility is linear") {
    const Cohort c = fixtures::e0().cohorts[1];
    const Bundle x = v({"2", "1/3"});
    const Bundle y = v({"1/5", "7"});
    Bundle mix(2);
    for (std::size_t j = 0; j < 2; ++j) {
        mix[j] = q("3/2") * x[j] + q("2/7") * y[j];
    }
    CHECK(utility(c, mix) == q("3/2") * utility(c, x) + q("2/7") * utility(c, y));
}

TEST_CASE("allocation documents") {
    const Allocation x = io::parse_allocation(json::parse(R"({"bundles":{"A1":["1","0"],"C2":["0","1"]}})"));
    CHECK(x.at("A1") == v({"1", "0"}));
    CHECK(io::parse_allocation(io::to_json(x)) == x);
    CHECK_THROWS_AS(io::parse_allocation(json::parse(R"({"A1":["1"]})")), Error);
    CHECK_THROWS_AS(x.at("B"), Error);
}
