#include <doctest.h>

#include "fixtures.hpp"
#include "mixedcore/sampling.hpp"
#include "oracles.hpp"

using namespace mixedcore;
using namespace mixedcore::lp;
using fixtures::q;
using fixtures::v;

TEST_CASE("two-variable optimum with an upper bound") {
    // max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6, 0 <= x <= 3, y >= 0
    auto p = LinearProgram::nonnegative(2);
    p.objective = v({"3", "2"});
    p.upper[0] = Rational(3);
    p.add_row(v({"1", "1"}), Relation::LessEqual, Rational(4));
    p.add_row(v({"1", "3"}), Relation::LessEqual, Rational(6));
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Optimal);
    CHECK(out.value == Rational(11));
    CHECK(out.primal == v({"3", "1"}));
    CHECK(dual_bound(p, out.dual) == Rational(11));
    CHECK(verify(p, out));
    CHECK(oracle::vertex_enumeration(p).best == Rational(11));
}

TEST_CASE("equality rows and free columns") {
    // max x + 2y  s.t.  x + y = 5, x - y = 1, x and y free
    LinearProgram p;
    p.objective = v({"1", "2"});
    p.lower = {std::nullopt, std::nullopt};
    p.upper = {std::nullopt, std::nullopt};
    p.add_row(v({"1", "1"}), Relation::Equal, Rational(5));
    p.add_row(v({"1", "-1"}), Relation::Equal, Rational(1));
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Optimal);
    CHECK(out.primal == v({"3", "2"}));
    CHECK(out.value == Rational(7));
    CHECK(verify(p, out));
}

TEST_CASE("negative lower bounds and upper-only columns") {
    // max -x + y  s.t.  x + y >= -2,  -3 <= x <= 2,  y <= 1
    LinearProgram p;
    p.objective = v({"-1", "1"});
    p.lower = {Rational(-3), std::nullopt};
    p.upper = {Rational(2), Rational(1)};
    p.add_row(v({"1", "1"}), Relation::GreaterEqual, Rational(-2));
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Optimal);
    CHECK(out.value == Rational(4));
    CHECK(out.primal == v({"-3", "1"}));
    CHECK(verify(p, out));
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
    auto p = LinearProgram::nonnegative(4);
    p.objective = v({"3/4", "-20", "1/2", "-6"});
    p.add_row(v({"1/4", "-8", "-1", "9"}), Relation::LessEqual, Rational(0));
    p.add_row(v({"1/2", "-12", "-1/2", "3"}), Relation::LessEqual, Rational(0));
    p.add_row(v({"0", "0", "1", "0"}), Relation::LessEqual, Rational(1));
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Optimal);
    CHECK(out.value == q("5/4"));
    CHECK(verify(p, out));
}

TEST_CASE("infeasible system yields a Farkas certificate") {
    auto p = LinearProgram::nonnegative(2);
    p.add_row(v({"1", "1"}), Relation::LessEqual, Rational(1));
    p.add_row(v({"1", "1"}), Relation::GreaterEqual, Rational(2));
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Infeasible);
    CHECK(certifies_infeasible(p, out.certificate));
    CHECK_FALSE(certifies_infeasible(p, v({"0", "0"})));
    CHECK_FALSE(certifies_infeasible(p, v({"-1", "1"})));
    CHECK(std::holds_alternative<InfeasibleSystem>(feasibility(p)));
    CHECK_FALSE(oracle::vertex_enumeration(p).feasible);
}

TEST_CASE("bounds alone can be infeasible") {
    auto p = LinearProgram::nonnegative(1);
    p.add_row(v({"1"}), Relation::GreaterEqual, Rational(3));
    p.upper[0] = Rational(2);
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Infeasible);
    CHECK(certifies_infeasible(p, out.certificate));
}

TEST_CASE("unbounded program yields an improving ray") {
    auto p = LinearProgram::nonnegative(2);
    p.objective = v({"1", "0"});
    p.add_row(v({"1", "-1"}), Relation::LessEqual, Rational(1));
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Unbounded);
    CHECK(satisfies(p, out.primal));
    CHECK(certifies_unbounded(p, out.certificate));
    CHECK_FALSE(certifies_unbounded(p, v({"1", "0"})));
    CHECK(verify(p, out));
}

TEST_CASE("dual_bound rejects multipliers with the wrong sign") {
    auto p = LinearProgram::nonnegative(1);
    p.objective = v({"1"});
    p.add_row(v({"1"}), Relation::LessEqual, Rational(2));
    CHECK(dual_bound(p, v({"1"})) == Rational(2));
    CHECK(dual_bound(p, v({"3"})) == Rational(6));
    CHECK(dual_bound(p, v({"-1"})) == std::nullopt);
    CHECK(dual_bound(p, v({"1/2"})) == std::nullopt);
}

TEST_CASE("malformed programs are rejected") {
    auto p = LinearProgram::nonnegative(2);
    p.rows.push_back({v({"1"}), Relation::LessEqual, Rational(1)});
    CHECK_THROWS_AS(solve_lp(p), Error);
    auto r = LinearProgram::nonnegative(1);
    r.upper[0] = Rational(-1);
    CHECK_THROWS_AS(r.check_well_formed(), Error);
}

TEST_CASE("empty program is optimal at its bounds") {
    auto p = LinearProgram::nonnegative(2);
    p.objective = v({"-1", "0"});
    const auto out = solve_lp(p);
    REQUIRE(out.status == Status::Optimal);
    CHECK(out.value == Rational(0));
}

TEST_CASE("random pointed programs agree with vertex enumeration") {
    sampling::Rng rng(2024);
    int optimal = 0;
    for (int t = 0; t < 300; ++t) {
        const auto p = sampling::random_lp(rng, 5, 6, true);
        const auto out = solve_lp(p);
        CAPTURE(p.debug_string());
        CHECK(verify(p, out));
        const auto reference = oracle::vertex_enumeration(p);
        if (out.status == Status::Optimal) {
            ++optimal;
            REQUIRE(reference.feasible);
            CHECK(out.value == reference.best);
        } else if (out.status == Status::Infeasible) {
            CHECK_FALSE(reference.feasible);
        } else {
            CHECK(reference.feasible);
        }
    }
    CHECK(optimal > 30);
}

TEST_CASE("random programs with free columns self-verify and are deterministic") {
    sampling::Rng rng(99);
    for (int t = 0; t < 300; ++t) {
        const auto p = sampling::random_lp(rng, 8, 8, false);
        const auto out = solve_lp(p);
        CHECK(verify(p, out));
        CHECK(solve_lp(p) == out);
    }
}
