#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abnab/lifts.hpp"
#include "abnab/presentation.hpp"
#include "abnab/targets.hpp"
#include "abnab/weyl.hpp"

using namespace abnab;

TEST_CASE("weyl closure of GL block actions") {
    WeylAction w = WeylAction::gl_blocks({3});
    CHECK(w.closure(3).size() == 6); // S_3
    WeylAction w2 = WeylAction::gl_blocks({2, 2});
    CHECK(w2.closure(4).size() == 4); // S_2 x S_2
    WeylAction trivial;
    CHECK(trivial.closure(2).size() == 1);
}

TEST_CASE("weyl closure cap") {
    WeylAction w = WeylAction::gl_blocks({6}, 100); // |S_6| = 720 > 100
    CHECK_THROWS_AS(w.closure(6), OrbitCapExceeded);
}

TEST_CASE("orbit and stabilizer of degree lifts") {
    WeylAction w = WeylAction::gl_blocks({2});
    DegreeClass diag = orbit_of({1, 1}, w);
    CHECK(diag.orbit.size() == 1);
    CHECK(diag.stabilizer_size == 2);
    DegreeClass off = orbit_of({2, 0}, w);
    CHECK(off.orbit.size() == 2);
    CHECK(off.stabilizer_size == 1);
    CHECK(std::find(off.orbit.begin(), off.orbit.end(), DegreeLift{0, 2}) != off.orbit.end());
}

TEST_CASE("lift enumeration on the Grassmannian cone") {
    BuiltTarget t = build_grassmannian(2, 4);
    std::vector<std::pair<IntVec, long>> eqs{{IntVec{1, 1}, 2}};
    auto lifts = enumerate_lifts(t.cone, eqs, 2);
    REQUIRE(lifts.size() == 3);
    CHECK(lifts[0] == DegreeLift{0, 2});
    CHECK(lifts[1] == DegreeLift{1, 1});
    CHECK(lifts[2] == DegreeLift{2, 0});
}

TEST_CASE("lift enumeration detects unbounded fibers") {
    EffectiveCone cone; // no inequalities at all
    std::vector<std::pair<IntVec, long>> eqs{{IntVec{1, 1}, 1}};
    CHECK_THROWS_AS(enumerate_lifts(cone, eqs, 2), UnboundedFiber);
}

TEST_CASE("lift enumeration of an infeasible fiber is empty") {
    BuiltTarget t = build_grassmannian(2, 4);
    std::vector<std::pair<IntVec, long>> eqs{{IntVec{1, 1}, -1}};
    CHECK(enumerate_lifts(t.cone, eqs, 2).empty());
}

TEST_CASE("validation passes on built-in targets") {
    for (const char* name : {"p2", "gr:2,4", "gb:1,4,1,2", "pp:1,2"}) {
        BuiltTarget t = build_target(name);
        ValidationReport rep = validate(t.presentation, &t.cone, &t.anticanonical);
        CHECK(rep.all_passed());
    }
}

TEST_CASE("validation rejects roots not closed under negation") {
    GitPresentation p;
    p.rank_t = 2;
    p.weights_v = {{1, 0}, {0, 1}};
    p.roots = {{1, -1}}; // missing the negative
    p.finalize();
    CHECK_THROWS_AS(validate(p), MalformedPresentation);
}

TEST_CASE("finalize computes det rho and det sigma") {
    BuiltTarget t = build_grassmann_bundle(1, 4, 1, 2);
    // weights: 4 copies of x, 2 copies of y - x
    CHECK(t.presentation.det_rho == IntVec{2, 2});
    GitPresentation tw = anticanonical_twist(t);
    CHECK(tw.det_sigma == IntVec{2, 2});
    CHECK(tw.det_rho == tw.det_sigma); // anticanonical twist, D = 0
}

TEST_CASE("dimension mismatches are rejected") {
    GitPresentation p;
    p.rank_t = 2;
    p.weights_v = {{1, 0, 0}};
    CHECK_THROWS_AS(p.finalize(), MalformedPresentation);
}

TEST_CASE("class values pair lifts against the invariant basis") {
    BuiltTarget t = build_grassmann_bundle(1, 4, 1, 2);
    CHECK(class_values(t.presentation, {3, 5}) == IntVec{3, 5});
    BuiltTarget g = build_grassmannian(2, 5);
    CHECK(class_values(g.presentation, {1, 2}) == IntVec{3});
}

TEST_CASE("weyl compatibility detects scrambled weights") {
    GitPresentation p;
    p.rank_t = 2;
    p.weights_v = {{1, 0}, {1, 0}}; // not S_2-symmetric
    p.roots = {{1, -1}, {-1, 1}};
    p.weyl = WeylAction::gl_blocks({2});
    p.finalize();
    ValidationReport rep = validate(p);
    bool weyl_ok = true;
    for (const auto& c : rep.checks)
        if (c.name == "weyl_compatible" && c.status != ValidationCheck::Status::Pass) weyl_ok = false;
    CHECK_FALSE(weyl_ok);
}
