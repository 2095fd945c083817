#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../tests/fixtures.hpp"
#include "scref/generator.hpp"
#include "scref/metrics.hpp"

using namespace scref;

TEST_CASE("error measures on a hand-checked pair") {
    ProblemData p;
    p.cone = ConeShape::parse("d2");
    p.c = BlockVec::zero(p.cone);
    p.c.blocks[0] << 2.0, 0.0;
    BlockVec row = BlockVec::zero(p.cone);
    row.blocks[0] << 1.0, 1.0;
    p.a.domain = p.cone;
    p.a.rows.push_back(row);
    p.b.resize(1);
    p.b << 2.0;

    BlockVec x = BlockVec::zero(p.cone);
    x.blocks[0] << 2.0, 0.0;
    Eigen::VectorXd y(1);
    y << 3.0;
    BlockVec z = BlockVec::zero(p.cone);
    z.blocks[0] << 1.0, 1.0;

    DimacsErrors e = dimacs(p, x, y, z);
    CHECK(e.e1 == doctest::Approx(0.0));
    CHECK(e.e2 == doctest::Approx(0.0));
    // c - A*y - z = (2,0) - (3,3) - (1,1) = (-2,-4), norm sqrt(20), scale 1+2.
    CHECK(e.e3 == doctest::Approx(std::sqrt(20.0) / 3.0));
    CHECK(e.e4 == doctest::Approx(0.0));
    // <c,x> = 4, b'y = 6, scale 1+4+6.
    CHECK(e.e5 == doctest::Approx(-2.0 / 11.0));
    CHECK(e.e6 == doctest::Approx(2.0 / 11.0));
    CHECK(e.worst() == doctest::Approx(std::sqrt(20.0) / 3.0));

    CHECK(merit(p, x, y, z) == doctest::Approx(4.0 / 11.0));
}

TEST_CASE("signed gaps keep their sign") {
    ProblemData p = fixtures::ex_lp2();
    BlockVec x = BlockVec::zero(p.cone);
    x.blocks[0] << 0.0, 1.0;  // optimal, objective 0
    Eigen::VectorXd y(1);
    y << 1.0;  // superoptimal infeasible guess, b'y = 1
    DimacsErrors e = dimacs(p, x, y, p.dual_slack(y));
    CHECK(e.e5 < 0.0);
    CHECK(e.e5 == doctest::Approx(-0.5));
    CHECK(e.worst() >= 0.5);
}

TEST_CASE("negative eigenvalues feed the cone errors") {
    ProblemData p = fixtures::ex_weak3();
    BlockVec x = BlockVec::identity(p.cone);
    x.blocks[0](2, 2) = -0.5;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(p.m());
    BlockVec z = p.dual_slack(y);
    z.blocks[0](0, 0) = -3.0;
    DimacsErrors e = dimacs(p, x, y, z);
    CHECK(e.e2 == doctest::Approx(0.25));       // 0.5 / (1 + max|b|)
    CHECK(e.e4 == doctest::Approx(1.5));        // 3 / (1 + max|c|)
    CHECK(e.worst() >= 1.5);
}

TEST_CASE("an exactly generated optimal pair scores near zero") {
    GeneratedInstance g =
        generate_instance(ConeShape::parse("s4 d3"), 4, 11, GenMode::KnownOptimal);
    REQUIRE(g.has_pair);
    REQUIRE(g.has_optimal);
    DimacsErrors e = dimacs(g.p, g.x, g.y, g.z);
    CHECK(e.e1 <= 1e-12);
    CHECK(e.e2 <= 1e-12);
    CHECK(e.e3 <= 1e-12);
    CHECK(e.e4 <= 1e-12);
    CHECK(std::abs(e.e5) <= 1e-12);
    CHECK(std::abs(e.e6) <= 1e-12);
    CHECK(merit(g.p, g.x, g.y, g.z) <= 1e-11);
    CHECK(g.p.dual_obj(g.y) == doctest::Approx(g.optimal));
}

TEST_CASE("max entry scans every block") {
    BlockVec v = BlockVec::zero(ConeShape::parse("s2 d2"));
    v.blocks[0] << 1.0, -7.0, -7.0, 2.0;
    v.blocks[1] << 3.0, -4.0;
    CHECK(max_abs_entry(v) == doctest::Approx(7.0));
}
