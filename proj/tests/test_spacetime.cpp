// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "photonloc/error.hpp"
#include "photonloc/spacetime.hpp"

using namespace photonloc;
using photonloc::testing::Gen;

namespace {

void check_close(const FourVector& a, const FourVector& b, double tol)
{
    for (int mu = 0; mu < 4; ++mu)
        CHECK(a[mu] == doctest::Approx(b[mu]).epsilon(tol));
}

} // namespace

TEST_CASE("contract examples")
{
    CHECK(contract(FourVector{1, 0, 0, 0}, FourVector{1, 0, 0, 0}) == -1.0);
    const double w = 2.75;
    CHECK(contract(FourVector{w, 0, 0, w}, FourVector{w, 0, 0, w}) == 0.0);
    CHECK(contract(FourVector{2, 1, 0, 0}, FourVector{3, 4, 0, 0}) == -2.0);
}

TEST_CASE("boost examples")
{
    const BoostParameters b(0.6);
    CHECK(b.gamma() == doctest::Approx(1.25).epsilon(1e-15));
    check_close(boost_vector({2, 0, 0, 0}, b), {2.5, 0, 0, 1.5}, 1e-15);
    const FourVector l = boost_vector({1, 0, 0, 1}, b);
    check_close(l, {2, 0, 0, 2}, 1e-15);
    CHECK(classify_interval(l) == IntervalKind::lightlike);

    const FourVector x{0.3, -1.2, 4.0, 2.2};
    CHECK(boost_vector(x, BoostParameters(0.0)) == x);
}

TEST_CASE("superluminal boosts are rejected")
{
    CHECK_THROWS_AS(BoostParameters(1.0), DomainError);
    CHECK_THROWS_AS(BoostParameters(-1.2), DomainError);
    CHECK_NOTHROW(BoostParameters(0.999));
}

TEST_CASE("boost_hyperplane examples")
{
    const BoostParameters b(0.6);
    const Hyperplane s = boost_hyperplane(Hyperplane::at_time(0.0), b);
    check_close(s.normal(), {1.25, 0, 0, 0.75}, 1e-15);
    CHECK(s.kind() == PlaneKind::spacelike);
    const Hyperplane t = boost_hyperplane(Hyperplane::at_x3(0.0), b);
    check_close(t.normal(), {0.75, 0, 0, 1.25}, 1e-15);
    CHECK(t.kind() == PlaneKind::timelike);

    const Hyperplane p = Hyperplane::at_x3(1.5);
    CHECK(boost_hyperplane(p, BoostParameters(0.0)) == p);
}

TEST_CASE("boosted plane holds the boosted events")
{
    Gen g(11);
    for (int i = 0; i < 50; ++i) {
        const Hyperplane s(g.plane_normal(i % 2 ? PlaneKind::spacelike : PlaneKind::timelike), g.uniform(-3, 3));
        const BoostParameters b(g.beta());
        const Hyperplane sb = boost_hyperplane(s, b);
        // a random event on s: anchor plus a tangent vector
        FourVector v = g.four_vector();
        const double nn = contract(s.normal(), s.normal());
        v = v - (contract(s.normal(), v) / nn) * s.normal();
        const FourVector x = s.anchor() + v;
        REQUIRE(s.contains(x, 1e-12));
        CHECK(sb.contains(boost_vector(x, b), 1e-11));
    }
}

TEST_CASE("world_line_angle examples")
{
    CHECK(world_line_angle(BoostParameters(0.0)) == 0.0);
    CHECK(world_line_angle(BoostParameters(0.6)) == doctest::Approx(0.5404195).epsilon(1e-7));
    CHECK(world_line_angle(BoostParameters(1.0 - 1e-12)) == doctest::Approx(kPi / 4).epsilon(1e-11));
}

TEST_CASE("classify examples")
{
    CHECK(classify_interval({1, 0, 0, 0}) == IntervalKind::timelike);
    CHECK(classify_interval({1, 0, 0, 1}) == IntervalKind::lightlike);
    CHECK(classify_interval({0, 0, 0, 1}) == IntervalKind::spacelike);
}

TEST_CASE("hyperplane normals must be unit and non-null")
{
    CHECK_THROWS_AS(Hyperplane({1, 0, 0, 1}, 0.0), DomainError);
    CHECK_THROWS_AS(Hyperplane({2, 0, 0, 0}, 0.0), DomainError);
    CHECK(Hyperplane::at_time(2.0).contains({2.0, 5.0, -1.0, 3.0}));
    CHECK(Hyperplane::at_x3(-1.0).contains({7.0, 5.0, -1.0, -1.0}));
}

TEST_CASE("property: contraction is boost invariant")
{
    Gen g(1);
    for (int i = 0; i < 500; ++i) {
        const FourVector a = g.four_vector();
        const FourVector b = g.four_vector();
        const BoostParameters bp(g.beta());
        const double before = contract(a, b);
        const double after = contract(boost_vector(a, bp), boost_vector(b, bp));
        const double scale = std::sqrt(euclidean_norm2(a) * euclidean_norm2(b)) * bp.gamma() * bp.gamma();
        CHECK(std::abs(after - before) <= 1e-12 * scale);
    }
}

TEST_CASE("property: successive boosts add velocities")
{
    Gen g(2);
    for (int i = 0; i < 500; ++i) {
        const BoostParameters b1(g.beta());
        const BoostParameters b2(g.beta());
        const FourVector x = g.four_vector();
        const BoostParameters b12((b1.beta() + b2.beta()) / (1 + b1.beta() * b2.beta()));
        CHECK(compose(b1, b2).beta() == doctest::Approx(b12.beta()).epsilon(1e-14));
        const FourVector two = boost_vector(boost_vector(x, b1), b2);
        const FourVector one = boost_vector(x, b12);
        const double scale = std::sqrt(euclidean_norm2(x)) * b12.gamma() * b1.gamma() * b2.gamma();
        for (int mu = 0; mu < 4; ++mu)
            CHECK(std::abs(two[mu] - one[mu]) <= 1e-12 * scale);
    }
}

TEST_CASE("property: boosts keep plane kinds distinct")
{
    Gen g(3);
    for (int i = 0; i < 500; ++i) {
        const BoostParameters b(g.beta());
        for (PlaneKind kind : {PlaneKind::spacelike, PlaneKind::timelike}) {
            const Hyperplane s(g.plane_normal(kind), g.uniform(-5, 5));
            const Hyperplane sb = boost_hyperplane(s, b);
            CHECK(sb.kind() == kind);
            const double nn = contract(sb.normal(), sb.normal());
            CHECK(std::abs(std::abs(nn) - 1.0) <= 1e-12 * euclidean_norm2(sb.normal()));
            CHECK(classify_interval(sb.normal()) ==
                  (kind == PlaneKind::spacelike ? IntervalKind::timelike : IntervalKind::spacelike));
            CHECK(sb.offset() == doctest::Approx(s.offset()).epsilon(1e-13));
        }
    }
}
