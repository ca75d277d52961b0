// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "photonloc/error.hpp"
#include "photonloc/kspace.hpp"

using namespace photonloc;
using photonloc::testing::Gen;

namespace {

Vec3 random_unit(Gen& g)
{
    Vec3 v{g.normal(), g.normal(), g.normal()};
    return scaled(v, 1.0 / norm(v));
}

} // namespace

TEST_CASE("k_sigma examples")
{
    CHECK(k_sigma({3, 0, 0, 3}, {1, 0, 0, 0}) == 3.0);
    CHECK(k_sigma({12, 0, 0, -12}, {0, 0, 0, 1}) == -12.0);

    // Boosted normal: read k^0 in the rest frame of n instead.
    const BoostParameters b(0.6);
    const FourVector n = boost_vector({1, 0, 0, 0}, b);
    const FourVector k{1, 0, 0, 1};
    const double rest_k0 = boost_vector(k, b.inverse())[0];
    CHECK(rest_k0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k_sigma(k, n) == doctest::Approx(rest_k0).epsilon(1e-14));
}

TEST_CASE("solve_normal_component examples")
{
    CHECK(solve_normal_component({1, 2, 2}, PlaneKind::spacelike, FluxSign::plus) == cplx(3.0, 0.0));
    CHECK(solve_normal_component({1, 2, 2}, PlaneKind::spacelike, FluxSign::minus) == cplx(-3.0, 0.0));
    CHECK(solve_normal_component({3, 4, 13}, PlaneKind::timelike, FluxSign::plus) == cplx(12.0, 0.0));
    CHECK(solve_normal_component({3, 4, 0}, PlaneKind::timelike, FluxSign::plus) == cplx(0.0, 5.0));
    CHECK(solve_normal_component({3, 4, 0}, PlaneKind::timelike, FluxSign::minus) == cplx(0.0, -5.0));
    const cplx k3 = solve_normal_component({3, 4, 1}, PlaneKind::timelike, FluxSign::plus);
    CHECK(k3.real() == 0.0);
    CHECK(k3.imag() == doctest::Approx(std::sqrt(24.0)).epsilon(1e-15));
    CHECK(solve_normal_component({3, 4, 5}, PlaneKind::timelike, FluxSign::plus) == cplx(0.0, 0.0));
}

TEST_CASE("mode_weight examples")
{
    // N dx = 2 pi gives dk = 1 and Delta kappa = 1.
    const double dx = 2 * kPi / 4;
    const HyperplaneGrid grid(Hyperplane::at_time(0.0), {4, 4, 4}, {dx, dx, dx}, {1, 2, 2});
    CHECK(grid.k_cell_measure() == doctest::Approx(1.0).epsilon(1e-15));
    const KPoint k = kpoint(grid, 0, FluxSign::plus);
    CHECK(k.magnitude() == doctest::Approx(3.0).epsilon(1e-15));
    const ModeWeight w = mode_weight(k, grid, cutoff_for(3.0));
    CHECK(w.included());
    CHECK(w.value == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

    const HyperplaneGrid centered(Hyperplane::at_time(0.0), {4, 4, 4}, {dx, dx, dx});
    const KPoint zero = kpoint(centered, 0, FluxSign::plus);
    CHECK(mode_weight(zero, centered, cutoff_for(3.0)).status == ModeStatus::below_cutoff);

    // Timelike lattice point (k1, k2, k0) = (3, 4, 0): k3 = 5i.
    const HyperplaneGrid tl(Hyperplane::at_x3(0.0), {4, 4, 4}, {dx, dx, dx}, {3, 4, 0});
    const KPoint ev = kpoint(tl, 0, FluxSign::plus);
    CHECK_FALSE(ev.propagating());
    const ModeWeight we = mode_weight(ev, tl, cutoff_for(1.0));
    CHECK(ev.magnitude() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(we.status == ModeStatus::evanescent);
    CHECK(we.value == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("default cutoff scales with the reference frequency")
{
    CHECK(cutoff_for(3.0) == doctest::Approx(3e-6));
    const HyperplaneGrid grid(Hyperplane::at_time(0.0), {8, 8, 8}, {0.5, 0.5, 0.5});
    CHECK(default_cutoff(grid) > 0.0);
    CHECK(default_cutoff(grid) < 1e-5);
}

TEST_CASE("polarization basis example")
{
    const PolarizationBasis b = polarization_basis({0, 0, 1}, {1, 0, 0});
    const FourVector e1{0, 0, -1, 0};
    const FourVector e2{0, 1, 0, 0};
    for (int mu = 0; mu < 4; ++mu) {
        CHECK(b.e1[mu] == doctest::Approx(e1[mu]));
        CHECK(b.e2[mu] == doctest::Approx(e2[mu]));
    }
    CHECK_THROWS_AS(polarization_basis({0, 0, 2}, {0, 0, 1}), DegenerateAxis);
    CHECK_THROWS_AS(polarization_basis({0, 0, 2}, {0, 0, -1}), DegenerateAxis);
    const PolarizationBasis fb = polarization_basis_or_fallback({0, 0, 2}, {0, 0, 1});
    CHECK(std::abs(fb.e1[3]) < 1e-15);
}

TEST_CASE("default reference axis is the propagation direction turned about x1")
{
    const Vec3 a = default_reference_axis({0, 0, 1});
    CHECK(a[0] == 0.0);
    CHECK(a[1] == -1.0);
    CHECK(a[2] == 0.0);
}

TEST_CASE("property: polarization bases are transverse, orthonormal, complete and right handed")
{
    Gen g(4);
    for (int i = 0; i < 300; ++i) {
        const Vec3 k = scaled(random_unit(g), g.uniform(0.1, 10.0));
        const Vec3 khat = scaled(k, 1.0 / norm(k));
        const Vec3 axis = random_unit(g);
        if (norm(cross(axis, khat)) < 1e-3)
            continue;
        const PolarizationBasis b = polarization_basis(k, axis);
        const Vec3 e1{b.e1[1], b.e1[2], b.e1[3]};
        const Vec3 e2{b.e2[1], b.e2[2], b.e2[3]};
        CHECK(b.e1[0] == 0.0);
        CHECK(b.e2[0] == 0.0);
        CHECK(std::abs(dot(e1, k)) <= 1e-12 * norm(k));
        CHECK(std::abs(dot(e2, k)) <= 1e-12 * norm(k));
        CHECK(std::abs(dot(e1, e1) - 1) <= 1e-12);
        CHECK(std::abs(dot(e2, e2) - 1) <= 1e-12);
        CHECK(std::abs(dot(e1, e2)) <= 1e-12);
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) {
                const double sum = e1[a] * e1[c] + e2[a] * e2[c];
                const double expected = (a == c ? 1.0 : 0.0) - khat[a] * khat[c];
                CHECK(std::abs(sum - expected) <= 1e-12);
            }
        const Vec3 h = cross(e1, e2);
        for (int a = 0; a < 3; ++a)
            CHECK(std::abs(h[a] - khat[a]) <= 1e-12);

        const CVec3 hp = b.helicity(1);
        const CVec3 hm = b.helicity(-1);
        cplx pm = 0, pp = 0;
        for (int a = 0; a < 3; ++a) {
            pm += std::conj(hp[a]) * hm[a];
            pp += std::conj(hp[a]) * hp[a];
        }
        CHECK(std::abs(pm) <= 1e-12);
        CHECK(std::abs(pp - 1.0) <= 1e-12);
    }
}

TEST_CASE("dual grid example")
{
    const HyperplaneGrid grid(Hyperplane::at_time(0.0), {4, 4, 4}, {1, 1, 1});
    CHECK(grid.size() == 64);
    const std::vector<KPoint> dual = dual_grid(grid);
    CHECK(dual.size() == 128);
    CHECK(dual.front().eps == FluxSign::plus);
    CHECK(dual.back().eps == FluxSign::minus);
    for (int a = 0; a < 3; ++a)
        CHECK(grid.k_spacings()[a] == doctest::Approx(kPi / 2).epsilon(1e-15));
    double lo = 1e9, hi = -1e9;
    for (const KPoint& k : dual)
        for (double c : k.on_plane) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    CHECK(lo == doctest::Approx(-kPi).epsilon(1e-15));
    CHECK(hi < kPi);
    const double expected = std::pow(2 * kPi, 3) / 64;
    CHECK(grid.cell_measure() * grid.k_cell_measure() == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("grid construction checks")
{
    CHECK_THROWS_AS(HyperplaneGrid(Hyperplane::at_time(0.0), {3, 4, 4}, {1, 1, 1}), DomainError);
    CHECK_THROWS_AS(HyperplaneGrid(Hyperplane::at_time(0.0), {4, 4, 4}, {1, 0, 1}), DomainError);
    const Hyperplane tilted = boost_hyperplane(Hyperplane::at_time(0.0), BoostParameters(0.3));
    CHECK_THROWS(HyperplaneGrid(tilted, {4, 4, 4}, {1, 1, 1}));
}

TEST_CASE("property: on-plane frequencies are exactly DFT orthogonal")
{
    for (PlaneKind kind : {PlaneKind::spacelike, PlaneKind::timelike}) {
        const Hyperplane plane = kind == PlaneKind::spacelike ? Hyperplane::at_time(0.5) : Hyperplane::at_x3(-0.5);
        const HyperplaneGrid grid(plane, {4, 6, 4}, {0.7, 1.1, 0.9}, {0.3, -0.2, 2.0});
        const auto& s = grid.axis_signs();
        for (std::size_t f = 0; f < grid.size(); ++f)
            for (std::size_t h = 0; h < grid.size(); ++h) {
                const Vec3 k = grid.k_on_plane(f);
                const Vec3 kp = grid.k_on_plane(h);
                cplx sum = 0;
                for (std::size_t j = 0; j < grid.size(); ++j) {
                    const Vec3 x = grid.x_on_plane(j);
                    double phase = 0;
                    for (int a = 0; a < 3; ++a)
                        phase += s[static_cast<std::size_t>(a)] * (k[a] - kp[a]) * x[a];
                    sum += std::polar(1.0, phase);
                }
                const double expected = f == h ? static_cast<double>(grid.size()) : 0.0;
                CHECK(std::abs(sum - expected) <= 1e-10);
            }
    }
}

TEST_CASE("property: propagating lattice modes are lightlike")
{
    const HyperplaneGrid sl(Hyperplane::at_time(1.0), {8, 8, 8}, {0.8, 0.8, 0.8}, {0, 0, 3});
    const HyperplaneGrid tl(Hyperplane::at_x3(1.0), {8, 8, 8}, {0.8, 0.8, 0.8}, {0, 0, 5});
    int propagating = 0;
    for (const HyperplaneGrid* grid : {&sl, &tl})
        for (const KPoint& k : dual_grid(*grid)) {
            if (!k.propagating() || k.magnitude() == 0.0)
                continue;
            ++propagating;
            const FourVector kv = k.real_four_vector();
            CHECK(std::abs(contract(kv, kv)) <= 1e-10 * euclidean_norm2(kv));
            CHECK(k_sigma(kv, grid->plane().normal()) == doctest::Approx(k.normal.real()).epsilon(1e-14));
            CHECK((k.normal.real() > 0) == (k.eps == FluxSign::plus));
            CHECK(mode_weight(k, *grid, 0.0).value > 0.0);
        }
    CHECK(propagating > 1000);
}
