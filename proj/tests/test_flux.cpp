// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "photonloc/error.hpp"
#include "photonloc/flux.hpp"
#include "photonloc/localization.hpp"
#include "photonloc/validation.hpp"

using namespace photonloc;
using photonloc::testing::Gen;
using photonloc::testing::rel_diff;

namespace {

const Channel kP1{Polarization::first, FluxSign::plus};

GridPtr flux_grid() { return make_grid(Hyperplane::at_time(0.0), {24, 24, 24}, {1, 1, 1}, {0, 0, 3}); }

std::vector<FourVector> random_events(Gen& g, int n)
{
    std::vector<FourVector> out;
    for (int i = 0; i < n; ++i)
        out.push_back({g.uniform(-3, 3), g.uniform(-8, 8), g.uniform(-8, 8), g.uniform(-8, 8)});
    return out;
}

double centroid_x3(const HyperplaneGrid& grid, const std::vector<cplx>& field)
{
    double w = 0, m = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double p = std::norm(field[j]);
        w += p;
        m += p * grid.x_on_plane(j)[2];
    }
    return m / w;
}

} // namespace

TEST_CASE("single plane wave: constant density, flux along k")
{
    Gen gen(30);
    const GridPtr g = flux_grid();
    for (const Index3& p : {Index3{0, 0, 0}, Index3{2, 21, 1}}) {
        const std::size_t f = g->flat(p);
        const PhotonAmplitude mode = make_single_mode(g, f, kP1, cplx(0.6, 0.2));
        const KPoint k = kpoint(*g, f, FluxSign::plus);
        const Vec3 kv = k.spatial();
        const double omega = k.magnitude();
        const auto events = random_events(gen, 12);
        const auto j = photon_flux_density(mode, mode, events);
        const double j0 = j[0].plus[0].real();
        CHECK(j0 > 0.0);
        for (const FluxSample& s : j) {
            CHECK(s.plus[0].real() == doctest::Approx(j0).epsilon(1e-12));
            CHECK(std::abs(s.plus[0].imag()) <= 1e-12 * j0);
            for (int i = 0; i < 3; ++i)
                CHECK(std::abs(s.plus[static_cast<std::size_t>(i + 1)].real() / j0 - kv[i] / omega) <= 1e-12);
            for (cplx c : s.minus)
                CHECK(c == cplx(0.0));
        }
    }
}

TEST_CASE("property: density is positive for packets and sesquilinear")
{
    // Interference between modes of different omega makes J^0 slightly
    // negative far out in the tails (about 2e-12 of the peak on this grid).
    Gen gen(31);
    const GridPtr g = flux_grid();
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        PacketSpec spec = gen.packet_spec();
        spec.position = {0, 0, 0};
        const double a = gen.uniform(0, 2 * kPi);
        spec.polarization = {std::cos(a), std::sin(a)};
        const PhotonAmplitude psi = make_gaussian_packet(spec, g);
        const auto j = photon_flux_on_plane(psi, psi);
        double peak = 0;
        for (const auto& s : j[0])
            peak = std::max(peak, s[0].real());
        for (const auto& s : j[0]) {
            CHECK(s[0].real() >= -1e-10 * peak);
            worst = std::max(worst, -s[0].real() / peak);
        }
        const cplx total = flux_integral(psi, psi, g->plane());
        CHECK(total.real() >= 0.0);
    }
    CHECK(worst <= 1e-11);

    const PhotonAmplitude phi = make_gaussian_packet(gen.packet_spec(), g);
    const PhotonAmplitude psi = make_gaussian_packet(gen.packet_spec(), g);
    const auto events = random_events(gen, 10);
    const auto a = photon_flux_density(phi, psi, events);
    const auto b = photon_flux_density(psi, phi, events);
    for (std::size_t e = 0; e < events.size(); ++e)
        for (std::size_t mu = 0; mu < 4; ++mu)
            CHECK(std::abs(a[e].plus[mu] - std::conj(b[e].plus[mu])) <= 1e-12 * (std::abs(a[e].plus[mu]) + 1e-6));
}

TEST_CASE("flux on the grid matches the direct sum")
{
    Gen gen(32);
    const GridPtr g = flux_grid();
    PhotonAmplitude psi = make_gaussian_packet(gen.packet_spec(), g);
    PacketSpec s = gen.packet_spec();
    s.eps = FluxSign::minus;
    psi += make_gaussian_packet(s, g);
    const auto fft = photon_flux_on_plane(psi, psi);
    std::vector<FourVector> events;
    std::vector<std::size_t> idx;
    for (int i = 0; i < 8; ++i) {
        idx.push_back(static_cast<std::size_t>(gen.integer(0, static_cast<int>(g->size()) - 1)));
        events.push_back(g->event(idx.back()));
    }
    const auto direct = photon_flux_density(psi, psi, events);
    double peak = 0;
    for (const auto& v : fft[0])
        peak = std::max(peak, std::abs(v[0]));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t mu = 0; mu < 4; ++mu) {
            CHECK(std::abs(fft[0][idx[i]][mu] - direct[i].plus[mu]) <= 1e-10 * peak);
            CHECK(std::abs(fft[1][idx[i]][mu] - direct[i].minus[mu]) <= 1e-10 * peak);
        }
}

TEST_CASE("flux integral reproduces the inner product")
{
    Gen gen(33);
    const GridPtr g = flux_grid();
    for (int i = 0; i < 5; ++i) {
        PacketSpec a = gen.packet_spec();
        PacketSpec b = gen.packet_spec();
        b.position = a.position;
        const PhotonAmplitude phi = make_gaussian_packet(a, g);
        const PhotonAmplitude psi = make_gaussian_packet(b, g);
        CHECK(rel_diff(flux_integral(phi, psi, g->plane()), inner_product(phi, psi)) <= 1e-6);
    }
}

TEST_CASE("negative-flux state has a positive total")
{
    Gen gen(34);
    PacketSpec s = gen.packet_spec();
    s.eps = FluxSign::minus;
    const GridPtr g = flux_grid();
    const PhotonAmplitude psi = make_gaussian_packet(s, g);
    const cplx total = flux_integral(psi, psi, g->plane());
    CHECK(total.real() > 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-6);
    // The raw normal flux of that channel is negative.
    double raw = 0;
    const auto j = photon_flux_on_plane(psi, psi);
    for (const auto& v : j[1])
        raw += v[0].real();
    CHECK(raw < 0.0);
}

TEST_CASE("timelike flux total matches the counting total")
{
    const GridPtr g = reference_timelike_grid(32);
    const PhotonAmplitude psi = make_gaussian_packet(reference_timelike_packet(), g);
    const cplx total = flux_integral(psi, psi, g->plane());
    CHECK(std::abs(total - 1.0) <= 1e-3);
    double counted = 0;
    for (double v : timelike_counting(psi))
        counted += v;
    counted *= g->cell_measure();
    CHECK(std::abs(total.real() - counted) <= 1e-3);
    CHECK_THROWS_AS(flux_integral(psi, psi, Hyperplane::at_x3(0.5)), GridMismatch);
    CHECK_THROWS_AS(flux_integral(psi, psi, Hyperplane::at_time(0.0)), GridMismatch);
}

TEST_CASE("massless scalar plane wave has constant modulus")
{
    Gen gen(35);
    const GridPtr g = flux_grid();
    KGAmplitude psi(g, 0.0);
    psi.values(FluxSign::plus)[g->flat(1, 2, 3)] = cplx(0.5, 1.0);
    const auto v = kg_field(psi, FluxSign::plus, random_events(gen, 20));
    for (cplx x : v)
        CHECK(std::abs(x) == doctest::Approx(std::abs(v[0])).epsilon(1e-12));
}

TEST_CASE("massive packet centroid moves at the group velocity")
{
    const double m = 1.0;
    const GridPtr g = make_grid(Hyperplane::at_time(0.0), {64, 64, 64}, {1, 1, 1}, {0, 0, 2});
    const KGAmplitude psi = make_kg_packet(g, m, {0, 0, 2}, {0.15, 0.15, 0.15}, {0, 0, 0}, FluxSign::plus);
    const double t = 6.0;
    const double z0 = centroid_x3(*g, kg_field_on_plane(psi, FluxSign::plus, 0.0));
    const double z1 = centroid_x3(*g, kg_field_on_plane(psi, FluxSign::plus, t));
    const double v = 2.0 / std::sqrt(4.0 + m * m);
    CHECK(std::abs((z1 - z0) / t - v) <= 0.01 * v);
}

TEST_CASE("scalar field is linear")
{
    Gen gen(36);
    const GridPtr g = make_grid(Hyperplane::at_time(0.0), {8, 8, 8}, {1, 1, 1});
    KGAmplitude a(g, 0.5), b(g, 0.5), c(g, 0.5);
    const cplx s = gen.complex(), r = gen.complex();
    for (FluxSign e : {FluxSign::plus, FluxSign::minus})
        for (std::size_t f = 0; f < g->size(); ++f) {
            a.values(e)[f] = gen.complex();
            b.values(e)[f] = gen.complex();
            c.values(e)[f] = s * a.values(e)[f] + r * b.values(e)[f];
        }
    const auto events = random_events(gen, 10);
    for (FluxSign e : {FluxSign::plus, FluxSign::minus}) {
        const auto fa = kg_field(a, e, events), fb = kg_field(b, e, events), fc = kg_field(c, e, events);
        for (std::size_t i = 0; i < events.size(); ++i)
            CHECK(std::abs(fc[i] - (s * fa[i] + r * fb[i])) <= 1e-12 * (std::abs(s * fa[i]) + std::abs(r * fb[i])));
    }
}

TEST_CASE("scalar inner product in position and momentum space")
{
    Gen gen(37);
    const GridPtr g = make_grid(Hyperplane::at_time(0.4), {16, 16, 16}, {0.6, 0.6, 0.6});
    for (double m : {0.0, 0.8}) {
        KGAmplitude phi(g, m), psi(g, m), minus(g, m);
        for (std::size_t f = 0; f < g->size(); ++f) {
            if (phi.omega(f) < phi.cutoff())
                continue;
            for (FluxSign e : {FluxSign::plus, FluxSign::minus}) {
                phi.values(e)[f] = gen.complex();
                psi.values(e)[f] = gen.complex();
            }
            minus.values(FluxSign::minus)[f] = gen.complex();
        }
        CHECK(rel_diff(kg_inner_product(phi, psi), kg_inner_product_kspace(phi, psi)) <= 1e-10);
        const cplx mm = kg_inner_product(minus, minus);
        CHECK(mm.real() > 0.0);

        KGAmplitude plus_only = phi;
        for (cplx& v : plus_only.values(FluxSign::minus))
            v = 0.0;
        CHECK(kg_inner_product_kspace(plus_only, minus) == cplx(0.0));
        CHECK(std::abs(kg_inner_product(plus_only, minus)) <=
              1e-13 * std::sqrt(kg_inner_product_kspace(plus_only, plus_only).real() * mm.real()));
    }
}

TEST_CASE("massless scalar norms equal single-channel photon norms")
{
    Gen gen(38);
    const GridPtr g = make_grid(Hyperplane::at_time(0.0), {12, 12, 12}, {0.7, 0.7, 0.7});
    for (Channel ch : {kP1, Channel{Polarization::second, FluxSign::minus}}) {
        PhotonAmplitude photon(g, kLocalizedAxis, default_cutoff(*g));
        KGAmplitude scalar(g, 0.0);
        for (std::size_t f = 0; f < g->size(); ++f) {
            if (scalar.omega(f) < scalar.cutoff())
                continue;
            const cplx v = gen.complex();
            photon.set_value(ch, f, v);
            scalar.values(ch.eps)[f] = v;
        }
        CHECK(rel_diff(inner_product(photon, photon), kg_inner_product_kspace(scalar, scalar)) <= 1e-12);
    }
}
