// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "photonloc/error.hpp"
#include "photonloc/io.hpp"
#include "photonloc/plane_transform.hpp"
#include "photonloc/states.hpp"
#include "photonloc/validation.hpp"

using namespace photonloc;
using photonloc::testing::Gen;
using photonloc::testing::rel_diff;

namespace {

const Channel kP1{Polarization::first, FluxSign::plus};
const Channel kP2{Polarization::second, FluxSign::plus};
const Channel kM1{Polarization::first, FluxSign::minus};

GridPtr small_grid() { return make_grid(Hyperplane::at_time(0.0), {24, 24, 24}, {1, 1, 1}, {0, 0, 3}); }

double max_abs_diff(const PhotonAmplitude& a, const PhotonAmplitude& b)
{
    double d = 0;
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        for (std::size_t f = 0; f < a.grid().size(); ++f)
            d = std::max(d, std::abs(a.reduced(ch)[f] - b.reduced(ch)[f]));
    }
    return d;
}

double max_reduced(const PhotonAmplitude& a)
{
    double m = 0;
    for (int c = 0; c < kChannels; ++c)
        for (cplx v : a.reduced(Channel::from_index(c)))
            m = std::max(m, std::abs(v));
    return m;
}

std::vector<FourVector> random_events(Gen& g, int n, double box)
{
    std::vector<FourVector> out;
    for (int i = 0; i < n; ++i)
        out.push_back({g.uniform(-2, 2), g.uniform(-box, box), g.uniform(-box, box), g.uniform(-box, box)});
    return out;
}

} // namespace

TEST_CASE("packet occupies only its channel and is normalized")
{
    PacketSpec spec = reference_spacelike_packet();
    spec.polarization = PolarizationMix::linear(Polarization::first);
    const PhotonAmplitude psi = make_gaussian_packet(spec, reference_spacelike_grid(32));
    for (Channel ch : {kP2, kM1, Channel{Polarization::second, FluxSign::minus}})
        for (cplx v : psi.reduced(ch))
            CHECK(v == cplx(0.0, 0.0));
    CHECK(std::abs(inner_product(psi, psi) - 1.0) <= 1e-12);
}

TEST_CASE("packet mean wavevector sits at its center")
{
    const PacketSpec spec = reference_spacelike_packet();
    const PhotonAmplitude psi = make_gaussian_packet(spec, reference_spacelike_grid(32));
    const HyperplaneGrid& grid = psi.grid();
    double w = 0;
    Vec3 m{};
    for (int c = 0; c < kChannels; ++c)
        for (std::size_t f = 0; f < grid.size(); ++f) {
            const double p = std::norm(psi.value(Channel::from_index(c), f));
            const Vec3 k = grid.k_on_plane(f);
            w += p;
            for (int a = 0; a < 3; ++a)
                m[a] += p * k[a];
        }
    for (int a = 0; a < 3; ++a)
        CHECK(std::abs(m[a] / w - spec.center[a]) <= 1e-6);
}

TEST_CASE("packets outside the band or box are refused")
{
    PacketSpec spec = reference_spacelike_packet();
    spec.widths = {2.0, 2.0, 2.0};
    CHECK_THROWS_AS(make_gaussian_packet(spec, reference_spacelike_grid(32)), SupportViolation);
    spec = reference_spacelike_packet();
    spec.position = {11.0, 0.0, 0.0};
    CHECK_THROWS_AS(make_gaussian_packet(spec, reference_spacelike_grid(32)), SupportViolation);
    spec = reference_spacelike_packet();
    spec.center = {0.0, 0.0, 0.2};
    spec.widths = {0.3, 0.3, 0.3};
    CHECK_THROWS_AS(make_gaussian_packet(spec, make_grid(Hyperplane::at_time(0.0), {32, 32, 32}, {0.8, 0.8, 0.8})),
                    SupportViolation);
}

TEST_CASE("distinct channels are exactly orthogonal")
{
    const GridPtr grid = reference_spacelike_grid(32);
    PacketSpec a = reference_spacelike_packet();
    a.polarization = PolarizationMix::linear(Polarization::first);
    PacketSpec b = a;
    b.polarization = PolarizationMix::linear(Polarization::second);
    PacketSpec c = a;
    c.eps = FluxSign::minus;
    const PhotonAmplitude pa = make_gaussian_packet(a, grid);
    CHECK(inner_product(pa, make_gaussian_packet(b, grid)) == cplx(0.0, 0.0));
    CHECK(inner_product(pa, make_gaussian_packet(c, grid)) == cplx(0.0, 0.0));
}

TEST_CASE("packet norm agrees with quadrature at twice the k resolution")
{
    PacketSpec spec = reference_spacelike_packet();
    spec.polarization = PolarizationMix::linear(Polarization::first);
    const GridPtr grid = reference_spacelike_grid(32);
    const PhotonAmplitude psi = make_gaussian_packet(spec, grid);

    auto gauss = [&](const Vec3& k) {
        double g = 0;
        for (int a = 0; a < 3; ++a) {
            const double d = (k[a] - spec.center[a]) / spec.widths[a];
            g += 0.25 * d * d;
        }
        return std::exp(-g);
    };
    const std::size_t f0 = grid->flat(0, 0, 0);
    const double scale = std::abs(psi.value(kP1, f0)) / gauss(grid->k_on_plane(f0));

    // integral of d^3k / (2 omega) |psi|^2 on a lattice with half the spacing
    const Vec3 dk = scaled(grid->k_spacings(), 0.5);
    double sum = 0;
    for (int i = -64; i < 64; ++i)
        for (int j = -64; j < 64; ++j)
            for (int l = -64; l < 64; ++l) {
                const Vec3 k{grid->k_center()[0] + i * dk[0], grid->k_center()[1] + j * dk[1],
                             grid->k_center()[2] + l * dk[2]};
                const double g = gauss(k);
                sum += g * g / (2 * norm(k));
            }
    const double oracle = scale * scale * sum * dk[0] * dk[1] * dk[2];
    CHECK(std::abs(oracle - 1.0) <= 1e-10);
    CHECK(std::abs(inner_product(psi, psi).real() - oracle) <= 1e-10);
}

TEST_CASE("normalize")
{
    const GridPtr grid = reference_spacelike_grid(32);
    const PhotonAmplitude psi = make_gaussian_packet(reference_spacelike_packet(), grid);
    CHECK(max_abs_diff(normalize(psi), psi) <= 1e-12 * max_reduced(psi));
    CHECK(max_abs_diff(normalize(cplx(7.0, 0.0) * psi), psi) <= 1e-12 * max_reduced(psi));
    CHECK_THROWS_AS(normalize(PhotonAmplitude(grid, kLocalizedAxis, 0.0)), DomainError);
}

TEST_CASE("channel_view partitions the state")
{
    Gen g(5);
    const PhotonAmplitude psi = g.dense_state(make_grid(Hyperplane::at_time(0.0), {8, 8, 8}, {1, 1, 1}));
    PhotonAmplitude sum(psi.grid_ptr(), psi.polarization_axis(), psi.cutoff());
    double norms = 0;
    for (int c = 0; c < kChannels; ++c) {
        const PhotonAmplitude v = channel_view(psi, Channel::from_index(c));
        CHECK(max_abs_diff(channel_view(v, Channel::from_index(c)), v) == 0.0);
        sum += v;
        norms += inner_product(v, v).real();
    }
    CHECK(max_abs_diff(sum, psi) == 0.0);
    CHECK(norms == doctest::Approx(inner_product(psi, psi).real()).epsilon(1e-12));
}

TEST_CASE("property: inner product is sesquilinear and positive")
{
    Gen g(6);
    const GridPtr grid = make_grid(Hyperplane::at_time(0.0), {8, 8, 8}, {1, 1, 1}, {0, 0, 2});
    const GridPtr tl = make_grid(Hyperplane::at_x3(0.0), {8, 8, 8}, {1, 1, 1}, {0, 0, 3});
    for (int i = 0; i < 100; ++i) {
        const GridPtr gp = i % 2 ? grid : tl;
        const PhotonAmplitude phi = g.dense_state(gp);
        const PhotonAmplitude psi = g.dense_state(gp);
        const cplx a = g.complex();
        const cplx b = g.complex();
        const cplx lhs = inner_product(a * phi, b * psi);
        const cplx rhs = std::conj(a) * b * inner_product(phi, psi);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(a * b) * std::sqrt(
                                            inner_product(phi, phi).real() * inner_product(psi, psi).real()));
        const cplx nn = inner_product(psi, psi);
        CHECK(nn.real() > 0.0);
        CHECK(nn.imag() == 0.0);
        CHECK(inner_product(channel_view(psi, kP1), channel_view(phi, kM1)) == cplx(0.0, 0.0));
    }
}

TEST_CASE("potential has no time component and a single mode has constant modulus")
{
    Gen g(7);
    const GridPtr grid = small_grid();
    const std::size_t f = grid->flat(1, 2, 3);
    const PhotonAmplitude mode = make_single_mode(grid, f, kP1, cplx(0.3, -0.4));
    const auto events = random_events(g, 20, 10.0);
    const auto field = synthesize_potential(mode, FluxSign::plus, events);
    for (int mu = 1; mu < 4; ++mu)
        for (const auto& v : field)
            CHECK(std::abs(v[static_cast<std::size_t>(mu)]) ==
                  doctest::Approx(std::abs(field[0][static_cast<std::size_t>(mu)])).epsilon(1e-12));

    const PhotonAmplitude psi = make_gaussian_packet(g.packet_spec(), grid);
    for (const auto& v : synthesize_potential(psi, FluxSign::plus, events))
        CHECK(v[0] == cplx(0.0, 0.0));
}

TEST_CASE("potential on the grid matches the direct sum")
{
    Gen g(8);
    const GridPtr grid = small_grid();
    const PhotonAmplitude psi = make_gaussian_packet(g.packet_spec(), grid);
    std::vector<std::size_t> idx;
    std::vector<FourVector> events;
    for (int i = 0; i < 8; ++i) {
        idx.push_back(static_cast<std::size_t>(g.integer(0, static_cast<int>(grid->size()) - 1)));
        events.push_back(grid->event(idx.back()));
    }
    const auto direct = synthesize_potential(psi, FluxSign::plus, events);
    for (int mu = 1; mu < 4; ++mu) {
        const auto fft = synthesize_on_plane(*grid, FluxSign::plus, potential_coefficients(psi, FluxSign::plus, mu));
        double peak = 0;
        for (cplx v : fft)
            peak = std::max(peak, std::abs(v));
        for (std::size_t i = 0; i < idx.size(); ++i)
            CHECK(std::abs(fft[idx[i]] - direct[i][static_cast<std::size_t>(mu)]) <= 1e-10 * peak);
    }
}

TEST_CASE("property: potential synthesis is linear")
{
    Gen g(9);
    const GridPtr grid = make_grid(Hyperplane::at_time(0.0), {8, 8, 8}, {1, 1, 1}, {0, 0, 2});
    const auto events = random_events(g, 10, 4.0);
    for (int i = 0; i < 10; ++i) {
        const PhotonAmplitude phi = g.dense_state(grid);
        const PhotonAmplitude psi = g.dense_state(grid);
        const cplx a = g.complex();
        const cplx b = g.complex();
        for (FluxSign e : {FluxSign::plus, FluxSign::minus}) {
            const auto lhs = synthesize_potential(a * phi + b * psi, e, events);
            const auto fp = synthesize_potential(phi, e, events);
            const auto fs = synthesize_potential(psi, e, events);
            for (std::size_t j = 0; j < events.size(); ++j)
                for (std::size_t mu = 0; mu < 4; ++mu) {
                    const cplx rhs = a * fp[j][mu] + b * fs[j][mu];
                    CHECK(std::abs(lhs[j][mu] - rhs) <=
                          1e-12 * (std::abs(a * fp[j][mu]) + std::abs(b * fs[j][mu]) + 1e-3));
                }
        }
    }
}

TEST_CASE("changing the polarization axis keeps the physical state")
{
    Gen g(10);
    const GridPtr grid = small_grid();
    const PhotonAmplitude phi = make_gaussian_packet(g.packet_spec(), grid);
    const PhotonAmplitude psi = make_gaussian_packet(g.packet_spec(), grid);
    const PhotonAmplitude moved = with_polarization_axis(psi, {1.0, 0.0, 0.0});
    CHECK(moved.polarization_axis() == Vec3{1.0, 0.0, 0.0});
    CHECK(rel_diff(inner_product(moved, moved), inner_product(psi, psi)) <= 1e-12);
    CHECK(std::abs(inner_product(phi, moved) - inner_product(phi, psi)) <= 1e-12);
    const auto events = random_events(g, 6, 5.0);
    const auto a = synthesize_potential(psi, FluxSign::plus, events);
    const auto b = synthesize_potential(moved, FluxSign::plus, events);
    for (std::size_t j = 0; j < events.size(); ++j)
        for (std::size_t mu = 0; mu < 4; ++mu)
            CHECK(std::abs(a[j][mu] - b[j][mu]) <= 1e-12);
}

TEST_CASE("resampling onto the same grid is the identity")
{
    Gen g(11);
    const GridPtr grid = small_grid();
    const PhotonAmplitude psi = make_gaussian_packet(g.packet_spec(), grid);
    const PhotonAmplitude same = resample(psi, grid);
    CHECK(std::abs(inner_product(same, psi) - 1.0) <= 1e-12);
}

TEST_CASE("amplitude CSV round trip is bit exact")
{
    Gen g(12);
    const GridPtr tl = make_grid(Hyperplane::at_x3(0.5), {8, 8, 8}, {0.9, 1.1, 0.7}, {0.1, 0, 4});
    const PhotonAmplitude psi = g.dense_state(tl);
    std::stringstream ss;
    io::write_amplitude_csv(ss, psi);
    const PhotonAmplitude back = io::read_amplitude_csv(ss, tl, psi.polarization_axis(), psi.cutoff());
    CHECK(max_abs_diff(back, psi) == 0.0);

    std::stringstream bad("k1,k2,k3_or_k0,lambda,epsilon,re,im\n0.1,0,4,3,1,1,0\n");
    CHECK_THROWS_AS(io::read_amplitude_csv(bad, tl, psi.polarization_axis(), psi.cutoff()), ConfigError);
}
