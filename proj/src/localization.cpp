// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/localization.hpp"

#include <cmath>
#include <map>

#include "photonloc/error.hpp"
#include "photonloc/parallel.hpp"
#include "photonloc/plane_transform.hpp"
#include "photonloc/summation.hpp"

namespace photonloc {

namespace {


void require_kind(const HyperplaneGrid& grid, PlaneKind kind, const char* op)
{
    if (grid.kind() != kind)
        throw PlaneKindError(std::string(op) + " needs a " + to_string(kind) + " plane");
}

std::vector<cplx> projection_coefficients(const PhotonAmplitude& psi, Channel ch)
{
    const HyperplaneGrid& grid = psi.grid();
    const double scale = grid.k_cell_measure() / kTwoPi32;
    const auto a = psi.reduced(ch);
    std::vector<cplx> c(grid.size());
    for (std::size_t f = 0; f < grid.size(); ++f)
        c[f] = on_plane_mode(grid, f) ? scale * a[f] : cplx(0.0);
    return c;
}

void check_growth(const PhotonAmplitude& psi, double delta)
{
    const HyperplaneGrid& grid = psi.grid();
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        const auto a = psi.reduced(ch);
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if (a[f] == cplx(0.0) || on_plane_mode(grid, f))
                continue;
            const double growth = kpoint(grid, f, ch.eps).normal.imag() * delta;
            if (growth < 0.0)
                throw DomainError("evanescent continuation would grow exponentially toward the target plane");
        }
    }
}

} // namespace

PhotonAmplitude localized_amplitude(const LocalizedStateSpec& spec, GridPtr grid_ptr)
{
    const HyperplaneGrid& grid = *grid_ptr;
    if (!grid.plane().contains(spec.position))
        throw DomainError("localized state position is not on the grid's hyperplane");
    PhotonAmplitude out(grid_ptr, kLocalizedAxis, default_cutoff(grid));
    auto a = out.reduced(spec.channel);
    const FourVector& x = spec.position;
    // kx' = contract(k, anchor) + on-plane part; the latter factorizes per axis.
    const FourVector rel = x - grid.plane().anchor();
    const Vec3 u = grid.kind() == PlaneKind::spacelike ? Vec3{rel[1], rel[2], rel[3]} : Vec3{rel[1], rel[2], rel[0]};
    const auto& s = grid.axis_signs();
    std::array<std::vector<cplx>, 3> axis_phase;
    for (int i = 0; i < 3; ++i) {
        axis_phase[i].resize(static_cast<std::size_t>(grid.sizes()[i]));
        for (int p = 0; p < grid.sizes()[i]; ++p)
            axis_phase[i][p] = std::polar(1.0, -s[i] * grid.k_axis(i, p) * u[i]);
    }
    const std::vector<cplx> anchor = anchor_phases(grid, spec.channel.eps);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        if (!on_plane_mode(grid, f))
            continue;
        const Index3 p = grid.unflat(f);
        a[f] = axis_phase[0][p[0]] * axis_phase[1][p[1]] * axis_phase[2][p[2]] / anchor[f] / kTwoPi32;
    }
    return out;
}

cplx overlap(const LocalizedStateSpec& a, const LocalizedStateSpec& b, GridPtr grid)
{
    if (!grid->plane().contains(a.position) || !grid->plane().contains(b.position))
        throw GridMismatch("localized states must lie on the same hyperplane");
    if (a.channel != b.channel)
        return 0.0;
    // conj(chi~_a) chi~_b = exp(ik(x_a - x_b)) / (2 pi)^3: anchor phases cancel
    // and the phase factorizes per on-plane axis.
    const FourVector d = a.position - b.position;
    const Vec3 u = grid->kind() == PlaneKind::spacelike ? Vec3{d[1], d[2], d[3]} : Vec3{d[1], d[2], d[0]};
    const auto& s = grid->axis_signs();
    const Index3& n = grid->sizes();
    std::array<std::vector<cplx>, 3> phase;
    std::array<cplx, 3> axis_sum{};
    for (int i = 0; i < 3; ++i) {
        phase[i].resize(static_cast<std::size_t>(n[i]));
        for (int p = 0; p < n[i]; ++p) {
            phase[i][p] = std::polar(1.0, s[i] * grid->k_axis(i, p) * u[i]);
            axis_sum[i] += phase[i][p];
        }
    }
    const double scale = grid->k_cell_measure() / (kTwoPi32 * kTwoPi32);
    if (grid->kind() == PlaneKind::spacelike)
        return scale * axis_sum[0] * axis_sum[1] * axis_sum[2];
    cplx sum = 0.0;
    for (std::size_t f = 0; f < grid->size(); ++f) {
        if (!on_plane_mode(*grid, f))
            continue;
        const Index3 p = grid->unflat(f);
        sum += phase[0][p[0]] * phase[1][p[1]] * phase[2][p[2]];
    }
    return scale * sum;
}

ProjectionField project_all(const PhotonAmplitude& psi)
{
    if (psi.polarization_axis() != kLocalizedAxis)
        return project_all(with_polarization_axis(psi, kLocalizedAxis));
    ProjectionField out{psi.grid_ptr(), {}};
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        out.values[c] = synthesize_on_plane(psi.grid(), ch.eps, projection_coefficients(psi, ch));
    }
    return out;
}

ProjectionField project_all_direct(const PhotonAmplitude& psi)
{
    if (psi.polarization_axis() != kLocalizedAxis)
        return project_all_direct(with_polarization_axis(psi, kLocalizedAxis));
    ProjectionField out{psi.grid_ptr(), {}};
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        const auto coeffs = projection_coefficients(psi, ch);
        out.values[c] = synthesize_on_plane_direct(psi.grid(), ch.eps, coeffs);
    }
    return out;
}

namespace {

std::vector<double> density_of(const PhotonAmplitude& psi)
{
    const ProjectionField p = project_all(psi);
    std::vector<double> d(psi.grid().size(), 0.0);
    for (const auto& v : p.values)
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] += std::norm(v[j]);
    return d;
}

} // namespace

std::vector<double> spacelike_density(const PhotonAmplitude& psi)
{
    require_kind(psi.grid(), PlaneKind::spacelike, "spacelike_density");
    return density_of(psi);
}

std::vector<double> timelike_counting(const PhotonAmplitude& psi)
{
    const HyperplaneGrid& grid = psi.grid();
    require_kind(grid, PlaneKind::timelike, "timelike_counting");
    double total = 0.0;
    double evanescent = 0.0;
    for (int c = 0; c < kChannels; ++c) {
        const auto a = psi.reduced(Channel::from_index(c));
        for (std::size_t f = 0; f < grid.size(); ++f) {
            const double w = std::norm(a[f]);
            total += w;
            if (!on_plane_mode(grid, f))
                evanescent += w;
        }
    }
    if (total > 0.0 && evanescent / total > 1e-10)
        throw SupportViolation("evanescent weight " + format_number(evanescent / total) +
                               " exceeds 1e-10; counting probabilities undefined");
    return density_of(psi);
}

std::vector<double> detection_density(const PhotonAmplitude& psi)
{
    return psi.grid().kind() == PlaneKind::spacelike ? spacelike_density(psi) : timelike_counting(psi);
}

double completeness_defect(const PhotonAmplitude& phi, const PhotonAmplitude& psi)
{
    require_same_grid(phi, psi);
    const ProjectionField a = project_all(phi);
    const ProjectionField b = project_all(psi);
    CompensatedComplexSum acc;
    for (int c = 0; c < kChannels; ++c)
        for (std::size_t j = 0; j < a.values[c].size(); ++j)
            acc.add(std::conj(a.values[c][j]) * b.values[c][j]);
    const cplx sum = psi.grid().cell_measure() * acc.value();
    const cplx ip = inner_product(phi, psi);
    const double diff = std::abs(sum - ip);
    return std::abs(ip) == 0.0 ? diff : diff / std::abs(ip);
}

std::vector<std::array<cplx, 4>> potential_of_localized(const LocalizedStateSpec& spec, GridPtr grid,
                                                        std::span<const FourVector> events)
{
    return synthesize_potential(localized_amplitude(spec, grid), spec.channel.eps, events);
}

std::vector<std::array<cplx, 4>> potential_of_localized_on_grid(const LocalizedStateSpec& spec, GridPtr grid)
{
    const PhotonAmplitude chi = localized_amplitude(spec, grid);
    std::vector<std::array<cplx, 4>> out(grid->size(), std::array<cplx, 4>{});
    for (int mu = 1; mu < 4; ++mu) {
        const auto field = synthesize_on_plane(*grid, spec.channel.eps, potential_coefficients(chi, spec.channel.eps, mu));
        for (std::size_t j = 0; j < field.size(); ++j)
            out[j][mu] = field[j];
    }
    return out;
}

RadialProfile radial_profile(const HyperplaneGrid& grid, const std::vector<std::array<cplx, 4>>& field)
{
    std::map<long, std::pair<double, long>> bins;
    RadialProfile out;
    const double cell = std::cbrt(grid.cell_measure());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double m2 = 0.0;
        for (const cplx& v : field[j])
            m2 += std::norm(v);
        const double m = std::sqrt(m2);
        out.peak = std::max(out.peak, m);
        const long bin = std::lround(norm(grid.x_on_plane(j)) / cell);
        auto& [sum, count] = bins[bin];
        sum += m;
        ++count;
    }
    for (const auto& [bin, acc] : bins) {
        out.radius.push_back(static_cast<double>(bin));
        out.magnitude.push_back(acc.first / static_cast<double>(acc.second));
    }
    return out;
}

double loglog_slope(const RadialProfile& p, double r_min, double r_max)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < p.radius.size(); ++i) {
        if (p.radius[i] < r_min || p.radius[i] > r_max || p.magnitude[i] <= 0.0)
            continue;
        const double x = std::log(p.radius[i]);
        const double y = std::log(p.magnitude[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2)
        throw DomainError("tail fit needs at least two radial bins");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

cplx plane_to_plane_amplitude(const PhotonAmplitude& psi, Channel ch, const FourVector& to_point)
{
    if (psi.polarization_axis() != kLocalizedAxis)
        return plane_to_plane_amplitude(with_polarization_axis(psi, kLocalizedAxis), ch, to_point);
    const HyperplaneGrid& grid = psi.grid();
    require_kind(grid, PlaneKind::timelike, "plane_to_plane_amplitude");
    check_growth(psi, to_point[3] - grid.plane().offset());
    const double scale = grid.k_cell_measure() / kTwoPi32;
    const auto a = psi.reduced(ch);
    std::vector<cplx> c(a.begin(), a.end());
    for (auto& v : c)
        v *= scale;
    return synthesize_at(grid, ch.eps, c, to_point);
}

PhotonAmplitude transport(const PhotonAmplitude& psi, double delta)
{
    const HyperplaneGrid& grid = psi.grid();
    require_kind(grid, PlaneKind::timelike, "transport");
    check_growth(psi, delta);
    PhotonAmplitude out(std::make_shared<const HyperplaneGrid>(grid.with_offset(grid.plane().offset() + delta)),
                        psi.polarization_axis(), psi.cutoff());
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        const auto a = psi.reduced(ch);
        std::copy(a.begin(), a.end(), out.reduced(ch).begin());
    }
    return out;
}

} // namespace photonloc
