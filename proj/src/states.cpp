// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/states.hpp"

#include <cmath>
#include <string>

#include "photonloc/error.hpp"
#include "photonloc/parallel.hpp"
#include "photonloc/summation.hpp"

namespace photonloc {

namespace {


cplx expi(double phase) { return std::polar(1.0, phase); }

// Gaussian |psi|^2 mass (std sigma) outside [lo, hi] around c.
double tail_mass(double c, double sigma, double lo, double hi)
{
    const double r = 1.0 / (std::sqrt(2.0) * sigma);
    return 0.5 * std::erfc((hi - c) * r) + 0.5 * std::erfc((c - lo) * r);
}

} // namespace

PhotonAmplitude::PhotonAmplitude(GridPtr grid, Vec3 polarization_axis, double cutoff)
    : grid_(std::move(grid)), axis_(polarization_axis), cutoff_(cutoff)
{
    if (!grid_)
        throw DomainError("amplitude needs a grid");
    for (auto& c : data_)
        c.assign(grid_->size(), cplx(0.0));
}

cplx PhotonAmplitude::value(Channel ch, std::size_t f) const
{
    const KPoint k = kpoint(*grid_, f, ch.eps);
    return std::sqrt(2.0 * k.magnitude()) * reduced(ch)[f];
}

void PhotonAmplitude::set_value(Channel ch, std::size_t f, cplx psi)
{
    const KPoint k = kpoint(*grid_, f, ch.eps);
    reduced(ch)[f] = k.magnitude() < cutoff_ ? cplx(0.0) : psi / std::sqrt(2.0 * k.magnitude());
}

PhotonAmplitude& PhotonAmplitude::operator+=(const PhotonAmplitude& other)
{
    require_same_grid(*this, other);
    if (other.axis_ != axis_)
        return *this += with_polarization_axis(other, axis_);
    for (int c = 0; c < kChannels; ++c)
        for (std::size_t f = 0; f < grid_->size(); ++f)
            data_[c][f] += other.data_[c][f];
    return *this;
}

PhotonAmplitude& PhotonAmplitude::operator*=(cplx s)
{
    for (auto& c : data_)
        for (auto& v : c)
            v *= s;
    return *this;
}

void require_same_grid(const PhotonAmplitude& a, const PhotonAmplitude& b)
{
    if (a.grid_ptr() != b.grid_ptr() && !(a.grid() == b.grid()))
        throw GridMismatch("amplitudes live on different grids or hyperplanes");
}

bool on_plane_mode(const HyperplaneGrid& grid, std::size_t f)
{
    if (grid.kind() == PlaneKind::spacelike)
        return true;
    const Vec3 q = grid.k_on_plane(f);
    return q[0] * q[0] + q[1] * q[1] <= q[2] * q[2];
}

Vec3 packet_direction(const PacketSpec& spec, PlaneKind kind)
{
    Vec3 d = spec.center;
    if (kind == PlaneKind::timelike) {
        const cplx k3 = solve_normal_component(spec.center, kind, spec.eps);
        d = {spec.center[0], spec.center[1], k3.real()};
    }
    const double n = norm(d);
    if (n == 0.0)
        return {0.0, 0.0, 1.0};
    return scaled(d, 1.0 / n);
}

PhotonAmplitude make_gaussian_packet(const PacketSpec& spec, GridPtr grid_ptr)
{
    const HyperplaneGrid& grid = *grid_ptr;
    const Index3& n = grid.sizes();
    const Vec3& dk = grid.k_spacings();
    const Vec3& dx = grid.spacings();

    for (int i = 0; i < 3; ++i) {
        if (!(spec.widths[i] > 0.0))
            throw SupportViolation("packet width along axis " + std::to_string(i) + " must be positive");
        const double kc = grid.k_center()[i];
        const double k_tail = tail_mass(spec.center[i], spec.widths[i], kc - (n[i] / 2) * dk[i],
                                        kc + (n[i] / 2 - 1) * dk[i]);
        if (k_tail >= 1e-10)
            throw SupportViolation("k-band check failed on axis " + std::to_string(i) + ": weight " +
                                   format_number(k_tail) + " outside the lattice band");
        const double half = 0.5 * n[i] * dx[i];
        const double x_tail = tail_mass(spec.position[i], 1.0 / (2.0 * spec.widths[i]), -half, half);
        if (x_tail >= 1e-10)
            throw SupportViolation("position-box check failed on axis " + std::to_string(i) + ": weight " +
                                   format_number(x_tail) + " aliased across the box");
    }

    const double k_ref = grid.kind() == PlaneKind::spacelike ? norm(spec.center) : std::abs(spec.center[2]);
    const double cutoff = k_ref > 0.0 ? cutoff_for(k_ref) : default_cutoff(grid);
    const Vec3 axis = spec.reference_axis.value_or(default_reference_axis(packet_direction(spec, grid.kind())));

    const double pn = std::sqrt(std::norm(spec.polarization.first) + std::norm(spec.polarization.second));
    if (pn == 0.0)
        throw DomainError("polarization mixture is zero");
    const cplx w1 = spec.polarization.first / pn;
    const cplx w2 = spec.polarization.second / pn;
    const Channel c1{Polarization::first, spec.eps};
    const Channel c2{Polarization::second, spec.eps};

    PhotonAmplitude out(grid_ptr, axis, cutoff);
    const FourVector center_event = grid.event_at(spec.position);
    double total = 0.0;
    double excluded = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const KPoint k = kpoint(grid, f, spec.eps);
        double g = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = (k.on_plane[i] - spec.center[i]) / spec.widths[i];
            g += 0.25 * d * d;
        }
        const double mag = std::exp(-g);
        const double m2 = mag * mag;
        total += m2;
        const ModeStatus st = mode_status(k, cutoff);
        const bool keep = st == ModeStatus::included || (st == ModeStatus::evanescent && spec.allow_evanescent);
        if (!keep) {
            excluded += m2;
            continue;
        }
        const cplx phase = std::exp(cplx(0.0, -1.0) * contract(k.four_vector(), center_event));
        const cplx reduced = mag * phase / std::sqrt(2.0 * k.magnitude());
        out.reduced(c1)[f] = w1 * reduced;
        out.reduced(c2)[f] = w2 * reduced;
    }
    if (!(total > 0.0))
        throw SupportViolation("packet has no support on the lattice");
    if (excluded / total >= 1e-10)
        throw SupportViolation("excluded-mode weight " + format_number(excluded / total) +
                               " exceeds 1e-10 (cutoff or evanescent band)");
    return normalize(out);
}

PhotonAmplitude make_single_mode(GridPtr grid, std::size_t f, Channel ch, cplx reduced_value, Vec3 axis)
{
    PhotonAmplitude out(grid, axis, default_cutoff(*grid));
    out.reduced(ch)[f] = reduced_value;
    return out;
}

cplx inner_product(const PhotonAmplitude& phi, const PhotonAmplitude& psi)
{
    require_same_grid(phi, psi);
    if (phi.polarization_axis() != psi.polarization_axis())
        return inner_product(with_polarization_axis(phi, psi.polarization_axis()), psi);
    const HyperplaneGrid& grid = psi.grid();
    const bool all = grid.kind() == PlaneKind::spacelike;
    CompensatedComplexSum sum;
    for (int c = 0; c < kChannels; ++c) {
        const auto a = phi.reduced(Channel::from_index(c));
        const auto b = psi.reduced(Channel::from_index(c));
        for (std::size_t f = 0; f < grid.size(); ++f)
            if (all || on_plane_mode(grid, f))
                sum.add(std::conj(a[f]) * b[f]);
    }
    return grid.k_cell_measure() * sum.value();
}

PhotonAmplitude with_polarization_axis(const PhotonAmplitude& psi, const Vec3& axis)
{
    const HyperplaneGrid& grid = psi.grid();
    PhotonAmplitude out(psi.grid_ptr(), axis, psi.cutoff());
    for (FluxSign eps : {FluxSign::plus, FluxSign::minus}) {
        const auto a1 = psi.reduced({Polarization::first, eps});
        const auto a2 = psi.reduced({Polarization::second, eps});
        auto b1 = out.reduced({Polarization::first, eps});
        auto b2 = out.reduced({Polarization::second, eps});
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if (a1[f] == cplx(0.0) && a2[f] == cplx(0.0))
                continue;
            const Vec3 k = kpoint(grid, f, eps).spatial();
            if (norm(k) == 0.0) {
                b1[f] = a1[f];
                b2[f] = a2[f];
                continue;
            }
            const PolarizationBasis src = polarization_basis_or_fallback(k, psi.polarization_axis());
            const PolarizationBasis dst = polarization_basis_or_fallback(k, axis);
            auto d = [](const FourVector& u, const FourVector& v) { return u[1] * v[1] + u[2] * v[2] + u[3] * v[3]; };
            b1[f] = d(dst.e1, src.e1) * a1[f] + d(dst.e1, src.e2) * a2[f];
            b2[f] = d(dst.e2, src.e1) * a1[f] + d(dst.e2, src.e2) * a2[f];
        }
    }
    return out;
}

PhotonAmplitude normalize(const PhotonAmplitude& psi)
{
    const double n2 = inner_product(psi, psi).real();
    if (!(n2 > 0.0))
        throw DomainError("cannot normalize the zero state");
    PhotonAmplitude out = psi;
    out *= 1.0 / std::sqrt(n2);
    return out;
}

PhotonAmplitude channel_view(const PhotonAmplitude& psi, Channel ch)
{
    PhotonAmplitude out(psi.grid_ptr(), psi.polarization_axis(), psi.cutoff());
    const auto src = psi.reduced(ch);
    std::copy(src.begin(), src.end(), out.reduced(ch).begin());
    return out;
}

PolarizationBasis mode_basis(const PhotonAmplitude& psi, const KPoint& k)
{
    return polarization_basis_or_fallback(k.spatial(), psi.polarization_axis());
}

std::vector<cplx> potential_coefficients(const PhotonAmplitude& psi, FluxSign eps, int mu)
{
    const HyperplaneGrid& grid = psi.grid();
    std::vector<cplx> out(grid.size(), cplx(0.0));
    if (mu == 0)
        return out;
    const auto a1 = psi.reduced({Polarization::first, eps});
    const auto a2 = psi.reduced({Polarization::second, eps});
    const double dkappa = grid.k_cell_measure();
    for (std::size_t f = 0; f < grid.size(); ++f) {
        if (a1[f] == cplx(0.0) && a2[f] == cplx(0.0))
            continue;
        const KPoint k = kpoint(grid, f, eps);
        if (mode_status(k, psi.cutoff()) != ModeStatus::included)
            continue;
        const PolarizationBasis e = mode_basis(psi, k);
        const double scale = dkappa / (kTwoPi32 * std::sqrt(2.0 * k.magnitude()));
        out[f] = scale * (e.e1[mu] * a1[f] + e.e2[mu] * a2[f]);
    }
    return out;
}

std::vector<std::array<cplx, 4>> synthesize_potential(const PhotonAmplitude& psi, FluxSign eps,
                                                      std::span<const FourVector> events)
{
    const HyperplaneGrid& grid = psi.grid();
    struct Term {
        FourVector k;
        cplx c[3];
    };
    std::vector<Term> terms;
    {
        const auto c1 = potential_coefficients(psi, eps, 1);
        const auto c2 = potential_coefficients(psi, eps, 2);
        const auto c3 = potential_coefficients(psi, eps, 3);
        for (std::size_t f = 0; f < grid.size(); ++f)
            if (c1[f] != cplx(0.0) || c2[f] != cplx(0.0) || c3[f] != cplx(0.0))
                terms.push_back({kpoint(grid, f, eps).real_four_vector(), {c1[f], c2[f], c3[f]}});
    }
    std::vector<std::array<cplx, 4>> out(events.size());
    parallel_for(events.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            std::array<cplx, 4> a{};
            for (const Term& t : terms) {
                const cplx ph = expi(contract(t.k, events[j]));
                for (int i = 0; i < 3; ++i)
                    a[i + 1] += t.c[i] * ph;
            }
            out[j] = a;
        }
    });
    return out;
}

PhotonAmplitude resample(const PhotonAmplitude& psi, GridPtr target, const std::optional<BoostParameters>& boost)
{
    const HyperplaneGrid& src = psi.grid();
    const HyperplaneGrid& dst = *target;
    for (int i = 0; i < 2; ++i)
        if (src.sizes()[i] != dst.sizes()[i] || src.k_spacings()[i] != dst.k_spacings()[i] ||
            src.k_center()[i] != dst.k_center()[i])
            throw GridMismatch("resample needs the same transverse lattice on axis " + std::to_string(i));

    const int n2 = src.sizes()[2];
    const int s2 = src.axis_signs()[2];
    const double dx2 = src.spacings()[2];
    const std::size_t columns = src.size() / static_cast<std::size_t>(n2);

    // Column syntheses u(x2) = sum_m2 psi~ e^{i k anchor} e^{i s2 k_m2 x2}.
    std::vector<cplx> table(static_cast<std::size_t>(n2) * n2);
    for (int p = 0; p < n2; ++p)
        for (int q = 0; q < n2; ++q)
            table[static_cast<std::size_t>(p) * n2 + q] = expi(s2 * src.k_axis(2, p) * src.x_axis(2, q));
    std::array<std::vector<cplx>, kChannels> u;
    const FourVector anchor = src.plane().anchor();
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        const auto a = psi.reduced(ch);
        u[c].assign(src.size(), cplx(0.0));
        for (std::size_t col = 0; col < columns; ++col) {
            for (int p = 0; p < n2; ++p) {
                const std::size_t f = col * n2 + p;
                if (a[f] == cplx(0.0) || !on_plane_mode(src, f))
                    continue;
                const cplx g = a[f] * std::exp(cplx(0.0, 1.0) * contract(kpoint(src, f, ch.eps).four_vector(), anchor));
                for (int q = 0; q < n2; ++q)
                    u[c][col * n2 + q] += g * table[static_cast<std::size_t>(p) * n2 + q];
            }
        }
    }

    PhotonAmplitude out(target, psi.polarization_axis(), psi.cutoff());
    const double cutoff = psi.cutoff();
    // The interpolant is periodic in kappa; outside the source band it would
    // return aliased copies.
    const double dk2 = src.k_spacings()[2];
    const double band_lo = src.k_center()[2] - (n2 / 2 + 0.5) * dk2;
    const double band_hi = src.k_center()[2] + (n2 / 2 - 0.5) * dk2;
    for (FluxSign et : {FluxSign::plus, FluxSign::minus}) {
        for (std::size_t ft = 0; ft < dst.size(); ++ft) {
            const KPoint kt = kpoint(dst, ft, et);
            if (mode_status(kt, cutoff) != ModeStatus::included)
                continue;
            const FourVector kdst = kt.real_four_vector();
            const FourVector k = boost ? boost_vector(kdst, boost->inverse()) : kdst;
            const double ks = src.kind() == PlaneKind::spacelike ? k[0] : k[3];
            const double kappa = src.kind() == PlaneKind::spacelike ? k[3] : k[0];
            if (std::abs(ks) < cutoff || kappa < band_lo || kappa >= band_hi)
                continue;
            const FluxSign es = ks > 0 ? FluxSign::plus : FluxSign::minus;
            const std::size_t col = ft / static_cast<std::size_t>(n2);

            const cplx w = expi(-s2 * kappa * dx2);
            cplx e = expi(-s2 * kappa * (-(n2 / 2)) * dx2);
            cplx acc[2] = {0.0, 0.0};
            const auto& u1 = u[Channel{Polarization::first, es}.index()];
            const auto& u2 = u[Channel{Polarization::second, es}.index()];
            for (int j = -(n2 / 2); j < n2 / 2; ++j) {
                const std::size_t q = col * n2 + HyperplaneGrid::storage_index(j, n2);
                acc[0] += u1[q] * e;
                acc[1] += u2[q] * e;
                e *= w;
            }
            const cplx back = std::exp(cplx(0.0, -contract(k, anchor))) * (std::sqrt(2.0 * std::abs(ks)) / n2);
            cplx amp[2] = {acc[0] * back, acc[1] * back};

            if (boost) {
                const Vec3 ksp{k[1], k[2], k[3]};
                const PolarizationBasis es_basis = polarization_basis_or_fallback(ksp, psi.polarization_axis());
                const PolarizationBasis et_basis = mode_basis(out, kt);
                double r[2][2];
                for (int l = 0; l < 2; ++l) {
                    const FourVector e4 = boost_vector(l == 0 ? es_basis.e1 : es_basis.e2, *boost);
                    const double g = e4[0] / kdst[0];
                    const Vec3 gauge{e4[1] - g * kdst[1], e4[2] - g * kdst[2], e4[3] - g * kdst[3]};
                    r[0][l] = dot({et_basis.e1[1], et_basis.e1[2], et_basis.e1[3]}, gauge);
                    r[1][l] = dot({et_basis.e2[1], et_basis.e2[2], et_basis.e2[3]}, gauge);
                }
                const cplx b0 = r[0][0] * amp[0] + r[0][1] * amp[1];
                const cplx b1 = r[1][0] * amp[0] + r[1][1] * amp[1];
                amp[0] = b0;
                amp[1] = b1;
            }
            const double to_reduced = 1.0 / std::sqrt(2.0 * kt.magnitude());
            out.reduced({Polarization::first, et})[ft] = amp[0] * to_reduced;
            out.reduced({Polarization::second, et})[ft] = amp[1] * to_reduced;
        }
    }
    return out;
}

} // namespace photonloc
