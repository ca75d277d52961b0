// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/flux.hpp"

#include <cmath>

#include "photonloc/error.hpp"
#include "photonloc/parallel.hpp"
#include "photonloc/plane_transform.hpp"
#include "photonloc/summation.hpp"

namespace photonloc {

namespace {

const cplx I(0.0, 1.0);

// Potential, time derivative and curl coefficients of one state and flux sign,
// indexed [field][spatial component][mode].
struct FieldCoefficients {
    std::array<std::array<std::vector<cplx>, 3>, 3> c;
};

enum Field { kA = 0, kDtA = 1, kCurlA = 2 };

FieldCoefficients field_coefficients(const PhotonAmplitude& psi, FluxSign eps)
{
    const HyperplaneGrid& grid = psi.grid();
    FieldCoefficients out;
    for (int i = 0; i < 3; ++i)
        out.c[kA][i] = potential_coefficients(psi, eps, i + 1);
    for (int fld = 1; fld < 3; ++fld)
        for (int i = 0; i < 3; ++i)
            out.c[fld][i].assign(grid.size(), cplx(0.0));
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const CVec3 a{out.c[kA][0][f], out.c[kA][1][f], out.c[kA][2][f]};
        if (a[0] == cplx(0.0) && a[1] == cplx(0.0) && a[2] == cplx(0.0))
            continue;
        const FourVector k = kpoint(grid, f, eps).real_four_vector();
        for (int i = 0; i < 3; ++i)
            out.c[kDtA][i][f] = -I * k[0] * a[i];
        out.c[kCurlA][0][f] = I * (k[2] * a[2] - k[3] * a[1]);
        out.c[kCurlA][1][f] = I * (k[3] * a[0] - k[1] * a[2]);
        out.c[kCurlA][2][f] = I * (k[1] * a[1] - k[2] * a[0]);
    }
    return out;
}

CVec3 ccross(const CVec3& a, const CVec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

CVec3 conjv(const CVec3& a) { return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])}; }

std::array<cplx, 4> flux_from_fields(const std::array<CVec3, 3>& fp, const std::array<CVec3, 3>& fs)
{
    std::array<cplx, 4> j{};
    cplx j0 = 0.0;
    for (int i = 0; i < 3; ++i)
        j0 += std::conj(fp[kA][i]) * fs[kDtA][i] - std::conj(fp[kDtA][i]) * fs[kA][i];
    j[0] = I * j0;
    const CVec3 t1 = ccross(conjv(fp[kA]), fs[kCurlA]);
    const CVec3 t2 = ccross(conjv(fp[kCurlA]), fs[kA]);
    for (int i = 0; i < 3; ++i)
        j[i + 1] = -I * (t1[i] + t2[i]);
    return j;
}

} // namespace

std::vector<FluxSample> photon_flux_density(const PhotonAmplitude& phi, const PhotonAmplitude& psi,
                                            std::span<const FourVector> events)
{
    require_same_grid(phi, psi);
    const HyperplaneGrid& grid = psi.grid();
    std::vector<FluxSample> out(events.size());
    for (FluxSign eps : {FluxSign::plus, FluxSign::minus}) {
        const FieldCoefficients cp = field_coefficients(phi, eps);
        const FieldCoefficients cs = field_coefficients(psi, eps);
        std::vector<std::size_t> active;
        std::vector<FourVector> ks;
        for (std::size_t f = 0; f < grid.size(); ++f) {
            bool any = false;
            for (int i = 0; i < 3; ++i)
                any = any || cp.c[kA][i][f] != cplx(0.0) || cs.c[kA][i][f] != cplx(0.0);
            if (any) {
                active.push_back(f);
                ks.push_back(kpoint(grid, f, eps).real_four_vector());
            }
        }
        parallel_for(events.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t j = b; j < e; ++j) {
                std::array<CVec3, 3> fp{}, fs{};
                for (std::size_t n = 0; n < active.size(); ++n) {
                    const std::size_t f = active[n];
                    const cplx ph = std::polar(1.0, contract(ks[n], events[j]));
                    for (int fld = 0; fld < 3; ++fld)
                        for (int i = 0; i < 3; ++i) {
                            fp[fld][i] += cp.c[fld][i][f] * ph;
                            fs[fld][i] += cs.c[fld][i][f] * ph;
                        }
                }
                (eps == FluxSign::plus ? out[j].plus : out[j].minus) = flux_from_fields(fp, fs);
            }
        });
    }
    return out;
}

std::array<std::vector<std::array<cplx, 4>>, 2> photon_flux_on_plane(const PhotonAmplitude& phi,
                                                                       const PhotonAmplitude& psi)
{
    require_same_grid(phi, psi);
    const HyperplaneGrid& grid = psi.grid();
    std::array<std::vector<std::array<cplx, 4>>, 2> out;
    for (FluxSign eps : {FluxSign::plus, FluxSign::minus}) {
        const FieldCoefficients cp = field_coefficients(phi, eps);
        const FieldCoefficients cs = field_coefficients(psi, eps);
        std::array<std::array<std::vector<cplx>, 3>, 3> xp, xs;
        for (int fld = 0; fld < 3; ++fld)
            for (int i = 0; i < 3; ++i) {
                xp[fld][i] = synthesize_on_plane(grid, eps, cp.c[fld][i]);
                xs[fld][i] = &phi == &psi ? xp[fld][i] : synthesize_on_plane(grid, eps, cs.c[fld][i]);
            }
        auto& dst = out[eps == FluxSign::plus ? 0 : 1];
        dst.resize(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            std::array<CVec3, 3> fp, fs;
            for (int fld = 0; fld < 3; ++fld)
                for (int i = 0; i < 3; ++i) {
                    fp[fld][i] = xp[fld][i][j];
                    fs[fld][i] = xs[fld][i][j];
                }
            dst[j] = flux_from_fields(fp, fs);
        }
    }
    return out;
}

cplx flux_integral(const PhotonAmplitude& phi, const PhotonAmplitude& psi, const Hyperplane& plane)
{
    require_same_grid(phi, psi);
    if (!(plane == psi.grid().plane()))
        throw GridMismatch("flux integral plane differs from the states' hyperplane");
    const auto flux = photon_flux_on_plane(phi, psi);
    const FourVector& n = plane.normal();
    const double nn = plane.normal_sign();
    cplx total = 0.0;
    for (int e = 0; e < 2; ++e) {
        CompensatedComplexSum sum;
        for (const auto& j : flux[e])
            sum.add((-n[0] * j[0] + n[1] * j[1] + n[2] * j[2] + n[3] * j[3]) / nn);
        total += (e == 0 ? 1.0 : -1.0) * sum.value();
    }
    return psi.grid().cell_measure() * total;
}

KGAmplitude::KGAmplitude(GridPtr grid, double mass) : grid_(std::move(grid)), mass_(mass)
{
    if (grid_->kind() != PlaneKind::spacelike)
        throw PlaneKindError("Klein-Gordon amplitudes live on t = a planes");
    if (!(mass >= 0.0))
        throw DomainError("Klein-Gordon mass must be >= 0");
    cutoff_ = mass > 0.0 ? 0.0 : default_cutoff(*grid_);
    for (auto& d : data_)
        d.assign(grid_->size(), cplx(0.0));
}

double KGAmplitude::omega(std::size_t f) const
{
    const Vec3 k = grid_->k_on_plane(f);
    return std::sqrt(dot(k, k) + mass_ * mass_);
}

FourVector KGAmplitude::wavevector(std::size_t f, FluxSign eps) const
{
    const Vec3 k = grid_->k_on_plane(f);
    return {sign(eps) * omega(f), k[0], k[1], k[2]};
}

KGAmplitude make_kg_packet(GridPtr grid, double mass, const Vec3& center, const Vec3& widths, const Vec3& position,
                           FluxSign eps)
{
    // Reuse the photon packet's band checks on the same lattice.
    PacketSpec spec;
    spec.center = center;
    spec.widths = widths;
    spec.position = position;
    spec.eps = eps;
    if (mass > 0.0)
        spec.reference_axis = Vec3{1.0, 0.0, 0.0};
    (void)make_gaussian_packet(spec, grid);

    KGAmplitude out(grid, mass);
    const FourVector x0 = grid->event_at(position);
    auto v = out.values(eps);
    for (std::size_t f = 0; f < grid->size(); ++f) {
        if (out.omega(f) < out.cutoff())
            continue;
        const FourVector k = out.wavevector(f, eps);
        double g = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = (k[i + 1] - center[i]) / widths[i];
            g += 0.25 * d * d;
        }
        v[f] = std::exp(-g) * std::polar(1.0, -contract(k, x0));
    }
    const double n2 = kg_inner_product_kspace(out, out).real();
    for (auto& x : v)
        x /= std::sqrt(n2);
    return out;
}

cplx kg_inner_product_kspace(const KGAmplitude& phi, const KGAmplitude& psi)
{
    if (!(phi.grid() == psi.grid()) || phi.mass() != psi.mass())
        throw GridMismatch("Klein-Gordon amplitudes on different grids or masses");
    CompensatedComplexSum sum;
    for (FluxSign e : {FluxSign::plus, FluxSign::minus}) {
        const auto a = phi.values(e);
        const auto b = psi.values(e);
        for (std::size_t f = 0; f < a.size(); ++f) {
            if (a[f] == cplx(0.0) || b[f] == cplx(0.0))
                continue;
            sum.add(std::conj(a[f]) * b[f] / (2.0 * psi.omega(f)));
        }
    }
    return psi.grid().k_cell_measure() * sum.value();
}

namespace {

std::vector<cplx> kg_coefficients(const KGAmplitude& psi, FluxSign eps, bool time_derivative)
{
    const HyperplaneGrid& grid = psi.grid();
    const auto v = psi.values(eps);
    std::vector<cplx> c(grid.size(), cplx(0.0));
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const double w = psi.omega(f);
        if (v[f] == cplx(0.0) || w < psi.cutoff())
            continue;
        c[f] = grid.k_cell_measure() / (2.0 * w) / kTwoPi32 * v[f];
        if (time_derivative)
            c[f] *= -I * (sign(eps) * w);
    }
    return c;
}

} // namespace

namespace {

// synthesize_on_plane derives k^0 from the massless dispersion relation, so
// the mass enters through an explicit time phase on a t = 0 copy of the grid.
std::vector<cplx> kg_synthesize(const KGAmplitude& psi, FluxSign eps, double time, bool time_derivative)
{
    auto c = kg_coefficients(psi, eps, time_derivative);
    for (std::size_t f = 0; f < c.size(); ++f)
        if (c[f] != cplx(0.0))
            c[f] *= std::polar(1.0, -sign(eps) * psi.omega(f) * time);
    return synthesize_on_plane(psi.grid().with_offset(0.0), eps, std::move(c));
}

} // namespace

cplx kg_inner_product(const KGAmplitude& phi, const KGAmplitude& psi)
{
    if (!(phi.grid() == psi.grid()) || phi.mass() != psi.mass())
        throw GridMismatch("Klein-Gordon amplitudes on different grids or masses");
    const HyperplaneGrid& grid = psi.grid();
    const double a = grid.plane().offset();
    cplx total = 0.0;
    for (FluxSign e : {FluxSign::plus, FluxSign::minus}) {
        const auto f_phi = kg_synthesize(phi, e, a, false);
        const auto dt_phi = kg_synthesize(phi, e, a, true);
        const auto f_psi = kg_synthesize(psi, e, a, false);
        const auto dt_psi = kg_synthesize(psi, e, a, true);
        CompensatedComplexSum sum;
        for (std::size_t j = 0; j < grid.size(); ++j)
            sum.add(std::conj(f_phi[j]) * dt_psi[j] - f_psi[j] * std::conj(dt_phi[j]));
        total += static_cast<double>(sign(e)) * sum.value();
    }
    return I * grid.cell_measure() * total;
}

std::vector<cplx> kg_field(const KGAmplitude& psi, FluxSign eps, std::span<const FourVector> events)
{
    const auto c = kg_coefficients(psi, eps, false);
    std::vector<std::size_t> active;
    for (std::size_t f = 0; f < c.size(); ++f)
        if (c[f] != cplx(0.0))
            active.push_back(f);
    std::vector<cplx> out(events.size());
    parallel_for(events.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            cplx sum = 0.0;
            for (std::size_t f : active)
                sum += c[f] * std::polar(1.0, contract(psi.wavevector(f, eps), events[j]));
            out[j] = sum;
        }
    });
    return out;
}

std::vector<cplx> kg_field_on_plane(const KGAmplitude& psi, FluxSign eps, double time)
{
    return kg_synthesize(psi, eps, time, false);
}

} // namespace photonloc
