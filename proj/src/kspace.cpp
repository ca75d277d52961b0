// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/kspace.hpp"

#include <algorithm>
#include <string>

#include "photonloc/error.hpp"

namespace photonloc {

cplx contract(const ComplexFourVector& k, const FourVector& x)
{
    return -k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + k[3] * x[3];
}

Channel Channel::from_index(int c)
{
    return {c < 2 ? Polarization::first : Polarization::second, c % 2 == 0 ? FluxSign::plus : FluxSign::minus};
}

HyperplaneGrid::HyperplaneGrid(Hyperplane plane, Index3 sizes, Vec3 spacings, Vec3 k_center)
    : plane_(plane), sizes_(sizes), spacings_(spacings), k_center_(k_center)
{
    if (!plane_.is_canonical())
        throw DomainError("grids live on canonical planes (t = a or x3 = b); boost the canonical solution instead");
    size_ = 1;
    for (int i = 0; i < 3; ++i) {
        if (sizes_[i] < 2 || sizes_[i] % 2 != 0)
            throw DomainError("grid size along axis " + std::to_string(i) + " must be even and >= 2");
        if (!(spacings_[i] > 0.0))
            throw DomainError("grid spacing along axis " + std::to_string(i) + " must be positive");
        dk_[i] = 2.0 * kPi / (sizes_[i] * spacings_[i]);
        size_ *= static_cast<std::size_t>(sizes_[i]);
    }
    if (kind() == PlaneKind::timelike)
        axis_signs_ = {1, 1, -1};
}

Index3 HyperplaneGrid::unflat(std::size_t f) const
{
    const int p2 = static_cast<int>(f % sizes_[2]);
    f /= sizes_[2];
    const int p1 = static_cast<int>(f % sizes_[1]);
    const int p0 = static_cast<int>(f / sizes_[1]);
    return {p0, p1, p2};
}

double HyperplaneGrid::k_axis(int axis, int p) const
{
    return k_center_[axis] + signed_index(p, sizes_[axis]) * dk_[axis];
}

double HyperplaneGrid::x_axis(int axis, int p) const
{
    return signed_index(p, sizes_[axis]) * spacings_[axis];
}

Vec3 HyperplaneGrid::k_on_plane(std::size_t f) const
{
    const Index3 p = unflat(f);
    return {k_axis(0, p[0]), k_axis(1, p[1]), k_axis(2, p[2])};
}

Vec3 HyperplaneGrid::x_on_plane(std::size_t f) const
{
    const Index3 p = unflat(f);
    return {x_axis(0, p[0]), x_axis(1, p[1]), x_axis(2, p[2])};
}

FourVector HyperplaneGrid::event_at(const Vec3& u) const
{
    const FourVector a = plane_.anchor();
    if (kind() == PlaneKind::spacelike)
        return {a[0], a[1] + u[0], a[2] + u[1], a[3] + u[2]};
    return {a[0] + u[2], a[1] + u[0], a[2] + u[1], a[3]};
}

FourVector HyperplaneGrid::event(std::size_t f) const { return event_at(x_on_plane(f)); }

HyperplaneGrid HyperplaneGrid::with_offset(double offset) const
{
    return HyperplaneGrid(Hyperplane(plane_.normal(), offset), sizes_, spacings_, k_center_);
}

ComplexFourVector KPoint::four_vector() const
{
    ComplexFourVector k;
    if (kind == PlaneKind::spacelike)
        k.c = {normal, on_plane[0], on_plane[1], on_plane[2]};
    else
        k.c = {on_plane[2], on_plane[0], on_plane[1], normal};
    return k;
}

FourVector KPoint::real_four_vector() const
{
    if (kind == PlaneKind::spacelike)
        return {normal.real(), on_plane[0], on_plane[1], on_plane[2]};
    return {on_plane[2], on_plane[0], on_plane[1], normal.real()};
}

Vec3 KPoint::spatial() const
{
    if (kind == PlaneKind::spacelike)
        return on_plane;
    return {on_plane[0], on_plane[1], normal.real()};
}

double k_sigma(const FourVector& k, const FourVector& n) { return contract(n, k) / contract(n, n); }

cplx solve_normal_component(const Vec3& q, PlaneKind kind, FluxSign eps)
{
    const double s = sign(eps);
    if (kind == PlaneKind::spacelike)
        return s * std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    const double d = q[2] * q[2] - q[0] * q[0] - q[1] * q[1];
    if (d >= 0.0)
        return s * std::sqrt(d);
    return cplx(0.0, s * std::sqrt(-d));
}

KPoint kpoint(const HyperplaneGrid& grid, std::size_t f, FluxSign eps)
{
    KPoint k;
    k.on_plane = grid.k_on_plane(f);
    k.eps = eps;
    k.kind = grid.kind();
    k.normal = solve_normal_component(k.on_plane, k.kind, eps);
    return k;
}

ModeStatus mode_status(const KPoint& k, double cutoff)
{
    if (!k.propagating())
        return ModeStatus::evanescent;
    if (k.magnitude() < cutoff)
        return ModeStatus::below_cutoff;
    return ModeStatus::included;
}

ModeWeight mode_weight(const KPoint& k, const HyperplaneGrid& grid, double cutoff)
{
    ModeWeight w;
    w.status = mode_status(k, cutoff);
    if (w.status == ModeStatus::below_cutoff)
        return w;
    w.value = grid.k_cell_measure() / (2.0 * k.magnitude());
    return w;
}

double cutoff_for(double k_ref) { return 1e-6 * k_ref; }

double default_cutoff(const HyperplaneGrid& grid)
{
    const Vec3& dk = grid.k_spacings();
    return cutoff_for(std::min({dk[0], dk[1], dk[2]}));
}

CVec3 PolarizationBasis::helicity(int h) const
{
    const double r = 1.0 / std::sqrt(2.0);
    CVec3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = r * cplx(e1[i + 1], h * e2[i + 1]);
    return out;
}

PolarizationBasis polarization_basis(const Vec3& k, const Vec3& reference_axis)
{
    const double kn = norm(k);
    if (kn == 0.0)
        throw DegenerateAxis("polarization basis undefined at k = 0");
    const Vec3 khat = scaled(k, 1.0 / kn);
    const Vec3 axis = scaled(reference_axis, 1.0 / norm(reference_axis));
    const Vec3 a = cross(axis, khat);
    const double an = norm(a);
    if (an < 1e-8)
        throw DegenerateAxis("reference axis parallel to k");
    const Vec3 e1 = scaled(a, 1.0 / an);
    const Vec3 e2 = cross(khat, e1);
    return {{0.0, e1[0], e1[1], e1[2]}, {0.0, e2[0], e2[1], e2[2]}};
}

PolarizationBasis polarization_basis_or_fallback(const Vec3& k, const Vec3& reference_axis)
{
    const double kn = norm(k);
    const double an = norm(reference_axis);
    if (kn > 0.0 && an > 0.0 && norm(cross(scaled(reference_axis, 1.0 / an), scaled(k, 1.0 / kn))) >= 1e-8)
        return polarization_basis(k, reference_axis);
    try {
        return polarization_basis(k, {1.0, 0.0, 0.0});
    } catch (const DegenerateAxis&) {
        return polarization_basis(k, {0.0, 1.0, 0.0});
    }
}

Vec3 default_reference_axis(const Vec3& d) { return {d[0], -d[2], d[1]}; }

std::vector<KPoint> dual_grid(const HyperplaneGrid& grid)
{
    std::vector<KPoint> out;
    out.reserve(2 * grid.size());
    for (FluxSign e : {FluxSign::plus, FluxSign::minus})
        for (std::size_t f = 0; f < grid.size(); ++f)
            out.push_back(kpoint(grid, f, e));
    return out;
}

} // namespace photonloc
