// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/plane_transform.hpp"

#include "photonloc/error.hpp"
#include "photonloc/fft.hpp"
#include "photonloc/parallel.hpp"

namespace photonloc {

namespace {

cplx expi(cplx phase) { return std::exp(cplx(0.0, 1.0) * phase); }

} // namespace

std::vector<cplx> anchor_phases(const HyperplaneGrid& grid, FluxSign eps)
{
    const FourVector anchor = grid.plane().anchor();
    std::vector<cplx> out(grid.size());
    if (euclidean_norm2(anchor) == 0.0) {
        std::fill(out.begin(), out.end(), cplx(1.0, 0.0));
        return out;
    }
    for (std::size_t f = 0; f < grid.size(); ++f)
        out[f] = expi(contract(kpoint(grid, f, eps).four_vector(), anchor));
    return out;
}

std::vector<cplx> synthesize_on_plane(const HyperplaneGrid& grid, FluxSign eps, std::vector<cplx> coeffs)
{
    if (coeffs.size() != grid.size())
        throw GridMismatch("coefficient array does not match the grid");
    const std::vector<cplx> anchor = anchor_phases(grid, eps);
    for (std::size_t f = 0; f < coeffs.size(); ++f)
        coeffs[f] *= anchor[f];
    const Index3& n = grid.sizes();
    fft::transform3d(coeffs, n, +1);

    // k_m x_j = sum_i s_i (kc_i + m_i dk_i) j_i dx_i: the lattice part is the
    // FFT above (read at -j on the time axis), the carrier part a phase.
    const auto& s = grid.axis_signs();
    const Vec3& kc = grid.k_center();
    std::array<std::vector<cplx>, 3> carrier;
    for (int i = 0; i < 3; ++i) {
        carrier[i].resize(static_cast<std::size_t>(n[i]));
        for (int p = 0; p < n[i]; ++p)
            carrier[i][p] = expi(s[i] * kc[i] * grid.x_axis(i, p));
    }
    std::vector<cplx> out(grid.size());
    for (int p0 = 0; p0 < n[0]; ++p0)
        for (int p1 = 0; p1 < n[1]; ++p1)
            for (int p2 = 0; p2 < n[2]; ++p2) {
                const int q2 = s[2] > 0 ? p2 : (n[2] - p2) % n[2];
                out[grid.flat(p0, p1, p2)] =
                    carrier[0][p0] * carrier[1][p1] * carrier[2][p2] * coeffs[grid.flat(p0, p1, q2)];
            }
    return out;
}

cplx synthesize_at(const HyperplaneGrid& grid, FluxSign eps, std::span<const cplx> coeffs, const FourVector& x)
{
    cplx sum = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        if (coeffs[f] == cplx(0.0))
            continue;
        sum += coeffs[f] * expi(contract(kpoint(grid, f, eps).four_vector(), x));
    }
    return sum;
}

std::vector<cplx> synthesize_on_plane_direct(const HyperplaneGrid& grid, FluxSign eps, std::span<const cplx> coeffs)
{
    std::vector<ComplexFourVector> ks(grid.size());
    for (std::size_t f = 0; f < grid.size(); ++f)
        ks[f] = kpoint(grid, f, eps).four_vector();
    std::vector<cplx> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            const FourVector x = grid.event(j);
            cplx sum = 0.0;
            for (std::size_t f = 0; f < ks.size(); ++f)
                if (coeffs[f] != cplx(0.0))
                    sum += coeffs[f] * expi(contract(ks[f], x));
            out[j] = sum;
        }
    });
    return out;
}

} // namespace photonloc
