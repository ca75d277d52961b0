// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <vector>

#include "photonloc/states.hpp"

namespace photonloc {

/// J^mu_eps(x) per flux sign at one event. Complex in general: the expression
/// is the literal matrix element between phi and psi; it is real for phi = psi.
struct FluxSample {
    std::array<cplx, 4> plus{};
    std::array<cplx, 4> minus{};

    const std::array<cplx, 4>& operator[](FluxSign e) const { return e == FluxSign::plus ? plus : minus; }
};

/// Four-flux between one-photon states in Coulomb gauge:
///   J^0 = i (A_phi* . d_t A_psi - (d_t A_phi)* . A_psi)
///   J   = -i (A_phi* x (curl A_psi) + (curl A_phi)* x A_psi)
/// with the potentials of synthesize_potential per flux sign and spectral
/// derivatives. Direct sum, parallel over events.
std::vector<FluxSample> photon_flux_density(const PhotonAmplitude& phi, const PhotonAmplitude& psi,
                                            std::span<const FourVector> events);

/// J^mu_eps at every event of the states' grid (FFT path), flattened as
/// [eps = +, eps = -][grid point].
std::array<std::vector<std::array<cplx, 4>>, 2> photon_flux_on_plane(const PhotonAmplitude& phi,
                                                                       const PhotonAmplitude& psi);

/// sum_eps eps sum_x Delta sigma J_Sigma(x), J_Sigma = contract(n, J) / contract(n, n).
/// Throws GridMismatch if `plane` is not the states' hyperplane.
cplx flux_integral(const PhotonAmplitude& phi, const PhotonAmplitude& psi, const Hyperplane& plane);

/// Scalar Klein-Gordon amplitude psi_eps(k) on a t = a grid.
class KGAmplitude {
public:
    KGAmplitude(GridPtr grid, double mass);

    const HyperplaneGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    double mass() const { return mass_; }
    /// Modes with omega below this are dropped (the k = 0 point when m = 0).
    double cutoff() const { return cutoff_; }
    double omega(std::size_t f) const;
    /// Wavevector (eps omega, k) of lattice point f.
    FourVector wavevector(std::size_t f, FluxSign eps) const;

    std::span<const cplx> values(FluxSign e) const { return data_[e == FluxSign::plus ? 0 : 1]; }
    std::span<cplx> values(FluxSign e) { return data_[e == FluxSign::plus ? 0 : 1]; }

private:
    GridPtr grid_;
    double mass_;
    double cutoff_;
    std::array<std::vector<cplx>, 2> data_;
};

/// Gaussian psi ~ exp(-sum (k_i - c_i)^2 / 4 w_i^2) at `position`, normalized in
/// the k-space norm. Same band checks as make_gaussian_packet.
KGAmplitude make_kg_packet(GridPtr grid, double mass, const Vec3& center, const Vec3& widths, const Vec3& position,
                           FluxSign eps);

/// sum_eps sum_modes Delta kappa / (2 omega) conj(phi) psi.
cplx kg_inner_product_kspace(const KGAmplitude& phi, const KGAmplitude& psi);

/// i sum_eps eps sum_x Delta sigma (phi* d_t psi - psi d_t phi*) on the grid's t = a
/// plane, with d_t taken spectrally.
cplx kg_inner_product(const KGAmplitude& phi, const KGAmplitude& psi);

/// psi_eps(x) = sum_modes Delta kappa / (2 omega) exp(ikx) / (2 pi)^{3/2} psi_eps(k). Direct sum.
std::vector<cplx> kg_field(const KGAmplitude& psi, FluxSign eps, std::span<const FourVector> events);

/// psi_eps on every event of the grid moved to t = time (FFT).
std::vector<cplx> kg_field_on_plane(const KGAmplitude& psi, FluxSign eps, double time);

} // namespace photonloc
