// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "photonloc/kspace.hpp"

namespace photonloc {

using GridPtr = std::shared_ptr<const HyperplaneGrid>;

inline GridPtr make_grid(Hyperplane plane, Index3 sizes, Vec3 spacings, Vec3 k_center = {0, 0, 0})
{
    return std::make_shared<const HyperplaneGrid>(plane, sizes, spacings, k_center);
}

/// One-photon amplitude psi_{lambda,eps}(k) sampled on the dual lattice of a
/// hyperplane grid.
///
/// Storage holds the reduced amplitude psi / sqrt(2 |k_Sigma|), the
/// coefficient of the state in the localized basis with flat measure
/// d kappa. In that form the inner product, the projections and the
/// localized states stay finite at |k_Sigma| -> 0, and
///   <phi|psi> = Delta kappa sum conj(phi~) psi~
/// is the invariant sum_modes Delta kappa / (2 |k_Sigma|) conj(phi) psi.
/// value() converts back to psi.
class PhotonAmplitude {
public:
    PhotonAmplitude(GridPtr grid, Vec3 polarization_axis, double cutoff);

    const HyperplaneGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const Vec3& polarization_axis() const { return axis_; }
    /// Modes with |k_Sigma| below this are dropped wherever 1/sqrt|k_Sigma|
    /// appears (packet construction, potentials, fluxes).
    double cutoff() const { return cutoff_; }

    std::span<const cplx> reduced(Channel ch) const { return data_[static_cast<std::size_t>(ch.index())]; }
    std::span<cplx> reduced(Channel ch) { return data_[static_cast<std::size_t>(ch.index())]; }

    /// psi_{lambda,eps}(k) = sqrt(2 |k_Sigma|) * reduced.
    cplx value(Channel ch, std::size_t f) const;
    /// Stores psi; zero on modes below the cutoff.
    void set_value(Channel ch, std::size_t f, cplx psi);

    PhotonAmplitude& operator+=(const PhotonAmplitude& other);
    PhotonAmplitude& operator*=(cplx s);
    friend PhotonAmplitude operator+(PhotonAmplitude a, const PhotonAmplitude& b) { return a += b; }
    friend PhotonAmplitude operator*(cplx s, PhotonAmplitude a) { return a *= s; }

private:
    GridPtr grid_;
    Vec3 axis_;
    double cutoff_;
    std::array<std::vector<cplx>, kChannels> data_;
};

/// Reference axis of the localized-state polarization basis.
inline constexpr Vec3 kLocalizedAxis{0.0, -1.0, 0.0};

/// Throws GridMismatch unless both amplitudes live on equal grids.
void require_same_grid(const PhotonAmplitude& a, const PhotonAmplitude& b);

/// True for modes that enter on-plane quadrature: everything on a spacelike
/// plane, the propagating band k1^2 + k2^2 <= k0^2 on a timelike plane.
bool on_plane_mode(const HyperplaneGrid& grid, std::size_t f);

/// Polarization mixture (coefficients of e1, e2), normalized on use.
struct PolarizationMix {
    cplx first = 1.0;
    cplx second = 0.0;

    static PolarizationMix linear(Polarization p)
    {
        return p == Polarization::first ? PolarizationMix{1.0, 0.0} : PolarizationMix{0.0, 1.0};
    }
    /// (e1 + i h e2) / sqrt(2)
    static PolarizationMix helicity(int h) { return {1.0, cplx(0.0, h)}; }
};

/// Gaussian test packet psi ~ exp(-sum_i (k_i - center_i)^2 / (4 width_i^2))
/// on the on-plane wavevector components, centered at the on-plane position
/// `position` (relative to the grid anchor).
struct PacketSpec {
    Vec3 center{};
    Vec3 widths{1.0, 1.0, 1.0};
    Vec3 position{};
    PolarizationMix polarization{};
    FluxSign eps = FluxSign::plus;
    /// Keep evanescent support on timelike planes instead of rejecting it.
    bool allow_evanescent = false;
    std::optional<Vec3> reference_axis;
};

/// Builds and normalizes a packet. Throws SupportViolation when the packet
/// leaks out of the k band or the position box (weight >= 1e-10), or when
/// modes below the cutoff (or evanescent modes) carry relative weight
/// >= 1e-10.
PhotonAmplitude make_gaussian_packet(const PacketSpec& spec, GridPtr grid);

/// Direction of the packet's mean spatial wavevector.
Vec3 packet_direction(const PacketSpec& spec, PlaneKind kind);

/// Single lattice mode with reduced amplitude `reduced_value`; any mode,
/// evanescent included.
PhotonAmplitude make_single_mode(GridPtr grid, std::size_t f, Channel ch, cplx reduced_value,
                                 Vec3 polarization_axis = kLocalizedAxis);

/// The same state with its polarization components expressed in the basis
/// built from `axis` (a real rotation per mode; the k = 0 point is left as is).
PhotonAmplitude with_polarization_axis(const PhotonAmplitude& psi, const Vec3& axis);

/// <phi|psi> = sum_{lambda,eps} sum_modes Delta kappa / 2|k_Sigma| conj(phi) psi.
cplx inner_product(const PhotonAmplitude& phi, const PhotonAmplitude& psi);

/// Returns psi / sqrt(<psi|psi>). Throws DomainError on the zero state.
PhotonAmplitude normalize(const PhotonAmplitude& psi);

/// Zeroes every channel but ch.
PhotonAmplitude channel_view(const PhotonAmplitude& psi, Channel ch);

/// Coulomb-gauge four-potential of one flux sign at arbitrary events:
///   psi^mu(x) = sum_lambda sum_modes [dk / 2|k_Sigma|] e^mu_lambda(k) exp(ikx) / (2 pi)^{3/2} psi(k)
/// over propagating modes above the cutoff. Direct sum, parallel over events.
std::vector<std::array<cplx, 4>> synthesize_potential(const PhotonAmplitude& psi, FluxSign eps,
                                                      std::span<const FourVector> events);

/// Per-mode coefficients of synthesize_potential for component mu (zero for
/// modes that do not contribute).
std::vector<cplx> potential_coefficients(const PhotonAmplitude& psi, FluxSign eps, int mu);

/// Polarization basis used by psi at lattice mode k.
PolarizationBasis mode_basis(const PhotonAmplitude& psi, const KPoint& k);

/// Re-expresses psi on another grid sharing the transverse (axis 0, 1)
/// lattice, optionally as seen by a boosted observer.
///
/// Each target mode k' is pulled back to k = L^-1 k' and psi(k) is read off
/// the source by band-limited (trigonometric) interpolation along the source
/// axis 2; psi on the light cone is a scalar per polarization. Under a boost
/// e_lambda(k) is transformed as a four-vector, gauge-projected back to
/// Coulomb gauge and re-expanded in the target basis.
PhotonAmplitude resample(const PhotonAmplitude& psi, GridPtr target,
                         const std::optional<BoostParameters>& boost = std::nullopt);

} // namespace photonloc
