// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "photonloc/spacetime.hpp"

namespace photonloc {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;
using Index3 = std::array<int, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi32 = 15.749609945722419; // (2 pi)^{3/2}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

/// Complex four-vector; the wavevector of an evanescent mode has an
/// imaginary k^3.
struct ComplexFourVector {
    std::array<cplx, 4> c{};
    cplx operator[](int mu) const { return c[static_cast<std::size_t>(mu)]; }
    cplx& operator[](int mu) { return c[static_cast<std::size_t>(mu)]; }
};

cplx contract(const ComplexFourVector& k, const FourVector& x);

/// Direction of photon flux across the plane; the sign of k_Sigma.
enum class FluxSign : int { plus = 1, minus = -1 };

/// Linear polarization label.
enum class Polarization : int { first = 1, second = 2 };

inline int sign(FluxSign e) { return static_cast<int>(e); }
inline FluxSign opposite(FluxSign e) { return e == FluxSign::plus ? FluxSign::minus : FluxSign::plus; }

/// One (lambda, epsilon) channel; index() = 2 (lambda - 1) + (epsilon == - ? 1 : 0).
struct Channel {
    Polarization pol = Polarization::first;
    FluxSign eps = FluxSign::plus;

    int index() const { return 2 * (static_cast<int>(pol) - 1) + (eps == FluxSign::minus ? 1 : 0); }
    static Channel from_index(int c);
    friend bool operator==(const Channel&, const Channel&) = default;
};

inline constexpr int kChannels = 4;

/// Sampled k-space on a canonical hyperplane.
///
/// On-plane axes are (x1, x2, x3) for t = a and (x1, x2, t) for x3 = b; the
/// dual lattice carries (k1, k2, k3) and (k1, k2, k0) respectively. Lattice
/// and position indices use FFT ordering: storage index p maps to the signed
/// index m = p for p < N/2 and m = p - N otherwise. The k lattice is
/// k_i = k_center_i + m_i dk_i with dk_i = 2 pi / (N_i dx_i); positions are
/// x_i = j_i dx_i relative to the plane anchor.
class HyperplaneGrid {
public:
    /// Requires a canonical plane, even N_i >= 2 and dx_i > 0.
    HyperplaneGrid(Hyperplane plane, Index3 sizes, Vec3 spacings, Vec3 k_center = {0, 0, 0});

    const Hyperplane& plane() const { return plane_; }
    PlaneKind kind() const { return plane_.kind(); }
    const Index3& sizes() const { return sizes_; }
    const Vec3& spacings() const { return spacings_; }
    const Vec3& k_spacings() const { return dk_; }
    const Vec3& k_center() const { return k_center_; }
    std::size_t size() const { return size_; }

    /// Delta sigma = dx1 dx2 dx3.
    double cell_measure() const { return spacings_[0] * spacings_[1] * spacings_[2]; }
    /// Delta kappa = dk1 dk2 dk3.
    double k_cell_measure() const { return dk_[0] * dk_[1] * dk_[2]; }

    /// Sign of each on-plane coordinate in kx: (+,+,+) or (+,+,-) (time axis).
    const std::array<int, 3>& axis_signs() const { return axis_signs_; }

    static int signed_index(int p, int n) { return p < n / 2 ? p : p - n; }
    static int storage_index(int m, int n) { return m < 0 ? m + n : m; }

    std::size_t flat(int p0, int p1, int p2) const
    {
        return (static_cast<std::size_t>(p0) * sizes_[1] + p1) * sizes_[2] + p2;
    }
    std::size_t flat(const Index3& p) const { return flat(p[0], p[1], p[2]); }
    Index3 unflat(std::size_t f) const;

    /// On-plane wavevector components of lattice point f.
    Vec3 k_on_plane(std::size_t f) const;
    double k_axis(int axis, int p) const;
    /// On-plane position of grid point f relative to the anchor.
    Vec3 x_on_plane(std::size_t f) const;
    double x_axis(int axis, int p) const;

    /// Spacetime event of grid point f.
    FourVector event(std::size_t f) const;
    /// Embed on-plane coordinates relative to the anchor as an event.
    FourVector event_at(const Vec3& on_plane) const;

    /// Same lattice, plane moved to a new offset.
    HyperplaneGrid with_offset(double offset) const;

    friend bool operator==(const HyperplaneGrid&, const HyperplaneGrid&) = default;

private:
    Hyperplane plane_;
    Index3 sizes_;
    Vec3 spacings_;
    Vec3 k_center_;
    Vec3 dk_{};
    std::array<int, 3> axis_signs_{1, 1, 1};
    std::size_t size_ = 0;
};

/// A point of the dual lattice together with its normal component.
struct KPoint {
    Vec3 on_plane{};
    /// k_Sigma: +-omega on spacelike planes, k3 on timelike planes. Purely
    /// imaginary for evanescent modes, in which case eps labels the decay
    /// direction (k3 = eps i |k3|).
    cplx normal{};
    FluxSign eps = FluxSign::plus;
    PlaneKind kind = PlaneKind::spacelike;

    bool propagating() const { return normal.imag() == 0.0; }
    double magnitude() const { return std::abs(normal); }
    /// Full wavevector; the k^3 entry is complex for evanescent modes.
    ComplexFourVector four_vector() const;
    /// Real wavevector; only valid for propagating modes.
    FourVector real_four_vector() const;
    /// Spatial part (k1, k2, k3) of a propagating mode.
    Vec3 spatial() const;
};

/// k_Sigma = contract(n, k) / contract(n, n): the component of k along n.
/// Gives k^0 for n = (1,0,0,0) and k^3 for n = (0,0,0,1).
double k_sigma(const FourVector& k, const FourVector& n);

/// Normal component from the massless dispersion relation.
///
/// Spacelike plane, on-plane (k1, k2, k3): eps * omega.
/// Timelike plane, on-plane (k1, k2, k0): eps * sqrt(k0^2 - k1^2 - k2^2) with
/// the principal square root, i.e. eps * i sqrt(k1^2 + k2^2 - k0^2) when
/// evanescent. Returns exactly 0 at the degenerate point |k_Sigma| = 0.
cplx solve_normal_component(const Vec3& on_plane, PlaneKind kind, FluxSign eps);

KPoint kpoint(const HyperplaneGrid& grid, std::size_t f, FluxSign eps);

enum class ModeStatus { included, below_cutoff, evanescent };

ModeStatus mode_status(const KPoint& k, double cutoff);

/// Discrete invariant measure Delta kappa / (2 |k_Sigma|) and whether the mode
/// takes part in on-plane quadrature. For evanescent modes the value uses the
/// modulus of the imaginary k_Sigma but the status marks it excluded.
struct ModeWeight {
    double value = 0.0;
    ModeStatus status = ModeStatus::included;
    bool included() const { return status == ModeStatus::included; }
};

ModeWeight mode_weight(const KPoint& k, const HyperplaneGrid& grid, double cutoff);

/// Default cutoff 1e-6 k_ref. Packets pass their center frequency as k_ref;
/// without a packet the smallest lattice spacing is used.
double default_cutoff(const HyperplaneGrid& grid);
double cutoff_for(double k_ref);

/// Linear transverse polarization basis in Coulomb gauge (zero time component).
struct PolarizationBasis {
    FourVector e1;
    FourVector e2;

    const FourVector& operator[](Polarization p) const { return p == Polarization::first ? e1 : e2; }
    /// (e1 + i h e2) / sqrt(2), spatial part, for helicity h = +-1.
    CVec3 helicity(int h) const;
};

/// e1 = (axis x k^)/|axis x k^|, e2 = k^ x e1, so (e1, e2, k^) is right handed.
/// Throws DegenerateAxis when |axis x k^| < 1e-8.
PolarizationBasis polarization_basis(const Vec3& k, const Vec3& reference_axis);

/// polarization_basis with the fallback chain axis -> x1 -> x2.
PolarizationBasis polarization_basis_or_fallback(const Vec3& k, const Vec3& reference_axis);

/// Mean propagation direction rotated by pi/2 about x1: (x, y, z) -> (x, -z, y).
Vec3 default_reference_axis(const Vec3& mean_direction);

/// All N1 N2 N3 lattice points paired with both flux signs (2 N1 N2 N3 entries,
/// epsilon = + first).
std::vector<KPoint> dual_grid(const HyperplaneGrid& grid);

} // namespace photonloc
