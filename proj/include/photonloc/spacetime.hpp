// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace photonloc {

/// Contravariant four-vector (x^0 = t, x^1, x^2, x^3) in natural units.
/// The metric is diag(-1, +1, +1, +1) throughout.
struct FourVector {
    std::array<double, 4> c{};

    constexpr FourVector() = default;
    constexpr FourVector(double t, double x1, double x2, double x3) : c{t, x1, x2, x3} {}

    constexpr double& operator[](int mu) { return c[static_cast<std::size_t>(mu)]; }
    constexpr double operator[](int mu) const { return c[static_cast<std::size_t>(mu)]; }

    constexpr double t() const { return c[0]; }
    constexpr double x1() const { return c[1]; }
    constexpr double x2() const { return c[2]; }
    constexpr double x3() const { return c[3]; }

    friend constexpr FourVector operator+(const FourVector& a, const FourVector& b)
    {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    }
    friend constexpr FourVector operator-(const FourVector& a, const FourVector& b)
    {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    }
    friend constexpr FourVector operator*(double s, const FourVector& a)
    {
        return {s * a[0], s * a[1], s * a[2], s * a[3]};
    }
    friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const FourVector& v);

/// a_mu b^mu = -a^0 b^0 + a.b
constexpr double contract(const FourVector& a, const FourVector& b)
{
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Euclidean sum of squares of the components; scale for tolerances.
constexpr double euclidean_norm2(const FourVector& a)
{
    return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
}

enum class IntervalKind { timelike, lightlike, spacelike };

/// Sign of contract(x, x); |x.x| <= 1e-12 * max(1, |x|^2) counts as lightlike.
IntervalKind classify_interval(const FourVector& x);

const char* to_string(IntervalKind k);

/// Kind of a hyperplane. A spacelike plane (t = a) has a timelike normal, a
/// timelike plane (x3 = b) has a spacelike normal.
enum class PlaneKind { spacelike, timelike };

const char* to_string(PlaneKind k);

/// Flat hyperplane {x : contract(n, x - s n) = 0} with unit normal n.
///
/// The offset s places the anchor event s*n on the plane. For the canonical
/// planes this is the familiar parameter: s = a for t = a and s = b for
/// x3 = b. Because the anchor is built from n itself, s does not change
/// when the plane is boosted.
class Hyperplane {
public:
    /// Throws DomainError unless |n.n| = 1 within 1e-12 (n lightlike or
    /// unnormalized).
    Hyperplane(const FourVector& normal, double offset);

    /// Spacelike plane t = a, normal (1, 0, 0, 0).
    static Hyperplane at_time(double a);
    /// Timelike plane x3 = b, normal (0, 0, 0, 1).
    static Hyperplane at_x3(double b);

    const FourVector& normal() const { return normal_; }
    double offset() const { return offset_; }
    PlaneKind kind() const { return kind_; }
    /// contract(n, n): -1 for spacelike planes, +1 for timelike planes.
    double normal_sign() const { return kind_ == PlaneKind::spacelike ? -1.0 : 1.0; }
    FourVector anchor() const { return offset_ * normal_; }

    /// Signed distance parameter of x along n, relative to the plane.
    double level(const FourVector& x) const;
    bool contains(const FourVector& x, double tol = 1e-12) const;

    /// True for n = (1,0,0,0) or n = (0,0,0,1) exactly.
    bool is_canonical() const;

    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;

private:
    FourVector normal_;
    double offset_ = 0.0;
    PlaneKind kind_ = PlaneKind::spacelike;
};

/// Boost velocity along x3. Throws DomainError unless |beta| < 1.
class BoostParameters {
public:
    explicit BoostParameters(double beta);

    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    BoostParameters inverse() const { return BoostParameters(-beta_); }

private:
    double beta_;
    double gamma_;
};

/// (gamma (t + beta x3), x1, x2, gamma (x3 + beta t))
FourVector boost_vector(const FourVector& x, const BoostParameters& b);

/// The same event set seen by the boosted observer: normal and anchor boosted
/// as four-vectors, kind unchanged.
Hyperplane boost_hyperplane(const Hyperplane& s, const BoostParameters& b);

/// alpha = atan(beta), the tilt of a boosted detector world line.
double world_line_angle(const BoostParameters& b);

/// Collinear velocity addition (b1 + b2) / (1 + b1 b2).
BoostParameters compose(const BoostParameters& first, const BoostParameters& second);

} // namespace photonloc
