// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/spacetime.hpp"

#include <algorithm>
#include <string>

#include "photonloc/error.hpp"

namespace photonloc {

std::ostream& operator<<(std::ostream& os, const FourVector& v)
{
    return os << '(' << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ')';
}

IntervalKind classify_interval(const FourVector& x)
{
    const double s = contract(x, x);
    const double tol = 1e-12 * std::max(1.0, euclidean_norm2(x));
    if (std::abs(s) <= tol)
        return IntervalKind::lightlike;
    return s < 0 ? IntervalKind::timelike : IntervalKind::spacelike;
}

const char* to_string(IntervalKind k)
{
    switch (k) {
    case IntervalKind::timelike: return "timelike";
    case IntervalKind::lightlike: return "lightlike";
    case IntervalKind::spacelike: return "spacelike";
    }
    return "?";
}

const char* to_string(PlaneKind k)
{
    return k == PlaneKind::spacelike ? "spacelike" : "timelike";
}

Hyperplane::Hyperplane(const FourVector& normal, double offset)
    : normal_(normal), offset_(offset)
{
    const double nn = contract(normal, normal);
    if (std::abs(std::abs(nn) - 1.0) > 1e-12)
        throw DomainError("hyperplane normal must satisfy |n.n| = 1, got n.n = " + format_number(nn));
    kind_ = nn < 0 ? PlaneKind::spacelike : PlaneKind::timelike;
}

Hyperplane Hyperplane::at_time(double a) { return Hyperplane({1, 0, 0, 0}, a); }

Hyperplane Hyperplane::at_x3(double b) { return Hyperplane({0, 0, 0, 1}, b); }

double Hyperplane::level(const FourVector& x) const
{
    return contract(normal_, x) / normal_sign() - offset_;
}

bool Hyperplane::contains(const FourVector& x, double tol) const
{
    const double scale = std::max(1.0, std::sqrt(euclidean_norm2(x)));
    return std::abs(level(x)) <= tol * scale;
}

bool Hyperplane::is_canonical() const
{
    return normal_ == FourVector{1, 0, 0, 0} || normal_ == FourVector{0, 0, 0, 1};
}

BoostParameters::BoostParameters(double beta) : beta_(beta)
{
    if (!(std::abs(beta) < 1.0))
        throw DomainError("boost velocity must satisfy |beta| < 1, got beta = " + format_number(beta));
    gamma_ = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

FourVector boost_vector(const FourVector& x, const BoostParameters& b)
{
    const double g = b.gamma();
    const double v = b.beta();
    return {g * (x[0] + v * x[3]), x[1], x[2], g * (x[3] + v * x[0])};
}

Hyperplane boost_hyperplane(const Hyperplane& s, const BoostParameters& b)
{
    const FourVector n = boost_vector(s.normal(), b);
    const FourVector anchor = boost_vector(s.anchor(), b);
    // anchor = offset * n by linearity; recover the offset from the boosted
    // anchor rather than assuming it.
    const double offset = contract(n, anchor) / contract(n, n);
    Hyperplane out(n, offset);
    return out;
}

double world_line_angle(const BoostParameters& b) { return std::atan(b.beta()); }

BoostParameters compose(const BoostParameters& first, const BoostParameters& second)
{
    return BoostParameters((first.beta() + second.beta()) / (1.0 + first.beta() * second.beta()));
}

} // namespace photonloc
