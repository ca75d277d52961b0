// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace photonloc {

/// Short %g rendering for diagnostics.
inline std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value lies outside the domain of an operation (superluminal boost,
/// zero state, off-plane event, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two objects that must share a grid or hyperplane do not.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// The operation needs the other kind of hyperplane.
class PlaneKindError : public Error {
public:
    using Error::Error;
};

/// A packet or resampling target violates the band / cutoff contract.
class SupportViolation : public Error {
public:
    using Error::Error;
};

/// Polarization reference axis parallel to the wavevector.
class DegenerateAxis : public Error {
public:
    using Error::Error;
};

/// Malformed run configuration. Carries the offending field name.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace photonloc
