// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>

namespace photonloc {

/// Neumaier compensated sum; long lattice reductions stay at O(eps).
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> v)
    {
        re_.add(v.real());
        im_.add(v.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace photonloc
