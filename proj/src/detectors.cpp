// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "photonloc/error.hpp"
#include "photonloc/localization.hpp"
#include "photonloc/parallel.hpp"
#include "photonloc/summation.hpp"

namespace photonloc {

namespace {

long whole(double v, const char* what, int axis)
{
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)))
        throw GridMismatch(std::string(what) + " on axis " + std::to_string(axis) + " is not a whole number of cells");
    return static_cast<long>(r);
}

} // namespace

DetectorArraySpec DetectorArraySpec::covering(const HyperplaneGrid& grid, Index3 block)
{
    DetectorArraySpec out;
    out.plane = grid.plane();
    for (int i = 0; i < 3; ++i) {
        const double dx = grid.spacings()[i];
        const int n = grid.sizes()[i];
        if (block[i] < 1 || n % block[i] != 0)
            throw GridMismatch("hyperpixel block must divide the grid size on axis " + std::to_string(i));
        out.pixel[i] = block[i] * dx;
        out.bounds[i] = {-(n / 2) * dx, (n / 2) * dx};
    }
    return out;
}

Index3 DetectorArraySpec::pixel_counts() const
{
    Index3 out{};
    for (int i = 0; i < 3; ++i)
        out[i] = static_cast<int>(whole((bounds[i][1] - bounds[i][0]) / pixel[i], "array extent", i));
    return out;
}

std::size_t DetectorArraySpec::pixel_total() const
{
    const Index3 c = pixel_counts();
    return static_cast<std::size_t>(c[0]) * c[1] * c[2];
}

ArrayLayout resolve(const DetectorArraySpec& array, const HyperplaneGrid& grid)
{
    if (!(array.plane == grid.plane()))
        throw GridMismatch("detector array plane differs from the state's hyperplane");
    ArrayLayout out;
    for (int i = 0; i < 3; ++i) {
        const double dx = grid.spacings()[i];
        const int n = grid.sizes()[i];
        if (!(array.pixel[i] > 0.0) || !(array.bounds[i][1] > array.bounds[i][0]))
            throw GridMismatch("empty hyperpixel or bounds on axis " + std::to_string(i));
        const long lo = whole(array.bounds[i][0] / dx, "array lower bound", i);
        const long hi = whole(array.bounds[i][1] / dx, "array upper bound", i);
        const long block = whole(array.pixel[i] / dx, "hyperpixel extent", i);
        if (lo < -(n / 2) || hi > n / 2)
            throw GridMismatch("array bounds leave the grid on axis " + std::to_string(i));
        if (block < 1 || (hi - lo) % block != 0)
            throw GridMismatch("hyperpixels do not tile the bounds on axis " + std::to_string(i));
        out.block[i] = static_cast<int>(block);
        out.first_cell[i] = static_cast<int>(lo);
        out.pixels[i] = static_cast<int>((hi - lo) / block);
    }
    return out;
}

double DetectionDistribution::total() const
{
    CompensatedSum sum;
    for (double p : probability)
        sum.add(p);
    return sum.value();
}

Index3 DetectionDistribution::pixel_index(std::size_t id) const
{
    const auto p2 = static_cast<std::size_t>(pixels[2]);
    const auto p1 = static_cast<std::size_t>(pixels[1]);
    return {static_cast<int>(id / (p1 * p2)), static_cast<int>((id / p2) % p1), static_cast<int>(id % p2)};
}

DetectionDistribution integrate_density(const std::vector<double>& density, const HyperplaneGrid& grid,
                                        const DetectorArraySpec& array)
{
    if (density.size() != grid.size())
        throw GridMismatch("density does not match the grid");
    const ArrayLayout lay = resolve(array, grid);
    DetectionDistribution out;
    out.pixels = lay.pixels;
    const std::size_t count = static_cast<std::size_t>(lay.pixels[0]) * lay.pixels[1] * lay.pixels[2];
    out.probability.assign(count, 0.0);
    out.center.resize(count);
    const double dsigma = grid.cell_measure();
    const Index3& n = grid.sizes();
    parallel_for(count, [&](std::size_t b, std::size_t e) {
        for (std::size_t id = b; id < e; ++id) {
            const Index3 pix = out.pixel_index(id);
            Index3 j0{};
            for (int i = 0; i < 3; ++i) {
                j0[i] = lay.first_cell[i] + pix[i] * lay.block[i];
                out.center[id][i] = (j0[i] + 0.5 * lay.block[i]) * grid.spacings()[i];
            }
            CompensatedSum sum;
            for (int a = 0; a < lay.block[0]; ++a)
                for (int c = 0; c < lay.block[1]; ++c)
                    for (int d = 0; d < lay.block[2]; ++d)
                        sum.add(density[grid.flat(HyperplaneGrid::storage_index(j0[0] + a, n[0]),
                                                  HyperplaneGrid::storage_index(j0[1] + c, n[1]),
                                                  HyperplaneGrid::storage_index(j0[2] + d, n[2]))]);
            out.probability[id] = dsigma * sum.value();
        }
    });
    return out;
}

DetectionDistribution detection_probabilities(const PhotonAmplitude& psi, const DetectorArraySpec& array)
{
    resolve(array, psi.grid());
    return integrate_density(detection_density(psi), psi.grid(), array);
}

double counter_uniform(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer over a (seed, index) counter
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    const std::uint64_t z = mix(mix(seed) ^ index);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::vector<EventRecord> sample_events(const DetectionDistribution& dist, std::size_t n, std::uint64_t seed)
{
    std::vector<double> cdf(dist.probability.size());
    std::partial_sum(dist.probability.begin(), dist.probability.end(), cdf.begin());
    if (cdf.empty() || !(cdf.back() > 0.0))
        throw DomainError("cannot sample from an empty distribution");
    const double total = cdf.back();
    std::vector<EventRecord> out(n);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double u = counter_uniform(seed, i) * total;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end())
                --it;
            const auto id = static_cast<std::size_t>(it - cdf.begin());
            out[i] = {id, dist.pixel_index(id), dist.center[id], i};
        }
    });
    return out;
}

double relative_bandwidth(const PhotonAmplitude& psi)
{
    const HyperplaneGrid& grid = psi.grid();
    double w = 0.0;
    Vec3 m1{}, m2{};
    for (int c = 0; c < kChannels; ++c) {
        const auto a = psi.reduced(Channel::from_index(c));
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if (a[f] == cplx(0.0) || !on_plane_mode(grid, f))
                continue;
            const double p = std::norm(a[f]);
            const Vec3 k = grid.k_on_plane(f);
            w += p;
            for (int i = 0; i < 3; ++i) {
                m1[i] += p * k[i];
                m2[i] += p * k[i] * k[i];
            }
        }
    }
    if (!(w > 0.0))
        throw DomainError("bandwidth of the zero state");
    const Vec3 mean = scaled(m1, 1.0 / w);
    const double mn = norm(mean);
    if (!(mn > 0.0))
        return INFINITY;
    double out = 0.0;
    for (int i = 0; i < 3; ++i)
        out = std::max(out, std::sqrt(std::max(0.0, m2[i] / w - mean[i] * mean[i])) / mn);
    return out;
}

NaiveRatio naive_vs_covariant_ratio(const PhotonAmplitude& psi, const DetectorArraySpec& array, double max_bandwidth)
{
    const HyperplaneGrid& grid = psi.grid();
    if (grid.kind() != PlaneKind::timelike)
        throw PlaneKindError("the wrong-basis comparison needs an x3 = b plane");
    NaiveRatio out;
    out.bandwidth = relative_bandwidth(psi);
    if (out.bandwidth > max_bandwidth)
        throw DomainError("state is too broadband for the naive/covariant ratio: relative bandwidth " +
                          format_number(out.bandwidth) + " > " + format_number(max_bandwidth));
    PhotonAmplitude naive = psi;
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        auto a = naive.reduced(ch);
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if (a[f] == cplx(0.0))
                continue;
            const KPoint k = kpoint(grid, f, ch.eps);
            const double omega = std::abs(grid.k_on_plane(f)[2]);
            a[f] = k.propagating() && omega > 0.0 ? a[f] * std::sqrt(k.magnitude() / omega) : cplx(0.0);
        }
    }
    out.naive_total = integrate_density(timelike_counting(naive), grid, array).total();
    out.covariant_total = integrate_density(timelike_counting(psi), grid, array).total();
    if (!(out.covariant_total > 0.0))
        throw DomainError("the array sees none of the state");
    out.ratio = out.naive_total / out.covariant_total;
    return out;
}

BoostedView boosted_view(const DetectorArraySpec& array, const ObserverFrame& frame)
{
    BoostedView out;
    out.array = array;
    out.array.plane = boost_hyperplane(array.plane, frame.boost);
    const FourVector& n = out.array.plane.normal();
    if (n[1] != 0.0 || n[2] != 0.0)
        throw DomainError("boosted_view expects a normal in the (t, x3) plane");
    const double s = out.array.plane.offset();
    if (out.array.plane.kind() == PlaneKind::spacelike) {
        out.intercept = s / n[0] + 0.0;
        out.slope = n[3] / n[0];
    } else {
        out.intercept = s / n[3] + 0.0;
        out.slope = n[0] / n[3];
    }
    out.alpha = std::atan(out.slope);
    return out;
}

GridPtr observer_grid(const PhotonAmplitude& psi, const ObserverFrame& frame)
{
    const HyperplaneGrid& grid = psi.grid();
    const bool spacelike = grid.kind() == PlaneKind::spacelike;
    double w[2] = {0.0, 0.0};
    Vec3 mean{};
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        const auto a = psi.reduced(ch);
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if (a[f] == cplx(0.0) || !on_plane_mode(grid, f))
                continue;
            const double p = std::norm(a[f]);
            w[ch.eps == FluxSign::plus ? 0 : 1] += p;
            const Vec3 k = grid.k_on_plane(f);
            for (int i = 0; i < 3; ++i)
                mean[i] += p * k[i];
        }
    }
    const double wt = w[0] + w[1];
    if (!(wt > 0.0))
        throw DomainError("observer grid for the zero state");
    mean = scaled(mean, 1.0 / wt);
    const double eps = w[0] >= w[1] ? 1.0 : -1.0;
    const double g = frame.boost.gamma();
    const double b = frame.boost.beta();

    FourVector k;
    double jac = 0.0;
    if (spacelike) {
        const double omega = norm(mean);
        if (!(omega > 0.0))
            throw DomainError("state has no mean wavevector");
        k = {eps * omega, mean[0], mean[1], mean[2]};
        jac = g * (1.0 + b * eps * mean[2] / omega);
    } else {
        const double k3sq = mean[2] * mean[2] - mean[0] * mean[0] - mean[1] * mean[1];
        if (!(k3sq > 0.0))
            throw DomainError("state has no propagating mean wavevector");
        const double k3 = eps * std::sqrt(k3sq);
        k = {mean[2], mean[0], mean[1], k3};
        jac = g * (1.0 + b * mean[2] / k3);
    }
    if (!(jac > 0.0))
        throw DomainError("boost reverses the lattice orientation of the state");
    const FourVector kb = boost_vector(k, frame.boost);
    const double kappa = spacelike ? k[3] : k[0];
    const double kappa_b = spacelike ? kb[3] : kb[0];

    Vec3 kc = grid.k_center();
    kc[2] = kappa_b - jac * (kappa - kc[2]);
    Vec3 dx = grid.spacings();
    dx[2] /= jac;
    const FourVector anchor = boost_vector(grid.plane().anchor(), frame.boost);
    const Hyperplane plane = spacelike ? Hyperplane::at_time(anchor[0]) : Hyperplane::at_x3(anchor[3]);
    return make_grid(plane, grid.sizes(), dx, kc);
}

FrameComparison frame_invariance_check(const PhotonAmplitude& psi, const DetectorArraySpec& array,
                                       const ObserverFrame& frame)
{
    const HyperplaneGrid& grid = psi.grid();
    const ArrayLayout lay = resolve(array, grid);
    for (int i = 0; i < 3; ++i)
        if (lay.first_cell[i] != -(grid.sizes()[i] / 2) || lay.pixels[i] * lay.block[i] != grid.sizes()[i])
            throw DomainError("frame comparison needs an array covering the whole grid");
    FrameComparison out;
    out.rest_total = detection_probabilities(psi, array).total();
    out.rest_norm = inner_product(psi, psi).real();
    const PhotonAmplitude seen = resample(psi, observer_grid(psi, frame), frame.boost);
    CompensatedSum sum;
    for (double v : detection_density(seen))
        sum.add(v);
    out.boosted_total = seen.grid().cell_measure() * sum.value();
    out.boosted_norm = inner_product(seen, seen).real();
    out.deviation = std::max(std::abs(out.boosted_total - out.rest_total) / out.rest_total,
                             std::abs(out.boosted_norm - out.rest_norm) / out.rest_norm);
    return out;
}

} // namespace photonloc
