// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "photonloc/error.hpp"

namespace photonloc::io {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const char* on_plane_header(const HyperplaneGrid& grid)
{
    return grid.kind() == PlaneKind::spacelike ? "x1,x2,x3" : "x1,x2,t";
}

void write_on_plane(std::ostream& os, const HyperplaneGrid& grid, std::size_t j)
{
    const Vec3 u = grid.x_on_plane(j);
    os << format_double(u[0]) << ',' << format_double(u[1]) << ',' << format_double(u[2]);
}

void write_event(std::ostream& os, const FourVector& x)
{
    os << format_double(x[0]) << ',' << format_double(x[1]) << ',' << format_double(x[2]) << ','
       << format_double(x[3]);
}

int nearest_index(double k, double center, double dk, int n, int line)
{
    const double m = (k - center) / dk;
    const double r = std::round(m);
    if (std::abs(m - r) > 1e-6 || r < -(n / 2) || r >= n / 2)
        throw ConfigError("line " + std::to_string(line), "wavevector component " + format_double(k) +
                                                              " is not on the lattice");
    return HyperplaneGrid::storage_index(static_cast<int>(r), n);
}

} // namespace

void write_amplitude_csv(std::ostream& os, const PhotonAmplitude& psi)
{
    const HyperplaneGrid& grid = psi.grid();
    os << "k1,k2," << (grid.kind() == PlaneKind::spacelike ? "k3" : "k0") << ",lambda,epsilon,re,im\n";
    for (int c = 0; c < kChannels; ++c) {
        const Channel ch = Channel::from_index(c);
        const auto a = psi.reduced(ch);
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if (a[f] == cplx(0.0))
                continue;
            const Vec3 k = grid.k_on_plane(f);
            os << format_double(k[0]) << ',' << format_double(k[1]) << ',' << format_double(k[2]) << ','
               << static_cast<int>(ch.pol) << ',' << sign(ch.eps) << ',' << format_double(a[f].real()) << ','
               << format_double(a[f].imag()) << '\n';
        }
    }
}

PhotonAmplitude read_amplitude_csv(std::istream& is, GridPtr grid, Vec3 polarization_axis, double cutoff)
{
    PhotonAmplitude out(grid, polarization_axis, cutoff);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (lineno == 1 || line.empty())
            continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ','))
            v.push_back(std::strtod(cell.c_str(), nullptr));
        if (v.size() != 7)
            throw ConfigError("line " + std::to_string(lineno), "expected 7 columns");
        Index3 p{};
        for (int i = 0; i < 3; ++i)
            p[i] = nearest_index(v[i], grid->k_center()[i], grid->k_spacings()[i], grid->sizes()[i], lineno);
        const int lambda = static_cast<int>(v[3]);
        const int eps = static_cast<int>(v[4]);
        if ((lambda != 1 && lambda != 2) || (eps != 1 && eps != -1))
            throw ConfigError("line " + std::to_string(lineno), "lambda must be 1|2 and epsilon +-1");
        const Channel ch{lambda == 1 ? Polarization::first : Polarization::second,
                         eps > 0 ? FluxSign::plus : FluxSign::minus};
        out.reduced(ch)[grid->flat(p)] = cplx(v[5], v[6]);
    }
    return out;
}

void write_projection_csv(std::ostream& os, const ProjectionField& field)
{
    const HyperplaneGrid& grid = *field.grid;
    os << on_plane_header(grid) << ",lambda,epsilon,re,im\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (int c = 0; c < kChannels; ++c) {
            const Channel ch = Channel::from_index(c);
            const cplx v = field.channel(ch)[j];
            write_on_plane(os, grid, j);
            os << ',' << static_cast<int>(ch.pol) << ',' << sign(ch.eps) << ',' << format_double(v.real()) << ','
               << format_double(v.imag()) << '\n';
        }
    }
}

void write_density_csv(std::ostream& os, const HyperplaneGrid& grid, const std::vector<double>& density)
{
    os << on_plane_header(grid) << ",density\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        write_on_plane(os, grid, j);
        os << ',' << format_double(density[j]) << '\n';
    }
}

void write_flux_csv(std::ostream& os, std::span<const FourVector> events, const std::vector<FluxSample>& flux)
{
    os << "t,x1,x2,x3,epsilon,J0,J1,J2,J3\n";
    for (std::size_t j = 0; j < events.size(); ++j)
        for (FluxSign e : {FluxSign::plus, FluxSign::minus}) {
            write_event(os, events[j]);
            os << ',' << sign(e);
            for (const cplx& v : flux[j][e])
                os << ',' << format_double(v.real());
            os << '\n';
        }
}

void write_distribution_csv(std::ostream& os, const DetectionDistribution& dist)
{
    os << "pixel_i1,pixel_i2,pixel_i3,center_coord1,center_coord2,center_coord3,probability\n";
    for (std::size_t id = 0; id < dist.probability.size(); ++id) {
        const Index3 p = dist.pixel_index(id);
        os << p[0] << ',' << p[1] << ',' << p[2];
        for (double c : dist.center[id])
            os << ',' << format_double(c);
        os << ',' << format_double(dist.probability[id]) << '\n';
    }
}

void write_events_jsonl(std::ostream& os, const std::vector<EventRecord>& events)
{
    for (const EventRecord& e : events) {
        nlohmann::ordered_json j;
        j["pixel"] = e.pixel_index;
        j["center"] = e.center;
        j["draw"] = e.draw;
        os << j.dump() << '\n';
    }
}

} // namespace photonloc::io
