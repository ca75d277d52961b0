// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "photonloc/error.hpp"

namespace photonloc {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_name(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

[[noreturn]] void syntax(int line, const std::string& what)
{
    throw ConfigError("line " + std::to_string(line), "line " + std::to_string(line) + ": " + what);
}

std::optional<double> parse_number(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    std::string t;
    for (char c : s)
        if (c != '_')
            t += c;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::string strip_comment(const std::string& s)
{
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"')
            quoted = !quoted;
        else if (s[i] == '#' && !quoted)
            return s.substr(0, i);
    }
    return s;
}

ConfigValue parse_value(const std::string& raw, int line)
{
    const std::string v = trim(raw);
    if (v.empty())
        syntax(line, "missing value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"' || v.find('"', 1) != v.size() - 1)
            syntax(line, "unterminated string");
        return v.substr(1, v.size() - 2);
    }
    if (v == "true")
        return true;
    if (v == "false")
        return false;
    if (v.front() == '[') {
        if (v.back() != ']')
            syntax(line, "unterminated list");
        std::vector<double> out;
        std::stringstream ss(v.substr(1, v.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string t = trim(item);
            if (t.empty())
                continue;
            const auto n = parse_number(t);
            if (!n)
                syntax(line, "list items must be numbers, got '" + t + "'");
            out.push_back(*n);
        }
        return out;
    }
    if (const auto n = parse_number(v))
        return *n;
    syntax(line, "cannot parse value '" + v + "'");
}

class Reader {
public:
    explicit Reader(const ConfigTable& t) : table_(t) {}

    const ConfigEntry* find(const std::string& key)
    {
        used_.insert(key);
        const auto it = table_.find(key);
        return it == table_.end() ? nullptr : &it->second;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what)
    {
        const auto it = table_.find(key);
        const std::string where = it == table_.end() ? "" : "line " + std::to_string(it->second.line) + ": ";
        throw ConfigError(key, where + key + ": " + what);
    }

    void number(const std::string& key, double& out)
    {
        if (const ConfigEntry* e = find(key)) {
            if (const double* v = std::get_if<double>(&e->value))
                out = *v;
            else
                fail(key, "expected a number");
        }
    }

    void integer(const std::string& key, long& out)
    {
        double v = static_cast<double>(out);
        number(key, v);
        if (v != std::floor(v))
            fail(key, "expected an integer");
        out = static_cast<long>(v);
    }

    void text(const std::string& key, std::string& out)
    {
        if (const ConfigEntry* e = find(key)) {
            if (const std::string* v = std::get_if<std::string>(&e->value))
                out = *v;
            else
                fail(key, "expected a string");
        }
    }

    std::optional<std::vector<double>> list(const std::string& key, std::size_t n)
    {
        const ConfigEntry* e = find(key);
        if (!e)
            return std::nullopt;
        const auto* v = std::get_if<std::vector<double>>(&e->value);
        if (!v || (n != 0 && v->size() != n))
            fail(key, n ? "expected a list of " + std::to_string(n) + " numbers" : "expected a list of numbers");
        return *v;
    }

    std::optional<Vec3> vec3(const std::string& key)
    {
        const auto v = list(key, 3);
        if (!v)
            return std::nullopt;
        return Vec3{(*v)[0], (*v)[1], (*v)[2]};
    }

    void reject_unknown()
    {
        for (const auto& [key, entry] : table_)
            if (!used_.count(key))
                throw ConfigError(key, "line " + std::to_string(entry.line) + ": unknown key '" + key + "'");
    }

private:
    const ConfigTable& table_;
    std::set<std::string> used_;
};

} // namespace

ConfigTable parse_config(const std::string& text)
{
    ConfigTable out;
    std::stringstream ss(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty())
            continue;
        if (s.front() == '[') {
            if (s.back() != ']' || !is_name(trim(s.substr(1, s.size() - 2))))
                syntax(line, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            syntax(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (!is_name(key))
            syntax(line, "malformed key '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full))
            syntax(line, "duplicate key '" + full + "'");
        out[full] = {parse_value(s.substr(eq + 1), line), line};
    }
    return out;
}

const char* to_string(Scenario s)
{
    switch (s) {
    case Scenario::density: return "density";
    case Scenario::count: return "count";
    case Scenario::boost: return "boost";
    case Scenario::costheta: return "costheta";
    case Scenario::tail: return "tail";
    case Scenario::validate: return "validate";
    }
    return "?";
}

Scenario parse_scenario(const std::string& name)
{
    for (Scenario s : {Scenario::density, Scenario::count, Scenario::boost, Scenario::costheta, Scenario::tail,
                       Scenario::validate})
        if (name == to_string(s))
            return s;
    throw ConfigError("scenario", "unknown scenario '" + name + "' (density|count|boost|costheta|tail|validate)");
}

RunConfig load_run_config(const ConfigTable& table)
{
    Reader r(table);
    RunConfig c;

    std::string scenario;
    r.text("scenario", scenario);
    if (!scenario.empty()) {
        try {
            c.scenario = parse_scenario(scenario);
        } catch (const ConfigError& e) {
            r.fail("scenario", e.what());
        }
    }
    long seed = static_cast<long>(c.seed);
    r.integer("seed", seed);
    if (seed < 0)
        r.fail("seed", "must be >= 0");
    c.seed = static_cast<std::uint64_t>(seed);
    long threads = c.threads;
    r.integer("threads", threads);
    if (threads < 1)
        r.fail("threads", "must be >= 1");
    c.threads = static_cast<int>(threads);

    if (const auto v = r.list("grid.sizes", 3))
        for (int i = 0; i < 3; ++i) {
            const double n = (*v)[i];
            if (n != std::floor(n) || n < 2 || static_cast<long>(n) % 2 != 0)
                r.fail("grid.sizes", "sizes must be even integers >= 2");
            c.grid.sizes[i] = static_cast<int>(n);
        }
    if (const auto v = r.vec3("grid.spacings")) {
        for (double d : *v)
            if (!(d > 0.0))
                r.fail("grid.spacings", "spacings must be positive");
        c.grid.spacings = *v;
    }
    if (const auto v = r.vec3("grid.k_center"))
        c.grid.k_center = *v;

    std::string kind = "spacelike";
    r.text("plane.kind", kind);
    if (kind == "spacelike")
        c.plane.kind = PlaneKind::spacelike;
    else if (kind == "timelike")
        c.plane.kind = PlaneKind::timelike;
    else
        r.fail("plane.kind", "must be \"spacelike\" or \"timelike\"");
    r.number("plane.offset", c.plane.offset);

    c.packet.center = c.grid.k_center;
    if (const auto v = r.vec3("packet.center"))
        c.packet.center = *v;
    if (const auto v = r.vec3("packet.widths")) {
        for (double w : *v)
            if (!(w > 0.0))
                r.fail("packet.widths", "widths must be positive");
        c.packet.widths = *v;
    }
    if (const auto v = r.vec3("packet.position"))
        c.packet.position = *v;
    std::string pol = "linear1";
    r.text("packet.polarization", pol);
    if (pol == "linear1")
        c.packet.polarization = PolarizationMix::linear(Polarization::first);
    else if (pol == "linear2")
        c.packet.polarization = PolarizationMix::linear(Polarization::second);
    else if (pol == "helicity+")
        c.packet.polarization = PolarizationMix::helicity(+1);
    else if (pol == "helicity-")
        c.packet.polarization = PolarizationMix::helicity(-1);
    else
        r.fail("packet.polarization", "must be linear1|linear2|helicity+|helicity-");
    double eps = 1.0;
    r.number("packet.epsilon", eps);
    if (eps != 1.0 && eps != -1.0)
        r.fail("packet.epsilon", "must be 1 or -1");
    c.packet.eps = eps > 0 ? FluxSign::plus : FluxSign::minus;

    c.array.pixel = r.vec3("array.pixel");
    c.array.lower = r.vec3("array.lower");
    c.array.upper = r.vec3("array.upper");

    r.number("boost.beta", c.beta);
    if (!(std::abs(c.beta) < 1.0))
        r.fail("boost.beta", "must satisfy |beta| < 1, got " + format_number(c.beta));

    long events = static_cast<long>(c.events);
    r.integer("sampling.events", events);
    if (events < 1)
        r.fail("sampling.events", "must be >= 1");
    c.events = static_cast<std::size_t>(events);

    r.number("costheta.theta_deg", c.costheta.theta_deg);
    if (!(c.costheta.theta_deg >= 0.0 && c.costheta.theta_deg < 90.0))
        r.fail("costheta.theta_deg", "must lie in [0, 90)");
    r.number("costheta.omega", c.costheta.omega);
    if (!(c.costheta.omega > 0.0))
        r.fail("costheta.omega", "must be positive");
    r.number("costheta.bandwidth", c.costheta.bandwidth);
    if (!(c.costheta.bandwidth > 0.0 && c.costheta.bandwidth <= 0.02))
        r.fail("costheta.bandwidth", "must lie in (0, 0.02]");
    long cs = c.costheta.size;
    r.integer("costheta.size", cs);
    if (cs < 2 || cs % 2 != 0)
        r.fail("costheta.size", "must be an even integer >= 2");
    c.costheta.size = static_cast<int>(cs);

    if (const auto v = r.list("tail.sizes", 0)) {
        c.tail.sizes.clear();
        for (double n : *v) {
            if (n != std::floor(n) || n < 8 || static_cast<long>(n) % 2 != 0)
                r.fail("tail.sizes", "sizes must be even integers >= 8");
            c.tail.sizes.push_back(static_cast<int>(n));
        }
        if (c.tail.sizes.empty())
            r.fail("tail.sizes", "needs at least one size");
    }
    r.number("tail.spacing", c.tail.spacing);
    if (!(c.tail.spacing > 0.0))
        r.fail("tail.spacing", "must be positive");
    r.number("tail.fit_min", c.tail.fit_min);
    r.number("tail.fit_max", c.tail.fit_max);
    if (!(c.tail.fit_min > 0.0 && c.tail.fit_max > c.tail.fit_min))
        r.fail("tail.fit_max", "fit range must satisfy 0 < fit_min < fit_max");

    r.reject_unknown();
    return c;
}

RunConfig load_run_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_run_config(parse_config(ss.str()));
}

} // namespace photonloc
