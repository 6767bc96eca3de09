// SPDX-License-Identifier: Apache-2.0
#include <dec/harness.hpp>

#include <istream>
#include <ostream>

namespace dec {

namespace {

std::string strip(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw Error(ErrorCode::ConfigError, "value of '" + key + "' is not a number: '" + value + "'");
    }
    return v;
}

} // namespace

std::map<std::string, std::string> parse_config(std::istream& in)
{
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = strip(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": empty key");
        kv[key] = strip(line.substr(eq + 1));
    }
    return kv;
}

SolverConfig solver_config_from(const std::map<std::string, std::string>& kv, SolverConfig base)
{
    for (const auto& [key, value] : kv) {
        if (key == "dt") {
            base.dt = to_number(key, value);
        } else if (key == "max_steps") {
            base.max_steps = static_cast<int>(to_number(key, value));
        } else if (key == "steady_tol") {
            base.steady_tol = to_number(key, value);
        } else if (key == "convection") {
            base.convection = convection_scheme_from_name(value);
        } else if (key == "inverse_mode") {
            base.inverse_mode = inverse_mode_from_name(value);
        } else if (key == "quad_order") {
            base.quad_order = static_cast<int>(to_number(key, value));
        } else {
            throw Error(ErrorCode::ConfigError, "unknown solver key '" + key + "'");
        }
    }
    if (base.dt < 0.0 || base.max_steps < 1 || !(base.steady_tol > 0.0) || base.quad_order < 1) {
        throw Error(ErrorCode::ConfigError, "solver settings out of range");
    }
    return base;
}

void write_field_csv(std::ostream& out, const std::vector<Point2>& points, const Vector& values)
{
    if (static_cast<Eigen::Index>(points.size()) != values.size()) {
        throw Error(ErrorCode::DimensionMismatch, "field and point counts differ");
    }
    out << "id,x,y,value\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << i << ',' << format_double(points[i].x()) << ',' << format_double(points[i].y()) << ','
            << format_double(values[static_cast<Eigen::Index>(i)]) << '\n';
    }
}

} // namespace dec
