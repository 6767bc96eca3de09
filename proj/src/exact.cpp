// SPDX-License-Identifier: Apache-2.0
#include <dec/harness.hpp>

#include <cmath>
#include <numbers>

namespace dec {

namespace {

using Params = std::map<std::string, double>;

Params merged(Params defaults, const Params& overrides, const std::string& name)
{
    for (const auto& [k, v] : overrides) {
        auto it = defaults.find(k);
        if (it == defaults.end()) {
            throw Error(ErrorCode::ConfigError, "parameter '" + k + "' does not apply to " + name);
        }
        it->second = v;
    }
    return defaults;
}

void set_fluid(ExactSolution& s)
{
    auto get = [&](const char* k, double fallback) {
        auto it = s.params.find(k);
        return it == s.params.end() ? fallback : it->second;
    };
    s.fluid.rho = get("rho", 1.0);
    s.fluid.nu = get("nu", 1.0);
    s.fluid.kappa = get("kappa", 0.0);
    s.fluid.beta = get("beta", 0.0);
    s.fluid.g = get("g", 0.0);
    s.fluid.validate();
}

ExactSolution poisson_quadratic(const Params& over)
{
    ExactSolution s;
    s.name = "poisson-quadratic";
    s.params = merged({}, over, s.name);
    s.u = [](const Point2& p) { return p.squaredNorm(); };
    s.f = [](const Point2&) { return -4.0; };
    return s;
}

ExactSolution poisson_sinsinh(const Params& over)
{
    ExactSolution s;
    s.name = "poisson-sinsinh";
    s.params = merged({}, over, s.name);
    s.u = [](const Point2& p) {
        return std::sin(std::numbers::pi * p.x()) * std::sinh(std::numbers::pi * p.y());
    };
    s.f = [](const Point2&) { return 0.0; };
    return s;
}

ExactSolution poiseuille(const Params& over)
{
    ExactSolution s;
    s.name = "poiseuille";
    s.params = merged({{"U", 1.0}, {"nu", 1.0}, {"rho", 1.0}}, over, s.name);
    const double u0 = s.params.at("U");
    s.psi = [u0](const Point2& p, double) {
        const double y = p.y();
        return u0 * (2.0 * y * y - 4.0 * y * y * y / 3.0);
    };
    s.velocity = [u0](const Point2& p, double) { return Point2(u0 * 4.0 * p.y() * (1.0 - p.y()), 0.0); };
    set_fluid(s);
    return s;
}

ExactSolution taylor_green(const Params& over)
{
    ExactSolution s;
    s.name = "taylor-green";
    s.params = merged({{"nu", 1.0}, {"rho", 1.0}}, over, s.name);
    const double pi = std::numbers::pi;
    s.domain = {-pi, -pi, pi, pi};
    s.psi = [](const Point2& p, double) { return std::cos(p.x()) * std::cos(p.y()); };
    s.velocity = [](const Point2& p, double) {
        return Point2(-std::cos(p.x()) * std::sin(p.y()), std::sin(p.x()) * std::cos(p.y()));
    };
    // Keeps the decaying vortex steady: vorticity 2 cos x cos y diffuses at rate 2 nu.
    const double nu = s.params.at("nu");
    s.vorticity_source = [nu](const Point2& p, double) { return 4.0 * nu * std::cos(p.x()) * std::cos(p.y()); };
    set_fluid(s);
    return s;
}

void check_wave(const Params& p)
{
    if (p.at("b") == 0.0) throw Error(ErrorCode::ConstraintViolation, "traveling wave needs b != 0");
    if (p.at("w") == -p.at("c")) throw Error(ErrorCode::ConstraintViolation, "traveling wave needs w != -c");
    if (p.at("kappa") <= 0.0) throw Error(ErrorCode::ConstraintViolation, "traveling wave needs kappa > 0");
}

// Shared wiring for both traveling waves: ux(xi) and its antiderivative in xi.
void finish_wave(ExactSolution& s, std::function<double(double)> ux, std::function<double(double)> ux_int)
{
    const double a = s.params.at("a"), b = s.params.at("b"), c = s.params.at("c"), w = s.params.at("w");
    const double theta1 = s.params.at("theta1"), lambda = s.params.at("lambda"), kappa = s.params.at("kappa");
    auto xi = [a, b, c](const Point2& p, double t) { return a * p.x() + b * p.y() + c * t; };
    s.psi = [=](const Point2& p, double t) { return ux_int(xi(p, t)) / b - w * p.x() / b; };
    s.velocity = [=](const Point2& p, double t) {
        const double u = ux(xi(p, t));
        return Point2(u, (w - a * u) / b);
    };
    s.theta = [=](const Point2& p, double t) { return theta1 * std::exp(lambda * xi(p, t) / kappa); };
    s.t_end = kappa / std::abs(lambda * c);
    set_fluid(s);
}

ExactSolution travel_nu_ne_kappa(const Params& over)
{
    ExactSolution s;
    s.name = "travel-nu-ne-kappa";
    s.params = merged({{"rho", 1.0}, {"nu", 0.2}, {"kappa", 0.1}, {"beta", 1.0}, {"g", 10.0},
                       {"a", 1.0}, {"b", 1.0}, {"c", -1.0}, {"w", 2.0},
                       {"theta1", std::exp(-5.0)}, {"u1", 2.0 * std::exp(-5.0)}},
                      over, s.name);
    check_wave(s.params);
    auto& p = s.params;
    if (p.at("nu") == p.at("kappa")) throw Error(ErrorCode::ConstraintViolation, "this wave needs nu != kappa");
    if (p.at("nu") <= 0.0) throw Error(ErrorCode::ConstraintViolation, "this wave needs nu > 0");
    const double a = p.at("a"), b = p.at("b"), c = p.at("c"), w = p.at("w");
    const double nu = p.at("nu"), kappa = p.at("kappa"), beta = p.at("beta"), g = p.at("g");
    const double u1 = p.at("u1"), theta1 = p.at("theta1");
    const double lambda = (c + w) / (a * a + b * b);
    p["lambda"] = lambda;
    const double k = kappa * kappa * beta * a * b * g / ((c + w) * (c + w) * (kappa - nu));
    s.domain = {-0.5, -0.5, 0.5, 0.5};
    finish_wave(
        s,
        [=](double xi) { return u1 * std::exp(lambda * xi / nu) + k * theta1 * std::exp(lambda * xi / kappa); },
        [=](double xi) {
            return u1 * nu / lambda * std::exp(lambda * xi / nu) + k * theta1 * kappa / lambda * std::exp(lambda * xi / kappa);
        });
    return s;
}

ExactSolution travel_nu_eq_kappa(const Params& over)
{
    ExactSolution s;
    s.name = "travel-nu-eq-kappa";
    s.params = merged({{"rho", 1.0}, {"nu", 0.1}, {"kappa", 0.1}, {"beta", 1.0}, {"g", 10.0},
                       {"a", 1.0}, {"b", 1.0}, {"c", -1.0}, {"w", 0.0}, {"x0", 0.5},
                       {"theta1", std::exp(-5.0)}},
                      over, s.name);
    check_wave(s.params);
    auto& p = s.params;
    if (p.at("nu") != p.at("kappa")) throw Error(ErrorCode::ConstraintViolation, "this wave needs nu == kappa");
    const double a = p.at("a"), b = p.at("b"), c = p.at("c"), w = p.at("w");
    const double kappa = p.at("kappa"), beta = p.at("beta"), g = p.at("g");
    const double x0 = p.at("x0"), theta1 = p.at("theta1");
    const double lambda = (c + w) / (a * a + b * b);
    p["lambda"] = lambda;
    const double amp = beta * a * b * g * theta1 / ((c + w) * (a * a + b * b));
    const double m = lambda / kappa;
    s.domain = {0.0, -0.5, 1.0, 0.5};
    finish_wave(
        s, [=](double xi) { return amp * (x0 - xi) * std::exp(m * xi); },
        [=](double xi) { return amp * std::exp(m * xi) * ((x0 - xi) / m + 1.0 / (m * m)); });
    return s;
}

} // namespace

double ExactSolution::param(const std::string& key) const
{
    auto it = params.find(key);
    if (it == params.end()) throw Error(ErrorCode::ConfigError, "no parameter '" + key + "' in " + name);
    return it->second;
}

BoundaryData ExactSolution::boundary_data() const
{
    return {psi, velocity, theta, vorticity_source};
}

std::vector<std::string> exact_solution_names()
{
    return {"poisson-quadratic", "poisson-sinsinh", "poiseuille", "taylor-green", "travel-nu-ne-kappa",
            "travel-nu-eq-kappa"};
}

ExactSolution exact_solution(const std::string& name, const std::map<std::string, double>& overrides)
{
    if (name == "poisson-quadratic") return poisson_quadratic(overrides);
    if (name == "poisson-sinsinh") return poisson_sinsinh(overrides);
    if (name == "poiseuille") return poiseuille(overrides);
    if (name == "taylor-green") return taylor_green(overrides);
    if (name == "travel-nu-ne-kappa") return travel_nu_ne_kappa(overrides);
    if (name == "travel-nu-eq-kappa") return travel_nu_eq_kappa(overrides);
    throw Error(ErrorCode::UnknownSolution, "unknown exact solution '" + name + "'");
}

} // namespace dec
