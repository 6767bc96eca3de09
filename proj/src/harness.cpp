// SPDX-License-Identifier: Apache-2.0
#include <dec/harness.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace dec {

double relative_error(const Vector& numeric, const Vector& exact, const Vector& weights)
{
    if (numeric.size() != exact.size() || (weights.size() != 0 && weights.size() != exact.size())) {
        throw Error(ErrorCode::DimensionMismatch, "relative_error needs arrays of equal length");
    }
    const Vector w = weights.size() == 0 ? Vector::Ones(exact.size()) : weights;
    const double den = exact.cwiseAbs2().dot(w);
    if (!(den > 0.0)) throw Error(ErrorCode::ZeroExactNorm, "exact field has zero norm");
    return std::sqrt((numeric - exact).cwiseAbs2().dot(w) / den);
}

double relative_error(const std::vector<Point2>& numeric, const std::vector<Point2>& exact, const Vector& weights)
{
    if (numeric.size() != exact.size()) throw Error(ErrorCode::DimensionMismatch, "vector fields differ in length");
    const Eigen::Index n = static_cast<Eigen::Index>(exact.size());
    if (weights.size() != 0 && weights.size() != n) throw Error(ErrorCode::DimensionMismatch, "weights length");
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = weights.size() == 0 ? 1.0 : weights[i];
        num += w * (numeric[i] - exact[i]).squaredNorm();
        den += w * exact[i].squaredNorm();
    }
    if (!(den > 0.0)) throw Error(ErrorCode::ZeroExactNorm, "exact field has zero norm");
    return std::sqrt(num / den);
}

double convergence_rate(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 2) throw Error(ErrorCode::InsufficientPoints, "need at least two (dx, error) points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [h, e] : points) {
        if (!(h > 0.0) || !(e > 0.0)) throw Error(ErrorCode::InvalidInput, "dx and error must be positive");
        const double x = std::log(h), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 0.0)) throw Error(ErrorCode::InsufficientPoints, "all dx values are equal");
    return (n * sxy - sx * sy) / den;
}

std::vector<double> pairwise_rates(const std::vector<std::pair<double, double>>& points)
{
    std::vector<double> out;
    for (std::size_t i = 1; i < points.size(); ++i) {
        out.push_back(std::log(points[i].second / points[i - 1].second) /
                      std::log(points[i].first / points[i - 1].first));
    }
    return out;
}

std::string_view to_string(MeshKind kind)
{
    switch (kind) {
    case MeshKind::Right: return "right";
    case MeshKind::Acute: return "acute";
    case MeshKind::Delaunay: return "delaunay";
    case MeshKind::Perturbed: return "perturbed";
    case MeshKind::File: return "file";
    }
    return "right";
}

MeshKind mesh_kind_from_name(std::string_view name)
{
    for (MeshKind k : {MeshKind::Right, MeshKind::Acute, MeshKind::Delaunay, MeshKind::Perturbed, MeshKind::File}) {
        if (name == to_string(k)) return k;
    }
    throw Error(ErrorCode::ConfigError, "unknown mesh kind '" + std::string(name) + "'");
}

SimplicialComplex2 build_mesh(const MeshRecipe& recipe, const Domain& fallback)
{
    const Domain d = recipe.domain.value_or(fallback);
    switch (recipe.kind) {
    case MeshKind::Right: return gen_right_mesh(recipe.n, d);
    case MeshKind::Acute: return gen_acute_mesh(recipe.n, d);
    case MeshKind::Delaunay: return gen_delaunay_mesh(recipe.n, d, recipe.seed);
    case MeshKind::Perturbed: {
        PerturbOptions opts;
        opts.target = recipe.non_delaunay_target;
        opts.seed = recipe.seed;
        return perturb_to_non_delaunay(gen_delaunay_mesh(recipe.n, d, recipe.seed), opts).complex;
    }
    case MeshKind::File: {
        const auto& p = recipe.path;
        if (p.size() > 4 && p.substr(p.size() - 4) == ".msh") return import_gmsh_file(p);
        return load_mesh(p);
    }
    }
    throw Error(ErrorCode::ConfigError, "unknown mesh kind");
}

CaseReport run_case(const MeshRecipe& recipe, const std::string& strategy_name, const std::string& problem,
                    const SolverConfig& config, const std::map<std::string, double>& overrides)
{
    // Validate tokens before building anything.
    const CenterStrategy strategy = CenterStrategy::from_name(strategy_name);
    const ExactSolution ex = exact_solution(problem, overrides);

    const auto start = std::chrono::steady_clock::now();
    const SimplicialComplex2 cx = build_mesh(recipe, ex.domain);
    CaseReport r;
    r.mesh_kind = recipe.kind;
    r.n = recipe.n;
    r.stats = mesh_stats(cx);
    r.strategy = std::string(to_string(strategy.kind));
    r.problem = problem;

    if (ex.is_poisson()) {
        const Cochain u = solve_poisson(cx, strategy, ex.f, ex.u, config);
        const DualMesh dual = build_dual(cx, strategy);
        Vector ue(cx.num_triangles());
        for (int t = 0; t < cx.num_triangles(); ++t) ue[t] = ex.u(dual.triangle_centers[t]);
        r.err_psi = relative_error(u.values, ue);
    } else {
        const FlowDiscretization flow(cx, strategy);
        const BoundaryData bc = ex.boundary_data();
        const Vector& areas = flow.cell_areas();
        Vector psi_num;
        double t_final = 0.0;
        if (ex.has_temperature()) {
            const Vector psi0 = flow.sample_vertices(ex.psi, 0.0);
            const Vector theta0 = flow.sample_vertices(ex.theta, 0.0);
            const BoussinesqResult res = solve_boussinesq(flow, ex.fluid, bc, psi0, theta0, ex.t_end, config);
            psi_num = res.psi;
            t_final = res.time;
            r.steps = res.steps;
            r.err_theta = relative_error(res.theta, flow.sample_vertices(ex.theta, t_final), areas);
        } else {
            const NsResult res =
                solve_navier_stokes(flow, ex.fluid, bc, Vector::Zero(cx.num_vertices()), config);
            psi_num = res.psi;
            r.steps = res.steps;
        }
        r.err_psi = relative_error(psi_num, flow.sample_vertices(ex.psi, t_final), areas);
        std::vector<Point2> ue(cx.num_vertices());
        for (int v = 0; v < cx.num_vertices(); ++v) ue[v] = ex.velocity(cx.vertex(v), t_final);
        r.err_u = relative_error(reconstruct_velocity(cx, psi_num), ue, areas);
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string format_double(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    return buf;
}

namespace {

std::string opt(const std::optional<double>& v)
{
    return v ? format_double(*v) : std::string();
}

} // namespace

void write_sweep_csv(std::ostream& out, const std::vector<CaseReport>& reports)
{
    out << "mesh_kind,n,dx_mean,strategy,problem,err_psi,err_u,err_theta,rate_psi,rate_u,rate_theta\n";
    // Group key -> index of the last report in the group.
    std::map<std::string, std::size_t> last;
    auto key = [](const CaseReport& r) { return std::string(to_string(r.mesh_kind)) + '|' + r.strategy + '|' + r.problem; };
    for (std::size_t i = 0; i < reports.size(); ++i) last[key(reports[i])] = i;

    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::optional<double> rate_psi, rate_u, rate_theta;
        if (last[key(r)] == i) {
            std::vector<std::pair<double, double>> ps, us, ts;
            for (std::size_t j = 0; j <= i; ++j) {
                if (key(reports[j]) != key(r)) continue;
                const double h = reports[j].stats.mean_edge_length;
                ps.emplace_back(h, reports[j].err_psi);
                if (reports[j].err_u) us.emplace_back(h, *reports[j].err_u);
                if (reports[j].err_theta) ts.emplace_back(h, *reports[j].err_theta);
            }
            auto rate = [](const std::vector<std::pair<double, double>>& pts) -> std::optional<double> {
                if (pts.size() < 2) return std::nullopt;
                try {
                    return convergence_rate(pts);
                } catch (const Error&) {
                    return std::nullopt;
                }
            };
            rate_psi = rate(ps);
            rate_u = rate(us);
            rate_theta = rate(ts);
        }
        out << to_string(r.mesh_kind) << ',' << r.n << ',' << format_double(r.stats.mean_edge_length) << ','
            << r.strategy << ',' << r.problem << ',' << format_double(r.err_psi) << ',' << opt(r.err_u) << ','
            << opt(r.err_theta) << ',' << opt(rate_psi) << ',' << opt(rate_u) << ',' << opt(rate_theta) << '\n';
    }
}

std::vector<CaseReport> sweep(const std::vector<CaseSpec>& cases, const SolverConfig& config, std::ostream& csv,
                              const std::map<std::string, double>& overrides)
{
    for (const auto& c : cases) {
        CenterStrategy::from_name(c.strategy);
        exact_solution(c.problem, overrides);
    }
    std::vector<CaseReport> reports;
    reports.reserve(cases.size());
    for (const auto& c : cases) reports.push_back(run_case(c.mesh, c.strategy, c.problem, config, overrides));
    write_sweep_csv(csv, reports);
    return reports;
}

std::vector<SweepRow> read_sweep_csv(std::istream& in)
{
    std::vector<SweepRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 11) throw Error(ErrorCode::IoError, "sweep row has " + std::to_string(f.size()) + " fields");
        auto num = [](const std::string& s) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            return std::stod(s);
        };
        SweepRow r;
        r.mesh_kind = f[0];
        r.n = std::stoi(f[1]);
        r.dx_mean = std::stod(f[2]);
        r.strategy = f[3];
        r.problem = f[4];
        r.err_psi = num(f[5]);
        r.err_u = num(f[6]);
        r.err_theta = num(f[7]);
        r.rate_psi = num(f[8]);
        r.rate_u = num(f[9]);
        r.rate_theta = num(f[10]);
        rows.push_back(r);
    }
    return rows;
}

} // namespace dec
