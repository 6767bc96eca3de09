// SPDX-License-Identifier: Apache-2.0
// Command line driver: mesh generation, Hodge checks, solvers, convergence sweeps.
#include <dec/harness.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

using namespace dec;

namespace {

struct Globals
{
    std::string strategy = "barycentric";
    std::string inverse_mode = "elementwise";
    std::string config;
    std::string out;
    std::uint64_t seed = 1;
    bool inverse_mode_set = false;
};

struct MeshArgs
{
    std::string kind = "right";
    int n = 10;
    std::string domain;
    std::string in;
    double ratio = 0.15;
};

Domain parse_domain(const std::string& text)
{
    Domain d;
    char c1, c2, c3;
    std::istringstream in(text);
    if (!(in >> d.x0 >> c1 >> d.y0 >> c2 >> d.x1 >> c3 >> d.y1) || c1 != ',' || c2 != ',' || c3 != ',' ||
        d.x1 <= d.x0 || d.y1 <= d.y0) {
        throw Error(ErrorCode::ConfigError, "domain must be x0,y0,x1,y1 with x0<x1, y0<y1: '" + text + "'");
    }
    return d;
}

/// Output stream for --out, falling back to stdout.
class Output
{
public:
    explicit Output(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        m_file = std::make_unique<std::ofstream>(path);
        if (!*m_file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    }
    std::ostream& stream() { return m_file ? *m_file : std::cout; }

private:
    std::unique_ptr<std::ofstream> m_file;
};

SolverConfig load_config(const Globals& g)
{
    SolverConfig cfg;
    if (!g.config.empty()) {
        std::ifstream in(g.config);
        if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + g.config + "'");
        cfg = solver_config_from(parse_config(in));
    }
    // An explicit flag overrides the config file.
    if (g.inverse_mode_set || g.config.empty()) cfg.inverse_mode = inverse_mode_from_name(g.inverse_mode);
    return cfg;
}

MeshRecipe recipe_from(const MeshArgs& m, const Globals& g)
{
    MeshRecipe r;
    if (!m.in.empty()) {
        r.kind = MeshKind::File;
        r.path = m.in;
        return r;
    }
    r.kind = mesh_kind_from_name(m.kind);
    r.n = m.n;
    r.seed = g.seed;
    r.non_delaunay_target = m.ratio;
    if (!m.domain.empty()) r.domain = parse_domain(m.domain);
    return r;
}

void add_mesh_source(CLI::App* cmd, MeshArgs& m)
{
    cmd->add_option("--kind", m.kind, "right | acute | delaunay | perturbed");
    cmd->add_option("--n", m.n, "Points (right, delaunay) or cells (acute) per side")->check(CLI::PositiveNumber);
    cmd->add_option("--domain", m.domain, "x0,y0,x1,y1");
    cmd->add_option("--ratio", m.ratio, "Target non-Delaunay ratio for perturbed meshes");
    cmd->add_option("--in", m.in, "Mesh file (.msh for Gmsh 2.2, otherwise plain text)");
}

void print_stats(std::ostream& out, const SimplicialComplex2& cx)
{
    const MeshStats s = mesh_stats(cx);
    out << "vertices=" << s.num_vertices << "\nedges=" << s.num_edges << "\ntriangles=" << s.num_triangles
        << "\nmean_edge_length=" << format_double(s.mean_edge_length)
        << "\nmin_edge_length=" << format_double(s.min_edge_length)
        << "\nmax_edge_length=" << format_double(s.max_edge_length)
        << "\nnon_delaunay_percent=" << format_double(100.0 * non_delaunay_ratio(cx))
        << "\nmin_angle_deg=" << format_double(s.min_angle_deg) << "\nmax_angle_deg=" << format_double(s.max_angle_deg)
        << "\nmin_area=" << format_double(s.min_area) << "\nmax_area=" << format_double(s.max_area) << '\n';
}

void hodge_check(const Globals& g, const MeshArgs& m, bool mesh_given)
{
    const OneForm f1{[](const Point2& p) { return Point2(p.x() - p.y(), p.y() - p.x()); }};
    const OneForm f2{[](const Point2& p) { return Point2(p.x() + p.y(), p.x() + p.y()); }};
    std::vector<std::pair<std::string, SimplicialComplex2>> meshes;
    if (mesh_given) {
        meshes.emplace_back("mesh", build_mesh(recipe_from(m, g), Domain{}));
    } else {
        meshes.emplace_back("triangle", build_complex({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}}));
        meshes.emplace_back("right20", gen_right_mesh(20));
    }
    Output out(g.out);
    auto& os = out.stream();
    os << "mesh,dx_mean,strategy,form,error\n";
    for (const auto& [name, cx] : meshes) {
        const double h = mesh_stats(cx).mean_edge_length;
        for (const char* st : {"barycentric", "incentric"}) {
            const DualMesh dual = build_dual(cx, CenterStrategy::from_name(st));
            os << name << ',' << format_double(h) << ',' << st << ",f1," << format_double(hodge_error_l2(f1, cx, dual)) << '\n';
            os << name << ',' << format_double(h) << ',' << st << ",f2," << format_double(hodge_error_l2(f2, cx, dual)) << '\n';
        }
    }
}

void solve(const std::string& family, const std::string& problem, const Globals& g, const MeshArgs& m,
           const std::string& theta_out)
{
    const SolverConfig cfg = load_config(g);
    const CenterStrategy strategy = CenterStrategy::from_name(g.strategy);
    const ExactSolution ex = exact_solution(problem);
    const bool want_poisson = family == "poisson";
    const bool want_heat = family == "boussinesq";
    if (ex.is_poisson() != want_poisson || (!want_poisson && ex.has_temperature() != want_heat)) {
        throw Error(ErrorCode::ConfigError, "problem '" + problem + "' is not a " + family + " problem");
    }
    const SimplicialComplex2 cx = build_mesh(recipe_from(m, g), ex.domain);
    Output out(g.out);

    if (want_poisson) {
        const Cochain u = solve_poisson(cx, strategy, ex.f, ex.u, cfg);
        const DualMesh dual = build_dual(cx, strategy);
        Vector ue(cx.num_triangles());
        for (int t = 0; t < cx.num_triangles(); ++t) ue[t] = ex.u(dual.triangle_centers[t]);
        write_field_csv(out.stream(), dual.triangle_centers, u.values);
        std::cerr << "err_u=" << format_double(relative_error(u.values, ue)) << '\n';
        return;
    }

    const FlowDiscretization flow(cx, strategy);
    const BoundaryData bc = ex.boundary_data();
    Vector psi;
    double t = 0.0;
    if (want_heat) {
        const auto res = solve_boussinesq(flow, ex.fluid, bc, flow.sample_vertices(ex.psi, 0.0),
                                          flow.sample_vertices(ex.theta, 0.0), ex.t_end, cfg);
        psi = res.psi;
        t = res.time;
        std::cerr << "steps=" << res.steps << "\nerr_theta="
                  << format_double(relative_error(res.theta, flow.sample_vertices(ex.theta, t), flow.cell_areas())) << '\n';
        if (!theta_out.empty()) {
            Output th(theta_out);
            write_field_csv(th.stream(), cx.vertices(), res.theta);
        }
    } else {
        const auto res = solve_navier_stokes(flow, ex.fluid, bc, Vector::Zero(cx.num_vertices()), cfg);
        psi = res.psi;
        std::cerr << "steps=" << res.steps << "\nconverged=" << (res.converged ? 1 : 0) << '\n';
    }
    write_field_csv(out.stream(), cx.vertices(), psi);
    std::cerr << "err_psi=" << format_double(relative_error(psi, flow.sample_vertices(ex.psi, t), flow.cell_areas()))
              << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2D discrete exterior calculus toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--strategy", g.strategy, "circumcentric | barycentric | incentric")->capture_default_str();
    app.add_option("--inverse-mode", g.inverse_mode, "elementwise | direct")->capture_default_str();
    app.add_option("--config", g.config, "key=value solver settings file");
    app.add_option("--out", g.out, "Output file (default stdout)");
    app.add_option("--seed", g.seed, "Random seed for generated meshes")->capture_default_str();
    app.fallthrough();

    MeshArgs m;
    auto* mesh = app.add_subcommand("mesh", "Mesh generation and inspection")->require_subcommand(1);
    auto* gen = mesh->add_subcommand("gen", "Generate a mesh");
    add_mesh_source(gen, m);
    auto* perturb = mesh->add_subcommand("perturb", "Perturb vertices to a non-Delaunay ratio");
    perturb->add_option("--in", m.in, "Input mesh")->required();
    perturb->add_option("--ratio", m.ratio, "Target non-Delaunay ratio in [0, 1]")->required();
    auto* stats = mesh->add_subcommand("stats", "Print mesh statistics");
    stats->add_option("--in", m.in, "Input mesh")->required();
    auto* import = mesh->add_subcommand("import", "Convert a Gmsh 2.2 file to the plain mesh format");
    import->add_option("--in", m.in, "Gmsh file")->required();

    auto* hodge = app.add_subcommand("hodge", "Hodge operator checks")->require_subcommand(1);
    auto* check = hodge->add_subcommand("check", "L2 Hodge error of two linear 1-forms");
    add_mesh_source(check, m);

    std::string problem;
    std::string theta_out;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one problem and write the field")->require_subcommand(1);
    std::vector<CLI::App*> solvers;
    for (const char* name : {"poisson", "ns", "boussinesq"}) {
        auto* s = solve_cmd->add_subcommand(name);
        s->add_option("--problem", problem, "Exact solution name")->required();
        add_mesh_source(s, m);
        solvers.push_back(s);
    }
    solvers[2]->add_option("--theta-out", theta_out, "Temperature field output");

    std::vector<int> levels;
    std::vector<std::string> strategies;
    auto* converge = app.add_subcommand("converge", "Convergence sweep written as CSV");
    converge->add_option("--problem", problem, "Exact solution name")->required();
    converge->add_option("--kind", m.kind, "right | acute | delaunay | perturbed");
    converge->add_option("--levels", levels, "Mesh resolutions")->required()->delimiter(',');
    converge->add_option("--strategies", strategies, "Strategies (default: --strategy)")->delimiter(',');
    converge->add_option("--ratio", m.ratio, "Target non-Delaunay ratio for perturbed meshes");

    CLI11_PARSE(app, argc, argv);
    g.inverse_mode_set = app.count("--inverse-mode") > 0;

    try {
        if (gen->parsed()) {
            Output out(g.out);
            write_mesh(out.stream(), build_mesh(recipe_from(m, g), Domain{}));
        } else if (perturb->parsed()) {
            PerturbOptions opts;
            opts.target = m.ratio;
            opts.seed = g.seed;
            const auto res = perturb_to_non_delaunay(load_mesh(m.in), opts);
            Output out(g.out);
            write_mesh(out.stream(), res.complex);
            std::cerr << "non_delaunay_ratio=" << format_double(res.achieved_ratio) << '\n';
        } else if (stats->parsed()) {
            Output out(g.out);
            print_stats(out.stream(), build_mesh(recipe_from(m, g), Domain{}));
        } else if (import->parsed()) {
            Output out(g.out);
            write_mesh(out.stream(), import_gmsh_file(m.in));
        } else if (check->parsed()) {
            hodge_check(g, m, check->count("--kind") + check->count("--in") > 0);
        } else if (converge->parsed()) {
            if (strategies.empty()) strategies.push_back(g.strategy);
            std::vector<CaseSpec> cases;
            for (const auto& s : strategies) {
                for (int n : levels) {
                    MeshRecipe r = recipe_from(m, g);
                    r.n = n;
                    cases.push_back({r, s, problem});
                }
            }
            Output out(g.out);
            sweep(cases, load_config(g), out.stream());
        } else {
            for (auto* s : solvers) {
                if (s->parsed()) solve(s->get_name(), problem, g, m, theta_out);
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
