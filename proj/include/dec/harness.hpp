// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <dec/mesh_gen.hpp>
#include <dec/solvers.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dec {

/// Closed-form reference solution for one of the catalogued problems.
struct ExactSolution
{
    std::string name;
    /// Named parameters (model constants and wave parameters).
    std::map<std::string, double> params;
    Domain domain;
    FluidParams fluid;
    /// Final time for unsteady problems (0 for steady ones).
    double t_end = 0.0;

    /// Poisson problems: u and f = -Laplacian of u.
    std::function<double(const Point2&)> u;
    std::function<double(const Point2&)> f;

    /// Flow problems.
    ScalarField psi;
    VectorField velocity;
    ScalarField theta;
    ScalarField vorticity_source;

    bool is_poisson() const { return static_cast<bool>(u); }
    bool has_temperature() const { return static_cast<bool>(theta); }
    double param(const std::string& key) const;
    BoundaryData boundary_data() const;
};

/// Names: poisson-quadratic, poisson-sinsinh, poiseuille, taylor-green,
/// travel-nu-ne-kappa, travel-nu-eq-kappa. Throws UnknownSolution or
/// ConstraintViolation.
ExactSolution exact_solution(const std::string& name,
                             const std::map<std::string, double>& overrides = {});

std::vector<std::string> exact_solution_names();

/// ||num - exact|| / ||exact|| with ||v||^2 = sum v_i^2 w_i. Empty weights mean 1.
double relative_error(const Vector& numeric, const Vector& exact, const Vector& weights = {});

/// Same for vector fields sampled at vertices.
double relative_error(const std::vector<Point2>& numeric, const std::vector<Point2>& exact,
                      const Vector& weights = {});

/// Least-squares slope of log E against log dx.
double convergence_rate(const std::vector<std::pair<double, double>>& points);

/// Slopes between consecutive points.
std::vector<double> pairwise_rates(const std::vector<std::pair<double, double>>& points);

enum class MeshKind { Right, Acute, Delaunay, Perturbed, File };

std::string_view to_string(MeshKind kind);
MeshKind mesh_kind_from_name(std::string_view name);

struct MeshRecipe
{
    MeshKind kind = MeshKind::Right;
    int n = 10;
    std::optional<Domain> domain;
    /// Perturbed meshes only.
    double non_delaunay_target = 0.15;
    std::uint64_t seed = 1;
    std::string path;
};

SimplicialComplex2 build_mesh(const MeshRecipe& recipe, const Domain& fallback);

struct CaseReport
{
    MeshKind mesh_kind = MeshKind::Right;
    int n = 0;
    MeshStats stats;
    std::string strategy;
    std::string problem;
    double err_psi = 0.0;
    std::optional<double> err_u;
    std::optional<double> err_theta;
    int steps = 0;
    double wall_seconds = 0.0;
};

struct CaseSpec
{
    MeshRecipe mesh;
    std::string strategy;
    std::string problem;
};

/// Build mesh, dual and operators, solve, and measure errors. For Poisson
/// problems err_psi holds the error of the scalar unknown.
CaseReport run_case(const MeshRecipe& recipe, const std::string& strategy,
                    const std::string& problem, const SolverConfig& config = {},
                    const std::map<std::string, double>& overrides = {});

/// Run every case and write the CSV table. Rate columns are filled on the
/// last row of each (mesh kind, strategy, problem) group.
std::vector<CaseReport> sweep(const std::vector<CaseSpec>& cases, const SolverConfig& config,
                              std::ostream& csv,
                              const std::map<std::string, double>& overrides = {});

void write_sweep_csv(std::ostream& out, const std::vector<CaseReport>& reports);

/// One parsed CSV row from write_sweep_csv.
struct SweepRow
{
    std::string mesh_kind;
    int n = 0;
    double dx_mean = 0.0;
    std::string strategy;
    std::string problem;
    std::optional<double> err_psi, err_u, err_theta;
    std::optional<double> rate_psi, rate_u, rate_theta;
};

std::vector<SweepRow> read_sweep_csv(std::istream& in);

/// Flat key=value configuration; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);

/// Apply dt, max_steps, steady_tol, convection, inverse_mode, quad_order.
/// Unknown keys throw ConfigError.
SolverConfig solver_config_from(const std::map<std::string, std::string>& kv,
                                SolverConfig base = {});

/// "id,x,y,value" rows.
void write_field_csv(std::ostream& out, const std::vector<Point2>& points, const Vector& values);

/// Full-precision decimal rendering used by all CSV output.
std::string format_double(double value);

} // namespace dec
