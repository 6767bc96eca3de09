// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <dec/hodge.hpp>

#include <functional>
#include <string_view>
#include <vector>

namespace dec {

struct FluidParams
{
    double rho = 1.0;
    double nu = 1.0;
    double kappa = 0.0;
    double beta = 0.0;
    double g = 0.0;

    /// Throws ConfigError on negative or non-finite values.
    void validate() const;
};

enum class ConvectionScheme { Centered, Upwind };

std::string_view to_string(ConvectionScheme scheme);
ConvectionScheme convection_scheme_from_name(std::string_view name);

struct SolverConfig
{
    /// Time step; 0 selects 0.25 * mean_edge^2 / max(nu, kappa).
    double dt = 0.0;
    int max_steps = 200000;
    double steady_tol = 1e-8;
    ConvectionScheme convection = ConvectionScheme::Centered;
    InverseMode inverse_mode = InverseMode::Elementwise;
    int quad_order = 5;
};

using ScalarField = std::function<double(const Point2&, double)>;
using VectorField = std::function<Point2(const Point2&, double)>;

/// Exact data imposed on the domain boundary. `velocity` supplies the
/// tangential circulation of boundary dual cells; `vorticity_source` is an
/// optional body forcing of the vorticity equation.
struct BoundaryData
{
    ScalarField psi;
    VectorField velocity;
    ScalarField theta;
    ScalarField vorticity_source;
};

/// Solve  -*d*d u = f  (that is, -Laplacian(u) = f) for u on dual vertices
/// (triangle centers), with Dirichlet data g on boundary edge centers.
/// Throws DegenerateDual when the dual mesh fails validation.
Cochain solve_poisson(
    const SimplicialComplex2& cx,
    const CenterStrategy& strategy,
    const std::function<double(const Point2&)>& f,
    const std::function<double(const Point2&)>& g,
    const SolverConfig& config = {});

/// Operators of the stream function / vorticity formulation.
///
/// Stream function and temperature live on primal vertices; vorticity is
/// integrated over the dual cell of each vertex.
class FlowDiscretization
{
public:
    FlowDiscretization(const SimplicialComplex2& cx, const CenterStrategy& strategy);

    const SimplicialComplex2& complex() const { return *m_cx; }
    const DualMesh& dual() const { return m_dual; }
    const HodgeOperators& hodge() const { return m_hodge; }

    /// Lpsi = dual_d1 * H1 * d0 (V x V): integrated Laplacian over dual cells.
    const SparseMatrix& stream_laplacian() const { return m_lpsi; }
    /// Lpsi * diag(1 / cell area): viscous chain acting on pointwise vorticity.
    const SparseMatrix& viscous_operator() const { return m_visc; }
    const Vector& cell_areas() const { return m_areas; }

    const std::vector<int>& interior_vertices() const { return m_interior; }
    const std::vector<int>& boundary_vertices() const { return m_boundary; }

    /// Flux of u = (dpsi/dy, -dpsi/dx) across each dual edge, tail to head.
    Vector dual_edge_flux(const Vector& psi) const;

    /// Integral over each dual cell of div(u q) for a vertex field q.
    Vector advection(const Vector& psi, const Vector& q, ConvectionScheme scheme) const;

    /// Circulation of the exact velocity along the domain boundary pieces of
    /// each boundary dual cell (zero for interior vertices).
    Vector boundary_circulation(const VectorField& u, double t, int order = 5) const;

    /// Dual-cell integrated vorticity: -Lpsi psi + boundary circulation.
    Vector integrated_vorticity(const Vector& psi, const Vector& boundary_circ) const;

    /// Integral of d theta / dx over each dual cell, from dual edge averages.
    Vector buoyancy(const Vector& theta) const;

    Vector integrate_cells(const ScalarField& f, double t, int order = 5) const;

    /// Value at vertices of a sampled field.
    Vector sample_vertices(const ScalarField& f, double t) const;

private:
    const SimplicialComplex2* m_cx;
    DualMesh m_dual;
    HodgeOperators m_hodge;
    SparseMatrix m_lpsi;
    SparseMatrix m_visc;
    Vector m_areas;
    std::vector<int> m_interior;
    std::vector<int> m_boundary;
    /// Barycentric weights of each triangle center.
    std::vector<Eigen::Vector3d> m_center_weights;
    /// Position of each edge center along its edge, 0 at tail.
    std::vector<double> m_edge_param;
};

SparseMatrix assemble_stream_laplacian(const SimplicialComplex2& cx, const HodgeOperators& hodge);

/// Convective term for the vorticity carried by psi, with zero boundary circulation.
Vector convection_term(const FlowDiscretization& flow, const Vector& psi, ConvectionScheme scheme);

struct NsResult
{
    Vector psi;
    int steps = 0;
    bool converged = false;
    std::vector<double> residual_history;
};

NsResult solve_navier_stokes(
    const FlowDiscretization& flow,
    const FluidParams& params,
    const BoundaryData& bc,
    const Vector& psi0,
    const SolverConfig& config = {});

struct BoussinesqResult
{
    Vector psi;
    Vector theta;
    int steps = 0;
    double time = 0.0;
};

BoussinesqResult solve_boussinesq(
    const FlowDiscretization& flow,
    const FluidParams& params,
    const BoundaryData& bc,
    const Vector& psi0,
    const Vector& theta0,
    double t_end,
    const SolverConfig& config = {});

/// Per-vertex velocity u = (dpsi/dy, -dpsi/dx) from per-triangle gradients,
/// averaged with area weights.
std::vector<Point2> reconstruct_velocity(const SimplicialComplex2& cx, const Vector& psi);

double default_time_step(const SimplicialComplex2& cx, const FluidParams& params);

} // namespace dec
