// SPDX-License-Identifier: Apache-2.0
#include <dec/solvers.hpp>

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

namespace dec {

void FluidParams::validate() const
{
    for (double v : {rho, nu, kappa, beta, g}) {
        if (!std::isfinite(v)) throw Error(ErrorCode::ConfigError, "fluid parameter is not finite");
    }
    if (rho <= 0.0) throw Error(ErrorCode::ConfigError, "rho must be positive");
    if (nu < 0.0 || kappa < 0.0) throw Error(ErrorCode::ConfigError, "nu and kappa must be non-negative");
}

std::string_view to_string(ConvectionScheme scheme)
{
    return scheme == ConvectionScheme::Centered ? "centered" : "upwind";
}

ConvectionScheme convection_scheme_from_name(std::string_view name)
{
    if (name == "centered") return ConvectionScheme::Centered;
    if (name == "upwind") return ConvectionScheme::Upwind;
    throw Error(ErrorCode::ConfigError, "unknown convection scheme '" + std::string(name) + "'");
}

double default_time_step(const SimplicialComplex2& cx, const FluidParams& params)
{
    const double h = mesh_stats(cx).mean_edge_length;
    const double diff = std::max(params.nu, params.kappa);
    if (!(diff > 0.0)) throw Error(ErrorCode::ConfigError, "default time step needs nu or kappa > 0");
    return 0.25 * h * h / diff;
}

namespace {

using LU = Eigen::SparseLU<SparseMatrix>;

void factorize(LU& lu, SparseMatrix& a, const char* what)
{
    a.makeCompressed();
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, std::string(what) + " is singular");
}

// Rows and columns of `a` restricted to index lists.
SparseMatrix restrict(const SparseMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols)
{
    std::vector<int> col_map(a.cols(), -1), row_map(a.rows(), -1);
    for (std::size_t i = 0; i < rows.size(); ++i) row_map[rows[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < cols.size(); ++j) col_map[cols[j]] = static_cast<int>(j);
    std::vector<Triplet> trip;
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
            const int r = row_map[it.row()], c = col_map[it.col()];
            if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
        }
    }
    SparseMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

Vector gather(const Vector& v, const std::vector<int>& idx)
{
    Vector out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
    return out;
}

void scatter(Vector& v, const std::vector<int>& idx, const Vector& values)
{
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = values[i];
}

void check_finite(const Vector& v, int step)
{
    if (!v.allFinite()) throw Error(ErrorCode::NonFinite, "solution diverged at step " + std::to_string(step));
}

// Implicit update for interior rows of  K x = rhs  with boundary values fixed.
class InteriorSystem
{
public:
    InteriorSystem(const SparseMatrix& k, const std::vector<int>& interior, const std::vector<int>& boundary,
                   const char* what)
        : m_interior(interior)
        , m_boundary(boundary)
        , m_kib(restrict(k, interior, boundary))
    {
        SparseMatrix kii = restrict(k, interior, interior);
        factorize(m_lu, kii, what);
    }

    // rhs holds every row; x carries the boundary values and receives the interior ones.
    void solve(const Vector& rhs, Vector& x) const
    {
        Vector r = gather(rhs, m_interior);
        if (!m_boundary.empty()) r -= m_kib * gather(x, m_boundary);
        scatter(x, m_interior, m_lu.solve(r));
    }

private:
    std::vector<int> m_interior;
    std::vector<int> m_boundary;
    SparseMatrix m_kib;
    LU m_lu;
};

SparseMatrix diagonal(const Vector& d)
{
    SparseMatrix m(d.size(), d.size());
    std::vector<Triplet> trip;
    trip.reserve(d.size());
    for (int i = 0; i < d.size(); ++i) trip.emplace_back(i, i, d[i]);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// Backward Euler in the integrated vorticity Z = -L psi + b:
//   (Z' - Z) / dt = nu L A^{-1} Z' + forcing.
SparseMatrix momentum_matrix(const FlowDiscretization& flow, double nu, double dt)
{
    const SparseMatrix& l = flow.stream_laplacian();
    SparseMatrix k = SparseMatrix(flow.viscous_operator() * l) * nu;
    k -= l * (1.0 / dt);
    return k;
}

Vector momentum_rhs(const FlowDiscretization& flow, double nu, double dt, const Vector& z,
                    const Vector& circ_next, const Vector& forcing)
{
    return (z - circ_next) / dt + nu * (flow.viscous_operator() * circ_next) + forcing;
}

} // namespace

Cochain solve_poisson(const SimplicialComplex2& cx, const CenterStrategy& strategy,
                      const std::function<double(const Point2&)>& f,
                      const std::function<double(const Point2&)>& g, const SolverConfig& config)
{
    const DualMesh dual = build_dual(cx, strategy);
    const DualReport report = validate_dual(cx, dual);
    if (!report.ok()) {
        throw Error(ErrorCode::DegenerateDual, std::string(to_string(strategy.kind)) + " dual: " + report.summary());
    }
    const int ne = cx.num_edges();
    const int nf = cx.num_triangles();
    const SparseMatrix b2 = cx.boundary2().cast<double>();
    const SparseMatrix h2 = assemble_hodge2(cx);

    // Ghost values at boundary edge centers enter the dual gradient as -b.
    Vector ghost = Vector::Zero(ne);
    for (int e = 0; e < ne; ++e) {
        if (!cx.is_boundary_edge(e)) continue;
        const int t = cx.edge_triangles(e)[0];
        const auto& te = cx.triangle_edges(t);
        const int k = te.edge[0] == e ? 0 : (te.edge[1] == e ? 1 : 2);
        ghost[e] = te.sign[k] * g(dual.edge_centers[e]);
    }
    Vector rhs(nf);
    for (int t = 0; t < nf; ++t) rhs[t] = f(dual.triangle_centers[t]);

    Cochain u;
    u.degree = 0;
    u.carrier = Carrier::Dual;
    LU lu;
    if (config.inverse_mode == InverseMode::Elementwise) {
        // H2 B2^T H1^{-1} (B2 u - ghost) = f
        const SparseMatrix hinv = elementwise_inverse_hodge1(cx, dual);
        const SparseMatrix chain = h2 * SparseMatrix(b2.transpose()) * hinv;
        SparseMatrix a = chain * b2;
        factorize(lu, a, "Poisson system");
        u.values = lu.solve(Vector(rhs + chain * ghost));
    } else {
        // Mixed form with the flux a = H1^{-1}(B2 u - ghost) kept as an unknown.
        const SparseMatrix h1 = assemble_hodge1(cx, dual);
        const SparseMatrix lower = h2 * SparseMatrix(b2.transpose());
        std::vector<Triplet> trip;
        for (int k = 0; k < h1.outerSize(); ++k) {
            for (SparseMatrix::InnerIterator it(h1, k); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
        }
        for (int k = 0; k < b2.outerSize(); ++k) {
            for (SparseMatrix::InnerIterator it(b2, k); it; ++it) trip.emplace_back(it.row(), ne + it.col(), -it.value());
        }
        for (int k = 0; k < lower.outerSize(); ++k) {
            for (SparseMatrix::InnerIterator it(lower, k); it; ++it) trip.emplace_back(ne + it.row(), it.col(), it.value());
        }
        SparseMatrix a(ne + nf, ne + nf);
        a.setFromTriplets(trip.begin(), trip.end());
        factorize(lu, a, "mixed Poisson system");
        Vector b(ne + nf);
        b << -ghost, rhs;
        u.values = lu.solve(b).tail(nf);
    }
    if (!u.values.allFinite()) throw Error(ErrorCode::SingularSystem, "Poisson solution is not finite");
    return u;
}

NsResult solve_navier_stokes(const FlowDiscretization& flow, const FluidParams& params, const BoundaryData& bc,
                             const Vector& psi0, const SolverConfig& config)
{
    params.validate();
    const auto& cx = flow.complex();
    if (psi0.size() != cx.num_vertices()) throw Error(ErrorCode::DimensionMismatch, "psi0 has the wrong size");
    const double dt = config.dt > 0.0 ? config.dt : default_time_step(cx, params);

    // Boundary data is steady here.
    const Vector circ = flow.boundary_circulation(bc.velocity, 0.0, config.quad_order);
    const Vector source = bc.vorticity_source ? flow.integrate_cells(bc.vorticity_source, 0.0, config.quad_order)
                                              : Vector::Zero(cx.num_vertices());
    Vector psi = psi0;
    if (bc.psi) {
        for (int v : flow.boundary_vertices()) psi[v] = bc.psi(cx.vertex(v), 0.0);
    }
    const InteriorSystem system(momentum_matrix(flow, params.nu, dt), flow.interior_vertices(),
                                flow.boundary_vertices(), "momentum system");

    NsResult result;
    Vector z = flow.integrated_vorticity(psi, circ);
    for (int step = 1; step <= config.max_steps; ++step) {
        const Vector w = z.cwiseQuotient(flow.cell_areas());
        const Vector forcing = source - flow.advection(psi, w, config.convection);
        Vector next = psi;
        system.solve(momentum_rhs(flow, params.nu, dt, z, circ, forcing), next);
        check_finite(next, step);
        const double scale = std::max(next.cwiseAbs().maxCoeff(), 1e-300);
        const double change = (next - psi).cwiseAbs().maxCoeff() / (dt * scale);
        result.residual_history.push_back(change);
        psi = std::move(next);
        z = flow.integrated_vorticity(psi, circ);
        result.steps = step;
        if (change < config.steady_tol) {
            result.converged = true;
            break;
        }
    }
    result.psi = std::move(psi);
    return result;
}

BoussinesqResult solve_boussinesq(const FlowDiscretization& flow, const FluidParams& params, const BoundaryData& bc,
                                  const Vector& psi0, const Vector& theta0, double t_end,
                                  const SolverConfig& config)
{
    params.validate();
    const auto& cx = flow.complex();
    const int nv = cx.num_vertices();
    if (psi0.size() != nv || theta0.size() != nv) {
        throw Error(ErrorCode::DimensionMismatch, "initial fields have the wrong size");
    }
    if (!(t_end >= 0.0)) throw Error(ErrorCode::ConfigError, "end time must be non-negative");
    const double dt_target = config.dt > 0.0 ? config.dt : default_time_step(cx, params);
    const int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt_target - 1e-9)));
    const double dt = t_end > 0.0 ? t_end / steps : 0.0;

    BoussinesqResult result;
    result.psi = psi0;
    result.theta = theta0;
    if (t_end == 0.0) return result;

    const InteriorSystem momentum(momentum_matrix(flow, params.nu, dt), flow.interior_vertices(),
                                  flow.boundary_vertices(), "momentum system");
    SparseMatrix heat = diagonal(flow.cell_areas()) * (1.0 / dt);
    heat -= flow.stream_laplacian() * params.kappa;
    const InteriorSystem temperature(heat, flow.interior_vertices(), flow.boundary_vertices(), "temperature system");

    const double buoy = params.beta * params.g;
    Vector& psi = result.psi;
    Vector& theta = result.theta;
    Vector z = flow.integrated_vorticity(psi, flow.boundary_circulation(bc.velocity, 0.0, config.quad_order));
    for (int step = 1; step <= steps; ++step) {
        const double t_next = step * dt;
        const Vector w = z.cwiseQuotient(flow.cell_areas());
        Vector forcing = -flow.advection(psi, w, config.convection);
        if (buoy != 0.0) forcing -= buoy * flow.buoyancy(theta);
        if (bc.vorticity_source) forcing += flow.integrate_cells(bc.vorticity_source, t_next - dt, config.quad_order);
        const Vector circ = flow.boundary_circulation(bc.velocity, t_next, config.quad_order);

        Vector psi_next = psi;
        if (bc.psi) {
            for (int v : flow.boundary_vertices()) psi_next[v] = bc.psi(cx.vertex(v), t_next);
        }
        momentum.solve(momentum_rhs(flow, params.nu, dt, z, circ, forcing), psi_next);

        Vector theta_next = theta;
        if (bc.theta) {
            for (int v : flow.boundary_vertices()) theta_next[v] = bc.theta(cx.vertex(v), t_next);
        }
        const Vector heat_rhs =
            flow.cell_areas().cwiseProduct(theta) / dt - flow.advection(psi, theta, config.convection);
        temperature.solve(heat_rhs, theta_next);

        check_finite(psi_next, step);
        check_finite(theta_next, step);
        psi = std::move(psi_next);
        theta = std::move(theta_next);
        z = flow.integrated_vorticity(psi, circ);
        result.steps = step;
        result.time = t_next;
    }
    return result;
}

std::vector<Point2> reconstruct_velocity(const SimplicialComplex2& cx, const Vector& psi)
{
    std::vector<Point2> sum(cx.num_vertices(), Point2::Zero());
    std::vector<double> weight(cx.num_vertices(), 0.0);
    for (int t = 0; t < cx.num_triangles(); ++t) {
        const auto& tri = cx.triangles()[t];
        const Point2 p0 = cx.vertex(tri[0]);
        Eigen::Matrix2d m;
        m.row(0) = (cx.vertex(tri[1]) - p0).transpose();
        m.row(1) = (cx.vertex(tri[2]) - p0).transpose();
        const double det = m.determinant();
        if (std::abs(det) <= 0.0) throw Error(ErrorCode::DegenerateTriangle, "triangle " + std::to_string(t));
        const Point2 grad = m.inverse() * Point2(psi[tri[1]] - psi[tri[0]], psi[tri[2]] - psi[tri[0]]);
        const Point2 u(grad.y(), -grad.x());
        const double a = cx.triangle_area(t);
        for (int v : tri) {
            sum[v] += a * u;
            weight[v] += a;
        }
    }
    for (int v = 0; v < cx.num_vertices(); ++v) {
        if (weight[v] > 0.0) sum[v] /= weight[v];
    }
    return sum;
}

} // namespace dec
