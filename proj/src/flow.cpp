// SPDX-License-Identifier: Apache-2.0
#include <dec/solvers.hpp>

#include <cmath>

namespace dec {

namespace {

Eigen::Vector3d barycentric_coords(const Point2& a, const Point2& b, const Point2& c, const Point2& p)
{
    const double area2 = cross(b - a, c - a);
    const double la = cross(b - p, c - p) / area2;
    const double lb = cross(c - p, a - p) / area2;
    return {la, lb, 1.0 - la - lb};
}

} // namespace

SparseMatrix assemble_stream_laplacian(const SimplicialComplex2& cx, const HodgeOperators& hodge)
{
    const SparseMatrix d0 = exterior_derivative(cx, 0, Carrier::Primal);
    const SparseMatrix dd1 = exterior_derivative(cx, 1, Carrier::Dual);
    return SparseMatrix(dd1 * (hodge.h1 * d0));
}

FlowDiscretization::FlowDiscretization(const SimplicialComplex2& cx, const CenterStrategy& strategy)
    : m_cx(&cx)
    , m_dual(build_dual(cx, strategy))
{
    const DualReport report = validate_dual(cx, m_dual);
    if (!report.ok()) {
        throw Error(ErrorCode::DegenerateDual, std::string(to_string(strategy.kind)) + " dual: " + report.summary());
    }
    m_hodge = build_hodge(cx, m_dual);
    m_lpsi = assemble_stream_laplacian(cx, m_hodge);

    const int nv = cx.num_vertices();
    m_areas.resize(nv);
    std::vector<Triplet> trip;
    trip.reserve(nv);
    for (int v = 0; v < nv; ++v) {
        m_areas[v] = m_dual.cell_areas[v];
        if (!(m_areas[v] > 0.0)) {
            throw Error(ErrorCode::DegenerateDual, "dual cell of vertex " + std::to_string(v) + " has no area");
        }
        trip.emplace_back(v, v, 1.0 / m_areas[v]);
        (cx.is_boundary_vertex(v) ? m_boundary : m_interior).push_back(v);
    }
    SparseMatrix inv_area(nv, nv);
    inv_area.setFromTriplets(trip.begin(), trip.end());
    m_visc = m_lpsi * inv_area;

    m_center_weights.resize(cx.num_triangles());
    for (int t = 0; t < cx.num_triangles(); ++t) {
        m_center_weights[t] = barycentric_coords(cx.triangle_point(t, 0), cx.triangle_point(t, 1),
                                                 cx.triangle_point(t, 2), m_dual.triangle_centers[t]);
    }
    m_edge_param.resize(cx.num_edges());
    for (int e = 0; e < cx.num_edges(); ++e) {
        const Point2 ev = cx.edge_vector(e);
        m_edge_param[e] = (m_dual.edge_centers[e] - cx.vertex(cx.edges()[e][0])).dot(ev) / ev.squaredNorm();
    }
}

Vector FlowDiscretization::dual_edge_flux(const Vector& psi) const
{
    const auto& cx = *m_cx;
    Vector q = Vector::Zero(cx.num_edges());
    for (int t = 0; t < cx.num_triangles(); ++t) {
        const auto& tri = cx.triangles()[t];
        const auto& w = m_center_weights[t];
        const double at_center = w[0] * psi[tri[0]] + w[1] * psi[tri[1]] + w[2] * psi[tri[2]];
        const auto& te = cx.triangle_edges(t);
        for (int k = 0; k < 3; ++k) {
            const int e = te.edge[k];
            const double s = m_edge_param[e];
            const double at_edge = (1.0 - s) * psi[cx.edges()[e][0]] + s * psi[cx.edges()[e][1]];
            // Flux across a segment is the jump of psi from its start to its end.
            q[e] += te.sign[k] > 0 ? at_center - at_edge : at_edge - at_center;
        }
    }
    return q;
}

Vector FlowDiscretization::advection(const Vector& psi, const Vector& qv, ConvectionScheme scheme) const
{
    const auto& cx = *m_cx;
    const Vector flux = dual_edge_flux(psi);
    Vector out = Vector::Zero(cx.num_vertices());
    for (int e = 0; e < cx.num_edges(); ++e) {
        const int a = cx.edges()[e][0], b = cx.edges()[e][1];
        double carried;
        if (scheme == ConvectionScheme::Centered) {
            carried = 0.5 * (qv[a] + qv[b]);
        } else {
            carried = flux[e] >= 0.0 ? qv[a] : qv[b];
        }
        // Flux leaves the cell of the tail and enters the cell of the head.
        const double f = flux[e] * carried;
        out[a] += f;
        out[b] -= f;
    }
    return out;
}

Vector FlowDiscretization::boundary_circulation(const VectorField& u, double t, int order) const
{
    const auto& cx = *m_cx;
    Vector out = Vector::Zero(cx.num_vertices());
    if (!u) return out;
    const OneForm w{[&u, t](const Point2& p) { return u(p, t); }};
    for (int e = 0; e < cx.num_edges(); ++e) {
        if (!cx.is_boundary_edge(e)) continue;
        const int tri = cx.edge_triangles(e)[0];
        const auto& te = cx.triangle_edges(tri);
        const int k = te.edge[0] == e ? 0 : (te.edge[1] == e ? 1 : 2);
        // Follow the triangle's own direction, which runs counterclockwise along the domain.
        const int p = cx.triangles()[tri][k];
        const int q = cx.triangles()[tri][(k + 1) % 3];
        const Point2& m = m_dual.edge_centers[e];
        out[p] += integrate_one_form(w, cx.vertex(p), m, order);
        out[q] += integrate_one_form(w, m, cx.vertex(q), order);
    }
    return out;
}

Vector FlowDiscretization::integrated_vorticity(const Vector& psi, const Vector& boundary_circ) const
{
    return -(m_lpsi * psi) + boundary_circ;
}

Vector FlowDiscretization::buoyancy(const Vector& theta) const
{
    const auto& cx = *m_cx;
    Vector out = Vector::Zero(cx.num_vertices());
    for (int e = 0; e < cx.num_edges(); ++e) {
        const int a = cx.edges()[e][0], b = cx.edges()[e][1];
        const double f = 0.5 * (theta[a] + theta[b]) * m_dual.dual_edge_vectors[e].y();
        // The rotated edge circles the tail counterclockwise and the head clockwise.
        out[a] += f;
        out[b] -= f;
    }
    return out;
}

Vector FlowDiscretization::integrate_cells(const ScalarField& f, double t, int order) const
{
    return integrate_dual_cells(*m_cx, m_dual, [&f, t](const Point2& p) { return f(p, t); }, order);
}

Vector FlowDiscretization::sample_vertices(const ScalarField& f, double t) const
{
    Vector out(m_cx->num_vertices());
    for (int v = 0; v < m_cx->num_vertices(); ++v) out[v] = f(m_cx->vertex(v), t);
    return out;
}

Vector convection_term(const FlowDiscretization& flow, const Vector& psi, ConvectionScheme scheme)
{
    const Vector z = flow.integrated_vorticity(psi, Vector::Zero(psi.size()));
    const Vector w = z.cwiseQuotient(flow.cell_areas());
    return flow.advection(psi, w, scheme);
}

} // namespace dec
