// SPDX-License-Identifier: Apache-2.0
#include <dec/dual_mesh.hpp>
#include <dec/hodge.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dec {

namespace {

void require_triangle(const Point2& a, const Point2& b, const Point2& c)
{
    const double scale = std::max({(b - a).squaredNorm(), (c - a).squaredNorm(), (c - b).squaredNorm()});
    if (!(std::abs(cross(b - a, c - a)) > 1e-14 * scale)) {
        throw Error(ErrorCode::DegenerateTriangle, "triangle corners are collinear");
    }
}

} // namespace

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c)
{
    require_triangle(a, b, c);
    const Point2 u = b - a;
    const Point2 w = c - a;
    const double d = 2.0 * cross(u, w);
    const double uu = u.squaredNorm();
    const double ww = w.squaredNorm();
    return a + Point2(w.y() * uu - u.y() * ww, u.x() * ww - w.x() * uu) / d;
}

Point2 barycenter(const Point2& a, const Point2& b, const Point2& c)
{
    require_triangle(a, b, c);
    return (a + b + c) / 3.0;
}

Point2 incenter(const Point2& a, const Point2& b, const Point2& c)
{
    require_triangle(a, b, c);
    const double la = (b - c).norm();
    const double lb = (c - a).norm();
    const double lc = (a - b).norm();
    return (la * a + lb * b + lc * c) / (la + lb + lc);
}

namespace {

Point2 midpoint(const Point2& a, const Point2& b)
{
    return 0.5 * (a + b);
}

} // namespace

CenterStrategy CenterStrategy::circumcentric()
{
    return {CenterKind::Circumcentric, circumcenter, midpoint};
}

CenterStrategy CenterStrategy::barycentric()
{
    return {CenterKind::Barycentric, barycenter, midpoint};
}

CenterStrategy CenterStrategy::incentric()
{
    return {CenterKind::Incentric, incenter, midpoint};
}

CenterStrategy CenterStrategy::custom(TriangleRule tri, EdgeRule edge)
{
    if (!tri) throw Error(ErrorCode::InvalidInput, "custom strategy needs a triangle rule");
    return {CenterKind::Custom, std::move(tri), edge ? std::move(edge) : EdgeRule(midpoint)};
}

CenterStrategy CenterStrategy::from_name(std::string_view name)
{
    if (name == "circumcentric" || name == "circ") return circumcentric();
    if (name == "barycentric" || name == "bary") return barycentric();
    if (name == "incentric" || name == "inc") return incentric();
    throw Error(ErrorCode::ConfigError, "unknown center strategy '" + std::string(name) + "'");
}

std::string_view to_string(CenterKind kind)
{
    switch (kind) {
    case CenterKind::Circumcentric: return "circumcentric";
    case CenterKind::Barycentric: return "barycentric";
    case CenterKind::Incentric: return "incentric";
    case CenterKind::Custom: return "custom";
    }
    return "custom";
}

DualMesh build_dual(const SimplicialComplex2& cx, const CenterStrategy& strategy)
{
    DualMesh d;
    d.kind = strategy.kind;
    const int nf = cx.num_triangles();
    const int ne = cx.num_edges();

    d.triangle_centers.resize(nf);
    for (int t = 0; t < nf; ++t) {
        d.triangle_centers[t] = strategy.triangle_center(cx.triangle_point(t, 0), cx.triangle_point(t, 1),
                                                         cx.triangle_point(t, 2));
    }
    d.edge_centers.resize(ne);
    for (int e = 0; e < ne; ++e) {
        d.edge_centers[e] = strategy.edge_center(cx.vertex(cx.edges()[e][0]), cx.vertex(cx.edges()[e][1]));
    }

    d.half_edges.resize(3 * nf);
    d.dual_edge_vectors.assign(ne, Point2::Zero());
    d.dual_edge_lengths.assign(ne, 0.0);
    for (int t = 0; t < nf; ++t) {
        const auto& te = cx.triangle_edges(t);
        for (int k = 0; k < 3; ++k) {
            const int e = te.edge[k];
            HalfDualEdge& h = d.half_edges[3 * t + k];
            // The rotated edge points into the triangle lying on its left.
            if (te.sign[k] > 0) {
                h.start = d.edge_centers[e];
                h.end = d.triangle_centers[t];
            } else {
                h.start = d.triangle_centers[t];
                h.end = d.edge_centers[e];
            }
            const Point2 v = h.vector();
            h.signed_length = cross(cx.edge_vector(e), v) >= 0.0 ? v.norm() : -v.norm();
            d.dual_edge_vectors[e] += v;
            d.dual_edge_lengths[e] += h.signed_length;
        }
    }

    d.cell_areas.assign(cx.num_vertices(), 0.0);
    for (int t = 0; t < nf; ++t) {
        const auto& te = cx.triangle_edges(t);
        const Point2& c = d.triangle_centers[t];
        for (int k = 0; k < 3; ++k) {
            const Point2 p = cx.triangle_point(t, k);
            const Point2& m_next = d.edge_centers[te.edge[k]];
            const Point2& m_prev = d.edge_centers[te.edge[(k + 2) % 3]];
            d.cell_areas[cx.triangles()[t][k]] += 0.5 * (cross(m_next - p, c - p) + cross(c - p, m_prev - p));
        }
    }
    return d;
}

DualReport validate_dual(const SimplicialComplex2& cx, const DualMesh& dual, double min_length_ratio)
{
    DualReport r;
    for (int e = 0; e < cx.num_edges(); ++e) {
        const double len = dual.dual_edge_lengths[e];
        if (std::abs(len) < min_length_ratio * cx.edge_length(e)) {
            r.short_edges.push_back(e);
        } else if (len < 0) {
            r.reversed_edges.push_back(e);
        }
    }
    for (int t = 0; t < cx.num_triangles(); ++t) {
        const LocalHodge1 local = local_hodge1(cx, dual, t);
        if (condition_number(local.matrix) > kConditionLimit) r.singular_triangles.push_back(t);
    }
    return r;
}

std::string DualReport::summary() const
{
    std::ostringstream os;
    os << short_edges.size() << " short dual edges, " << reversed_edges.size()
       << " reversed dual edges, " << singular_triangles.size() << " singular local Hodge matrices";
    return os.str();
}

} // namespace dec
