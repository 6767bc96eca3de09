// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <dec/complex.hpp>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dec {

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c);
Point2 barycenter(const Point2& a, const Point2& b, const Point2& c);
Point2 incenter(const Point2& a, const Point2& b, const Point2& c);

enum class CenterKind { Circumcentric, Barycentric, Incentric, Custom };

/// Rule placing the dual vertex of each triangle and the dual point on each edge.
struct CenterStrategy
{
    using TriangleRule = std::function<Point2(const Point2&, const Point2&, const Point2&)>;
    using EdgeRule = std::function<Point2(const Point2&, const Point2&)>;

    CenterKind kind = CenterKind::Barycentric;
    TriangleRule triangle_center;
    EdgeRule edge_center;

    static CenterStrategy circumcentric();
    static CenterStrategy barycentric();
    static CenterStrategy incentric();
    /// Edge rule defaults to the midpoint.
    static CenterStrategy custom(TriangleRule tri, EdgeRule edge = {});
    /// "circumcentric" | "barycentric" | "incentric" (also "circ", "bary", "inc").
    static CenterStrategy from_name(std::string_view name);
};

std::string_view to_string(CenterKind kind);

/// Half of a dual edge: the segment between the dual vertex of a triangle and
/// the dual point of one of its edges, oriented by rotating the primal edge
/// by +90 degrees.
struct HalfDualEdge
{
    Point2 start;
    Point2 end;
    /// Length, negative when the segment points against the rotated edge.
    double signed_length = 0.0;

    Point2 vector() const { return end - start; }
};

/// Dual geometry of a complex for one center strategy.
struct DualMesh
{
    CenterKind kind = CenterKind::Barycentric;
    std::vector<Point2> triangle_centers;
    std::vector<Point2> edge_centers;
    /// Indexed 3 * t + k for local edge k of triangle t.
    std::vector<HalfDualEdge> half_edges;
    /// Sum of the half dual edge vectors of each edge.
    std::vector<Point2> dual_edge_vectors;
    std::vector<double> dual_edge_lengths;
    /// Signed area of the dual cell around each vertex.
    std::vector<double> cell_areas;

    const HalfDualEdge& half(int t, int k) const { return half_edges[3 * t + k]; }
};

DualMesh build_dual(const SimplicialComplex2& cx, const CenterStrategy& strategy);

struct DualReport
{
    /// Edges whose dual length is below min_length_ratio times the primal length.
    std::vector<int> short_edges;
    /// Edges whose dual edge points against the rotated primal edge. These are
    /// legal (signed lengths) and reported for information only.
    std::vector<int> reversed_edges;
    /// Triangles whose local 1-form Hodge is singular or badly conditioned.
    std::vector<int> singular_triangles;

    bool ok() const
    {
        return short_edges.empty() && singular_triangles.empty();
    }
    std::string summary() const;
};

DualReport validate_dual(
    const SimplicialComplex2& cx,
    const DualMesh& dual,
    double min_length_ratio = 1e-8);

} // namespace dec
