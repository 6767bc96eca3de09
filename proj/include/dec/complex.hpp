// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <dec/core.hpp>

#include <array>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

namespace dec {

/// Edge k of a triangle runs from its vertex k to vertex k+1 (mod 3).
/// `sign[k]` is +1 when that traversal agrees with the global edge orientation.
struct TriangleEdges
{
    std::array<int, 3> edge;
    std::array<int, 3> sign;
};

/// Oriented 2D simplicial complex embedded in the plane.
///
/// Triangles are stored counterclockwise. Edges carry a global orientation
/// (tail, head); `build_complex` uses tail < head and sorts edges
/// lexicographically.
class SimplicialComplex2
{
public:
    SimplicialComplex2() = default;

    /// Build from explicitly oriented edges. Every triangle edge must appear in
    /// `edges` (in either direction) and every listed edge must belong to a
    /// triangle.
    static SimplicialComplex2 from_oriented(
        std::vector<Point2> vertices,
        std::vector<std::array<int, 2>> edges,
        std::vector<std::array<int, 3>> triangles);

    int num_vertices() const { return static_cast<int>(m_vertices.size()); }
    int num_edges() const { return static_cast<int>(m_edges.size()); }
    int num_triangles() const { return static_cast<int>(m_triangles.size()); }

    const std::vector<Point2>& vertices() const { return m_vertices; }
    const std::vector<std::array<int, 2>>& edges() const { return m_edges; }
    const std::vector<std::array<int, 3>>& triangles() const { return m_triangles; }

    const Point2& vertex(int v) const { return m_vertices[v]; }
    const TriangleEdges& triangle_edges(int t) const { return m_tri_edges[t]; }

    /// Triangles incident to edge e (one or two entries).
    const std::vector<int>& edge_triangles(int e) const { return m_edge_tris[e]; }

    bool is_boundary_edge(int e) const { return m_edge_tris[e].size() == 1; }
    bool is_boundary_vertex(int v) const { return m_boundary_vertex[v] != 0; }

    /// Incidence matrices: boundary1 is V x E, boundary2 is E x F.
    const IntSparseMatrix& boundary1() const { return m_b1; }
    const IntSparseMatrix& boundary2() const { return m_b2; }

    Point2 edge_vector(int e) const;
    Point2 edge_midpoint(int e) const;
    double edge_length(int e) const { return edge_vector(e).norm(); }
    double triangle_area(int t) const;
    Point2 triangle_point(int t, int k) const { return m_vertices[m_triangles[t][k]]; }
    double total_area() const;

private:
    void finalize();

    std::vector<Point2> m_vertices;
    std::vector<std::array<int, 2>> m_edges;
    std::vector<std::array<int, 3>> m_triangles;
    std::vector<TriangleEdges> m_tri_edges;
    std::vector<std::vector<int>> m_edge_tris;
    std::vector<char> m_boundary_vertex;
    IntSparseMatrix m_b1;
    IntSparseMatrix m_b2;
};

/// Build a complex from coordinates and triangle index triples.
///
/// Triangles are reoriented counterclockwise. Throws Error with
/// IndexOutOfRange, DuplicateTriangle, DegenerateTriangle or NonManifoldEdge.
SimplicialComplex2 build_complex(
    std::vector<Point2> vertices,
    std::vector<std::array<int, 3>> triangles);

enum class Carrier { Primal, Dual };

/// Exterior derivative of the given degree (0 or 1).
/// Primal: d0 = B1^T (E x V), d1 = B2^T (F x E).
/// Dual:   d0 = B2 (E x F), d1 = -B1 (V x E), with counterclockwise dual cells.
SparseMatrix exterior_derivative(const SimplicialComplex2& cx, int degree, Carrier carrier);

/// Number of k-cells of the given carrier.
int cell_count(const SimplicialComplex2& cx, int degree, Carrier carrier);

struct Cochain
{
    int degree = 0;
    Carrier carrier = Carrier::Primal;
    Vector values;
};

struct MeshStats
{
    int num_vertices = 0;
    int num_edges = 0;
    int num_triangles = 0;
    double mean_edge_length = 0.0;
    double min_edge_length = 0.0;
    double max_edge_length = 0.0;
    double min_area = 0.0;
    double max_area = 0.0;
    double min_angle_deg = 0.0;
    double max_angle_deg = 0.0;
};

MeshStats mesh_stats(const SimplicialComplex2& cx);

/// Interior angles (radians) of triangle t at its vertices 0, 1, 2.
std::array<double, 3> triangle_angles(const SimplicialComplex2& cx, int t);

/// Plain text mesh: header "V E F" (E may be 0), V lines "x y", F lines "i j k".
SimplicialComplex2 read_mesh(std::istream& in);
void write_mesh(std::ostream& out, const SimplicialComplex2& cx);
SimplicialComplex2 load_mesh(const std::string& path);
void save_mesh(const std::string& path, const SimplicialComplex2& cx);

} // namespace dec
