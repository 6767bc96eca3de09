// SPDX-License-Identifier: Apache-2.0
#include <dec/complex.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dec {

namespace {

std::int64_t edge_key(int a, int b, int nv)
{
    if (a > b) std::swap(a, b);
    return static_cast<std::int64_t>(a) * nv + b;
}

double signed_double_area(const Point2& a, const Point2& b, const Point2& c)
{
    return cross(b - a, c - a);
}

double bbox_diagonal_sq(const std::vector<Point2>& pts)
{
    if (pts.empty()) return 0.0;
    Point2 lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).squaredNorm();
}

// Check indices, reject degenerate and repeated triangles, orient counterclockwise.
void validate_triangles(const std::vector<Point2>& verts, std::vector<std::array<int, 3>>& tris)
{
    const int nv = static_cast<int>(verts.size());
    for (const auto& p : verts) {
        if (!std::isfinite(p.x()) || !std::isfinite(p.y())) {
            throw Error(ErrorCode::NonFinite, "vertex coordinate is not finite");
        }
    }
    const double tol = 1e-14 * bbox_diagonal_sq(verts);
    std::set<std::array<int, 3>> seen;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        auto& tri = tris[t];
        for (int v : tri) {
            if (v < 0 || v >= nv) {
                throw Error(ErrorCode::IndexOutOfRange,
                            "triangle " + std::to_string(t) + " references vertex " +
                                std::to_string(v));
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw Error(ErrorCode::DegenerateTriangle,
                        "triangle " + std::to_string(t) + " repeats a vertex");
        }
        const double a2 = signed_double_area(verts[tri[0]], verts[tri[1]], verts[tri[2]]);
        if (std::abs(a2) <= tol) {
            throw Error(ErrorCode::DegenerateTriangle,
                        "triangle " + std::to_string(t) + " has zero area");
        }
        if (a2 < 0) std::swap(tri[1], tri[2]);
        auto key = tri;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) {
            throw Error(ErrorCode::DuplicateTriangle,
                        "triangle " + std::to_string(t) + " appears twice");
        }
    }
}

} // namespace

SimplicialComplex2 build_complex(std::vector<Point2> vertices,
                                 std::vector<std::array<int, 3>> triangles)
{
    validate_triangles(vertices, triangles);
    const int nv = static_cast<int>(vertices.size());
    std::vector<std::array<int, 2>> edges;
    edges.reserve(triangles.size() * 2 + nv);
    std::unordered_map<std::int64_t, int> uses;
    for (const auto& tri : triangles) {
        for (int k = 0; k < 3; ++k) {
            int a = tri[k], b = tri[(k + 1) % 3];
            if (uses[edge_key(a, b, nv)]++ == 0) edges.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(edges.begin(), edges.end());
    return SimplicialComplex2::from_oriented(std::move(vertices), std::move(edges),
                                             std::move(triangles));
}

SimplicialComplex2 SimplicialComplex2::from_oriented(
    std::vector<Point2> vertices,
    std::vector<std::array<int, 2>> edges,
    std::vector<std::array<int, 3>> triangles)
{
    validate_triangles(vertices, triangles);
    SimplicialComplex2 cx;
    cx.m_vertices = std::move(vertices);
    cx.m_edges = std::move(edges);
    cx.m_triangles = std::move(triangles);
    cx.finalize();
    return cx;
}

void SimplicialComplex2::finalize()
{
    const int nv = num_vertices();
    const int ne = num_edges();
    const int nf = num_triangles();
    std::unordered_map<std::int64_t, int> index;
    index.reserve(ne * 2);
    for (int e = 0; e < ne; ++e) {
        const auto [a, b] = m_edges[e];
        if (a < 0 || a >= nv || b < 0 || b >= nv || a == b) {
            throw Error(ErrorCode::IndexOutOfRange, "edge " + std::to_string(e) + " is invalid");
        }
        if (!index.emplace(edge_key(a, b, nv), e).second) {
            throw Error(ErrorCode::InvalidInput, "edge " + std::to_string(e) + " is repeated");
        }
    }

    m_tri_edges.assign(nf, {});
    m_edge_tris.assign(ne, {});
    // Direction in which each edge is traversed by its triangles: +1 agrees with the edge.
    std::vector<int> traversal(ne, 0);
    for (int t = 0; t < nf; ++t) {
        for (int k = 0; k < 3; ++k) {
            const int a = m_triangles[t][k], b = m_triangles[t][(k + 1) % 3];
            auto it = index.find(edge_key(a, b, nv));
            if (it == index.end()) {
                throw Error(ErrorCode::InvalidInput, "triangle " + std::to_string(t) +
                                                         " uses an edge missing from the list");
            }
            const int e = it->second;
            const int s = (m_edges[e][0] == a) ? 1 : -1;
            m_tri_edges[t].edge[k] = e;
            m_tri_edges[t].sign[k] = s;
            auto& inc = m_edge_tris[e];
            if (inc.size() >= 2) {
                throw Error(ErrorCode::NonManifoldEdge,
                            "edge " + std::to_string(e) + " has more than two triangles");
            }
            if (!inc.empty() && traversal[e] == s) {
                throw Error(ErrorCode::NonManifoldEdge,
                            "edge " + std::to_string(e) + " is traversed twice the same way");
            }
            traversal[e] = s;
            inc.push_back(t);
        }
    }
    for (int e = 0; e < ne; ++e) {
        if (m_edge_tris[e].empty()) {
            throw Error(ErrorCode::InvalidInput, "edge " + std::to_string(e) + " has no triangle");
        }
    }

    m_boundary_vertex.assign(nv, 0);
    for (int e = 0; e < ne; ++e) {
        if (m_edge_tris[e].size() == 1) {
            m_boundary_vertex[m_edges[e][0]] = 1;
            m_boundary_vertex[m_edges[e][1]] = 1;
        }
    }

    std::vector<Eigen::Triplet<int>> t1, t2;
    t1.reserve(2 * ne);
    t2.reserve(3 * nf);
    for (int e = 0; e < ne; ++e) {
        t1.emplace_back(m_edges[e][0], e, -1);
        t1.emplace_back(m_edges[e][1], e, 1);
    }
    for (int t = 0; t < nf; ++t) {
        for (int k = 0; k < 3; ++k) t2.emplace_back(m_tri_edges[t].edge[k], t, m_tri_edges[t].sign[k]);
    }
    m_b1.resize(nv, ne);
    m_b1.setFromTriplets(t1.begin(), t1.end());
    m_b2.resize(ne, nf);
    m_b2.setFromTriplets(t2.begin(), t2.end());
}

Point2 SimplicialComplex2::edge_vector(int e) const
{
    return m_vertices[m_edges[e][1]] - m_vertices[m_edges[e][0]];
}

Point2 SimplicialComplex2::edge_midpoint(int e) const
{
    return 0.5 * (m_vertices[m_edges[e][0]] + m_vertices[m_edges[e][1]]);
}

double SimplicialComplex2::triangle_area(int t) const
{
    const auto& tri = m_triangles[t];
    return 0.5 * signed_double_area(m_vertices[tri[0]], m_vertices[tri[1]], m_vertices[tri[2]]);
}

double SimplicialComplex2::total_area() const
{
    double a = 0.0;
    for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
    return a;
}

int cell_count(const SimplicialComplex2& cx, int degree, Carrier carrier)
{
    if (degree < 0 || degree > 2) throw Error(ErrorCode::InvalidInput, "degree must be 0, 1 or 2");
    const int primal[3] = {cx.num_vertices(), cx.num_edges(), cx.num_triangles()};
    return carrier == Carrier::Primal ? primal[degree] : primal[2 - degree];
}

SparseMatrix exterior_derivative(const SimplicialComplex2& cx, int degree, Carrier carrier)
{
    if (degree != 0 && degree != 1) {
        throw Error(ErrorCode::InvalidInput, "exterior derivative degree must be 0 or 1");
    }
    const SparseMatrix b1 = cx.boundary1().cast<double>();
    const SparseMatrix b2 = cx.boundary2().cast<double>();
    if (carrier == Carrier::Primal) {
        return degree == 0 ? SparseMatrix(b1.transpose()) : SparseMatrix(b2.transpose());
    }
    return degree == 0 ? b2 : SparseMatrix(-b1);
}

std::array<double, 3> triangle_angles(const SimplicialComplex2& cx, int t)
{
    std::array<double, 3> ang{};
    for (int k = 0; k < 3; ++k) {
        const Point2 p = cx.triangle_point(t, k);
        const Point2 u = cx.triangle_point(t, (k + 1) % 3) - p;
        const Point2 w = cx.triangle_point(t, (k + 2) % 3) - p;
        ang[k] = std::atan2(std::abs(cross(u, w)), u.dot(w));
    }
    return ang;
}

MeshStats mesh_stats(const SimplicialComplex2& cx)
{
    MeshStats s;
    s.num_vertices = cx.num_vertices();
    s.num_edges = cx.num_edges();
    s.num_triangles = cx.num_triangles();
    if (s.num_edges == 0) return s;
    s.min_edge_length = std::numeric_limits<double>::infinity();
    s.min_area = std::numeric_limits<double>::infinity();
    s.min_angle_deg = 180.0;
    double sum = 0.0;
    for (int e = 0; e < s.num_edges; ++e) {
        const double l = cx.edge_length(e);
        sum += l;
        s.min_edge_length = std::min(s.min_edge_length, l);
        s.max_edge_length = std::max(s.max_edge_length, l);
    }
    s.mean_edge_length = sum / s.num_edges;
    for (int t = 0; t < s.num_triangles; ++t) {
        const double a = cx.triangle_area(t);
        s.min_area = std::min(s.min_area, a);
        s.max_area = std::max(s.max_area, a);
        for (double ang : triangle_angles(cx, t)) {
            const double deg = ang * 180.0 / std::numbers::pi;
            s.min_angle_deg = std::min(s.min_angle_deg, deg);
            s.max_angle_deg = std::max(s.max_angle_deg, deg);
        }
    }
    return s;
}

SimplicialComplex2 read_mesh(std::istream& in)
{
    long nv = -1, ne = -1, nf = -1;
    if (!(in >> nv >> ne >> nf) || nv < 0 || nf < 0) {
        throw Error(ErrorCode::IoError, "mesh header must be \"V E F\"");
    }
    std::vector<Point2> verts(nv);
    for (auto& p : verts) {
        if (!(in >> p.x() >> p.y())) throw Error(ErrorCode::IoError, "truncated vertex list");
    }
    std::vector<std::array<int, 3>> tris(nf);
    for (auto& t : tris) {
        if (!(in >> t[0] >> t[1] >> t[2])) throw Error(ErrorCode::IoError, "truncated triangle list");
    }
    return build_complex(std::move(verts), std::move(tris));
}

void write_mesh(std::ostream& out, const SimplicialComplex2& cx)
{
    const auto old = out.precision(17);
    out << cx.num_vertices() << ' ' << cx.num_edges() << ' ' << cx.num_triangles() << '\n';
    for (const auto& p : cx.vertices()) out << p.x() << ' ' << p.y() << '\n';
    for (const auto& t : cx.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    out.precision(old);
}

SimplicialComplex2 load_mesh(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return read_mesh(in);
}

void save_mesh(const std::string& path, const SimplicialComplex2& cx)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    write_mesh(out, cx);
}

} // namespace dec
