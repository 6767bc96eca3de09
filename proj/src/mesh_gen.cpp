// SPDX-License-Identifier: Apache-2.0
#include <dec/dual_mesh.hpp>
#include <dec/mesh_gen.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

namespace dec {

namespace {

void require_points(int n, int min_n)
{
    if (n < min_n) {
        throw Error(ErrorCode::InvalidInput, "mesh needs at least " + std::to_string(min_n) +
                                                 " points per side");
    }
}

void require_domain(const Domain& d)
{
    if (!(d.width() > 0.0) || !(d.height() > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "domain must have positive extent");
    }
}

std::vector<Point2> grid_points(int n, const Domain& d)
{
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            pts.emplace_back(d.x0 + d.width() * i / (n - 1), d.y0 + d.height() * j / (n - 1));
        }
    }
    return pts;
}

std::vector<std::array<int, 3>> grid_triangles(int n)
{
    std::vector<std::array<int, 3>> tris;
    tris.reserve(2 * static_cast<std::size_t>(n - 1) * (n - 1));
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            const int a = j * n + i, b = a + 1, c = a + n, d = c + 1;
            tris.push_back({a, b, d});
            tris.push_back({a, d, c});
        }
    }
    return tris;
}

// Unit cell of the acute pattern: 17 points and 24 triangles with angles
// 30-75-75 or 60-60-60.
constexpr double kS3 = 0.43301270189221932; // sqrt(3) / 4

const std::array<std::array<double, 2>, 17> kCellPoints = {{
    {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0},
    {0.5, 0.0}, {1.0, 0.5}, {0.5, 1.0}, {0.0, 0.5},
    {0.25, kS3}, {0.75, kS3}, {0.75, 1.0 - kS3}, {0.25, 1.0 - kS3},
    {kS3, 0.25}, {1.0 - kS3, 0.25}, {1.0 - kS3, 0.75}, {kS3, 0.75},
    {0.5, 0.5},
}};

const std::array<std::array<int, 3>, 24> kCellTriangles = {{
    {13, 4, 1}, {10, 5, 2}, {7, 11, 3}, {4, 12, 0}, {13, 12, 4}, {12, 13, 16},
    {10, 9, 5}, {5, 9, 1}, {9, 13, 1}, {13, 9, 16}, {9, 10, 16}, {10, 14, 16},
    {6, 14, 2}, {14, 10, 2}, {15, 6, 3}, {11, 15, 3}, {15, 14, 6}, {15, 11, 16},
    {14, 15, 16}, {8, 11, 7}, {8, 7, 0}, {12, 8, 0}, {11, 8, 16}, {8, 12, 16},
}};

} // namespace

SimplicialComplex2 gen_right_mesh(int n, const Domain& domain)
{
    require_points(n, 2);
    require_domain(domain);
    return build_complex(grid_points(n, domain), grid_triangles(n));
}

SimplicialComplex2 gen_acute_mesh(int n, const Domain& domain)
{
    require_points(n, 2);
    require_domain(domain);
    const int cells = n - 1;
    std::vector<Point2> pts;
    std::vector<std::array<int, 3>> tris;
    std::map<std::pair<long long, long long>, int> index;
    auto vertex_id = [&](double gx, double gy) {
        const auto key = std::make_pair(std::llround(gx * 1e9), std::llround(gy * 1e9));
        auto [it, inserted] = index.emplace(key, static_cast<int>(pts.size()));
        if (inserted) {
            pts.emplace_back(domain.x0 + domain.width() * gx / cells,
                             domain.y0 + domain.height() * gy / cells);
        }
        return it->second;
    };
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
            std::array<int, 17> local{};
            for (int k = 0; k < 17; ++k) local[k] = vertex_id(i + kCellPoints[k][0], j + kCellPoints[k][1]);
            for (const auto& t : kCellTriangles) tris.push_back({local[t[0]], local[t[1]], local[t[2]]});
        }
    }
    return build_complex(std::move(pts), std::move(tris));
}

bool in_circumcircle(const Point2& a, const Point2& b, const Point2& c, const Point2& p, double rel_tol)
{
    const Point2 o = circumcenter(a, b, c);
    const double r = (a - o).norm();
    return (p - o).norm() < r * (1.0 - rel_tol);
}

namespace {

struct EdgeSlot
{
    int tri;
    int local;
};

// Lawson flips on a raw triangle list; returns the number of flips.
int flip_to_delaunay(const std::vector<Point2>& pts, std::vector<std::array<int, 3>>& tris)
{
    const int nv = static_cast<int>(pts.size());
    int flips = 0;
    for (int pass = 0; pass < 1000; ++pass) {
        std::unordered_map<std::int64_t, std::vector<EdgeSlot>> edges;
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            for (int k = 0; k < 3; ++k) {
                int a = tris[t][k], b = tris[t][(k + 1) % 3];
                if (a > b) std::swap(a, b);
                edges[static_cast<std::int64_t>(a) * nv + b].push_back({t, k});
            }
        }
        std::vector<char> touched(tris.size(), 0);
        int pass_flips = 0;
        for (auto& [key, slots] : edges) {
            if (slots.size() != 2) continue;
            const auto [t0, k0] = slots[0];
            const auto [t1, k1] = slots[1];
            if (touched[t0] || touched[t1]) continue;
            const int a = tris[t0][k0], b = tris[t0][(k0 + 1) % 3], c = tris[t0][(k0 + 2) % 3];
            const int d = tris[t1][(k1 + 2) % 3];
            if (!in_circumcircle(pts[a], pts[b], pts[c], pts[d])) continue;
            // Quad a-d-b-c must be strictly convex for the flip to stay valid.
            if (cross(pts[a] - pts[c], pts[d] - pts[c]) <= 0 || cross(pts[d] - pts[c], pts[b] - pts[c]) <= 0) continue;
            tris[t0] = {c, a, d};
            tris[t1] = {c, d, b};
            touched[t0] = touched[t1] = 1;
            ++pass_flips;
        }
        flips += pass_flips;
        if (pass_flips == 0) break;
    }
    return flips;
}

} // namespace

int make_delaunay(SimplicialComplex2& cx)
{
    auto tris = cx.triangles();
    const int flips = flip_to_delaunay(cx.vertices(), tris);
    if (flips > 0) cx = build_complex(cx.vertices(), std::move(tris));
    return flips;
}

SimplicialComplex2 gen_delaunay_mesh(int n, const Domain& domain, std::uint64_t seed, double jitter)
{
    require_points(n, 2);
    require_domain(domain);
    if (jitter < 0.0 || jitter > 0.25) throw Error(ErrorCode::InvalidInput, "jitter must be in [0, 0.25]");
    auto pts = grid_points(n, domain);
    const double hx = domain.width() / (n - 1), hy = domain.height() / (n - 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-jitter, jitter);
    for (int j = 1; j + 1 < n; ++j) {
        for (int i = 1; i + 1 < n; ++i) {
            Point2& p = pts[j * n + i];
            p.x() += u(rng) * hx;
            p.y() += u(rng) * hy;
        }
    }
    auto tris = grid_triangles(n);
    flip_to_delaunay(pts, tris);
    return build_complex(std::move(pts), std::move(tris));
}

namespace {

// Uniform bucket grid over the vertices for circumdisk queries.
class VertexGrid
{
public:
    VertexGrid(const std::vector<Point2>& pts, double cell)
        : m_pts(pts)
        , m_cell(cell)
    {
        m_lo = pts[0];
        Point2 hi = pts[0];
        for (const auto& p : pts) {
            m_lo = m_lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        m_nx = std::max(1, static_cast<int>((hi.x() - m_lo.x()) / cell) + 1);
        m_ny = std::max(1, static_cast<int>((hi.y() - m_lo.y()) / cell) + 1);
        m_buckets.assign(static_cast<std::size_t>(m_nx) * m_ny, {});
        for (int v = 0; v < static_cast<int>(pts.size()); ++v) m_buckets[bucket(pts[v])].push_back(v);
    }

    template <typename Fn>
    void for_each_in_box(const Point2& lo, const Point2& hi, Fn&& fn) const
    {
        const int i0 = clamp_x(lo.x()), i1 = clamp_x(hi.x());
        const int j0 = clamp_y(lo.y()), j1 = clamp_y(hi.y());
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                for (int v : m_buckets[static_cast<std::size_t>(j) * m_nx + i]) fn(v);
            }
        }
    }

private:
    int clamp_x(double x) const
    {
        return std::clamp(static_cast<int>(std::floor((x - m_lo.x()) / m_cell)), 0, m_nx - 1);
    }
    int clamp_y(double y) const
    {
        return std::clamp(static_cast<int>(std::floor((y - m_lo.y()) / m_cell)), 0, m_ny - 1);
    }
    std::size_t bucket(const Point2& p) const
    {
        return static_cast<std::size_t>(clamp_y(p.y())) * m_nx + clamp_x(p.x());
    }

    const std::vector<Point2>& m_pts;
    double m_cell;
    Point2 m_lo;
    int m_nx = 1, m_ny = 1;
    std::vector<std::vector<int>> m_buckets;
};

int foreign_inside(const std::vector<Point2>& pts, const std::array<int, 3>& tri)
{
    int count = 0;
    for (int v = 0; v < static_cast<int>(pts.size()); ++v) {
        if (v == tri[0] || v == tri[1] || v == tri[2]) continue;
        if (in_circumcircle(pts[tri[0]], pts[tri[1]], pts[tri[2]], pts[v])) ++count;
    }
    return count;
}

} // namespace

int count_non_delaunay(const SimplicialComplex2& cx)
{
    if (cx.num_triangles() == 0) return 0;
    const auto& pts = cx.vertices();
    const VertexGrid grid(pts, mesh_stats(cx).mean_edge_length);
    int count = 0;
    for (const auto& tri : cx.triangles()) {
        const Point2 o = circumcenter(pts[tri[0]], pts[tri[1]], pts[tri[2]]);
        const double r = (pts[tri[0]] - o).norm();
        bool hit = false;
        grid.for_each_in_box(o - Point2(r, r), o + Point2(r, r), [&](int v) {
            if (hit || v == tri[0] || v == tri[1] || v == tri[2]) return;
            hit = in_circumcircle(pts[tri[0]], pts[tri[1]], pts[tri[2]], pts[v]);
        });
        if (hit) ++count;
    }
    return count;
}

double non_delaunay_ratio(const SimplicialComplex2& cx)
{
    if (cx.num_triangles() == 0) throw Error(ErrorCode::NoTriangles, "mesh has no triangles");
    return static_cast<double>(count_non_delaunay(cx)) / cx.num_triangles();
}

PerturbResult perturb_to_non_delaunay(const SimplicialComplex2& cx, const PerturbOptions& opts)
{
    if (!(opts.target >= 0.0 && opts.target <= 1.0)) {
        throw Error(ErrorCode::InvalidInput, "target ratio must lie in [0, 1]");
    }
    const int nf = cx.num_triangles();
    const int nv = cx.num_vertices();
    if (nf == 0) throw Error(ErrorCode::NoTriangles, "mesh has no triangles");

    std::vector<Point2> pts = cx.vertices();
    const auto& tris = cx.triangles();
    std::vector<std::vector<int>> vert_tris(nv);
    for (int t = 0; t < nf; ++t) {
        for (int v : tris[t]) vert_tris[v].push_back(t);
    }
    std::vector<std::vector<int>> neighbors(nv);
    for (const auto& e : cx.edges()) {
        neighbors[e[0]].push_back(e[1]);
        neighbors[e[1]].push_back(e[0]);
    }
    const double min_area = opts.quality_floor > 0.0 ? opts.quality_floor : 1e-8 * cx.total_area();

    std::vector<int> inside(nf);
    for (int t = 0; t < nf; ++t) inside[t] = foreign_inside(pts, tris[t]);
    int bad = static_cast<int>(std::count_if(inside.begin(), inside.end(), [](int c) { return c > 0; }));

    auto ratio = [&](int count) { return static_cast<double>(count) / nf; };
    auto reached = [&](int count) { return std::abs(ratio(count) - opts.target) <= opts.tolerance; };

    std::vector<int> interior;
    for (int v = 0; v < nv; ++v) {
        if (!cx.is_boundary_vertex(v)) interior.push_back(v);
    }

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<int> trial(nf);
    int accepted = 0;

    for (int sweep = 0; sweep < opts.max_sweeps && !reached(bad) && !interior.empty(); ++sweep) {
        std::shuffle(interior.begin(), interior.end(), rng);
        for (int v : interior) {
            if (reached(bad)) break;
            double mean_len = 0.0;
            for (int w : neighbors[v]) mean_len += (pts[w] - pts[v]).norm();
            mean_len /= static_cast<double>(neighbors[v].size());
            const Point2 step(normal(rng), normal(rng));
            const Point2 old = pts[v];
            bool moved = false;
            for (int halving = 0; halving < 4 && !moved; ++halving) {
                const Point2 cand = old + step * (opts.step_fraction * mean_len / (1 << halving));
                pts[v] = cand;
                bool valid = true;
                for (int t : vert_tris[v]) {
                    const auto& tri = tris[t];
                    if (0.5 * cross(pts[tri[1]] - pts[tri[0]], pts[tri[2]] - pts[tri[0]]) < min_area) {
                        valid = false;
                        break;
                    }
                }
                if (!valid) continue;
                trial = inside;
                int trial_bad = 0;
                for (int t = 0; t < nf; ++t) {
                    const auto& tri = tris[t];
                    if (tri[0] == v || tri[1] == v || tri[2] == v) {
                        trial[t] = foreign_inside(pts, tri);
                    } else {
                        const Point2 o = circumcenter(pts[tri[0]], pts[tri[1]], pts[tri[2]]);
                        const double r = (pts[tri[0]] - o).norm();
                        const bool was = (old - o).norm() < r * (1.0 - 1e-12);
                        const bool now = (cand - o).norm() < r * (1.0 - 1e-12);
                        trial[t] += static_cast<int>(now) - static_cast<int>(was);
                    }
                    if (trial[t] > 0) ++trial_bad;
                }
                if (ratio(trial_bad) > opts.target + opts.tolerance) continue;
                inside.swap(trial);
                bad = trial_bad;
                ++accepted;
                moved = true;
            }
            if (!moved) pts[v] = old;
        }
    }
    PerturbResult result;
    result.achieved_ratio = ratio(bad);
    result.accepted_moves = accepted;
    result.reached = reached(bad);
    result.complex = build_complex(pts, tris);
    if (!result.reached && opts.throw_on_failure) {
        throw Error(ErrorCode::TargetUnreachable,
                    "reached non-Delaunay ratio " + std::to_string(result.achieved_ratio) +
                        " for target " + std::to_string(opts.target));
    }
    return result;
}

} // namespace dec
