// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"

#include <dec/hodge.hpp>
#include <dec/mesh_gen.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace dec;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

// Local matrix for legs along the axes: e1 = a->b, e2 = a->c, e3 = b->c,
// dual vectors from each edge midpoint to the center, turned to +90 degrees.
Eigen::Matrix3d right_triangle_hodge(double m, double n, const CenterStrategy& strategy)
{
    const Point2 a(0, 0), b(m, 0), c(0, n);
    const Point2 ct = strategy.triangle_center(a, b, c);
    const std::array<Point2, 3> e{b - a, c - a, c - b};
    const std::array<Point2, 3> mid{(a + b) / 2, (a + c) / 2, (b + c) / 2};
    std::array<Point2, 3> d;
    for (int i = 0; i < 3; ++i) {
        d[i] = ct - mid[i];
        if (cross(e[i], d[i]) < 0) d[i] = -d[i];
    }
    return local_hodge1_matrix(e, d);
}

// Same matrix from angles: |e*|/|e| (sin on the diagonal, a cos off it).
Eigen::Matrix3d trigonometric_hodge(const std::array<Point2, 3>& e, const std::array<Point2, 3>& d)
{
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        const double theta = std::atan2(cross(e[i], d[i]), e[i].dot(d[i]));
        const double ratio = d[i].norm() / e[i].norm();
        for (int j = 0; j < 3; ++j) {
            if (j == i) {
                m(i, j) = ratio * std::sin(theta);
            } else {
                const int k = 3 - i - j;
                m(i, j) = ratio * std::cos(theta) * e[i].dot(e[k]) / cross(e[j], e[k]);
            }
        }
    }
    return m;
}

// Deterministic interior center with weights depending on the seed.
CenterStrategy random_interior_strategy(int seed)
{
    return CenterStrategy::custom(
        [seed](const Point2& a, const Point2& b, const Point2& c) {
            const double s = 0.37 * seed;
            const double w0 = 1.2 + std::sin(13.1 * a.x() + 7.3 * b.y() + s);
            const double w1 = 1.2 + std::sin(5.7 * b.x() + 3.1 * c.y() + 2 * s);
            const double w2 = 1.2 + std::sin(9.9 * c.x() + 1.7 * a.y() + 3 * s);
            return Point2((w0 * a + w1 * b + w2 * c) / (w0 + w1 + w2));
        },
        [seed](const Point2& a, const Point2& b) {
            const double t = 0.5 + 0.3 * std::sin(4.0 * a.x() + 6.0 * b.y() + seed);
            return Point2(a + t * (b - a));
        });
}

OneForm constant_form(double a, double b)
{
    return OneForm{[a, b](const Point2&) { return Point2(a, b); }};
}

bool is_diagonal_edge(const SimplicialComplex2& cx, int e)
{
    const Point2 v = cx.edge_vector(e);
    return std::abs(v.x()) > 1e-12 && std::abs(v.y()) > 1e-12;
}

} // namespace

TEST_CASE("triangle centers")
{
    const Point2 o(0, 0), x(1, 0), y(0, 1);
    CHECK((circumcenter(o, x, y) - Point2(0.5, 0.5)).norm() < 1e-15);
    const Point2 top(0.5, std::sqrt(3.0) / 2);
    CHECK((circumcenter(o, x, top) - Point2(0.5, std::sqrt(3.0) / 6)).norm() < 1e-15);
    CHECK((barycenter(o, x, y) - Point2(1.0 / 3, 1.0 / 3)).norm() < 1e-15);
    const double r = (2 - kSqrt2) / 2;
    CHECK((incenter(o, x, y) - Point2(r, r)).norm() < 1e-15);
    CHECK((barycenter(o, x, top) - incenter(o, x, top)).norm() < 1e-15);
    CHECK((barycenter(o, x, top) - circumcenter(o, x, top)).norm() < 1e-15);
    CHECK(error_code_of([] { circumcenter({0, 0}, {1, 1}, {2, 2}); }) == ErrorCode::DegenerateTriangle);
    CHECK(error_code_of([] { incenter({0, 0}, {1, 1}, {2, 2}); }) == ErrorCode::DegenerateTriangle);
}

TEST_CASE("strategy tokens")
{
    CHECK(CenterStrategy::from_name("circumcentric").kind == CenterKind::Circumcentric);
    CHECK(CenterStrategy::from_name("bary").kind == CenterKind::Barycentric);
    CHECK(CenterStrategy::from_name("incentric").kind == CenterKind::Incentric);
    CHECK(error_code_of([] { CenterStrategy::from_name("orthocentric"); }) == ErrorCode::ConfigError);
}

TEST_CASE("unit right triangle duals")
{
    const auto cx = build_complex({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
    const auto circ = build_dual(cx, CenterStrategy::circumcentric());
    for (int e = 0; e < 3; ++e) {
        if (is_diagonal_edge(cx, e)) CHECK(circ.dual_edge_lengths[e] < 1e-15);
    }
    const auto bary = build_dual(cx, CenterStrategy::barycentric());
    for (int k = 0; k < 3; ++k) CHECK(bary.half(0, k).signed_length > 0.0);
}

TEST_CASE("dual cells partition the domain")
{
    const auto meshes = {gen_right_mesh(7), gen_acute_mesh(3), gen_delaunay_mesh(8, {0, 0, 2, 1}, 4)};
    for (const auto& cx : meshes) {
        for (const auto& st : {CenterStrategy::barycentric(), CenterStrategy::incentric(), random_interior_strategy(1)}) {
            const auto dual = build_dual(cx, st);
            double sum = 0.0;
            for (double a : dual.cell_areas) sum += a;
            CHECK(sum == doctest::Approx(cx.total_area()).epsilon(1e-12));
        }
    }
}

TEST_CASE("circumcentric duals are orthogonal on acute meshes")
{
    const auto cx = gen_acute_mesh(3);
    const auto dual = build_dual(cx, CenterStrategy::circumcentric());
    for (int e = 0; e < cx.num_edges(); ++e) {
        const Point2 u = cx.edge_vector(e), d = dual.dual_edge_vectors[e];
        CHECK(std::abs(u.dot(d)) / (u.norm() * d.norm()) < 1e-12);
        CHECK(cross(u, d) > 0.0);
    }
}

TEST_CASE("dual angles satisfy sin^2 + cos^2 = 1")
{
    const auto cx = gen_delaunay_mesh(6, {}, 2);
    const auto dual = build_dual(cx, CenterStrategy::incentric());
    for (int e = 0; e < cx.num_edges(); ++e) {
        const Point2 u = cx.edge_vector(e), d = dual.dual_edge_vectors[e];
        const double s = cross(u, d) / (u.norm() * d.norm());
        const double c = u.dot(d) / (u.norm() * d.norm());
        CHECK(std::abs(s * s + c * c - 1.0) < 1e-12);
        CHECK(s >= 0.0);
    }
}

TEST_CASE("validate_dual")
{
    const auto right = gen_right_mesh(5);
    const auto report = validate_dual(right, build_dual(right, CenterStrategy::circumcentric()));
    CHECK_FALSE(report.ok());
    for (int e = 0; e < right.num_edges(); ++e) {
        if (is_diagonal_edge(right, e)) {
            CHECK(std::count(report.short_edges.begin(), report.short_edges.end(), e) == 1);
        }
    }
    CHECK(validate_dual(right, build_dual(right, CenterStrategy::barycentric())).ok());
    const auto acute = gen_acute_mesh(4);
    CHECK(validate_dual(acute, build_dual(acute, CenterStrategy::circumcentric())).ok());
}

TEST_CASE("closed-form local Hodge matrices")
{
    Eigen::Matrix3d bary;
    bary << 2, 1, 0, 1, 2, 0, 0, 0, 1;
    bary /= 6.0;
    CHECK((right_triangle_hodge(1, 1, CenterStrategy::barycentric()) - bary).cwiseAbs().maxCoeff() <= 1e-12);

    Eigen::Matrix3d inc;
    // Hypotenuse entry is |e*| / |e| = 1/2 - r with inradius r = 1 - 1/sqrt(2).
    inc << 2, kSqrt2, 0, kSqrt2, 2, 0, 0, 0, kSqrt2;
    inc /= 4 + 2 * kSqrt2;
    CHECK((right_triangle_hodge(1, 1, CenterStrategy::incentric()) - inc).cwiseAbs().maxCoeff() <= 1e-12);

    for (auto [m, n] : {std::pair{1.0, 2.0}, std::pair{3.0, 1.0}}) {
        const double s = m * m + n * n, d = m * m - n * n;
        Eigen::Matrix3d expected;
        expected << n / (3 * m), m / (6 * n), 0,
                    n / (6 * m), m / (3 * n), 0,
                    n * d / (6 * m * s), m * d / (6 * n * s), m * n / (3 * s);
        CHECK((right_triangle_hodge(m, n, CenterStrategy::barycentric()) - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("closed form agrees with the trigonometric oracle")
{
    const auto cx = gen_delaunay_mesh(5, {}, 9);
    const auto dual = build_dual(cx, random_interior_strategy(2));
    for (int t = 0; t < cx.num_triangles(); ++t) {
        std::array<Point2, 3> e, d;
        for (int k = 0; k < 3; ++k) {
            e[k] = cx.edge_vector(cx.triangle_edges(t).edge[k]);
            d[k] = dual.half(t, k).vector();
        }
        const Eigen::Matrix3d a = local_hodge1(cx, dual, t).matrix;
        CHECK((a - trigonometric_hodge(e, d)).cwiseAbs().maxCoeff() <= 1e-12 * (1 + a.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("circumcentric local Hodge is diagonal on acute triangles")
{
    const auto cx = gen_acute_mesh(2);
    const auto dual = build_dual(cx, CenterStrategy::circumcentric());
    for (int t = 0; t < cx.num_triangles(); ++t) {
        const auto loc = local_hodge1(cx, dual, t);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (i == j) {
                    const double expected = dual.half(t, i).signed_length / cx.edge_length(loc.edges[i]);
                    CHECK(loc.matrix(i, i) == doctest::Approx(expected).epsilon(1e-12));
                } else {
                    CHECK(std::abs(loc.matrix(i, j)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("assembled Hodge operators")
{
    const auto tri = build_complex({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
    const auto dual = build_dual(tri, CenterStrategy::barycentric());
    const auto ops = build_hodge(tri, dual);
    const auto loc = local_hodge1(tri, dual, 0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) CHECK(ops.h1.coeff(loc.edges[i], loc.edges[j]) == loc.matrix(i, j));
    }
    CHECK(Eigen::MatrixXd(ops.h2)(0, 0) == doctest::Approx(2.0));

    // Interior edge of two acute triangles: the half lengths add up.
    const auto two = build_complex({{0, 0}, {1, 0}, {0.5, 0.8}, {0.5, -0.7}}, {{{0, 1, 2}, {0, 3, 1}}});
    const auto cd = build_dual(two, CenterStrategy::circumcentric());
    const SparseMatrix h1 = assemble_hodge1(two, cd);
    const int shared = 0; // edge (0, 1)
    REQUIRE(two.edges()[shared] == std::array<int, 2>{0, 1});
    double halves = 0.0;
    for (int t : two.edge_triangles(shared)) {
        for (int k = 0; k < 3; ++k) {
            if (two.triangle_edges(t).edge[k] == shared) halves += cd.half(t, k).signed_length;
        }
    }
    CHECK(h1.coeff(shared, shared) == doctest::Approx(halves).epsilon(1e-12));
    CHECK(h1.coeff(shared, shared) == doctest::Approx(cd.dual_edge_lengths[shared]).epsilon(1e-12));

    const auto mesh = gen_delaunay_mesh(6, {}, 1);
    const auto all = build_hodge(mesh, build_dual(mesh, CenterStrategy::incentric()));
    for (int i = 0; i < mesh.num_vertices(); ++i) CHECK(all.h0.coeff(i, i) > 0.0);
    for (int i = 0; i < mesh.num_triangles(); ++i) CHECK(all.h2.coeff(i, i) > 0.0);
    for (int k = 0; k < all.h1.outerSize(); ++k) {
        int count = 0;
        for (SparseMatrix::InnerIterator it(all.h1, k); it; ++it) ++count;
        CHECK(count <= 5);
    }
}

TEST_CASE("regular hexagonal dual cell area")
{
    // Six equilateral triangles around the origin; circumcentric cell is a hexagon
    // with inradius 1/2 (apothem to each edge midpoint).
    std::vector<Point2> pts{{0, 0}};
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < 6; ++k) pts.emplace_back(std::cos(k * std::numbers::pi / 3), std::sin(k * std::numbers::pi / 3));
    for (int k = 0; k < 6; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 6});
    const auto cx = build_complex(pts, tris);
    const auto h0 = assemble_hodge0(cx, build_dual(cx, CenterStrategy::circumcentric()));
    const double r = std::sqrt(3.0) / 3.0; // circumradius of a unit equilateral triangle
    CHECK(h0.coeff(0, 0) == doctest::Approx(1.5 * std::sqrt(3.0) * r * r).epsilon(1e-12));
}

TEST_CASE("Hodge is exact on constant forms")
{
    const auto meshes = {gen_right_mesh(6), gen_acute_mesh(3), gen_delaunay_mesh(7, {-1, -1, 2, 1}, 5)};
    for (const auto& cx : meshes) {
        std::vector<CenterStrategy> strategies{CenterStrategy::barycentric(), CenterStrategy::incentric()};
        if (validate_dual(cx, build_dual(cx, CenterStrategy::circumcentric())).ok()) {
            strategies.push_back(CenterStrategy::circumcentric());
        }
        for (int s = 1; s <= 5; ++s) strategies.push_back(random_interior_strategy(s));
        for (const auto& st : strategies) {
            const auto dual = build_dual(cx, st);
            CHECK(hodge_exactness_error(constant_form(0.7, -1.3), cx, dual) < 1e-12);
            CHECK(hodge_exactness_error(constant_form(-2.0, 0.25), cx, dual) < 1e-12);
        }
    }
}

TEST_CASE("Hodge error of linear forms on one triangle")
{
    const auto cx = build_complex({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
    const OneForm f1{[](const Point2& p) { return Point2(p.x() - p.y(), p.y() - p.x()); }};
    const OneForm f2{[](const Point2& p) { return Point2(p.x() + p.y(), p.x() + p.y()); }};
    const auto bary = build_dual(cx, CenterStrategy::barycentric());
    const auto inc = build_dual(cx, CenterStrategy::incentric());
    CHECK(hodge_error_l2(f1, cx, bary) == doctest::Approx(0.2946).epsilon(0.0001 / 0.2946));
    CHECK(hodge_error_l2(f2, cx, inc) == doctest::Approx(0.0303).epsilon(0.0001 / 0.0303));
}

TEST_CASE("elementwise inverse")
{
    SUBCASE("diagonal case gives |e| / |e*|")
    {
        const auto cx = gen_acute_mesh(3);
        const auto dual = build_dual(cx, CenterStrategy::circumcentric());
        const SparseMatrix inv = elementwise_inverse_hodge1(cx, dual);
        const Eigen::MatrixXd dense = Eigen::MatrixXd(assemble_hodge1(cx, dual)).inverse();
        for (int e = 0; e < cx.num_edges(); ++e) {
            CHECK(inv.coeff(e, e) == doctest::Approx(cx.edge_length(e) / dual.dual_edge_lengths[e]).epsilon(1e-12));
            CHECK(inv.coeff(e, e) == doctest::Approx(dense(e, e)).epsilon(1e-12));
        }
        CHECK((Eigen::MatrixXd(inv) - dense).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("single triangle inverts exactly")
    {
        const auto cx = build_complex({{0, 0}, {2, 0}, {0.3, 1.1}}, {{{0, 1, 2}}});
        const auto dual = build_dual(cx, CenterStrategy::barycentric());
        const SparseMatrix inv = elementwise_inverse_hodge1(cx, dual);
        const auto loc = local_hodge1(cx, dual, 0);
        const Eigen::Matrix3d expected = loc.matrix.inverse();
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) CHECK(std::abs(inv.coeff(loc.edges[i], loc.edges[j]) - expected(i, j)) < 1e-12);
        }
    }
    SUBCASE("approximate on two barycentric triangles")
    {
        const auto cx = build_complex({{0, 0}, {1, 0}, {0, 1}, {1.2, 0.9}}, {{{0, 1, 2}, {1, 3, 2}}});
        const auto dual = build_dual(cx, CenterStrategy::barycentric());
        const SparseMatrix h1 = assemble_hodge1(cx, dual);
        const InverseHodge1 elem(cx, dual, h1, InverseMode::Elementwise);
        const InverseHodge1 direct(cx, dual, h1, InverseMode::DirectSolve);
        const Vector x = Vector::LinSpaced(cx.num_edges(), 1.0, 2.0);
        const Vector a = elem.apply(x), b = direct.apply(x);
        CHECK(a.allFinite());
        CHECK(b.allFinite());
        CHECK((a - b).norm() > 1e-8);
        CHECK((h1 * b - x).norm() < 1e-12);
        CHECK(error_code_of([&] { direct.matrix(); }) == ErrorCode::InvalidInput);
    }
    SUBCASE("exact on constant forms")
    {
        const auto cx = gen_delaunay_mesh(6, {}, 8);
        const auto dual = build_dual(cx, CenterStrategy::incentric());
        const auto w = constant_form(0.4, 1.7);
        const Vector primal = discretize_form(w, Carrier::Primal, cx).values;
        const Vector dual_values = discretize_form(star(w), Carrier::Dual, cx, &dual).values;
        const InverseHodge1 inv(cx, dual, assemble_hodge1(cx, dual), InverseMode::Elementwise);
        CHECK((inv.apply(dual_values) - primal).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("singular local Hodge is reported")
{
    // Center on the hypotenuse midpoint: that half dual edge vanishes.
    const auto cx = build_complex({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
    const auto dual = build_dual(cx, CenterStrategy::circumcentric());
    CHECK(error_code_of([&] { elementwise_inverse_hodge1(cx, dual); }) == ErrorCode::SingularLocalHodge);
    CHECK(std::isinf(condition_number(Eigen::Matrix3d::Zero())));
    CHECK(condition_number(Eigen::Matrix3d::Identity()) == doctest::Approx(1.0));
    CHECK(inverse_mode_from_name("direct-solve") == InverseMode::DirectSolve);
    CHECK(error_code_of([] { inverse_mode_from_name("lu"); }) == ErrorCode::ConfigError);
}

TEST_CASE("star rotates coefficients")
{
    const OneForm w{[](const Point2&) { return Point2(2.0, 3.0); }};
    CHECK(star(w).coeffs({0, 0}) == Point2(-3.0, 2.0));
}

TEST_CASE("MatrixMarket export")
{
    SparseMatrix m(2, 3);
    m.insert(0, 1) = 0.5;
    m.insert(1, 2) = -2.0;
    m.makeCompressed();
    std::ostringstream out;
    write_matrix_market(out, m);
    const std::string s = out.str();
    CHECK(s.rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
    CHECK(s.find("2 3 2") != std::string::npos);
    CHECK(s.find("1 2 0.5") != std::string::npos);
    CHECK(s.find("2 3 -2") != std::string::npos);
}
