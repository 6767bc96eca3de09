// SPDX-License-Identifier: Apache-2.0
#include <dec/hodge.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace dec {

Eigen::Matrix3d local_hodge1_matrix(const std::array<Point2, 3>& e, const std::array<Point2, 3>& d)
{
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        const double len2 = e[i].squaredNorm();
        // Split the rotated dual vector along e_i and its normal; the normal
        // part is expressed through the two other edges.
        const double tangential = e[i].dot(d[i]) / len2;
        m(i, i) = cross(e[i], d[i]) / len2;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            const int k = 3 - i - j;
            m(i, j) = tangential * e[i].dot(e[k]) / cross(e[j], e[k]);
        }
    }
    return m;
}

namespace {

std::array<Point2, 3> edge_vectors(const SimplicialComplex2& cx, int t)
{
    const auto& te = cx.triangle_edges(t);
    return {cx.edge_vector(te.edge[0]), cx.edge_vector(te.edge[1]), cx.edge_vector(te.edge[2])};
}

} // namespace

LocalHodge1 local_hodge1(const SimplicialComplex2& cx, const DualMesh& dual, int t)
{
    LocalHodge1 out;
    out.triangle = t;
    out.edges = cx.triangle_edges(t).edge;
    const std::array<Point2, 3> d = {dual.half(t, 0).vector(), dual.half(t, 1).vector(),
                                     dual.half(t, 2).vector()};
    out.matrix = local_hodge1_matrix(edge_vectors(cx, t), d);
    return out;
}

SparseMatrix assemble_hodge0(const SimplicialComplex2& cx, const DualMesh& dual)
{
    SparseMatrix h(cx.num_vertices(), cx.num_vertices());
    std::vector<Triplet> trip;
    trip.reserve(cx.num_vertices());
    for (int v = 0; v < cx.num_vertices(); ++v) trip.emplace_back(v, v, dual.cell_areas[v]);
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

SparseMatrix assemble_hodge1(const SimplicialComplex2& cx, const DualMesh& dual)
{
    SparseMatrix h(cx.num_edges(), cx.num_edges());
    std::vector<Triplet> trip;
    trip.reserve(9 * cx.num_triangles());
    for (int t = 0; t < cx.num_triangles(); ++t) {
        const LocalHodge1 l = local_hodge1(cx, dual, t);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) trip.emplace_back(l.edges[i], l.edges[j], l.matrix(i, j));
        }
    }
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

SparseMatrix assemble_hodge2(const SimplicialComplex2& cx)
{
    SparseMatrix h(cx.num_triangles(), cx.num_triangles());
    std::vector<Triplet> trip;
    trip.reserve(cx.num_triangles());
    for (int t = 0; t < cx.num_triangles(); ++t) trip.emplace_back(t, t, 1.0 / cx.triangle_area(t));
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

HodgeOperators build_hodge(const SimplicialComplex2& cx, const DualMesh& dual)
{
    return {assemble_hodge0(cx, dual), assemble_hodge1(cx, dual), assemble_hodge2(cx)};
}

double condition_number(const Eigen::Matrix3d& m)
{
    if (!m.allFinite()) return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
    const auto& s = svd.singularValues();
    if (s(2) <= 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / s(2);
}

SparseMatrix elementwise_inverse_hodge1(const SimplicialComplex2& cx, const DualMesh& dual)
{
    std::vector<double> total(cx.num_edges(), 0.0);
    for (int t = 0; t < cx.num_triangles(); ++t) {
        for (int k = 0; k < 3; ++k) total[cx.triangle_edges(t).edge[k]] += std::abs(dual.half(t, k).signed_length);
    }
    std::vector<Triplet> trip;
    trip.reserve(9 * cx.num_triangles());
    for (int t = 0; t < cx.num_triangles(); ++t) {
        const auto& te = cx.triangle_edges(t);
        const std::array<Point2, 3> full = {dual.dual_edge_vectors[te.edge[0]],
                                            dual.dual_edge_vectors[te.edge[1]],
                                            dual.dual_edge_vectors[te.edge[2]]};
        const Eigen::Matrix3d n = local_hodge1_matrix(edge_vectors(cx, t), full);
        if (condition_number(n) > kConditionLimit) {
            throw Error(ErrorCode::SingularLocalHodge,
                        "local Hodge of triangle " + std::to_string(t) + " is singular");
        }
        const Eigen::Matrix3d ninv = n.inverse();
        for (int i = 0; i < 3; ++i) {
            const double w = total[te.edge[i]] > 0.0
                                 ? std::abs(dual.half(t, i).signed_length) / total[te.edge[i]]
                                 : 0.0;
            for (int j = 0; j < 3; ++j) trip.emplace_back(te.edge[i], te.edge[j], w * ninv(i, j));
        }
    }
    SparseMatrix m(cx.num_edges(), cx.num_edges());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

std::string_view to_string(InverseMode mode)
{
    return mode == InverseMode::Elementwise ? "elementwise" : "direct";
}

InverseMode inverse_mode_from_name(std::string_view name)
{
    if (name == "elementwise") return InverseMode::Elementwise;
    if (name == "direct" || name == "direct-solve") return InverseMode::DirectSolve;
    throw Error(ErrorCode::ConfigError, "unknown inverse mode '" + std::string(name) + "'");
}

InverseHodge1::InverseHodge1(const SimplicialComplex2& cx, const DualMesh& dual, const SparseMatrix& h1,
                             InverseMode mode)
    : m_mode(mode)
{
    if (mode == InverseMode::Elementwise) {
        m_matrix = elementwise_inverse_hodge1(cx, dual);
        return;
    }
    m_lu = std::make_shared<Eigen::SparseLU<SparseMatrix>>();
    SparseMatrix a = h1;
    a.makeCompressed();
    m_lu->compute(a);
    if (m_lu->info() != Eigen::Success) {
        throw Error(ErrorCode::SingularGlobalHodge, "assembled 1-form Hodge is singular");
    }
}

Vector InverseHodge1::apply(const Vector& dual_cochain) const
{
    if (m_mode == InverseMode::Elementwise) return m_matrix * dual_cochain;
    return m_lu->solve(dual_cochain);
}

const SparseMatrix& InverseHodge1::matrix() const
{
    if (m_mode != InverseMode::Elementwise) {
        throw Error(ErrorCode::InvalidInput, "direct-solve inverse has no explicit matrix");
    }
    return m_matrix;
}

OneForm star(const OneForm& w)
{
    auto c = w.coeffs;
    return OneForm{[c](const Point2& p) {
        const Point2 ab = c(p);
        return Point2(-ab.y(), ab.x());
    }};
}

namespace {

Vector hodge_residual(const OneForm& w, const SimplicialComplex2& cx, const DualMesh& dual, int quad_order)
{
    const SparseMatrix h1 = assemble_hodge1(cx, dual);
    const Vector primal = discretize_form(w, Carrier::Primal, cx, nullptr, quad_order).values;
    const Vector dual_values = discretize_form(star(w), Carrier::Dual, cx, &dual, quad_order).values;
    return h1 * primal - dual_values;
}

} // namespace

double hodge_exactness_error(const OneForm& w, const SimplicialComplex2& cx, const DualMesh& dual,
                             int quad_order)
{
    return hodge_residual(w, cx, dual, quad_order).cwiseAbs().maxCoeff();
}

double hodge_error_l2(const OneForm& w, const SimplicialComplex2& cx, const DualMesh& dual, int quad_order)
{
    return hodge_residual(w, cx, dual, quad_order).norm();
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m)
{
    const auto old = out.precision(17);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
        }
    }
    out.precision(old);
}

} // namespace dec
