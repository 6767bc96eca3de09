// SPDX-License-Identifier: Apache-2.0
#include <dec/forms.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace dec {

namespace {

constexpr int kMaxOrder = 32;

LineRule compute_rule(int n)
{
    LineRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const std::array<LineRule, kMaxOrder + 1>& rules()
{
    static const auto table = [] {
        std::array<LineRule, kMaxOrder + 1> t;
        for (int n = 1; n <= kMaxOrder; ++n) t[n] = compute_rule(n);
        return t;
    }();
    return table;
}

} // namespace

const LineRule& gauss_legendre(int order)
{
    if (order < 1 || order > kMaxOrder) {
        throw Error(ErrorCode::InvalidInput, "quadrature order must be in [1, 32]");
    }
    return rules()[order];
}

double integrate_one_form(const OneForm& w, const Point2& a, const Point2& b, int order)
{
    const auto& rule = gauss_legendre(order);
    const Point2 d = b - a;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.weights[i] * w.coeffs(a + rule.nodes[i] * d).dot(d);
    }
    return s;
}

double integrate_triangle(const std::function<double(const Point2&)>& f, const Point2& a,
                          const Point2& b, const Point2& c, int order)
{
    // Collapsed square: x = (1 - s) a + s ((1 - t) b + t c), Jacobian 2 A s.
    const auto& rule = gauss_legendre(order);
    const double jac = cross(b - a, c - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = rule.nodes[i];
        double inner = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double t = rule.nodes[j];
            inner += rule.weights[j] * f((1 - s) * a + s * ((1 - t) * b + t * c));
        }
        sum += rule.weights[i] * s * inner;
    }
    return jac * sum;
}

Vector integrate_dual_cells(const SimplicialComplex2& cx, const DualMesh& dual,
                            const std::function<double(const Point2&)>& f, int order)
{
    Vector out = Vector::Zero(cx.num_vertices());
    for (int t = 0; t < cx.num_triangles(); ++t) {
        const auto& te = cx.triangle_edges(t);
        const Point2& c = dual.triangle_centers[t];
        for (int k = 0; k < 3; ++k) {
            const Point2 p = cx.triangle_point(t, k);
            const Point2& m_next = dual.edge_centers[te.edge[k]];
            const Point2& m_prev = dual.edge_centers[te.edge[(k + 2) % 3]];
            out[cx.triangles()[t][k]] +=
                integrate_triangle(f, p, m_next, c, order) + integrate_triangle(f, p, c, m_prev, order);
        }
    }
    return out;
}

int form_degree(const Form& form)
{
    return static_cast<int>(form.index());
}

Cochain discretize_form(const Form& form, Carrier carrier, const SimplicialComplex2& cx,
                        const DualMesh* dual, int quad_order)
{
    if (carrier == Carrier::Dual && dual == nullptr) {
        throw Error(ErrorCode::MissingDualMesh, "dual carrier needs a dual mesh");
    }
    Cochain out;
    out.degree = form_degree(form);
    out.carrier = carrier;
    out.values.resize(cell_count(cx, out.degree, carrier));

    if (const auto* z = std::get_if<ZeroForm>(&form)) {
        const auto& pts = carrier == Carrier::Primal ? cx.vertices() : dual->triangle_centers;
        for (std::size_t i = 0; i < pts.size(); ++i) out.values[i] = z->f(pts[i]);
    } else if (const auto* w = std::get_if<OneForm>(&form)) {
        for (int e = 0; e < cx.num_edges(); ++e) {
            if (carrier == Carrier::Primal) {
                out.values[e] = integrate_one_form(*w, cx.vertex(cx.edges()[e][0]),
                                                   cx.vertex(cx.edges()[e][1]), quad_order);
            } else {
                out.values[e] = 0.0;
            }
        }
        if (carrier == Carrier::Dual) {
            for (int t = 0; t < cx.num_triangles(); ++t) {
                for (int k = 0; k < 3; ++k) {
                    const auto& h = dual->half(t, k);
                    out.values[cx.triangle_edges(t).edge[k]] +=
                        integrate_one_form(*w, h.start, h.end, quad_order);
                }
            }
        }
    } else {
        const auto& d = std::get<TwoForm>(form).density;
        if (carrier == Carrier::Primal) {
            for (int t = 0; t < cx.num_triangles(); ++t) {
                out.values[t] = integrate_triangle(d, cx.triangle_point(t, 0), cx.triangle_point(t, 1),
                                                   cx.triangle_point(t, 2), quad_order);
            }
        } else {
            out.values = integrate_dual_cells(cx, *dual, d, quad_order);
        }
    }
    return out;
}

} // namespace dec
