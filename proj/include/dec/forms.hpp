// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <dec/dual_mesh.hpp>

#include <functional>
#include <variant>

namespace dec {

/// Scalar field, sampled pointwise.
struct ZeroForm
{
    std::function<double(const Point2&)> f;
};

/// a dx + b dy, returned as (a, b).
struct OneForm
{
    std::function<Point2(const Point2&)> coeffs;
};

/// f dx^dy, with f returned.
struct TwoForm
{
    std::function<double(const Point2&)> density;
};

using Form = std::variant<ZeroForm, OneForm, TwoForm>;

int form_degree(const Form& form);

/// Integrate a form over the primal or dual cells of matching degree.
/// `dual` is required for the dual carrier; `quad_order` is the number of
/// Gauss points per direction.
Cochain discretize_form(
    const Form& form,
    Carrier carrier,
    const SimplicialComplex2& cx,
    const DualMesh* dual = nullptr,
    int quad_order = 5);

/// Gauss-Legendre rule on [0, 1].
struct LineRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

const LineRule& gauss_legendre(int order);

/// Integral of w over the straight segment a -> b.
double integrate_one_form(const OneForm& w, const Point2& a, const Point2& b, int order = 5);

/// Integral of f over triangle (a, b, c); signed by orientation.
double integrate_triangle(
    const std::function<double(const Point2&)>& f,
    const Point2& a,
    const Point2& b,
    const Point2& c,
    int order = 5);

/// Integral of f over the dual cell of every vertex.
Vector integrate_dual_cells(
    const SimplicialComplex2& cx,
    const DualMesh& dual,
    const std::function<double(const Point2&)>& f,
    int order = 5);

} // namespace dec
