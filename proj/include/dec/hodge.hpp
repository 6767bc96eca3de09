// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <dec/forms.hpp>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <array>
#include <iosfwd>
#include <memory>
#include <string_view>
#include <vector>

namespace dec {

/// Local 1-form Hodge of one triangle; rows and columns follow local edges.
struct LocalHodge1
{
    int triangle = -1;
    std::array<int, 3> edges{};
    Eigen::Matrix3d matrix = Eigen::Matrix3d::Zero();
};

/// Closed-form local Hodge from the three globally oriented edge vectors and
/// the matching dual vectors inside the triangle.
///
/// Row i maps the primal cochain of the constant form reconstructed from the
/// three edge values to its integral over dual vector i.
Eigen::Matrix3d local_hodge1_matrix(
    const std::array<Point2, 3>& edge_vectors,
    const std::array<Point2, 3>& dual_vectors);

LocalHodge1 local_hodge1(const SimplicialComplex2& cx, const DualMesh& dual, int t);

/// Diagonal dual cell areas (V x V).
SparseMatrix assemble_hodge0(const SimplicialComplex2& cx, const DualMesh& dual);
/// Sum of the local matrices scattered into global edges (E x E).
SparseMatrix assemble_hodge1(const SimplicialComplex2& cx, const DualMesh& dual);
/// Diagonal inverse triangle areas (F x F).
SparseMatrix assemble_hodge2(const SimplicialComplex2& cx);

struct HodgeOperators
{
    SparseMatrix h0;
    SparseMatrix h1;
    SparseMatrix h2;
};

HodgeOperators build_hodge(const SimplicialComplex2& cx, const DualMesh& dual);

enum class InverseMode { Elementwise, DirectSolve };

std::string_view to_string(InverseMode mode);
InverseMode inverse_mode_from_name(std::string_view name);

/// Map from dual 1-cochains back to primal 1-cochains.
///
/// Elementwise: sum over triangles of W_T N_T^{-1}, where N_T is the local
/// matrix built with the full dual edge vectors and W_T splits each edge
/// between its triangles by half dual edge length. Exact for constant forms.
/// DirectSolve: sparse LU of the assembled H1.
class InverseHodge1
{
public:
    InverseHodge1(const SimplicialComplex2& cx, const DualMesh& dual, const SparseMatrix& h1,
                  InverseMode mode);

    InverseMode mode() const { return m_mode; }
    Vector apply(const Vector& dual_cochain) const;
    /// Explicit sparse matrix; only available in elementwise mode.
    const SparseMatrix& matrix() const;

private:
    InverseMode m_mode;
    SparseMatrix m_matrix;
    std::shared_ptr<Eigen::SparseLU<SparseMatrix>> m_lu;
};

/// Elementwise inverse as a sparse matrix. Throws SingularLocalHodge.
SparseMatrix elementwise_inverse_hodge1(const SimplicialComplex2& cx, const DualMesh& dual);

/// Largest absolute difference between H1 applied to the sampled primal
/// cochain of w and the sampled dual cochain of the Hodge star of w.
double hodge_exactness_error(
    const OneForm& w,
    const SimplicialComplex2& cx,
    const DualMesh& dual,
    int quad_order = 5);

/// Euclidean norm of H1 w_primal - (star w)_dual over all edges.
double hodge_error_l2(
    const OneForm& w,
    const SimplicialComplex2& cx,
    const DualMesh& dual,
    int quad_order = 5);

/// Hodge star of a 1-form in the plane: (a, b) -> (-b, a).
OneForm star(const OneForm& w);

/// Local 2-norm condition number of a 3 x 3 matrix (infinity when singular).
double condition_number(const Eigen::Matrix3d& m);

constexpr double kConditionLimit = 1e12;

void write_matrix_market(std::ostream& out, const SparseMatrix& m);

} // namespace dec
