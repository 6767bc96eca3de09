// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dec {

using Point2 = Eigen::Vector2d;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using IntSparseMatrix = Eigen::SparseMatrix<int>;
using Triplet = Eigen::Triplet<double>;

/// z-component of the planar cross product.
inline double cross(const Point2& a, const Point2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

/// Rotation by +90 degrees.
inline Point2 rot90(const Point2& a)
{
    return {-a.y(), a.x()};
}

enum class ErrorCode {
    InvalidInput,
    IndexOutOfRange,
    DuplicateTriangle,
    DegenerateTriangle,
    NonManifoldEdge,
    DimensionMismatch,
    MissingDualMesh,
    SingularDecomposition,
    SingularLocalHodge,
    SingularGlobalHodge,
    SingularSystem,
    DegenerateDual,
    NonFinite,
    UnsupportedVersion,
    MalformedSection,
    NonPlanarMesh,
    NoTriangles,
    TargetUnreachable,
    ZeroExactNorm,
    InsufficientPoints,
    UnknownSolution,
    ConstraintViolation,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Exception type for every recoverable failure in the library.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return m_code; }

private:
    ErrorCode m_code;
};

} // namespace dec
