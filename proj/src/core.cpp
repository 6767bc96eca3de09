// SPDX-License-Identifier: Apache-2.0
#include <dec/core.hpp>

namespace dec {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateTriangle: return "DuplicateTriangle";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingDualMesh: return "MissingDualMesh";
    case ErrorCode::SingularDecomposition: return "SingularDecomposition";
    case ErrorCode::SingularLocalHodge: return "SingularLocalHodge";
    case ErrorCode::SingularGlobalHodge: return "SingularGlobalHodge";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DegenerateDual: return "DegenerateDual";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::MalformedSection: return "MalformedSection";
    case ErrorCode::NonPlanarMesh: return "NonPlanarMesh";
    case ErrorCode::NoTriangles: return "NoTriangles";
    case ErrorCode::TargetUnreachable: return "TargetUnreachable";
    case ErrorCode::ZeroExactNorm: return "ZeroExactNorm";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::UnknownSolution: return "UnknownSolution";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message)
    , m_code(code)
{}

} // namespace dec
