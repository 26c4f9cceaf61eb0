#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>

namespace bellman2d {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// 2D cross product (z-component of the 3D cross of the embedded vectors).
inline double cross2(const Vec2& a, const Vec2& b) {
    return a.x() * b.y() - a.y() * b.x();
}

/// CCW angle of b relative to a, normalized to [0, 2*pi).
double ccw_angle(const Vec2& a, const Vec2& b);

/// Classification of a point against a convex region.
enum class RegionSide { Inside, Boundary, Outside };

/// Base class for the library's recoverable numeric failures.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoTangent : NumericError {
    using NumericError::NumericError;
};
struct QuadratureFailure : NumericError {
    using NumericError::NumericError;
};
struct TooManyChanges : NumericError {
    using NumericError::NumericError;
};
struct ContinuationStall : NumericError {
    using NumericError::NumericError;
};
struct ChordExitsDomain : NumericError {
    using NumericError::NumericError;
};
struct SingularIntegrand : NumericError {
    using NumericError::NumericError;
};
struct CurvatureDegenerate : NumericError {
    using NumericError::NumericError;
};
struct EmptyMesh : NumericError {
    using NumericError::NumericError;
};
struct NotConverged : NumericError {
    using NumericError::NumericError;
};
struct StuckPoint : NumericError {
    using NumericError::NumericError;
};
struct NoCandidate : NumericError {
    using NumericError::NumericError;
};
struct InvalidExponents : NumericError {
    using NumericError::NumericError;
};
struct NotConvex : NumericError {
    using NumericError::NumericError;
};

} // namespace bellman2d
