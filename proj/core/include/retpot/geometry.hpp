#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "retpot/vec.hpp"

namespace retpot {

/// Open ball of positive radius.
struct Ball {
    Vec3 center;
    double radius = 1.0;
};

/// Axis-aligned box with min < max componentwise.
struct Box {
    Vec3 min;
    Vec3 max;
};

/// Bounded source support region.
using SpatialDomain = std::variant<Ball, Box>;

/// One boundary quadrature sample: a point, the outward unit normal there,
/// and the surface weight it carries.
struct SurfaceSample {
    Vec3 point;
    Vec3 normal;
    double weight = 0.0;
};

/// Boundary quadrature mesh; weights sum to the surface area.
struct SurfaceMesh {
    std::vector<SurfaceSample> samples;

    double area() const;
};

/// Parametric interval [t_enter, t_exit] of a ray inside a domain.
struct RaySegment {
    double t_enter = 0.0;
    double t_exit = 0.0;
};

/// Throws std::invalid_argument if the domain parameters are degenerate
/// (non-positive radius, or box extents with min >= max on any axis).
void validate_domain(const SpatialDomain& domain);

/// True when p lies strictly inside the domain; boundary points are outside.
bool contains(const SpatialDomain& domain, const Vec3& p);

/// Unsigned distance from p to the domain boundary (valid inside and outside).
double boundary_distance(const SpatialDomain& domain, const Vec3& p);

/// Largest distance between two domain points.
double diameter(const SpatialDomain& domain);

/// Geometric center (ball center or box midpoint).
Vec3 centroid(const SpatialDomain& domain);

/// Radius of the smallest origin sphere at the centroid covering the domain.
double bounding_radius(const SpatialDomain& domain);

/// Distance along the unit direction `dir` from an interior point p0 to the
/// boundary. Throws std::invalid_argument when p0 is not strictly inside or
/// when |dir| deviates from 1 by more than 1e-12.
double ray_exit_distance(const SpatialDomain& domain, const Vec3& p0, const Vec3& dir);

/// Intersection of the ray {p0 + t*dir, t >= 0} with the domain interior,
/// for p0 anywhere. Empty when the ray misses the domain.
std::optional<RaySegment> ray_clip(const SpatialDomain& domain, const Vec3& p0, const Vec3& dir);

/// Boundary quadrature mesh with exact outward normals. For a ball the rule is
/// Gauss-Legendre in the polar cosine crossed with uniform azimuth nodes
/// (plus the two poles as zero-weight samples); for a box each face carries a
/// resolution x resolution midpoint grid. Throws std::invalid_argument when
/// resolution < 4.
SurfaceMesh boundary_mesh(const SpatialDomain& domain, int resolution);

}  // namespace retpot
