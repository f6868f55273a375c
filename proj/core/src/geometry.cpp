#include "retpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "retpot/quadrature.hpp"

namespace retpot {

namespace {

constexpr double kUnitDirTol = 1e-12;

const Ball* as_ball(const SpatialDomain& d) { return std::get_if<Ball>(&d); }

}  // namespace

double SurfaceMesh::area() const {
    double sum = 0.0;
    for (const SurfaceSample& s : samples) sum += s.weight;
    return sum;
}

void validate_domain(const SpatialDomain& domain) {
    if (const Ball* b = as_ball(domain)) {
        if (!(b->radius > 0.0)) throw std::invalid_argument("ball radius must be > 0");
        return;
    }
    const Box& box = std::get<Box>(domain);
    if (!(box.min.x < box.max.x && box.min.y < box.max.y && box.min.z < box.max.z)) {
        throw std::invalid_argument("box extents require min < max on every axis");
    }
}

bool contains(const SpatialDomain& domain, const Vec3& p) {
    if (const Ball* b = as_ball(domain)) {
        Vec3 q = p - b->center;
        return dot(q, q) < b->radius * b->radius;
    }
    const Box& box = std::get<Box>(domain);
    return box.min.x < p.x && p.x < box.max.x && box.min.y < p.y && p.y < box.max.y &&
           box.min.z < p.z && p.z < box.max.z;
}

double boundary_distance(const SpatialDomain& domain, const Vec3& p) {
    if (const Ball* b = as_ball(domain)) {
        return std::abs(b->radius - norm(p - b->center));
    }
    const Box& box = std::get<Box>(domain);
    double ex = std::max({box.min.x - p.x, 0.0, p.x - box.max.x});
    double ey = std::max({box.min.y - p.y, 0.0, p.y - box.max.y});
    double ez = std::max({box.min.z - p.z, 0.0, p.z - box.max.z});
    double outside = std::sqrt(ex * ex + ey * ey + ez * ez);
    if (outside > 0.0) return outside;
    double sx = std::min(p.x - box.min.x, box.max.x - p.x);
    double sy = std::min(p.y - box.min.y, box.max.y - p.y);
    double sz = std::min(p.z - box.min.z, box.max.z - p.z);
    return std::min({sx, sy, sz});
}

double diameter(const SpatialDomain& domain) {
    if (const Ball* b = as_ball(domain)) return 2.0 * b->radius;
    const Box& box = std::get<Box>(domain);
    return norm(box.max - box.min);
}

Vec3 centroid(const SpatialDomain& domain) {
    if (const Ball* b = as_ball(domain)) return b->center;
    const Box& box = std::get<Box>(domain);
    return 0.5 * (box.min + box.max);
}

double bounding_radius(const SpatialDomain& domain) {
    if (const Ball* b = as_ball(domain)) return b->radius;
    const Box& box = std::get<Box>(domain);
    return 0.5 * norm(box.max - box.min);
}

double ray_exit_distance(const SpatialDomain& domain, const Vec3& p0, const Vec3& dir) {
    if (!contains(domain, p0)) {
        throw std::invalid_argument("ray_exit_distance: p0 must lie strictly inside the domain");
    }
    if (std::abs(norm(dir) - 1.0) > kUnitDirTol) {
        throw std::invalid_argument("ray_exit_distance: dir must be a unit vector");
    }
    std::optional<RaySegment> seg = ray_clip(domain, p0, dir);
    // An interior origin always yields a segment starting at t = 0.
    return seg ? seg->t_exit : 0.0;
}

std::optional<RaySegment> ray_clip(const SpatialDomain& domain, const Vec3& p0, const Vec3& dir) {
    if (const Ball* ball = as_ball(domain)) {
        Vec3 q = p0 - ball->center;
        double b = dot(dir, q);
        double c = dot(q, q) - ball->radius * ball->radius;
        double disc = b * b - c;
        if (disc <= 0.0) return std::nullopt;
        double s = std::sqrt(disc);
        double t_exit = -b + s;
        if (t_exit <= 0.0) return std::nullopt;
        return RaySegment{std::max(-b - s, 0.0), t_exit};
    }
    const Box& box = std::get<Box>(domain);
    double t_enter = 0.0;
    double t_exit = std::numeric_limits<double>::infinity();
    const double pmin[3] = {box.min.x, box.min.y, box.min.z};
    const double pmax[3] = {box.max.x, box.max.y, box.max.z};
    const double orig[3] = {p0.x, p0.y, p0.z};
    const double d[3] = {dir.x, dir.y, dir.z};
    for (int i = 0; i < 3; ++i) {
        if (d[i] == 0.0) {
            if (orig[i] <= pmin[i] || orig[i] >= pmax[i]) return std::nullopt;
            continue;
        }
        double t0 = (pmin[i] - orig[i]) / d[i];
        double t1 = (pmax[i] - orig[i]) / d[i];
        if (t0 > t1) std::swap(t0, t1);
        t_enter = std::max(t_enter, t0);
        t_exit = std::min(t_exit, t1);
    }
    if (t_exit <= t_enter || t_exit <= 0.0) return std::nullopt;
    return RaySegment{t_enter, t_exit};
}

SurfaceMesh boundary_mesh(const SpatialDomain& domain, int resolution) {
    if (resolution < 4) throw std::invalid_argument("boundary_mesh: resolution must be >= 4");
    validate_domain(domain);
    SurfaceMesh mesh;
    if (const Ball* ball = as_ball(domain)) {
        const double r = ball->radius;
        const int n_polar = resolution;
        const int n_azimuth = 2 * resolution;
        const GaussLegendre& gl = gauss_legendre(n_polar);
        const double dbeta = 2.0 * std::numbers::pi / n_azimuth;
        mesh.samples.reserve(static_cast<std::size_t>(n_polar) * n_azimuth + 2);
        for (int i = 0; i < n_polar; ++i) {
            const double mu = gl.node[i];  // cos(theta)
            const double st = std::sqrt(1.0 - mu * mu);
            const double w = r * r * gl.weight[i] * dbeta;
            for (int j = 0; j < n_azimuth; ++j) {
                const double beta = dbeta * j;
                Vec3 n{st * std::cos(beta), st * std::sin(beta), mu};
                mesh.samples.push_back({ball->center + r * n, n, w});
            }
        }
        // Poles carry zero weight; they are included so that pointwise boundary
        // checks (current tangency) see the axis extremes.
        mesh.samples.push_back({ball->center + r * Vec3{0, 0, 1}, {0, 0, 1}, 0.0});
        mesh.samples.push_back({ball->center + r * Vec3{0, 0, -1}, {0, 0, -1}, 0.0});
        return mesh;
    }
    const Box& box = std::get<Box>(domain);
    const Vec3 ext = box.max - box.min;
    const double extent[3] = {ext.x, ext.y, ext.z};
    const double lo[3] = {box.min.x, box.min.y, box.min.z};
    mesh.samples.reserve(static_cast<std::size_t>(6) * resolution * resolution);
    for (int axis = 0; axis < 3; ++axis) {
        const int u = (axis + 1) % 3;
        const int v = (axis + 2) % 3;
        const double cell = extent[u] * extent[v] / (static_cast<double>(resolution) * resolution);
        for (int side = 0; side < 2; ++side) {
            double coords[3];
            coords[axis] = side == 0 ? lo[axis] : lo[axis] + extent[axis];
            double n[3] = {0.0, 0.0, 0.0};
            n[axis] = side == 0 ? -1.0 : 1.0;
            const Vec3 normal{n[0], n[1], n[2]};
            for (int i = 0; i < resolution; ++i) {
                coords[u] = lo[u] + extent[u] * (i + 0.5) / resolution;
                for (int j = 0; j < resolution; ++j) {
                    coords[v] = lo[v] + extent[v] * (j + 0.5) / resolution;
                    mesh.samples.push_back({{coords[0], coords[1], coords[2]}, normal, cell});
                }
            }
        }
    }
    return mesh;
}

}  // namespace retpot
