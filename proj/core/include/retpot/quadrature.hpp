#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "retpot/geometry.hpp"
#include "retpot/vec.hpp"

namespace retpot {

/// Node counts and finite-difference step shared by all numerical operations.
/// The spherical counts (n_radial, n_polar, n_azimuth) drive both the
/// ball product rule and the desingularized polar rule; n_regular is the
/// per-axis count of the box tensor rule.
struct QuadratureSpec {
    int n_radial = 48;
    int n_polar = 32;
    int n_azimuth = 64;
    int n_regular = 24;
    double fd_step = 1e-3;
};

/// Throws std::invalid_argument when a count is below its minimum
/// (n_radial, n_polar >= 4; n_azimuth, n_regular >= 8) or fd_step <= 0.
void validate_spec(const QuadratureSpec& spec);

/// One refinement level: all node counts doubled, fd_step halved.
QuadratureSpec refined(const QuadratureSpec& spec, int levels = 1);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> node;
    std::vector<double> weight;
};

/// Cached Gauss-Legendre rule of size n >= 1; tables are immutable once built.
const GaussLegendre& gauss_legendre(int n);

/// Distance and unit direction from an integration point r toward the
/// observation point p0. Valid only for r != p0; quadrature nodes never
/// coincide with the observation point by construction.
struct KernelPoint {
    double d = 0.0;
    Vec3 direction;  // (p0 - r) / d
};

inline KernelPoint kernel_point(const Vec3& p0, const Vec3& r) {
    Vec3 delta = p0 - r;
    double d = norm(delta);
    return {d, delta / d};
}

namespace detail {

template <class F>
using point_value_t = std::decay_t<std::invoke_result_t<F&, const Vec3&>>;

// Volume rule for a ball: radial Gauss-Legendre on [0, R] (Jacobian r^2),
// Gauss-Legendre in the polar cosine, uniform azimuth. Accumulation order is
// fixed: radial innermost, then polar, then azimuth.
template <class F>
point_value_t<F> integrate_ball(const Ball& ball, F&& f, const QuadratureSpec& spec) {
    const GaussLegendre& rad = gauss_legendre(spec.n_radial);
    const GaussLegendre& pol = gauss_legendre(spec.n_polar);
    const double dbeta = 2.0 * std::numbers::pi / spec.n_azimuth;
    const double r_half = 0.5 * ball.radius;
    point_value_t<F> acc{};
    for (int j = 0; j < spec.n_azimuth; ++j) {
        const double beta = dbeta * j;
        const double cb = std::cos(beta);
        const double sb = std::sin(beta);
        for (int i = 0; i < spec.n_polar; ++i) {
            const double mu = pol.node[i];
            const double st = std::sqrt(1.0 - mu * mu);
            const Vec3 dir{st * cb, st * sb, mu};
            const double w_ang = pol.weight[i] * dbeta;
            for (int m = 0; m < spec.n_radial; ++m) {
                const double r = r_half * (rad.node[m] + 1.0);
                const double w = r_half * rad.weight[m] * r * r * w_ang;
                acc += f(ball.center + r * dir) * w;
            }
        }
    }
    return acc;
}

// Tensor Gauss-Legendre rule over a box, n_regular nodes per axis.
// Accumulation order fixed: x innermost, then y, then z.
template <class F>
point_value_t<F> integrate_box(const Box& box, F&& f, const QuadratureSpec& spec) {
    const GaussLegendre& gl = gauss_legendre(spec.n_regular);
    const Vec3 half = 0.5 * (box.max - box.min);
    const Vec3 mid = 0.5 * (box.max + box.min);
    point_value_t<F> acc{};
    for (int kz = 0; kz < spec.n_regular; ++kz) {
        const double z = mid.z + half.z * gl.node[kz];
        const double wz = half.z * gl.weight[kz];
        for (int ky = 0; ky < spec.n_regular; ++ky) {
            const double y = mid.y + half.y * gl.node[ky];
            const double wyz = wz * half.y * gl.weight[ky];
            for (int kx = 0; kx < spec.n_regular; ++kx) {
                const double x = mid.x + half.x * gl.node[kx];
                acc += f(Vec3{x, y, z}) * (wyz * half.x * gl.weight[kx]);
            }
        }
    }
    return acc;
}

// Shared radial leg of the polar rules: Gauss-Legendre over one clipped ray
// segment with the 1/d^power singularity absorbed into the radial Jacobian.
template <class F>
void accumulate_ray(const Vec3& p0, const Vec3& dir, double t_enter, double t_exit,
                    double w_ang, int kernel_power, const GaussLegendre& rad, F& f,
                    point_value_t<F>& acc) {
    const double mid = 0.5 * (t_exit + t_enter);
    const double half = 0.5 * (t_exit - t_enter);
    for (std::size_t m = 0; m < rad.node.size(); ++m) {
        const double u = mid + half * rad.node[m];
        const double jac = kernel_power == 1 ? u : 1.0;
        acc += f(p0 + u * dir) * (half * rad.weight[m] * jac * w_ang);
    }
}

// Polar rule around an exterior point and a ball: rays hit the ball only
// within the tangent cone, and the chord length vanishes like the square
// root of the cone-edge distance. Aligning the polar axis with the ball
// center and substituting mu = mu_edge + (1 - mu_edge) v^2 makes the chord
// analytic in v, restoring fast convergence.
template <class F>
point_value_t<F> integrate_polar_exterior_ball(const Ball& ball, const Vec3& p0, F&& f,
                                               int kernel_power, const QuadratureSpec& spec) {
    const GaussLegendre& rad = gauss_legendre(spec.n_radial);
    const GaussLegendre& pol = gauss_legendre(spec.n_polar);
    const double dbeta = 2.0 * std::numbers::pi / spec.n_azimuth;
    const Vec3 offset = ball.center - p0;
    const double s = norm(offset);
    const Vec3 axis = offset / s;
    const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 e1 = normalized(cross(axis, helper));
    const Vec3 e2 = cross(axis, e1);
    const double ratio = ball.radius / s;  // sin of the cone half-angle, <= 1
    const double mu_edge = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    point_value_t<F> acc{};
    for (int j = 0; j < spec.n_azimuth; ++j) {
        const double beta = dbeta * j;
        const double cb = std::cos(beta);
        const double sb = std::sin(beta);
        for (int i = 0; i < spec.n_polar; ++i) {
            const double v = 0.5 * (pol.node[i] + 1.0);  // [0, 1]
            const double mu = mu_edge + (1.0 - mu_edge) * v * v;
            const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            const Vec3 dir = st * cb * e1 + st * sb * e2 + mu * axis;
            const double t_mid = s * mu;
            const double disc = ball.radius * ball.radius - s * s * (1.0 - mu * mu);
            const double t_half = std::sqrt(std::max(0.0, disc));
            // d(mu) = 2 (1 - mu_edge) v dv, and the v-interval is [0, 1].
            const double w_ang = pol.weight[i] * (1.0 - mu_edge) * v * dbeta;
            accumulate_ray(p0, dir, t_mid - t_half, t_mid + t_half, w_ang, kernel_power, rad, f,
                           acc);
        }
    }
    return acc;
}

// Polar rule around p0: directions sweep the unit sphere (Gauss-Legendre in
// the polar cosine, uniform azimuth) and each ray is clipped against the
// domain. Integrates f(r)/|r - p0|^power with the 1/d^power singularity
// absorbed into the radial Jacobian. Order: radial innermost, polar, azimuth.
// Exterior points and ball domains take the cone-aligned variant above.
template <class F>
point_value_t<F> integrate_polar_impl(const SpatialDomain& domain, const Vec3& p0, F&& f,
                                      int kernel_power, const QuadratureSpec& spec) {
    if (const Ball* ball = std::get_if<Ball>(&domain)) {
        if (norm(p0 - ball->center) >= ball->radius) {
            return integrate_polar_exterior_ball(*ball, p0, std::forward<F>(f), kernel_power,
                                                 spec);
        }
    }
    const GaussLegendre& rad = gauss_legendre(spec.n_radial);
    const GaussLegendre& pol = gauss_legendre(spec.n_polar);
    const double dbeta = 2.0 * std::numbers::pi / spec.n_azimuth;
    point_value_t<F> acc{};
    for (int j = 0; j < spec.n_azimuth; ++j) {
        const double beta = dbeta * j;
        const double cb = std::cos(beta);
        const double sb = std::sin(beta);
        for (int i = 0; i < spec.n_polar; ++i) {
            const double mu = pol.node[i];
            const double st = std::sqrt(1.0 - mu * mu);
            const Vec3 dir{st * cb, st * sb, mu};
            const std::optional<RaySegment> seg = ray_clip(domain, p0, dir);
            if (!seg) continue;
            accumulate_ray(p0, dir, seg->t_enter, seg->t_exit, pol.weight[i] * dbeta,
                           kernel_power, rad, f, acc);
        }
    }
    return acc;
}

}  // namespace detail

/// Integral of a smooth f over the domain: ball product rule or box tensor
/// rule. Not valid for integrands with singularities inside the domain.
template <class F>
detail::point_value_t<F> integrate_regular(const SpatialDomain& domain, F&& f,
                                           const QuadratureSpec& spec) {
    validate_spec(spec);
    validate_domain(domain);
    if (const Ball* ball = std::get_if<Ball>(&domain)) {
        return detail::integrate_ball(*ball, std::forward<F>(f), spec);
    }
    return detail::integrate_box(std::get<Box>(domain), std::forward<F>(f), spec);
}

/// Integral of f(r)/|r - p0|^power over the domain for an observation point
/// p0 strictly inside, with the singularity removed by the polar substitution
/// r = p0 + u*omega(alpha, beta). kernel_power must be 1 or 2; f itself must
/// be bounded. Throws std::invalid_argument on a non-interior p0 or an
/// unsupported power.
template <class F>
detail::point_value_t<F> integrate_polar_singular(const SpatialDomain& domain, const Vec3& p0,
                                                  F&& f, int kernel_power,
                                                  const QuadratureSpec& spec) {
    validate_spec(spec);
    validate_domain(domain);
    if (kernel_power != 1 && kernel_power != 2) {
        throw std::invalid_argument("integrate_polar_singular: kernel_power must be 1 or 2");
    }
    if (!contains(domain, p0)) {
        throw std::invalid_argument("integrate_polar_singular: p0 must lie strictly inside the domain");
    }
    return detail::integrate_polar_impl(domain, p0, std::forward<F>(f), kernel_power, spec);
}

/// Same transformed rule with rays clipped to the domain, valid for any p0
/// (inside, on, or outside the domain). Coincides with
/// integrate_polar_singular for interior p0 and handles near-boundary
/// exterior points where the untransformed rule degrades.
template <class F>
detail::point_value_t<F> integrate_polar_clipped(const SpatialDomain& domain, const Vec3& p0,
                                                 F&& f, int kernel_power,
                                                 const QuadratureSpec& spec) {
    validate_spec(spec);
    validate_domain(domain);
    if (kernel_power != 1 && kernel_power != 2) {
        throw std::invalid_argument("integrate_polar_clipped: kernel_power must be 1 or 2");
    }
    return detail::integrate_polar_impl(domain, p0, std::forward<F>(f), kernel_power, spec);
}

/// Weighted sum of f(point, normal) over the mesh samples, in sample order.
template <class F>
std::decay_t<std::invoke_result_t<F&, const Vec3&, const Vec3&>> integrate_surface(
    const SurfaceMesh& mesh, F&& f) {
    std::decay_t<std::invoke_result_t<F&, const Vec3&, const Vec3&>> acc{};
    for (const SurfaceSample& s : mesh.samples) {
        acc += f(s.point, s.normal) * s.weight;
    }
    return acc;
}

/// Weighted sum over frequency components: sum_k w_k * g(omega_k).
/// Throws std::invalid_argument when two components share a frequency.
template <class F>
std::decay_t<std::invoke_result_t<F&, double>> integrate_band(
    std::span<const std::pair<double, Complex>> components, F&& g) {
    for (std::size_t a = 0; a < components.size(); ++a) {
        for (std::size_t b = a + 1; b < components.size(); ++b) {
            if (components[a].first == components[b].first) {
                throw std::invalid_argument("integrate_band: component frequencies must be distinct");
            }
        }
    }
    std::decay_t<std::invoke_result_t<F&, double>> acc{};
    for (const auto& [omega, weight] : components) {
        acc += weight * g(omega);
    }
    return acc;
}

}  // namespace retpot
