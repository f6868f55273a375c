// Microbenchmarks for the quadrature kernels and the point evaluators built
// on them. Counts are kept small so a full run stays in seconds; relative
// movement between runs is what matters.

#include <benchmark/benchmark.h>

#include "retpot/fields.hpp"
#include "retpot/potentials.hpp"
#include "retpot/quadrature.hpp"
#include "retpot/sources.hpp"
#include "retpot/verify.hpp"

namespace {

using namespace retpot;

QuadratureSpec small_spec() {
    QuadratureSpec spec;
    spec.n_radial = 16;
    spec.n_polar = 12;
    spec.n_azimuth = 24;
    spec.n_regular = 12;
    return spec;
}

void bm_gauss_legendre_uncached(benchmark::State& state) {
    // Odd sizes walk outside the cached defaults, so each n is built once and
    // then served from cache; measure the amortized lookup.
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauss_legendre(static_cast<int>(state.range(0))));
    }
}
BENCHMARK(bm_gauss_legendre_uncached)->Arg(48)->Arg(96);

void bm_regular_coulomb(benchmark::State& state) {
    const SpatialDomain ball = Ball{Vec3{0, 0, 0}, 1.0};
    const Vec3 p0{3.0, 0, 0};
    const QuadratureSpec spec = small_spec();
    for (auto _ : state) {
        const Complex v = integrate_regular(
            ball, [&](const Vec3& r) { return Complex{1.0, 0.0} / norm(r - p0); }, spec);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_regular_coulomb);

void bm_polar_singular_coulomb(benchmark::State& state) {
    const SpatialDomain ball = Ball{Vec3{0, 0, 0}, 1.0};
    const Vec3 p0{0.5, 0, 0};
    const QuadratureSpec spec = small_spec();
    for (auto _ : state) {
        const Complex v = integrate_polar_singular(
            ball, p0, [](const Vec3&) { return Complex{1.0, 0.0}; }, 1, spec);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_polar_singular_coulomb);

void bm_potential_static_interior(benchmark::State& state) {
    const SourceModel model = uniform_ball_charge(1.0, 1.0);
    const QuadratureSpec spec = small_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(potential_sample(model, Vec3{0.4, 0.1, -0.2}, 0.0, spec));
    }
}
BENCHMARK(bm_potential_static_interior);

void bm_fields_mono_exterior(benchmark::State& state) {
    const SourceModel model = polarization_ball_current(1.0, 1.0, 1.0);
    const QuadratureSpec spec = small_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(field_sample(model, Vec3{2.0, 0.5, 0.0}, 0.0, spec));
    }
}
BENCHMARK(bm_fields_mono_exterior);

void bm_flux_sphere(benchmark::State& state) {
    const SourceModel model = uniform_ball_charge(1.0, 1.0);
    const QuadratureSpec spec = small_spec();
    const SurfaceMesh mesh = boundary_mesh(Ball{Vec3{0, 0, 0}, 2.0}, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauss_flux_test(model, mesh, spec));
    }
}
BENCHMARK(bm_flux_sphere);

}  // namespace

BENCHMARK_MAIN();
