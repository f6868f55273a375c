#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "retpot/fields.hpp"

using namespace retpot;
using namespace retpot::oracle;
using namespace std::complex_literals;

namespace {
constexpr double kPi = std::numbers::pi;
const QuadratureSpec kSmall{16, 12, 24, 12, 1e-3};
const QuadratureSpec kDefault{};
const double kRho0 = 3.0 / (4.0 * kPi);

double cnorm(const CVec3& v) {
    return std::sqrt(std::norm(v.x) + std::norm(v.y) + std::norm(v.z));
}
}  // namespace

TEST_SUITE("fields") {

TEST_CASE("uniform ball electric field matches the shell theorem") {
    const SourceModel m = uniform_ball_charge(1.0, kRho0);
    // Exterior: Q/r^2 radially outward. Interior: Q r / R^3.
    const CVec3 eo = efield_static(m, Vec3{2, 0, 0}, kSmall);
    CHECK(eo.x.real() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::abs(eo.y) < 1e-12);
    CHECK(std::abs(eo.z) < 1e-12);
    const CVec3 ei = efield_static(m, Vec3{0.5, 0, 0}, kSmall);
    CHECK(ei.x.real() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(ei.x.real() == doctest::Approx(uniform_ball_e(1.0, 1.0, 0.5)).epsilon(1e-8));
    // The field points along the observation direction.
    const CVec3 ey = efield_static(m, Vec3{0, 0.5, 0}, kSmall);
    CHECK(ey.y.real() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(std::abs(ey.x) < 1e-10);
    // Zero at the center by symmetry.
    CHECK(cnorm(efield_static(m, Vec3{0, 0, 0}, kSmall)) < 1e-12);
    // No current, no magnetic field.
    CHECK(cnorm(hfield_static(m, Vec3{0.5, 0, 0}, kSmall)) == 0.0);
}

TEST_CASE("azimuthal current magnetic field on the axis") {
    const SourceModel m = azimuthal_ball_current(1.0, 1.0);
    // Closed form per unit amplitude: H_z(0) = 2 pi / 3, and
    // H_z(z) = 16 pi R^5 / (105 z^3) far outside.
    const CVec3 h0 = hfield_static(m, Vec3{0, 0, 0}, kSmall);
    CHECK(h0.z.real() == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-9));
    CHECK(std::abs(h0.x) < 1e-12);
    CHECK(std::abs(h0.y) < 1e-12);
    const CVec3 hi = hfield_static(m, Vec3{0, 0, 0.5}, kSmall);
    CHECK(hi.z.real() == doctest::Approx(1.52217644048934).epsilon(1e-9));
    CHECK(hi.z.real() == doctest::Approx(azimuthal_h_z_axis(1.0, 1.0, 0.5)).epsilon(1e-9));
    const CVec3 ho = hfield_static(m, Vec3{0, 0, 3}, kSmall);
    CHECK(ho.z.real() == doctest::Approx(16.0 * kPi / 2835.0).epsilon(1e-9));
    CHECK(ho.z.real() == doctest::Approx(azimuthal_h_z_axis(1.0, 1.0, 3.0)).epsilon(1e-9));
    // Amplitude scales linearly; no electric field without charge.
    const CVec3 h2 = hfield_static(azimuthal_ball_current(1.0, 2.5), Vec3{0, 0, 0.5}, kSmall);
    CHECK(h2.z.real() == doctest::Approx(2.5 * hi.z.real()).epsilon(1e-12));
    CHECK(cnorm(efield_static(m, Vec3{0.5, 0, 0}, kSmall)) == 0.0);
}

TEST_CASE("ring decomposition oracle agrees with the closed form") {
    // The independent oracle stacks circular loops; it must land on the same
    // axis values the closed form gives before it can arbitrate anything.
    for (double z : {0.0, 0.5, 1.5, 3.0}) {
        CHECK(ring_h_z_axis(1.0, 1.0, z, 400) ==
              doctest::Approx(azimuthal_h_z_axis(1.0, 1.0, z)).epsilon(2e-5));
    }
    // And the production field should agree with the oracle directly.
    const SourceModel m = azimuthal_ball_current(1.0, 1.3);
    const CVec3 h = hfield_static(m, Vec3{0, 0, 0.5}, kSmall);
    CHECK(h.z.real() == doctest::Approx(ring_h_z_axis(1.3, 1.0, 0.5, 400)).epsilon(1e-4));
}

TEST_CASE("monochromatic field amplitudes match reference values") {
    const SourceModel m = polarization_ball_current(1.0, 1.0, 1.0);
    const MonoFields f = fields_mono(m, Vec3{3, 0, 0}, kDefault);
    CHECK(f.e_a.z.real() == doctest::Approx(0.0617382).epsilon(1e-6));
    CHECK(f.e_a.z.imag() == doctest::Approx(-0.27979111).epsilon(1e-6));
    CHECK(std::abs(f.e_a.x) < 1e-9);
    CHECK(std::abs(f.e_a.y) < 1e-9);
    CHECK(f.h_a.y.real() == doctest::Approx(-0.05700576).epsilon(1e-6));
    CHECK(f.h_a.y.imag() == doctest::Approx(0.31299034).epsilon(1e-6));
    CHECK(std::abs(f.h_a.x) < 1e-9);
    CHECK(std::abs(f.h_a.z) < 1e-9);
}

TEST_CASE("monochromatic fields reduce to statics as k -> 0") {
    MonochromaticSource charge;
    charge.omega = 1e-8;
    charge.rho_a = [](const Vec3&) { return Complex(kRho0); };
    charge.j_a = [](const Vec3&) { return CVec3{}; };
    const SourceModel mc{Ball{{0, 0, 0}, 1.0}, Constants{}, charge};
    const MonoFields fc = fields_mono(mc, Vec3{2, 0, 0}, kSmall);
    CHECK(std::abs(fc.e_a.x - 0.25) < 1e-7);

    MonochromaticSource curr;
    curr.omega = 1e-8;
    curr.rho_a = [](const Vec3&) { return Complex(0.0); };
    curr.j_a = [](const Vec3& p) {
        const double f = 1.0 - dot(p, p);
        return CVec3{-f * p.y, f * p.x, 0.0};
    };
    const SourceModel mj{Ball{{0, 0, 0}, 1.0}, Constants{}, curr};
    const MonoFields fj = fields_mono(mj, Vec3{0, 0, 0.5}, kSmall);
    CHECK(std::abs(fj.h_a.z - azimuthal_h_z_axis(1.0, 1.0, 0.5)) < 1e-6);
}

TEST_CASE("electric field is consistent with the potential gradient") {
    const double h = kSmall.fd_step;
    const Vec3 ex{h, 0, 0}, ey{0, h, 0}, ez{0, 0, h};
    // Static: E = -grad phi.
    {
        const SourceModel m = uniform_ball_charge(1.0, kRho0);
        for (const Vec3& p0 : {Vec3{2, 0, 0}, Vec3{0.5, 0, 0}, Vec3{0.2, 0.3, -0.1}}) {
            auto phi = [&](const Vec3& q) { return scalar_potential_static(m, q, kSmall); };
            const CVec3 grad{(phi(p0 + ex) - phi(p0 - ex)) / (2.0 * h),
                             (phi(p0 + ey) - phi(p0 - ey)) / (2.0 * h),
                             (phi(p0 + ez) - phi(p0 - ez)) / (2.0 * h)};
            const CVec3 e = efield_static(m, p0, kSmall);
            CHECK(cnorm(e + grad) < 1e-6);
        }
    }
    // Monochromatic: e_a = -grad phi_a + i k a_a.
    {
        const SourceModel m = polarization_ball_current(1.0, 1.0, 1.0);
        const double k = 1.0;
        for (const Vec3& p0 : {Vec3{0, 0, 2}, Vec3{0.3, 0.1, 0.2}}) {
            auto phi = [&](const Vec3& q) { return potentials_mono(m, q, kSmall).phi_a; };
            const CVec3 grad{(phi(p0 + ex) - phi(p0 - ex)) / (2.0 * h),
                             (phi(p0 + ey) - phi(p0 - ey)) / (2.0 * h),
                             (phi(p0 + ez) - phi(p0 - ez)) / (2.0 * h)};
            const CVec3 expected = -1.0 * grad + (1.0i * k) * potentials_mono(m, p0, kSmall).a_a;
            const CVec3 got = fields_mono(m, p0, kSmall).e_a;
            CHECK(cnorm(got - expected) < 1e-5);
        }
    }
}

TEST_CASE("monochromatic sample applies the oscillation factor") {
    const SourceModel m = polarization_ball_current(1.0, 1.3, 0.7);
    const Vec3 p0{0, 0, 2};
    const MonoFields amp = fields_mono(m, p0, kSmall);
    const double t = 0.61;
    const FieldSample s = field_sample(m, p0, t, kSmall);
    const Complex phase = std::polar(1.0, -1.3 * t);
    CHECK(cnorm(s.e - phase * amp.e_a) < 1e-15);
    CHECK(cnorm(s.h - phase * amp.h_a) < 1e-15);
    CHECK(s.point.z == 2.0);
    CHECK(s.t == t);
}

TEST_CASE("band fields are the weighted component sum") {
    const SourceModel a = polarization_ball_current(1.0, 1.0, 1.0);
    const SourceModel b = polarization_ball_current(1.0, 2.0, 0.5);
    const Complex wa = 1.0;
    const Complex wb = 0.5 - 0.25i;
    const SourceModel band = band_limited({{wa, a}, {wb, b}});
    const Vec3 p0{0, 0, 2};
    const double t = 0.7;
    const FieldSample got = fields_general(band, p0, t, kSmall);
    const MonoFields fa = fields_mono(a, p0, kSmall);
    const MonoFields fb = fields_mono(b, p0, kSmall);
    const Complex ca = wa * std::polar(1.0, -1.0 * t);
    const Complex cb = wb * std::polar(1.0, -2.0 * t);
    CHECK(cnorm(got.e - (ca * fa.e_a + cb * fb.e_a)) < 1e-13);
    CHECK(cnorm(got.h - (ca * fa.h_a + cb * fb.h_a)) < 1e-13);
    const FieldSample via = field_sample(band, p0, t, kSmall);
    CHECK(cnorm(via.e - got.e) == 0.0);
}

TEST_CASE("time derivative is analytic per component") {
    // Static models have no time dependence at all.
    const FieldSample ds =
        field_time_derivative(uniform_ball_charge(1.0, 1.0), Vec3{0.5, 0, 0}, 0.0, kSmall);
    CHECK(cnorm(ds.e) == 0.0);
    CHECK(cnorm(ds.h) == 0.0);
    // Monochromatic: d/dt multiplies by -i omega.
    const SourceModel m = polarization_ball_current(1.0, 1.3, 0.7);
    const Vec3 p0{0, 0, 2};
    const double t = 0.4;
    const FieldSample f = field_sample(m, p0, t, kSmall);
    const FieldSample df = field_time_derivative(m, p0, t, kSmall);
    CHECK(cnorm(df.e - (-1.3i) * f.e) < 1e-13);
    CHECK(cnorm(df.h - (-1.3i) * f.h) < 1e-13);
    // Band: each component rotates at its own rate.
    const SourceModel b = polarization_ball_current(1.0, 2.0, 0.5);
    const SourceModel band = band_limited({{1.0, m}, {0.5, b}});
    const FieldSample dband = field_time_derivative(band, p0, t, kSmall);
    const Complex cm = std::polar(1.0, -1.3 * t) * (-1.3i);
    const Complex cb = 0.5 * std::polar(1.0, -2.0 * t) * (-2.0i);
    const MonoFields fm = fields_mono(m, p0, kSmall);
    const MonoFields fb = fields_mono(b, p0, kSmall);
    CHECK(cnorm(dband.e - (cm * fm.e_a + cb * fb.e_a)) < 1e-13);
    CHECK(cnorm(dband.h - (cm * fm.h_a + cb * fb.h_a)) < 1e-13);
}

TEST_CASE("variant dispatch rejects mismatched models") {
    const SourceModel stat = uniform_ball_charge(1.0, 1.0);
    const SourceModel mono = polarization_ball_current(1.0, 1.0, 1.0);
    const SourceModel band = band_limited({{1.0, mono}});
    CHECK_THROWS_AS(efield_static(mono, Vec3{2, 0, 0}, kSmall), std::invalid_argument);
    CHECK_THROWS_AS(efield_static(band, Vec3{2, 0, 0}, kSmall), std::invalid_argument);
    CHECK_THROWS_AS(hfield_static(mono, Vec3{2, 0, 0}, kSmall), std::invalid_argument);
    CHECK_THROWS_AS(fields_mono(stat, Vec3{2, 0, 0}, kSmall), std::invalid_argument);
    CHECK_THROWS_AS(fields_mono(band, Vec3{2, 0, 0}, kSmall), std::invalid_argument);
    CHECK_THROWS_AS(fields_general(stat, Vec3{2, 0, 0}, 0.0, kSmall), std::invalid_argument);
    CHECK_THROWS_AS(fields_general(mono, Vec3{2, 0, 0}, 0.0, kSmall), std::invalid_argument);
    CHECK_NOTHROW(field_sample(stat, Vec3{2, 0, 0}, 0.0, kSmall));
    CHECK_NOTHROW(field_sample(mono, Vec3{2, 0, 0}, 0.0, kSmall));
    CHECK_NOTHROW(field_sample(band, Vec3{2, 0, 0}, 0.0, kSmall));
}

}  // TEST_SUITE
