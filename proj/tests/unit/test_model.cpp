#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "optomech/error.hpp"
#include "optomech/model.hpp"

using namespace optomech;

namespace {

SystemParams frame_params(double e_over_omega) {
    SystemParams p;
    p.omega_m = 1.0e4;
    p.delta_s = p.omega_m;
    p.E = e_over_omega * p.omega_m;
    return p;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an optomech::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validation rejects the threshold and degenerate rates") {
    SystemParams p;
    p.delta_s = 1.0;
    p.E = 1.0;
    CHECK(code_of([&] { (void)validate(p); }) == ErrorCode::ParametricThreshold);
    p.E = -1.5;
    CHECK(code_of([&] { (void)validate(p); }) == ErrorCode::ParametricThreshold);

    SystemParams q;
    q.gamma_m = 0.0;
    CHECK(code_of([&] { (void)validate(q); }) == ErrorCode::NonPositiveRate);
    q = SystemParams{};
    q.kappa = -3.0;
    CHECK(code_of([&] { (void)validate(q); }) == ErrorCode::NonPositiveRate);
    q = SystemParams{};
    q.n_m = -1.0;
    CHECK(code_of([&] { (void)validate(q); }) == ErrorCode::InvalidArgument);
    q = SystemParams{};
    q.F = {std::nan(""), 0.0};
    CHECK(code_of([&] { (void)validate(q); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("caption parameters are accepted") {
    SystemParams p;
    p.kappa = 500.0;
    p.omega_m = 1.0e4;
    CHECK_NOTHROW((void)validate(p));
    CHECK_NOTHROW((void)resolve(reference_scenario()));
}

TEST_CASE("zero two-photon drive is the identity transformation") {
    const SqueezedFrame f = squeeze_frame(frame_params(0.0));
    CHECK(f.r == 0.0);
    CHECK(f.omega_s == doctest::Approx(1.0e4).epsilon(1e-15));
    CHECK(f.G0 == 0.0);
    CHECK(f.g_OM == doctest::Approx(115.0).epsilon(1e-15));
}

TEST_CASE("effective cavity frequency at the caption drives") {
    // exact values sqrt(1 - e^2), compared against the two-decimal captions
    const double e[3] = {0.43, 0.87, 0.95};
    const double caption[3] = {0.9, 0.5, 0.3};
    for (int k = 0; k < 3; ++k) {
        const double ratio = squeeze_frame(frame_params(e[k])).omega_s / 1.0e4;
        CHECK(ratio == doctest::Approx(std::sqrt(1.0 - e[k] * e[k])).epsilon(1e-14));
        CHECK(std::abs(ratio - caption[k]) < 0.05);
    }
    CHECK(squeeze_frame(frame_params(0.95)).omega_s / 1.0e4 == doctest::Approx(0.312).epsilon(1e-3));
}

TEST_CASE("squeezing parameter against a high-precision value") {
    // quarter log of 1.87/0.13 evaluated with 50-digit arithmetic
    CHECK(squeeze_frame(frame_params(0.87)).r == doctest::Approx(0.66653981484826247).epsilon(1e-14));
}

TEST_CASE("small drives keep full relative precision") {
    const double x = 1e-10;
    CHECK(squeeze_frame(frame_params(x)).r == doctest::Approx(0.5 * x).epsilon(1e-12));
}

TEST_CASE("r grows and omega_s falls with the drive") {
    double last_r = -1.0, last_w = 2.0e4;
    for (int k = 0; k < 200; ++k) {
        const auto f = squeeze_frame(frame_params(0.995 * k / 199.0));
        CHECK(f.r > last_r);
        CHECK(f.omega_s < last_w);
        last_r = f.r;
        last_w = f.omega_s;
    }
}

TEST_CASE("hyperbolic identity for the couplings") {
    for (double e : {0.0, 0.1, 0.43, 0.87, 0.95, 0.999}) {
        const auto p = frame_params(e);
        const auto f = squeeze_frame(p);
        const double c = f.g_OM / p.g0, s = 2.0 * f.G0 / p.g0;
        CHECK(c * c - s * s == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::cosh(2.0 * f.r) * std::cosh(2.0 * f.r) - std::sinh(2.0 * f.r) * std::sinh(2.0 * f.r) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("weak drive recovers the bare model") {
    const auto f = squeeze_frame(frame_params(1e-8));
    CHECK(f.G0 < 1e-5);
    CHECK(f.g_OM == doctest::Approx(115.0));
}

TEST_CASE("drive frequency shifts both effective frequencies") {
    SystemParams p = frame_params(0.5);
    p.omega_d = 2000.0;
    const auto f = squeeze_frame(p);
    CHECK(f.delta == doctest::Approx(f.omega_s - 1000.0));
    CHECK(f.Omega_M == doctest::Approx(8000.0));
}

TEST_CASE("resolve applies overrides and normalizes to gamma_m") {
    Scenario s = reference_scenario();
    const EffectiveParams ref = resolve(s);
    CHECK(ref.delta == 5000.0);
    CHECK(ref.Omega_M == 1.0e4);
    CHECK(ref.kappa == 500.0);
    CHECK(ref.G0 == doctest::Approx(squeeze_frame(s.system).G0));
    // sinh(2r) = (sqrt(x) - 1/sqrt(x)) / 2 with x = (1 + 0.87) / (1 - 0.87)
    const double root_x = std::sqrt(1.87 / 0.13);
    CHECK(ref.G0 == doctest::Approx(0.5 * 115.0 * 0.5 * (root_x - 1.0 / root_x)).epsilon(1e-12));

    s.system.gamma_m = 2.0;
    s.system.kappa = 1000.0;
    s.overrides.G0 = 80.0;
    const EffectiveParams scaled = resolve(s);
    CHECK(scaled.gamma_m == 1.0);
    CHECK(scaled.kappa == 500.0);
    CHECK(scaled.G0 == 40.0);
    CHECK(scaled.delta == 2500.0);
    CHECK(scaled.F.real() == 2.0e5);
}
