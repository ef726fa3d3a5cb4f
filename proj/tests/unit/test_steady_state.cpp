#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "optomech/error.hpp"
#include "optomech/polynomial.hpp"
#include "optomech/steady_state.hpp"
#include "support/oracles.hpp"

using namespace optomech;

namespace {

/// Population balance written in product form, independent of the expanded
/// coefficients.
double factored_cubic(double z, const EffectiveParams& p) {
    const double G2 = p.G0 * p.G0;
    const double F2 = std::norm(p.F);
    const double gk = p.gamma_m * p.kappa - p.delta * p.Omega_M;
    const double c = (p.gamma_m * p.gamma_m + p.Omega_M * p.Omega_M) * (p.delta * p.delta + p.kappa * p.kappa);
    return (z - 1.0) * (2.0 * G2 * z * gk + G2 * G2 * z * z + c) - F2 * G2 * z;
}

/// Real roots z >= 1 counted by sign changes of the product form on a
/// log-spaced grid up to the Cauchy bound.
int sign_change_roots(const EffectiveParams& p) {
    const auto c = population_cubic(p);
    double bound = 1.0;
    for (int k = 1; k < 4; ++k) bound = std::max(bound, 1.0 + std::abs(c[static_cast<std::size_t>(k)] / c[0]));
    const int n = 200000;
    int changes = 0;
    double prev = factored_cubic(1.0 + 1e-12, p);
    for (int k = 1; k <= n; ++k) {
        const double z = std::exp(std::log(bound + 1.0) * k / n);
        const double v = factored_cubic(z, p);
        if ((v > 0.0) != (prev > 0.0)) ++changes;
        prev = v;
    }
    return changes;
}

double rhs_scale(const MeanFieldState& s, const EffectiveParams& p) {
    return std::max({1.0, p.kappa * s.n, p.kappa * std::abs(s.a_sq), p.Omega_M * std::abs(s.beta), std::abs(p.F)});
}

double residual(const MeanFieldState& s, const EffectiveParams& p) {
    const MeanFieldState r = mean_field_rhs(s, p);
    return std::max({std::abs(r.n), std::abs(r.a_sq), std::abs(r.beta)}) / rhs_scale(s, p);
}

}  // namespace

TEST_CASE("companion roots of a known cubic") {
    const std::vector<double> c = {2.0, -12.0, 22.0, -12.0};  // 2 (z-1)(z-2)(z-3)
    const auto roots = real_polynomial_roots(c);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(roots[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(roots[2] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(evaluate_polynomial(c, 4.0) == doctest::Approx(12.0));
}

TEST_CASE("companion roots with widely spread magnitudes") {
    // (z - 1e-3)(z - 1)(z - 1e7)
    const double a = 1e-3, b = 1.0, d = 1e7;
    const std::vector<double> c = {1.0, -(a + b + d), a * b + a * d + b * d, -a * b * d};
    const auto roots = real_polynomial_roots(c);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(a).epsilon(1e-9));
    CHECK(roots[1] == doctest::Approx(b).epsilon(1e-9));
    CHECK(roots[2] == doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("complex pairs are not reported as real") {
    const std::vector<double> c = {1.0, 0.0, 1.0, 0.0};  // z (z^2 + 1)
    const auto all = polynomial_roots(c);
    CHECK(all.size() == 3);
    const auto real = real_polynomial_roots(c);
    REQUIRE(real.size() == 1);
    CHECK(std::abs(real[0]) < 1e-12);
}

TEST_CASE("expanded cubic agrees with the product form") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = oracle::random_params(rng);
        const auto c = population_cubic(p);
        for (double z : {1.0, 3.7, 1.0e2, 4.2e3, 9.0e4}) {
            const double lhs = evaluate_polynomial(c, z);
            const double rhs = factored_cubic(z, p);
            const double scale = std::abs(c[0]) * z * z * z + std::abs(c[1]) * z * z + std::abs(c[2]) * z + std::abs(c[3]);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("undriven or uncoupled cavity stays in vacuum") {
    auto p = oracle::bistable_params();
    p.F = {0.0, 0.0};
    CHECK(population_cubic_roots(p) == std::vector<double>{1.0});
    p = oracle::bistable_params();
    p.G0 = 0.0;
    CHECK(population_cubic_roots(p) == std::vector<double>{1.0});
}

TEST_CASE("root count matches the sign-change oracle across a drive sweep") {
    int three = 0, first = -1, last = -1;
    const int n = 60;
    for (int k = 0; k < n; ++k) {
        const double F = std::pow(10.0, 4.0 + 4.0 * k / (n - 1));
        const auto p = oracle::bistable_params(F);
        const auto roots = population_cubic_roots(p);
        CHECK(static_cast<int>(roots.size()) == sign_change_roots(p));
        if (roots.size() == 3) {
            ++three;
            if (first < 0) first = k;
            last = k;
        }
    }
    CHECK(three >= 3);
    CHECK(last - first + 1 == three);
}

TEST_CASE("roots are fixed points of the mean-field equations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = oracle::random_params(rng);
        for (double z : population_cubic_roots(p)) {
            const auto s = mean_fields(z, p);
            CHECK(residual(s, p) < 1e-8);
        }
    }
}

TEST_CASE("zero drive gives empty mean fields") {
    auto p = oracle::bistable_params();
    p.F = {0.0, 0.0};
    const auto s = mean_fields(1.0, p);
    CHECK(std::abs(s.a_sq) == 0.0);
    CHECK(std::abs(s.beta) == 0.0);
}

TEST_CASE("uncoupled limit reduces to a driven damped oscillator") {
    auto p = oracle::bistable_params();
    p.G0 = 0.0;
    const auto s = mean_fields(1.0, p);
    // direct solve of 0 = -i (Omega b + F/2) - gamma b
    const Complex direct = Complex(0.0, -0.5) * p.F / Complex(p.gamma_m, p.Omega_M);
    const Complex closed = -p.F * Complex(-p.delta, p.kappa) /
                           (2.0 * Complex(p.gamma_m * p.kappa - p.delta * p.Omega_M,
                                          p.gamma_m * p.delta + p.kappa * p.Omega_M));
    CHECK(std::abs(s.a_sq) == 0.0);
    CHECK(std::abs(s.beta - direct) < 1e-12 * std::abs(direct));
    CHECK(std::abs(s.beta - closed) < 1e-12 * std::abs(direct));
}

TEST_CASE("rescaling every rate leaves the populations unchanged") {
    const auto p = oracle::bistable_params();
    auto q = p;
    const double s = 3.5;
    q.kappa *= s;
    q.gamma_m *= s;
    q.delta *= s;
    q.Omega_M *= s;
    q.G0 *= s;
    q.F *= s;
    const auto a = population_cubic_roots(p), b = population_cubic_roots(q);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-9));
}

TEST_CASE("branch classification below and inside the bistable window") {
    const auto mono = classify_and_solve(oracle::bistable_params(2.0e4));
    REQUIRE(mono.size() == 1);
    CHECK(mono[0].branch == Branch::Lower);
    CHECK(mono[0].stable);

    const auto bi = classify_and_solve(oracle::bistable_params(4.0e5));
    REQUIRE(bi.size() == 3);
    CHECK(bi[0].branch == Branch::Lower);
    CHECK(bi[1].branch == Branch::Middle);
    CHECK(bi[2].branch == Branch::Upper);
    CHECK(bi[0].stable);
    CHECK_FALSE(bi[1].stable);
    CHECK(bi[2].stable);
    CHECK(bi[0].z < bi[1].z);
    CHECK(bi[1].z < bi[2].z);
    for (const auto& b : bi) CHECK(b.n_cav == doctest::Approx(0.5 * (b.z - 1.0)));

    auto p = oracle::bistable_params();
    p.F = {0.0, 0.0};
    const auto vac = classify_and_solve(p);
    REQUIRE(vac.size() == 1);
    CHECK(vac[0].z == 1.0);
    CHECK(vac[0].stable);
}

TEST_CASE("populations vary continuously along a fine drive sweep") {
    double prev_lower = -1.0;
    for (int k = 0; k <= 400; ++k) {
        const double F = 1.0e4 * std::pow(10.0, 1.5 * k / 400.0);
        const auto points = classify_and_solve(oracle::bistable_params(F));
        const double lower = points.front().z;
        if (prev_lower > 0.0 && points.front().branch == Branch::Lower) CHECK(lower < 1.2 * prev_lower + 1.0);
        prev_lower = lower;
    }
}

TEST_CASE("relaxation from vacuum lands on the lower branch") {
    const auto p = oracle::bistable_params(2.0e5);
    REQUIRE(classify_and_solve(p).size() == 3);
    const auto points = classify_and_solve(p);
    const auto s = relax_mean_field(p, MeanFieldState{});
    const auto& low = points.front();
    CHECK(std::abs(s.n - low.n_cav) <= 1e-6 * low.n_cav);
    CHECK(std::abs(s.a_sq - low.a_sq) <= 1e-6 * std::abs(low.a_sq));
    CHECK(std::abs(s.beta - low.beta) <= 1e-6 * std::abs(low.beta));
}

TEST_CASE("relaxation seeded near the upper branch stays there") {
    const auto p = oracle::bistable_params();
    const auto up = classify_and_solve(p).back();
    const MeanFieldState seed{1.05 * up.n_cav, 0.95 * up.a_sq, up.beta * Complex(1.0, 0.03)};
    const auto s = relax_mean_field(p, seed);
    CHECK(std::abs(s.n - up.n_cav) <= 1e-6 * up.n_cav);
    CHECK(std::abs(s.beta - up.beta) <= 1e-6 * std::abs(up.beta));
}

TEST_CASE("undriven relaxation decays to zero") {
    auto p = oracle::bistable_params();
    p.F = {0.0, 0.0};
    const auto s = relax_mean_field(p, MeanFieldState{3.0, {1.0, 1.0}, {2.0, -1.0}});
    CHECK(std::abs(s.n) < 1e-8);
    CHECK(std::abs(s.a_sq) < 1e-8);
    CHECK(std::abs(s.beta) < 1e-8);
}

TEST_CASE("relaxation rejects an unstable step size") {
    const auto p = oracle::bistable_params();
    RelaxOptions opt;
    opt.dt = 1.0e-3;
    CHECK_THROWS_AS((void)relax_mean_field(p, MeanFieldState{}, opt), Error);
}
