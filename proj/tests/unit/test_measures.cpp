#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "optomech/error.hpp"
#include "optomech/measures.hpp"
#include "support/oracles.hpp"

using namespace optomech;

namespace {

Matrix2 rotation(double phi) {
    Matrix2 R;
    R << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return R;
}

Matrix2 random_spd(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 3.0), a(0.0, std::numbers::pi);
    const Matrix2 R = rotation(a(rng));
    return R * Eigen::Vector2d(u(rng), u(rng)).asDiagonal() * R.transpose();
}

CovarianceState upper_branch_covariance(double F = 4.0e5) {
    const auto p = oracle::bistable_params(F);
    const auto up = classify_and_solve(p).back();
    return solve_lyapunov(build_drift(up, p), noise_matrix(p));
}

}  // namespace

TEST_CASE("product states carry no entanglement") {
    CovarianceState vac{0.5 * Matrix4::Identity()};
    CHECK(log_negativity(vac).E_N == 0.0);
    CHECK(log_negativity(vac).eta_minus == doctest::Approx(0.5));

    auto p = oracle::bistable_params();
    p.G0 = 0.0;
    p.n_m = 30.0;
    const auto cov = solve_lyapunov(build_drift(Complex(0.0), Complex(0.0), p), noise_matrix(p));
    CHECK(log_negativity(cov).E_N == 0.0);
}

TEST_CASE("two-mode squeezed vacuum") {
    const CovarianceState s{oracle::two_mode_squeezed(0.5)};
    const auto n = log_negativity(s);
    CHECK(n.E_N == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.eta_minus == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
    // a pure state has a doubly degenerate symplectic spectrum, where the
    // invariant formula loses half the digits
    const auto nu = symplectic_eigenvalues(s.V);
    CHECK(nu[0] == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(nu[1] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("eta_minus matches the partially transposed spectrum") {
    for (const auto& sp : oracle::random_stable_points(30, 41)) {
        const auto cov = solve_lyapunov(build_drift(sp.point, sp.params), noise_matrix(sp.params));
        Matrix4 P = Matrix4::Identity();
        P(3, 3) = -1.0;
        const double eta = oracle::symplectic_spectrum(P * cov.V * P)[0];
        CHECK(std::abs(log_negativity(cov).eta_minus - eta) <= 1e-9 * std::max(1.0, eta));
        CHECK(log_negativity(cov).E_N == doctest::Approx(oracle::log_negativity_pt(cov.V)).epsilon(1e-9));
        const auto nu = symplectic_eigenvalues(cov.V);
        const auto ref = oracle::symplectic_spectrum(cov.V);
        CHECK(nu[0] == doctest::Approx(ref[0]).epsilon(1e-9));
        CHECK(nu[1] == doctest::Approx(ref[1]).epsilon(1e-9));
    }
}

TEST_CASE("local noise never increases entanglement") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.05, 1.2);
    int states = 0;
    while (states < 20) {
        const CovarianceState s{oracle::two_mode_squeezed(u(rng))};
        const double base = log_negativity(s).E_N;
        REQUIRE(base > 0.0);
        for (double eps : {1e-3, 1e-2}) {
            const CovarianceState noisy{s.V + eps * Matrix4::Identity()};
            CHECK(log_negativity(noisy).E_N <= base);
        }
        ++states;
    }
    for (const auto& sp : oracle::random_stable_points(20, 47)) {
        const auto cov = solve_lyapunov(build_drift(sp.point, sp.params), noise_matrix(sp.params));
        const double base = log_negativity(cov).E_N;
        for (double eps : {1e-3, 1e-2}) CHECK(log_negativity(CovarianceState{cov.V + eps * Matrix4::Identity()}).E_N <= base);
    }
}

TEST_CASE("covariances violating the uncertainty principle are rejected") {
    Matrix4 V = Matrix4::Identity();
    V(1, 1) = -1.0;
    try {
        (void)log_negativity(CovarianceState{V});
        FAIL("expected UnphysicalCovariance");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnphysicalCovariance);
    }
}

TEST_CASE("quadrature variance on principal axes") {
    CHECK(quadrature_variance(0.5 * Matrix2::Identity(), 0.7) == doctest::Approx(0.5));
    Matrix2 V = Matrix2::Zero();
    V.diagonal() << 0.25, 1.0;
    CHECK(quadrature_variance(V, 0.0) == doctest::Approx(0.25));
    CHECK(quadrature_variance(V, 0.5 * std::numbers::pi) == doctest::Approx(1.0));
}

TEST_CASE("scan extrema match the eigen decomposition") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix2 V = random_spd(rng);
        const auto scan = scan_quadratures(V, 90);
        Eigen::SelfAdjointEigenSolver<Matrix2> es(V);
        CHECK(scan.S_min == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
        CHECK(scan.S_max == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12));
        CHECK(scan.theta_min >= 0.0);
        CHECK(scan.theta_min < std::numbers::pi);
        for (double S : scan.variances) CHECK(S >= scan.S_min - 1e-12);
        CHECK(std::abs(std::abs(scan.theta_max - scan.theta_min) - 0.5 * std::numbers::pi) < 1e-12);
    }
}

TEST_CASE("isotropic scan is flat") {
    const auto scan = scan_quadratures(0.7 * Matrix2::Identity(), 16);
    for (double S : scan.variances) CHECK(S == doctest::Approx(0.7));
    CHECK(scan.S_min == doctest::Approx(0.7));
    CHECK_THROWS_AS((void)scan_quadratures(Matrix2::Identity(), 4), Error);
}

TEST_CASE("quadrature variance has period pi") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix2 V = random_spd(rng);
        for (double t : {0.0, 0.3, 1.1, 2.9}) {
            CHECK(quadrature_variance(V, t + std::numbers::pi) == doctest::Approx(quadrature_variance(V, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("rotating the state shifts the scan") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> a(-3.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix2 V = random_spd(rng);
        const double phi = a(rng);
        const Matrix2 W = rotation(phi) * V * rotation(phi).transpose();
        for (int k = 0; k < 24; ++k) {
            const double t = std::numbers::pi * k / 12.0;
            CHECK(std::abs(quadrature_variance(W, t) - quadrature_variance(V, t - phi)) < 1e-10);
        }
    }
}

TEST_CASE("comparison with the standard quantum limit") {
    const auto vac = below_sql(0.5 * Matrix2::Identity());
    CHECK_FALSE(vac.below);
    CHECK(vac.margin == doctest::Approx(0.0));
    Matrix2 V = Matrix2::Zero();
    V.diagonal() << 0.3, 1.2;
    const auto sq = below_sql(V);
    CHECK(sq.below);
    CHECK(sq.margin == doctest::Approx(0.2));
    CHECK_FALSE(below_sql(100.5 * Matrix2::Identity()).below);
}

TEST_CASE("half-maximum contours") {
    CHECK(sql_contour_radius() == doctest::Approx(std::sqrt(std::log(2.0))));
    const auto vac = half_max_contour(0.5 * Matrix2::Identity());
    CHECK(vac.major == doctest::Approx(sql_contour_radius()));
    CHECK(vac.minor == doctest::Approx(sql_contour_radius()));
    Matrix2 V = Matrix2::Zero();
    V.diagonal() << 0.3, 1.2;
    const auto c = half_max_contour(V);
    CHECK(c.major == doctest::Approx(std::sqrt(2.0 * std::log(2.0) * 1.2)));
    CHECK(c.minor == doctest::Approx(std::sqrt(2.0 * std::log(2.0) * 0.3)));
    CHECK(c.angle == doctest::Approx(0.5 * std::numbers::pi));
}

TEST_CASE("Wigner peak and normalization") {
    const auto vac = wigner_grid(0.5 * Matrix2::Identity());
    const std::size_t mid = vac.q_axis.size() / 2;
    CHECK(vac.q_axis[mid] == 0.0);
    CHECK(vac.at(mid, mid) == doctest::Approx(1.0 / std::numbers::pi));

    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix2 V = random_spd(rng);
        const auto g = wigner_grid(V);
        const std::size_t m = g.q_axis.size() / 2;
        CHECK(g.at(m, m) == doctest::Approx(1.0 / (2.0 * std::numbers::pi * std::sqrt(V.determinant()))));
        CHECK(g.half_max_level == doctest::Approx(1.0 / (4.0 * std::numbers::pi * std::sqrt(V.determinant()))));
        // 2D trapezoid rule
        const double dq = g.q_axis[1] - g.q_axis[0], dp = g.p_axis[1] - g.p_axis[0];
        double total = 0.0;
        const std::size_t n = g.q_axis.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
                total += wi * wj * g.at(i, j);
            }
        }
        CHECK(std::abs(total * dq * dp - 1.0) < 1e-3);
    }
}

TEST_CASE("Wigner grid arguments are validated") {
    CHECK_THROWS_AS((void)wigner_grid(Matrix2::Identity(), Eigen::Vector2d::Zero(), Eigen::Vector2d(1, 1), 10), Error);
    try {
        (void)wigner_grid(Matrix2::Zero(), Eigen::Vector2d::Zero(), Eigen::Vector2d(1, 1), 11);
        FAIL("expected SingularCovariance");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularCovariance);
    }
}

TEST_CASE("lab view displaces and rescales the grid") {
    const Matrix2 V = 0.5 * Matrix2::Identity();
    const auto g = wigner_grid(V);
    const Complex beta(24.0, -5.0);
    const auto lab = to_lab_view(g, beta);
    const std::size_t m = g.q_axis.size() / 2;
    CHECK(lab.view == WignerView::Lab);
    CHECK(lab.q_axis[m] == doctest::Approx(24.0));
    CHECK(lab.p_axis[m] == doctest::Approx(-5.0));
    CHECK(lab.q_axis.back() - lab.q_axis[m] == doctest::Approx(std::sqrt(2.0) * g.q_axis.back()));
    CHECK(lab.at(m, m) == doctest::Approx(2.0 * g.at(m, m)));
    CHECK(lab.sql_radius == doctest::Approx(std::sqrt(2.0) * g.sql_radius));
}

TEST_CASE("the upper branch squeezes and entangles at the reference point") {
    const auto cov = upper_branch_covariance();
    CHECK(log_negativity(cov).E_N > 0.0);
    CHECK(below_sql(cov.mechanical()).below);
    const auto scan = scan_quadratures(cov.mechanical());
    CHECK(scan.S_min < kSqlVariance);
}
