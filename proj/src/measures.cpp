#include "optomech/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "optomech/error.hpp"

namespace optomech {

namespace {

double wrap_half_turn(double theta) {
    double t = std::fmod(theta, std::numbers::pi);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t -= std::numbers::pi;
    return t;
}

struct Eigen2 {
    double lo, hi;
    double angle_hi;  // direction of the larger eigenvalue
};

Eigen2 eigen_2x2(const Matrix2& V) {
    const double mean = 0.5 * (V(0, 0) + V(1, 1));
    const double half_diff = 0.5 * (V(0, 0) - V(1, 1));
    const double off = 0.5 * (V(0, 1) + V(1, 0));
    const double radius = std::hypot(half_diff, off);
    return {mean - radius, mean + radius, wrap_half_turn(0.5 * std::atan2(2.0 * off, 2.0 * half_diff))};
}

}  // namespace

std::array<double, 2> symplectic_eigenvalues(const Matrix4& V) {
    const double invariant = V.topLeftCorner<2, 2>().determinant() + V.bottomRightCorner<2, 2>().determinant() +
                             2.0 * V.topRightCorner<2, 2>().determinant();
    const double det = V.determinant();
    const double disc = std::max(0.0, invariant * invariant - 4.0 * det);
    const double root = std::sqrt(disc);
    return {std::sqrt(std::max(0.0, 0.5 * (invariant - root))), std::sqrt(0.5 * (invariant + root))};
}

NegativityResult log_negativity(const CovarianceState& covariance) {
    const Matrix4& V = covariance.V;
    NegativityResult result;
    result.sigma = covariance.cavity().determinant() + covariance.mechanical().determinant() -
                   2.0 * covariance.cross().determinant();
    const double det = V.determinant();
    double disc = result.sigma * result.sigma - 4.0 * det;
    const double slack = 1e-12 * std::max(1.0, result.sigma * result.sigma);
    if (disc < -slack) {
        throw Error(ErrorCode::UnphysicalCovariance,
                    "Sigma^2 < 4 det V (Sigma = " + std::to_string(result.sigma) + ", det V = " + std::to_string(det) + ")");
    }
    disc = std::max(disc, 0.0);
    const double eta_sq = 0.5 * (result.sigma - std::sqrt(disc));
    if (!(eta_sq > 0.0) || !std::isfinite(eta_sq)) {
        throw Error(ErrorCode::UnphysicalCovariance, "eta_minus is not real positive");
    }
    result.eta_minus = std::sqrt(eta_sq);
    if (std::abs(result.eta_minus - 0.5) < 1e-12) {
        result.E_N = 0.0;
    } else {
        result.E_N = std::max(0.0, -std::log(2.0 * result.eta_minus));
    }
    return result;
}

double quadrature_variance(const Matrix2& V_M, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return c * c * V_M(0, 0) + s * s * V_M(1, 1) + std::sin(2.0 * theta) * 0.5 * (V_M(0, 1) + V_M(1, 0));
}

QuadratureScan scan_quadratures(const Matrix2& V_M, int n_theta) {
    if (n_theta < 8) throw Error(ErrorCode::InvalidArgument, "quadrature scan needs n_theta >= 8");
    QuadratureScan scan;
    scan.thetas.resize(static_cast<std::size_t>(n_theta));
    scan.variances.resize(static_cast<std::size_t>(n_theta));
    for (int k = 0; k < n_theta; ++k) {
        const double theta = std::numbers::pi * k / n_theta;
        scan.thetas[static_cast<std::size_t>(k)] = theta;
        scan.variances[static_cast<std::size_t>(k)] = quadrature_variance(V_M, theta);
    }
    const auto [lo, hi] = std::minmax_element(scan.variances.begin(), scan.variances.end());
    scan.theta_min = scan.thetas[static_cast<std::size_t>(lo - scan.variances.begin())];
    scan.S_min = *lo;
    scan.theta_max = scan.thetas[static_cast<std::size_t>(hi - scan.variances.begin())];
    scan.S_max = *hi;

    // Refine with the closed-form principal axes; keep the grid angle when the
    // state is isotropic and every angle is an extremum.
    const Eigen2 e = eigen_2x2(V_M);
    if (e.hi - e.lo > 1e-14 * std::max(1.0, e.hi)) {
        scan.theta_max = e.angle_hi;
        scan.theta_min = wrap_half_turn(e.angle_hi + 0.5 * std::numbers::pi);
        scan.S_max = quadrature_variance(V_M, scan.theta_max);
        scan.S_min = quadrature_variance(V_M, scan.theta_min);
    }
    return scan;
}

SqlComparison below_sql(const Matrix2& V_M) {
    const double lo = eigen_2x2(V_M).lo;
    return {lo < kSqlVariance, kSqlVariance - lo};
}

HalfMaxContour half_max_contour(const Matrix2& V_M) {
    const Eigen2 e = eigen_2x2(V_M);
    const double level = 2.0 * std::numbers::ln2;
    return {std::sqrt(level * e.hi), std::sqrt(level * std::max(e.lo, 0.0)), e.angle_hi};
}

double sql_contour_radius() { return std::sqrt(std::numbers::ln2); }

WignerGrid wigner_grid(const Matrix2& V_M, const Eigen::Vector2d& center, const Eigen::Vector2d& half_widths,
                       int n_points) {
    if (n_points < 3 || n_points % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "Wigner grid needs an odd number of points >= 3");
    }
    if (!(half_widths.minCoeff() > 0.0)) throw Error(ErrorCode::InvalidArgument, "Wigner half widths must be > 0");
    const Matrix2 V = 0.5 * (V_M + V_M.transpose());
    const double det = V.determinant();
    if (!(det >= 1e-300)) {
        throw Error(ErrorCode::SingularCovariance, "det V_M = " + std::to_string(det));
    }
    const Matrix2 inv = V.inverse();
    const double peak = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));

    WignerGrid grid;
    const auto n = static_cast<std::size_t>(n_points);
    grid.q_axis.resize(n);
    grid.p_axis.resize(n);
    const int half = n_points / 2;
    for (int k = 0; k < n_points; ++k) {
        const double frac = static_cast<double>(k - half) / half;
        grid.q_axis[static_cast<std::size_t>(k)] = center(0) + frac * half_widths(0);
        grid.p_axis[static_cast<std::size_t>(k)] = center(1) + frac * half_widths(1);
    }
    grid.values.resize(n * n);
    for (std::size_t iq = 0; iq < n; ++iq) {
        const double q = grid.q_axis[iq];
        for (std::size_t ip = 0; ip < n; ++ip) {
            const double p = grid.p_axis[ip];
            const double quad = inv(0, 0) * q * q + 2.0 * inv(0, 1) * q * p + inv(1, 1) * p * p;
            grid.values[iq * n + ip] = peak * std::exp(-0.5 * quad);
        }
    }
    grid.half_max_level = 0.5 * peak;
    grid.sql_radius = sql_contour_radius();
    return grid;
}

WignerGrid wigner_grid(const Matrix2& V_M) {
    const double width = 5.0 * std::sqrt(std::max(eigen_2x2(V_M).hi, 0.0));
    return wigner_grid(V_M, Eigen::Vector2d::Zero(), Eigen::Vector2d::Constant(width), 201);
}

WignerGrid to_lab_view(const WignerGrid& grid, Complex beta) {
    if (grid.view == WignerView::Lab) return grid;
    WignerGrid lab = grid;
    for (double& q : lab.q_axis) q = beta.real() + std::numbers::sqrt2 * q;
    for (double& p : lab.p_axis) p = beta.imag() + std::numbers::sqrt2 * p;
    for (double& w : lab.values) w *= 2.0;
    lab.half_max_level *= 2.0;
    lab.sql_radius *= std::numbers::sqrt2;
    lab.view = WignerView::Lab;
    return lab;
}

}  // namespace optomech
