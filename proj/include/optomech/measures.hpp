#pragma once

// Entanglement, quadrature squeezing and Wigner functions of the Gaussian
// steady state. Quadratures follow X = (a + a†)/√2, so the vacuum (SQL)
// variance is 1/2.

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "optomech/linear_dynamics.hpp"

namespace optomech {

inline constexpr double kSqlVariance = 0.5;

struct NegativityResult {
    double eta_minus = 0.5;  ///< smallest symplectic eigenvalue of the partial transpose
    double E_N = 0.0;        ///< logarithmic negativity
    double sigma = 0.0;      ///< det V_C + det V_M - 2 det V_CM
};

/// Throws Error{UnphysicalCovariance} if the invariants do not describe a
/// physical two-mode state.
[[nodiscard]] NegativityResult log_negativity(const CovarianceState& covariance);

/// Symplectic eigenvalues (nu_minus, nu_plus) of a two-mode covariance matrix.
[[nodiscard]] std::array<double, 2> symplectic_eigenvalues(const Matrix4& V);

/// S(theta) = cos²θ V11 + sin²θ V22 + sin 2θ V12 for the quadrature
/// cos θ Q + sin θ P.
[[nodiscard]] double quadrature_variance(const Matrix2& V_M, double theta);

struct QuadratureScan {
    std::vector<double> thetas;
    std::vector<double> variances;
    double theta_min = 0.0;
    double S_min = 0.0;
    double theta_max = 0.0;
    double S_max = 0.0;
    double sql = kSqlVariance;
};

/// Uniform scan over [0, pi) with exact extrema; angles reported in [0, pi).
[[nodiscard]] QuadratureScan scan_quadratures(const Matrix2& V_M, int n_theta = 180);

struct SqlComparison {
    bool below = false;
    double margin = 0.0;  ///< 1/2 - smallest eigenvalue of V_M
};

[[nodiscard]] SqlComparison below_sql(const Matrix2& V_M);

/// Semi-axes of the half-maximum contour u^T V^-1 u = 2 ln 2, with the major
/// axis angle in [0, pi).
struct HalfMaxContour {
    double major = 0.0;
    double minor = 0.0;
    double angle = 0.0;
};

[[nodiscard]] HalfMaxContour half_max_contour(const Matrix2& V_M);

/// Radius of the vacuum half-maximum circle in fluctuation coordinates.
[[nodiscard]] double sql_contour_radius();

enum class WignerView {
    Fluctuation,  ///< u_M = (Q, P), Gaussian centred at the origin
    Lab,          ///< (Re beta, Im beta) + √2 u_M with values scaled by 2
};

struct WignerGrid {
    std::vector<double> q_axis;
    std::vector<double> p_axis;
    std::vector<double> values;  ///< row-major, values[iq * p_axis.size() + ip]
    double half_max_level = 0.0;
    double sql_radius = 0.0;
    WignerView view = WignerView::Fluctuation;

    [[nodiscard]] double at(std::size_t iq, std::size_t ip) const { return values[iq * p_axis.size() + ip]; }
};

/// Samples W(u) = exp(-u^T V^-1 u / 2) / (2 pi sqrt(det V)) on a uniform grid.
/// n_points must be odd so the grid contains its centre. Throws
/// Error{SingularCovariance} if det V_M < 1e-300.
[[nodiscard]] WignerGrid wigner_grid(const Matrix2& V_M, const Eigen::Vector2d& center,
                                     const Eigen::Vector2d& half_widths, int n_points);

/// 201 x 201 points over ±5 sqrt(largest eigenvalue of V_M) about the origin.
[[nodiscard]] WignerGrid wigner_grid(const Matrix2& V_M);

/// Maps a fluctuation-coordinate grid to the displaced lab picture.
[[nodiscard]] WignerGrid to_lab_view(const WignerGrid& grid, Complex beta);

}  // namespace optomech
