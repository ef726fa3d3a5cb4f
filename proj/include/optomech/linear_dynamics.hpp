#pragma once

// Linearized quadrature dynamics u' = A u + n with u = (X, Y, Q, P) and the
// steady-state covariance from A V + V Aᵀ = -D.

#include <Eigen/Dense>
#include <array>

#include "optomech/model.hpp"
#include "optomech/steady_state.hpp"

namespace optomech {

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

struct DriftMatrix {
    Matrix4 entries = Matrix4::Zero();
};

struct NoiseMatrix {
    Eigen::Vector4d diagonal = Eigen::Vector4d::Zero();

    [[nodiscard]] Matrix4 matrix() const { return diagonal.asDiagonal(); }
};

struct CovarianceState {
    Matrix4 V = Matrix4::Zero();

    [[nodiscard]] Matrix2 cavity() const { return V.topLeftCorner<2, 2>(); }
    [[nodiscard]] Matrix2 mechanical() const { return V.bottomRightCorner<2, 2>(); }
    [[nodiscard]] Matrix2 cross() const { return V.topRightCorner<2, 2>(); }
};

inline constexpr double kStabilityMargin = 1e-10;

/// Drift matrix for mean amplitudes alpha = <a>, beta = <b>.
[[nodiscard]] DriftMatrix build_drift(Complex alpha, Complex beta, const EffectiveParams& params);

/// Uses alpha = principal sqrt(<a²>) from the branch point.
[[nodiscard]] DriftMatrix build_drift(const BranchPoint& branch, const EffectiveParams& params);

/// diag(kappa, kappa, 2 gamma_m (n_m + 1/2), 2 gamma_m (n_m + 1/2)); no cavity thermal noise.
[[nodiscard]] NoiseMatrix noise_matrix(const EffectiveParams& params);

[[nodiscard]] std::array<Complex, 4> eigenvalues(const DriftMatrix& drift);

[[nodiscard]] double max_real_eigenvalue(const DriftMatrix& drift);

/// max Re(eig(A)) < -kStabilityMargin.
[[nodiscard]] bool is_stable(const DriftMatrix& drift);

/// Solves the vectorized 16x16 system (I ⊗ A + A ⊗ I) vec(V) = -vec(D).
/// Throws Error{UnstableDrift} for an unstable A and Error{SingularSystem}
/// when the linear system is numerically singular.
[[nodiscard]] CovarianceState solve_lyapunov(const DriftMatrix& drift, const NoiseMatrix& noise);

/// ‖A V + V Aᵀ + D‖_max.
[[nodiscard]] double lyapunov_residual(const DriftMatrix& drift, const CovarianceState& covariance,
                                       const NoiseMatrix& noise);

}  // namespace optomech
