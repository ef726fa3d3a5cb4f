#include "optomech/linear_dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <string>

#include "optomech/error.hpp"

namespace optomech {

DriftMatrix build_drift(Complex alpha, Complex beta, const EffectiveParams& p) {
    const double g = 2.0 * p.G0;
    const double ra = alpha.real(), ia = alpha.imag();
    const double rb = beta.real(), ib = beta.imag();
    DriftMatrix drift;
    // clang-format off
    drift.entries <<
        -p.kappa + g * ib,   p.delta - g * rb,        -g * ia,       g * ra,
        -p.delta - g * rb,  -p.kappa - g * ib,        -g * ra,      -g * ia,
         g * ia,             g * ra,            -p.gamma_m,    p.Omega_M,
        -g * ra,             g * ia,            -p.Omega_M,  -p.gamma_m;
    // clang-format on
    return drift;
}

DriftMatrix build_drift(const BranchPoint& branch, const EffectiveParams& params) {
    return build_drift(branch.alpha(), branch.beta, params);
}

NoiseMatrix noise_matrix(const EffectiveParams& p) {
    const double mech = 2.0 * p.gamma_m * (p.n_m + 0.5);
    NoiseMatrix noise;
    noise.diagonal << p.kappa, p.kappa, mech, mech;
    return noise;
}

std::array<Complex, 4> eigenvalues(const DriftMatrix& drift) {
    Eigen::EigenSolver<Matrix4> solver(drift.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::EigenFailure, "drift matrix eigenvalue iteration did not converge");
    }
    std::array<Complex, 4> values;
    for (int i = 0; i < 4; ++i) values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    // descending real part, then ascending imaginary part
    std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });
    return values;
}

double max_real_eigenvalue(const DriftMatrix& drift) { return eigenvalues(drift).front().real(); }

bool is_stable(const DriftMatrix& drift) { return max_real_eigenvalue(drift) < -kStabilityMargin; }

CovarianceState solve_lyapunov(const DriftMatrix& drift, const NoiseMatrix& noise) {
    if (!is_stable(drift)) {
        throw Error(ErrorCode::UnstableDrift,
                    "Lyapunov equation has no steady state; max Re(eig) = " + std::to_string(max_real_eigenvalue(drift)));
    }
    const Matrix4& A = drift.entries;
    using Matrix16 = Eigen::Matrix<double, 16, 16>;
    using Vector16 = Eigen::Matrix<double, 16, 1>;
    auto idx = [](int i, int j) { return i + 4 * j; };

    Matrix16 system = Matrix16::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                system(idx(i, j), idx(k, j)) += A(i, k);
                system(idx(i, j), idx(i, k)) += A(j, k);
            }
        }
    }
    const Matrix4 D = noise.matrix();
    Vector16 rhs;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) rhs(idx(i, j)) = -D(i, j);

    const Eigen::PartialPivLU<Matrix16> lu(system);
    if (!(lu.rcond() > 1e-14)) {
        throw Error(ErrorCode::SingularSystem, "vectorized Lyapunov system is singular (rcond = " +
                                                   std::to_string(lu.rcond()) + ")");
    }
    const Vector16 solution = lu.solve(rhs);

    CovarianceState state;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) state.V(i, j) = solution(idx(i, j));
    state.V = 0.5 * (state.V + state.V.transpose()).eval();
    return state;
}

double lyapunov_residual(const DriftMatrix& drift, const CovarianceState& covariance, const NoiseMatrix& noise) {
    const Matrix4& A = drift.entries;
    const Matrix4 R = A * covariance.V + covariance.V * A.transpose() + noise.matrix();
    return R.cwiseAbs().maxCoeff();
}

}  // namespace optomech
