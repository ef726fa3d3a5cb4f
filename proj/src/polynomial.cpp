#include "optomech/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "optomech/error.hpp"

namespace optomech {

Complex evaluate_polynomial(std::span<const double> coeffs, Complex x) {
    Complex acc{0.0, 0.0};
    for (double c : coeffs) acc = acc * x + c;
    return acc;
}

double evaluate_polynomial(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (double c : coeffs) acc = acc * x + c;
    return acc;
}

namespace {

Complex evaluate_derivative(std::span<const double> coeffs, Complex x) {
    const auto degree = static_cast<double>(coeffs.size() - 1);
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < coeffs.size(); ++k) {
        acc = acc * x + coeffs[k] * (degree - static_cast<double>(k));
    }
    return acc;
}

Complex newton_polish(std::span<const double> coeffs, Complex root) {
    Complex value = evaluate_polynomial(coeffs, root);
    for (int iter = 0; iter < 4 && std::abs(value) > 0.0; ++iter) {
        const Complex slope = evaluate_derivative(coeffs, root);
        if (std::abs(slope) == 0.0) break;
        const Complex candidate = root - value / slope;
        const Complex candidate_value = evaluate_polynomial(coeffs, candidate);
        if (!(std::abs(candidate_value) < std::abs(value))) break;
        root = candidate;
        value = candidate_value;
    }
    return root;
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const double> coeffs) {
    if (coeffs.empty() || coeffs.front() == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "polynomial leading coefficient must be nonzero");
    }
    const auto degree = static_cast<Eigen::Index>(coeffs.size() - 1);
    if (degree == 0) return {};

    // Rescale x = s*y so the monic coefficients are O(1); the companion matrix
    // is then well balanced even when coefficients span many decades.
    double scale = 0.0;
    for (Eigen::Index k = 1; k <= degree; ++k) {
        const double ratio = std::abs(coeffs[static_cast<std::size_t>(k)] / coeffs.front());
        if (ratio > 0.0) scale = std::max(scale, std::pow(ratio, 1.0 / static_cast<double>(k)));
    }
    if (scale == 0.0) return std::vector<Complex>(static_cast<std::size_t>(degree), Complex{0.0, 0.0});

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (Eigen::Index k = 1; k <= degree; ++k) {
        const double monic = coeffs[static_cast<std::size_t>(k)] / coeffs.front() / std::pow(scale, static_cast<double>(k));
        companion(0, k - 1) = -monic;
    }
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::EigenFailure, "companion matrix eigenvalue iteration did not converge");
    }

    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(degree));
    for (Eigen::Index i = 0; i < degree; ++i) {
        roots.push_back(newton_polish(coeffs, solver.eigenvalues()(i) * scale));
    }
    return roots;
}

std::vector<double> real_polynomial_roots(std::span<const double> coeffs, double merge_tolerance) {
    std::vector<double> real;
    for (const Complex& root : polynomial_roots(coeffs)) {
        if (std::abs(root.imag()) < kRealRootTolerance * (1.0 + std::abs(root.real()))) {
            real.push_back(root.real());
        }
    }
    std::sort(real.begin(), real.end());
    std::vector<double> merged;
    for (double x : real) {
        if (!merged.empty() && std::abs(x - merged.back()) <= merge_tolerance * std::max(1.0, std::abs(x))) {
            merged.back() = 0.5 * (merged.back() + x);
        } else {
            merged.push_back(x);
        }
    }
    return merged;
}

}  // namespace optomech
