#pragma once

// Frequency-domain route to the fluctuations: (iω + A) ũ = ñ gives
// Ṽ(ω) = M̃(ω) D M̃†(ω) with M̃(ω) = (iω + A)^-1, and the variances follow
// from (1/2π) ∫ Ṽ(ω) dω. This cross-checks the Lyapunov solution.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "optomech/linear_dynamics.hpp"

namespace optomech {

using Matrix4c = Eigen::Matrix4cd;

/// (iω I + A)^-1. Throws Error{SingularAtFrequency} when the reciprocal
/// condition estimate falls below 1e-12.
[[nodiscard]] Matrix4c transfer_matrix(const DriftMatrix& drift, double omega);

/// M̃(ω) D M̃†(ω).
[[nodiscard]] Matrix4c spectral_covariance(const DriftMatrix& drift, const NoiseMatrix& noise, double omega);

struct SpectrumOptions {
    double span_factor = 50.0;  ///< half-span = span_factor * max(|Omega_M|, |delta|, kappa, gamma_m)
    double rel_tol = 1e-10;     ///< adaptive quadrature tolerance relative to the largest integral
    int refine = 1;             ///< equal sub-panels per accepted adaptive panel
};

/// Ṽ(ω) sampled on an adaptive grid with quadrature weights (∑ w f ≈ ∫ f dω).
struct SpectralGrid {
    std::vector<double> omegas;
    std::vector<double> weights;
    std::vector<Matrix4c> covariances;
    double half_span = 0.0;
};

/// Builds the grid: breakpoints at every resonance (from the drift
/// eigenvalues, plus ±Omega_M and ±delta) spaced geometrically in units of
/// the resonance width, then adaptive Boole panels between them.
[[nodiscard]] SpectralGrid sample_spectral_covariance(const DriftMatrix& drift, const NoiseMatrix& noise,
                                                      const SpectrumOptions& options = {});

/// (1/2π) ∑ w Re Ṽ(ω): the frequency-integrated covariance.
[[nodiscard]] Matrix4 integrate_covariance(const SpectralGrid& grid);

struct SpectrumScan {
    double theta = 0.0;
    std::vector<double> omegas;
    std::vector<double> s_theta;
    std::vector<double> weights;
    double integrated_variance = 0.0;
    double tail_fraction = 0.0;  ///< share of the integral from the outermost 1% of the span
    bool tail_warning = false;   ///< tail_fraction > 1e-4
};

/// Symmetrized mechanical quadrature spectrum on a precomputed grid.
[[nodiscard]] SpectrumScan quadrature_spectrum(const SpectralGrid& grid, double theta);

/// Builds the adaptive grid and projects onto the angle theta.
[[nodiscard]] SpectrumScan quadrature_spectrum(const DriftMatrix& drift, const NoiseMatrix& noise, double theta,
                                               const SpectrumOptions& options = {});

/// Spectrum on caller-supplied ascending frequencies symmetric about 0,
/// integrated with trapezoid weights.
[[nodiscard]] SpectrumScan quadrature_spectrum(const DriftMatrix& drift, const NoiseMatrix& noise, double theta,
                                               std::span<const double> omegas);

/// (1/2π) ∑ w S̃; stores the value and the tail diagnostics in the scan.
double integrate_variance(SpectrumScan& scan);

}  // namespace optomech
