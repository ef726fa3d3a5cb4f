#pragma once

// Mean-field steady state of the effective DCE Hamiltonian. The moments
// n = <a†a>, <a²> and <b> obey closed first-order equations whose fixed points
// reduce to a cubic in z = 2n + 1.

#include <array>
#include <string_view>
#include <vector>

#include "optomech/model.hpp"

namespace optomech {

enum class Branch { Lower, Middle, Upper };

[[nodiscard]] constexpr std::string_view to_string(Branch branch) noexcept {
    switch (branch) {
        case Branch::Lower: return "lower";
        case Branch::Middle: return "middle";
        case Branch::Upper: return "upper";
    }
    return "lower";
}

/// The moments (<a†a>, <a²>, <b>).
struct MeanFieldState {
    double n = 0.0;
    Complex a_sq{0.0, 0.0};
    Complex beta{0.0, 0.0};
};

struct BranchPoint {
    double z = 1.0;
    double n_cav = 0.0;
    Complex a_sq{0.0, 0.0};
    Complex beta{0.0, 0.0};
    Branch branch = Branch::Lower;
    bool stable = false;

    /// Mean cavity amplitude used for linearization: principal sqrt(<a²>).
    [[nodiscard]] Complex alpha() const;
    /// |alpha|² - n_cav; the moment closure does not force these to agree.
    [[nodiscard]] double alpha_population_mismatch() const;
};

/// Expanded population cubic, highest power first:
///   G0^4 z^3 + (b - G0^4) z^2 + (c - b - |F|² G0²) z - c
/// with b = 2 G0² (gamma kappa - delta Omega_M), c = (gamma² + Omega_M²)(delta² + kappa²).
[[nodiscard]] std::array<double, 4> population_cubic(const EffectiveParams& params);

/// Real roots z >= 1 of the population cubic, ascending. Returns {1} when
/// G0 = 0 or F = 0.
[[nodiscard]] std::vector<double> population_cubic_roots(const EffectiveParams& params);

/// Closed-form <a²> and <b> at a root z (n is set to (z - 1)/2).
[[nodiscard]] MeanFieldState mean_fields(double z, const EffectiveParams& params);

/// Right-hand side of the mean-field equations of motion.
[[nodiscard]] MeanFieldState mean_field_rhs(const MeanFieldState& state, const EffectiveParams& params);

/// One BranchPoint per real root with branch labels and drift stability.
[[nodiscard]] std::vector<BranchPoint> classify_and_solve(const EffectiveParams& params);

struct RelaxOptions {
    double t_max = 20.0;
    double dt = 0.0;            ///< 0 picks 0.05 / max(kappa, |Omega_M|, |delta|, gamma_m)
    double tolerance = 1e-10;   ///< on |Δstate| / (Δt * max(1, |state|))
    int check_every = 1000;     ///< steps between convergence checks
};

/// Integrates the mean-field equations with fixed-step RK4 until the state
/// settles. Throws Error{NoConvergence} if t_max is reached first and
/// Error{InvalidArgument} if dt >= 0.1 / max(kappa, |Omega_M|, |delta|).
[[nodiscard]] MeanFieldState relax_mean_field(const EffectiveParams& params, const MeanFieldState& initial,
                                              const RelaxOptions& options = {});

}  // namespace optomech
