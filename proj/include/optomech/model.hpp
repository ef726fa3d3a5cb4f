#pragma once

// Physical parameters of the parametrically driven optomechanical cavity and
// the squeezed-frame (Bogoliubov) transformation that turns the two-photon
// drive into an effective DCE coupling G0 (b† a² + b a†²).
//
// All rates and frequencies are expressed in units of the mechanical
// damping rate gamma_m.

#include <complex>
#include <optional>

namespace optomech {

using Complex = std::complex<double>;

/// Lab-frame parameters.
struct SystemParams {
    double kappa = 500.0;      ///< cavity linewidth
    double gamma_m = 1.0;      ///< mechanical linewidth (normalization reference)
    double omega_m = 1.0e4;    ///< bare mechanical frequency
    double delta_s = 1.0e4;    ///< two-photon detuning omega_c - omega_L/2
    double E = 0.87e4;         ///< two-photon drive amplitude
    double g0 = 115.0;         ///< bare single-photon coupling
    Complex F{4.0e5, 0.0};     ///< mechanical drive amplitude
    double omega_d = 0.0;      ///< mechanical drive frequency
    double n_m = 0.0;          ///< mechanical bath occupation
};

/// Derived squeezed-frame quantities.
struct SqueezedFrame {
    double r = 0.0;        ///< squeezing parameter
    double omega_s = 0.0;  ///< effective cavity frequency sqrt(delta_s^2 - E^2)
    double delta = 0.0;    ///< effective detuning omega_s - omega_d/2
    double Omega_M = 0.0;  ///< effective mechanical frequency omega_m - omega_d
    double g_OM = 0.0;     ///< g0 cosh(2r)
    double G0 = 0.0;       ///< g0 sinh(2r)/2
};

/// Optional direct values for (delta, Omega_M, G0). When set they replace the
/// values derived by squeeze_frame; the lab-frame drive frequencies that
/// realize a given (delta, Omega_M) pair are often not pinned down.
struct FrameOverrides {
    std::optional<double> delta;
    std::optional<double> Omega_M;
    std::optional<double> G0;
};

/// A complete input set: lab parameters plus any frame overrides.
struct Scenario {
    SystemParams system;
    FrameOverrides overrides;
};

/// Everything the steady-state and fluctuation solvers consume.
struct EffectiveParams {
    double kappa = 0.0;
    double gamma_m = 1.0;
    double delta = 0.0;
    double Omega_M = 0.0;
    double G0 = 0.0;
    Complex F{0.0, 0.0};
    double n_m = 0.0;
};

/// Relative margin below the parametric threshold: delta_s - |E| must exceed
/// this fraction of delta_s.
inline constexpr double kThresholdMargin = 1e-9;

/// Throws Error{NonPositiveRate} or Error{ParametricThreshold}; otherwise
/// returns the input unchanged.
SystemParams validate(const SystemParams& params);

/// Checks rates and occupation of an already-resolved parameter set.
EffectiveParams validate(const EffectiveParams& params);

SqueezedFrame squeeze_frame(const SystemParams& params);

/// Validates, applies the squeezed-frame transformation and any overrides,
/// and rescales every rate to gamma_m = 1.
EffectiveParams resolve(const Scenario& scenario);

/// The caption parameter set shared by the bistability/entanglement figures:
/// kappa = 500, Omega_M = 1e4, delta = Omega_M/2, n_m = 0, g0 = 115 and
/// E = 0.87 delta_s (delta_s = omega_m), F = 4e5. delta and Omega_M enter as
/// overrides; G0 follows from g0 and E.
Scenario reference_scenario();

}  // namespace optomech
