#include "optomech/model.hpp"

#include <cmath>
#include <string>

#include "optomech/error.hpp"

namespace optomech {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::NonPositiveRate, std::string(name) + " must be > 0, got " + std::to_string(value));
    }
}

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
    }
}

void require_occupation(double n_m) {
    if (!(n_m >= 0.0) || !std::isfinite(n_m)) {
        throw Error(ErrorCode::InvalidArgument, "n_m must be >= 0, got " + std::to_string(n_m));
    }
}

}  // namespace

SystemParams validate(const SystemParams& params) {
    require_positive(params.kappa, "kappa");
    require_positive(params.gamma_m, "gamma_m");
    require_positive(params.omega_m, "omega_m");
    require_occupation(params.n_m);
    require_finite(params.delta_s, "delta_s");
    require_finite(params.E, "E");
    require_finite(params.g0, "g0");
    require_finite(params.omega_d, "omega_d");
    require_finite(params.F.real(), "F");
    require_finite(params.F.imag(), "F_im");
    if (!(params.delta_s - std::abs(params.E) > kThresholdMargin * std::abs(params.delta_s))) {
        throw Error(ErrorCode::ParametricThreshold,
                    "two-photon drive |E| = " + std::to_string(std::abs(params.E)) +
                        " is at or above the detuning delta_s = " + std::to_string(params.delta_s));
    }
    return params;
}

EffectiveParams validate(const EffectiveParams& params) {
    require_positive(params.kappa, "kappa");
    require_positive(params.gamma_m, "gamma_m");
    require_occupation(params.n_m);
    require_finite(params.delta, "delta");
    require_finite(params.Omega_M, "Omega_M");
    require_finite(params.G0, "G0");
    require_finite(params.F.real(), "F");
    require_finite(params.F.imag(), "F_im");
    return params;
}

SqueezedFrame squeeze_frame(const SystemParams& params) {
    const SystemParams& p = validate(params);
    SqueezedFrame frame;
    // log1p form keeps r accurate for small E/delta_s.
    const double x = p.E / p.delta_s;
    frame.r = 0.25 * (std::log1p(x) - std::log1p(-x));
    frame.omega_s = std::sqrt((p.delta_s - p.E) * (p.delta_s + p.E));
    frame.delta = frame.omega_s - 0.5 * p.omega_d;
    frame.Omega_M = p.omega_m - p.omega_d;
    frame.g_OM = p.g0 * std::cosh(2.0 * frame.r);
    frame.G0 = 0.5 * p.g0 * std::sinh(2.0 * frame.r);
    return frame;
}

EffectiveParams resolve(const Scenario& scenario) {
    const SqueezedFrame frame = squeeze_frame(scenario.system);
    const SystemParams& p = scenario.system;
    const double scale = 1.0 / p.gamma_m;

    EffectiveParams eff;
    eff.kappa = p.kappa * scale;
    eff.gamma_m = 1.0;
    eff.delta = scenario.overrides.delta.value_or(frame.delta) * scale;
    eff.Omega_M = scenario.overrides.Omega_M.value_or(frame.Omega_M) * scale;
    eff.G0 = scenario.overrides.G0.value_or(frame.G0) * scale;
    eff.F = p.F * scale;
    eff.n_m = p.n_m;
    return validate(eff);
}

Scenario reference_scenario() {
    Scenario s;
    s.system = SystemParams{};
    s.overrides.Omega_M = 1.0e4;
    s.overrides.delta = 0.5e4;
    return s;
}

}  // namespace optomech
