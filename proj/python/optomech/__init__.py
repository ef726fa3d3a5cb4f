"""Parametrically driven optomechanics: steady states, entanglement and squeezing."""

from ._optomech import (
    BranchPoint,
    EffectiveParams,
    OptomechError,
    QuadratureScan,
    Scenario,
    covariance,
    drift_matrix,
    eigenvalues,
    load_config,
    log_negativity,
    noise_matrix,
    parameter_names,
    parse_config,
    population_cubic,
    quadrature_variance,
    reference_scenario,
    reproduce_figure,
    resolve,
    scan_quadratures,
    spectrum_variance,
    steady_states,
    symplectic_eigenvalues,
)


def stable_branches(scenario=None):
    """Resolved parameters and the stable branches of a scenario."""
    params = resolve(scenario if scenario is not None else reference_scenario())
    return params, [p for p in steady_states(params) if p.stable]


def mechanical_block(V):
    return V[2:, 2:]
