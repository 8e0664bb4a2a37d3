"""V-type three-level atom in a bad cavity: steady states, dressed states and spectra."""

from ._vatom import (
    BetaVariant,
    SecularVariant,
    SweepVariable,
    SystemParams,
    VatomError,
    absorption,
    default_spectral_grid,
    dressed_basis,
    dressed_populations_exact,
    dressed_populations_rate_eq,
    dressed_scalars,
    fluorescence,
    fluorescence_oracle,
    fluorescence_secular,
    full_liouvillian,
    line_weights,
    reduced_liouvillian,
    s_operator,
    s_operator_oracle,
    secular_rates,
    stationary_correlation,
    steady_state,
    steady_state_full,
    sweep_populations,
    transition_rates,
    validate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
