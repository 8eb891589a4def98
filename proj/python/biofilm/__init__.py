"""Degenerate Cahn-Hilliard biofilm solver (C++ core)."""

from ._biofilm import (
    ConfigError,
    RunError,
    PhysicalParams,
    ScaledParams,
    __version__,
    characteristic_potential,
    check_potentials,
    compare_models,
    config_text,
    default_physical_params,
    default_scaled_params,
    initial_data,
    l2_distance,
    mobility,
    observed_orders,
    restrict_to,
    run,
    scale_parameters,
    truncated_entropy,
    truncated_mobility,
    truncated_potential_d1,
    truncated_singular,
    truncated_singular_d2,
)
