"""Pure Nash equilibria of threshold games on complete graphs."""

from ._cac import (
    EnumerationTooLarge,
    InstanceError,
    Population,
    SizeLimitExceeded,
    brute_force,
    construct,
    count,
    enumerate,
    four_cycle_test,
    is_exact_potential,
    is_nash,
    run_dynamics,
    solve,
    solve_continuum,
)

__all__ = [
    "EnumerationTooLarge",
    "InstanceError",
    "Population",
    "SizeLimitExceeded",
    "brute_force",
    "construct",
    "count",
    "enumerate",
    "four_cycle_test",
    "is_exact_potential",
    "is_nash",
    "run_dynamics",
    "solve",
    "solve_continuum",
]
