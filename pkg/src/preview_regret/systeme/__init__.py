"""
Lineare Systeme mit Störungsvorschau und Beispielmodelle.
"""

from .lineare_systeme import (
    DeterministicSystem,
    Equilibrium,
    LinearSystem,
    augment,
    collaborative,
    collaborative_augmented,
    controllability_rank,
    find_forced_equilibrium,
    is_controllable,
    is_equilibrium,
    is_stabilizable,
    safe_set_contains,
    shift_origin,
    systems_equal,
)
from .modelle import VORLAGEN, Orakel1D, build_1d, build_2d_random, build_template

__all__ = [
    "DeterministicSystem",
    "Equilibrium",
    "LinearSystem",
    "Orakel1D",
    "VORLAGEN",
    "augment",
    "build_1d",
    "build_2d_random",
    "build_template",
    "collaborative",
    "collaborative_augmented",
    "controllability_rank",
    "find_forced_equilibrium",
    "is_controllable",
    "is_equilibrium",
    "is_stabilizable",
    "safe_set_contains",
    "shift_origin",
    "systems_equal",
]
