"""
Rückwärts-erreichbare Mengen und maximale (robust) kontrollierte
invariante Mengen.

Pre_Σ(X, S) = {x | ∃u: (x,u) ∈ S, Ax + Bu + Ed ∈ X ∀d ∈ D}
"""

import logging
from collections.abc import Callable
from typing import NamedTuple

import numpy as np

from ..gemeinsam.config import config
from ..gemeinsam.errors import DimensionsError
from ..geometrie.polytop import (
    HPolytope,
    affine_preimage,
    cartesian_power,
    cartesian_product,
    erode_rows,
    intersect,
    is_subset,
    project,
    remove_redundancy,
    scale,
)
from ..systeme.lineare_systeme import (
    DeterministicSystem,
    LinearSystem,
    collaborative_augmented,
)

logger = logging.getLogger(__name__)

System = LinearSystem | DeterministicSystem


class FixpunktErgebnis(NamedTuple):
    """Ergebnis der Fixpunktiteration"""

    menge: HPolytope
    konvergiert: bool
    iterationen: int


def _sichere_menge(system: System) -> HPolytope:
    return system.S_xu if isinstance(system, LinearSystem) else system.S


def pre(system: System, X: HPolytope, S: HPolytope | None = None, method: str = "fm") -> HPolytope:
    """Ein-Schritt-Rückwärtsmenge Pre_Σ(X, S)

    Args:
        system: LinearSystem (robust gegen D) oder DeterministicSystem
        X: Zielmenge im Zustandsraum
        S: Zustands-Eingangs-Menge, Standard ist die sichere Menge des Systems
        method: Projektionsverfahren ("fm" oder "hull")

    Returns:
        Pre-Menge ohne redundante Zeilen; leer, wenn X nicht erreichbar ist
    """
    S = _sichere_menge(system) if S is None else S
    n, m = system.n, system.m
    if X.dim != n:
        raise DimensionsError("pre.X", n, X.dim)
    if S.dim != n + m:
        raise DimensionsError("pre.S", n + m, S.dim)
    Z = X
    if isinstance(system, LinearSystem) and system.l > 0:
        Z = erode_rows(Z, system.E, system.D)
    Z = intersect(affine_preimage(Z, np.hstack([system.A, system.B])), S)
    if Z.is_empty:
        return HPolytope.empty(n)
    if m == 0:
        return remove_redundancy(Z)
    return project(Z, n, method=method)


def pre_k(system: System, X: HPolytope, S: HPolytope | None, k: int, method: str = "fm") -> HPolytope:
    """k-fache Rückwärtsmenge Pre(Pre^{k−1}(X, S), S)"""
    if k < 0:
        raise DimensionsError("pre_k", "k ≥ 0", k)
    for i in range(k):
        X = pre(system, X, S, method=method)
        logger.debug("Pre^%d: %d Zeilen", i + 1, X.n_rows)
        if X.is_empty:
            break
    return X


def max_invariant_set(
    system: System,
    S: HPolytope | None = None,
    max_iter: int | None = None,
    tol: float | None = None,
    abbrechen: Callable[[], bool] | None = None,
    method: str = "fm",
) -> FixpunktErgebnis:
    """Maximale (robust) kontrollierte invariante Menge, von außen nach innen

    X₀ = Projektion von S auf den Zustand, X_{k+1} = Pre(X_k, S) ∩ X₀.
    Abbruch, sobald X_k ⊆ X_{k+1} bis auf tol gilt. Ohne Konvergenz ist das
    letzte Iterat eine äußere Approximation.

    Args:
        system: System Σ oder D(Σ)
        S: Zustands-Eingangs-Menge, Standard ist die sichere Menge
        max_iter: Iterationsgrenze (Standard FIXPUNKT_MAX_ITER)
        tol: Toleranz für den Inklusionstest (Standard TAU_SET)
        abbrechen: Wird zwischen den Iterationen gefragt, True bricht ab

    Returns:
        FixpunktErgebnis(menge, konvergiert, iterationen)
    """
    S = _sichere_menge(system) if S is None else S
    max_iter = config.FIXPUNKT_MAX_ITER if max_iter is None else max_iter
    tol = config.TAU_SET if tol is None else tol

    X0 = project(S, system.n, method=method)
    X = X0
    for k in range(1, max_iter + 1):
        if abbrechen is not None and abbrechen():
            logger.warning("Fixpunktiteration nach %d Schritten abgebrochen", k - 1)
            return FixpunktErgebnis(X, False, k - 1)
        X_neu = remove_redundancy(intersect(pre(system, X, S, method=method), X0))
        if X_neu.is_empty:
            logger.info("Maximale invariante Menge ist leer (Schritt %d)", k)
            return FixpunktErgebnis(X_neu, True, k)
        if is_subset(X, X_neu, tol):
            logger.debug("Fixpunkt nach %d Schritten (%d Zeilen)", k, X_neu.n_rows)
            return FixpunktErgebnis(X_neu, True, k)
        X = X_neu
    logger.warning("Fixpunktiteration nicht konvergiert nach %d Schritten", max_iter)
    return FixpunktErgebnis(X, False, max_iter)


def cmax_p_co(system: LinearSystem, p: int, C_max_co: HPolytope, method: str = "fm") -> HPolytope:
    """Maximale CIS von D(Σ_p) aus der von D(Σ): Pre^p(C_max,co × D^p)"""
    if p == 0:
        return C_max_co
    co_p = collaborative_augmented(system, p)
    start = cartesian_product(C_max_co, cartesian_power(system.D, p))
    return pre_k(co_p, start, co_p.S, p, method=method)


def check_contractive(
    system: System,
    X: HPolytope,
    S: HPolytope | None,
    N: int,
    lam: float,
    tol: float | None = None,
) -> bool:
    """X ⊆ Pre^N(λX, S): N-Schritt λ-kontrahierend"""
    return is_subset(X, pre_k(system, scale(X, lam), S, N), tol)


def theorem1_bounds(
    system: LinearSystem,
    p: int,
    p_strich: int,
    C_max_p_strich: HPolytope,
    C_max_co: HPolytope,
) -> tuple[HPolytope, HPolytope]:
    """Innere und äußere Schranke für C_max,p aus dem kürzeren Horizont p′

    innen = C_max,p′ × D^{p−p′} (selbst robust kontrolliert invariant für Σ_p)
    außen = C_max,p′,co × D^{p−p′}
    """
    if p_strich > p:
        raise DimensionsError("theorem1_bounds", f"p′ ≤ {p}", p_strich)
    rest = cartesian_power(system.D, p - p_strich)
    innen = cartesian_product(C_max_p_strich, rest)
    aussen = cartesian_product(cmax_p_co(system, p_strich, C_max_co), rest)
    return innen, aussen


def inclusion_factor(xi: float, gamma: float, lam: float) -> float:
    """Faktor g(ξ) mit Pre^N(ξ·C_max,co) ⊇ g(ξ)·C_max,co für γC_max,co N-Schritt λ-kontrahierend"""
    if xi <= lam * gamma:
        return xi / lam if lam > 0 else gamma
    return xi * (1.0 - gamma) / (1.0 - gamma * lam) + gamma * (1.0 - lam) / (1.0 - gamma * lam)
