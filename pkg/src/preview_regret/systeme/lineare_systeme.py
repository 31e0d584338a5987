"""
Lineare Systeme mit Störungsvorschau.

Die vier Sichten auf ein System:
    Σ       x⁺ = Ax + Bu + Ed,  d ∈ D,  (x, u) ∈ S_xu
    Σ_p     p-fach erweitertes System, Zustand (x, d₁, …, d_p)
    D(Σ)    kollaboratives System, Störung als zweiter Eingang u_d
    D(Σ_p)  kollaboratives System des erweiterten Systems

Konvention für Σ_p: Zustandsblock x, dann d₁ … d_p; danach der Eingang u.
"""

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..gemeinsam.config import config
from ..gemeinsam.errors import (
    DimensionsError,
    EingabeSyntaxError,
    KeinGleichgewichtError,
    UnbeschraenktError,
)
from ..geometrie.polytop import HPolytope, cartesian_product, is_subset
from ..geometrie.solver import LpProblem, LpStatus, solve_lp, unsteuerbare_eigenwerte

logger = logging.getLogger(__name__)


def _matrix(werte: Any, zeilen: int, name: str) -> np.ndarray:
    M = np.asarray(werte, dtype=float)
    if M.size == 0:
        return np.zeros((zeilen, 0))
    M = M.reshape(zeilen, -1) if M.ndim < 2 else M
    if M.shape[0] != zeilen:
        raise DimensionsError(name, zeilen, M.shape[0])
    return M


@dataclass(frozen=True)
class LinearSystem:
    """x⁺ = Ax + Bu + Ed mit Störmenge D und sicherer Menge S_xu ⊆ R^{n+m}"""

    A: np.ndarray
    B: np.ndarray
    E: np.ndarray
    D: HPolytope
    S_xu: HPolytope
    name: str = ""
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        if A.shape[0] != A.shape[1]:
            raise DimensionsError(f"{self.name or 'LinearSystem'}.A", "quadratisch", A.shape)
        n = A.shape[0]
        B = _matrix(self.B, n, "LinearSystem.B")
        E = _matrix(self.E, n, "LinearSystem.E")
        if self.D.dim != E.shape[1]:
            raise DimensionsError("LinearSystem.D", E.shape[1], self.D.dim)
        if self.S_xu.dim != n + B.shape[1]:
            raise DimensionsError("LinearSystem.S_xu", n + B.shape[1], self.S_xu.dim)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "E", E)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def l(self) -> int:  # noqa: E743
        return self.E.shape[1]

    def step(self, x: Any, u: Any, d: Any) -> np.ndarray:
        return self.A @ np.asarray(x, dtype=float) + self.B @ np.atleast_1d(u) + self.E @ np.atleast_1d(d)

    def pruefe_kompaktheit(self) -> None:
        """D und S_xu müssen beschränkt sein

        Raises:
            UnbeschraenktError: Eine der Mengen ist unbeschränkt
        """
        if not self.D.is_bounded:
            raise UnbeschraenktError(f"{self.name or 'System'}: Störmenge D")
        if not self.S_xu.is_bounded:
            raise UnbeschraenktError(f"{self.name or 'System'}: sichere Menge S_xu")

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "A": self.A.tolist(),
            "B": self.B.tolist(),
            "E": self.E.tolist(),
            "D": self.D.to_dict(),
            "S_xu": self.S_xu.to_dict(),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, daten: dict[str, Any]) -> "LinearSystem":
        fehlend = [k for k in ("A", "B", "E", "D", "S_xu") if k not in daten]
        if fehlend:
            raise EingabeSyntaxError(
                f"System ohne Felder {fehlend}",
                '{"A": [[..]], "B": [[..]], "E": [[..]], "D": {H,h}, "S_xu": {H,h}}',
            )
        system = cls(
            A=daten["A"],
            B=daten["B"],
            E=daten["E"],
            D=HPolytope.from_dict(daten["D"]),
            S_xu=HPolytope.from_dict(daten["S_xu"]),
            name=daten.get("name", ""),
            metadata=dict(daten.get("metadata", {})),
        )
        system.pruefe_kompaktheit()
        return system


@dataclass(frozen=True)
class DeterministicSystem:
    """x⁺ = Ax + Bu ohne Störung, sichere Menge S ⊆ R^{n+m}

    input_split trennt die echten Eingänge von den Störungseingängen u_d.
    """

    A: np.ndarray
    B: np.ndarray
    S: HPolytope
    input_split: int | None = None
    name: str = ""

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        n = A.shape[0]
        B = _matrix(self.B, n, "DeterministicSystem.B")
        if self.S.dim != n + B.shape[1]:
            raise DimensionsError("DeterministicSystem.S", n + B.shape[1], self.S.dim)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    def step(self, x: Any, u: Any) -> np.ndarray:
        return self.A @ np.asarray(x, dtype=float) + self.B @ np.atleast_1d(u)


@dataclass(frozen=True)
class Equilibrium:
    """Erzwungenes Gleichgewicht Ax_e + Bu_e + Ed_e = x_e mit Reserve ε*"""

    x_e: np.ndarray
    u_e: np.ndarray
    d_e: np.ndarray
    margin: float = 0.0

    @classmethod
    def origin(cls, system: LinearSystem) -> "Equilibrium":
        return cls(np.zeros(system.n), np.zeros(system.m), np.zeros(system.l))

    @property
    def is_origin(self) -> bool:
        return not (np.any(self.x_e) or np.any(self.u_e) or np.any(self.d_e))

    def __neg__(self) -> "Equilibrium":
        return Equilibrium(-self.x_e, -self.u_e, -self.d_e, self.margin)

    def to_dict(self) -> dict[str, Any]:
        return {
            "x_e": np.asarray(self.x_e).tolist(),
            "u_e": np.asarray(self.u_e).tolist(),
            "d_e": np.asarray(self.d_e).tolist(),
            "margin": self.margin,
        }

    @classmethod
    def from_dict(cls, daten: dict[str, Any]) -> "Equilibrium":
        return cls(
            np.asarray(daten["x_e"], dtype=float),
            np.asarray(daten["u_e"], dtype=float),
            np.asarray(daten["d_e"], dtype=float),
            float(daten.get("margin", 0.0)),
        )


# === Systemsichten ===


def augment(system: LinearSystem, p: int) -> LinearSystem:
    """Σ_p: Zustand (x, d₁, …, d_p), d_p wird von der aktuellen Störung gespeist

    Args:
        system: Ausgangssystem Σ
        p: Vorschauhorizont, p = 0 liefert Σ selbst

    Returns:
        Erweitertes System mit sicherer Menge {(x, d_{1:p}, u) | (x,u) ∈ S_xu, d_i ∈ D}
    """
    if p < 0:
        raise DimensionsError("augment", "p ≥ 0", p)
    if p == 0:
        return system
    n, m, nd = system.n, system.m, system.l
    N = n + p * nd

    A_p = np.zeros((N, N))
    A_p[:n, :n] = system.A
    A_p[:n, n : n + nd] = system.E
    for i in range(p - 1):
        A_p[n + i * nd : n + (i + 1) * nd, n + (i + 1) * nd : n + (i + 2) * nd] = np.eye(nd)
    B_p = np.vstack([system.B, np.zeros((p * nd, m))])
    E_p = np.zeros((N, nd))
    E_p[N - nd :, :] = np.eye(nd)

    S = system.S_xu
    zeilen = [np.hstack([S.H[:, :n], np.zeros((S.n_rows, p * nd)), S.H[:, n:]])]
    rhs = [S.h]
    for i in range(p):
        block = np.zeros((system.D.n_rows, N + m))
        block[:, n + i * nd : n + (i + 1) * nd] = system.D.H
        zeilen.append(block)
        rhs.append(system.D.h)
    S_p = HPolytope(np.vstack(zeilen), np.concatenate(rhs))

    name = f"{system.name}_p{p}" if system.name else ""
    return LinearSystem(A_p, B_p, E_p, system.D, S_p, name=name, metadata=system.metadata)


def collaborative(system: LinearSystem) -> DeterministicSystem:
    """D(Σ): x⁺ = Ax + [B E](u, u_d) mit sicherer Menge S_xu × D"""
    return DeterministicSystem(
        system.A,
        np.hstack([system.B, system.E]),
        cartesian_product(system.S_xu, system.D),
        input_split=system.m,
        name=f"D({system.name})" if system.name else "",
    )


def collaborative_augmented(system: LinearSystem, p: int) -> DeterministicSystem:
    """D(Σ_p) = collaborative(augment(Σ, p))"""
    return collaborative(augment(system, p))


# === Steuerbarkeit ===


def is_stabilizable(A: Any, B: Any) -> bool:
    """PBH-Test für alle Eigenwerte mit |λ| ≥ 1"""
    return not unsteuerbare_eigenwerte(A, B)


def controllability_rank(A: Any, B: Any) -> int:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[0]
    B = np.asarray(B, dtype=float).reshape(n, -1)
    bloecke = [B]
    for _ in range(n - 1):
        bloecke.append(A @ bloecke[-1])
    K = np.hstack(bloecke)
    if K.size == 0:
        return 0
    return int(np.linalg.matrix_rank(K, tol=1e-9 * max(1.0, np.linalg.norm(K))))


def is_controllable(A: Any, B: Any) -> bool:
    return controllability_rank(A, B) == np.atleast_2d(A).shape[0]


# === Gleichgewichte ===


def find_forced_equilibrium(
    system: LinearSystem,
    proj_C: HPolytope,
    strict: bool = True,
    fix_origin: bool = False,
) -> Equilibrium:
    """Gleichgewicht mit größtmöglicher Reserve ε* zu S_xu × D und zu Proj_C

    Maximiert ε u.d.N. (A − I)x + Bu + Ed = 0,
    (x,u,d) + ε·B(n+m+l) ⊆ S_xu × D und x + ε·B(n) ⊆ Proj_C (strict)
    bzw. x ∈ Proj_C (relaxiert). Unter allen optimalen Punkten wird der
    mit kleinster 1-Norm genommen.

    Args:
        system: System Σ
        proj_C: Projektion der inneren Menge auf den Zustandsraum
        strict: Kugelbedingung auch für Proj_C
        fix_origin: Gleichgewicht auf den Ursprung festlegen

    Returns:
        Equilibrium mit margin = ε* (0: Annahme nicht verifizierbar)

    Raises:
        KeinGleichgewichtError: Kein Gleichgewicht in den Mengen
    """
    n, m, nd = system.n, system.m, system.l
    if proj_C.dim != n:
        raise DimensionsError("find_forced_equilibrium", n, proj_C.dim)
    k = n + m + nd
    S = cartesian_product(system.S_xu, system.D)

    # Variablen: z = (x, u, d), ε, t (Betragsschranken für Stufe 2)
    A_eq = np.zeros((n, 2 * k + 1))
    A_eq[:, :n] = system.A - np.eye(n)
    A_eq[:, n : n + m] = system.B
    A_eq[:, n + m : k] = system.E
    b_eq = np.zeros(n)

    zeilen = [np.hstack([S.H, np.abs(S.H).sum(axis=1, keepdims=True), np.zeros((S.n_rows, k))])]
    rhs = [S.h]
    C_eps = np.abs(proj_C.H).sum(axis=1, keepdims=True) if strict else np.zeros((proj_C.n_rows, 1))
    zeilen.append(np.hstack([proj_C.H, np.zeros((proj_C.n_rows, m + nd)), C_eps, np.zeros((proj_C.n_rows, k))]))
    rhs.append(proj_C.h)
    A_ub = np.vstack(zeilen)
    b_ub = np.concatenate(rhs)

    z_bounds = ((0.0, 0.0),) * k if fix_origin else ((None, None),) * k
    bounds = z_bounds + ((0.0, None),) + ((0.0, 0.0),) * k
    cost = np.zeros(2 * k + 1)
    cost[k] = -1.0
    sol = solve_lp(LpProblem(cost, A_ub, b_ub, A_eq, b_eq, bounds))
    if sol.status is LpStatus.INFEASIBLE:
        raise KeinGleichgewichtError("Gleichgewichts-LP unzulässig" + (" (Ursprung fixiert)" if fix_origin else ""))
    if sol.status is LpStatus.UNBOUNDED:
        raise UnbeschraenktError("find_forced_equilibrium")
    eps = max(0.0, float(sol.point[k]))
    if eps < config.TAU_FEAS:
        eps = 0.0

    # Stufe 2: kleinste 1-Norm bei fester Reserve
    betrag = np.zeros((2 * k, 2 * k + 1))
    betrag[:k, :k] = np.eye(k)
    betrag[:k, k + 1 :] = -np.eye(k)
    betrag[k:, :k] = -np.eye(k)
    betrag[k:, k + 1 :] = -np.eye(k)
    eps_min = max(0.0, eps - config.TAU_FEAS * (1.0 + eps))
    bounds2 = z_bounds + ((eps_min, None),) + ((0.0, None),) * k
    cost2 = np.concatenate([np.zeros(k + 1), np.ones(k)])
    sol2 = solve_lp(
        LpProblem(cost2, np.vstack([A_ub, betrag]), np.concatenate([b_ub, np.zeros(2 * k)]), A_eq, b_eq, bounds2)
    )
    z = sol2.point[:k] if sol2.optimal else sol.point[:k]
    z = np.where(np.abs(z) < 1e-12, 0.0, z)
    eq = Equilibrium(z[:n], z[n : n + m], z[n + m :], eps)
    logger.debug("Gleichgewicht %s mit ε* = %.3e (strict=%s)", z, eps, strict)
    return eq


def shift_origin(system: LinearSystem, eq: Equilibrium) -> LinearSystem:
    """Verschiebt den Ursprung in das Gleichgewicht; A, B, E bleiben gleich"""
    if eq.is_origin:
        return system
    S_neu = system.S_xu.translate(-np.concatenate([eq.x_e, eq.u_e]))
    D_neu = system.D.translate(-np.asarray(eq.d_e, dtype=float))
    metadata = dict(system.metadata)
    metadata["verschiebung"] = eq.to_dict()
    return dataclasses.replace(system, S_xu=S_neu, D=D_neu, metadata=metadata)


def is_equilibrium(system: LinearSystem, eq: Equilibrium, tol: float | None = None) -> bool:
    tol = config.TAU_FEAS if tol is None else tol
    rest = system.step(eq.x_e, eq.u_e, eq.d_e) - eq.x_e
    return bool(np.max(np.abs(rest), initial=0.0) <= tol * (1.0 + np.max(np.abs(eq.x_e), initial=0.0)))


def safe_set_contains(system: LinearSystem, x: Any, u: Any, tol: float | None = None) -> bool:
    return system.S_xu.contains(np.concatenate([np.atleast_1d(x), np.atleast_1d(u)]), tol)


def systems_equal(a: LinearSystem, b: LinearSystem, tol: float = 1e-12) -> bool:
    """Matrizen gleich und sichere Mengen/Störmengen gegenseitig enthalten"""
    if (a.n, a.m, a.l) != (b.n, b.m, b.l):
        return False
    for X, Y in ((a.A, b.A), (a.B, b.B), (a.E, b.E)):
        if not np.allclose(X, Y, atol=tol, rtol=0.0):
            return False
    return all(
        is_subset(P, Q) and is_subset(Q, P) for P, Q in ((a.S_xu, b.S_xu), (a.D, b.D))
    )
