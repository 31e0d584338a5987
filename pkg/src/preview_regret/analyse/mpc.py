"""
MPC mit Störungsvorschau.

Zulässige Bereiche F_p(C) unter den Nebenbedingungen für rekursive
Zulässigkeit, das Konvergenzzertifikat für Proj_n(F_p(C)) und ein
Simulator für den geschlossenen Regelkreis.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from ..gemeinsam.config import config
from ..gemeinsam.errors import (
    DimensionsError,
    EingabeSyntaxError,
    NichtInvariantError,
    UnzulaessigerStartError,
)
from ..geometrie.polytop import (
    HPolytope,
    bounding_box,
    cartesian_power,
    cartesian_product,
    chebyshev_radius,
    erode_rows,
    is_subset,
    support_point,
    vertices,
)
from ..geometrie.solver import solve_qp
from ..systeme.lineare_systeme import LinearSystem, augment, collaborative
from .invarianz import max_invariant_set, pre, pre_k
from .regret import ConvergenceReport, RegretCertificate, algorithm1, algorithm2, algorithm3

logger = logging.getLogger(__name__)


class RfcModus(Enum):
    """Nebenbedingung für rekursive Zulässigkeit"""

    TERMINAL_SET = "terminal_set"  # x_p ∈ C
    MAX_RCIS = "max_rcis"  # (x₁, d_{1:p−1}, d_p) ∈ C_max,p für alle d_p ∈ D
    NONE = "none"  # nur für Ablationsversuche


@dataclass(frozen=True)
class MpcConfig:
    """Horizont, Endmenge, Gewichte und RFC-Modus"""

    p: int
    terminal: HPolytope
    Q_s: np.ndarray | None = None
    R_s: np.ndarray | None = None
    rfc_mode: RfcModus = RfcModus.TERMINAL_SET
    C_max_p: HPolytope | None = None
    Q_F: np.ndarray | None = None

    def __post_init__(self):
        if self.p < 1:
            raise DimensionsError("MpcConfig.p", "p ≥ 1", self.p)
        if self.rfc_mode is RfcModus.MAX_RCIS and self.C_max_p is None:
            raise EingabeSyntaxError("rfc_mode=max_rcis ohne C_max_p", "MpcConfig(..., C_max_p=...)")

    def gewichte(self, n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
        Q = np.eye(n) if self.Q_s is None else np.atleast_2d(np.asarray(self.Q_s, dtype=float))
        R = np.eye(m) if self.R_s is None else np.atleast_2d(np.asarray(self.R_s, dtype=float))
        return Q, R

    def endgewicht(self, n: int) -> np.ndarray:
        """Gewicht für x_p, ohne Angabe Q_s"""
        if self.Q_F is None:
            return self.gewichte(n, 0)[0]
        Q_F = np.atleast_2d(np.asarray(self.Q_F, dtype=float))
        if Q_F.shape != (n, n):
            raise DimensionsError("MpcConfig.Q_F", (n, n), Q_F.shape)
        return Q_F


@dataclass(frozen=True)
class FeasibleDomain:
    """F_p(C) im Raum (x₀, d_{0:p−1}) und seine Projektion auf x₀"""

    projection: HPolytope
    full: HPolytope | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "projection": self.projection.to_dict(),
            "full": self.full.to_dict() if self.full is not None else None,
        }


@dataclass(frozen=True)
class MpcErgebnis:
    u0: np.ndarray | None
    states: np.ndarray | None
    inputs: np.ndarray | None
    feasible: bool
    cost: float = math.nan


@dataclass
class Trajektorie:
    """Protokoll eines geschlossenen Regelkreises"""

    states: list[np.ndarray] = field(default_factory=list)
    inputs: list[np.ndarray] = field(default_factory=list)
    disturbances: list[np.ndarray] = field(default_factory=list)
    feasible: list[bool] = field(default_factory=list)
    costs: list[float] = field(default_factory=list)

    @property
    def alle_zulaessig(self) -> bool:
        return all(self.feasible)

    @property
    def unzulaessige_schritte(self) -> int:
        return sum(not f for f in self.feasible)

    @staticmethod
    def kopf(n: int, m: int, nd: int) -> list[str]:
        return (
            ["t"]
            + [f"x{i}" for i in range(n)]
            + [f"u{i}" for i in range(m)]
            + [f"d{i}" for i in range(nd)]
            + ["feasible", "cost"]
        )

    def zeilen(self) -> list[list[Any]]:
        ergebnis = []
        for t, (x, u, d, ok, kosten) in enumerate(
            zip(self.states, self.inputs, self.disturbances, self.feasible, self.costs, strict=False)
        ):
            ergebnis.append([t, *x.tolist(), *u.tolist(), *d.tolist(), ok, kosten])
        return ergebnis


# === Zulässige Bereiche ===


def pruefe_invarianz(system: LinearSystem, C: HPolytope, tol: float | None = None) -> None:
    """C ⊆ Pre_Σ(C, S_xu), sonst NichtInvariantError mit verletzendem Punkt"""
    tol = config.TAU_SET if tol is None else tol
    P = pre(system, C)
    if P.is_empty:
        punkt = chebyshev_radius(C)[0] if not C.is_empty else np.zeros(system.n)
        raise NichtInvariantError(punkt.tolist(), math.inf)
    schlimmste, punkt = -math.inf, None
    for zeile, rhs in zip(P.H, P.h, strict=True):
        wert, x = support_point(C, zeile)
        verletzung = (wert - rhs) / (1.0 + abs(rhs))
        if verletzung > schlimmste:
            schlimmste, punkt = verletzung, x
    if schlimmste > tol:
        raise NichtInvariantError(np.asarray(punkt).tolist(), schlimmste)


def feasible_domain(
    system: LinearSystem,
    C: HPolytope,
    p: int,
    want_full: bool = False,
    budget: int | None = None,
    check: bool = True,
) -> FeasibleDomain:
    """F_p(C) = Pre^p_{Σ_p}(C × D^p, S_xu,p) und Proj_n(F_p(C)) = Pre^p_{D(Σ)}(C, S_xu × D)

    Die Projektion läuft immer über das kollaborative System; der volle
    Bereich nur, wenn n + p·l im Budget liegt.

    Raises:
        NichtInvariantError: C ist keine RCIS von Σ
    """
    if check:
        pruefe_invarianz(system, C)
    co = collaborative(system)
    projektion = pre_k(co, C, co.S, p)
    if projektion.is_empty:
        logger.warning("Proj_n(F_%d(C)) ist leer", p)
    full = None
    if want_full:
        budget = config.PROJEKTIONS_BUDGET if budget is None else budget
        dim = system.n + p * system.l
        if dim <= budget:
            sys_p = augment(system, p)
            full = pre_k(sys_p, cartesian_product(C, cartesian_power(system.D, p)), sys_p.S_xu, p)
        else:
            logger.info("F_p(C) nicht berechnet: Dimension %d > Budget %d", dim, budget)
    return FeasibleDomain(projektion, full)


def feasible_domain_ladder(
    system: LinearSystem,
    C: HPolytope,
    k_max: int | None = None,
    C_max_co: HPolytope | None = None,
) -> ConvergenceReport:
    """Endliche Konvergenz von Proj_n(F_p(C)) gegen C_max,co"""
    if C_max_co is None:
        C_max_co = max_invariant_set(collaborative(system)).menge
    return algorithm3(system, C_max_co, C, 0, k_max)


def theorem9_certificate(
    system: LinearSystem,
    C: HPolytope,
    C_max_co: HPolytope | None = None,
    method: str = "alg2",
    N: int | None = None,
    refine: bool = False,
) -> RegretCertificate:
    """Schranke für d(Proj_n(F_p(C)), C_max,co): Algorithmus 1 oder 2 mit C statt Proj_n(C_max,p0)"""
    konvergiert = True
    if C_max_co is None:
        ergebnis = max_invariant_set(collaborative(system))
        C_max_co, konvergiert = ergebnis.menge, ergebnis.konvergiert
    if method == "alg2":
        return algorithm2(system, C_max_co, C, 0, N=N, konvergiert=konvergiert)
    if method == "alg1":
        return algorithm1(system, C_max_co, C, 0, refine=refine, konvergiert=konvergiert)
    raise EingabeSyntaxError(f"method={method!r}", "'alg1' oder 'alg2'")


# === MPC ===


def _praediktion(system: LinearSystem, x0: np.ndarray, vorschau: np.ndarray, p: int):
    """x_t = F_t + G_t·U für t = 0…p (U = (u_0, …, u_{p−1}))"""
    n, m = system.n, system.m
    F = [x0]
    G = [np.zeros((n, p * m))]
    for t in range(p):
        G_neu = system.A @ G[-1]
        G_neu[:, t * m : (t + 1) * m] += system.B
        F.append(system.A @ F[-1] + system.E @ vorschau[t])
        G.append(G_neu)
    return F, G


def mpc_step(system: LinearSystem, cfg: MpcConfig, x0: Any, preview: Any) -> MpcErgebnis:
    """Löst das MPC-Problem mit Vorschau d_{0:p−1}

    min Σ_{t=1}^{p−1} x_tᵀQ_s x_t + x_pᵀQ_F x_p + Σ_{t=0}^{p−1} u_tᵀR_s u_t
    u.d.N. (x_t, u_t) ∈ S_xu und der RFC-Bedingung.

    Returns:
        MpcErgebnis; feasible = False, wenn (x0, d_{0:p−1}) ∉ F_p(C)
    """
    n, m, nd, p = system.n, system.m, system.l, cfg.p
    x0 = np.asarray(x0, dtype=float).ravel()
    vorschau = np.asarray(preview, dtype=float).reshape(-1, nd) if nd else np.zeros((p, 0))
    if x0.size != n:
        raise DimensionsError("mpc_step.x0", n, x0.size)
    if vorschau.shape[0] < p:
        raise DimensionsError("mpc_step.preview", p, vorschau.shape[0])
    Q_s, R_s = cfg.gewichte(n, m)
    Q_F = cfg.endgewicht(n)
    F, G = _praediktion(system, x0, vorschau, p)

    H = np.zeros((p * m, p * m))
    f = np.zeros(p * m)
    konst = 0.0
    for t in range(1, p + 1):
        Q_t = Q_F if t == p else Q_s
        H += 2.0 * G[t].T @ Q_t @ G[t]
        f += 2.0 * G[t].T @ Q_t @ F[t]
        konst += float(F[t] @ Q_t @ F[t])
    for t in range(p):
        H[t * m : (t + 1) * m, t * m : (t + 1) * m] += 2.0 * R_s

    zeilen, rhs = [], []
    Hx, Hu, hs = system.S_xu.H[:, :n], system.S_xu.H[:, n:], system.S_xu.h
    for t in range(p):
        auswahl = np.zeros((m, p * m))
        auswahl[:, t * m : (t + 1) * m] = np.eye(m)
        zeilen.append(Hx @ G[t] + Hu @ auswahl)
        rhs.append(hs - Hx @ F[t])
    if cfg.rfc_mode is RfcModus.TERMINAL_SET:
        zeilen.append(cfg.terminal.H @ G[p])
        rhs.append(cfg.terminal.h - cfg.terminal.H @ F[p])
    elif cfg.rfc_mode is RfcModus.MAX_RCIS:
        # letzter Vorschau-Slot läuft über ganz D
        C_p = cfg.C_max_p
        E_letzt = np.zeros((C_p.dim, nd))
        E_letzt[C_p.dim - nd :, :] = np.eye(nd)
        C_eroded = erode_rows(C_p, E_letzt, system.D)
        Hc = C_eroded.H
        bekannt = vorschau[1:p].ravel()
        zeilen.append(Hc[:, :n] @ G[1])
        rhs.append(C_eroded.h - Hc[:, :n] @ F[1] - Hc[:, n : n + (p - 1) * nd] @ bekannt)
    A_ub = np.vstack(zeilen)
    b_ub = np.concatenate(rhs)
    b_ub = b_ub + 1e-9 * (1.0 + np.abs(b_ub))

    loesung = solve_qp(H, f, A_ub, b_ub)
    if not loesung.optimal:
        return MpcErgebnis(None, None, None, False)
    U = loesung.point
    zustaende = np.array([F[t] + G[t] @ U for t in range(p + 1)])
    eingaenge = U.reshape(p, m)
    kosten = 0.5 * float(U @ H @ U) + float(f @ U) + konst
    return MpcErgebnis(eingaenge[0].copy(), zustaende, eingaenge, True, kosten)


def stoerfolge(D: HPolytope, laenge: int, seed: int | None = None, modus: str = "uniform") -> np.ndarray:
    """Zufällige Störfolge in D

    modus="uniform" zieht gleichverteilt (Verwerfung im umschließenden
    Quader), modus="vertices" wählt zufällige Ecken von D.
    """
    rng = np.random.default_rng(config.STANDARD_SEED if seed is None else seed)
    if D.dim == 0:
        return np.zeros((laenge, 0))
    if modus == "vertices":
        ecken = np.array(vertices(D))
        return ecken[rng.integers(0, len(ecken), size=laenge)]
    if modus != "uniform":
        raise EingabeSyntaxError(f"modus={modus!r}", "'uniform' oder 'vertices'")
    box = bounding_box(D)
    folge = np.empty((laenge, D.dim))
    for i in range(laenge):
        for _ in range(10_000):
            d = rng.uniform(box.lower, box.upper)
            if D.contains(d):
                break
        else:
            d = chebyshev_radius(D)[0]
        folge[i] = d
    return folge


def simulate_closed_loop(
    system: LinearSystem,
    cfg: MpcConfig,
    x0: Any,
    disturbances: Any,
    T: int,
) -> Trajektorie:
    """T Schritte MPC mit gleitender Vorschau

    Args:
        disturbances: Folge d_0, …, d_{T+p−2} (mindestens T + p − 1 Einträge)

    Raises:
        UnzulaessigerStartError: Erster Schritt unzulässig
    """
    n, nd, p = system.n, system.l, cfg.p
    folge = np.asarray(disturbances, dtype=float).reshape(-1, nd) if nd else np.zeros((T + p, 0))
    if folge.shape[0] < T + p - 1:
        raise DimensionsError("simulate_closed_loop.disturbances", T + p - 1, folge.shape[0])
    Q_s, R_s = cfg.gewichte(n, system.m)
    x = np.asarray(x0, dtype=float).ravel()
    log = Trajektorie()
    for t in range(T):
        vorschau = folge[t : t + p]
        if vorschau.shape[0] < p:
            vorschau = np.vstack([vorschau, np.zeros((p - vorschau.shape[0], nd))])
        schritt = mpc_step(system, cfg, x, vorschau)
        if not schritt.feasible:
            if t == 0:
                raise UnzulaessigerStartError(x.tolist())
            logger.warning("MPC unzulässig in Schritt %d bei x = %s", t, x)
            log.states.append(x.copy())
            log.inputs.append(np.full(system.m, np.nan))
            log.disturbances.append(folge[t].copy())
            log.feasible.append(False)
            log.costs.append(math.nan)
            break
        u = schritt.u0
        x_neu = system.step(x, u, folge[t])
        log.states.append(x.copy())
        log.inputs.append(u)
        log.disturbances.append(folge[t].copy())
        log.feasible.append(True)
        log.costs.append(float(x_neu @ Q_s @ x_neu + u @ R_s @ u))
        x = x_neu
    return log


def in_feasible_domain(domain: FeasibleDomain, x0: Any, preview: Any) -> bool:
    """Mitgliedschaft (x0, d_{0:p−1}) ∈ F_p(C); nur mit vollem Bereich"""
    if domain.full is None:
        raise EingabeSyntaxError("FeasibleDomain ohne full", "feasible_domain(..., want_full=True)")
    z = np.concatenate([np.asarray(x0, dtype=float).ravel(), np.asarray(preview, dtype=float).ravel()])
    return domain.full.contains(z, tol=1e-7)


def sandwich_holds(projektion: HPolytope, proj_cmax_p: HPolytope, C_max_co: HPolytope) -> bool:
    """Proj_n(F_p(C)) ⊆ Proj_n(C_max,p) ⊆ C_max,co"""
    return is_subset(projektion, proj_cmax_p) and is_subset(proj_cmax_p, C_max_co)
