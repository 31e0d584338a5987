"""
Numerischer Kern: lineare Programme, streng konvexe quadratische
Programme, Riccati- und Lyapunov-Gleichungen.

LPs laufen über HiGHS (scipy.optimize.linprog). Projektionen auf Polytope
und QPs werden auf ein Least-Distance-Problem zurückgeführt und mit
Lawson-Hanson (scipy.optimize.nnls) gelöst.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from scipy import linalg as sla
from scipy.optimize import linprog, nnls

from ..gemeinsam.config import config
from ..gemeinsam.errors import (
    DimensionsError,
    EingabeSyntaxError,
    KonvergenzError,
    LeereMengeError,
    LoeserError,
    NichtPositivDefinitError,
    NichtStabilisierbarError,
)

logger = logging.getLogger(__name__)

Bounds = tuple[tuple[float | None, float | None], ...]


class LpStatus(Enum):
    """Ergebnis eines LP/QP. Unzulässig und unbeschränkt sind keine Fehler."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _als_matrix(werte, spalten: int, name: str) -> np.ndarray:
    if werte is None:
        return np.zeros((0, spalten))
    M = np.asarray(werte, dtype=float)
    if M.size == 0:
        return np.zeros((0, spalten))
    M = np.atleast_2d(M)
    if M.shape[1] != spalten:
        raise DimensionsError(name, spalten, M.shape[1])
    return M


def _als_vektor(werte) -> np.ndarray:
    if werte is None:
        return np.zeros(0)
    return np.asarray(werte, dtype=float).ravel()


@dataclass(frozen=True)
class LpProblem:
    """min cᵀx  u.d.N.  A_ub x ≤ b_ub,  A_eq x = b_eq,  bounds

    Ohne bounds sind alle Variablen frei.
    """

    cost: np.ndarray
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    bounds: Bounds | None = None

    def __post_init__(self):
        c = _als_vektor(self.cost)
        n = c.size
        A_ub = _als_matrix(self.A_ub, n, "LpProblem.A_ub")
        b_ub = _als_vektor(self.b_ub)
        A_eq = _als_matrix(self.A_eq, n, "LpProblem.A_eq")
        b_eq = _als_vektor(self.b_eq)
        if A_ub.shape[0] != b_ub.size:
            raise DimensionsError("LpProblem.b_ub", A_ub.shape[0], b_ub.size)
        if A_eq.shape[0] != b_eq.size:
            raise DimensionsError("LpProblem.b_eq", A_eq.shape[0], b_eq.size)
        for name, arr in (("c", c), ("A_ub", A_ub), ("b_ub", b_ub), ("A_eq", A_eq), ("b_eq", b_eq)):
            if not np.all(np.isfinite(arr)):
                raise EingabeSyntaxError(f"LpProblem.{name} enthält inf/nan", "endliche Zahlen")
        bounds = self.bounds
        if bounds is None:
            bounds = ((None, None),) * n
        elif len(bounds) != n:
            raise DimensionsError("LpProblem.bounds", n, len(bounds))
        object.__setattr__(self, "cost", c)
        object.__setattr__(self, "A_ub", A_ub)
        object.__setattr__(self, "b_ub", b_ub)
        object.__setattr__(self, "A_eq", A_eq)
        object.__setattr__(self, "b_eq", b_eq)
        object.__setattr__(self, "bounds", tuple(bounds))

    @property
    def n(self) -> int:
        return self.cost.size

    def verletzung(self, x: np.ndarray) -> float:
        """Größte Verletzung einer Nebenbedingung im Punkt x"""
        werte = [0.0]
        if self.A_ub.shape[0]:
            werte.append(float(np.max(self.A_ub @ x - self.b_ub)))
        if self.A_eq.shape[0]:
            werte.append(float(np.max(np.abs(self.A_eq @ x - self.b_eq))))
        for xi, (lo, hi) in zip(x, self.bounds, strict=True):
            if lo is not None:
                werte.append(lo - xi)
            if hi is not None:
                werte.append(xi - hi)
        return max(werte)


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    point: np.ndarray | None = None
    objective: float = float("nan")

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass(frozen=True)
class QpSolution:
    status: LpStatus
    point: np.ndarray | None = None
    objective: float = float("nan")

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


_HIGHS_OPTIONEN = {
    "primal_feasibility_tolerance": 1e-9,
    "dual_feasibility_tolerance": 1e-9,
}


def _linprog(problem: LpProblem, cost: np.ndarray, methode: str = "highs"):
    return linprog(
        cost,
        A_ub=problem.A_ub if problem.A_ub.shape[0] else None,
        b_ub=problem.b_ub if problem.A_ub.shape[0] else None,
        A_eq=problem.A_eq if problem.A_eq.shape[0] else None,
        b_eq=problem.b_eq if problem.A_eq.shape[0] else None,
        bounds=list(problem.bounds),
        method=methode,
        options=_HIGHS_OPTIONEN,
    )


def solve_lp(problem: LpProblem) -> LpSolution:
    """Löst ein LP mit HiGHS

    Args:
        problem: Das lineare Programm

    Returns:
        LpSolution mit Status OPTIMAL, INFEASIBLE oder UNBOUNDED

    Raises:
        KonvergenzError: Iterationsgrenze erreicht
        LoeserError: Numerischer Ausfall des Lösers
    """
    res = _linprog(problem, problem.cost)
    if res.status == 4:
        # numerischer Ausfall: einmal mit dem Innere-Punkte-Verfahren
        logger.debug("HiGHS-Simplex gescheitert (%s), Wiederholung mit highs-ipm", res.message)
        res = _linprog(problem, problem.cost, "highs-ipm")

    if res.status == 0:
        x = np.asarray(res.x, dtype=float)
        skala = 1.0 + max(
            float(np.max(np.abs(problem.b_ub), initial=0.0)),
            float(np.max(np.abs(problem.b_eq), initial=0.0)),
        )
        verletzung = problem.verletzung(x)
        if verletzung > config.TAU_FEAS * skala:
            logger.warning("LP-Lösung verletzt Nebenbedingungen um %.3e", verletzung)
        return LpSolution(LpStatus.OPTIMAL, x, float(problem.cost @ x))
    if res.status == 1:
        raise KonvergenzError("HiGHS", int(getattr(res, "nit", 0) or 0))
    if res.status == 3:
        return LpSolution(LpStatus.UNBOUNDED)
    if res.status == 2:
        # HiGHS meldet manchmal "infeasible or unbounded"
        if "unbounded" in str(res.message).lower():
            pruef = _linprog(problem, np.zeros(problem.n))
            if pruef.status == 0:
                return LpSolution(LpStatus.UNBOUNDED)
        return LpSolution(LpStatus.INFEASIBLE)
    raise LoeserError("HiGHS", str(res.message))


# === Least-Distance-Programme ===


def _ldp(G: np.ndarray, g: np.ndarray) -> np.ndarray | None:
    """min ‖z‖₂  u.d.N.  G z ≥ g   (Lawson-Hanson über NNLS)

    Returns:
        Die Lösung z oder None, wenn das System unzulässig ist
    """
    n = G.shape[1]
    normen = np.linalg.norm(G, axis=1)
    null = normen <= 1e-12
    if np.any(null & (g > config.TAU_FEAS)):
        return None
    G = G[~null] / normen[~null, None]
    g = g[~null] / normen[~null]
    if G.shape[0] == 0 or np.all(g <= 0):
        return np.zeros(n)

    skala = max(1.0, float(np.max(np.abs(g))))
    g = g / skala
    E = np.vstack([G.T, g[None, :]])
    f = np.zeros(n + 1)
    f[n] = 1.0
    u, _ = nnls(E, f, maxiter=max(50 * G.shape[0], 1000))
    r = E @ u - f
    if np.linalg.norm(r) <= 1e-10 or r[n] >= -1e-14:
        return None
    z = -r[:n] / r[n]
    verletzung = float(np.max(g - G @ z))
    if verletzung > config.TAU_FEAS:
        logger.debug("LDP-Lösung verletzt Nebenbedingungen um %.3e", verletzung)
    return z * skala


def project_point(point: Any, P: Any) -> tuple[np.ndarray, float]:
    """Euklidische Projektion eines Punkts auf ein Polytop {x | Hx ≤ h}

    Args:
        point: Punkt p
        P: Polytop (alles mit Attributen H und h)

    Returns:
        (nächster Punkt, Abstand); Abstand 0 genau dann, wenn p im Polytop liegt

    Raises:
        LeereMengeError: Das Polytop ist leer
    """
    p = np.asarray(point, dtype=float).ravel()
    H = np.atleast_2d(np.asarray(P.H, dtype=float))
    h = np.asarray(P.h, dtype=float).ravel()
    if H.shape[1] != p.size:
        raise DimensionsError("project_point", H.shape[1], p.size)
    if np.all(H @ p <= h):
        return p.copy(), 0.0
    z = _ldp(-H, H @ p - h)
    if z is None:
        raise LeereMengeError("project_point")
    return p + z, float(np.linalg.norm(z))


def solve_qp(
    Q: np.ndarray,
    c: np.ndarray,
    A_ub: np.ndarray | None = None,
    b_ub: np.ndarray | None = None,
    A_eq: np.ndarray | None = None,
    b_eq: np.ndarray | None = None,
) -> QpSolution:
    """min ½xᵀQx + cᵀx  u.d.N.  A_ub x ≤ b_ub,  A_eq x = b_eq   (Q ≻ 0)

    Gleichungen werden über den Nullraum eliminiert, der Rest nach einer
    Cholesky-Transformation als Least-Distance-Problem gelöst.

    Raises:
        NichtPositivDefinitError: Q ist auf dem Nullraum nicht positiv definit
    """
    c = _als_vektor(c)
    n = c.size
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    if Q.shape != (n, n):
        raise DimensionsError("solve_qp.Q", (n, n), Q.shape)
    Q = 0.5 * (Q + Q.T)
    A_ub = _als_matrix(A_ub, n, "solve_qp.A_ub")
    b_ub = _als_vektor(b_ub)
    A_eq = _als_matrix(A_eq, n, "solve_qp.A_eq")
    b_eq = _als_vektor(b_eq)

    if A_eq.shape[0]:
        x0, *_ = np.linalg.lstsq(A_eq, b_eq, rcond=None)
        if np.linalg.norm(A_eq @ x0 - b_eq) > config.TAU_FEAS * (1.0 + np.linalg.norm(b_eq)):
            return QpSolution(LpStatus.INFEASIBLE)
        N = sla.null_space(A_eq)
    else:
        x0 = np.zeros(n)
        N = np.eye(n)

    def _ziel(x: np.ndarray) -> float:
        return float(0.5 * x @ Q @ x + c @ x)

    if N.shape[1] == 0:
        if A_ub.shape[0] and np.any(A_ub @ x0 > b_ub + config.TAU_FEAS):
            return QpSolution(LpStatus.INFEASIBLE)
        return QpSolution(LpStatus.OPTIMAL, x0, _ziel(x0))

    L = cholesky(N.T @ Q @ N)
    q = N.T @ (Q @ x0 + c)
    Linv_q = sla.solve_triangular(L, q, lower=True)
    T = sla.solve_triangular(L.T, np.eye(L.shape[0]), lower=False)

    if A_ub.shape[0]:
        G = A_ub @ N @ T
        rhs = b_ub - A_ub @ x0 + G @ Linv_q
        w = _ldp(-G, -rhs)
        if w is None:
            return QpSolution(LpStatus.INFEASIBLE)
    else:
        w = np.zeros(L.shape[0])

    x = x0 + N @ (T @ (w - Linv_q))
    return QpSolution(LpStatus.OPTIMAL, x, _ziel(x))


# === Matrixgleichungen ===


def spectral_radius(A: np.ndarray) -> float:
    """Spektralradius max |λᵢ(A)|"""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] != A.shape[1]:
        raise DimensionsError("spectral_radius", "quadratisch", A.shape)
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(A))))


def cholesky(Q: np.ndarray) -> np.ndarray:
    """Untere Dreiecksmatrix L mit L·Lᵀ = Q

    Raises:
        NichtPositivDefinitError: Q nicht symmetrisch oder nicht positiv definit
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    if Q.shape[0] != Q.shape[1]:
        raise DimensionsError("cholesky", "quadratisch", Q.shape)
    skala = max(1.0, float(np.linalg.norm(Q)))
    if not np.allclose(Q, Q.T, atol=config.TAU_CHOL * skala, rtol=0.0):
        raise NichtPositivDefinitError("cholesky", "(nicht symmetrisch)")
    try:
        L = np.linalg.cholesky(0.5 * (Q + Q.T))
    except np.linalg.LinAlgError:
        raise NichtPositivDefinitError("cholesky")
    if np.linalg.norm(L @ L.T - Q) > config.TAU_CHOL * skala:
        raise NichtPositivDefinitError("cholesky", "(Rekonstruktion ungenau)")
    return L


def unsteuerbare_eigenwerte(A: np.ndarray, B: np.ndarray, radius: float = 1.0) -> list[complex]:
    """Eigenwerte mit |λ| ≥ radius, die den PBH-Rangtest nicht bestehen"""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[0]
    B = np.asarray(B, dtype=float).reshape(n, -1)
    ergebnis = []
    for lam in np.linalg.eigvals(A):
        if abs(lam) < radius:
            continue
        M = np.hstack([A - lam * np.eye(n), B.astype(complex)])
        sv = np.linalg.svd(M, compute_uv=False)
        if sv.size < n or sv[n - 1] <= 1e-9 * max(1.0, sv[0]):
            ergebnis.append(complex(lam))
    return ergebnis


def solve_lyapunov(A: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Löst AᵀPA − P = −Q (A Schur-stabil)"""
    P = sla.solve_discrete_lyapunov(np.asarray(A, dtype=float).T, np.asarray(Q, dtype=float))
    return 0.5 * (P + P.T)


def _dare_residuum(A, B, Q, R, P) -> float:
    S = R + B.T @ P @ B
    rhs = Q + A.T @ P @ A - A.T @ P @ B @ np.linalg.solve(S, B.T @ P @ A)
    return float(np.linalg.norm(rhs - P))


def _dare_iteration(A, B, Q, R) -> np.ndarray:
    P = Q.copy()
    for _ in range(config.DARE_MAX_ITER):
        S = R + B.T @ P @ B
        P_neu = Q + A.T @ P @ A - A.T @ P @ B @ np.linalg.solve(S, B.T @ P @ A)
        P_neu = 0.5 * (P_neu + P_neu.T)
        if np.linalg.norm(P_neu - P) <= config.TAU_DARE * max(1.0, np.linalg.norm(P_neu)):
            return P_neu
        P = P_neu
    raise KonvergenzError("DARE-Fixpunktiteration", config.DARE_MAX_ITER)


def solve_dare(A: np.ndarray, B: np.ndarray, Q: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Stabilisierende Lösung P der diskreten algebraischen Riccati-Gleichung

    P = Q + AᵀPA − AᵀPB(R + BᵀPB)⁻¹BᵀPA

    Raises:
        NichtStabilisierbarError: (A, B) nicht stabilisierbar
        KonvergenzError: Auch die Fixpunktiteration konvergiert nicht
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[0]
    B = np.asarray(B, dtype=float).reshape(n, -1)
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    R = np.atleast_2d(np.asarray(R, dtype=float))

    schlecht = unsteuerbare_eigenwerte(A, B)
    if schlecht:
        raise NichtStabilisierbarError(schlecht[0])

    if B.shape[1] == 0 or not np.any(B):
        return solve_lyapunov(A, Q)

    try:
        P = sla.solve_discrete_are(A, B, Q, R)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.debug("solve_discrete_are fehlgeschlagen (%s), Fixpunktiteration", e)
        P = None
    if P is None or _dare_residuum(A, B, Q, R, P) > config.TAU_DARE * max(1.0, np.linalg.norm(P)) * 1e3:
        P = _dare_iteration(A, B, Q, R)
    return 0.5 * (P + P.T)
