"""
Polytope in H-Darstellung {x | Hx ≤ h}.

Schnitt, Skalierung, kartesisches Produkt, affines Urbild, Projektion
(Fourier-Motzkin oder iterative konvexe Hülle), Redundanzentfernung,
Enthaltenseins-LPs, Ecken, Radien und der Hausdorff-Abstand
verschachtelter Polytope.

Leere Mengen werden als 0·x ≤ −1 dargestellt, der ganze Raum als 0·x ≤ 1.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Any

import numpy as np
from scipy import linalg as sla
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

from ..gemeinsam.config import config
from ..gemeinsam.errors import (
    DimensionsError,
    EingabeSyntaxError,
    EnthaltenseinError,
    KomplexitaetsError,
    KonvergenzError,
    LeereMengeError,
    LoeserError,
    NormalformError,
    UnbeschraenktError,
)
from .solver import LpProblem, LpStatus, project_point, solve_lp

logger = logging.getLogger(__name__)

_NULL = 1e-12


class HPolytope:
    """Konvexes Polytop {x | Hx ≤ h}

    H und h sind nach der Konstruktion schreibgeschützt, daher dürfen
    abgeleitete Größen gecacht werden.
    """

    def __init__(self, H: Any, h: Any):
        H = np.array(H, dtype=float)
        h = np.array(h, dtype=float).ravel()
        if H.ndim == 1 and h.size == 1:
            H = H.reshape(1, -1)
        if H.ndim != 2:
            raise DimensionsError("HPolytope.H", "Matrix", H.shape)
        if H.shape[0] != h.size:
            raise DimensionsError("HPolytope", H.shape[0], h.size)
        if H.shape[0] == 0:
            raise DimensionsError("HPolytope", "mindestens eine Zeile", 0)
        if not (np.all(np.isfinite(H)) and np.all(np.isfinite(h))):
            raise EingabeSyntaxError("HPolytope mit inf/nan", "endliche Einträge")
        H.setflags(write=False)
        h.setflags(write=False)
        self.H = H
        self.h = h

    # === Konstruktoren ===

    @classmethod
    def from_box(cls, lower: Any, upper: Any) -> "HPolytope":
        return Box(lower, upper).to_hpolytope()

    @classmethod
    def unit_box(cls, n: int) -> "HPolytope":
        """B(n) = [−1, 1]ⁿ"""
        return cls.from_box(-np.ones(n), np.ones(n))

    @classmethod
    def empty(cls, n: int) -> "HPolytope":
        return cls(np.zeros((1, n)), [-1.0])

    @classmethod
    def universe(cls, n: int) -> "HPolytope":
        return cls(np.zeros((1, n)), [1.0])

    @classmethod
    def point(cls, x: Any) -> "HPolytope":
        x = np.asarray(x, dtype=float).ravel()
        return cls.from_box(x, x)

    @classmethod
    def from_dict(cls, daten: dict[str, Any]) -> "HPolytope":
        """Liest {"H": [[...]], "h": [...]}"""
        if not isinstance(daten, dict) or "H" not in daten or "h" not in daten:
            raise EingabeSyntaxError(str(daten)[:60], '{"H": [[...]], "h": [...]}')
        H = np.asarray(daten["H"], dtype=float)
        if H.ndim == 1:
            H = H.reshape(-1, 1) if len(daten["h"]) == H.size else H.reshape(1, -1)
        return cls(H, daten["h"])

    # === Eigenschaften ===

    @property
    def dim(self) -> int:
        return self.H.shape[1]

    @property
    def n_rows(self) -> int:
        return self.H.shape[0]

    @property
    def is_origin_interior(self) -> bool:
        """Normalform: h > 0 komponentenweise"""
        return bool(np.all(self.h > 0))

    @cached_property
    def is_empty(self) -> bool:
        return chebyshev_radius(self)[1] < -config.TAU_FEAS

    @cached_property
    def is_bounded(self) -> bool:
        if self.is_empty:
            return True
        try:
            bounding_box(self)
        except UnbeschraenktError:
            return False
        return True

    def contains(self, x: Any, tol: float | None = None) -> bool:
        tol = config.TAU_FEAS if tol is None else tol
        x = np.asarray(x, dtype=float).ravel()
        if x.size != self.dim:
            raise DimensionsError("HPolytope.contains", self.dim, x.size)
        return bool(np.all(self.H @ x <= self.h + tol * (1.0 + np.abs(self.h))))

    def translate(self, t: Any) -> "HPolytope":
        """P + t = {y | Hy ≤ h + Ht}"""
        t = np.asarray(t, dtype=float).ravel()
        if t.size != self.dim:
            raise DimensionsError("HPolytope.translate", self.dim, t.size)
        return HPolytope(self.H, self.h + self.H @ t)

    def normalized(self) -> "HPolytope":
        """Zeilen auf Länge 1 normiert, Nullzeilen entfernt"""
        norm = _normalisiere(self.H, self.h)
        if norm is None:
            return HPolytope.empty(self.dim)
        H, h = norm
        if H.shape[0] == 0:
            return HPolytope.universe(self.dim)
        return HPolytope(H, h)

    def to_dict(self) -> dict[str, Any]:
        return {"H": self.H.tolist(), "h": self.h.tolist()}

    def __and__(self, other: "HPolytope") -> "HPolytope":
        return intersect(self, other)

    def __rmul__(self, lam: float) -> "HPolytope":
        return scale(self, lam)

    def __repr__(self) -> str:
        return f"HPolytope(dim={self.dim}, rows={self.n_rows})"


@dataclass(frozen=True)
class Box:
    """Achsenparalleler Quader [lower, upper]"""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float).ravel()
        up = np.asarray(self.upper, dtype=float).ravel()
        if lo.shape != up.shape:
            raise DimensionsError("Box", lo.shape, up.shape)
        if np.any(lo > up + config.TAU_FEAS):
            raise LeereMengeError("Box (lower > upper)")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", np.maximum(lo, up))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def corners(self) -> list[np.ndarray]:
        return [np.array(ecke) for ecke in itertools.product(*zip(self.lower, self.upper, strict=True))]

    def to_hpolytope(self) -> HPolytope:
        n = self.dim
        return HPolytope(np.vstack([np.eye(n), -np.eye(n)]), np.concatenate([self.upper, -self.lower]))

    def to_dict(self) -> dict[str, Any]:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist()}


# === Hilfsfunktionen ===


def _normalisiere(H: np.ndarray, h: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """Zeilen normieren; None, wenn eine Nullzeile 0 ≤ h mit h < 0 verlangt"""
    normen = np.linalg.norm(H, axis=1)
    null = normen <= _NULL
    if np.any(null & (h < -config.TAU_FEAS)):
        return None
    return H[~null] / normen[~null, None], h[~null] / normen[~null]


def _entferne_duplikate(H: np.ndarray, h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    beste: dict[tuple, int] = {}
    for i, zeile in enumerate(np.round(H, 9)):
        key = tuple(zeile + 0.0)
        if key not in beste or h[i] < h[beste[key]]:
            beste[key] = i
    idx = sorted(beste.values())
    return H[idx], h[idx]


def _als_box(P: HPolytope) -> Box | None:
    """Erkennt Quader (jede Zeile genau ein Nichtnulleintrag)"""
    n = P.dim
    lo = np.full(n, -np.inf)
    up = np.full(n, np.inf)
    for zeile, rhs in zip(P.H, P.h, strict=True):
        nz = np.flatnonzero(np.abs(zeile) > _NULL)
        if nz.size == 0:
            if rhs < 0:
                return None
            continue
        if nz.size > 1:
            return None
        j = nz[0]
        if zeile[j] > 0:
            up[j] = min(up[j], rhs / zeile[j])
        else:
            lo[j] = max(lo[j], rhs / zeile[j])
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(up))):
        return None
    if np.any(lo > up + config.TAU_FEAS):
        return None
    return Box(lo, up)


def _pruefe_dim(operation: str, P: HPolytope, Q: HPolytope) -> None:
    if P.dim != Q.dim:
        raise DimensionsError(operation, P.dim, Q.dim)


def chebyshev_radius(P: HPolytope) -> tuple[np.ndarray, float]:
    """Mittelpunkt und Radius der größten einbeschriebenen 2-Norm-Kugel

    Der Radius ist auf 1 gedeckelt; ein negativer Wert bedeutet leere Menge.
    """
    n = P.dim
    normen = np.linalg.norm(P.H, axis=1)
    A = np.hstack([P.H, normen[:, None]])
    bounds = ((None, None),) * n + ((None, 1.0),)
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    sol = solve_lp(LpProblem(cost, A, P.h, bounds=bounds))
    if sol.status is LpStatus.INFEASIBLE:
        # nur durch Nullzeilen mit negativer rechter Seite möglich
        return np.zeros(n), -math.inf
    if not sol.optimal:
        raise LoeserError("chebyshev_radius", sol.status.value)
    return sol.point[:n], float(sol.point[-1])


# === Grundoperationen ===


def intersect(P: HPolytope, Q: HPolytope) -> HPolytope:
    """P ∩ Q durch Stapeln der Zeilen"""
    _pruefe_dim("intersect", P, Q)
    return HPolytope(np.vstack([P.H, Q.H]), np.concatenate([P.h, Q.h]))


def scale(P: HPolytope, lam: float) -> HPolytope:
    """{x | Hx ≤ λh}; für λ > 0 genau λP"""
    if lam < 0:
        raise EingabeSyntaxError(f"scale mit λ = {lam}", "λ ≥ 0")
    return HPolytope(P.H, lam * P.h)


def cartesian_product(P: HPolytope, Q: HPolytope) -> HPolytope:
    """P × Q mit blockdiagonalen Zeilen"""
    if Q.dim == 0:
        return P if not Q.is_empty else HPolytope.empty(P.dim)
    if P.dim == 0:
        return Q if not P.is_empty else HPolytope.empty(Q.dim)
    return HPolytope(sla.block_diag(P.H, Q.H), np.concatenate([P.h, Q.h]))


def cartesian_power(P: HPolytope, k: int) -> HPolytope:
    """Pᵏ = P × … × P; für k = 0 der nulldimensionale Raum"""
    if k == 0:
        return HPolytope.universe(0)
    return reduce(cartesian_product, [P] * k)


def affine_preimage(P: HPolytope, M: Any, v: Any = None) -> HPolytope:
    """{z | Mz + v ∈ P} = {HMz ≤ h − Hv}"""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != P.dim:
        raise DimensionsError("affine_preimage", P.dim, M.shape[0])
    v = np.zeros(P.dim) if v is None else np.asarray(v, dtype=float).ravel()
    if v.size != P.dim:
        raise DimensionsError("affine_preimage.v", P.dim, v.size)
    return HPolytope(P.H @ M, P.h - P.H @ v)


def _support(P: HPolytope, d: np.ndarray) -> tuple[float, np.ndarray]:
    box = _als_box(P)
    if box is not None:
        punkt = np.where(d >= 0, box.upper, box.lower)
        return float(d @ punkt), punkt
    sol = solve_lp(LpProblem(-d, P.H, P.h))
    if sol.status is LpStatus.INFEASIBLE:
        raise LeereMengeError("support")
    if sol.status is LpStatus.UNBOUNDED:
        raise UnbeschraenktError("support", d.tolist())
    return -sol.objective, sol.point


def support(P: HPolytope, direction: Any) -> float:
    """h_P(d) = max ⟨d, x⟩ über P

    Raises:
        LeereMengeError: P leer
        UnbeschraenktError: P in Richtung d unbeschränkt
    """
    d = np.asarray(direction, dtype=float).ravel()
    if d.size != P.dim:
        raise DimensionsError("support", P.dim, d.size)
    if not np.any(d):
        return 0.0
    return _support(P, d)[0]


def support_point(P: HPolytope, direction: Any) -> tuple[float, np.ndarray]:
    """Wie support, zusätzlich ein maximierender Punkt"""
    d = np.asarray(direction, dtype=float).ravel()
    if d.size != P.dim:
        raise DimensionsError("support_point", P.dim, d.size)
    return _support(P, d)


def erode_rows(P: HPolytope, E: Any, D: HPolytope) -> HPolytope:
    """{x | H(x + Ed) ≤ h  ∀d ∈ D}: rechte Seiten um sup_d H_i E d verkleinert"""
    E = np.asarray(E, dtype=float).reshape(P.dim, -1)
    if E.shape[1] != D.dim:
        raise DimensionsError("erode_rows", D.dim, E.shape[1])
    if D.dim == 0 or not np.any(E):
        return P
    C = P.H @ E
    box = _als_box(D)
    if box is not None:
        abzug = np.maximum(C * box.lower, C * box.upper).sum(axis=1)
    else:
        abzug = np.array([support(D, c) for c in C])
    return HPolytope(P.H, P.h - abzug)


# === Redundanz und Projektion ===


def _redundanz_1d(H: np.ndarray, h: np.ndarray) -> HPolytope:
    pos = H[:, 0] > 0
    oben = float(np.min(h[pos])) if pos.any() else math.inf
    unten = float(-np.min(h[~pos])) if (~pos).any() else -math.inf
    if unten > oben + config.TAU_FEAS:
        return HPolytope.empty(1)
    zeilen, rhs = [], []
    if math.isfinite(oben):
        zeilen.append([1.0])
        rhs.append(max(oben, unten))
    if math.isfinite(unten):
        zeilen.append([-1.0])
        rhs.append(-unten)
    return HPolytope(zeilen, rhs)


def remove_redundancy(P: HPolytope, tol: float | None = None) -> HPolytope:
    """Entfernt Zeilen, die von den übrigen impliziert werden

    Eine Zeile fällt nur weg, wenn ein LP ihre Redundanz belegt; scheitert
    der Löser, bleibt sie stehen.
    """
    tol = config.TAU_FEAS if tol is None else tol
    norm = _normalisiere(P.H, P.h)
    if norm is None:
        return HPolytope.empty(P.dim)
    H, h = norm
    if H.shape[0] == 0:
        return HPolytope.universe(P.dim)
    H, h = _entferne_duplikate(H, h)
    if P.dim == 1:
        return _redundanz_1d(H, h)
    if HPolytope(H, h).is_empty:
        return HPolytope.empty(P.dim)

    behalten = np.ones(H.shape[0], dtype=bool)
    for i in range(H.shape[0]):
        behalten[i] = False
        A = np.vstack([H[behalten], H[i]])
        b = np.concatenate([h[behalten], [h[i] + 1.0]])
        try:
            sol = solve_lp(LpProblem(-H[i], A, b))
        except (LoeserError, KonvergenzError) as e:
            # Zeile behalten ist immer korrekt
            logger.debug("Redundanztest für Zeile %d abgebrochen: %s", i, e)
            behalten[i] = True
            continue
        if not (sol.optimal and -sol.objective <= h[i] + tol * (1.0 + abs(h[i]))):
            behalten[i] = True
    return HPolytope(H[behalten], h[behalten])


def _fm_schritt(H: np.ndarray, h: np.ndarray, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Eliminiert Spalte j durch Kombination positiver und negativer Zeilen"""
    c = H[:, j]
    pos = c > _NULL
    neg = c < -_NULL
    null = ~(pos | neg)
    anzahl = int(pos.sum() * neg.sum() + null.sum())
    if anzahl > config.FM_MAX_ZEILEN:
        raise KomplexitaetsError(
            "Fourier-Motzkin",
            anzahl,
            config.FM_MAX_ZEILEN,
            suggestion="Verwende project(..., method='hull') oder arbeite mit dem kollaborativen System.",
        )
    Hp = H[pos] / c[pos, None]
    hp = h[pos] / c[pos]
    Hn = H[neg] / -c[neg, None]
    hn = h[neg] / -c[neg]
    kombi_H = (Hp[:, None, :] + Hn[None, :, :]).reshape(-1, H.shape[1])
    kombi_h = (hp[:, None] + hn[None, :]).ravel()
    H_neu = np.delete(np.vstack([H[null], kombi_H]), j, axis=1)
    h_neu = np.concatenate([h[null], kombi_h])
    if H_neu.shape[0] == 0:
        return np.zeros((1, H.shape[1] - 1)), np.ones(1)
    return H_neu, h_neu


def _projektion_huelle(P: HPolytope, k: int, max_runden: int = 1000) -> HPolytope:
    """Iterative konvexe Hülle: Stützpunkte sammeln, bis keine Facette wächst"""
    n = P.dim
    if k == 1:
        e = np.zeros(n)
        e[0] = 1.0
        return HPolytope.from_box([-support(P, -e)], [support(P, e)])

    punkte = []
    for i in range(k):
        for vorzeichen in (1.0, -1.0):
            d = np.zeros(n)
            d[i] = vorzeichen
            punkte.append(_support(P, d)[1][:k])
    punkte = np.unique(np.round(np.array(punkte), 12), axis=0)
    if punkte.shape[0] <= k or np.linalg.matrix_rank(punkte - punkte.mean(axis=0), tol=1e-9) < k:
        logger.debug("Projektion nicht volldimensional, Fourier-Motzkin")
        return project(P, k, method="fm")

    geprueft: set[tuple] = set()
    for _ in range(max_runden):
        try:
            huelle = ConvexHull(punkte)
        except QhullError:
            return project(P, k, method="fm")
        neu = []
        for gl in huelle.equations:
            key = tuple(np.round(gl, 9))
            if key in geprueft:
                continue
            d = np.zeros(n)
            d[:k] = gl[:k]
            wert, x = _support(P, d)
            if wert > -gl[k] + config.TAU_FEAS * (1.0 + abs(gl[k])):
                neu.append(x[:k])
            else:
                geprueft.add(key)
        if not neu:
            return remove_redundancy(HPolytope(huelle.equations[:, :k], -huelle.equations[:, k]))
        punkte = np.vstack([punkte, neu])
    raise KomplexitaetsError("Projektion (Hülle)", max_runden, max_runden)


def project(P: HPolytope, k: int, method: str = "fm") -> HPolytope:
    """Projektion auf die ersten k Koordinaten

    Args:
        P: Polytop in Rⁿ
        k: Anzahl behaltener Koordinaten
        method: "fm" (Fourier-Motzkin mit Redundanzentfernung) oder
            "hull" (iterative konvexe Hülle, P beschränkt)

    Raises:
        KomplexitaetsError: Zeilenzahl über FM_MAX_ZEILEN
    """
    n = P.dim
    if not 0 <= k <= n:
        raise DimensionsError("project", f"0 ≤ k ≤ {n}", k)
    if k == n:
        return P
    if P.is_empty:
        return HPolytope.empty(k)
    if method == "hull":
        return _projektion_huelle(P, k)
    if method != "fm":
        raise EingabeSyntaxError(f"method={method!r}", "'fm' oder 'hull'")

    Q = remove_redundancy(P)
    for j in range(n - 1, k - 1, -1):
        H, h = _fm_schritt(Q.H, Q.h, j)
        Q = remove_redundancy(HPolytope(H, h))
    return Q


# === Enthaltensein ===


def containment_ratio(P1: HPolytope, P2: HPolytope) -> float:
    """Kleinstes r ≥ 0 mit P1 ⊆ r·P2 (Farkas-LP je Zeile von P2)

    Raises:
        NormalformError: P2 enthält den Ursprung nicht im Inneren
    """
    _pruefe_dim("containment_ratio", P1, P2)
    if not P2.is_origin_interior:
        raise NormalformError("containment_ratio", float(np.min(P2.h)))
    if P1.is_empty:
        return 0.0
    q1 = P1.n_rows
    r = 0.0
    for zeile, rhs in zip(P2.H, P2.h, strict=True):
        # min λᵀh1  u.d.N.  H1ᵀλ = zeile, λ ≥ 0  (= sup über P1 von zeileᵀx)
        sol = solve_lp(LpProblem(P1.h, A_eq=P1.H.T, b_eq=zeile, bounds=((0.0, None),) * q1))
        if sol.status is LpStatus.INFEASIBLE:
            logger.debug("containment_ratio: P1 unbeschränkt in Richtung %s", zeile)
            return math.inf
        if not sol.optimal:
            raise LoeserError("containment_ratio", sol.status.value)
        r = max(r, sol.objective / rhs)
    return max(0.0, r)


def containment_ratio_projected(P1: HPolytope, P2: HPolytope) -> float:
    """Obere Schranke für min r mit P1 ⊆ r·Proj_n(P2), ohne zu projizieren

    Hinreichende Bedingung: es gibt eine affine Hebung x ↦ (x, Gx + b) mit
    Λ ≥ 0, ΛH1 = H2_x + H2_y G, Λh1 ≤ r h2 − H2_y b.
    Ist das LP unzulässig, gibt es kein Zertifikat und das Ergebnis ist inf.
    """
    n = P1.dim
    k = P2.dim - n
    if k < 0:
        raise DimensionsError("containment_ratio_projected", f"≥ {n}", P2.dim)
    if not P2.is_origin_interior:
        raise NormalformError("containment_ratio_projected", float(np.min(P2.h)))
    if k == 0:
        return containment_ratio(P1, P2)
    if P1.is_empty:
        return 0.0

    H1, h1 = P1.H, P1.h
    q1 = H1.shape[0]
    H2x, H2y, h2 = P2.H[:, :n], P2.H[:, n:], P2.h
    q2 = h2.size
    # Variablen: [r, vec(G) (k×n, spaltenweise), b (k), vec(Λ) (q2×q1, spaltenweise)]
    nG, nL = k * n, q2 * q1
    anzahl = 1 + nG + k + nL
    # ΛH1 − H2y G = H2x  ⇔  (H1ᵀ ⊗ I_q2) vec(Λ) − (I_n ⊗ H2y) vec(G) = vec(H2x)
    A_eq = np.zeros((q2 * n, anzahl))
    A_eq[:, 1 : 1 + nG] = -np.kron(np.eye(n), H2y)
    A_eq[:, 1 + nG + k :] = np.kron(H1.T, np.eye(q2))
    b_eq = H2x.ravel(order="F")
    # Λh1 − r h2 + H2y b ≤ 0
    A_ub = np.zeros((q2, anzahl))
    A_ub[:, 0] = -h2
    A_ub[:, 1 + nG : 1 + nG + k] = H2y
    A_ub[:, 1 + nG + k :] = np.kron(h1[None, :], np.eye(q2))
    cost = np.zeros(anzahl)
    cost[0] = 1.0
    bounds = ((0.0, None),) + ((None, None),) * (nG + k) + ((0.0, None),) * nL
    sol = solve_lp(LpProblem(cost, A_ub, np.zeros(q2), A_eq, b_eq, bounds))
    if not sol.optimal:
        logger.warning("containment_ratio_projected: kein Zertifikat (%s)", sol.status.value)
        return math.inf
    return max(0.0, float(sol.point[0]))


def _inklusions_verletzung(X: HPolytope, Y: HPolytope) -> float:
    """max_i (sup_X Y_iᵀx − y_i) relativ zu 1 + |y_i|"""
    if X.is_empty:
        return 0.0
    verletzung = -math.inf
    for zeile, rhs in zip(Y.H, Y.h, strict=True):
        if not np.any(zeile):
            wert = 0.0
        else:
            try:
                wert = _support(X, zeile)[0]
            except UnbeschraenktError:
                return math.inf
        verletzung = max(verletzung, (wert - rhs) / (1.0 + abs(rhs)))
    return verletzung


def is_subset(X: HPolytope, Y: HPolytope, tol: float | None = None) -> bool:
    """X ⊆ Y bis auf relative Toleranz"""
    _pruefe_dim("is_subset", X, Y)
    tol = config.TAU_SET if tol is None else tol
    return _inklusions_verletzung(X, Y) <= tol


def set_equal(P: HPolytope, Q: HPolytope, tol: float | None = None) -> bool:
    """Gegenseitiges Enthaltensein (Verhältnis ≤ 1 + tol bei Normalform)"""
    _pruefe_dim("set_equal", P, Q)
    tol = config.TAU_SET if tol is None else tol
    if P.is_empty or Q.is_empty:
        return P.is_empty and Q.is_empty
    if P.is_origin_interior and Q.is_origin_interior:
        return containment_ratio(P, Q) <= 1.0 + tol and containment_ratio(Q, P) <= 1.0 + tol
    return is_subset(P, Q, tol) and is_subset(Q, P, tol)


def max_inscribed_ball_at(P: HPolytope, center: Any) -> float:
    """Größtes ε mit center + ε·B(n) ⊆ P (Zeilensummen-Formel)"""
    c = np.asarray(center, dtype=float).ravel()
    if c.size != P.dim:
        raise DimensionsError("max_inscribed_ball_at", P.dim, c.size)
    normen = np.abs(P.H).sum(axis=1)
    reserve = P.h - P.H @ c
    aktiv = normen > _NULL
    if np.any(~aktiv & (reserve < 0)):
        logger.warning("max_inscribed_ball_at: Polytop leer")
        return 0.0
    if not aktiv.any():
        return math.inf
    eps = float(np.min(reserve[aktiv] / normen[aktiv]))
    if eps < 0:
        logger.warning("max_inscribed_ball_at: Mittelpunkt %s liegt außerhalb", c)
        return 0.0
    return eps


# === Ecken, Radien, Hausdorff-Abstand ===


def bounding_box(P: HPolytope) -> Box:
    """Kleinster achsenparalleler Quader um P (2n Stütz-LPs)

    Raises:
        LeereMengeError: P leer
        UnbeschraenktError: P unbeschränkt
    """
    box = _als_box(P)
    if box is not None:
        return box
    n = P.dim
    lo, up = np.zeros(n), np.zeros(n)
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        up[i] = _support(P, e)[0]
        lo[i] = -_support(P, -e)[0]
    return Box(lo, np.maximum(lo, up))


def _ecken_aufzaehlung(P: HPolytope) -> np.ndarray:
    Q = remove_redundancy(P)
    n = P.dim
    anzahl = math.comb(Q.n_rows, n)
    if anzahl > 200_000:
        raise KomplexitaetsError("vertices (Aufzählung)", anzahl, 200_000)
    punkte = []
    for idx in itertools.combinations(range(Q.n_rows), n):
        A = Q.H[list(idx)]
        if abs(np.linalg.det(A)) < 1e-10:
            continue
        x = np.linalg.solve(A, Q.h[list(idx)])
        if np.all(Q.H @ x <= Q.h + 1e-8 * (1.0 + np.abs(Q.h))):
            punkte.append(x)
    return np.array(punkte).reshape(-1, n)


def _dedupliziere(punkte: np.ndarray) -> np.ndarray:
    ergebnis: list[np.ndarray] = []
    for p in punkte:
        tol = config.TAU_VERT * 1e2 * (1.0 + float(np.max(np.abs(p))))
        if not any(np.max(np.abs(p - q)) <= tol for q in ergebnis):
            ergebnis.append(p)
    return np.array(ergebnis).reshape(-1, punkte.shape[1])


def vertices(P: HPolytope) -> list[np.ndarray]:
    """Alle Ecken eines beschränkten Polytops, in 2D gegen den Uhrzeigersinn

    Raises:
        KomplexitaetsError: Dimension über VERTEX_DIM_LIMIT
        UnbeschraenktError: P unbeschränkt
    """
    n = P.dim
    if n > config.VERTEX_DIM_LIMIT:
        raise KomplexitaetsError(
            "vertices",
            n,
            config.VERTEX_DIM_LIMIT,
            suggestion="Verwende bounding_box bzw. mode='box'.",
        )
    if P.is_empty:
        return []
    box = bounding_box(P)
    if n == 0:
        return [np.zeros(0)]
    if n == 1:
        if box.upper[0] - box.lower[0] <= config.TAU_VERT:
            return [box.lower.copy()]
        return [box.lower.copy(), box.upper.copy()]

    zentrum, radius = chebyshev_radius(P)
    punkte = None
    if radius > 1e-7:
        Q = remove_redundancy(P)
        try:
            hs = HalfspaceIntersection(np.hstack([Q.H, -Q.h[:, None]]), zentrum)
            punkte = hs.intersections
        except QhullError:
            logger.debug("HalfspaceIntersection fehlgeschlagen, Kombinationssuche")
    if punkte is None:
        punkte = _ecken_aufzaehlung(P)
    punkte = _dedupliziere(punkte)
    if n == 2 and len(punkte) > 2:
        mitte = punkte.mean(axis=0)
        winkel = np.arctan2(punkte[:, 1] - mitte[1], punkte[:, 0] - mitte[0])
        punkte = punkte[np.argsort(winkel)]
    return list(punkte)


def radius_from_origin(P: HPolytope, mode: str = "exact") -> float:
    """Radius der kleinsten Kugel um 0, die P enthält

    mode="exact" über die Ecken, mode="box" über die Ecke des
    umschließenden Quaders (obere Schranke).
    """
    if mode == "box":
        box = bounding_box(P)
        return float(np.sqrt(np.sum(np.maximum(box.lower**2, box.upper**2))))
    if mode != "exact":
        raise EingabeSyntaxError(f"mode={mode!r}", "'exact' oder 'box'")
    ecken = vertices(P)
    if not ecken:
        raise LeereMengeError("radius_from_origin")
    return max(float(np.linalg.norm(v)) for v in ecken)


def hausdorff_nested(X: HPolytope, Y: HPolytope, mode: str = "auto") -> float:
    """Hausdorff-Abstand für X ⊆ Y: größter Abstand einer Ecke von Y zu X

    mode="exact" nutzt die Ecken von Y, mode="box" die Ecken des
    umschließenden Quaders (obere Schranke), "auto" wählt nach Dimension.

    Raises:
        EnthaltenseinError: X ⊄ Y
    """
    _pruefe_dim("hausdorff_nested", X, Y)
    verletzung = _inklusions_verletzung(X, Y)
    if verletzung > config.TAU_SET:
        raise EnthaltenseinError("hausdorff_nested", verletzung)
    if Y.is_empty:
        return 0.0
    if X.is_empty:
        raise LeereMengeError("hausdorff_nested")
    if mode == "auto":
        mode = "exact" if Y.dim <= config.VERTEX_DIM_LIMIT else "box"
    punkte = vertices(Y) if mode == "exact" else bounding_box(Y).corners()
    return max(project_point(v, X)[1] for v in punkte)
