"""
Schranken für den Sicherheits-Regret d_p.

d_p ist der Hausdorff-Abstand zwischen der Projektion der maximalen RCIS
mit p Schritten Vorschau und der maximalen CIS des kollaborativen Systems.

Drei Verfahren:
    algorithm1  kontrahierendes Ellipsoid (nur Stabilisierbarkeit nötig)
    algorithm2  Nullkontraktion über Pre^N({0}) (Steuerbarkeit nötig)
    algorithm3  Leiter C_k = Pre(C_{k−1}) zur Erkennung endlicher Konvergenz
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..gemeinsam.config import config
from ..gemeinsam.errors import (
    AnnahmeError,
    DimensionsError,
    EingabeSyntaxError,
    KeinGleichgewichtError,
    KomplexitaetsError,
    NichtSteuerbarError,
    NormalformError,
)
from ..geometrie.polytop import (
    HPolytope,
    containment_ratio,
    containment_ratio_projected,
    hausdorff_nested,
    intersect,
    is_subset,
    max_inscribed_ball_at,
    project,
    radius_from_origin,
    scale,
)
from ..systeme.lineare_systeme import (
    Equilibrium,
    LinearSystem,
    augment,
    collaborative,
    controllability_rank,
    find_forced_equilibrium,
    shift_origin,
)
from .ellipsoid import find_contractive_ellipsoid, max_c0, min_c_out, theorem6_params
from .invarianz import check_contractive, max_invariant_set, pre, pre_k

logger = logging.getLogger(__name__)

METHODEN = ("alg1", "alg1_refined", "alg2")


# === Zertifikate ===


def k0_of(lambda0: float, gamma: float, lam: float) -> float:
    """k₀ = max(0, ⌈(log λ0 − log γ)/log λ − 1⌉); inf für λ0 = 0"""
    if lambda0 <= 0:
        return math.inf
    if lam <= 0 or lambda0 >= gamma:
        return 0
    wert = (math.log(lambda0) - math.log(gamma)) / math.log(lam) - 1.0
    return max(0, math.ceil(wert - 1e-9))


@dataclass(frozen=True)
class RegretCertificate:
    """Alle Konstanten zur Auswertung der d_p-Schranke"""

    method: str
    lambda0: float
    gamma: float
    N: int
    lam: float
    k0: float
    a: float
    c: float
    r_co: float
    p0: int
    shift: Equilibrium | None = None
    certified: bool = True
    notes: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def build(
        cls,
        method: str,
        lambda0: float,
        gamma: float,
        N: int,
        lam: float,
        r_co: float,
        p0: int,
        shift: Equilibrium | None = None,
        certified: bool = True,
        notes: Sequence[str] = (),
    ) -> "RegretCertificate":
        """Berechnet k0, a und c aus (λ0, γ, N, λ)"""
        if method not in METHODEN:
            raise EingabeSyntaxError(f"method={method!r}", " | ".join(METHODEN))
        if N < 1:
            raise DimensionsError("RegretCertificate.N", "N ≥ 1", N)
        lambda0 = min(1.0, max(0.0, lambda0))
        if method == "alg2":
            k0: float = 0
            a = 1.0 - gamma
            c = 1.0 - lambda0
            lam = 0.0
        else:
            k0 = k0_of(lambda0, gamma, lam)
            a = (1.0 - gamma) / (1.0 - gamma * lam)
            c = 1.0 if math.isinf(k0) else max(0.0, (1.0 - lambda0 / lam**k0) * a**k0)
        return cls(method, lambda0, gamma, N, lam, k0, a, c, r_co, p0, shift, certified, tuple(notes))

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "lambda0": self.lambda0,
            "gamma": self.gamma,
            "N": self.N,
            "lambda": self.lam,
            "k0": self.k0,
            "a": self.a,
            "c": self.c,
            "r_co": self.r_co,
            "p0": self.p0,
            "shift": self.shift.to_dict() if self.shift is not None else None,
            "certified": self.certified,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, daten: dict[str, Any]) -> "RegretCertificate":
        try:
            shift = daten.get("shift")
            return cls(
                method=daten["method"],
                lambda0=float(daten["lambda0"]),
                gamma=float(daten["gamma"]),
                N=int(daten["N"]),
                lam=float(daten["lambda"]),
                k0=float(daten["k0"]),
                a=float(daten["a"]),
                c=float(daten["c"]),
                r_co=float(daten["r_co"]),
                p0=int(daten["p0"]),
                shift=Equilibrium.from_dict(shift) if shift else None,
                certified=bool(daten.get("certified", True)),
                notes=tuple(daten.get("notes", ())),
            )
        except KeyError as e:
            raise EingabeSyntaxError(f"Zertifikat ohne Feld {e}", "RegretCertificate.to_dict()-Format")


def bound_dp(cert: RegretCertificate, p: int) -> float:
    """Obere Schranke für d_p

    alg1: (1 − λ0·λ^{−⌊(p−p0)/N⌋})·r_co für p < p0 + N(k0+1),
          sonst c·a^{⌊(p−p0)/N⌋}·r_co
    alg2: (1 − λ0)(1 − γ_max)^{⌊(p−p0)/N⌋}·r_co
    """
    if p < cert.p0:
        raise DimensionsError("bound_dp", f"p ≥ {cert.p0}", p)
    j = (p - cert.p0) // cert.N
    if cert.method == "alg2":
        return cert.c * cert.a**j * cert.r_co
    if math.isinf(cert.k0):
        return cert.r_co
    if p < cert.p0 + cert.N * (cert.k0 + 1):
        return max(0.0, 1.0 - cert.lambda0 * cert.lam ** (-j)) * cert.r_co
    return cert.c * cert.a**j * cert.r_co


def bound_marginal(cert: RegretCertificate, p: int) -> float:
    """Schranke für den Grenznutzen d_p − d_{p+N} der Vorschau"""
    j = (p - cert.p0) // cert.N
    if cert.method == "alg2" or (not math.isinf(cert.k0) and p >= cert.p0 + cert.N * (cert.k0 + 1)):
        return cert.c * (1.0 + cert.a) * cert.a**j * cert.r_co
    return bound_dp(cert, p) + bound_dp(cert, p + cert.N)


def bound_envelope(certs: Sequence[RegretCertificate], p: int) -> float:
    """Punktweises Minimum über mehrere Zertifikate (z.B. verschiedene N)"""
    werte = [bound_dp(c, p) for c in certs if p >= c.p0]
    return min(werte) if werte else math.inf


# === Hilfen ===


def _projektion(C: HPolytope, n: int) -> HPolytope:
    return C if C.dim == n else project(C, n, method="hull")


def shift_sets(
    eq: Equilibrium, C_max_co: HPolytope, C_max_p0: HPolytope, p0: int
) -> tuple[HPolytope, HPolytope]:
    """Verschiebt C_max,co um −x_e und C_max,p0 um −(x_e, d_e, …, d_e)"""
    if eq.is_origin:
        return C_max_co, C_max_p0
    C_co = C_max_co.translate(-eq.x_e)
    if C_max_p0.dim == C_max_co.dim:
        return C_co, C_max_p0.translate(-eq.x_e)
    t = np.concatenate([eq.x_e] + [eq.d_e] * p0)
    return C_co, C_max_p0.translate(-t)


def estimate_lambda0(
    C_max_co: HPolytope,
    C_max_p0: HPolytope,
    method: str = "exact",
    eps: float = 0.0,
) -> float:
    """λ0 mit λ0·C_max,co ⊆ Proj_n(C_max,p0)

    Args:
        C_max_co: Maximale CIS von D(Σ), Ursprung im Inneren
        C_max_p0: C_max,p0 (volle Dimension) oder seine Projektion
        method: "baseline" (ε*/r*), "exact" (Projektion + Enthaltenseins-LP)
            oder "encoded" (ohne Projektion, untere Schätzung)
        eps: Reserve ε* aus dem Gleichgewichts-LP für "baseline"
    """
    n = C_max_co.dim
    if method == "baseline":
        if eps <= 0:
            logger.warning("ε* = 0: λ0 ist nicht verifizierbar, baseline liefert 0")
            return 0.0
        r_stern = containment_ratio(C_max_co, HPolytope.unit_box(n))
        return min(1.0, eps / r_stern)
    if method == "exact":
        proj = _projektion(C_max_p0, n)
        r = containment_ratio(C_max_co, proj)
    elif method == "encoded":
        r = containment_ratio_projected(C_max_co, C_max_p0)
    else:
        raise EingabeSyntaxError(f"method={method!r}", "'baseline' | 'exact' | 'encoded'")
    if r <= 0 or math.isinf(r):
        return 0.0
    return min(1.0, 1.0 / r)


def _bestes_lambda0(C_co: HPolytope, C_p0: HPolytope, eps: float, methoden: Sequence[str]) -> tuple[float, dict]:
    werte: dict[str, float] = {}
    for methode in methoden:
        if methode == "encoded" and C_p0.dim == C_co.dim:
            continue
        try:
            werte[methode] = estimate_lambda0(C_co, C_p0, methode, eps)
        except NormalformError as e:
            logger.info("λ0 (%s) übersprungen: %s", methode, e)
    logger.debug("λ0-Schätzungen: %s", werte)
    return max(werte.values(), default=0.0), werte


def _gleichgewicht(system: LinearSystem, proj: HPolytope, strict: bool) -> Equilibrium:
    """Zuerst mit festem Ursprung, sonst frei"""
    try:
        eq = find_forced_equilibrium(system, proj, strict=strict, fix_origin=True)
        if eq.margin > 0:
            return eq
    except KeinGleichgewichtError:
        pass
    return find_forced_equilibrium(system, proj, strict=strict, fix_origin=False)


# === Algorithmen ===


def algorithm1(
    system: LinearSystem,
    C_max_co: HPolytope,
    C_max_p0: HPolytope,
    p0: int,
    refine: bool = False,
    konvergiert: bool = True,
    lambda0_methods: Sequence[str] = ("baseline", "exact", "encoded"),
    verify: bool = True,
) -> RegretCertificate:
    """Konstanten über ein kontrahierendes Ellipsoid

    Args:
        system: System Σ
        C_max_co: Maximale CIS von D(Σ)
        C_max_p0: C_max,p0 oder seine Projektion auf den Zustand
        p0: Vorschauhorizont von C_max_p0
        refine: γ und λ über Pre^N(λγ·C_max,co) nachschärfen
        konvergiert: Ob C_max_co aus einer konvergierten Iteration stammt
        lambda0_methods: Schätzverfahren für λ0, das größte Ergebnis zählt
        verify: γC_max,co direkt auf N-Schritt λ-Kontraktion prüfen

    Raises:
        AnnahmeError: ε* = 0 (kein inneres Gleichgewicht)
        NichtStabilisierbarError: D(Σ) nicht stabilisierbar
    """
    n = system.n
    notes: list[str] = []
    proj = _projektion(C_max_p0, n)
    eq = _gleichgewicht(system, proj, strict=True)
    if eq.margin <= 0:
        raise AnnahmeError(
            "inneres erzwungenes Gleichgewicht",
            "ε* = 0",
            suggestion="Die Annahmen zu Gleichgewicht und λ0 lassen sich nicht verifizieren.",
        )
    sys_s = shift_origin(system, eq)
    C_co, C_p0 = shift_sets(eq, C_max_co, C_max_p0, p0)

    lambda0, _ = _bestes_lambda0(C_co, C_p0, eq.margin, lambda0_methods)

    co = collaborative(sys_s)
    ell = find_contractive_ellipsoid(co)
    c0 = max_c0(ell, sys_s.S_xu, sys_s.D)
    modus = "exact" if n <= config.VERTEX_DIM_LIMIT else "box"
    c_out = min_c_out(C_co, ell.Q, mode=modus)
    params = theorem6_params(c0, c_out, ell.lambda_a)
    gamma, N, lam = params.gamma, params.N, params.lam
    logger.info("algorithm1: λ0=%.4g γ=%.4g N=%d λ=%.4g", lambda0, gamma, N, lam)

    certified = konvergiert
    if not konvergiert:
        notes.append("äußere Approximation von C_max,co: Schranke heuristisch")
    if verify and not check_contractive(co, scale(C_co, gamma), co.S, N, lam):
        notes.append("γC_max,co nicht als N-Schritt λ-kontrahierend bestätigt")
        certified = False

    method = "alg1"
    if refine and konvergiert:
        ziel = pre_k(co, scale(C_co, lam * gamma), co.S, N)
        verhaeltnis = containment_ratio(C_co, ziel) if ziel.is_origin_interior else math.inf
        gamma_stern = min(1.0, 1.0 / verhaeltnis) if verhaeltnis > 0 else 1.0
        if gamma_stern > gamma:
            lam = lam * gamma / gamma_stern
            gamma = gamma_stern
            logger.info("algorithm1 nachgeschärft: γ*=%.4g λ=%.4g", gamma, lam)
        method = "alg1_refined"

    r_co = radius_from_origin(C_co, mode=modus)
    return RegretCertificate.build(method, lambda0, gamma, N, lam, r_co, p0, eq, certified, notes)


def algorithm2(
    system: LinearSystem,
    C_max_co: HPolytope,
    C_max_p0: HPolytope,
    p0: int,
    N: int | None = None,
    konvergiert: bool = True,
    lambda0_methods: Sequence[str] = ("baseline", "exact", "encoded"),
) -> RegretCertificate:
    """Konstanten über die Nullkontraktion: γ_max = 1/ratio(C_max,co, Pre^N({0}))

    Raises:
        NichtSteuerbarError: D(Σ) nicht steuerbar (dann algorithm1 verwenden)
    """
    n = system.n
    N = n if N is None else N
    if N < n:
        logger.warning("N = %d < n = %d: γ_max kann 0 sein", N, n)
    rang = controllability_rank(system.A, np.hstack([system.B, system.E]))
    if rang < n:
        raise NichtSteuerbarError(rang, n)

    proj = _projektion(C_max_p0, n)
    eq = _gleichgewicht(system, proj, strict=False)
    sys_s = shift_origin(system, eq)
    C_co, C_p0 = shift_sets(eq, C_max_co, C_max_p0, p0)

    eps = max_inscribed_ball_at(_projektion(C_p0, n), np.zeros(n))
    lambda0, _ = _bestes_lambda0(C_co, C_p0, eps, lambda0_methods)

    co = collaborative(sys_s)
    kern = pre_k(co, HPolytope.point(np.zeros(n)), co.S, N)
    if kern.is_empty or not kern.is_origin_interior:
        gamma_max = 0.0
        logger.warning("Pre^N({0}) enthält den Ursprung nicht im Inneren: γ_max = 0")
    else:
        gamma_max = min(1.0, 1.0 / containment_ratio(C_co, kern))
    logger.info("algorithm2: λ0=%.4g γ_max=%.4g N=%d", lambda0, gamma_max, N)

    notes = [] if konvergiert else ["äußere Approximation von C_max,co: Schranke heuristisch"]
    modus = "exact" if n <= config.VERTEX_DIM_LIMIT else "box"
    r_co = radius_from_origin(C_co, mode=modus)
    return RegretCertificate.build("alg2", lambda0, gamma_max, N, 0.0, r_co, p0, eq, konvergiert, notes)


@dataclass(frozen=True)
class ConvergenceReport:
    """Leiter C_k mit Abständen zu C_max,co; p_bar = inf ohne Konvergenz"""

    p_bar: float
    ladder: list[HPolytope]
    distances: list[float]
    k_max: int
    p0: int = 0

    @property
    def converged(self) -> bool:
        return not math.isinf(self.p_bar)

    def distance_at(self, p: int) -> float:
        """Obere Schranke für d_p aus der Leiter"""
        k = p - self.p0
        if k < 0:
            raise DimensionsError("distance_at", f"p ≥ {self.p0}", p)
        if k >= len(self.distances):
            return 0.0 if self.converged else self.distances[-1]
        return self.distances[k]

    def to_dict(self) -> dict[str, Any]:
        return {
            "p_bar": self.p_bar if self.converged else "inf",
            "k_max": self.k_max,
            "p0": self.p0,
            "distances": list(self.distances),
            "ladder": [C.to_dict() for C in self.ladder],
        }


def algorithm3(
    system: LinearSystem,
    C_max_co: HPolytope,
    start: HPolytope,
    p0: int,
    k_max: int | None = None,
    mode: str = "auto",
) -> ConvergenceReport:
    """Erkennung endlicher Konvergenz über C_k = Pre_{D(Σ)}(C_{k−1})

    Args:
        system: System Σ (verschobene Koordinaten)
        C_max_co: Maximale CIS von D(Σ)
        start: C_0, typischerweise Proj_n(C_max,p0)
        p0: Horizont von C_0
        k_max: Iterationsgrenze (Standard K_MAX)
        mode: Hausdorff-Modus ("auto", "exact", "box")
    """
    k_max = config.K_MAX if k_max is None else k_max
    co = collaborative(system)
    C = _projektion(start, system.n)
    ladder = [C]
    distances = [hausdorff_nested(C, C_max_co, mode=mode)]
    if is_subset(C_max_co, C, config.TAU_LEITER):
        return ConvergenceReport(p0, ladder, distances, k_max, p0)
    for k in range(1, k_max + 1):
        C = intersect(pre(co, C), C_max_co)
        ladder.append(C)
        distances.append(hausdorff_nested(C, C_max_co, mode=mode))
        if is_subset(C_max_co, C, config.TAU_LEITER):
            logger.info("algorithm3: endliche Konvergenz bei p̄ = %d", p0 + k)
            return ConvergenceReport(p0 + k, ladder, distances, k_max, p0)
    logger.info("algorithm3: keine Konvergenz bis k_max = %d", k_max)
    return ConvergenceReport(math.inf, ladder, distances, k_max, p0)


# === Validierungsorakel ===


def projected_cmax_p(
    system: LinearSystem,
    p: int,
    budget: int | None = None,
    tol: float | None = None,
    max_iter: int | None = None,
) -> tuple[HPolytope, bool]:
    """Proj_n(C_max,p) direkt über Σ_p; (Projektion, konvergiert)

    Raises:
        KomplexitaetsError: n + p·l über dem Projektionsbudget
    """
    budget = config.PROJEKTIONS_BUDGET if budget is None else budget
    dim = system.n + p * system.l
    if dim > budget:
        raise KomplexitaetsError("projected_cmax_p", dim, budget)
    ergebnis = max_invariant_set(augment(system, p), tol=tol, max_iter=max_iter)
    if ergebnis.menge.is_empty:
        return HPolytope.empty(system.n), ergebnis.konvergiert
    return _projektion(ergebnis.menge, system.n), ergebnis.konvergiert


def true_dp(
    system: LinearSystem,
    p: int,
    C_max_co: HPolytope,
    budget: int | None = None,
    tol: float | None = None,
    max_iter: int | None = None,
) -> float:
    """d_p = d(Proj_n(C_max,p), C_max,co) durch direkte Rechnung"""
    proj, konvergiert = projected_cmax_p(system, p, budget, tol, max_iter)
    if not konvergiert:
        logger.warning("true_dp(p=%d): Fixpunkt nicht konvergiert", p)
    return hausdorff_nested(proj, C_max_co)
