"""
Beispielsysteme und das analytische 1D-Orakel.

- build_1d: x⁺ = ax + u + d mit geschlossenen Formeln für C_max,p, d_p, λ0
- build_2d_random: festes 2D-System mit zufälliger, gesäter sicherer Menge
- build_template: Spurhaltung, Biped (ZMP-Vorschau), Windturbine

Dynamik-Parameter der Vorlagen stammen aus externen Quellen und sind hier
Platzhalter; welche Zeilen aus der Literatur stammen und welche vom
Aufrufer kommen, steht in system.metadata["herkunft"].
"""

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
import sympy as sp
from scipy import linalg as sla

from ..gemeinsam.config import config
from ..gemeinsam.errors import KonfigurationsError, OrakelGueltigkeitsError
from ..geometrie.polytop import Box, HPolytope, intersect
from .lineare_systeme import LinearSystem

logger = logging.getLogger(__name__)

Zahl = float | sp.Rational


def _rational(wert: Any) -> sp.Rational:
    return sp.nsimplify(wert, rational=True)


# === 1D-System ===


@dataclass(frozen=True)
class Orakel1D:
    """Geschlossene Formeln für x⁺ = ax + u + d, |x| ≤ x̄, |u| ≤ ū, |d| ≤ d̄

    Alle Werte werden exakt mit sympy.Rational ausgewertet; exakt=False
    liefert float. Jede Formel prüft ihren Gültigkeitsbereich.
    """

    a: sp.Rational
    x_max: sp.Rational
    u_max: sp.Rational
    d_max: sp.Rational

    def _basis(self, formel: str) -> None:
        if self.a <= 1:
            raise OrakelGueltigkeitsError(formel, f"a = {self.a} > 1")
        if self.x_max < (self.u_max + self.d_max) / (self.a - 1):
            raise OrakelGueltigkeitsError(formel, f"x̄ = {self.x_max} ≥ (ū + d̄)/(a − 1)")

    def _horizont(self, formel: str, p: int) -> None:
        self._basis(formel)
        if p < 0:
            raise OrakelGueltigkeitsError(formel, f"p = {p} ≥ 0")
        if self.a ** (p - 1) * self.u_max < self.d_max:
            raise OrakelGueltigkeitsError(formel, f"a^(p−1)·ū ≥ d̄ für p = {p}")

    @staticmethod
    def _aus(wert: sp.Rational, exakt: bool) -> Zahl:
        return wert if exakt else float(wert)

    def r_co(self, exakt: bool = False) -> Zahl:
        """Radius von C_max,co = [−(ū+d̄)/(a−1), (ū+d̄)/(a−1)]"""
        self._basis("C_max,co")
        return self._aus((self.u_max + self.d_max) / (self.a - 1), exakt)

    def cmax_co(self) -> Box:
        r = self.r_co()
        return Box([-r], [r])

    def r_proj(self, p: int, exakt: bool = False) -> Zahl:
        """Radius von Proj₁(C_max,p): (ū + d̄ − 2d̄/aᵖ)/(a − 1)"""
        self._horizont("Proj₁(C_max,p)", p)
        wert = (self.u_max + self.d_max - 2 * self.d_max / self.a**p) / (self.a - 1)
        return self._aus(wert, exakt)

    def proj(self, p: int) -> Box:
        r = self.r_proj(p)
        return Box([-r], [r])

    def dp(self, p: int, exakt: bool = False) -> Zahl:
        """d_p = 2d̄/((a − 1)aᵖ)"""
        self._horizont("d_p", p)
        return self._aus(2 * self.d_max / ((self.a - 1) * self.a**p), exakt)

    def cmax_p(self, p: int) -> HPolytope:
        """C_max,p ⊆ R^{1+p}: |d_i| ≤ d̄, |x + Σ d_i/aⁱ| ≤ (ū − d̄/aᵖ)/(a − 1)"""
        self._horizont("C_max,p", p)
        schranke = float((self.u_max - self.d_max / self.a**p) / (self.a - 1))
        zeile = np.array([1.0] + [float(1 / self.a**i) for i in range(1, p + 1)])
        H = np.vstack([zeile, -zeile, np.eye(1 + p)[1:], -np.eye(1 + p)[1:]])
        h = np.concatenate([[schranke, schranke], np.full(2 * p, float(self.d_max))])
        return HPolytope(H, h)

    def gamma_max(self, exakt: bool = False) -> Zahl:
        """Pre_D(Σ)({0}) = [−(ū+d̄)/a, (ū+d̄)/a], also γ_max = 1 − 1/a"""
        self._basis("γ_max")
        return self._aus(1 - 1 / self.a, exakt)

    def lambda0(self, p0: int, exakt: bool = False) -> Zahl:
        """λ0 = 1 − (2d̄/a^{p0})/(ū + d̄)"""
        self._horizont("λ0", p0)
        return self._aus(1 - (2 * self.d_max / self.a**p0) / (self.u_max + self.d_max), exakt)

    def to_dict(self) -> dict[str, Any]:
        return {"a": str(self.a), "x_max": str(self.x_max), "u_max": str(self.u_max), "d_max": str(self.d_max)}


def build_1d(a: Any = 2, x_max: Any = 10, u_max: Any = 1, d_max: Any = 0.5) -> tuple[LinearSystem, Orakel1D]:
    """x⁺ = ax + u + d mit S_xu = [−x̄, x̄] × [−ū, ū] und D = [−d̄, d̄]

    Returns:
        (System, Orakel); das System entsteht auch außerhalb des
        Gültigkeitsbereichs, erst die Orakelformeln prüfen ihn.
    """
    orakel = Orakel1D(_rational(a), _rational(x_max), _rational(u_max), _rational(d_max))
    xb, ub, db = float(x_max), float(u_max), float(d_max)
    system = LinearSystem(
        A=[[float(a)]],
        B=[[1.0]],
        E=[[1.0]],
        D=HPolytope.from_box([-db], [db]),
        S_xu=HPolytope.from_box([-xb, -ub], [xb, ub]),
        name="eindimensional",
        metadata={"modell": "1d", "parameter": orakel.to_dict()},
    )
    return system, orakel


# === 2D-System mit zufälliger sicherer Menge ===

A_2D = np.array([[1.5, 1.0], [0.0, 1.1]])
B_2D = np.array([[0.0], [1.0]])
E_2D = np.array([[1.0], [1.0]])
D_MAX_2D = 0.3


def build_2d_random(
    seed: int | None = None,
    k: int = 10,
    u_max: float = 5.0,
    innen: float = 2.0,
    aussen: float = 8.0,
) -> LinearSystem:
    """Festes 2D-System mit zufälliger polytopischer sicherer Menge

    k gleichverteilte Normalen im Zustandsraum; der Abstand jeder Zeile ist
    die Stützfunktion des Quaders [−innen, innen]² plus U(0, 3). Dazu
    |x_i| ≤ aussen und |u| ≤ u_max. Pro Seed bitgleich.
    """
    seed = config.STANDARD_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    winkel = rng.uniform(0.0, 2.0 * math.pi, size=k)
    normalen = np.column_stack([np.cos(winkel), np.sin(winkel)])
    abstaende = innen * np.abs(normalen).sum(axis=1) + rng.uniform(0.0, 3.0, size=k)
    zufall = HPolytope(np.hstack([normalen, np.zeros((k, 1))]), abstaende)
    rahmen = HPolytope.from_box([-aussen, -aussen, -u_max], [aussen, aussen, u_max])
    S_xu = intersect(zufall, rahmen)
    logger.debug("2D-System mit Seed %d und %d Zufallszeilen", seed, k)
    return LinearSystem(
        A=A_2D,
        B=B_2D,
        E=E_2D,
        D=HPolytope.from_box([-D_MAX_2D], [D_MAX_2D]),
        S_xu=S_xu,
        name=f"zufall_2d_{seed}",
        metadata={
            "modell": "2d_random",
            "seed": seed,
            "k": k,
            "herkunft": {"A, B, E, D": "literatur", "S_xu": "platzhalter (gesäter Generator)"},
        },
    )


# === Vorlagen ===


def _zoh(A_c: np.ndarray, B_c: np.ndarray, T: float) -> tuple[np.ndarray, np.ndarray]:
    """Exakte Diskretisierung mit Halteglied nullter Ordnung"""
    n, k = A_c.shape[0], B_c.shape[1]
    M = np.zeros((n + k, n + k))
    M[:n, :n] = A_c
    M[:n, n:] = B_c
    Phi = sla.expm(M * T)
    return Phi[:n, :n], Phi[:n, n:]


def _zahl(params: dict[str, Any], name: str, standard: float, platzhalter: list[str]) -> float:
    if name not in params:
        platzhalter.append(name)
        return standard
    wert = params[name]
    if isinstance(wert, bool) or not isinstance(wert, int | float):
        raise KonfigurationsError(name, wert, float)
    return float(wert)


def _lane_keeping(params: dict[str, Any], platzhalter: list[str]) -> LinearSystem:
    """Lineares Einspurmodell, Zustand (y, v, ΔΨ, r), Eingang δ_f, Störung r_d"""
    u0 = _zahl(params, "u0", 30.0, platzhalter)
    M = _zahl(params, "masse", 1650.0, platzhalter)
    Iz = _zahl(params, "traegheit", 2315.0, platzhalter)
    la = _zahl(params, "a", 1.11, platzhalter)
    lb = _zahl(params, "b", 1.59, platzhalter)
    Cf = _zahl(params, "C_f", 133000.0, platzhalter)
    Cr = _zahl(params, "C_r", 98800.0, platzhalter)
    T = _zahl(params, "T", 0.1, platzhalter)

    A_c = np.array(
        [
            [0.0, 1.0, u0, 0.0],
            [0.0, -(Cf + Cr) / (M * u0), 0.0, (lb * Cr - la * Cf) / (M * u0) - u0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, (lb * Cr - la * Cf) / (Iz * u0), 0.0, -(la**2 * Cf + lb**2 * Cr) / (Iz * u0)],
        ]
    )
    B_c = np.array([[0.0, 0.0], [Cf / M, 0.0], [0.0, -1.0], [la * Cf / Iz, 0.0]])
    A, BE = _zoh(A_c, B_c, T)
    S_xu = HPolytope.from_box([-0.9, -1.2, -0.05, -0.3, -math.pi / 2], [0.9, 1.2, 0.05, 0.3, math.pi / 2])
    return LinearSystem(
        A=A,
        B=BE[:, :1],
        E=BE[:, 1:],
        D=HPolytope.from_box([-0.05], [0.05]),
        S_xu=S_xu,
        name="spurhaltung",
        metadata={"referenz_p_bar": 7, "herkunft": {"S_xu, D": "literatur", "A, B, E": "parameter"}},
    )


def _biped(params: dict[str, Any], platzhalter: list[str]) -> LinearSystem:
    """Seitliche Schwerpunktdynamik (x, ẋ, ẍ) mit Ruck als Eingang, gekoppelt an z̄⁺ = 0.15z̄ + d"""
    h_com = _zahl(params, "h_CoM", 0.8, platzhalter)
    g = _zahl(params, "g", 9.81, platzhalter)
    T = _zahl(params, "T", 0.1, platzhalter)
    if g <= 0:
        raise KonfigurationsError("g", g, float)

    A = np.zeros((4, 4))
    A[:3, :3] = [[1.0, T, T**2 / 2], [0.0, 1.0, T], [0.0, 0.0, 1.0]]
    A[3, 3] = 0.15
    B = np.array([[T**3 / 6], [T**2 / 2], [T], [0.0]])
    E = np.array([[0.0], [0.0], [0.0], [1.0]])

    # ZMP-Zeile |x + (h/g)ẍ − z̄| ≤ 0.1, dann Quaderschranken
    zmp = np.array([1.0, 0.0, h_com / g, -1.0, 0.0])
    quader = HPolytope.from_box([-0.1, -10.0, -10.0, -0.1, -100.0], [0.1, 10.0, 10.0, 0.1, 100.0])
    S_xu = intersect(HPolytope(np.vstack([zmp, -zmp]), [0.1, 0.1]), quader)
    return LinearSystem(
        A=A,
        B=B,
        E=E,
        D=HPolytope.from_box([-0.085], [0.085]),
        S_xu=S_xu,
        name="biped",
        metadata={"referenz_p_bar": 10, "herkunft": {"S_xu, D, z̄-Dynamik": "literatur", "T, h_CoM, g": "parameter"}},
    )


def _wind_turbine(params: dict[str, Any], platzhalter: list[str]) -> LinearSystem:
    """Zustand (δΩ, ∫δΩ, δβ), Eingang Δβ, Störung δv

    Rotor erster Ordnung mit Empfindlichkeiten q_Omega, q_beta, q_v;
    optionale MPC-Zeilen J·x + E_u·Δβ ≤ l über "mpc_J", "mpc_E", "mpc_l".
    """
    J = _zahl(params, "traegheit", 4.0e7, platzhalter)
    q_om = _zahl(params, "q_Omega", -2.0e6, platzhalter)
    q_beta = _zahl(params, "q_beta", -1.5e6, platzhalter)
    q_v = _zahl(params, "q_v", 1.2e6, platzhalter)
    T = _zahl(params, "T", 0.1, platzhalter)
    delta_max = _zahl(params, "delta_beta_max", 1.0, platzhalter)
    v_max = _zahl(params, "v_max", 2.0, platzhalter)

    A = np.array(
        [
            [1.0 + T * q_om / J, 0.0, T * q_beta / J],
            [T, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    B = np.array([[0.0], [0.0], [1.0]])
    E = np.array([[T * q_v / J], [0.0], [0.0]])
    S_xu = HPolytope.from_box([-5.0, -100.0, -4.53, -delta_max], [5.0, 100.0, 10.47, delta_max])

    mpc = [schluessel for schluessel in ("mpc_J", "mpc_E", "mpc_l") if schluessel in params]
    if mpc and len(mpc) != 3:
        fehlend = sorted({"mpc_J", "mpc_E", "mpc_l"} - set(mpc))
        raise KonfigurationsError(fehlend[0], None, list)
    if mpc:
        zeilen_J = np.atleast_2d(np.asarray(params["mpc_J"], dtype=float))
        zeilen_E = np.asarray(params["mpc_E"], dtype=float).reshape(-1, 1)
        S_xu = intersect(S_xu, HPolytope(np.hstack([zeilen_J, zeilen_E]), params["mpc_l"]))

    return LinearSystem(
        A=A,
        B=B,
        E=E,
        D=HPolytope.from_box([-v_max], [v_max]),
        S_xu=S_xu,
        name="windturbine",
        metadata={
            "referenz_p_bar": 4,
            "herkunft": {
                "Zustandsschranken": "literatur",
                "MPC-Zeilen": "parameter" if mpc else "fehlen",
                "A, B, E, |Δβ|, |δv|": "parameter",
            },
        },
    )


VORLAGEN = {
    "lane_keeping": _lane_keeping,
    "biped": _biped,
    "wind_turbine": _wind_turbine,
}


def build_template(name: str, params: dict[str, Any] | None = None) -> LinearSystem:
    """Vorlage mit eingebauten Literatur-Zeilen und Platzhalter-Dynamik

    Args:
        name: "lane_keeping", "biped" oder "wind_turbine"
        params: Dynamik-Parameter; fehlende werden durch gekennzeichnete
            Platzhalter ersetzt

    Raises:
        KonfigurationsError: Unbekannte Vorlage oder ungültiger Parameter
    """
    if name not in VORLAGEN:
        raise KonfigurationsError("name", name, str)
    platzhalter: list[str] = []
    system = VORLAGEN[name](dict(params or {}), platzhalter)
    system.pruefe_kompaktheit()
    system.metadata["modell"] = name
    system.metadata["platzhalter"] = platzhalter
    if platzhalter:
        logger.info("Vorlage %s nutzt Platzhalter für %s", name, ", ".join(platzhalter))
    return system
