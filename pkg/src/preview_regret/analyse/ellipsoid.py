"""
Kontrahierende Ellipsoide für das kollaborative System.

E(c) = {x | xᵀQ⁻¹x ≤ c²} mit Regler u = R1Q⁻¹x, u_d = R2Q⁻¹x ist eine
λ_a-kontrahierende kontrollierte invariante Menge. λ_a wird per Bisektion
bestimmt; jeder Schritt prüft die Zulässigkeit über eine Riccati-Lösung
des skalierten Systems und ein Lyapunov-Zertifikat.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import linalg as sla

from ..gemeinsam.config import config
from ..gemeinsam.errors import (
    AnnahmeError,
    DimensionsError,
    NichtStabilisierbarError,
    NormalformError,
    PreviewRegretError,
)
from ..geometrie.polytop import HPolytope, bounding_box, vertices
from ..geometrie.solver import (
    cholesky,
    solve_dare,
    solve_lyapunov,
    spectral_radius,
    unsteuerbare_eigenwerte,
)
from ..systeme.lineare_systeme import DeterministicSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContractiveEllipsoid:
    """Formmatrix Q, Reglermatrizen R1, R2 und Kontraktionsfaktor λ_a"""

    Q: np.ndarray
    R1: np.ndarray
    R2: np.ndarray
    lambda_a: float

    @property
    def Q_inv(self) -> np.ndarray:
        return np.linalg.inv(self.Q)

    def gain(self) -> np.ndarray:
        """K = [R1; R2]·Q⁻¹"""
        return np.vstack([self.R1, self.R2]) @ self.Q_inv

    def closed_loop(self, co: DeterministicSystem) -> np.ndarray:
        return co.A + co.B @ self.gain()

    def lyapunov_residuum(self, co: DeterministicSystem) -> float:
        """Größter Eigenwert von A_cᵀQ⁻¹A_c − λ_a²Q⁻¹ (≤ τ_psd für ein gültiges Zertifikat)"""
        Ac = self.closed_loop(co)
        P = self.Q_inv
        M = Ac.T @ P @ Ac - self.lambda_a**2 * P
        return float(np.max(np.linalg.eigvalsh(0.5 * (M + M.T))))

    def contains(self, x: Any, c: float) -> bool:
        x = np.asarray(x, dtype=float)
        return float(x @ self.Q_inv @ x) <= c**2 * (1.0 + config.TAU_PSD)

    def to_dict(self) -> dict[str, Any]:
        return {
            "Q": self.Q.tolist(),
            "R1": self.R1.tolist(),
            "R2": self.R2.tolist(),
            "lambda_a": self.lambda_a,
        }


@dataclass(frozen=True)
class Theorem6Params:
    """γC_max,co ist N-Schritt λ-kontrahierend mit γ = c0/c_out"""

    gamma: float
    N: int
    lam: float
    c0: float
    c_out: float

    def to_dict(self) -> dict[str, Any]:
        return {"gamma": self.gamma, "N": self.N, "lambda": self.lam, "c0": self.c0, "c_out": self.c_out}


def _versuch(A: np.ndarray, B: np.ndarray, rho: float) -> tuple[np.ndarray, np.ndarray, float] | None:
    """Zulässigkeitsorakel für Zielrate ρ: (K, P, λ_a) oder None"""
    n = A.shape[0]
    if unsteuerbare_eigenwerte(A, B, radius=rho):
        return None
    if B.shape[1] == 0 or not np.any(B):
        K = np.zeros((B.shape[1], n))
    else:
        At, Bt = A / rho, B / rho
        try:
            P_dare = solve_dare(At, Bt, np.eye(n), np.eye(B.shape[1]))
        except (PreviewRegretError, np.linalg.LinAlgError, ValueError):
            return None
        K = -np.linalg.solve(np.eye(B.shape[1]) + Bt.T @ P_dare @ Bt, Bt.T @ P_dare @ At)
    Ac = A + B @ K
    if spectral_radius(Ac) >= rho:
        return None
    lam_a = rho * math.sqrt(1.0 + config.LYAPUNOV_MARGE)
    # A_cᵀPA_c − λ_a²P = −I
    try:
        P = solve_lyapunov(Ac / lam_a, np.eye(n) / lam_a**2)
    except (np.linalg.LinAlgError, ValueError):
        return None
    if np.min(np.linalg.eigvalsh(P)) <= 0:
        return None
    return K, P, lam_a


def find_contractive_ellipsoid(co: DeterministicSystem) -> ContractiveEllipsoid:
    """Kontrahierendes Ellipsoid mit möglichst kleinem λ_a

    Bisektion über ρ ∈ (BISEKTION_UNTERGRENZE, 1/√(1+μ)). Das Ergebnis ist
    gültig, aber nicht unbedingt optimal.

    Args:
        co: Kollaboratives System D(Σ), input_split trennt u und u_d

    Raises:
        NichtStabilisierbarError: (A, [B E]) nicht stabilisierbar
    """
    A, B = co.A, co.B
    schlecht = unsteuerbare_eigenwerte(A, B)
    if schlecht:
        raise NichtStabilisierbarError(schlecht[0])
    split = co.B.shape[1] if co.input_split is None else co.input_split

    obergrenze = 1.0 / math.sqrt(1.0 + config.LYAPUNOV_MARGE)
    untergrenze = config.BISEKTION_UNTERGRENZE
    bestes = _versuch(A, B, untergrenze)
    if bestes is None:
        bestes = _versuch(A, B, obergrenze * (1.0 - 1e-9))
        if bestes is None:
            raise AnnahmeError(
                "kontrahierendes Ellipsoid",
                "keine Zielrate unter 1 zulässig",
                suggestion="Prüfe die Stabilisierbarkeit von D(Σ).",
            )
        lo, hi = untergrenze, obergrenze * (1.0 - 1e-9)
        for _ in range(config.BISEKTION_SCHRITTE):
            mitte = 0.5 * (lo + hi)
            ergebnis = _versuch(A, B, mitte)
            if ergebnis is None:
                lo = mitte
            else:
                hi, bestes = mitte, ergebnis
    K, P, lam_a = bestes
    Q = np.linalg.inv(P)
    Q = 0.5 * (Q + Q.T)
    ell = ContractiveEllipsoid(Q, K[:split] @ Q, K[split:] @ Q, lam_a)
    logger.debug("Ellipsoid mit λ_a = %.4e", lam_a)
    return ell


def max_c0(ell: ContractiveEllipsoid, S_xu: HPolytope, D: HPolytope) -> float:
    """Größtes c mit (x, R1Q⁻¹x) ∈ S_xu und R2Q⁻¹x ∈ D für alle x ∈ E(c)

    Zeilenweise: c·‖LᵀH_xᵀ + L⁻¹R1ᵀH_uᵀ‖₂ ≤ h (Q = LLᵀ); Zeilen mit Norm 0
    beschränken nichts.

    Raises:
        NormalformError: S_xu oder D enthält den Ursprung nicht im Inneren
    """
    n = ell.Q.shape[0]
    m = ell.R1.shape[0]
    if S_xu.dim != n + m:
        raise DimensionsError("max_c0.S_xu", n + m, S_xu.dim)
    if D.dim != ell.R2.shape[0]:
        raise DimensionsError("max_c0.D", ell.R2.shape[0], D.dim)
    for name, P in (("S_xu", S_xu), ("D", D)):
        if not P.is_origin_interior:
            raise NormalformError(f"max_c0.{name}", float(np.min(P.h)))
    L = cholesky(ell.Q)
    L_inv = sla.solve_triangular(L, np.eye(n), lower=True)
    normen_S = np.linalg.norm(S_xu.H[:, :n] @ L + S_xu.H[:, n:] @ ell.R1 @ L_inv.T, axis=1)
    normen_D = np.linalg.norm(D.H @ ell.R2 @ L_inv.T, axis=1) if D.dim else np.zeros(D.n_rows)
    normen = np.concatenate([normen_S, normen_D])
    rhs = np.concatenate([S_xu.h, D.h])
    aktiv = normen > 1e-14
    if not aktiv.any():
        return math.inf
    return float(np.min(rhs[aktiv] / normen[aktiv]))


def min_c_out(C_max_co: HPolytope, Q: np.ndarray, mode: str = "exact") -> float:
    """Kleinstes c mit C_max,co ⊆ E(c); mode="box" liefert eine obere Schranke"""
    Q_inv = np.linalg.inv(Q)
    if mode == "exact":
        punkte = vertices(C_max_co)
    elif mode == "box":
        punkte = bounding_box(C_max_co).corners()
        logger.info("c_out über umschließenden Quader (konservativ)")
    else:
        raise ValueError(f"mode={mode!r}")
    return max(math.sqrt(max(0.0, float(v @ Q_inv @ v))) for v in punkte)


def theorem6_params(c0: float, c_out: float, lambda_a: float) -> Theorem6Params:
    """γ = c0/c_out, N = ⌊log γ / log λ_a⌋ + 1, λ = λ_aᴺ/γ

    λ_a = 0 wird durch die Bisektionsuntergrenze ersetzt; c0 > c_out wird
    auf γ = 1 gekappt.
    """
    if c0 <= 0:
        raise AnnahmeError("Kontraktionsparameter", f"c0 = {c0} ≤ 0")
    if c0 > c_out:
        logger.warning("c0 = %.4g > c_out = %.4g, γ auf 1 gekappt", c0, c_out)
        c0 = c_out
    if lambda_a >= 1.0:
        raise AnnahmeError("Kontraktionsparameter", f"λ_a = {lambda_a} ≥ 1")
    lam_a = max(lambda_a, config.BISEKTION_UNTERGRENZE)
    gamma = c0 / c_out
    N = math.floor(math.log(gamma) / math.log(lam_a) + 1e-9) + 1
    lam = lam_a**N / gamma
    while lam >= 1.0:
        N += 1
        lam = lam_a**N / gamma
    return Theorem6Params(gamma, N, lam, c0, c_out)
