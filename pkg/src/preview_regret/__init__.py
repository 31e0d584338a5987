"""
preview-regret - Sicherheits-Regret von Reglern mit Störungsvorschau

Wie viel sichere Zustandsmenge kostet eine endliche Vorschau p im Vergleich
zu einer unendlichen? Das Paket berechnet maximale (robust) kontrollierte
invariante Mengen für Systeme mit Vorschau, drei Schranken für den
Hausdorff-Abstand d_p und die zulässigen Bereiche eines Vorschau-MPC.

KERNBEREICHE:
- geometrie: H-Polytope, Projektion, Hausdorff-Abstände, LP/QP/Riccati
- systeme: Σ, Σ_p, D(Σ), Gleichgewichte und Beispielmodelle
- analyse: Invarianz, Ellipsoide, Regret-Schranken, MPC
"""

# =============================================================================
# IMPORTS AUS ALLEN MODULEN
# =============================================================================

from .analyse import (
    METHODEN,
    ContractiveEllipsoid,
    ConvergenceReport,
    FeasibleDomain,
    FixpunktErgebnis,
    MpcConfig,
    MpcErgebnis,
    RegretCertificate,
    RfcModus,
    Theorem6Params,
    Trajektorie,
    algorithm1,
    algorithm2,
    algorithm3,
    bound_dp,
    bound_envelope,
    bound_marginal,
    check_contractive,
    cmax_p_co,
    estimate_lambda0,
    feasible_domain,
    feasible_domain_ladder,
    find_contractive_ellipsoid,
    in_feasible_domain,
    inclusion_factor,
    k0_of,
    max_c0,
    max_invariant_set,
    min_c_out,
    mpc_step,
    pre,
    pre_k,
    projected_cmax_p,
    pruefe_invarianz,
    sandwich_holds,
    shift_sets,
    simulate_closed_loop,
    stoerfolge,
    theorem1_bounds,
    theorem6_params,
    theorem9_certificate,
    true_dp,
)
from .gemeinsam import (
    AnnahmeError,
    DimensionsError,
    EingabeSyntaxError,
    KomplexitaetsError,
    KonvergenzError,
    LeereMengeError,
    NichtInvariantError,
    NichtStabilisierbarError,
    NichtSteuerbarError,
    PreviewRegretError,
    config,
    handle_preview_regret_error,
)
from .geometrie import (
    Box,
    HPolytope,
    cartesian_power,
    cartesian_product,
    containment_ratio,
    containment_ratio_projected,
    hausdorff_nested,
    intersect,
    is_subset,
    project,
    project_point,
    remove_redundancy,
    scale,
    set_equal,
    solve_dare,
    solve_lp,
    solve_qp,
    vertices,
)
from .systeme import (
    DeterministicSystem,
    Equilibrium,
    LinearSystem,
    Orakel1D,
    augment,
    build_1d,
    build_2d_random,
    build_template,
    collaborative,
    collaborative_augmented,
    find_forced_equilibrium,
    shift_origin,
)

# =============================================================================
# VERSION
# =============================================================================

__version__ = "0.1.0"

# =============================================================================
# EXPORTLISTE
# =============================================================================

__all__ = [
    # 📐 GEOMETRIE
    "Box",
    "HPolytope",
    "cartesian_power",
    "cartesian_product",
    "containment_ratio",
    "containment_ratio_projected",
    "hausdorff_nested",
    "intersect",
    "is_subset",
    "project",
    "project_point",
    "remove_redundancy",
    "scale",
    "set_equal",
    "solve_dare",
    "solve_lp",
    "solve_qp",
    "vertices",
    # ⚙️ SYSTEME
    "DeterministicSystem",
    "Equilibrium",
    "LinearSystem",
    "Orakel1D",
    "augment",
    "build_1d",
    "build_2d_random",
    "build_template",
    "collaborative",
    "collaborative_augmented",
    "find_forced_equilibrium",
    "shift_origin",
    # 🔁 INVARIANZ
    "FixpunktErgebnis",
    "check_contractive",
    "cmax_p_co",
    "inclusion_factor",
    "max_invariant_set",
    "pre",
    "pre_k",
    "theorem1_bounds",
    # 🥚 ELLIPSOIDE
    "ContractiveEllipsoid",
    "Theorem6Params",
    "find_contractive_ellipsoid",
    "max_c0",
    "min_c_out",
    "theorem6_params",
    # 📉 REGRET
    "METHODEN",
    "ConvergenceReport",
    "RegretCertificate",
    "algorithm1",
    "algorithm2",
    "algorithm3",
    "bound_dp",
    "bound_envelope",
    "bound_marginal",
    "estimate_lambda0",
    "k0_of",
    "projected_cmax_p",
    "shift_sets",
    "true_dp",
    # 🚗 MPC
    "FeasibleDomain",
    "MpcConfig",
    "MpcErgebnis",
    "RfcModus",
    "Trajektorie",
    "feasible_domain",
    "feasible_domain_ladder",
    "in_feasible_domain",
    "mpc_step",
    "pruefe_invarianz",
    "sandwich_holds",
    "simulate_closed_loop",
    "stoerfolge",
    "theorem9_certificate",
    # ❌ FEHLER & KONFIGURATION
    "PreviewRegretError",
    "AnnahmeError",
    "DimensionsError",
    "EingabeSyntaxError",
    "KomplexitaetsError",
    "KonvergenzError",
    "LeereMengeError",
    "NichtInvariantError",
    "NichtStabilisierbarError",
    "NichtSteuerbarError",
    "config",
    "handle_preview_regret_error",
]
