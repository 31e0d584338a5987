"""
Invarianz, kontrahierende Ellipsoide, Sicherheits-Regret und MPC.
"""

from .ellipsoid import (
    ContractiveEllipsoid,
    Theorem6Params,
    find_contractive_ellipsoid,
    max_c0,
    min_c_out,
    theorem6_params,
)
from .invarianz import (
    FixpunktErgebnis,
    check_contractive,
    cmax_p_co,
    inclusion_factor,
    max_invariant_set,
    pre,
    pre_k,
    theorem1_bounds,
)
from .mpc import (
    FeasibleDomain,
    MpcConfig,
    MpcErgebnis,
    RfcModus,
    Trajektorie,
    feasible_domain,
    feasible_domain_ladder,
    in_feasible_domain,
    mpc_step,
    pruefe_invarianz,
    sandwich_holds,
    simulate_closed_loop,
    stoerfolge,
    theorem9_certificate,
)
from .regret import (
    METHODEN,
    ConvergenceReport,
    RegretCertificate,
    algorithm1,
    algorithm2,
    algorithm3,
    bound_dp,
    bound_envelope,
    bound_marginal,
    estimate_lambda0,
    k0_of,
    projected_cmax_p,
    shift_sets,
    true_dp,
)

__all__ = [
    # 🔁 Invarianz
    "FixpunktErgebnis",
    "check_contractive",
    "cmax_p_co",
    "inclusion_factor",
    "max_invariant_set",
    "pre",
    "pre_k",
    "theorem1_bounds",
    # 🥚 Ellipsoide
    "ContractiveEllipsoid",
    "Theorem6Params",
    "find_contractive_ellipsoid",
    "max_c0",
    "min_c_out",
    "theorem6_params",
    # 📉 Regret
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
]
