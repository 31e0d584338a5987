"""
Kommandozeile: preview-regret {rcis, regret, mpc, demo-1d}

Exit-Codes:
    0  Erfolg
    2  Eingabefehler (Syntax, Dimension, Schema, nicht invariante Endmenge)
    3  Annahme nicht verifizierbar
    4  Budget überschritten (Komplexität oder Iterationen)
"""

import argparse
import logging
import math
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any

import numpy as np

from .analyse.invarianz import cmax_p_co, max_invariant_set
from .analyse.mpc import (
    MpcConfig,
    feasible_domain,
    feasible_domain_ladder,
    simulate_closed_loop,
    stoerfolge,
    theorem9_certificate,
)
from .analyse.regret import (
    RegretCertificate,
    algorithm1,
    algorithm2,
    algorithm3,
    bound_dp,
    bound_envelope,
    true_dp,
)
from .gemeinsam.config import config
from .gemeinsam.errors import (
    AnnahmeError,
    DimensionsError,
    EingabeSyntaxError,
    KomplexitaetsError,
    KonfigurationsError,
    KonvergenzError,
    NichtInvariantError,
    PreviewRegretError,
    handle_preview_regret_error,
)
from .gemeinsam.serialisierung import lade_json, schreibe_csv, schreibe_json
from .geometrie.polytop import HPolytope, chebyshev_radius
from .systeme.lineare_systeme import LinearSystem, augment, collaborative
from .systeme.modelle import build_1d, build_2d_random, build_template

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EINGABE = 2
EXIT_ANNAHME = 3
EXIT_BUDGET = 4

SCHRANKEN_KOPF = ["p", "true_dp", "bound_alg1", "bound_alg1_refined", "bound_alg2", "bound_alg3", "p_bar"]

ALGORITHMEN = ("1", "1r", "2", "3", "all")


class BudgetUeberschritten(PreviewRegretError):
    """Fixpunktiteration ohne Konvergenz; die äußere Approximation wurde trotzdem geschrieben"""


# === Eingabe ===


def lade_system(pfad: str | Path) -> LinearSystem:
    """System aus JSON: Systemdaten, {"modell": ...} oder {"vorlage": ...}"""
    daten = lade_json(pfad)
    if "vorlage" in daten:
        return build_template(daten["vorlage"], daten.get("params"))
    modell = daten.get("modell")
    if modell == "1d":
        system, _ = build_1d(**daten.get("parameter", {}))
        return system
    if modell == "2d_random":
        return build_2d_random(daten.get("seed"), daten.get("k", 10), daten.get("u_max", 5.0))
    if modell is not None:
        raise EingabeSyntaxError(f"modell={modell!r}", '"1d" | "2d_random"')
    return LinearSystem.from_dict(daten.get("system", daten))


def _lade_polytop(pfad: str | Path) -> HPolytope:
    daten = lade_json(pfad)
    return HPolytope.from_dict(daten.get("polytop", daten))


def _fixpunkt(system: Any, tol: float | None, max_iter: int | None) -> tuple[HPolytope, bool, int]:
    ergebnis = max_invariant_set(system, tol=tol, max_iter=max_iter)
    return ergebnis.menge, ergebnis.konvergiert, ergebnis.iterationen


def _parallel(funktion: Callable[[int], Any], werte: Sequence[int]) -> list[Any]:
    """Reihenfolge der Ergebnisse folgt den Eingaben, nicht der Ausführung"""
    with ThreadPoolExecutor(max_workers=config.worker_anzahl()) as pool:
        return list(pool.map(funktion, werte))


# === Kommandos ===


def cmd_rcis(args: argparse.Namespace) -> int:
    """C_max (p = 0), C_max,p oder mit --co C_max,p,co"""
    system = lade_system(args.system)
    p = args.preview
    if args.co:
        C_co, konvergiert, iterationen = _fixpunkt(collaborative(system), args.tol, args.max_iter)
        menge = cmax_p_co(system, p, C_co) if p > 0 else C_co
        art = "C_max,p,co"
    else:
        ziel = augment(system, p) if p > 0 else system
        menge, konvergiert, iterationen = _fixpunkt(ziel, args.tol, args.max_iter)
        art = "C_max,p" if p > 0 else "C_max"
    out = Path(args.out)
    schreibe_json(
        out / "rcis.json",
        {
            "art": art,
            "p": p,
            "polytop": menge.to_dict(),
            "konvergiert": konvergiert,
            "iterationen": iterationen,
            "leer": menge.is_empty,
        },
    )
    print(f"{art}: {menge.n_rows} Zeilen, konvergiert={konvergiert}, Iterationen={iterationen}")
    if not konvergiert:
        raise BudgetUeberschritten(
            f"Fixpunktiteration nach {iterationen} Schritten nicht konvergiert",
            user_message="Die Iteration hat nicht konvergiert; gespeichert ist eine äußere Approximation.",
            suggestion="Erhöhe --max-iter oder lockere --tol.",
        )
    return EXIT_OK


def _zertifikate(
    system: LinearSystem,
    C_co: HPolytope,
    C_p0: HPolytope,
    p0: int,
    algorithmen: set[str],
    N_liste: Sequence[int],
    konvergiert: bool,
) -> tuple[dict[str, list[RegretCertificate]], dict[str, str]]:
    """Alle angefragten Zertifikate; Annahmefehler werden pro Verfahren gesammelt"""
    zertifikate: dict[str, list[RegretCertificate]] = {}
    fehler: dict[str, str] = {}
    aufgaben: list[tuple[str, Callable[[], RegretCertificate]]] = []
    if "1" in algorithmen:
        aufgaben.append(("alg1", lambda: algorithm1(system, C_co, C_p0, p0, konvergiert=konvergiert)))
    if "1r" in algorithmen:
        aufgaben.append(
            ("alg1_refined", lambda: algorithm1(system, C_co, C_p0, p0, refine=True, konvergiert=konvergiert))
        )
    if "2" in algorithmen:
        for N in N_liste or [None]:
            aufgaben.append(("alg2", lambda N=N: algorithm2(system, C_co, C_p0, p0, N=N, konvergiert=konvergiert)))
    for name, aufgabe in aufgaben:
        try:
            zertifikate.setdefault(name, []).append(aufgabe())
        except AnnahmeError as e:
            logger.warning("%s: %s", name, e)
            fehler[name] = handle_preview_regret_error(e)
    return zertifikate, fehler


def _regret_lauf(
    system: LinearSystem,
    p0: int,
    p_max: int,
    algorithmen: set[str],
    N_liste: Sequence[int],
    k_max: int | None,
    tol: float | None,
    max_iter: int | None,
    mit_true_dp: bool,
    budget: int | None = None,
) -> tuple[list[list[Any]], dict[str, Any], bool]:
    """Gemeinsamer Kern von regret und demo-1d: (CSV-Zeilen, Zertifikatsdokument, Annahmefehler)"""
    if p_max < p0:
        raise DimensionsError("regret --p-max", f"≥ {p0}", p_max)
    C_co, konvergiert, _ = _fixpunkt(collaborative(system), tol, max_iter)
    C_p0, konv_p0, _ = _fixpunkt(augment(system, p0) if p0 > 0 else system, tol, max_iter)
    if C_p0.is_empty:
        raise AnnahmeError("C_max,p0 nicht leer", f"C_max,{p0} ist leer")
    konvergiert = konvergiert and konv_p0

    zertifikate, fehler = _zertifikate(system, C_co, C_p0, p0, algorithmen, N_liste, konvergiert)
    bericht = algorithm3(system, C_co, C_p0, p0, k_max=k_max) if "3" in algorithmen else None

    def d_p(p: int) -> float | None:
        if not mit_true_dp:
            return None
        try:
            return true_dp(system, p, C_co, budget=budget, tol=tol, max_iter=max_iter)
        except KomplexitaetsError as e:
            logger.info("true_dp(p=%d) übersprungen: %s", p, e)
            return None

    ps = list(range(p0, p_max + 1))
    exakt = _parallel(d_p, ps)

    def spalte(name: str, p: int) -> float | None:
        certs = zertifikate.get(name)
        if not certs:
            return None
        return bound_envelope(certs, p) if len(certs) > 1 else bound_dp(certs[0], p)

    p_bar = None if bericht is None else bericht.p_bar
    zeilen = [
        [
            p,
            d,
            spalte("alg1", p),
            spalte("alg1_refined", p),
            spalte("alg2", p),
            None if bericht is None else bericht.distance_at(p),
            p_bar,
        ]
        for p, d in zip(ps, exakt, strict=True)
    ]
    dokument = {
        "p0": p0,
        "zertifikate": {name: [c.to_dict() for c in certs] for name, certs in zertifikate.items()},
        "fehler": fehler,
        "algorithm3": None if bericht is None else bericht.to_dict(),
        "c_max_co": C_co.to_dict(),
        "konvergiert": konvergiert,
        "config": config.als_dict(),
    }
    return zeilen, dokument, bool(fehler)


def _algorithmen(wahl: Sequence[str]) -> set[str]:
    gewaehlt = set(wahl)
    return {"1", "1r", "2", "3"} if "all" in gewaehlt else gewaehlt


def cmd_regret(args: argparse.Namespace) -> int:
    system = lade_system(args.system)
    zeilen, dokument, fehler = _regret_lauf(
        system,
        args.p0,
        args.p_max,
        _algorithmen(args.alg),
        args.N or [],
        args.kmax,
        args.tol,
        args.max_iter,
        not args.ohne_true_dp,
        args.budget,
    )
    out = Path(args.out)
    schreibe_csv(out, SCHRANKEN_KOPF, zeilen)
    schreibe_json(out.with_name(out.stem + "_zertifikate.json"), {**dokument, "seed": args.seed})
    print(f"Schranken für p = {args.p0}…{args.p_max} geschrieben: {out}")
    for name, meldung in dokument["fehler"].items():
        print(f"{name}: {meldung}", file=sys.stderr)
    return EXIT_ANNAHME if fehler else EXIT_OK


def cmd_mpc(args: argparse.Namespace) -> int:
    """Zulässiger Bereich, Konvergenzschranke und Simulation"""
    system = lade_system(args.system)
    C_co, _, _ = _fixpunkt(collaborative(system), args.tol, args.max_iter)
    if args.terminal == "auto":
        C, _, _ = _fixpunkt(system, args.tol, args.max_iter)
    else:
        C = _lade_polytop(args.terminal)
    out = Path(args.out)

    bereich = feasible_domain(system, C, args.p)
    schreibe_json(out / "bereich.json", {"p": args.p, "bereich": bereich.to_dict()})

    p_max = max(args.p, args.p_max or args.p)
    leiter = feasible_domain_ladder(system, C, k_max=p_max, C_max_co=C_co)
    try:
        cert = theorem9_certificate(system, C, C_co, method=args.methode)
        schranke: Callable[[int], float | None] = lambda p: bound_dp(cert, p)  # noqa: E731
        schreibe_json(out / "zertifikat_mpc.json", {"zertifikat": cert.to_dict(), "leiter": leiter.to_dict()})
    except AnnahmeError as e:
        logger.warning("Konvergenzschranke nicht verfügbar: %s", e)
        schranke = lambda p: None  # noqa: E731
    schreibe_csv(
        out / "schranke_mpc.csv",
        ["p", "bound", "ladder_distance", "p_bar"],
        [[p, schranke(p), leiter.distance_at(p), leiter.p_bar] for p in range(0, p_max + 1)],
    )

    if args.simulate > 0:
        cfg = MpcConfig(args.p, C)
        x0 = np.asarray(args.x0, dtype=float) if args.x0 is not None else chebyshev_radius(bereich.projection)[0]
        laenge = args.simulate + args.p - 1

        def strom(i: int) -> int:
            folge = stoerfolge(system.D, laenge, seed=args.seed + i)
            log = simulate_closed_loop(system, cfg, x0, folge, args.simulate)
            schreibe_csv(out / f"trajektorie_{i}.csv", log.kopf(system.n, system.m, system.l), log.zeilen())
            return log.unzulaessige_schritte

        unzulaessig = _parallel(strom, list(range(args.streams)))
        print(f"{args.streams} Simulationen × {args.simulate} Schritte, unzulässige Schritte: {sum(unzulaessig)}")
    print(f"Proj_n(F_{args.p}(C)): {bereich.projection.n_rows} Zeilen; p̄ = {leiter.p_bar}")
    return EXIT_OK


def cmd_demo_1d(args: argparse.Namespace) -> int:
    """Vollständige 1D-Kette mit Abgleich gegen die geschlossenen Formeln"""
    system, orakel = build_1d(args.a, args.x_max, args.u_max, args.d_max)
    zeilen, dokument, fehler = _regret_lauf(
        system,
        args.p0,
        args.p_max,
        {"2", "3"},
        [],
        args.kmax,
        args.tol,
        None,
        True,
        budget=system.n + args.p_max * system.l,
    )
    out = Path(args.out)
    schreibe_csv(out / "schranken.csv", SCHRANKEN_KOPF, zeilen)

    vergleich = []
    for zeile in zeilen:
        p, d = zeile[0], zeile[1]
        try:
            soll = orakel.dp(p)
        except AnnahmeError:
            soll = None
        vergleich.append({"p": p, "true_dp": d, "orakel": soll, "bound_alg2": zeile[4]})
    schreibe_json(out / "zertifikate.json", {**dokument, "orakel": orakel.to_dict(), "vergleich": vergleich})

    abweichung = max(
        (abs(v["true_dp"] - v["orakel"]) for v in vergleich if v["true_dp"] is not None and v["orakel"] is not None),
        default=math.nan,
    )
    print(f"C_max,co = [−{orakel.r_co():g}, {orakel.r_co():g}]; max |d_p − Formel| = {abweichung:.3e}")
    return EXIT_ANNAHME if fehler else EXIT_OK


# === Parser ===


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="preview-regret",
        description="Robuste kontrollierte invariante Mengen mit Störungsvorschau",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    parser.add_argument("--seed", type=int, default=config.STANDARD_SEED, help="Seed für alle Zufallsfolgen")
    befehle = parser.add_subparsers(dest="befehl", required=True)

    iteration = argparse.ArgumentParser(add_help=False)
    iteration.add_argument("--max-iter", type=int, default=None, help="Grenze der Fixpunktiteration")
    iteration.add_argument("--tol", type=float, default=None, help="Abbruchtoleranz der Fixpunktiteration")

    rcis = befehle.add_parser("rcis", parents=[iteration], help="Maximale (robuste) kontrollierte invariante Menge")
    rcis.add_argument("system", help="System-JSON")
    rcis.add_argument("--preview", type=int, default=0, help="Vorschauhorizont p")
    rcis.add_argument("--co", action="store_true", help="Kollaboratives System D(Σ_p) statt Σ_p")
    rcis.add_argument("--out", default=".", help="Ausgabeverzeichnis")
    rcis.set_defaults(funktion=cmd_rcis)

    regret = befehle.add_parser("regret", parents=[iteration], help="Schranken für d_p")
    regret.add_argument("system", help="System-JSON")
    regret.add_argument("--p0", type=int, default=1)
    regret.add_argument("--p-max", type=int, default=10)
    regret.add_argument("--alg", nargs="+", choices=ALGORITHMEN, default=["all"])
    regret.add_argument("--N", type=int, nargs="+", default=None, help="Schrittweiten für Algorithmus 2")
    regret.add_argument("--kmax", type=int, default=None, help="Leiterlänge für Algorithmus 3")
    regret.add_argument("--ohne-true-dp", action="store_true", help="d_p nicht direkt berechnen")
    regret.add_argument("--budget", type=int, default=None, help="Dimensionsgrenze für die direkte Projektion")
    regret.add_argument("--out", default="schranken.csv", help="CSV-Datei")
    regret.set_defaults(funktion=cmd_regret)

    mpc = befehle.add_parser("mpc", parents=[iteration], help="Zulässiger Bereich und Simulation des MPC")
    mpc.add_argument("system", help="System-JSON")
    mpc.add_argument("--terminal", default="auto", help="Polytop-JSON der Endmenge oder 'auto'")
    mpc.add_argument("--p", type=int, default=1, help="Vorschau- und Prädiktionshorizont")
    mpc.add_argument("--p-max", type=int, default=None, help="Länge der Schrankenkurve")
    mpc.add_argument("--methode", choices=("alg1", "alg2"), default="alg2")
    mpc.add_argument("--simulate", type=int, default=0, metavar="T", help="Simulationsschritte")
    mpc.add_argument("--streams", type=int, default=1, help="Anzahl Störfolgen")
    mpc.add_argument("--x0", type=float, nargs="+", default=None, help="Startzustand")
    mpc.add_argument("--out", default=".", help="Ausgabeverzeichnis")
    mpc.set_defaults(funktion=cmd_mpc)

    demo = befehle.add_parser("demo-1d", help="1D-Beispiel gegen geschlossene Formeln")
    demo.add_argument("--a", type=float, default=2.0)
    demo.add_argument("--x-max", type=float, default=10.0)
    demo.add_argument("--u-max", type=float, default=1.0)
    demo.add_argument("--d-max", type=float, default=0.5)
    demo.add_argument("--p0", type=int, default=1)
    demo.add_argument("--p-max", type=int, default=10)
    demo.add_argument("--kmax", type=int, default=None)
    demo.add_argument("--tol", type=float, default=1e-10)
    demo.add_argument("--out", default="demo_1d", help="Ausgabeverzeichnis")
    demo.set_defaults(funktion=cmd_demo_1d)
    return parser


def _exit_code(fehler: Exception) -> int:
    if isinstance(fehler, EingabeSyntaxError | DimensionsError | KonfigurationsError | NichtInvariantError):
        return EXIT_EINGABE
    if isinstance(fehler, FileNotFoundError):
        return EXIT_EINGABE
    if isinstance(fehler, AnnahmeError):
        return EXIT_ANNAHME
    if isinstance(fehler, KomplexitaetsError | KonvergenzError | BudgetUeberschritten):
        return EXIT_BUDGET
    return 1


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    level = {0: None, 1: "INFO"}.get(args.verbose, "DEBUG")
    config.logging_einrichten(level)
    try:
        return args.funktion(args)
    except (PreviewRegretError, FileNotFoundError) as e:
        print(handle_preview_regret_error(e), file=sys.stderr)
        if isinstance(e, NichtInvariantError):
            print(f"Verletzender Punkt: {e.context.get('punkt')}", file=sys.stderr)
        return _exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
