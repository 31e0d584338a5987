"""
Plotly-Abbildungen für Schrankenkurven und Konvergenzleitern.

Nur Bibliothek: die CLI schreibt Daten, gerendert wird hier. plotly liegt in
der Abhängigkeitsgruppe "viz".
"""

import logging
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from .analyse.regret import ConvergenceReport
from .gemeinsam.config import config
from .gemeinsam.errors import DimensionsError, PreviewRegretError
from .gemeinsam.serialisierung import lese_csv
from .geometrie.polytop import HPolytope, bounding_box, vertices

try:
    import plotly.graph_objects as go
except ImportError:  # pragma: no cover
    go = None

logger = logging.getLogger(__name__)

SCHRANKEN_SPALTEN = ("true_dp", "bound_alg1", "bound_alg1_refined", "bound_alg2", "bound_alg3")

_BESCHRIFTUNG = {
    "true_dp": "d_p (exakt)",
    "bound_alg1": "Alg. 1",
    "bound_alg1_refined": "Alg. 1 (verfeinert)",
    "bound_alg2": "Alg. 2",
    "bound_alg3": "Alg. 3",
}


def _plotly() -> Any:
    if go is None:
        raise PreviewRegretError(
            "plotly nicht installiert",
            user_message="Für Abbildungen wird plotly benötigt.",
            suggestion="Installiere die Gruppe 'viz': uv sync --group viz",
        )
    return go


def _zahl(wert: Any) -> float | None:
    """CSV-Zelle als positive endliche Zahl, sonst None (log-Achse)"""
    if wert is None or wert == "":
        return None
    try:
        x = float(wert)
    except (TypeError, ValueError):
        return None
    return x if math.isfinite(x) and x > 0 else None


def _farbe(spalte: str) -> str:
    return config.FARBEN.get(spalte.removeprefix("bound_"), config.FARBEN["grenze"])


def zeichne_schranken(zeilen: Sequence[dict[str, Any]] | str | Path, titel: str = "Schranken für d_p") -> Any:
    """Schrankenkurven über p mit logarithmischer y-Achse

    Args:
        zeilen: Zeilen der Schranken-CSV (oder deren Pfad)
        titel: Abbildungstitel

    Returns:
        go.Figure mit einer Kurve pro nichtleerer Spalte
    """
    graph = _plotly()
    if isinstance(zeilen, str | Path):
        zeilen = lese_csv(zeilen)
    fig = graph.Figure()
    for spalte in SCHRANKEN_SPALTEN:
        punkte = [(int(z["p"]), _zahl(z.get(spalte))) for z in zeilen]
        punkte = [(p, y) for p, y in punkte if y is not None]
        if not punkte:
            continue
        fig.add_trace(
            graph.Scatter(
                x=[p for p, _ in punkte],
                y=[y for _, y in punkte],
                mode="lines+markers",
                name=_BESCHRIFTUNG[spalte],
                line={"color": _farbe(spalte), "dash": "dot" if spalte == "true_dp" else "solid"},
            )
        )
    fig.update_layout(title=titel, xaxis_title="p", yaxis_title="Hausdorff-Abstand", **config.plot_layout())
    fig.update_yaxes(type="log", gridcolor=config.FARBEN["gitter"])
    return fig


def _polygon(P: HPolytope) -> tuple[list[float], list[float]]:
    ecken = vertices(P)
    xs = [float(v[0]) for v in ecken] + [float(ecken[0][0])]
    ys = [float(v[1]) for v in ecken] + [float(ecken[0][1])]
    return xs, ys


def zeichne_leiter(
    report: ConvergenceReport,
    C_max_co: HPolytope | None = None,
    titel: str = "Konvergenzleiter",
) -> Any:
    """Geschachtelte Leitermengen C_k (1D als Intervalle, 2D als Polygone)

    Raises:
        DimensionsError: Leitermengen mit mehr als zwei Dimensionen
    """
    graph = _plotly()
    if not report.ladder:
        return graph.Figure()
    dim = report.ladder[0].dim
    if dim not in (1, 2):
        raise DimensionsError("zeichne_leiter", "1 oder 2", dim)
    fig = graph.Figure()
    mengen = [(f"p = {report.p0 + k}", C, config.FARBEN["menge"]) for k, C in enumerate(report.ladder)]
    if C_max_co is not None:
        mengen.append(("C_max,co", C_max_co, config.FARBEN["grenze"]))
    for k, (name, C, farbe) in enumerate(mengen):
        if C.is_empty:
            logger.info("Leere Leitermenge %s übersprungen", name)
            continue
        if dim == 1:
            box = bounding_box(C)
            fig.add_trace(
                graph.Scatter(
                    x=[box.lower[0], box.upper[0]],
                    y=[k, k],
                    mode="lines+markers",
                    name=name,
                    line={"color": farbe, "width": 4},
                )
            )
        else:
            xs, ys = _polygon(C)
            fig.add_trace(
                graph.Scatter(
                    x=xs,
                    y=ys,
                    mode="lines",
                    fill="toself",
                    opacity=float(np.clip(0.25 + 0.5 * k / max(1, len(mengen) - 1), 0.25, 0.75)),
                    name=name,
                    line={"color": farbe},
                )
            )
    achsen = {"xaxis_title": "x₁", "yaxis_title": "Stufe" if dim == 1 else "x₂"}
    fig.update_layout(title=titel, **achsen, **config.plot_layout())
    if dim == 2:
        fig.update_yaxes(scaleanchor="x", scaleratio=1)
    return fig
