"""
Zentrale Konfiguration für preview-regret.

Alle numerischen Toleranzen, Iterationsgrenzen und Budgets liegen an
einer Stelle. Die Algorithmen lesen ihre Standardwerte von hier, jeder
Wert kann pro Aufruf überschrieben werden.
"""

import logging
import os
from typing import Any

from .errors import KonfigurationsError


class PreviewRegretConfig:
    """Zentrale Konfigurationsklasse für preview-regret"""

    # 🎯 Toleranzen
    TAU_FEAS: float = 1e-8  # Zulässigkeit von LP-Lösungen
    TAU_OBJ: float = 1e-7  # Zielfunktionswert
    TAU_SET: float = 1e-6  # Mengengleichheit / Fixpunkt-Abbruch
    TAU_VERT: float = 1e-9  # Zusammenfassen von Ecken
    TAU_CHOL: float = 1e-10  # Rekonstruktion L·Lᵀ
    TAU_DARE: float = 1e-10  # Residuum der Riccati-Gleichung
    TAU_PSD: float = 1e-8  # Lyapunov-Zertifikat des Ellipsoids
    TAU_LEITER: float = 1e-11  # Gleichheitstest in der Konvergenzleiter

    # 🔁 Iterationsgrenzen
    DARE_MAX_ITER: int = 10_000
    FIXPUNKT_MAX_ITER: int = 200
    BISEKTION_UNTERGRENZE: float = 1e-3
    BISEKTION_SCHRITTE: int = 40
    LYAPUNOV_MARGE: float = 1e-3
    K_MAX: int = 50

    # 🚀 Komplexitätsbudgets
    FM_MAX_ZEILEN: int = 10_000
    VERTEX_DIM_LIMIT: int = 6
    PROJEKTIONS_BUDGET: int = 8

    # 🎲 Reproduzierbarkeit
    STANDARD_SEED: int = 0
    SCHEMA_VERSION: int = 1

    # 🎨 Darstellung
    PLOTLY_THEME: str = "plotly_white"
    FIGUR_GROESSE: tuple[int, int] = (800, 500)
    FARBEN: dict[str, str] = {
        "alg1": "blue",
        "alg1_refined": "red",
        "alg2": "goldenrod",
        "alg3": "green",
        "true_dp": "black",
        "menge": "darkcyan",
        "grenze": "navy",
        "hintergrund": "white",
        "gitter": "lightgray",
    }

    # 🔧 Debug-Konfiguration
    DEBUG: bool = os.getenv("PREVIEW_REGRET_DEBUG", "false").lower() == "true"
    LOG_LEVEL: str = os.getenv("PREVIEW_REGRET_LOG_LEVEL", "WARNING").upper()

    @classmethod
    def worker_anzahl(cls) -> int:
        """Anzahl paralleler Worker (Umgebungsvariable PREVIEW_REGRET_THREADS)"""
        roh = os.getenv("PREVIEW_REGRET_THREADS")
        if roh is None or roh.strip() == "":
            return max(1, os.cpu_count() or 1)
        try:
            anzahl = int(roh)
        except ValueError:
            raise KonfigurationsError("PREVIEW_REGRET_THREADS", roh, int)
        return max(1, anzahl)

    @classmethod
    def logging_einrichten(cls, level: str | int | None = None) -> None:
        """Richtet das Root-Logging einmalig ein"""
        if level is None:
            level = "DEBUG" if cls.DEBUG else cls.LOG_LEVEL
        logging.basicConfig(
            level=level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
        logging.getLogger().setLevel(level)

    @classmethod
    def plot_layout(cls) -> dict[str, Any]:
        """Gemeinsames Plotly-Layout"""
        return {
            "template": cls.PLOTLY_THEME,
            "width": cls.FIGUR_GROESSE[0],
            "height": cls.FIGUR_GROESSE[1],
            "plot_bgcolor": cls.FARBEN["hintergrund"],
            "paper_bgcolor": cls.FARBEN["hintergrund"],
        }

    @classmethod
    def setze(cls, name: str, value: Any) -> None:
        """Setzt einen Konfigurationswert mit Typprüfung

        Args:
            name: Name des Attributs (z.B. "TAU_SET")
            value: Neuer Wert

        Raises:
            KonfigurationsError: Unbekannter Name oder falscher Typ
        """
        if not name.isupper() or not hasattr(cls, name):
            raise KonfigurationsError(name, value, object)
        erwartet = type(getattr(cls, name))
        if erwartet is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, erwartet):
            raise KonfigurationsError(name, value, erwartet)
        setattr(cls, name, value)

    @classmethod
    def als_dict(cls) -> dict[str, Any]:
        """Momentaufnahme aller Werte (für Metadaten in Zertifikaten)"""
        return {
            name: getattr(cls, name)
            for name in dir(cls)
            if name.isupper() and not name.startswith("_")
        }


# Globale Konfigurationsinstanz
config = PreviewRegretConfig()
