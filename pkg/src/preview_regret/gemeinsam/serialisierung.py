"""
JSON- und CSV-Ein-/Ausgabe mit Schema-Version.

Jedes geschriebene Dokument trägt "schema": 1. Schreibvorgänge laufen
über eine temporäre Datei, damit ein Abbruch keine halben Dateien
hinterlässt.
"""

import csv
import io
import json
import logging
import os
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from .config import config
from .errors import EingabeSyntaxError

logger = logging.getLogger(__name__)


def _json_default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"Nicht serialisierbar: {type(obj).__name__}")


def _atomar_schreiben(pfad: Path, inhalt: str) -> None:
    pfad.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=pfad.parent, prefix=f".{pfad.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(inhalt)
        os.replace(tmp, pfad)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def lade_json(pfad: str | Path) -> dict[str, Any]:
    """Liest ein JSON-Dokument und prüft die Schema-Version

    Raises:
        EingabeSyntaxError: Syntaxfehler (mit Zeilennummer) oder falsches Schema
    """
    text = Path(pfad).read_text(encoding="utf-8")
    try:
        daten = json.loads(text)
    except json.JSONDecodeError as e:
        raise EingabeSyntaxError(f"{pfad}: {e.msg}", "JSON-Objekt", zeile=e.lineno)
    if not isinstance(daten, dict):
        raise EingabeSyntaxError(str(pfad), "JSON-Objekt auf oberster Ebene")
    pruefe_schema(daten, str(pfad))
    return daten


def pruefe_schema(daten: dict[str, Any], quelle: str = "<eingabe>") -> None:
    """Akzeptiert fehlendes oder passendes "schema"-Feld"""
    schema = daten.get("schema", config.SCHEMA_VERSION)
    if schema != config.SCHEMA_VERSION:
        raise EingabeSyntaxError(
            f"{quelle}: schema={schema!r}",
            f'"schema": {config.SCHEMA_VERSION}',
        )


def schreibe_json(pfad: str | Path, daten: dict[str, Any]) -> Path:
    """Schreibt ein Dokument mit "schema"-Feld"""
    pfad = Path(pfad)
    dokument = {"schema": config.SCHEMA_VERSION, **daten}
    _atomar_schreiben(pfad, json.dumps(dokument, indent=2, default=_json_default))
    logger.debug("JSON geschrieben: %s", pfad)
    return pfad


def schreibe_csv(
    pfad: str | Path, kopf: Sequence[str], zeilen: Iterable[Sequence[Any]]
) -> Path:
    """Schreibt eine CSV-Datei mit fester Kopfzeile"""
    pfad = Path(pfad)
    puffer: list[list[str]] = [list(kopf)]
    for zeile in zeilen:
        puffer.append([_csv_wert(w) for w in zeile])
    puffer_text = io.StringIO()
    csv.writer(puffer_text, lineterminator="\n").writerows(puffer)
    _atomar_schreiben(pfad, puffer_text.getvalue())
    logger.debug("CSV geschrieben: %s (%d Zeilen)", pfad, len(puffer) - 1)
    return pfad


def lese_csv(pfad: str | Path) -> list[dict[str, str]]:
    """Liest eine CSV-Datei als Liste von Zeilen-Dictionaries"""
    with open(pfad, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def _csv_wert(wert: Any) -> str:
    if wert is None:
        return ""
    if isinstance(wert, bool):
        return "true" if wert else "false"
    if isinstance(wert, float | np.floating):
        if np.isinf(wert):
            return "inf"
        return repr(float(wert))
    return str(wert)
