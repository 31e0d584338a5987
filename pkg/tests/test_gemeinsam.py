"""
Tests für Konfiguration, Fehlerklassen und Serialisierung.
"""

import json
import math

import pytest

from preview_regret.gemeinsam.config import config
from preview_regret.gemeinsam.errors import (
    DimensionsError,
    EingabeSyntaxError,
    KonfigurationsError,
    NichtInvariantError,
    PreviewRegretError,
    handle_preview_regret_error,
)
from preview_regret.gemeinsam.serialisierung import lade_json, lese_csv, schreibe_csv, schreibe_json


class TestKonfiguration:
    """Test-Klasse für PreviewRegretConfig."""

    def setup_method(self):
        self.alt = config.TAU_SET

    def teardown_method(self):
        config.TAU_SET = self.alt

    def test_setze(self):
        """Teste typgeprüftes Setzen, int wird für float akzeptiert."""
        config.setze("TAU_SET", 1e-7)
        assert config.TAU_SET == 1e-7
        config.setze("TAU_SET", 1)
        assert isinstance(config.TAU_SET, float)

    def test_setze_falscher_typ(self):
        """Zeichenkette statt Zahl."""
        with pytest.raises(KonfigurationsError, match="TAU_SET"):
            config.setze("TAU_SET", "klein")

    def test_setze_unbekannt(self):
        """Unbekannter Parameter."""
        with pytest.raises(KonfigurationsError):
            config.setze("GIBT_ES_NICHT", 1)

    def test_worker_anzahl(self, monkeypatch):
        """Teste PREVIEW_REGRET_THREADS."""
        monkeypatch.setenv("PREVIEW_REGRET_THREADS", "3")
        assert config.worker_anzahl() == 3
        monkeypatch.setenv("PREVIEW_REGRET_THREADS", "viele")
        with pytest.raises(KonfigurationsError):
            config.worker_anzahl()
        monkeypatch.delenv("PREVIEW_REGRET_THREADS")
        assert config.worker_anzahl() >= 1

    def test_als_dict(self):
        """Momentaufnahme enthält Toleranzen und Budgets."""
        werte = config.als_dict()
        assert werte["SCHEMA_VERSION"] == 1
        assert "PROJEKTIONS_BUDGET" in werte


class TestFehlerklassen:
    """Test-Klasse für die Fehlerhierarchie."""

    def test_tipp_im_text(self):
        """Vorschläge erscheinen mit 💡 Tipp."""
        fehler = DimensionsError("augment", 2, 3)
        assert "💡 Tipp" in str(fehler)
        assert isinstance(fehler, PreviewRegretError)

    def test_benutzermeldung(self):
        """handle_preview_regret_error liefert die Anwendermeldung."""
        meldung = handle_preview_regret_error(EingabeSyntaxError("x", "JSON", zeile=4))
        assert "Zeile 4" in meldung
        assert "💡" in meldung

    def test_fremde_fehler(self):
        """Teste FileNotFoundError und unbekannte Fehler."""
        assert "nicht gefunden" in handle_preview_regret_error(FileNotFoundError(2, "weg", "a.json"))
        assert "Unerwarteter" in handle_preview_regret_error(RuntimeError("kaputt"))

    def test_verletzender_punkt(self):
        """NichtInvariantError trägt den Punkt im Kontext."""
        fehler = NichtInvariantError([1.0], 0.25)
        assert fehler.context["punkt"] == [1.0]


class TestSerialisierung:
    """Test-Klasse für JSON- und CSV-Ein-/Ausgabe."""

    def test_json_schema(self, tmp_path):
        """Geschriebene Dokumente tragen schema = 1."""
        pfad = schreibe_json(tmp_path / "a.json", {"wert": 1.5})
        daten = lade_json(pfad)
        assert daten == {"schema": 1, "wert": 1.5}

    def test_json_falsches_schema(self, tmp_path):
        """Teste Ablehnung einer fremden Schema-Version."""
        pfad = tmp_path / "b.json"
        pfad.write_text(json.dumps({"schema": 2}))
        with pytest.raises(EingabeSyntaxError, match="schema"):
            lade_json(pfad)

    def test_json_syntaxfehler_mit_zeile(self, tmp_path):
        """Syntaxfehler nennen die Zeile."""
        pfad = tmp_path / "c.json"
        pfad.write_text('{\n  "a": 1,\n  "b": \n}')
        with pytest.raises(EingabeSyntaxError) as info:
            lade_json(pfad)
        assert info.value.zeile == 4

    def test_csv_werte(self, tmp_path):
        """None, inf und Wahrheitswerte werden lesbar geschrieben."""
        pfad = schreibe_csv(tmp_path / "t.csv", ["p", "d", "ok", "leer"], [[1, math.inf, True, None], [2, 0.25, False, ""]])
        zeilen = lese_csv(pfad)
        assert zeilen[0] == {"p": "1", "d": "inf", "ok": "true", "leer": ""}
        assert float(zeilen[1]["d"]) == 0.25
        assert zeilen[1]["ok"] == "false"

    def test_keine_temporaeren_reste(self, tmp_path):
        """Atomares Schreiben hinterlässt nur die Zieldatei."""
        schreibe_json(tmp_path / "d.json", {})
        assert [p.name for p in tmp_path.iterdir()] == ["d.json"]
