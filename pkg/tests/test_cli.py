"""
Tests für die Kommandozeile: Ausgabedateien und Exit-Codes.
"""

import json

import pytest

from preview_regret.cli import EXIT_ANNAHME, EXIT_BUDGET, EXIT_EINGABE, EXIT_OK, SCHRANKEN_KOPF, lade_system, main
from preview_regret.gemeinsam.errors import EingabeSyntaxError
from preview_regret.gemeinsam.serialisierung import lade_json, lese_csv
from preview_regret.geometrie import HPolytope, bounding_box

pytestmark = pytest.mark.integration


def schreibe(pfad, daten) -> str:
    pfad.write_text(json.dumps(daten), encoding="utf-8")
    return str(pfad)


def box_grenze(dokument: dict) -> float:
    return float(bounding_box(HPolytope.from_dict(dokument["polytop"])).upper[0])


@pytest.fixture
def system_1d(tmp_path):
    return schreibe(tmp_path / "system.json", {"modell": "1d"})


class TestSystemLaden:
    """Test-Klasse für lade_system."""

    def test_modell_1d(self, system_1d):
        """{"modell": "1d"} baut das Standardbeispiel."""
        system = lade_system(system_1d)
        assert system.name == "eindimensional"

    def test_systemdaten(self, tmp_path):
        """Vollständige Systembeschreibung unter "system"."""
        daten = {
            "system": {
                "A": [[2.0]],
                "B": [[1.0]],
                "E": [[1.0]],
                "D": {"H": [[1.0], [-1.0]], "h": [0.5, 0.5]},
                "S_xu": HPolytope.from_box([-10, -1], [10, 1]).to_dict(),
            }
        }
        system = lade_system(schreibe(tmp_path / "s.json", daten))
        assert (system.n, system.m, system.l) == (1, 1, 1)

    def test_unbekanntes_modell(self, tmp_path):
        """Teste unbekannten Modellnamen."""
        with pytest.raises(EingabeSyntaxError):
            lade_system(schreibe(tmp_path / "s.json", {"modell": "3d"}))


class TestRcis:
    """Test-Klasse für preview-regret rcis."""

    def test_cmax(self, system_1d, tmp_path):
        """C_max = [−0,5, 0,5]."""
        assert main(["rcis", system_1d, "--tol", "1e-12", "--out", str(tmp_path)]) == EXIT_OK
        dokument = lade_json(tmp_path / "rcis.json")
        assert dokument["art"] == "C_max"
        assert dokument["konvergiert"] is True
        assert box_grenze(dokument) == pytest.approx(0.5, abs=1e-9)

    def test_kollaborativ(self, system_1d, tmp_path):
        """--co liefert C_max,co = [−1,5, 1,5]."""
        assert main(["rcis", system_1d, "--co", "--tol", "1e-12", "--out", str(tmp_path)]) == EXIT_OK
        assert box_grenze(lade_json(tmp_path / "rcis.json")) == pytest.approx(1.5, abs=1e-9)

    def test_vorschau_null_gleich_ohne(self, system_1d, tmp_path):
        """--preview 0 entspricht dem Aufruf ohne Vorschau."""
        main(["rcis", system_1d, "--out", str(tmp_path / "a")])
        main(["rcis", system_1d, "--preview", "0", "--out", str(tmp_path / "b")])
        a = lade_json(tmp_path / "a" / "rcis.json")
        b = lade_json(tmp_path / "b" / "rcis.json")
        assert a["polytop"] == b["polytop"]

    def test_vorschau(self, system_1d, tmp_path):
        """C_max,1 lebt in (x, d₁)."""
        assert main(["rcis", system_1d, "--preview", "1", "--out", str(tmp_path)]) == EXIT_OK
        dokument = lade_json(tmp_path / "rcis.json")
        assert dokument["art"] == "C_max,p"
        assert len(dokument["polytop"]["H"][0]) == 2

    def test_syntaxfehler(self, tmp_path, capsys):
        """Kaputtes JSON: Exit 2 und keine Ausgabedatei."""
        pfad = tmp_path / "kaputt.json"
        pfad.write_text('{"modell": "1d",', encoding="utf-8")
        assert main(["rcis", str(pfad), "--out", str(tmp_path / "aus")]) == EXIT_EINGABE
        assert not (tmp_path / "aus" / "rcis.json").exists()
        assert "Format" in capsys.readouterr().err

    def test_datei_fehlt(self, tmp_path):
        """Nicht vorhandene Eingabedatei."""
        assert main(["rcis", str(tmp_path / "gibt_es_nicht.json")]) == EXIT_EINGABE

    def test_iterationsgrenze(self, system_1d, tmp_path):
        """Ohne Konvergenz: Exit 4, die äußere Approximation liegt trotzdem vor."""
        assert main(["rcis", system_1d, "--max-iter", "2", "--out", str(tmp_path)]) == EXIT_BUDGET
        dokument = lade_json(tmp_path / "rcis.json")
        assert dokument["konvergiert"] is False
        assert box_grenze(dokument) > 0.5

    def test_unbekannte_vorlage(self, tmp_path):
        """Konfigurationsfehler sind Eingabefehler."""
        pfad = schreibe(tmp_path / "v.json", {"vorlage": "segelboot"})
        assert main(["rcis", pfad, "--out", str(tmp_path)]) == EXIT_EINGABE


class TestRegret:
    """Test-Klasse für preview-regret regret."""

    def test_schranken(self, system_1d, tmp_path):
        """Spalten, Algorithmus 2 scharf, p̄ = inf."""
        out = tmp_path / "schranken.csv"
        code = main(
            ["regret", system_1d, "--alg", "2", "3", "--p-max", "4", "--tol", "1e-10", "--out", str(out)]
        )
        assert code == EXIT_OK
        zeilen = lese_csv(out)
        assert list(zeilen[0]) == SCHRANKEN_KOPF
        assert [int(z["p"]) for z in zeilen] == [1, 2, 3, 4]
        for z in zeilen:
            p = int(z["p"])
            assert float(z["bound_alg2"]) == pytest.approx(2.0**-p, abs=1e-9)
            assert float(z["true_dp"]) == pytest.approx(2.0**-p, abs=1e-9)
            assert float(z["bound_alg3"]) == pytest.approx(2.0**-p, abs=1e-9)
            assert z["p_bar"] == "inf"
            assert z["bound_alg1"] == ""
        dokument = lade_json(tmp_path / "schranken_zertifikate.json")
        assert dokument["seed"] == 0
        assert set(dokument["zertifikate"]) == {"alg2"}

    def test_mehrere_N(self, system_1d, tmp_path):
        """Mehrere Schrittweiten ergeben mehrere Zertifikate und ihre Einhüllende."""
        out = tmp_path / "s.csv"
        code = main(["regret", system_1d, "--alg", "2", "--N", "1", "2", "--p-max", "3", "--ohne-true-dp", "--out", str(out)])
        assert code == EXIT_OK
        dokument = lade_json(tmp_path / "s_zertifikate.json")
        assert [c["N"] for c in dokument["zertifikate"]["alg2"]] == [1, 2]
        assert all(z["true_dp"] == "" for z in lese_csv(out))

    def test_nicht_steuerbar(self, tmp_path):
        """Algorithmus 2 ohne Steuerbarkeit: Exit 3, CSV trotzdem geschrieben."""
        daten = {
            "A": [[2.0, 0.0], [0.0, 0.5]],
            "B": [[1.0], [0.0]],
            "E": [[1.0], [0.0]],
            "D": {"H": [[1.0], [-1.0]], "h": [0.5, 0.5]},
            "S_xu": HPolytope.from_box([-10, -10, -1], [10, 10, 1]).to_dict(),
        }
        pfad = schreibe(tmp_path / "s.json", daten)
        out = tmp_path / "s.csv"
        assert main(["regret", pfad, "--alg", "2", "--p-max", "2", "--ohne-true-dp", "--out", str(out)]) == EXIT_ANNAHME
        assert out.exists()
        assert "alg2" in lade_json(tmp_path / "s_zertifikate.json")["fehler"]

    def test_reproduzierbar(self, system_1d, tmp_path):
        """Zwei Läufe mit gleichen Argumenten schreiben bytegleiche Dateien."""
        for lauf in ("a", "b"):
            (tmp_path / lauf).mkdir()
            args = ["--seed", "3", "regret", system_1d, "--alg", "1", "2", "3", "--p-max", "3", "--tol", "1e-10"]
            assert main([*args, "--out", str(tmp_path / lauf / "s.csv")]) == EXIT_OK
        for name in ("s.csv", "s_zertifikate.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        zeilen = lese_csv(tmp_path / "a" / "s.csv")
        assert [int(z["p"]) for z in zeilen] == [1, 2, 3]
        assert all(z["bound_alg1"] != "" for z in zeilen)

    def test_horizont(self, system_1d, tmp_path):
        """--p-max unter --p0."""
        assert main(["regret", system_1d, "--p0", "3", "--p-max", "2", "--out", str(tmp_path / "s.csv")]) == EXIT_EINGABE


class TestMpcKommando:
    """Test-Klasse für preview-regret mpc."""

    def setup_method(self):
        self.endmenge = {"polytop": HPolytope.from_box([-0.5], [0.5]).to_dict()}

    def test_bereich_und_simulation(self, system_1d, tmp_path):
        """Bereich, Schrankenkurve und ein Protokoll pro Störfolge."""
        terminal = schreibe(tmp_path / "c.json", self.endmenge)
        out = tmp_path / "mpc"
        code = main(
            ["mpc", system_1d, "--terminal", terminal, "--p", "1", "--p-max", "4", "--simulate", "20", "--streams", "2", "--out", str(out)]
        )
        assert code == EXIT_OK
        bereich = lade_json(out / "bereich.json")["bereich"]
        assert bounding_box(HPolytope.from_dict(bereich["projection"])).upper[0] == pytest.approx(1.0, abs=1e-6)
        kurve = lese_csv(out / "schranke_mpc.csv")
        assert [int(z["p"]) for z in kurve] == [0, 1, 2, 3, 4]
        assert float(kurve[2]["bound"]) == pytest.approx(0.25, abs=1e-5)
        for i in range(2):
            protokoll = lese_csv(out / f"trajektorie_{i}.csv")
            assert len(protokoll) == 20
            assert all(z["feasible"] == "true" for z in protokoll)

    def test_nicht_invariante_endmenge(self, system_1d, tmp_path, capsys):
        """[−1, 1] ist keine RCIS: Exit 2 mit verletzendem Punkt."""
        terminal = schreibe(tmp_path / "c.json", {"polytop": HPolytope.unit_box(1).to_dict()})
        assert main(["mpc", system_1d, "--terminal", terminal, "--out", str(tmp_path)]) == EXIT_EINGABE
        assert "Verletzender Punkt" in capsys.readouterr().err


class TestDemo:
    """Test-Klasse für preview-regret demo-1d."""

    def test_demo(self, tmp_path, capsys):
        """Direkte Rechnung, Algorithmus 2 und Formel stimmen überein."""
        assert main(["demo-1d", "--p-max", "4", "--out", str(tmp_path)]) == EXIT_OK
        zeilen = lese_csv(tmp_path / "schranken.csv")
        for z in zeilen:
            p = int(z["p"])
            assert float(z["true_dp"]) == pytest.approx(2.0**-p, abs=1e-9)
            assert float(z["bound_alg2"]) == pytest.approx(2.0**-p, abs=1e-9)
            assert z["p_bar"] == "inf"
        dokument = lade_json(tmp_path / "zertifikate.json")
        assert dokument["orakel"]["a"] == "2"
        assert len(dokument["vergleich"]) == 4
        assert "max |d_p − Formel|" in capsys.readouterr().out

    @pytest.mark.slow
    def test_demo_lange_vorschau(self, tmp_path):
        """p bis 10 mit automatisch angehobenem Budget."""
        assert main(["demo-1d", "--out", str(tmp_path)]) == EXIT_OK
        zeilen = lese_csv(tmp_path / "schranken.csv")
        assert float(zeilen[-1]["true_dp"]) == pytest.approx(2.0**-10, abs=1e-9)
