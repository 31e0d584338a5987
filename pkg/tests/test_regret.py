"""
Tests für die Schranken des Sicherheits-Regrets d_p.

Im 1D-Beispiel gilt d_p = 2^{−p}, λ0(p0 = 1) = 2/3 und γ_max = 1/2; die
Nullkontraktion ist dort scharf.
"""

import itertools
import math

import numpy as np
import pytest

from preview_regret.analyse.regret import (
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
from preview_regret.gemeinsam.errors import (
    AnnahmeError,
    DimensionsError,
    EingabeSyntaxError,
    KomplexitaetsError,
    NichtSteuerbarError,
    NormalformError,
)
from preview_regret.geometrie import HPolytope, bounding_box, is_subset, set_equal
from preview_regret.systeme import Equilibrium, LinearSystem


def alg2_1d() -> RegretCertificate:
    return RegretCertificate.build("alg2", 2.0 / 3.0, 0.5, 1, 0.0, 1.5, 1)


class TestZertifikat:
    """Test-Klasse für RegretCertificate und die Schrankenformeln."""

    def test_alg2_konstanten(self):
        """a = 1 − γ, c = 1 − λ0, λ = 0."""
        cert = alg2_1d()
        assert cert.a == pytest.approx(0.5)
        assert cert.c == pytest.approx(1.0 / 3.0)
        assert cert.lam == 0.0
        assert cert.k0 == 0

    @pytest.mark.parametrize("p", range(1, 11))
    def test_alg2_schranke_scharf(self, p):
        """Die Schranke trifft d_p = 2^{−p} exakt."""
        assert bound_dp(alg2_1d(), p) == pytest.approx(2.0**-p, rel=1e-12)

    def test_grenznutzen(self):
        """d_2 − d_3 ≤ c(1 + a)a¹r_co = 0,375."""
        assert bound_marginal(alg2_1d(), 2) == pytest.approx(0.375)

    def test_horizont_unter_p0(self):
        """p < p0 ist nicht definiert."""
        with pytest.raises(DimensionsError):
            bound_dp(alg2_1d(), 0)

    def test_k0(self):
        """k0(0,1; 0,5; 0,5) = 2, λ0 = 0 ergibt inf."""
        assert k0_of(0.1, 0.5, 0.5) == 2
        assert math.isinf(k0_of(0.0, 0.5, 0.5))
        assert k0_of(0.6, 0.5, 0.5) == 0

    def test_k0_unendlich(self):
        """Ohne λ0 bleibt nur r_co."""
        cert = RegretCertificate.build("alg1", 0.0, 0.5, 1, 0.5, 1.5, 1)
        assert bound_dp(cert, 7) == 1.5

    def test_alg1_zwei_phasen(self):
        """Vor k0 gilt 1 − λ0λ^{−j}, danach c·aʲ."""
        cert = RegretCertificate.build("alg1", 0.1, 0.5, 1, 0.5, 1.0, 0)
        assert cert.k0 == 2
        assert bound_dp(cert, 1) == pytest.approx(0.8)
        a = 0.5 / 0.75
        assert cert.a == pytest.approx(a)
        assert bound_dp(cert, 5) == pytest.approx(cert.c * a**5)

    def test_einhuellende(self):
        """Minimum über mehrere Zertifikate."""
        langsam = RegretCertificate.build("alg2", 2.0 / 3.0, 0.25, 1, 0.0, 1.5, 1)
        assert bound_envelope([langsam, alg2_1d()], 4) == pytest.approx(2.0**-4)
        assert math.isinf(bound_envelope([alg2_1d()], 0))

    def test_ungueltig(self):
        """Unbekanntes Verfahren und N = 0."""
        with pytest.raises(EingabeSyntaxError):
            RegretCertificate.build("alg9", 0.5, 0.5, 1, 0.5, 1.0, 0)
        with pytest.raises(DimensionsError):
            RegretCertificate.build("alg2", 0.5, 0.5, 0, 0.5, 1.0, 0)

    def test_dict(self):
        """Zertifikate lassen sich speichern und laden."""
        cert = alg2_1d()
        assert RegretCertificate.from_dict(cert.to_dict()) == cert
        with pytest.raises(EingabeSyntaxError):
            RegretCertificate.from_dict({"method": "alg2"})


class TestLambda0:
    """Test-Klasse für estimate_lambda0 und die Ursprungsverschiebung."""

    def test_exakt(self, c_co_1d, c_max_1_1d):
        """λ0 = 1/1,5 mit Proj C_max,1 = [−1, 1]."""
        assert estimate_lambda0(c_co_1d, c_max_1_1d, "exact") == pytest.approx(2.0 / 3.0, abs=1e-9)

    def test_kodiert_ist_untere_schaetzung(self, c_co_1d, c_max_1_1d):
        """Ohne Projektion höchstens der exakte Wert."""
        kodiert = estimate_lambda0(c_co_1d, c_max_1_1d, "encoded")
        assert 0.0 < kodiert <= estimate_lambda0(c_co_1d, c_max_1_1d, "exact") + 1e-9

    def test_baseline(self, c_co_1d, c_max_1_1d):
        """ε*/r* und ε* = 0 ergibt 0."""
        assert estimate_lambda0(c_co_1d, c_max_1_1d, "baseline", eps=0.5) == pytest.approx(1.0 / 3.0, abs=1e-9)
        assert estimate_lambda0(c_co_1d, c_max_1_1d, "baseline", eps=0.0) == 0.0

    def test_unbekanntes_verfahren(self, c_co_1d, c_max_1_1d):
        """Teste Ablehnung eines unbekannten Verfahrens."""
        with pytest.raises(EingabeSyntaxError):
            estimate_lambda0(c_co_1d, c_max_1_1d, "raten")

    def test_verschiebung(self):
        """C_max,co um −x_e, C_max,p0 um −(x_e, d_e)."""
        eq = Equilibrium(np.array([1.0]), np.array([-1.0]), np.array([0.25]))
        C_co, C_p0 = shift_sets(eq, HPolytope.unit_box(1), HPolytope.unit_box(2), 1)
        assert C_co.contains([-2.0])
        assert C_p0.contains([-2.0, -1.25])
        ursprung = Equilibrium(np.zeros(1), np.zeros(1), np.zeros(1))
        assert shift_sets(ursprung, C_co, C_p0, 1) == (C_co, C_p0)


class TestAlgorithmen:
    """Test-Klasse für algorithm1, algorithm2 und algorithm3 im 1D-Beispiel."""

    def test_algorithm2(self, eindim, c_co_1d, c_max_1_1d):
        """λ0 = 2/3, γ_max = 1/2 und Schranke 2^{−p}."""
        system, orakel = eindim
        cert = algorithm2(system, c_co_1d, c_max_1_1d, 1)
        assert cert.lambda0 == pytest.approx(orakel.lambda0(1), abs=1e-9)
        assert cert.gamma == pytest.approx(orakel.gamma_max(), abs=1e-9)
        assert cert.N == 1
        for p in range(1, 11):
            assert bound_dp(cert, p) == pytest.approx(orakel.dp(p), abs=1e-9)

    def test_algorithm2_nicht_steuerbar(self):
        """[B E] erreicht den zweiten Zustand nicht."""
        system = LinearSystem(
            A=np.diag([2.0, 0.5]),
            B=[[1.0], [0.0]],
            E=[[1.0], [0.0]],
            D=HPolytope.from_box([-0.5], [0.5]),
            S_xu=HPolytope.from_box([-10, -10, -1], [10, 10, 1]),
        )
        with pytest.raises(NichtSteuerbarError):
            algorithm2(system, HPolytope.unit_box(2), HPolytope.unit_box(2), 1)

    def test_algorithm1_gueltig(self, eindim, c_co_1d, c_max_1_1d):
        """Die Ellipsoid-Schranke liegt über d_p, die nachgeschärfte darunter."""
        system, orakel = eindim
        grob = algorithm1(system, c_co_1d, c_max_1_1d, 1)
        fein = algorithm1(system, c_co_1d, c_max_1_1d, 1, refine=True)
        assert grob.certified
        assert fein.method == "alg1_refined"
        assert fein.gamma >= grob.gamma
        for p in range(1, 9):
            assert bound_dp(grob, p) >= orakel.dp(p) - 1e-9
            assert bound_dp(fein, p) >= orakel.dp(p) - 1e-9
            assert bound_dp(fein, p) <= bound_dp(grob, p) + 1e-12

    def test_algorithm3_keine_endliche_konvergenz(self, eindim, c_co_1d, c_max_1_1d):
        """Im 1D-Beispiel ist p̄ = ∞ und die Leiter halbiert den Abstand."""
        system, _ = eindim
        report = algorithm3(system, c_co_1d, c_max_1_1d, 1, k_max=12)
        assert not report.converged
        assert len(report.ladder) == 13
        for k in range(11):
            assert report.distances[k] == pytest.approx(2.0 ** -(1 + k), abs=1e-9)
        assert report.distance_at(4) == pytest.approx(2.0**-4, abs=1e-9)
        assert report.to_dict()["p_bar"] == "inf"

    def test_algorithm3_sofortige_konvergenz(self, eindim, c_co_1d):
        """Start bei C_max,co: p̄ = p0."""
        system, _ = eindim
        report = algorithm3(system, c_co_1d, c_co_1d, 3)
        assert report.p_bar == 3
        assert report.distance_at(10) == 0.0
        with pytest.raises(DimensionsError):
            report.distance_at(2)


class TestValidierungsorakel:
    """Test-Klasse für projected_cmax_p und true_dp."""

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_projektion(self, eindim, p):
        """Proj C_max,p = [−(1,5 − 2^{−p}), 1,5 − 2^{−p}]."""
        system, orakel = eindim
        proj, konvergiert = projected_cmax_p(system, p, tol=1e-10)
        assert konvergiert
        assert bounding_box(proj).upper[0] == pytest.approx(orakel.r_proj(p), abs=1e-9)

    @pytest.mark.parametrize("p", [1, 2, 4])
    def test_true_dp(self, eindim, c_co_1d, p):
        """d_p = 2^{−p}."""
        system, orakel = eindim
        assert true_dp(system, p, c_co_1d, tol=1e-10) == pytest.approx(orakel.dp(p), abs=1e-9)

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [6, 8, 10])
    def test_true_dp_lange_vorschau(self, eindim, c_co_1d, p):
        """Lange Vorschau mit angehobenem Budget."""
        system, orakel = eindim
        assert true_dp(system, p, c_co_1d, budget=11, tol=1e-10) == pytest.approx(orakel.dp(p), abs=1e-9)

    def test_budget(self, eindim, c_co_1d):
        """n + p·l über dem Budget."""
        system, _ = eindim
        with pytest.raises(KomplexitaetsError):
            true_dp(system, 9, c_co_1d)


def zertifikate_2d(system, C_co, C_1) -> dict[str, RegretCertificate]:
    """alg1, alg1 nachgeschärft und alg2 mit N = 2 und N = 8; nicht verifizierbare fallen weg"""
    bauplaene = {
        "alg1": lambda: algorithm1(system, C_co, C_1, 1),
        "alg1_refined": lambda: algorithm1(system, C_co, C_1, 1, refine=True),
        "alg2_N2": lambda: algorithm2(system, C_co, C_1, 1, N=2),
        "alg2_N8": lambda: algorithm2(system, C_co, C_1, 1, N=8),
    }
    zertifikate = {}
    for name, bauen in bauplaene.items():
        try:
            zertifikate[name] = bauen()
        except (AnnahmeError, NormalformError):
            continue
    return zertifikate


@pytest.mark.slow
class TestZweidimensional:
    """Test-Klasse für die Schranken am gesäten 2D-System."""

    def test_true_dp_lange_vorschau(self, zweidim):
        """d_4 für Seed 1 läuft trotz schlecht konditionierter Redundanz-LPs durch."""
        system, _, C_co = zweidim(1)
        d4 = true_dp(system, 4, C_co)
        assert math.isfinite(d4)
        assert d4 >= 0.0
        assert d4 <= true_dp(system, 2, C_co) + 1e-6

    @pytest.mark.parametrize("seed", range(20))
    def test_schranken_ueber_d_p(self, zweidim, seed):
        """Jede zertifizierte Schranke liegt über dem direkt berechneten d_p."""
        system, _, C_co = zweidim(seed)
        if C_co.is_empty or not C_co.is_origin_interior:
            pytest.skip("C_max,co ohne Ursprung im Inneren")
        C_1, _ = projected_cmax_p(system, 1)
        zertifikate = zertifikate_2d(system, C_co, C_1)
        werte = {p: true_dp(system, p, C_co) for p in (1, 2, 3)}
        for name, cert in zertifikate.items():
            if not cert.certified:
                continue
            for p, d_p in werte.items():
                assert d_p <= bound_dp(cert, p) + 1e-6, f"{name}, p = {p}"
        if "alg1" in zertifikate and "alg1_refined" in zertifikate:
            grob, fein = zertifikate["alg1"], zertifikate["alg1_refined"]
            assert fein.gamma >= grob.gamma - 1e-12
            assert fein.a <= grob.a + 1e-12

    @pytest.mark.parametrize("seed", [0, 3, 5])
    def test_algorithm3_leiter(self, zweidim, seed):
        """Die Leiter wächst, ihr Abstand liegt zwischen d_p und der alg2-Schranke und verschwindet bei Konvergenz."""
        system, _, C_co = zweidim(seed)
        C_1, _ = projected_cmax_p(system, 1)
        report = algorithm3(system, C_co, C_1, 1, k_max=6)
        for a, b in itertools.pairwise(report.distances):
            assert b <= a + 1e-7
        for k, abstand in enumerate(report.distances[:3]):
            assert abstand >= true_dp(system, 1 + k, C_co) - 1e-6
        for innen, aussen in itertools.pairwise(report.ladder):
            assert is_subset(innen, aussen, 1e-6)
        try:
            cert = algorithm2(system, C_co, C_1, 1, N=2)
        except (AnnahmeError, NormalformError):
            cert = None
        if cert is not None and cert.certified:
            for k in range(len(report.distances)):
                assert report.distance_at(1 + k) <= bound_dp(cert, 1 + k) + 1e-6
        if report.converged:
            assert set_equal(report.ladder[-1], C_co, 1e-6)
            assert report.distance_at(int(report.p_bar)) == pytest.approx(0.0, abs=1e-6)
