"""
Tests für Rückwärtsmengen und maximale (robust) kontrollierte invariante Mengen.

Referenzwerte aus dem 1D-Beispiel x⁺ = 2x + u + d, |x| ≤ 10, |u| ≤ 1, |d| ≤ 0,5.
"""

import itertools

import pytest

from preview_regret.analyse.invarianz import (
    check_contractive,
    cmax_p_co,
    inclusion_factor,
    max_invariant_set,
    pre,
    pre_k,
    theorem1_bounds,
)
from preview_regret.analyse.regret import projected_cmax_p
from preview_regret.gemeinsam.errors import DimensionsError
from preview_regret.geometrie import (
    HPolytope,
    bounding_box,
    cartesian_power,
    cartesian_product,
    is_subset,
    project,
    scale,
    set_equal,
    support,
)
from preview_regret.systeme import augment, collaborative, collaborative_augmented

TOL = 1e-10


def radius(P: HPolytope) -> float:
    return float(bounding_box(P).upper[0])


@pytest.fixture(params=["1d", "2d"])
def fall(request, eindim, c_co_1d, zweidim):
    """(System, C_max,co) für das 1D-Beispiel und das 2D-System mit Seed 0"""
    if request.param == "1d":
        return eindim[0], c_co_1d
    system, _, C_co = zweidim(0)
    return system, C_co


class TestPre:
    """Test-Klasse für Pre und Pre^k."""

    def test_pre_von_cmax(self, eindim, c_rcis_1d):
        """[−0,5, 0,5] ist ein Fixpunkt von Pre_Σ."""
        system, _ = eindim
        assert radius(pre(system, c_rcis_1d)) == pytest.approx(0.5, abs=1e-9)

    def test_pre_kollaborativ(self, eindim):
        """Pre_D(Σ)([−c, c]) = [−(c+1,5)/2, (c+1,5)/2]."""
        system, _ = eindim
        co = collaborative(system)
        assert radius(pre(co, HPolytope.unit_box(1))) == pytest.approx(1.25, abs=1e-9)
        assert radius(pre_k(co, HPolytope.unit_box(1), None, 2)) == pytest.approx(1.375, abs=1e-9)

    def test_pre_leer(self, eindim):
        """Unerreichbares Ziel liefert die leere Menge."""
        system, _ = eindim
        ziel = HPolytope.from_box([100.0], [101.0])
        assert pre(system, ziel).is_empty

    def test_dimensionen(self, eindim):
        """X mit falscher Dimension und negatives k."""
        system, _ = eindim
        with pytest.raises(DimensionsError):
            pre(system, HPolytope.unit_box(2))
        with pytest.raises(DimensionsError):
            pre_k(system, HPolytope.unit_box(1), None, -1)


class TestFixpunkt:
    """Test-Klasse für max_invariant_set."""

    def test_cmax(self, eindim):
        """C_max = [−0,5, 0,5]."""
        system, _ = eindim
        ergebnis = max_invariant_set(system, tol=1e-12)
        assert ergebnis.konvergiert
        assert radius(ergebnis.menge) == pytest.approx(0.5, abs=1e-9)

    def test_cmax_co(self, c_co_1d):
        """C_max,co = [−1,5, 1,5]."""
        assert radius(c_co_1d) == pytest.approx(1.5, abs=1e-9)

    def test_cmax_1_projektion(self, c_max_1_1d):
        """Proj C_max,1 = [−1, 1]."""
        assert c_max_1_1d.dim == 2
        assert radius(project(c_max_1_1d, 1)) == pytest.approx(1.0, abs=1e-9)

    def test_abbruch_durch_aufrufer(self, eindim):
        """abbrechen() = True stoppt vor dem ersten Schritt."""
        system, _ = eindim
        ergebnis = max_invariant_set(system, abbrechen=lambda: True)
        assert not ergebnis.konvergiert
        assert ergebnis.iterationen == 0
        assert radius(ergebnis.menge) == pytest.approx(10.0)

    def test_iterationsgrenze(self, eindim):
        """Nach zwei Schritten ist das Iterat eine äußere Approximation."""
        system, _ = eindim
        ergebnis = max_invariant_set(system, max_iter=2)
        assert not ergebnis.konvergiert
        assert radius(ergebnis.menge) > 0.5

    def test_cmax_p_co_projektion(self, eindim, c_co_1d):
        """Proj C_max,1,co = C_max,co."""
        system, _ = eindim
        P = cmax_p_co(system, 1, c_co_1d)
        assert P.dim == 2
        assert radius(project(P, 1)) == pytest.approx(1.5, abs=1e-9)
        assert cmax_p_co(system, 0, c_co_1d) is c_co_1d


class TestKontraktion:
    """Test-Klasse für Kontraktionstest, Schachtelung und Einschlussfaktor."""

    def test_kontrahierend(self, eindim):
        """γC_max,co mit γ = 0,5 ist 1-Schritt 0-kontrahierend."""
        system, _ = eindim
        co = collaborative(system)
        X = HPolytope.from_box([-0.75], [0.75])
        assert check_contractive(co, X, co.S, 1, 0.0)

    def test_nicht_kontrahierend(self, eindim, c_co_1d):
        """C_max,co selbst ist nicht 1-Schritt 0,5-kontrahierend."""
        system, _ = eindim
        co = collaborative(system)
        assert not check_contractive(co, c_co_1d, co.S, 1, 0.5)

    def test_schachtelung(self, eindim, c_max_1_1d, c_co_1d):
        """C_max,1 × D ⊆ C_max,1,co × D in Dimension 3."""
        system, _ = eindim
        innen, aussen = theorem1_bounds(system, 2, 1, c_max_1_1d, c_co_1d)
        assert innen.dim == aussen.dim == 3
        assert is_subset(innen, aussen)

    def test_schachtelung_horizont(self, eindim, c_max_1_1d, c_co_1d):
        """p′ > p ist unzulässig."""
        system, _ = eindim
        with pytest.raises(DimensionsError):
            theorem1_bounds(system, 1, 2, c_max_1_1d, c_co_1d)

    @pytest.mark.parametrize(
        "xi, gamma, lam, erwartet",
        [
            (0.1, 0.5, 0.5, 0.2),
            (0.5, 0.5, 0.5, 2.0 / 3.0),
            (0.0, 0.4, 0.0, 0.4),
        ],
    )
    def test_einschlussfaktor(self, xi, gamma, lam, erwartet):
        """Teste beide Zweige von g(ξ)."""
        assert inclusion_factor(xi, gamma, lam) == pytest.approx(erwartet)


class TestEigenschaften:
    """Test-Klasse für Monotonie und Invarianz von Pre und Fixpunkt."""

    def test_pre_monoton(self, fall):
        """X ⊆ Y ⇒ Pre(X) ⊆ Pre(Y) für Σ und D(Σ)."""
        system, C_co = fall
        co = collaborative(system)
        X, Y = scale(C_co, 0.5), C_co
        assert is_subset(pre(co, X), pre(co, Y), 1e-7)
        C_max = max_invariant_set(system, tol=TOL).menge
        assert is_subset(pre(system, C_max), pre(system, C_co), 1e-7)

    def test_fixpunkt_ist_invariant(self, fall):
        """C ⊆ Pre(C) für die Ergebnisse von max_invariant_set."""
        system, C_co = fall
        assert is_subset(C_co, pre(collaborative(system), C_co), 1e-7)
        C_max = max_invariant_set(system, tol=TOL).menge
        assert not C_max.is_empty
        assert is_subset(C_max, pre(system, C_max), 1e-7)

    def test_projektion_monoton_in_p(self, fall):
        """Proj C_max,p wächst mit p und bleibt in C_max,co."""
        system, C_co = fall
        p_max = 3 if system.n == 1 else 2
        projektionen = [projected_cmax_p(system, p, tol=TOL)[0] for p in range(p_max + 1)]
        for kurz, lang in itertools.pairwise(projektionen):
            assert is_subset(kurz, lang, 1e-7)
        assert is_subset(projektionen[-1], C_co, 1e-7)


class TestVorschauSchranken:
    """Test-Klasse für innere und äußere Schranken von C_max,p."""

    @pytest.mark.parametrize("p_strich", [0, 1])
    def test_sandwich(self, fall, p_strich):
        """C_max,p′ × D^{p−p′} ⊆ C_max,2 ⊆ C_max,p′,co × D^{p−p′}, auch nach Projektion."""
        system, C_co = fall
        C_2 = max_invariant_set(augment(system, 2), tol=TOL).menge
        C_p_strich = max_invariant_set(augment(system, p_strich), tol=TOL).menge
        innen, aussen = theorem1_bounds(system, 2, p_strich, C_p_strich, C_co)
        assert is_subset(innen, C_2, 1e-7)
        assert is_subset(C_2, aussen, 1e-7)
        proj, _ = projected_cmax_p(system, 2, tol=TOL)
        assert is_subset(project(innen, system.n), proj, 1e-7)
        assert is_subset(proj, project(aussen, system.n), 1e-7)

    def test_kette_aeussere_schranken(self, fall):
        """C_max,2,co ⊆ C_max,1,co × D ⊆ C_max,co × D²."""
        system, C_co = fall
        C_1co = cmax_p_co(system, 1, C_co)
        C_2co = cmax_p_co(system, 2, C_co)
        mitte = cartesian_product(C_1co, system.D)
        assert is_subset(C_2co, mitte, 1e-7)
        assert is_subset(mitte, cartesian_product(C_co, cartesian_power(system.D, 2)), 1e-7)

    @pytest.mark.parametrize("p", [1, 2])
    def test_cmax_p_co_gleich_fixpunkt(self, fall, p):
        """Pre^p(C_max,co × D^p) stimmt mit der Fixpunktiteration auf D(Σ_p) überein."""
        system, C_co = fall
        direkt = max_invariant_set(collaborative_augmented(system, p), tol=TOL).menge
        assert set_equal(cmax_p_co(system, p, C_co), direkt, 1e-6)


class TestEinschluss:
    """Test-Klasse für Pre^N(ξ·C_max,co) ⊇ g(ξ)·C_max,co im 1D-Beispiel mit N = 1."""

    def setup_method(self):
        self.gamma = 0.5
        self.lam = 0.5

    def test_voraussetzung(self, eindim, c_co_1d):
        """γC_max,co ist 1-Schritt λ-kontrahierend."""
        system, _ = eindim
        co = collaborative(system)
        assert check_contractive(co, scale(c_co_1d, self.gamma), co.S, 1, self.lam)

    @pytest.mark.parametrize("xi", [0.1, 0.25, 0.6])
    def test_einschluss(self, eindim, c_co_1d, xi):
        """Beide Zweige von g(ξ) um λγ = 0,25."""
        system, _ = eindim
        co = collaborative(system)
        g = inclusion_factor(xi, self.gamma, self.lam)
        assert is_subset(scale(c_co_1d, g), pre_k(co, scale(c_co_1d, xi), co.S, 1), 1e-9)

    @pytest.mark.parametrize("alpha", [0.2, 0.5, 0.9])
    @pytest.mark.parametrize("xi_x, xi_y", [(0.1, 0.6), (0.25, 1.0), (0.0, 0.6)])
    def test_superadditiv(self, eindim, c_co_1d, alpha, xi_x, xi_y):
        """α·Pre(X) ⊕ β·Pre(Y) ⊆ Pre(αX ⊕ βY) mit α + β = 1, über die Stützfunktion."""
        system, _ = eindim
        co = collaborative(system)
        beta = 1.0 - alpha
        pre_x = pre(co, scale(c_co_1d, xi_x))
        pre_y = pre(co, scale(c_co_1d, xi_y))
        pre_summe = pre(co, scale(c_co_1d, alpha * xi_x + beta * xi_y))
        for richtung in ([1.0], [-1.0]):
            links = alpha * support(pre_x, richtung) + beta * support(pre_y, richtung)
            assert links <= support(pre_summe, richtung) + 1e-9
