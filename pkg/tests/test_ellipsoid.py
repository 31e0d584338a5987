"""
Tests für kontrahierende Ellipsoide und die Parameter γ, N, λ.
"""

import numpy as np
import pytest

from preview_regret.analyse.ellipsoid import (
    ContractiveEllipsoid,
    find_contractive_ellipsoid,
    max_c0,
    min_c_out,
    theorem6_params,
)
from preview_regret.gemeinsam.errors import AnnahmeError, NichtStabilisierbarError, NormalformError
from preview_regret.geometrie import HPolytope
from preview_regret.systeme import LinearSystem, build_2d_random, collaborative


class TestEllipsoidSuche:
    """Test-Klasse für find_contractive_ellipsoid."""

    def test_1d_zertifikat(self, eindim):
        """Das Lyapunov-Zertifikat hält und λ_a < 1."""
        system, _ = eindim
        co = collaborative(system)
        ell = find_contractive_ellipsoid(co)
        assert ell.lambda_a < 1.0
        assert ell.lyapunov_residuum(co) <= 1e-8
        assert ell.R1.shape == (1, 1)
        assert ell.R2.shape == (1, 1)

    @pytest.mark.parametrize("c", [1.0, 2.5])
    def test_randpunkte_2d(self, c):
        """Randpunkte von E(c) landen unter dem Regler in E(λ_a·c)."""
        co = collaborative(build_2d_random(0))
        ell = find_contractive_ellipsoid(co)
        A_c = ell.closed_loop(co)
        for winkel in np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False):
            v = np.array([np.cos(winkel), np.sin(winkel)])
            x = c * v / np.sqrt(v @ ell.Q_inv @ v)
            assert ell.contains(x, c)
            assert ell.contains(A_c @ x, ell.lambda_a * c)

    def test_nicht_stabilisierbar(self):
        """Instabiler Modus ohne Eingang und ohne Störung."""
        system = LinearSystem(
            A=np.diag([2.0, 0.5]),
            B=[[0.0], [1.0]],
            E=[[0.0], [1.0]],
            D=HPolytope.unit_box(1),
            S_xu=HPolytope.unit_box(3),
        )
        with pytest.raises(NichtStabilisierbarError):
            find_contractive_ellipsoid(collaborative(system))


class TestSkalierungen:
    """Test-Klasse für c0 und c_out."""

    def setup_method(self):
        # Deadbeat-Regler u = −x, u_d = −x im 1D-Beispiel
        self.ell = ContractiveEllipsoid(np.eye(1), -np.eye(1), -np.eye(1), 0.01)

    def test_c0(self, eindim):
        """|u_d| = |x| ≤ 0,5 ist die bindende Zeile."""
        system, _ = eindim
        assert max_c0(self.ell, system.S_xu, system.D) == pytest.approx(0.5)

    def test_c0_normalform(self, eindim):
        """S_xu ohne Ursprung im Inneren."""
        system, _ = eindim
        with pytest.raises(NormalformError):
            max_c0(self.ell, HPolytope.from_box([0.1, -1.0], [10.0, 1.0]), system.D)

    def test_c_out(self, c_co_1d):
        """C_max,co ⊆ E(1,5) für Q = 1."""
        assert min_c_out(c_co_1d, self.ell.Q) == pytest.approx(1.5, abs=1e-9)
        assert min_c_out(c_co_1d, self.ell.Q, "box") == pytest.approx(1.5, abs=1e-9)
        with pytest.raises(ValueError):
            min_c_out(c_co_1d, self.ell.Q, "kugel")

    def test_enthalten(self):
        """E(c) = {x | xᵀQ⁻¹x ≤ c²}."""
        assert self.ell.contains(np.array([0.5]), 0.5)
        assert not self.ell.contains(np.array([0.6]), 0.5)


class TestKontraktionsparameter:
    """Test-Klasse für theorem6_params."""

    def test_werte(self):
        """c0 = 0,5, c_out = 2, λ_a = 0,5 ergibt γ = 0,25, N = 3, λ = 0,5."""
        params = theorem6_params(0.5, 2.0, 0.5)
        assert params.gamma == pytest.approx(0.25)
        assert params.N == 3
        assert params.lam == pytest.approx(0.5)

    def test_kappung(self):
        """c0 > c_out wird auf γ = 1 gekappt."""
        params = theorem6_params(3.0, 2.0, 0.5)
        assert params.gamma == 1.0
        assert params.N == 1
        assert params.lam == pytest.approx(0.5)

    @pytest.mark.parametrize("c0, lambda_a", [(0.0, 0.5), (0.5, 1.0)])
    def test_ungueltig(self, c0, lambda_a):
        """c0 ≤ 0 oder λ_a ≥ 1."""
        with pytest.raises(AnnahmeError):
            theorem6_params(c0, 2.0, lambda_a)

    def test_lambda_kleiner_eins(self):
        """λ < 1 für beliebige gültige Eingaben."""
        for c0 in (0.01, 0.3, 0.9):
            for lambda_a in (0.0, 0.2, 0.9):
                assert theorem6_params(c0, 1.0, lambda_a).lam < 1.0
