"""
Gemeinsame Fixtures: das eindimensionale Beispiel, das gesäte 2D-System und ihre Fixpunkte.

Die Fixpunkte werden einmal pro Testlauf berechnet. Toleranz 1e-10 hält
den Fehler der äußeren Approximationen unter 1e-9.
"""

import pytest

from preview_regret.analyse.invarianz import max_invariant_set
from preview_regret.geometrie import HPolytope
from preview_regret.systeme import augment, build_1d, build_2d_random, collaborative

TOL = 1e-10


@pytest.fixture(scope="session")
def eindim():
    """(System, Orakel) mit a = 2, x̄ = 10, ū = 1, d̄ = 0,5"""
    return build_1d()


@pytest.fixture(scope="session")
def c_co_1d(eindim):
    """C_max,co = [−1,5, 1,5]"""
    system, _ = eindim
    return max_invariant_set(collaborative(system), tol=TOL).menge


@pytest.fixture(scope="session")
def c_max_1_1d(eindim):
    """C_max,1 in (x, d₁), Projektion [−1, 1]"""
    system, _ = eindim
    return max_invariant_set(augment(system, 1), tol=TOL).menge


@pytest.fixture(scope="session")
def c_rcis_1d():
    """Invariante Endmenge C = [−0,5, 0,5] = C_max"""
    return HPolytope.from_box([-0.5], [0.5])


@pytest.fixture(scope="session")
def zweidim():
    """Baut (System, C_max, C_max,co) des gesäten 2D-Systems, je Seed einmal"""
    cache: dict[int, tuple] = {}

    def bauen(seed: int):
        if seed not in cache:
            system = build_2d_random(seed)
            C_max = max_invariant_set(system, tol=TOL).menge
            C_co = max_invariant_set(collaborative(system), tol=TOL).menge
            cache[seed] = (system, C_max, C_co)
        return cache[seed]

    return bauen
