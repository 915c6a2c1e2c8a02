import numpy as np
import pytest

from ftl.discs import PolyDisc, containment_samples, fit_scale, fits, margin, random_centre, random_disc
from ftl.domain import bundled_domain, egg, rho, sup_norm_c2


def test_evaluation():
    d = PolyDisc(np.array([[0.1, -0.5], [0.2, 0.0], [0.0, 0.1j]]))
    t = 0.3 - 0.4j
    assert np.allclose(d(t), [0.1 + 0.2 * t, -0.5 + 0.1j * t**2])
    assert np.allclose(d.centre, [0.1, -0.5]) and np.allclose(d.derivative0(), [0.2, 0])


def test_samples_reach_edge():
    s = containment_samples(256, 64)
    assert np.max(np.abs(s)) == pytest.approx(1 - 1e-6)
    assert len(s) >= 256 + 64


def test_vertical_disc_exact_radius():
    # t -> (0, -d + R d t) stays inside iff R < 1
    D, d = egg(1), 0.01
    make = lambda R: PolyDisc(np.array([[0, -d], [0, R * d]]))
    assert fits(D, make(0.999)) and not fits(D, make(1.01))
    assert fit_scale(D, make(1.0), hi=10.0) == pytest.approx(1.0, rel=1e-5)


def test_margin_sign():
    D = egg(1)
    assert margin(D, PolyDisc(np.array([[0, -0.1]]))) == pytest.approx(-0.2)


@pytest.mark.parametrize("name", ["egg1", "egg3", "mixed"])
def test_random_discs_inside(name, rng):
    D = bundled_domain(name)
    for _ in range(10):
        c = random_centre(D, rng, 0.3)
        assert sup_norm_c2(c) <= 0.3 and rho(D, c) < 0
        disc = random_disc(D, rng, c, int(rng.integers(1, 5)))
        assert np.allclose(disc.centre, c)
        assert fits(D, disc)
