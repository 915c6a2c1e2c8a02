import math

import numpy as np
import pytest

from ftl.domain import bundled_domain, egg
from ftl.errors import NotInteriorError
from ftl.kobayashi import catlin_lower_bound, catlin_tau, kobayashi_upper, m_metric, metric_ratio_sweep

ETA = np.array([0.0, -0.01])


class TestM:
    def test_tangential(self):
        assert m_metric(egg(1), ETA, (1, 0)) == pytest.approx(10.0, rel=1e-14)

    def test_normal(self):
        assert m_metric(egg(1), ETA, (0, 1)) == pytest.approx(100.0, rel=1e-14)

    def test_zero_vector(self):
        assert m_metric(egg(1), ETA, (0, 0)) == 0.0

    def test_exterior(self):
        with pytest.raises(NotInteriorError):
            m_metric(egg(1), (0, 0.01), (1, 0))

    def test_jacobian_uses_d1(self):
        # at w1 = 1 the normalizing map has d1 = -1, so (phi' X)_2 = X2 + X1
        D = egg(1)
        eta = np.array([0.5, -0.125 - 0.01])
        v = m_metric(D, eta, (1, -0.5))
        assert v == pytest.approx(max(1 / 0.1, abs(-0.5 + 0.5) / 0.01), rel=1e-12)


class TestUpper:
    def test_normal_direction(self):
        for P in ("egg1", "egg2", "mixed"):
            k = kobayashi_upper(bundled_domain(P), ETA, (0, 1), "affine")
            assert 1 / 0.01 * (1 - 1e-6) <= k.value <= 1 / 0.01 * (1 + 1e-4)

    def test_tangential_egg(self):
        k = kobayashi_upper(egg(1), ETA, (1, 0), "affine")
        # |R t|^2 < 2 delta on the closed disc
        assert k.value == pytest.approx(1 / math.sqrt(0.02), rel=1e-5)

    def test_homogeneous(self, egg2):
        X = np.array([0.3 + 0.1j, -0.2])
        a = kobayashi_upper(egg2, ETA, X).value
        b = kobayashi_upper(egg2, ETA, 2 * X).value
        assert b == pytest.approx(2 * a, rel=1e-9)

    def test_family_monotone(self, egg2):
        X = np.array([1.0, 0.3])
        assert kobayashi_upper(egg2, ETA, X, "affine+quad").value <= kobayashi_upper(egg2, ETA, X, "affine").value

    def test_zero_vector(self, egg1):
        with pytest.raises(ValueError):
            kobayashi_upper(egg1, ETA, (0, 0))


class TestLower:
    def test_normal(self):
        assert catlin_lower_bound(egg(1), ETA, (0, 1)) == pytest.approx(1 / 0.02, rel=1e-14)

    def test_tangential(self):
        assert catlin_tau(egg(1), ETA) == pytest.approx(2 * math.sqrt(0.01), rel=1e-14)
        assert catlin_lower_bound(egg(1), ETA, (1, 0)) == pytest.approx(1 / (2 * 0.1), rel=1e-14)

    def test_halving(self, egg2):
        X = (0.4, 0.7j)
        assert catlin_lower_bound(egg2, ETA, X, 2.0) == pytest.approx(0.5 * catlin_lower_bound(egg2, ETA, X), rel=1e-15)

    def test_A_at_least_one(self, egg2):
        with pytest.raises(ValueError):
            catlin_lower_bound(egg2, ETA, (1, 0), 0.5)


def test_homogeneity_random(rng):
    D = bundled_domain("mixed")
    for _ in range(5):
        w1 = 0.1 * rng.normal() + 0.1j * rng.normal()
        eta = np.array([w1, -0.5 * float(np.real(D.P(w1))) - 0.05])
        X = rng.normal(size=2) + 1j * rng.normal(size=2)
        s = rng.uniform(0.1, 10)
        for fn in (m_metric, catlin_lower_bound):
            assert fn(D, eta, s * X) == pytest.approx(s * fn(D, eta, X), rel=1e-9)


def test_m_and_lower_bound_comparable(rng):
    D = bundled_domain("mixed")
    ratios = []
    for _ in range(100):
        eta = np.array([0.3 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)), -(10 ** rng.uniform(-6, -1))])
        eta[1] -= 0.5 * float(np.real(D.P(eta[0])))
        X = rng.normal(size=2) + 1j * rng.normal(size=2)
        ratios.append(m_metric(D, eta, X) / catlin_lower_bound(D, eta, X))
    assert 0.1 < min(ratios) and max(ratios) < 10


def test_sweep_slopes(egg2):
    sw = metric_ratio_sweep(egg2, np.logspace(-4, -1, 5), (1, 0), "affine")
    assert sw.slope_m == pytest.approx(-0.25, abs=1e-12)
    assert sw.slope_k == pytest.approx(-0.25, abs=0.05)
    assert 0.1 <= sw.ratio_min and sw.ratio_max <= 10
    assert sw.A_hat >= 1 and math.isfinite(sw.A_hat)
