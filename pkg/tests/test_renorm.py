import math

import numpy as np
import pytest

from ftl.domain import frame
from ftl.discs import random_centre, random_disc
from ftl.errors import EmptyWitnessError
from ftl.kernels import chordal
from ftl.renorm import (
    ALPHA_PLUS_CLAMP,
    JFamily,
    SigmaGrid,
    admissible,
    catlin_jfamily,
    prescaled,
    renormalize,
    schwarz_check,
    schwarz_params,
    sigma_estimate,
    sphere_jfamily,
    suite_maps,
    vanishing_profile,
)


def euclid_family():
    def dist(a, b):
        return np.abs(np.asarray(a) - np.asarray(b))

    def pairwise(etas, ws):
        etas = np.asarray(etas)
        ws = np.asarray(ws)
        return np.abs(ws - etas.reshape(etas.shape + (1,) * (ws.ndim - etas.ndim)))

    return JFamily("euclid", dist, dist, pairwise, None)


def brute_sigma(f, k, n_t=40, n_th=32, n_r=800):
    """Dense grid minimum of |eps| / (1 - |t|) over pairs with chordal J >= k."""
    rad = np.linspace(0, 0.95, n_t)
    th = 2 * np.pi * np.arange(n_th) / n_th
    ts = np.concatenate([[0j], (rad[1:, None] * np.exp(1j * th)[None, :]).ravel()])
    best = np.inf
    for t in ts:
        rmax = 1 - abs(t)
        r = rmax * np.logspace(-6, 0, n_r)[:-1]
        e = r[:, None] * np.exp(1j * th)[None, :]
        hit = chordal(f(t), f(t + e)) >= k
        if hit.any():
            best = min(best, float(np.min(np.where(hit, np.abs(e), np.inf))) / rmax)
    return best


class TestSphere:
    def test_antipodes(self):
        assert chordal(0, np.inf) == 2.0

    def test_diagonal(self):
        assert chordal(0.3 + 2j, 0.3 + 2j) == 0.0

    def test_formula(self):
        assert chordal(1.0, -1.0) == pytest.approx(2.0, abs=1e-15)
        z, w = 0.5 + 1j, -2 + 0.25j
        ref = 2 * abs(z - w) / math.sqrt((1 + abs(z) ** 2) * (1 + abs(w) ** 2))
        assert chordal(z, w) == pytest.approx(ref, rel=1e-15)

    def test_huge_values(self):
        assert chordal(1e200, -1e200) == pytest.approx(0.0, abs=1e-190)
        assert chordal(1e200, np.inf) == pytest.approx(0.0, abs=1e-190)

    def test_profile_is_identity(self, rng):
        J = sphere_jfamily()
        taus = [0.5, 0.1, 0.01, 0.001]
        prof = vanishing_profile(J, [0j, 1 + 1j, 50.0], taus, rng)
        assert np.allclose(prof["values"], taus, rtol=1e-9)
        assert prof["certified"]


class TestCatlinFamily:
    def test_zero_on_diagonal(self, egg2):
        J = catlin_jfamily(egg2)
        eta = np.array([0.1, -0.2])
        assert J.j(eta, eta) == 0.0

    def test_unit_at_projection(self, egg2):
        J = catlin_jfamily(egg2)
        eta = np.array([0.1 + 0.2j, -0.05])
        assert J.j(eta, frame(egg2, eta).eta_hat) == pytest.approx(1.0, abs=1e-12)

    def test_profile_decays(self, egg1, rng):
        J = catlin_jfamily(egg1)
        K = [np.array([0.1, -0.2]), np.array([-0.2j, -0.3])]
        prof = vanishing_profile(J, K, [1e-2, 1e-3, 1e-4, 1e-5], rng)
        assert prof["certified"]

    def test_constant_off_diagonal_not_certified(self, rng):
        one = lambda eta, w: np.where(np.asarray(w) == eta, 0.0, 1.0)
        J = JFamily("one", None, one, None, sphere_jfamily().sample_ball)
        assert not vanishing_profile(J, [0j], [0.1, 0.01, 0.001], rng)["certified"]


class TestSchwarzParams:
    def test_clamp(self):
        p = schwarz_params(1.0, 1.0, 1.0, 1.0)
        assert p.clamped and p.alpha_plus == ALPHA_PLUS_CLAMP and p.alpha_plus < p.alpha < 1

    def test_k_capped(self):
        assert schwarz_params(0.25, 0.5, 0.4, 1.0, k=1.0).k == pytest.approx(0.396)

    def test_ordering(self):
        with pytest.raises(ValueError):
            schwarz_params(0.6, 0.5, 1.0, 1.0)
        with pytest.raises(ValueError):
            schwarz_params(0.25, 0.5, 1.0, 1.0, alpha=0.4)


class TestSchwarzCheck:
    def test_constant_map(self, rng):
        p = schwarz_params(0.25, 0.5, 1.0, 1.0)
        rep = schwarz_check(lambda t: np.zeros_like(np.asarray(t, dtype=complex)), euclid_family(), p, rng, bases=16)
        assert rep.ok and rep.worst <= 0

    def test_identity_into_disc(self, rng):
        p = schwarz_params(0.25, 0.5, 1.0, 2.0)
        rep = schwarz_check(lambda t: np.asarray(t, dtype=complex), euclid_family(), p, rng, bases=32)
        assert rep.ok and rep.premise_held == 32

    def test_detects_failure(self, rng):
        p = schwarz_params(0.25, 0.5, 10.0, 0.1)
        rep = schwarz_check(lambda t: 5 * np.asarray(t, dtype=complex), euclid_family(), p, rng, bases=8)
        assert not rep.ok and rep.worst > 0 and rep.witness is not None

    def test_disc_in_egg(self, egg1, rng):
        p = schwarz_params(1.0, 1.0, 1.0, 1.0)
        J = catlin_jfamily(egg1)
        for _ in range(5):
            disc = random_disc(egg1, rng, random_centre(egg1, rng, 0.5), int(rng.integers(1, 5)))
            assert schwarz_check(disc, J, p, rng, bases=16).ok


class TestSigma:
    @pytest.mark.parametrize("N", [10, 40])
    def test_linear_map_against_brute_force(self, N):
        f, _ = suite_maps("zalcman-nz", N)
        res = sigma_estimate(f, sphere_jfamily(), 0.5)
        ref = brute_sigma(f, 0.5)
        assert abs(res.sigma - ref) <= 0.1 * ref
        assert 0.1 / N < res.sigma < 1.0 / N
        assert chordal(f(res.t), f(res.t + res.eps)) >= 0.5

    def test_constant_map(self):
        with pytest.raises(EmptyWitnessError, match="empty witness set"):
            sigma_estimate(lambda z: np.ones_like(np.asarray(z, dtype=complex)), sphere_jfamily(), 0.5,
                           SigmaGrid(t_radii=4, t_angles=4, eps_angles=4, eps_radii=20))

    @pytest.mark.parametrize("name", ["zalcman-nz", "zalcman-exp"])
    def test_witness_bound(self, name):
        f, (tp, ep) = suite_maps(name, 30)
        assert 2 * abs(tp) + abs(ep) < 1
        assert sigma_estimate(f, sphere_jfamily(), 0.5).sigma < 2 * abs(ep)


class TestRenormalize:
    def test_admissible(self):
        assert admissible(0.01, 0.75, 0.5)
        assert not admissible(0.5, 0.75, 0.5)

    def test_prescaled(self):
        g, r = prescaled(lambda z: z, 0j, 0.01)
        assert r == pytest.approx(0.1) and g(1.0) == pytest.approx(0.1)

    def test_short_nz_run(self):
        p = schwarz_params(0.25, 0.5, 1.0, 2.4, k=0.5)
        ns = [10, 20, 40, 80]
        seq, wit = [], []
        for n in ns:
            f, w = suite_maps("zalcman-nz", n)
            seq.append((n, f))
            wit.append(w)
        res = renormalize(seq, sphere_jfamily(), p, wit)
        assert [r.n for r in res.records] == ns and not res.dropped
        eps = [abs(r.eps) for r in res.records]
        assert all(b < a for a, b in zip(eps, eps[1:]))
        for r in res.records:
            assert r.sep >= 0.5 and r.cert_ok
            assert r.sigma <= r.ratio < r.sigma / p.alpha
            assert r.R == pytest.approx(p.alpha / math.sqrt(r.sigma))
        assert res.cauchy_ok and res.r0_trend_ok
