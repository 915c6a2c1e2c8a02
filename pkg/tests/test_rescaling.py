import numpy as np
import pytest

from ftl.domain import bundled_domain, egg, frame
from ftl.errors import DiscEscapeError, NonConvergenceError
from ftl.poly import MixedPoly, eval_poly, sup_norm
from ftl.discs import PolyDisc
from ftl.rescaling import (
    brody_hyperbolic,
    chain_length,
    disc_family,
    hausdorff_gap,
    limit_domain,
    normality_experiment,
    pba_probe,
    rescale_map,
    rescaled_polynomial,
)

RAY = [np.array([0.0, -1.0 / n]) for n in (1e4, 1e5, 1e6, 1e7, 1e8)]


def random_interior(D, rng, n):
    out = []
    for _ in range(n):
        w1 = 0.5 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
        out.append(np.array([w1, -0.5 * eval_poly(D.P, w1) - 10 ** rng.uniform(-9, -1) + 0.1j * rng.uniform(-1, 1)]))
    return out


class TestRescaleMap:
    def test_anchor_points(self, rng):
        D = bundled_domain("mixed")
        for eta in random_interior(D, rng, 50):
            S = rescale_map(D, eta)
            f = frame(D, eta)
            assert np.max(np.abs(S(f.eta_hat))) <= 1e-12
            assert np.max(np.abs(S(eta) - np.array([0, -1]))) <= 1e-12

    def test_inverse(self, rng):
        S = rescale_map(bundled_domain("twoterm"), (0.1, -0.2))
        u = rng.normal(size=(10, 2)) + 1j * rng.normal(size=(10, 2))
        assert np.allclose(S(S.inverse(u)), u, atol=1e-12)


class TestRescaledPolynomial:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_self_similar(self, k):
        for d in (1e-1, 1e-4, 1e-8):
            P = rescaled_polynomial(egg(k), (0, -d))
            assert P.upper_items() == [((k, k), pytest.approx(1.0, rel=1e-13))]

    def test_unit_sup_norm(self, twoterm, rng):
        for eta in random_interior(twoterm, rng, 1000):
            assert abs(sup_norm(rescaled_polynomial(twoterm, eta)) - 1.0) <= 1e-12


class TestLimitDomain:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_egg(self, k):
        L = limit_domain(egg(k), RAY)
        assert L.P.upper_items() == [((k, k), pytest.approx(1.0, rel=1e-13))]
        assert L.variation < 1e-12

    def test_lower_order_term_wins(self, twoterm):
        etas = [np.array([0.0, -1.0 / n]) for n in 10.0 ** np.arange(1, 10)]
        L = limit_domain(twoterm, etas)
        assert L.P.upper_items() == [((1, 1), pytest.approx(1.0, abs=1e-9))]
        assert L.variation < 1e-6

    def test_two_limit_points(self):
        # on |w|^4, w1 = delta^(1/4) rescales to |u|^2 + Re(u^2 conj u)/2 + |u|^4/16
        D = egg(2)
        etas = []
        for i, d in enumerate(10.0 ** -np.arange(8.0, 24.0, 2.0)):
            if i % 2:
                etas.append(np.array([d**0.25, -d - d / 2]))
            else:
                etas.append(np.array([0.0, -d]))
        tang = rescaled_polynomial(D, etas[1])
        assert tang.coeff(1, 1) == pytest.approx(1.0) and tang.coeff(2, 2) == pytest.approx(1 / 16)
        with pytest.raises(NonConvergenceError) as exc:
            limit_domain(D, etas)
        assert exc.value.variation > 0.5

    def test_must_approach_origin(self, twoterm):
        with pytest.raises(ValueError):
            limit_domain(twoterm, [np.array([0.0, -0.1])] * 3)


class TestBrody:
    def test_cases(self):
        assert brody_hyperbolic(MixedPoly.modulus_power(1))
        assert not brody_hyperbolic(MixedPoly(2, {(2, 0): 0.5}))
        assert brody_hyperbolic(MixedPoly.modulus_power(2))


class TestHausdorffGap:
    def test_self_similar(self):
        assert hausdorff_gap(egg(2), (0, -1e-6), MixedPoly.modulus_power(2), n=10) < 1e-3

    def test_wrong_limit(self, twoterm):
        eta = np.array([0.0, -1e-8])
        right = hausdorff_gap(twoterm, eta, MixedPoly.modulus_power(1), n=10)
        wrong = hausdorff_gap(twoterm, eta, MixedPoly.modulus_power(2), n=10)
        assert right < 0.01 and wrong > 0.02


ETAS = [(n, np.array([0.0, -1.0 / n])) for n in range(10, 201, 10)]


class TestNormality:
    def test_chain_length(self):
        assert chain_length(0.5, 0.05) == 20
        assert chain_length(0.0, 0.05) == 0

    def test_constant_discs(self, egg1):
        rep = normality_experiment(egg1, disc_family(egg1, "constant"), ETAS)
        assert rep.sup == pytest.approx(1.0, abs=1e-12) and rep.normal

    @pytest.mark.parametrize("kind", ["affine", "quadratic"])
    def test_bounded(self, egg2, kind):
        rep = normality_experiment(egg2, disc_family(egg2, kind), ETAS)
        assert rep.normal and rep.sup < 3 and rep.worst_link < 1

    def test_precondition(self, egg1):
        with pytest.raises(ValueError):
            normality_experiment(egg1, disc_family(egg1, "affine"), [(1, np.array([0, -0.1])), (2, np.array([0, -0.2]))])

    def test_escaping_disc(self, egg1):
        big = lambda eta: PolyDisc(np.array([eta, [0.9, 0.0]]))
        with pytest.raises(DiscEscapeError):
            normality_experiment(egg1, big, ETAS)


class TestPba:
    def test_constant_discs_never_violate(self, egg1):
        rep = pba_probe(egg1, 1.0, trials=40, points=16, family="constant")
        assert not rep.violations and not rep.frontier
        assert rep.r0hat == pytest.approx(0.95) and rep.chat == pytest.approx(0.5)

    def test_far_centres_excluded(self, egg1):
        rep = pba_probe(egg1, 1.0, trials=40, points=16)
        assert 0 < rep.excluded <= 4
        assert rep.pairs == (40 - rep.excluded) * 16
        assert rep.r0hat > 0 and rep.chat > 0 and not rep.violations

    def test_k_range(self, egg1):
        with pytest.raises(ValueError):
            pba_probe(egg1, 1.5, trials=2)
