import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftl.errors import DescriptorError
from ftl.poly import (
    MixedPoly,
    dumps_poly,
    eval_poly,
    is_subharmonic,
    laplacian_poly,
    loads_poly,
    recentre,
    sup_norm,
)


def brute_eval(coeffs, z):
    """Term-by-term sum over both halves, independent of the kernel path."""
    return sum(c * z**j * np.conj(z) ** k for (j, k), c in coeffs.items())


def egg(k):
    return MixedPoly.modulus_power(k)


class TestEval:
    def test_modulus_squared(self):
        assert eval_poly(egg(1), 2.0) == pytest.approx(4.0)

    def test_zero(self):
        assert eval_poly(MixedPoly.zero(4), 0.3 + 2j) == 0.0

    def test_mixed_real_part(self):
        P = MixedPoly(4, {(2, 2): 1.0, (2, 1): 0.5, (1, 2): 0.5})
        assert eval_poly(P, 1.0) == pytest.approx(2.0, abs=1e-14)

    def test_matches_brute_force(self, rng):
        P = MixedPoly(5, {(3, 1): 0.2 - 0.7j, (2, 2): 1.5, (4, 1): 0.1j, (1, 1): 2.0, (2, 0): 1 + 1j})
        z = rng.normal(size=200) + 1j * rng.normal(size=200)
        ref = brute_eval(P.coeffs, z)
        assert np.max(np.abs(ref.imag)) < 1e-12
        assert np.allclose(eval_poly(P, z), ref.real, rtol=1e-13, atol=1e-13)

    def test_lower_half_mirror_accepted(self):
        P = MixedPoly(3, {(1, 2): 1j})
        assert P.coeff(2, 1) == -1j

    def test_non_conjugate_pair_rejected(self):
        with pytest.raises(ValueError):
            MixedPoly(3, {(2, 1): 1.0, (1, 2): 2.0})

    def test_degree_bound(self):
        with pytest.raises(ValueError):
            MixedPoly(2, {(2, 1): 1.0})


class TestRecentre:
    def test_at_origin(self):
        assert recentre(egg(1), 0) == egg(1)

    def test_unit_shift(self):
        Q = recentre(egg(1), 1.0)
        assert Q.coeffs == {(1, 0): 1, (0, 1): 1, (1, 1): 1}

    def test_identity_quartic(self, rng):
        P, c = egg(2), 0.5
        Q = recentre(P, c)
        w = rng.normal(size=100) + 1j * rng.normal(size=100)
        err = np.max(np.abs(eval_poly(Q, w) - (eval_poly(P, c + w) - eval_poly(P, c))))
        assert err < 1e-12

    def test_no_constant_term(self):
        Q = recentre(MixedPoly(4, {(2, 2): 1.0, (2, 1): 0.3}), 0.4 - 0.2j)
        assert Q.coeff(0, 0) == 0


class TestLaplacian:
    def test_modulus_squared(self):
        assert laplacian_poly(egg(1)).coeffs == {(0, 0): 4.0}

    def test_harmonic(self):
        assert laplacian_poly(MixedPoly(3, {(3, 0): 0.5})).is_zero()

    def test_quartic_against_finite_differences(self):
        L = laplacian_poly(egg(2))
        assert L.coeffs == {(1, 1): 16.0}
        h = 1e-4
        for z in (0.3 + 0.1j, -0.7 + 0.4j, 0.05j):
            fd = sum(eval_poly(egg(2), z + d) for d in (h, -h, 1j * h, -1j * h)) - 4 * eval_poly(egg(2), z)
            assert abs(fd / h**2 - eval_poly(L, z)) < 1e-6


class TestSupNorm:
    def test_values(self):
        assert sup_norm(egg(1)) == 1.0
        assert sup_norm(MixedPoly.zero()) == 0.0
        P = MixedPoly(2, {(1, 1): 0.3, (2, 0): 0.5})
        assert sup_norm(P) == pytest.approx(0.5)


class TestSubharmonic:
    def test_quartic(self):
        ok, low = is_subharmonic(egg(2), 1.0, 50)
        assert ok and low >= 0.0

    def test_negative(self):
        ok, low = is_subharmonic(egg(1) * -1.0, 1.0, 10)
        assert not ok and low == pytest.approx(-4.0)

    def test_dip_at_origin(self):
        P = MixedPoly(4, {(2, 2): 1.0, (1, 1): -0.5})
        ok, low = is_subharmonic(P, 1.0, 100)
        assert not ok
        assert eval_poly(laplacian_poly(P), 0.0) == pytest.approx(-2.0)


class TestText:
    def test_round_trip(self):
        P = MixedPoly(4, {(2, 2): 1.0, (2, 1): 0.25 - 0.125j, (1, 1): 1.0})
        assert loads_poly(dumps_poly(P), 4) == P

    def test_diagnostic_names_line(self):
        with pytest.raises(DescriptorError) as exc:
            loads_poly("1 1 1.0 0.0\n1 2 1.0 0.0\n", source="p.txt")
        assert exc.value.line == 2 and "p.txt:2" in str(exc.value)


coef = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@st.composite
def polys(draw):
    m = draw(st.integers(1, 6))
    keys = [(j, k) for j in range(m + 1) for k in range(j + 1) if j + k <= m and j + k > 0]
    chosen = draw(st.lists(st.sampled_from(keys), unique=True, max_size=5))
    up = {}
    for jk in chosen:
        c = draw(coef)
        up[jk] = complex(c.real, 0.0) if jk[0] == jk[1] else c
    return MixedPoly.from_upper(up, m)


@settings(max_examples=60, deadline=None)
@given(polys(), st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False))
def test_recentre_is_a_shift(P, c, w):
    lhs = eval_poly(recentre(P, c), w)
    rhs = eval_poly(P, c + w) - eval_poly(P, c)
    scale = 1.0 + sum(abs(a) for a in P.coeffs.values()) * 3.0**P.m
    assert math.isclose(lhs, rhs, abs_tol=1e-12 * scale)


@settings(max_examples=60, deadline=None)
@given(polys(), st.floats(0.1, 3.0))
def test_dilation_scales_coefficients(P, lam):
    D = P.compose_dilation(lam)
    for (j, k), c in P.upper_items():
        assert abs(D.coeff(j, k) - c * lam ** (j + k)) <= 1e-12 * max(1.0, abs(c) * lam ** (j + k))


@settings(max_examples=60, deadline=None)
@given(polys())
def test_laplacian_kills_harmonic_part(P):
    assert laplacian_poly(P.harmonic_part()).is_zero()
    assert laplacian_poly(P) == laplacian_poly(P.mixed_part())
