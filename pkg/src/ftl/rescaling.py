"""Pinchuk rescaling of a model domain along a sequence tending to the boundary.

``S_n = Delta o phi_hat`` blows ``U0^-`` up around ``eta_n``; on rigid models
``S_n(U0^-)`` is ``{2 Re u2 + P_n(u1) < 0}`` cut by the image of the box, with
``P_n(u) = P_{eta_hat}(tau u) / eps``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .discs import PolyDisc, fits, random_disc
from .domain import (
    IDENTITY_TOL,
    CatlinFrame,
    DomainModel,
    as_points,
    chain_constant,
    frame,
    in_box,
    j_from_frame,
    rho,
    sup_norm_c2,
)
from .errors import DiscEscapeError, NonConvergenceError
from .poly import MixedPoly, eval_poly, is_subharmonic, sup_norm

LIMIT_TOL = 1e-6
SNAP = 1e-6


@dataclass(frozen=True, eq=False)
class RescaleMap:
    frame: CatlinFrame

    def __post_init__(self):
        f = self.frame
        if sup_norm_c2(self(f.eta_hat)) > IDENTITY_TOL:
            raise AssertionError("S(eta_hat) != 0")
        target = np.array([0.0, -f.eps_tilde / f.eps])
        if sup_norm_c2(self(f.eta) - target) > IDENTITY_TOL:
            raise AssertionError("S(eta) != (0, -eps_tilde / eps)")

    def __call__(self, w) -> np.ndarray:
        return self.frame.scaled(w)

    def inverse(self, u) -> np.ndarray:
        return self.frame.unscaled(u)


def rescale_map(D: DomainModel, eta) -> RescaleMap:
    return RescaleMap(frame(D, eta))


def rescaled_polynomial(D: DomainModel, eta) -> MixedPoly:
    """``P_n(u) = P_{eta_hat}(tau u) / eps``; its largest coefficient is 1."""
    f = frame(D, eta)
    return _rescaled(f, D.m)


def _rescaled(f: CatlinFrame, m: int) -> MixedPoly:
    t, e = f.tau_val, f.eps
    return MixedPoly.from_upper({(j, k): c * t ** (j + k) / e for (j, k), c in f.a.upper_items()}, m)


@dataclass
class LimitDomain:
    P: MixedPoly
    table: list[tuple[float, MixedPoly]]
    variation: float


def _coeff_vector(polys: Sequence[MixedPoly]) -> tuple[list[tuple[int, int]], np.ndarray]:
    keys = sorted({jk for P in polys for jk, _ in P.upper_items()})
    return keys, np.array([[P.coeff(*jk) for jk in keys] for P in polys])


def limit_domain(D: DomainModel, etas: Sequence, tail: int = 3, tol: float = LIMIT_TOL) -> LimitDomain:
    """Coefficientwise limit of ``P_n`` along ``etas``, by a Cauchy test on the last ``tail`` entries.

    The limit is the last ``P_n`` with coefficients below ``tol`` dropped.
    Raises :class:`NonConvergenceError` naming the coefficient that moves most.
    """
    etas = [as_points(e) for e in etas]
    if len(etas) < tail:
        raise ValueError(f"need at least {tail} points")
    norms = [float(sup_norm_c2(e)) for e in etas[-tail:]]
    if max(norms) >= 1e-3:
        raise ValueError(f"sequence does not approach (0, 0): tail norms {norms}")
    table = [(float(sup_norm_c2(e)), rescaled_polynomial(D, e)) for e in etas]
    keys, vec = _coeff_vector([P for _, P in table[-tail:]])
    spread = np.max(np.abs(vec[:, None, :] - vec[None, :, :]), axis=(0, 1))
    i = int(np.argmax(spread))
    variation = float(spread[i])
    if variation >= tol:
        raise NonConvergenceError(keys[i], variation)
    last = table[-1][1]
    P = MixedPoly.from_upper({jk: c for jk, c in last.upper_items() if abs(c) >= SNAP}, D.m)
    if abs(sup_norm(P) - 1.0) > 1e-9:
        raise AssertionError(f"limit has sup norm {sup_norm(P)}")
    if not P.harmonic_part().is_zero():
        raise AssertionError("limit has harmonic terms")
    return LimitDomain(P, table, variation)


def brody_hyperbolic(P: MixedPoly, box: float = 1.0, n: int = 101) -> bool:
    """Subharmonic and not harmonic: then ``{2 Re u2 + P(u1) < 0}`` holds no entire curves."""
    ok, _ = is_subharmonic(P, box, n)
    return bool(ok and not P.is_harmonic())


def hausdorff_gap(D: DomainModel, eta, P: MixedPoly, box: float = 1.0, n: int = 16) -> float:
    """Fraction of an ``n^4`` grid on ``[-box, box]^4`` where ``S(U0^-)`` and ``D_P`` disagree."""
    S = rescale_map(D, eta)
    xs = np.linspace(-box, box, n)
    a, b, c, d = np.meshgrid(xs, xs, xs, xs, indexing="ij")
    u = np.stack([(a + 1j * b).ravel(), (c + 1j * d).ravel()], axis=-1)
    w = S.inverse(u)
    inside_n = (np.asarray(rho(D, w)) < 0) & np.asarray(in_box(D, w))
    inside_p = 2.0 * u[:, 1].real + eval_poly(P, u[:, 0]) < 0
    return float(np.mean(inside_n != inside_p))


# -- normality experiment -------------------------------------------------------

def disc_family(D: DomainModel, kind: str, beta: float = 0.5, gamma: float = 0.4, degree: int = 4,
                seed: int = 0) -> Callable[[np.ndarray], PolyDisc]:
    """Discs through a given point: constant, affine/quadratic at the pseudo-ball scale, or random."""

    def make(eta) -> PolyDisc:
        eta = as_points(eta)
        if kind == "constant":
            return PolyDisc(eta[None, :].copy())
        f = frame(D, eta)
        if kind == "affine":
            return PolyDisc(np.array([eta, [f.tau_val * beta, 0.0]]))
        if kind == "quadratic":
            return PolyDisc(np.array([eta, [f.tau_val * beta, 0.0], [0.0, f.eps * gamma]]))
        if kind == "poly":
            ss = np.random.SeedSequence([seed, int(round(1.0 / f.eps))])
            return random_disc(D, np.random.default_rng(ss), eta, degree)
        raise KeyError(f"unknown disc family {kind!r}")

    return make


def chain_length(radius: float, r0: float) -> int:
    """Links needed to reach ``|a| = radius`` from 0 with steps ``r0 (1 - |a_i|)``."""
    if radius <= 0:
        return 0
    return int(math.ceil(radius / (r0 * (1.0 - radius))))


@dataclass
class NormalityReport:
    bound: float
    p: int
    per_index_sup: list[tuple[int, float]]
    links_ok: bool
    worst_link: float
    normal: bool
    sup: float = field(init=False)

    def __post_init__(self):
        self.sup = max((v for _, v in self.per_index_sup), default=0.0)


def compact_samples(radius: float, n_r: int = 8, n_th: int = 32) -> np.ndarray:
    r = radius * np.arange(1, n_r + 1) / n_r
    th = 2 * np.pi * np.arange(n_th) / n_th
    return np.concatenate([[0j], (r[:, None] * np.exp(1j * th)[None, :]).ravel()])


def normality_experiment(D: DomainModel, family: Callable, etas: Sequence[tuple[int, np.ndarray]],
                         radius: float = 0.5, r0: float = 0.05, C5: float | None = None) -> NormalityReport:
    """``sup_n sup_{|t| <= radius} ||S_n(f_n(t))||_inf`` against the chain bound ``C(p)``.

    ``etas`` pairs each index with ``f_n(0)``. The chain from 0 to the farthest
    sample moves radially in ``p`` equal steps and every link must have
    ``J < 1``.
    """
    C5 = D.C5 if C5 is None else C5
    if C5 is None:
        raise ValueError("C5 is not configured for this domain")
    norms = [float(sup_norm_c2(e)) for _, e in etas]
    if not norms or not all(b < a for a, b in zip(norms, norms[1:])) or norms[-1] >= 0.01:
        raise ValueError("f_n(0) must decrease to below 0.01 in norm")
    ts = compact_samples(radius)
    p = chain_length(radius, r0)
    Cp = chain_constant(C5, p)
    angles = np.exp(2j * np.pi * np.arange(32) / 32)
    steps = radius * np.arange(p + 1) / max(p, 1)
    per = []
    worst_link = 0.0
    for n, eta in etas:
        disc = family(eta)
        if not fits(D, disc):
            raise DiscEscapeError(f"disc for index {n} leaves U0^-")
        S = rescale_map(D, eta)
        per.append((n, float(np.max(sup_norm_c2(S(disc(ts)))))))
        pts = disc(steps[:, None] * angles[None, :])
        for i in range(p):
            for a in range(len(angles)):
                fr = frame(D, pts[i, a])
                worst_link = max(worst_link, j_from_frame(fr, pts[i + 1, a]))
    sup = max(v for _, v in per)
    links_ok = worst_link < 1.0
    return NormalityReport(Cp, p, per, links_ok, worst_link, bool(sup <= Cp and links_ok))


# -- probe: small discs at small centres stay J-close ----------------------------

@dataclass
class PbaReport:
    r0hat: float
    chat: float
    pairs: int
    violations: list[dict]
    frontier: list[dict]
    excluded: int


def pba_probe(D: DomainModel, k: float = 1.0, trials: int = 200, points: int = 64, seed: int = 0,
              r_step: float = 0.05, c_step: float = 0.02, c_top: float = 0.5, family: str = "poly",
              degree: int = 4) -> PbaReport:
    """Largest ladder pair ``(r0, c)`` with ``J_{f(0)}(f(t)) < k`` whenever ``||f(0)|| <= c``, ``|t| < r0``.

    ``r0`` climbs ``r_step, 2 r_step, ...`` at the smallest ``c`` while no
    sampled pair violates; ``c`` then climbs ``c_step, 2 c_step, ...`` at that
    ``r0``. ``violations`` is empty unless even the first rung fails;
    ``frontier`` holds witnesses from the first failing rungs beyond the
    reported pair. One disc in ten is centred beyond ``c_top``; those fall outside
    the hypothesis and are only counted.
    """
    from .discs import random_centre

    if not 0 < k <= 1:
        raise ValueError("k must lie in (0, 1]")
    r_ladder = r_step * np.arange(1, int(round(1.0 / r_step)))
    c_ladder = c_step * np.arange(1, int(round(c_top / c_step)) + 1)
    cnorm = np.empty(trials)
    tabs = np.empty((trials, points))
    J = np.empty((trials, points))
    centres = []
    excluded = 0
    for i in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        outside = i % 10 == 9
        c = rng.uniform(c_top, 0.9) if outside else rng.uniform(c_step / 2, c_top)
        eta = random_centre(D, rng, c)
        if family == "constant":
            disc = PolyDisc(eta[None, :].copy())
        else:
            disc = random_disc(D, rng, eta, int(rng.integers(1, degree + 1)))
        t = np.sqrt(rng.uniform(size=points)) * np.exp(2j * np.pi * rng.uniform(size=points))
        fr = frame(D, eta)
        cnorm[i] = float(sup_norm_c2(eta))
        tabs[i] = np.abs(t)
        J[i] = j_from_frame(fr, disc(t))
        centres.append((eta, t))
        excluded += int(outside and cnorm[i] > c_top)
    valid = cnorm <= c_top

    def bad(r0, c):
        return valid[:, None] & (cnorm[:, None] <= c + 1e-15) & (tabs < r0) & (J >= k)

    r0hat = 0.0
    for r in r_ladder:
        if bad(r, c_ladder[0]).any():
            break
        r0hat = float(r)
    chat = 0.0
    if r0hat > 0:
        for c in c_ladder:
            if bad(r0hat, c).any():
                break
            chat = float(c)
    def witnesses(rungs):
        out = []
        for r, c in rungs:
            for i, j in zip(*np.nonzero(bad(r, c))):
                eta, t = centres[i]
                out.append({"r0": float(r), "c": float(c),
                            "centre": [eta[0].real, eta[0].imag, eta[1].real, eta[1].imag],
                            "t": [t[j].real, t[j].imag], "J": float(J[i, j])})
                if len(out) >= 20:
                    return out
        return out

    if r0hat == 0:
        violations = witnesses([(r_ladder[0], c_ladder[0])])
        frontier = []
    else:
        violations = []
        frontier = witnesses([(r0hat + r_step, c_ladder[0]), (r0hat, chat + c_step)])
    return PbaReport(r0hat, chat, int(valid.sum()) * points, violations, frontier, excluded)
