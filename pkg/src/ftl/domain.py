"""Rigid polynomial model domains and Catlin's pseudo-ball apparatus.

A model domain is ``U0^- = {w in U0 : rho(w) < 0}`` with
``rho(w) = 2 Re w2 + P(w1, conj(w1))`` and ``U0 = {||w||_inf < box}``.
Because the model is rigid, every quantity attached to a point depends on the
point only through ``w1`` (for the polynomial data) and ``rho`` (for the
distance to the boundary), and all of them are exact finite computations.

Points of C^2 are numpy complex arrays whose last axis has length 2; the
:class:`PointC2` tuple is accepted wherever a single point is.
"""
from __future__ import annotations

import math
import warnings
from math import comb
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    ChainLinkError,
    DescriptorError,
    InfiniteTypeError,
    InvalidDomainError,
    NotInteriorError,
    ScaleError,
)
from .poly import MixedPoly, eval_poly, is_subharmonic, parse_poly_lines, recentre, sup_norm

BOUNDARY_TOL = 1e-10
IDENTITY_TOL = 1e-12
FIT_RTOL = 1e-9


class PointC2(NamedTuple):
    w1: complex
    w2: complex


def as_points(w) -> np.ndarray:
    """Coerce to a complex array with trailing axis 2."""
    arr = np.asarray(w, dtype=np.complex128)
    if arr.shape[-1:] != (2,):
        raise ValueError(f"expected points of C^2 with trailing axis 2, got shape {arr.shape}")
    return arr


def sup_norm_c2(w) -> np.ndarray | float:
    w = as_points(w)
    out = np.maximum(np.abs(w[..., 0]), np.abs(w[..., 1]))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DomainModel:
    P: MixedPoly
    m: int
    box: float = 1.0
    eps0: float = 0.1
    alpha0: float = 0.1
    C5: float | None = None
    name: str = ""

    def __post_init__(self):
        for (j, k), c in self.P.upper_items():
            if k == 0:
                raise InvalidDomainError(f"harmonic or constant term ({j},{k}) = {c:.6g} present; P must have none")
        mixed = [(j, k) for (j, k), _ in self.P.upper_items()]
        if not mixed:
            raise InvalidDomainError("P has no mixed terms: the model is not of finite type")
        top = max(j + k for j, k in mixed)
        if self.m != top:
            raise InvalidDomainError(f"type m={self.m} does not match the top mixed degree {top}")
        if self.m < 2 or self.m % 2:
            raise InvalidDomainError(f"type m must be an even integer >= 2, got {self.m}")
        if self.box <= 0:
            raise InvalidDomainError("box must be positive")
        ok, low = is_subharmonic(self.P, self.box, 101)
        if not ok:
            raise InvalidDomainError(f"P is not subharmonic on the box (min Laplacian {low:.6g})")

    def with_constants(self, **kw) -> "DomainModel":
        return replace(self, **kw)


# -- pointwise quantities ---------------------------------------------------

def rho(D: DomainModel, w):
    w = as_points(w)
    out = 2.0 * w[..., 1].real + eval_poly(D.P, w[..., 0])
    return float(out) if np.ndim(out) == 0 else out


def in_box(D: DomainModel, w):
    return sup_norm_c2(w) < D.box


def is_interior(D: DomainModel, w):
    return (np.asarray(rho(D, w)) < 0) & np.asarray(in_box(D, w))


def epsilon_of(D: DomainModel, eta):
    """Vertical distance to the boundary: ``rho(eta + (0, eps)) = 0``."""
    r = rho(D, eta)
    return -0.5 * r


@lru_cache(maxsize=4096)
def _recentred(P: MixedPoly, c: complex) -> MixedPoly:
    return recentre(P, c)


def recentred(D: DomainModel, eta1: complex) -> MixedPoly:
    return _recentred(D.P, complex(eta1))


# -- normalizing automorphisms ------------------------------------------------

@dataclass(frozen=True, eq=False)
class NormalizingMap:
    """``phi^{-1}(w) = base + (w1, d0 w2 + sum_k d_k w1^k)``."""

    base: np.ndarray
    d0: complex
    d: tuple[complex, ...]

    def __post_init__(self):
        if self.d0 == 0:
            raise ValueError("d0 must be nonzero")

    def _poly_d(self, z1):
        out = np.zeros_like(z1)
        for k in range(len(self.d), 0, -1):
            out = (out + self.d[k - 1]) * z1
        return out

    def apply(self, w) -> np.ndarray:
        w = as_points(w)
        z1 = w[..., 0] - self.base[0]
        z2 = (w[..., 1] - self.base[1] - self._poly_d(z1)) / self.d0
        return np.stack([z1, z2], axis=-1)

    def apply_inverse(self, z) -> np.ndarray:
        z = as_points(z)
        w1 = self.base[0] + z[..., 0]
        w2 = self.base[1] + self.d0 * z[..., 1] + self._poly_d(z[..., 0])
        return np.stack([w1, w2], axis=-1)

    def derivative_at_base(self, X) -> np.ndarray:
        """``phi'(base) . X``; the Jacobian is triangular."""
        X = as_points(X)
        d1 = self.d[0] if self.d else 0j
        return np.stack([X[..., 0], (X[..., 1] - d1 * X[..., 0]) / self.d0], axis=-1)


def normalizing_map(D: DomainModel, eta) -> tuple[NormalizingMap, MixedPoly]:
    """The automorphism killing the harmonic part at ``eta`` and the mixed coefficients there."""
    eta = as_points(eta)
    b = recentred(D, eta[0])
    d = tuple(-b.coeff(k, 0) for k in range(1, D.m + 1))
    return NormalizingMap(eta.copy(), 1.0 + 0j, d), b.mixed_part()


def tau_from_coeffs(a: MixedPoly, eps):
    """``min (eps / |a_jk|)^(1/(j+k))`` over the nonzero mixed coefficients."""
    terms = [(j + k, abs(c)) for (j, k), c in a.upper_items() if j >= 1 and k >= 1]
    if not terms:
        raise InfiniteTypeError("all mixed coefficients vanish at this point")
    eps = np.asarray(eps, dtype=np.float64)
    out = np.full(eps.shape, np.inf)
    for deg, mod in terms:
        out = np.minimum(out, (eps / mod) ** (1.0 / deg))
    return float(out) if out.ndim == 0 else out


def eps_for_radius(a: MixedPoly, r):
    """Inverse of ``tau_from_coeffs``: the least ``eps`` with ``tau(eps) >= r``."""
    r = np.asarray(r, dtype=np.float64)
    out = np.zeros(r.shape)
    for (j, k), c in a.upper_items():
        if j >= 1 and k >= 1:
            out = np.maximum(out, abs(c) * r ** (j + k))
    return out


def tau(D: DomainModel, eta, eps):
    """Tangential radius at which the recentred mixed part reaches size ``eps``."""
    if np.any(np.asarray(eps) <= 0):
        raise ValueError("eps must be positive")
    eta = as_points(eta)
    return tau_from_coeffs(recentred(D, eta[0]).mixed_part(), eps)


def tau_bisect(D: DomainModel, eta, eps: float, iters: int = 200) -> float:
    """``tau`` from its defining equation ``||P_eta(tau .) / eps|| = 1``, by bisection in ``log tau``.

    Slow reference used to cross-check the closed form.
    """
    a = recentred(D, as_points(eta)[0]).mixed_part()
    if a.is_zero():
        raise InfiniteTypeError("all mixed coefficients vanish at this point")

    def excess(r):
        return sup_norm(a.compose_dilation(r)) / eps - 1.0

    lo, hi = -1.0, 1.0
    while excess(math.exp(lo)) >= 0:
        lo *= 2
    while excess(math.exp(hi)) < 0:
        hi *= 2
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if excess(math.exp(mid)) < 0:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))


# -- frames -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CatlinFrame:
    eta: np.ndarray
    eta_hat: np.ndarray
    eps: float
    eps_tilde: float
    phi_hat: NormalizingMap
    a: MixedPoly
    tau_val: float

    def scaled(self, w) -> np.ndarray:
        """``Delta o phi_hat (w)``."""
        return dilate(self, self.phi_hat.apply(w))

    def unscaled(self, u) -> np.ndarray:
        u = as_points(u)
        z = np.stack([u[..., 0] * self.tau_val, u[..., 1] * self.eps], axis=-1)
        return self.phi_hat.apply_inverse(z)


def frame(D: DomainModel, eta) -> CatlinFrame:
    eta = as_points(eta)
    r = rho(D, eta)
    if not r < 0:
        raise NotInteriorError(f"rho(eta) = {r:.6g} >= 0; a frame needs an interior point")
    if not in_box(D, eta):
        raise NotInteriorError("eta lies outside the box U0")
    eps = -0.5 * r
    eta_hat = eta + np.array([0.0, eps])
    phi_hat, a = normalizing_map(D, eta_hat)
    image = phi_hat.apply(eta)
    eps_tilde = -float(image[1].real)
    t = tau_from_coeffs(a, eps)
    return CatlinFrame(eta.copy(), eta_hat, eps, eps_tilde, phi_hat, a, t)


def dilate(f: CatlinFrame, w) -> np.ndarray:
    w = as_points(w)
    return np.stack([w[..., 0] / f.tau_val, w[..., 1] / f.eps], axis=-1)


def in_q(D: DomainModel, center, eps: float, w):
    """Membership in the pseudo-ball ``Q[center, eps]`` (open polydisc image)."""
    phi, a = normalizing_map(D, center)
    t = tau_from_coeffs(a, eps)
    z = phi.apply(w)
    out = (np.abs(z[..., 0]) < t) & (np.abs(z[..., 1]) < eps)
    return bool(out) if out.ndim == 0 else out


def j_from_frame(f: CatlinFrame, w):
    diff = f.scaled(w) - f.scaled(f.eta)
    out = np.maximum(np.abs(diff[..., 0]), np.abs(diff[..., 1]))
    return float(out) if out.ndim == 0 else out


def j_func(D: DomainModel, eta, w):
    """``J_eta(w) = ||Delta phi_hat(w) - Delta phi_hat(eta)||_inf`` at the scale of ``eta``."""
    return j_from_frame(frame(D, eta), w)


def lipschitz_bound(D: DomainModel, f: CatlinFrame) -> float:
    """Lipschitz constant of ``J_eta`` for ``||.||_inf`` on the box."""
    s = sum(abs(dk) * D.box ** (k - 1) * k for k, dk in enumerate(f.phi_hat.d, 1))
    return max(1.0 / f.tau_val, (1.0 + s) / f.eps)


# -- chains -------------------------------------------------------------------

def chain_constant(C5: float, p: int) -> float:
    """``C(p) = 3 C5^(p-1)``; a chain without links stays in ``3 D^2``."""
    return 3.0 * C5 ** max(p - 1, 0)


@dataclass
class ChainCertificate:
    ok: bool
    Cp: float
    image: np.ndarray
    in_pseudo_ball: bool
    links: list[float]


def chain_engulf(D: DomainModel, chain: Sequence, C5: float | None = None, eps0: float | None = None) -> ChainCertificate:
    C5 = D.C5 if C5 is None else C5
    eps0 = D.eps0 if eps0 is None else eps0
    if C5 is None:
        raise ValueError("C5 is not configured for this domain; run measure_catlin_constants first")
    pts = [as_points(q) for q in chain]
    if not pts:
        raise ValueError("empty chain")
    frames = [frame(D, q) for q in pts]
    links = []
    for i in range(len(pts) - 1):
        val = j_from_frame(frames[i], pts[i + 1])
        if not val < 1.0:
            raise ChainLinkError(i, val)
        links.append(val)
    p = len(pts) - 1
    Cp = chain_constant(C5, p)
    f0 = frames[0]
    if Cp * f0.eps > eps0:
        raise ScaleError(f"C(p) eps(q0) = {Cp * f0.eps:.3g} exceeds eps0 = {eps0:.3g}")
    image = f0.scaled(pts[-1])
    inside = in_q(D, f0.eta_hat, Cp * f0.eps, pts[-1])
    return ChainCertificate(bool(sup_norm_c2(image) < Cp), Cp, image, bool(inside), links)


def random_chain(D: DomainModel, rng: np.random.Generator, length: int, eps_start: float, shrink: float = 0.999):
    """An admissible chain: each step lands inside ``J_{q_i} < 1`` and in ``U0^-``."""
    q1 = complex(rng.uniform(-0.5, 0.5) * D.box, rng.uniform(-0.5, 0.5) * D.box) * 0.5
    q = np.array([q1, -eps_start - 0.5 * eval_poly(D.P, q1)])
    chain = [q]
    while len(chain) < length:
        f = frame(D, chain[-1])
        for _ in range(1000):
            r = shrink * np.sqrt(rng.uniform(size=2))
            th = rng.uniform(0, 2 * np.pi, size=2)
            u = f.scaled(f.eta) + r * np.exp(1j * th)
            cand = f.unscaled(u)
            if is_interior(D, cand):
                chain.append(cand)
                break
        else:
            raise RuntimeError("could not extend chain inside the domain")
    return chain


# -- empirical constants ----------------------------------------------------------

@dataclass
class CatlinConstants:
    C0: float
    C1: float
    C2: float
    C3: float
    C4: float
    C5: float
    triples: int
    pairs: int
    counterexample: dict | None = None
    worst_middle: float = 0.0

    def as_dict(self):
        return {k: getattr(self, k) for k in ("C0", "C1", "C2", "C3", "C4", "C5", "triples", "pairs", "counterexample", "worst_middle")}


def _centre(D: DomainModel, ur, uth):
    """Tangential coordinate with log-uniform modulus in ``[5e-5, 0.5] * box``."""
    r = 0.5 * D.box * 10.0 ** (-4.0 * np.asarray(ur))
    return r * np.exp(2j * np.pi * np.asarray(uth))


class _Batch:
    """Normalizing data for many base points at once (rigid models only).

    The recentred coefficients are polynomials in the tangential coordinate,
    so recentring, ``phi``, ``tau`` and its inverse vectorise over points.
    """

    def __init__(self, D: DomainModel, base: np.ndarray):
        self.base = base
        c = base[:, 0]
        cb = np.conj(c)
        m = D.m
        cp = [np.ones_like(c)]
        cbp = [np.ones_like(c)]
        for _ in range(m):
            cp.append(cp[-1] * c)
            cbp.append(cbp[-1] * cb)
        upper: dict[tuple[int, int], np.ndarray] = {}
        for (j, k), a in D.P.coeffs.items():
            for p in range(j + 1):
                for q in range(min(k, p) + 1):
                    if p + q == 0:
                        continue
                    term = a * comb(j, p) * comb(k, q) * cp[j - p] * cbp[k - q]
                    upper[(p, q)] = upper.get((p, q), 0) + term
        self.d = np.stack([-upper.get((k, 0), np.zeros_like(c)) for k in range(1, m + 1)], axis=-1)
        self.mixed = [(p + q, np.abs(v)) for (p, q), v in upper.items() if q >= 1]

    def tau(self, eps):
        out = np.full(np.shape(eps), np.inf)
        with np.errstate(divide="ignore"):
            for deg, mod in self.mixed:
                out = np.minimum(out, (eps / mod) ** (1.0 / deg))
        return out

    def eps_for_radius(self, r):
        """``r`` has the batch on its first axis."""
        out = np.zeros(r.shape)
        extra = (slice(None),) + (None,) * (r.ndim - 1)
        for deg, mod in self.mixed:
            out = np.maximum(out, mod[extra] * r**deg)
        return out

    def _pd(self, z1):
        extra = (slice(None),) + (None,) * (z1.ndim - 1)
        out = np.zeros_like(z1)
        for k in range(self.d.shape[1], 0, -1):
            out = (out + self.d[:, k - 1][extra]) * z1
        return out

    def apply(self, w1, w2):
        extra = (slice(None),) + (None,) * (w1.ndim - 1)
        z1 = w1 - self.base[:, 0][extra]
        return z1, w2 - self.base[:, 1][extra] - self._pd(z1)

    def apply_inverse(self, z1, z2):
        extra = (slice(None),) + (None,) * (z1.ndim - 1)
        return self.base[:, 0][extra] + z1, self.base[:, 1][extra] + z2 + self._pd(z1)


def _inclusion_constants(src: _Batch, tau_src, eps, dst: _Batch, torus_n: int) -> np.ndarray:
    """Least ``C`` per pair with ``phi_src^{-1}(D_tau x D_eps) in Q[dst, C eps]``.

    Both components of ``phi_dst o phi_src^{-1}`` are holomorphic and the
    required size is plurisubharmonic, so the distinguished boundary
    suffices. The torus is scanned on a grid, then refined twice around each
    pair's maximiser.
    """
    n = len(eps)
    s1 = (tau_src * 0.999999)[:, None, None]
    s2 = (eps * 0.999999)[:, None, None]

    def need(a, b):
        y1, y2 = dst.apply(*src.apply_inverse(s1 * np.exp(1j * a), s2 * np.exp(1j * b)))
        return np.maximum(np.abs(y2), dst.eps_for_radius(np.abs(y1)))

    step = 2 * np.pi / torus_n
    th = step * np.arange(torus_n)
    a, b = np.meshgrid(th, th, indexing="ij")
    a = np.broadcast_to(a, (n,) + a.shape)
    b = np.broadcast_to(b, (n,) + b.shape)
    vals = need(a, b)
    idx = np.arange(n)
    for _ in range(2):
        flat = vals.reshape(n, -1).argmax(axis=1)
        ca = a.reshape(n, -1)[idx, flat]
        cb = b.reshape(n, -1)[idx, flat]
        best = vals.reshape(n, -1)[idx, flat]
        off = np.linspace(-step, step, 9)
        oa, ob = np.meshgrid(off, off, indexing="ij")
        a = ca[:, None, None] + oa
        b = cb[:, None, None] + ob
        vals = np.maximum(need(a, b), best[:, None, None])
        step /= 4
    return vals.reshape(n, -1).max(axis=1) / eps


def _pairs_from_unit(D: DomainModel, U: np.ndarray):
    """Map unit-cube rows to ``(eta', eps(eta'), eps, eta)`` with ``eta in Q[eta', eps]``."""
    c = _centre(D, U[:, 0], U[:, 1])
    ep = np.where(U[:, 2] < 0.25, 0.0, D.alpha0 * 10.0 ** (-8.0 * (U[:, 2] - 0.25) / 0.75))
    etap = np.stack([c, -ep - 0.5 * eval_poly(D.P, c)], axis=-1)
    eps = D.alpha0 * 10.0 ** (-8.0 * U[:, 3]) * (1 - 1e-12)
    Bp = _Batch(D, etap)
    tp = Bp.tau(eps)
    r1 = 0.999999 * U[:, 4] ** 0.25
    r2 = 0.999999 * U[:, 6] ** 0.25
    w1, w2 = Bp.apply_inverse(tp * r1 * np.exp(2j * np.pi * U[:, 5]), eps * r2 * np.exp(2j * np.pi * U[:, 7]))
    return etap, ep, eps, np.stack([w1, w2], axis=-1)


def _constants_for(D, eta, etap, ep, eps, torus_n, chunk):
    n = len(eps)
    C2 = np.empty(n)
    C3 = np.empty(n)
    C4 = np.empty(n)
    for s in range(0, n, chunk):
        sl = slice(s, s + chunk)
        Bq = _Batch(D, eta[sl])
        Bp = _Batch(D, etap[sl])
        t = Bq.tau(eps[sl])
        tp = Bp.tau(eps[sl])
        e_eta = np.asarray(epsilon_of(D, eta[sl]), dtype=float)
        C2[sl] = e_eta / (np.maximum(ep[sl], 0.0) + eps[sl])
        C4[sl] = np.maximum(t / tp, tp / t)
        C3[sl] = np.maximum(
            _inclusion_constants(Bq, t, eps[sl], Bp, torus_n),
            _inclusion_constants(Bp, tp, eps[sl], Bq, torus_n),
        )
    return C2, C3, C4


def _pair_constants(D, U, torus_n, chunk):
    etap, ep, eps, eta = _pairs_from_unit(D, U)
    keep = np.asarray(in_box(D, eta), dtype=bool)
    C2, C3, C4 = _constants_for(D, eta, etap, ep, eps, torus_n, chunk)
    return C2, C3, C4, keep


def _polish(D: DomainModel, U0: np.ndarray, torus_n: int, which: int, rounds: int = 40) -> float:
    """Coordinate ascent of constant ``which`` (0: C2, 1: C3, 2: C4) from each row of ``U0``."""
    if len(U0) == 0:
        return 1.0
    U = U0.copy()
    out = _pair_constants(D, U, torus_n, len(U))
    val, keep = out[which], out[3]
    val = np.where(keep, val, -np.inf)
    step = np.full(len(U), 0.02)
    dim = U.shape[1]
    for _ in range(rounds):
        improved = np.zeros(len(U), dtype=bool)
        for i in range(dim):
            for sgn in (1.0, -1.0):
                V = U.copy()
                V[:, i] = np.clip(V[:, i] + sgn * step, 0.0, 1.0 - 1e-12)
                out = _pair_constants(D, V, torus_n, len(V))
                v, k = out[which], out[3]
                v = np.where(k, v, -np.inf)
                up = v > val
                U[up] = V[up]
                val[up] = v[up]
                improved |= up
        step = np.where(improved, step, step / 2)
    return float(np.max(val))


def measure_catlin_constants(
    D: DomainModel,
    samples: int,
    seed: int = 0,
    points: Sequence | None = None,
    torus_n: int = 16,
    chunk: int = 1024,
    polish: int = 32,
) -> CatlinConstants:
    """Fit the constants of the ``tau`` sandwich and of the pseudo-ball estimates.

    ``samples`` triples ``(eta, eps <= eps')`` check the middle inequalities
    exactly and fit ``C0, C1``; ``samples`` pairs ``eta in Q[eta', eps]`` with
    ``eps < alpha0`` fit ``C2, C3, C4`` (each floored at 1), and
    ``C5 = (2 + 4 C2) C3``. Sampling is scrambled Sobol, so a larger sample
    extends a smaller one with the same seed. With ``points`` given, centres
    cycle through that set and ``eta = eta'`` (the degenerate case).
    """
    from scipy.stats import qmc

    if samples < 1:
        raise ValueError("samples must be >= 1")
    m = D.m
    with warnings.catch_warnings():
        # any prefix of a Sobol sequence is fine here; only the balance warning fires
        warnings.simplefilter("ignore", UserWarning)
        U = qmc.Sobol(d=8, scramble=True, seed=seed).random(samples)
    if points is not None:
        pts = np.array([as_points(p) for p in points])
        centres = pts[np.arange(samples) % len(pts)]
    else:
        centres = None

    # sandwich on 0 < eps <= eps' <= 1
    if centres is None:
        c = _centre(D, U[:, 0], U[:, 1])
    else:
        c = centres[:, 0]
    base = np.stack([c, np.zeros_like(c)], axis=-1)
    B = _Batch(D, base)
    e = np.sort(10.0 ** (-10.0 * U[:, 2:4]), axis=1)
    t1, t2 = B.tau(e[:, 0]), B.tau(e[:, 1])
    ratio = e[:, 0] / e[:, 1]
    lo = ratio**0.5 * t2
    hi = ratio ** (1.0 / m) * t2
    viol = np.maximum((lo - t1) / t1, (t1 - hi) / t1)
    worst = float(np.max(viol))
    counter = None
    if worst > FIT_RTOL:
        i = int(np.argmax(viol))
        counter = {"eta1": [c[i].real, c[i].imag], "eps": e[i, 0], "eps_prime": e[i, 1],
                   "tau": t1[i], "lower": lo[i], "upper": hi[i]}
    C0 = float(np.min(t2 / e[:, 1] ** 0.5))
    C1 = float(np.max(t2 / e[:, 1] ** (1.0 / m)))

    # pairs eta in Q[eta', eps]
    if centres is None:
        C2a, C3a, C4a, keep = _pair_constants(D, U, torus_n, chunk)
        # the sup sits on thin sets near the pseudo-ball edge; climb from the best samples
        fitted = []
        for which, arr in enumerate((C2a, C3a, C4a)):
            top = np.argsort(np.where(keep, arr, -np.inf))[::-1][:polish]
            fitted.append(max(1.0, float(np.max(arr[keep], initial=1.0)), _polish(D, U[top], torus_n, which)))
        C2, C3, C4 = fitted
        npairs = int(keep.sum())
    else:
        etap = centres
        ep = np.asarray(epsilon_of(D, etap), dtype=float)
        eps = D.alpha0 * 10.0 ** (-8.0 * U[:, 3]) * (1 - 1e-12)
        C2a, C3a, C4a = _constants_for(D, etap, etap, ep, eps, torus_n, chunk)
        C2 = max(1.0, float(np.max(C2a)))
        C3 = max(1.0, float(np.max(C3a)))
        C4 = max(1.0, float(np.max(C4a)))
        npairs = samples
    C5 = (2.0 + 4.0 * C2) * C3
    return CatlinConstants(C0, C1, C2, C3, C4, C5, samples, npairs, counter, worst)


# -- domain files -----------------------------------------------------------

def loads_domain(text: str, source: str = "<string>", name: str = "") -> DomainModel:
    header = None
    consts = {}
    poly_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "m":
            if header is not None:
                raise DescriptorError(source, lineno, "duplicate header line")
            if len(parts) != 4 or parts[2] != "box":
                raise DescriptorError(source, lineno, "header must read 'm <int> box <float>'")
            try:
                header = (int(parts[1]), float(parts[3]))
            except ValueError:
                raise DescriptorError(source, lineno, "header must read 'm <int> box <float>'") from None
        elif parts[0] == "const":
            vals = parts[1:]
            if len(vals) % 2:
                raise DescriptorError(source, lineno, "const line must hold name/value pairs")
            for key, val in zip(vals[::2], vals[1::2]):
                if key not in ("eps0", "alpha0", "C5"):
                    raise DescriptorError(source, lineno, f"unknown constant {key!r}")
                try:
                    consts[key] = float(val)
                except ValueError:
                    raise DescriptorError(source, lineno, f"bad value for {key}: {val!r}") from None
        else:
            if header is None:
                raise DescriptorError(source, lineno, "coefficient line before the 'm ... box ...' header")
            poly_lines.append((lineno, line))
    if header is None:
        raise DescriptorError(source, 0, "missing 'm <int> box <float>' header")
    m, box = header
    upper = parse_poly_lines(poly_lines, source)
    for lineno, line in poly_lines:
        j, k = (int(x) for x in line.split()[:2])
        if k == 0:
            raise DescriptorError(source, lineno, f"harmonic coefficient ({j},{k}) is not allowed in a model domain")
        if j + k > m:
            raise DescriptorError(source, lineno, f"coefficient ({j},{k}) exceeds degree m={m}")
    try:
        P = MixedPoly.from_upper(upper, m)
        return DomainModel(P, m, box, name=name, **consts)
    except (InvalidDomainError, ValueError) as exc:
        raise DescriptorError(source, 0, str(exc)) from None


def load_domain(path) -> DomainModel:
    path = Path(path)
    return loads_domain(path.read_text(encoding="utf-8"), str(path), name=path.stem)


def dumps_domain(D: DomainModel) -> str:
    lines = [f"m {D.m} box {D.box!r}"]
    lines += [f"{j} {k} {c.real!r} {c.imag!r}" for (j, k), c in D.P.upper_items()]
    const = f"const eps0 {D.eps0!r} alpha0 {D.alpha0!r}"
    if D.C5 is not None:
        const += f" C5 {D.C5!r}"
    lines.append(const)
    return "\n".join(lines) + "\n"


BUNDLED = ("egg1", "egg2", "egg3", "twoterm", "mixed")


def bundled_domain(name: str) -> DomainModel:
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled domain {name!r}; choose from {BUNDLED}")
    text = resources.files("ftl").joinpath(f"data/{name}.dom").read_text(encoding="utf-8")
    return loads_domain(text, f"<bundled {name}>", name=name)


def egg(k: int, box: float = 1.0, **consts) -> DomainModel:
    """``{2 Re w2 + |w1|^(2k) < 0}``."""
    return DomainModel(MixedPoly.modulus_power(k), 2 * k, box, name=f"egg{k}", **consts)
