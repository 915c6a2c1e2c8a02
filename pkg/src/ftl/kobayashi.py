"""Kobayashi pseudo-metric estimates on model domains.

``m_metric`` is the pseudo-ball metric, ``kobayashi_upper`` bounds the
Kobayashi metric from above by the largest disc found in a finite family, and
``catlin_lower_bound`` evaluates the lower bound built from the derivatives
of ``rho`` at the point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discs import PolyDisc, containment_samples, fits
from .domain import DomainModel, as_points, epsilon_of, normalizing_map, recentred, rho, tau_from_coeffs
from .errors import NoAdmissibleDiscError, NotInteriorError

QUAD_MODULI = (0.25, 0.5, 0.75)
QUAD_PHASES = 8
_SAMPLES = containment_samples(256, 64)


def _check_interior(D: DomainModel, eta) -> np.ndarray:
    eta = as_points(eta)
    if not rho(D, eta) < 0:
        raise NotInteriorError("eta must be an interior point")
    return eta


def m_metric(D: DomainModel, eta, X) -> float:
    """``max(|(phi' X)_1| / tau(eta, eps), |(phi' X)_2| / eps)`` with ``eps = eps(eta)``."""
    eta = _check_interior(D, eta)
    X = as_points(X)
    phi, a = normalizing_map(D, eta)
    eps = float(epsilon_of(D, eta))
    t = tau_from_coeffs(a, eps)
    v = phi.derivative_at_base(X)
    return float(max(abs(v[0]) / t, abs(v[1]) / eps))


@dataclass
class UpperBound:
    value: float
    kind: str
    R: float
    q: complex = 0j


def _largest_radius(D: DomainModel, make, r_hi: float, iters: int = 80) -> float:
    """Largest ``R`` (bisection in ``log R``) with the disc ``make(R)`` contained."""
    r_lo = r_hi * 1e-12
    if not fits(D, make(r_lo), _SAMPLES):
        return 0.0
    if fits(D, make(r_hi), _SAMPLES):
        return r_hi
    lo, hi = math.log(r_lo), math.log(r_hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fits(D, make(math.exp(mid)), _SAMPLES):
            lo = mid
        else:
            hi = mid
    return math.exp(lo)


def kobayashi_upper(D: DomainModel, eta, X, family: str = "affine+quad") -> UpperBound:
    """``min 1/R`` over discs ``f(0) = eta``, ``f'(0) = R X`` in the family.

    ``affine``: ``eta + t R X``. ``quad`` adds ``eta + t R X + (0, eps q t^2)``
    for ``|q|`` in ``QUAD_MODULI`` and ``QUAD_PHASES`` phases.
    """
    eta = _check_interior(D, eta)
    X = as_points(X)
    size = float(np.max(np.abs(X)))
    if size == 0:
        raise ValueError("X must be nonzero")
    if family not in ("affine", "affine+quad"):
        raise ValueError(f"unknown disc family {family!r}")
    Xh = X / size
    eps = float(epsilon_of(D, eta))
    r_hi = 4.0 * D.box

    def affine(R):
        return PolyDisc(np.array([eta, R * Xh]))

    best = UpperBound(math.inf, "affine", 0.0)
    R = _largest_radius(D, affine, r_hi)
    if R > 0:
        best = UpperBound(size / R, "affine", R)
    if family == "affine+quad":
        for mod in QUAD_MODULI:
            for p in range(QUAD_PHASES):
                q = mod * np.exp(2j * np.pi * p / QUAD_PHASES)

                def quad(R, q=q):
                    return PolyDisc(np.array([eta, R * Xh, [0.0, eps * q]]))

                R = _largest_radius(D, quad, r_hi)
                if R > 0 and size / R < best.value:
                    best = UpperBound(size / R, "quad", R, complex(q))
    if not math.isfinite(best.value):
        raise NoAdmissibleDiscError("no disc of the family fits at this point")
    return best


def catlin_tau(D: DomainModel, eta) -> float:
    """``min ((j+k)! |rho(eta)| / |d^j d-bar^k rho(eta)|)^(1/(j+k))`` over mixed derivatives."""
    eta = _check_interior(D, eta)
    r = abs(rho(D, eta))
    b = recentred(D, eta[0])
    vals = [
        (math.factorial(j + k) * r / (math.factorial(j) * math.factorial(k) * abs(c))) ** (1.0 / (j + k))
        for (j, k), c in b.coeffs.items()
        if j >= 1 and k >= 1
    ]
    if not vals:
        raise ValueError("no mixed derivative is nonzero at eta")
    return min(vals)


def catlin_lower_bound(D: DomainModel, eta, X, A: float = 1.0) -> float:
    """``(1/A) max(|X1| / tau(eta), |rho_w1 X1 + rho_w2 X2| / |rho(eta)|)``."""
    if A < 1:
        raise ValueError("A must be >= 1")
    eta = _check_interior(D, eta)
    X = as_points(X)
    r = abs(rho(D, eta))
    rho_w1 = recentred(D, eta[0]).coeff(1, 0)
    normal = abs(rho_w1 * X[0] + X[1]) / r
    return float(max(abs(X[0]) / catlin_tau(D, eta), normal) / A)


@dataclass
class SweepResult:
    rows: list[dict]
    slope_m: float
    slope_k: float
    ratio_min: float
    ratio_max: float
    A_hat: float


def metric_ratio_sweep(D: DomainModel, deltas, X, family: str = "affine+quad", map_fn=map) -> SweepResult:
    """Along ``eta = (0, -delta)``: M, the disc upper bound, the lower bound, and log-log slopes."""
    deltas = [float(d) for d in deltas]
    X = as_points(X)

    def one(d):
        eta = np.array([0.0, -d], dtype=complex)
        m = m_metric(D, eta, X)
        ku = kobayashi_upper(D, eta, X, family)
        kl = catlin_lower_bound(D, eta, X, 1.0)
        return {"delta": d, "mVal": m, "kUpper": ku.value, "kLower": kl, "ratio": ku.value / m,
                "disc": ku.kind, "R": ku.R, "q": [ku.q.real, ku.q.imag]}

    rows = list(map_fn(one, deltas))
    ld = np.log([r["delta"] for r in rows])
    sm = float(np.polyfit(ld, np.log([r["mVal"] for r in rows]), 1)[0])
    sk = float(np.polyfit(ld, np.log([r["kUpper"] for r in rows]), 1)[0])
    ratios = [r["ratio"] for r in rows]
    A_hat = max(1.0, max(r["kLower"] / r["kUpper"] for r in rows))
    return SweepResult(rows, sm, sk, float(min(ratios)), float(max(ratios)), A_hat)
