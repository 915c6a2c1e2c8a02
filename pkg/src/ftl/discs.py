"""Polynomial analytic discs in C^2 and containment in a model domain."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import DomainModel, as_points, in_box, rho
from .poly import eval_poly

EDGE = 1.0 - 1e-6


@dataclass(frozen=True, eq=False)
class PolyDisc:
    """``f(t) = sum_i coeffs[i] t^i`` with ``coeffs`` of shape ``(degree + 1, 2)``."""

    coeffs: np.ndarray

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=np.complex128)
        out = np.zeros(t.shape + (2,), dtype=np.complex128)
        for c in self.coeffs[::-1]:
            out = out * t[..., None] + c
        return out

    @property
    def centre(self) -> np.ndarray:
        return self.coeffs[0].copy()

    def scaled(self, lam: float) -> "PolyDisc":
        """Same centre, non-constant part multiplied by ``lam``."""
        c = self.coeffs.copy()
        c[1:] *= lam
        return PolyDisc(c)

    def derivative0(self) -> np.ndarray:
        return self.coeffs[1].copy() if len(self.coeffs) > 1 else np.zeros(2, complex)


def containment_samples(n_boundary: int = 256, n_radii: int = 64, edge: float = EDGE) -> np.ndarray:
    """Parameter samples: the circle ``|t| = edge`` plus interior rings."""
    th = 2 * np.pi * np.arange(n_boundary) / n_boundary
    ring = edge * np.exp(1j * th)
    radii = edge * (np.arange(1, n_radii + 1) / (n_radii + 1))
    inner = (radii[:, None] * np.exp(1j * th[:: max(1, n_boundary // 32)])[None, :]).ravel()
    return np.concatenate([[0j], inner, ring])


_SAMPLES = containment_samples()


def margin(D: DomainModel, f, samples: np.ndarray | None = None) -> float:
    """``max(rho, ||.||_inf - box)`` over the samples; negative means inside ``U0^-``."""
    pts = f(_SAMPLES if samples is None else samples)
    r = np.asarray(rho(D, pts))
    b = np.maximum(np.abs(pts[..., 0]), np.abs(pts[..., 1])) - D.box
    return float(max(np.max(r), np.max(b)))


def fits(D: DomainModel, f, samples: np.ndarray | None = None) -> bool:
    # rho o f is subharmonic and |f_i| too, so the edge circle carries the max
    return margin(D, f, samples) < 0


def fit_scale(D: DomainModel, disc: PolyDisc, hi: float = 1.0, iters: int = 60) -> float:
    """Largest ``lam <= hi`` (by bisection) with ``disc.scaled(lam)`` inside ``U0^-``."""
    if not fits(D, disc.scaled(0.0)):
        raise ValueError("disc centre is not an interior point")
    if fits(D, disc.scaled(hi)):
        return hi
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fits(D, disc.scaled(mid)):
            lo = mid
        else:
            hi = mid
    return lo


def random_centre(D: DomainModel, rng: np.random.Generator, c: float, eps_range=(1e-8, 1e-1)) -> np.ndarray:
    """Interior point with ``||eta||_inf <= c``: log-uniform depth below the boundary."""
    for _ in range(1000):
        w1 = c * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        eps = 10 ** rng.uniform(np.log10(eps_range[0]), np.log10(eps_range[1]))
        re = -0.5 * eval_poly(D.P, w1) - eps
        lim = c * c - re * re
        if lim < 0:
            continue
        im = rng.uniform(-1, 1) * np.sqrt(lim)
        eta = np.array([w1, complex(re, im)])
        if np.max(np.abs(eta)) <= c and rho(D, eta) < 0 and in_box(D, eta):
            return eta
    raise RuntimeError("no interior point found within the requested norm")


def random_disc(D: DomainModel, rng: np.random.Generator, centre, degree: int = 4,
                fill: float = 0.999) -> PolyDisc:
    """Random polynomial disc through ``centre``, scaled to ``fill`` of its largest fitting size.

    Coefficients of ``t^i`` are complex Gaussian, with the normal component
    weighted by the depth of the centre so that discs are not dominated by
    motion transverse to the boundary.
    """
    centre = as_points(centre)
    depth = max(-0.5 * rho(D, centre), 1e-300)
    coeffs = np.zeros((degree + 1, 2), dtype=np.complex128)
    coeffs[0] = centre
    for i in range(1, degree + 1):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        coeffs[i] = z * np.array([1.0, depth ** rng.uniform(0.0, 1.0)]) / i
    disc = PolyDisc(coeffs)
    lam = fit_scale(D, disc, hi=1e6)
    return disc.scaled(fill * lam)
