"""Constructive renormalization of non-normal sequences.

Given maps ``f_n`` from the unit disc into a space carrying a family of
functionals ``J``, the engine locates the smallest witness ratio
``sigma_n = inf |eps| / (1 - |t|)`` over pairs with ``J_{f(t)}(f(t + eps)) >= k``,
picks a pair inside the band ``[sigma_n, sigma_n / alpha)``, and certifies the
renormalized maps ``g_n(t) = f_n(t_n + eps_n t)`` on ``D_{R_n}`` with
``R_n = alpha / sqrt(sigma_n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .domain import DomainModel, as_points, frame, j_from_frame, sup_norm_c2
from .errors import EmptyWitnessError, SelectionError

ALPHA_PLUS_CLAMP = 1.0 - 1e-6
ALPHA_CLAMP = 1.0 - 5e-7
TIE_RTOL = 1e-9
CAUCHY_SLACK = 1e-9


# -- J families ---------------------------------------------------------------

@dataclass(frozen=True)
class JFamily:
    """A metric ``dist`` on the target and functionals ``j(eta, w)``.

    ``j`` broadcasts over ``w``; ``pairwise(etas, ws)`` evaluates row by row,
    with ``ws`` carrying extra trailing sample axes. ``sample_ball`` draws
    points at distance at most ``tau`` from ``eta``, some of them on the sphere
    of radius ``tau``.
    """

    name: str
    dist: Callable
    j: Callable
    pairwise: Callable
    sample_ball: Callable
    point_ndim: int = 0


def _sphere_pairwise(etas, ws):
    etas = np.asarray(etas, dtype=np.complex128)
    ws = np.asarray(ws, dtype=np.complex128)
    extra = (slice(None),) * etas.ndim + (None,) * (ws.ndim - etas.ndim)
    return kernels.chordal(etas[extra], ws)


def _stereo(z):
    """Riemann sphere of diameter 2, so the chordal metric is the chord length."""
    z = complex(z)
    if not math.isfinite(abs(z)):
        return np.array([0.0, 0.0, 1.0])
    d = 1.0 + abs(z) ** 2
    return np.array([2 * z.real / d, 2 * z.imag / d, (abs(z) ** 2 - 1) / d])


def _unstereo(p):
    x, y, h = p[..., 0], p[..., 1], p[..., 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (x + 1j * y) / (1.0 - h)
    return np.where(h >= 1.0 - 1e-15, np.inf + 0j, z)


def _sphere_sample(eta, tau, rng, n):
    # cap of chord length tau around the image of eta
    tau = min(float(tau), 2.0)
    top = 2.0 * math.asin(tau / 2.0)
    ang = np.where(np.arange(n) % 2 == 0, top, top * np.sqrt(rng.uniform(size=n)))
    az = rng.uniform(0, 2 * np.pi, size=n)
    local = np.stack([np.sin(ang) * np.cos(az), np.sin(ang) * np.sin(az), np.cos(ang)], axis=-1)
    p = _stereo(eta)
    ez = np.array([0.0, 0.0, 1.0])
    v = np.cross(ez, p)
    s, c = np.linalg.norm(v), float(ez @ p)
    if s < 1e-15:
        R = np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    else:
        K = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
        R = np.eye(3) + K + K @ K * ((1 - c) / s**2)
    return _unstereo(local @ R.T)


def sphere_jfamily() -> JFamily:
    """Chordal distance on the Riemann sphere, used both as metric and as ``J``."""
    return JFamily("sphere", kernels.chordal, kernels.chordal, _sphere_pairwise, _sphere_sample)


def catlin_jfamily(D: DomainModel) -> JFamily:
    """``||.||_inf`` on C^2 with the pseudo-ball functionals of ``D``."""

    def dist(a, b):
        return sup_norm_c2(as_points(a) - as_points(b))

    def j(eta, w):
        return j_from_frame(frame(D, eta), w)

    def pairwise(etas, ws):
        etas = as_points(etas)
        ws = as_points(ws)
        out = np.empty(ws.shape[:-1])
        for i in range(etas.shape[0]):
            out[i] = j(etas[i], ws[i])
        return out

    def sample(eta, tau, rng, n):
        r = np.where(np.arange(n) % 2 == 0, 1.0, np.sqrt(rng.uniform(size=n)))
        z = tau * np.stack([r * np.exp(2j * np.pi * rng.uniform(size=n)),
                            np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))], axis=-1)
        swap = rng.uniform(size=n) < 0.5
        z[swap] = z[swap][:, ::-1]
        return as_points(eta) + z

    return JFamily("catlin", dist, j, pairwise, sample, point_ndim=1)


def vanishing_profile(J: JFamily, K: Sequence, taus: Sequence[float], rng: np.random.Generator, samples: int = 256) -> dict:
    """Monte-Carlo ``sup_{eta in K} sup_{d(eta, eta') <= tau} J_eta(eta')`` for each ``tau``.

    The hypothesis is certified when the profile is non-increasing and its last
    value is below 5% of the first.
    """
    taus = [float(t) for t in taus]
    if any(b >= a for a, b in zip(taus, taus[1:])) or min(taus) <= 0:
        raise ValueError("taus must be positive and strictly decreasing")
    values = []
    for t in taus:
        sup = 0.0
        for eta in K:
            pts = J.sample_ball(eta, t, rng, samples)
            sup = max(sup, float(np.max(J.j(eta, pts))))
        values.append(sup)
    decays = all(b <= a * (1 + 1e-12) for a, b in zip(values, values[1:])) and values[-1] < 0.05 * values[0]
    return {"taus": taus, "values": values, "certified": bool(decays)}


# -- Schwarz parameters -----------------------------------------------------

@dataclass(frozen=True)
class SchwarzParams:
    alpha_minus: float
    alpha_plus: float
    c: float
    slope: float
    k: float
    alpha: float
    clamped: bool = False

    def s(self, u):
        return self.slope * np.abs(u)


def schwarz_params(alpha_minus: float, alpha_plus: float, c: float, slope: float, k: float = 1.0,
                   alpha: float | None = None) -> SchwarzParams:
    """Validate and normalise: ``k <= 0.99 c`` and ``alpha_plus = 1`` is clamped below 1."""
    if c <= 0 or k <= 0 or slope < 0:
        raise ValueError("c and k must be positive and the slope nonnegative")
    clamped = alpha_plus >= 1.0
    if clamped:
        alpha_plus = ALPHA_PLUS_CLAMP
        alpha_minus = min(alpha_minus, alpha_plus)
        alpha = ALPHA_CLAMP
    if not 0 < alpha_minus <= alpha_plus < 1:
        raise ValueError(f"need 0 < alpha- <= alpha+ < 1, got {alpha_minus}, {alpha_plus}")
    if alpha is None:
        alpha = 0.5 * (alpha_plus + 1.0)
    if not alpha_plus < alpha < 1:
        raise ValueError(f"alpha must lie in (alpha+, 1), got {alpha}")
    return SchwarzParams(alpha_minus, alpha_plus, c, slope, min(k, 0.99 * c), alpha, clamped)


# -- Schwarz check ------------------------------------------------------------

def _disc_grid(radius: float, n_r: int, n_th: int, boundary: bool = True) -> np.ndarray:
    r = radius * np.sqrt((np.arange(n_r) + 0.5) / n_r)
    if boundary:
        r = np.append(r, radius)
    th = 2 * np.pi * np.arange(n_th) / n_th
    return np.concatenate([[0j], (r[:, None] * np.exp(1j * th)[None, :]).ravel()])


@dataclass
class SchwarzReport:
    ok: bool
    worst: float
    tested: int
    premise_held: int
    witness: dict | None = None
    clamp_dependent: bool = False


def schwarz_check(f: Callable, J: JFamily, p: SchwarzParams, rng: np.random.Generator,
                  bases: int = 64, n_r: int = 6, n_th: int = 48) -> SchwarzReport:
    """Sample the Schwarz-type implication for one map ``f`` of the closed disc.

    For random ``(t0, eps0)`` with ``|t0| + |eps0| < 1``: when
    ``J_{f(t0)}(f(t0 + t eps0)) <= c`` on a dense sample of ``D_{alpha+}``
    (boundary included), the value must stay below ``s(|t|)`` on ``D_{alpha-}``.
    ``worst`` is the largest ``J - s(|t|)`` over premised samples. With a clamped
    ``alpha+`` the maximum principle only gives ``J <= s(|t|) / alpha+``; excess
    within that slack passes but is flagged ``clamp_dependent``.
    """
    outer = _disc_grid(p.alpha_plus, n_r, 4 * n_th)
    inner = _disc_grid(p.alpha_minus, n_r, n_th)
    worst = -np.inf
    witness = None
    held = 0
    clamp_hit = False
    ok = True
    for _ in range(bases):
        s = rng.uniform(0.0, 1.0)
        rt = (1.0 - s) * math.sqrt(rng.uniform())
        t0 = rt * np.exp(2j * np.pi * rng.uniform())
        e0 = s * (1.0 - rt) * (1 - 1e-9) * np.exp(2j * np.pi * rng.uniform())
        if e0 == 0:
            continue
        base = f(np.asarray(t0))
        vals = J.j(base, f(t0 + outer * e0))
        if not np.max(vals) <= p.c:
            continue
        held += 1
        jin = J.j(base, f(t0 + inner * e0))
        excess = jin - p.s(inner)
        i = int(np.argmax(excess))
        if excess[i] > worst:
            worst = float(excess[i])
            witness = {"t0": [t0.real, t0.imag], "eps0": [e0.real, e0.imag],
                       "t": [inner[i].real, inner[i].imag], "J": float(jin[i]), "s": float(p.s(inner[i]))}
        slack = p.s(inner) * (1.0 / p.alpha_plus - 1.0) + 1e-12 if p.clamped else 1e-12
        if np.any(excess > slack):
            ok = False
        elif np.any(excess > 1e-12):
            clamp_hit = True
    if held == 0:
        worst = 0.0
    return SchwarzReport(ok, worst, bases, held, witness, clamp_hit)


# -- sigma estimation -----------------------------------------------------------

@dataclass(frozen=True)
class SigmaGrid:
    """Sampling of the pair space ``{(t, eps) : |t| + |eps| < 1}``.

    ``t`` runs over a polar grid; each ``eps`` direction is a ray scanned on a
    log grid and the first crossing of ``J = k`` is bisected. Around the best
    coarse pair ``rounds`` local grids of ``local`` x ``local`` points in ``t``
    shrink by ``factor``, and a final simplex search polishes ``t``.
    """

    t_radii: int = 20
    t_max: float = 0.95
    t_angles: int = 16
    eps_angles: int = 16
    eps_radii: int = 200
    eps_min: float = 1e-6
    rounds: int = 2
    factor: float = 10.0
    local: int = 21
    direction_rtol: float = 0.02


@dataclass
class SigmaResult:
    sigma: float
    t: complex
    eps: complex
    coarse_sigma: float


def _first_crossing(f, J, k, t, theta, rmax, rmin, n_scan, bisect=60):
    """Smallest ``r`` on each ray ``t + r e^{i theta}`` with ``J >= k`` (``inf`` if none).

    ``t``, ``theta``, ``rmax`` are flat arrays of equal length.
    """
    u = np.linspace(0.0, 1.0, n_scan)
    lo_r = np.minimum(rmin, rmax * 0.5)
    radii = lo_r[:, None] * (rmax[:, None] / lo_r[:, None]) ** u[None, :]
    radii[:, -1] = rmax * (1 - 1e-12)
    dirs = np.exp(1j * theta)
    base = f(t)
    vals = J.pairwise(base, f(t[:, None] + radii * dirs[:, None]))
    hit = vals >= k
    any_hit = hit.any(axis=1)
    first = np.argmax(hit, axis=1)
    lo = np.where(first > 0, radii[np.arange(len(t)), np.maximum(first - 1, 0)], 0.0)
    hi = radii[np.arange(len(t)), first]
    for _ in range(bisect):
        mid = 0.5 * (lo + hi)
        v = J.pairwise(base, f(t + mid * dirs)[:, None])[:, 0]
        up = v >= k
        hi = np.where(up, mid, hi)
        lo = np.where(up, lo, mid)
    return np.where(any_hit, hi, np.inf)


def _ratio_field(f, J, k, t, theta, grid, rmin=None, n_scan=None):
    rmax = 1.0 - np.abs(t)
    if rmin is None:
        rmin = np.full(len(t), grid.eps_min)
    r = _first_crossing(f, J, k, t, theta, rmax, rmin, n_scan or grid.eps_radii)
    return r / rmax, r


def _pick(values: np.ndarray, prefer: np.ndarray | None = None) -> int:
    """Index of the minimum, ties within ``TIE_RTOL`` broken by ``prefer`` then order."""
    best = float(np.min(values))
    tied = np.flatnonzero(values <= best * (1 + TIE_RTOL) + 1e-300)
    if prefer is not None:
        tied = tied[np.argsort(prefer[tied], kind="stable")]
    return int(tied[0])


def sigma_estimate(f: Callable, J: JFamily, k: float, grid: SigmaGrid = SigmaGrid()) -> SigmaResult:
    """Smallest witness ratio ``|eps| / (1 - |t|)`` with ``J_{f(t)}(f(t + eps)) >= k``.

    Raises :class:`EmptyWitnessError` when no sampled pair reaches ``k``.
    Directions of ``eps`` stay on the coarse angular grid; ties between
    directions resolve to the first one, so symmetric problems get a canonical
    answer.
    """
    radii = np.linspace(0.0, grid.t_max, grid.t_radii)
    th_t = 2 * np.pi * np.arange(grid.t_angles) / grid.t_angles
    tpts = np.concatenate([[0j], (radii[1:, None] * np.exp(1j * th_t)[None, :]).ravel()])
    th_e = 2 * np.pi * np.arange(grid.eps_angles) / grid.eps_angles
    T = np.repeat(tpts, len(th_e))
    TH = np.tile(th_e, len(tpts))
    ratio, r = _ratio_field(f, J, k, T, TH, grid)
    if not np.isfinite(ratio).any():
        raise EmptyWitnessError("empty witness set: no sampled pair reaches J >= k")
    coarse = float(np.min(ratio))
    per_dir = ratio.reshape(len(tpts), len(th_e)).min(axis=0)
    # one representative per group of tied directions: the lowest index
    order = []
    for d in range(len(th_e)):
        if per_dir[d] > coarse * (1 + grid.direction_rtol):
            continue
        if any(abs(per_dir[d] - per_dir[e]) <= TIE_RTOL * per_dir[e] for e in order):
            continue
        order.append(d)
    results = []
    step0 = grid.t_max / (grid.t_radii - 1)
    for d in order:
        rows = ratio.reshape(len(tpts), len(th_e))[:, d]
        i = _pick(rows)
        t_best, val = tpts[i], rows[i]
        r_best = r.reshape(len(tpts), len(th_e))[i, d]
        theta = th_e[d]
        half = grid.local // 2
        off = np.arange(-half, half + 1)
        ox, oy = np.meshgrid(off, off, indexing="ij")
        prefer = (np.abs(ox) + np.abs(oy)).ravel()
        step = step0
        for _ in range(grid.rounds):
            step /= grid.factor
            cand = t_best + step * (ox + 1j * oy).ravel()
            inside = np.abs(cand) < grid.t_max
            cand = cand[inside]
            rmin = np.full(len(cand), max(r_best / 100.0, grid.eps_min * 1e-3))
            rat, rr = _ratio_field(f, J, k, cand, np.full(len(cand), theta), grid, rmin, 64)
            if not np.isfinite(rat).any():
                break
            j = _pick(rat, prefer[inside])
            if rat[j] < val * (1 - TIE_RTOL):
                t_best, val, r_best = cand[j], rat[j], rr[j]
        t_best, val, r_best = _polish_t(f, J, k, t_best, theta, val, r_best, step, grid)
        results.append((val, d, t_best, r_best, theta))
    vals = np.array([v[0] for v in results])
    best = results[_pick(vals)]
    val, _, t_best, r_best, theta = best
    return SigmaResult(float(val), complex(t_best), complex(r_best * np.exp(1j * theta)), coarse)


def _polish_t(f, J, k, t0, theta, val0, r0, step, grid):
    def ratio_at(x):
        t = complex(x[0], x[1]) * step + t0
        if abs(t) >= grid.t_max:
            return np.inf, np.inf
        rat, rr = _ratio_field(f, J, k, np.array([t]), np.array([theta]), grid,
                               np.array([max(r0 / 100.0, grid.eps_min * 1e-3)]), 64)
        return float(rat[0]), float(rr[0])

    res = minimize(lambda x: ratio_at(x)[0], np.zeros(2), method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-16, "initial_simplex": [[0, 0], [0.5, 0], [0, 0.5]],
                            "maxiter": 400})
    val, rr = ratio_at(res.x)
    # keep the grid point unless the simplex found a real improvement
    if np.isfinite(val) and val < val0 * (1 - 1e-12):
        return complex(res.x[0], res.x[1]) * step + t0, val, rr
    return t0, val0, r0


# -- renormalization --------------------------------------------------------------

@dataclass
class RenormRecord:
    n: int
    t_prime: complex
    eps_prime: complex
    sigma: float
    t: complex
    eps: complex
    R: float
    ratio: float
    sep: float
    worst_schwarz: float
    cert_ok: bool
    witness: dict | None = None

    def g(self, f: Callable) -> Callable:
        t, e = self.t, self.eps
        return lambda s: f(t + e * np.asarray(s))


@dataclass
class RenormResult:
    records: list[RenormRecord]
    dropped: list[dict]
    cauchy: list[float] = field(default_factory=list)
    cauchy_ok: bool = True
    r0_trend_ok: bool = True


def admissible(sigma: float, alpha: float, alpha_plus: float) -> bool:
    """The two conditions that let the selected scale carry the Schwarz property."""
    q = math.sqrt(sigma)
    return q + alpha < alpha / q and alpha * (1.0 - q) > alpha_plus


def prescaled(f: Callable, t_prime: complex, eps_prime: complex) -> tuple[Callable, float]:
    """``f(rho .)`` with ``rho = max(sqrt|eps'|, 2(|t'| + |eps'|))``, for ``t' -> 0`` sequences."""
    rho_n = max(math.sqrt(abs(eps_prime)), 2.0 * (abs(t_prime) + abs(eps_prime)))
    rho_n = min(rho_n, 1.0)
    return (lambda z: f(rho_n * np.asarray(z))), rho_n


def certification_grid(R: float, alpha_minus: float) -> tuple[np.ndarray, np.ndarray]:
    """50 points of ``D_R`` and 50 of ``D_{alpha-}`` (polar, 5 radii x 10 angles)."""
    th = 2 * np.pi * np.arange(10) / 10
    rad = np.sqrt((np.arange(5) + 0.5) / 5)
    unit = (rad[:, None] * np.exp(1j * th)[None, :]).ravel()
    return R * unit, alpha_minus * unit


def renormalize_one(n: int, f: Callable, J: JFamily, p: SchwarzParams, witness: tuple[complex, complex],
                    grid: SigmaGrid = SigmaGrid()) -> RenormRecord | dict:
    """Renormalize one map; returns a record, or a dict describing why the index is dropped."""
    tp, ep = complex(witness[0]), complex(witness[1])
    if not 2 * abs(tp) + abs(ep) < 1:
        raise ValueError(f"index {n}: witness violates 2|t'| + |eps'| < 1")
    res = sigma_estimate(f, J, p.k, grid)
    wj = float(J.j(f(np.asarray(tp)), f(np.asarray(tp + ep))))
    if wj < p.k:
        raise ValueError(f"index {n}: witness has J = {wj:.6g} < k = {p.k}")
    sigma = res.sigma
    if not admissible(sigma, p.alpha, p.alpha_plus):
        return {"n": n, "sigma": sigma, "reason": "admissibility"}
    ratio = abs(res.eps) / (1 - abs(res.t))
    if not sigma <= ratio * (1 + 1e-12) or not ratio < sigma / p.alpha:
        raise SelectionError(f"index {n}: ratio {ratio:.6g} outside [sigma, sigma/alpha) with sigma {sigma:.6g}")
    sep = float(J.j(f(np.asarray(res.t)), f(np.asarray(res.t + res.eps))))
    if sep < p.k:
        raise SelectionError(f"index {n}: selected pair has J = {sep:.6g} < k")
    R = p.alpha / math.sqrt(sigma)
    if not abs(res.t) + abs(res.eps) * (R + 1) < 1:
        raise SelectionError(f"index {n}: g_n is not defined on D_(R+1)")
    ts, us = certification_grid(R, p.alpha_minus)
    g = lambda s: f(res.t + res.eps * np.asarray(s))
    base = g(ts)
    moved = g(ts[:, None] + us[None, :])
    vals = J.pairwise(base, moved)
    excess = vals - p.s(us)[None, :]
    i, jj = np.unravel_index(int(np.argmax(excess)), excess.shape)
    worst = float(excess[i, jj])
    wit = None
    if worst > 0:
        wit = {"n": n, "t": [ts[i].real, ts[i].imag], "u": [us[jj].real, us[jj].imag], "J": float(vals[i, jj])}
    return RenormRecord(n, tp, ep, sigma, res.t, res.eps, R, ratio, sep, worst, worst <= 0, wit)


def renormalize(seq: Sequence[tuple[int, Callable]], J: JFamily, p: SchwarzParams,
                witnesses: Sequence[tuple[complex, complex]], grid: SigmaGrid = SigmaGrid(),
                compare: np.ndarray | None = None, map_fn=map) -> RenormResult:
    """Run the engine over ``(n, f_n)``; ``map_fn`` may be a parallel map."""
    items = list(zip(seq, witnesses))
    out = list(map_fn(lambda it: renormalize_one(it[0][0], it[0][1], J, p, it[1], grid), items))
    records = [r for r in out if isinstance(r, RenormRecord)]
    dropped = [r for r in out if isinstance(r, dict)]
    fs = {n: f for n, f in seq}
    if compare is None:
        compare = fixed_compare_grid()
    diffs = []
    prev = None
    for rec in records:
        cur = rec.g(fs[rec.n])(compare)
        if prev is not None:
            diffs.append(float(np.max(J.dist(prev, cur))))
        prev = cur
    cauchy_ok = all(b <= a + CAUCHY_SLACK for a, b in zip(diffs, diffs[1:]))
    r0 = [abs(r.t) for r in records]
    trend = all(b <= a + CAUCHY_SLACK for a, b in zip(r0, r0[1:]))
    return RenormResult(records, dropped, diffs, cauchy_ok, trend)


def fixed_compare_grid() -> np.ndarray:
    """20 points of the closed unit disc: two rings of ten."""
    th = 2 * np.pi * np.arange(10) / 10
    return np.concatenate([0.5 * np.exp(1j * th), np.exp(1j * th)])


# -- built-in suites ----------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    k: float = 0.5
    alpha_minus: float = 0.25
    alpha_plus: float = 0.5
    c: float = 1.0
    slope: float = 2.4
    indices: tuple[int, ...] = tuple(range(10, 201, 10))
    domain: str = "egg1"
    discs: int = 200

    def params(self) -> SchwarzParams:
        return schwarz_params(self.alpha_minus, self.alpha_plus, self.c, self.slope, self.k)


def suite_maps(name: str, n: int) -> tuple[Callable, tuple[complex, complex]]:
    """Map ``f_n`` and witness pair ``(t'_n, eps'_n)`` of a built-in sequence."""
    if name == "zalcman-nz":
        return (lambda z: n * np.asarray(z, dtype=np.complex128)), (0j, complex(1.0 / math.sqrt(n)))
    if name == "zalcman-exp":
        return (lambda z: np.exp(n * np.asarray(z, dtype=np.complex128))), (0j, complex(0.0, math.pi / n))
    if name == "constant":
        return (lambda z: np.ones_like(np.asarray(z, dtype=np.complex128))), (0j, 0.5 + 0j)
    raise KeyError(f"unknown map sequence {name!r}")


BUILTIN_SUITES = {
    "zalcman-nz": Suite("zalcman-nz"),
    "zalcman-exp": Suite("zalcman-exp"),
    "constant": Suite("constant", indices=(10, 20)),
    "catlin-discs": Suite("catlin-discs", k=1.0, alpha_minus=1.0, alpha_plus=1.0, c=1.0, slope=1.0, indices=()),
}
