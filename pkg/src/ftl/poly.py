"""Real-valued polynomials in w, conj(w).

A :class:`MixedPoly` stores complex coefficients ``a[j, k]`` of the monomials
``w**j * conj(w)**k``. Real-valuedness is the conjugate symmetry
``a[k, j] == conj(a[j, k])``, which every operation here preserves exactly by
only ever computing the ``j >= k`` half and mirroring it.
"""
from __future__ import annotations

from math import comb
from typing import Iterable, Mapping

import numpy as np

from . import kernels

ZERO_SNAP = 1e-14
REALITY_TOL = 1e-12
SUBHARMONIC_TOL = -1e-10


class MixedPoly:
    """Immutable real polynomial ``sum a[j,k] w^j conj(w)^k`` with ``j + k <= m``."""

    __slots__ = ("m", "_upper", "_js", "_ks", "_cs")

    def __init__(self, m: int, coeffs: Mapping[tuple[int, int], complex] | None = None):
        if m < 0:
            raise ValueError(f"degree bound must be >= 0, got {m}")
        coeffs = dict(coeffs or {})
        upper: dict[tuple[int, int], complex] = {}
        for (j, k), c in coeffs.items():
            j, k, c = int(j), int(k), complex(c)
            if j < 0 or k < 0 or j + k > m:
                raise ValueError(f"monomial ({j},{k}) outside degree bound m={m}")
            if j < k:
                continue
            mirror = coeffs.get((k, j))
            if mirror is not None and abs(complex(mirror) - c.conjugate()) > REALITY_TOL * max(1.0, abs(c)):
                raise ValueError(f"coefficients ({j},{k}) and ({k},{j}) are not conjugate")
            if j == k:
                if abs(c.imag) > REALITY_TOL * max(1.0, abs(c)):
                    raise ValueError(f"diagonal coefficient ({j},{j}) must be real, got {c}")
                c = complex(c.real, 0.0)
            upper[(j, k)] = c
        for (j, k), c in coeffs.items():
            # pairs given only through their lower-half mirror
            if j < k and (k, j) not in coeffs:
                upper[(k, j)] = complex(c).conjugate()
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "_upper", _snap(upper))
        js, ks, cs = [], [], []
        for (j, k), c in sorted(self._upper.items()):
            js.append(j)
            ks.append(k)
            cs.append(c if j == k else 2.0 * c)
        object.__setattr__(self, "_js", np.array(js, dtype=np.int64))
        object.__setattr__(self, "_ks", np.array(ks, dtype=np.int64))
        object.__setattr__(self, "_cs", np.array(cs, dtype=np.complex128))

    def __setattr__(self, name, value):
        raise AttributeError("MixedPoly is immutable")

    @classmethod
    def from_upper(cls, upper: Mapping[tuple[int, int], complex], m: int | None = None) -> "MixedPoly":
        if m is None:
            m = max((j + k for j, k in upper), default=0)
        return cls(m, {jk: c for jk, c in upper.items() if jk[0] >= jk[1]})

    @classmethod
    def zero(cls, m: int = 0) -> "MixedPoly":
        return cls(m, {})

    @classmethod
    def modulus_power(cls, k: int, scale: float = 1.0) -> "MixedPoly":
        """``scale * |w|^(2k)``."""
        return cls(2 * k, {(k, k): scale})

    # -- coefficient access -------------------------------------------------
    def coeff(self, j: int, k: int) -> complex:
        if j >= k:
            return self._upper.get((j, k), 0j)
        return self._upper.get((k, j), 0j).conjugate()

    @property
    def coeffs(self) -> dict[tuple[int, int], complex]:
        """All nonzero coefficients, both halves."""
        out = {}
        for (j, k), c in self._upper.items():
            out[(j, k)] = c
            if j != k:
                out[(k, j)] = c.conjugate()
        return out

    def upper_items(self):
        return sorted(self._upper.items())

    @property
    def degree(self) -> int:
        return max((j + k for j, k in self._upper), default=0)

    def is_zero(self) -> bool:
        return not self._upper

    def __eq__(self, other):
        if not isinstance(other, MixedPoly):
            return NotImplemented
        return self._upper == other._upper

    def __hash__(self):
        return hash(tuple(sorted(self._upper.items())))

    def __repr__(self):
        terms = ", ".join(f"({j},{k}): {c:.6g}" for (j, k), c in self.upper_items())
        return f"MixedPoly(m={self.m}, {{{terms}}})"

    # -- algebra --------------------------------------------------------------
    def _combine(self, other: "MixedPoly", sign: float) -> "MixedPoly":
        upper = dict(self._upper)
        for jk, c in other._upper.items():
            upper[jk] = upper.get(jk, 0j) + sign * c
        return MixedPoly.from_upper(upper, max(self.m, other.m))

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __neg__(self):
        return self.scale(-1.0)

    def __mul__(self, alpha):
        return self.scale(alpha)

    __rmul__ = __mul__

    def scale(self, alpha: float) -> "MixedPoly":
        alpha = float(alpha)
        return MixedPoly.from_upper({jk: alpha * c for jk, c in self._upper.items()}, self.m)

    def compose_dilation(self, lam: float) -> "MixedPoly":
        """``w -> P(lam * w)`` for real ``lam``."""
        return MixedPoly.from_upper({(j, k): c * lam ** (j + k) for (j, k), c in self._upper.items()}, self.m)

    def mixed_part(self) -> "MixedPoly":
        return MixedPoly.from_upper({(j, k): c for (j, k), c in self._upper.items() if j >= 1 and k >= 1}, self.m)

    def harmonic_part(self) -> "MixedPoly":
        """Terms with ``j == 0`` or ``k == 0`` (including the constant)."""
        return MixedPoly.from_upper({(j, k): c for (j, k), c in self._upper.items() if k == 0}, self.m)

    def is_harmonic(self) -> bool:
        return all(k == 0 for (_, k) in self._upper)

    # -- evaluation -----------------------------------------------------------
    def __call__(self, z):
        return eval_poly(self, z)


def _snap(upper: dict) -> dict:
    return {jk: c for jk, c in upper.items() if abs(c) >= ZERO_SNAP}


def eval_poly(P: MixedPoly, z):
    """Value of ``P`` at ``z`` (scalar or array); the result is real.

    Only the ``j >= k`` half is summed, as ``Re`` of the term (doubled off the
    diagonal), so the imaginary part is zero by construction.
    """
    out = kernels.eval_mixed(P._js, P._ks, P._cs, z)
    if np.ndim(out) == 0:
        return float(out)
    return out


def recentre(P: MixedPoly, c: complex) -> MixedPoly:
    """Taylor coefficients of ``w -> P(c + w) - P(c)``."""
    c = complex(c)
    cb = c.conjugate()
    upper: dict[tuple[int, int], complex] = {}
    for (j, k), a in P.coeffs.items():
        for p in range(j + 1):
            cj = comb(j, p) * c ** (j - p)
            for q in range(k + 1):
                if p + q == 0 or p < q:
                    continue
                upper[(p, q)] = upper.get((p, q), 0j) + a * cj * comb(k, q) * cb ** (k - q)
    for p in range(P.m + 1):
        if (p, p) in upper:
            upper[(p, p)] = complex(upper[(p, p)].real, 0.0)
    return MixedPoly.from_upper(upper, P.m)


def laplacian_poly(P: MixedPoly) -> MixedPoly:
    """Euclidean Laplacian, using ``Lap(w^j conj(w)^k) = 4jk w^(j-1) conj(w)^(k-1)``."""
    upper = {(j - 1, k - 1): 4.0 * j * k * c for (j, k), c in P.upper_items() if j >= 1 and k >= 1}
    return MixedPoly.from_upper(upper, max(P.m - 2, 0))


def sup_norm(P: MixedPoly) -> float:
    """Maximum coefficient modulus."""
    return max((abs(c) for _, c in P.upper_items()), default=0.0)


def is_subharmonic(P: MixedPoly, box: float, n: int) -> tuple[bool, float]:
    """Grid test of ``Lap P >= 0`` on ``[-box, box]^2``; returns ``(ok, min value)``."""
    if n < 2:
        raise ValueError("grid count must be >= 2")
    if box <= 0:
        raise ValueError("box must be positive")
    xs = np.linspace(-box, box, n)
    grid = xs[None, :] + 1j * xs[:, None]
    vals = eval_poly(laplacian_poly(P), grid)
    low = float(np.min(vals))
    return low >= SUBHARMONIC_TOL, low


# -- text format ------------------------------------------------------------

def parse_poly_lines(lines: Iterable[tuple[int, str]], source: str = "<string>") -> dict[tuple[int, int], complex]:
    """Parse ``j k re im`` lines (``j >= k``) into an upper-half coefficient map.

    ``lines`` yields ``(line_number, text)``; malformed lines raise
    :class:`ftl.errors.DescriptorError` naming ``source`` and the line.
    """
    from .errors import DescriptorError

    upper: dict[tuple[int, int], complex] = {}
    for lineno, text in lines:
        parts = text.split()
        if len(parts) != 4:
            raise DescriptorError(source, lineno, f"expected 'j k re im', got {text.strip()!r}")
        try:
            j, k = int(parts[0]), int(parts[1])
            c = complex(float(parts[2]), float(parts[3]))
        except ValueError:
            raise DescriptorError(source, lineno, f"cannot parse coefficient line {text.strip()!r}") from None
        if j < k or k < 0:
            raise DescriptorError(source, lineno, f"only pairs with j >= k >= 0 may be listed, got ({j},{k})")
        if (j, k) in upper:
            raise DescriptorError(source, lineno, f"duplicate coefficient ({j},{k})")
        if j == k and c.imag != 0.0:
            raise DescriptorError(source, lineno, f"diagonal coefficient ({j},{k}) must be real")
        upper[(j, k)] = c
    return upper


def loads_poly(text: str, m: int | None = None, source: str = "<string>") -> MixedPoly:
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), 1) if ln.strip() and not ln.lstrip().startswith("#")]
    upper = parse_poly_lines(lines, source)
    return MixedPoly.from_upper(upper, m)


def dumps_poly(P: MixedPoly) -> str:
    return "".join(f"{j} {k} {c.real!r} {c.imag!r}\n" for (j, k), c in P.upper_items())
