"""Pure numpy implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` must agree with them to
rounding.
"""
import numpy as np


def eval_mixed(js, ks, cs, z):
    """Evaluate ``sum Re(c * z**j * conj(z)**k)`` over the given terms.

    ``cs`` already carries the factor 2 for off-diagonal pairs, so only the
    ``j >= k`` half of a real polynomial is passed in.
    """
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros(z.shape, dtype=np.float64)
    if len(cs) == 0:
        return out
    top = int(max(np.max(js), np.max(ks)))
    powers = [np.ones_like(z)]
    for _ in range(top):
        powers.append(powers[-1] * z)
    for j, k, c in zip(js, ks, cs):
        out += (c * powers[j] * np.conj(powers[k])).real
    return out


def chordal(z, w):
    """Chordal distance on the Riemann sphere, with ``inf`` as the north pole."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    z, w = np.broadcast_arrays(z, w)
    zi = ~np.isfinite(z)
    wi = ~np.isfinite(w)
    with np.errstate(invalid="ignore", over="ignore"):
        nz = np.sqrt(1.0 + np.abs(z) ** 2)
        nw = np.sqrt(1.0 + np.abs(w) ** 2)
        d = 2.0 * np.abs(z - w) / (nz * nw)
        # one point at infinity: 2 / sqrt(1 + |finite|^2)
        d = np.where(zi & ~wi, 2.0 / nw, d)
        d = np.where(wi & ~zi, 2.0 / nz, d)
        d = np.where(zi & wi, 0.0, d)
    # |z - w| / (nz nw) overflows to nan for huge finite pairs; fall back to
    # the reciprocal form d(z, w) = d(1/z, 1/w)
    bad = ~np.isfinite(d)
    if np.any(bad):
        iz = 1.0 / z[bad]
        iw = 1.0 / w[bad]
        d[bad] = 2.0 * np.abs(iz - iw) / (np.sqrt(1.0 + np.abs(iz) ** 2) * np.sqrt(1.0 + np.abs(iw) ** 2))
    return d
