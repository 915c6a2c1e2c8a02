# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, isfinite, hypot
from libc.stdlib cimport malloc, free

cnp.import_array()


def eval_mixed(js, ks, cs, z):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] J = np.ascontiguousarray(js, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] K = np.ascontiguousarray(ks, dtype=np.int64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] C = np.ascontiguousarray(cs, dtype=np.complex128)
    zarr = np.asarray(z, dtype=np.complex128)
    shape = zarr.shape
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] Z = np.ascontiguousarray(zarr.ravel())
    cdef Py_ssize_t n = Z.shape[0], nt = C.shape[0], i, t, p
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n, dtype=np.float64)
    if nt == 0:
        return out.reshape(shape)
    cdef int top = 0
    for t in range(nt):
        if J[t] > top:
            top = J[t]
        if K[t] > top:
            top = K[t]
    cdef double *pr = <double *> malloc((top + 1) * sizeof(double))
    cdef double *pi = <double *> malloc((top + 1) * sizeof(double))
    cdef double x, y, ar, ai, br, bi, cr, ci, acc, tr, ti
    try:
        for i in range(n):
            x = Z[i].real
            y = Z[i].imag
            pr[0] = 1.0
            pi[0] = 0.0
            for p in range(1, top + 1):
                pr[p] = pr[p - 1] * x - pi[p - 1] * y
                pi[p] = pr[p - 1] * y + pi[p - 1] * x
            acc = 0.0
            for t in range(nt):
                ar = pr[J[t]]
                ai = pi[J[t]]
                # conj(z^k)
                br = pr[K[t]]
                bi = -pi[K[t]]
                tr = ar * br - ai * bi
                ti = ar * bi + ai * br
                cr = C[t].real
                ci = C[t].imag
                acc += cr * tr - ci * ti
            out[i] = acc
    finally:
        free(pr)
        free(pi)
    return out.reshape(shape)


cdef inline double _chordal_one(double zr, double zi, double wr, double wi):
    cdef bint zf = isfinite(zr) and isfinite(zi)
    cdef bint wf = isfinite(wr) and isfinite(wi)
    cdef double nz, nw, d, m
    if not zf and not wf:
        return 0.0
    if not zf:
        return 2.0 / sqrt(1.0 + wr * wr + wi * wi)
    if not wf:
        return 2.0 / sqrt(1.0 + zr * zr + zi * zi)
    nz = sqrt(1.0 + zr * zr + zi * zi)
    nw = sqrt(1.0 + wr * wr + wi * wi)
    d = 2.0 * hypot(zr - wr, zi - wi) / (nz * nw)
    if isfinite(d):
        return d
    # reciprocal form for huge finite pairs
    m = zr * zr + zi * zi
    zr, zi = zr / m, -zi / m
    m = wr * wr + wi * wi
    wr, wi = wr / m, -wi / m
    return 2.0 * hypot(zr - wr, zi - wi) / (sqrt(1.0 + zr * zr + zi * zi) * sqrt(1.0 + wr * wr + wi * wi))


def chordal(z, w):
    za, wa = np.broadcast_arrays(np.asarray(z, dtype=np.complex128), np.asarray(w, dtype=np.complex128))
    shape = za.shape
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] Z = np.ascontiguousarray(za.ravel())
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] W = np.ascontiguousarray(wa.ravel())
    cdef Py_ssize_t n = Z.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = _chordal_one(Z[i].real, Z[i].imag, W[i].real, W[i].imag)
    return out.reshape(shape)
