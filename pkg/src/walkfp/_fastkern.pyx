# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for streaming Green's-function magnitudes.

Mirrors _purekern expression-for-expression for p <= 4 so that both backends
produce bit-identical histograms (the build disables FP contraction).
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libc.math cimport hypot, floor, sqrt
from libcpp.unordered_map cimport unordered_map

import numpy as np
cimport numpy as cnp

cnp.import_array()

IS_COMPILED = True

DEF MAXP = 16

ctypedef double complex cplx


cdef inline cplx _det2(cplx a00, cplx a01, cplx a10, cplx a11) nogil:
    return a00 * a11 - a01 * a10


cdef inline cplx _per2(cplx a00, cplx a01, cplx a10, cplx a11) nogil:
    return a00 * a11 + a01 * a10


cdef inline cplx _det3(cplx* a) nogil:
    # a is row-major 3x3; same association order as the numpy fallback
    return (a[0] * (a[4] * a[8] - a[5] * a[7])
            - a[1] * (a[3] * a[8] - a[5] * a[6])) \
        + a[2] * (a[3] * a[7] - a[4] * a[6])


cdef inline cplx _per3(cplx* a) nogil:
    return (a[0] * (a[4] * a[8] + a[5] * a[7])
            + a[1] * (a[3] * a[8] + a[5] * a[6])) \
        + a[2] * (a[3] * a[7] + a[4] * a[6])


cdef cplx _det4(cplx* a) nogil:
    cdef cplx m[9]
    cdef cplx minors[4]
    cdef int j, jj, r, c
    for j in range(4):
        c = 0
        for jj in range(4):
            if jj == j:
                continue
            for r in range(3):
                m[r * 3 + c] = a[(r + 1) * 4 + jj]
            c += 1
        minors[j] = _det3(m)
    return ((a[0] * minors[0] - a[1] * minors[1]) + a[2] * minors[2]) \
        - a[3] * minors[3]


cdef cplx _per4(cplx* a) nogil:
    cdef cplx m[9]
    cdef cplx minors[4]
    cdef int j, jj, r, c
    for j in range(4):
        c = 0
        for jj in range(4):
            if jj == j:
                continue
            for r in range(3):
                m[r * 3 + c] = a[(r + 1) * 4 + jj]
            c += 1
        minors[j] = _per3(m)
    return ((a[0] * minors[0] + a[1] * minors[1]) + a[2] * minors[2]) \
        + a[3] * minors[3]


cdef cplx _det_lu(cplx* a, int p) nogil:
    # Gaussian elimination with partial pivoting on a scratch copy
    cdef cplx det = 1.0
    cdef cplx tmp, factor
    cdef double best, mag
    cdef int i, j, k, piv
    for k in range(p):
        piv = k
        best = hypot(a[k * p + k].real, a[k * p + k].imag)
        for i in range(k + 1, p):
            mag = hypot(a[i * p + k].real, a[i * p + k].imag)
            if mag > best:
                best = mag
                piv = i
        if best == 0.0:
            return 0.0
        if piv != k:
            for j in range(p):
                tmp = a[k * p + j]
                a[k * p + j] = a[piv * p + j]
                a[piv * p + j] = tmp
            det = -det
        det = det * a[k * p + k]
        for i in range(k + 1, p):
            factor = a[i * p + k] / a[k * p + k]
            for j in range(k, p):
                a[i * p + j] = a[i * p + j] - factor * a[k * p + j]
    return det


cdef cplx _perm_ryser(cplx* a, int p) nogil:
    cdef cplx total = 0.0
    cdef cplx prod, rowsum
    cdef cplx rowsums[MAXP]
    cdef int mask, i, j, nbits
    for mask in range(1, 1 << p):
        nbits = 0
        for i in range(p):
            rowsum = 0.0
            for j in range(p):
                if mask >> j & 1:
                    rowsum = rowsum + a[i * p + j]
            rowsums[i] = rowsum
        for j in range(p):
            if mask >> j & 1:
                nbits += 1
        prod = rowsums[0]
        for i in range(1, p):
            prod = prod * rowsums[i]
        if (p - nbits) % 2:
            total = total - prod
        else:
            total = total + prod
    return total


cdef inline cplx _value(cplx* a, int p, bint use_perm) nogil:
    if p == 1:
        return a[0]
    if p == 2:
        if use_perm:
            return _per2(a[0], a[1], a[2], a[3])
        return _det2(a[0], a[1], a[2], a[3])
    if p == 3:
        if use_perm:
            return _per3(a)
        return _det3(a)
    if p == 4:
        if use_perm:
            return _per4(a)
        return _det4(a)
    if use_perm:
        return _perm_ryser(a, p)
    return _det_lu(a, p)


def row_magnitudes(cnp.ndarray[cplx, ndim=2] u_eff,
                   cnp.ndarray[cnp.int32_t, ndim=2] basis,
                   cnp.ndarray[cnp.float64_t, ndim=1] norms,
                   Py_ssize_t bra, bint use_perm):
    """|Green's function| for one bra row against every ket, in basis order."""
    cdef Py_ssize_t nstates = basis.shape[0]
    cdef int p = <int>basis.shape[1]
    cdef Py_ssize_t n = u_eff.shape[0]
    if p > MAXP:
        raise ValueError(f"particle count {p} exceeds kernel limit {MAXP}")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(nstates, dtype=np.float64)
    cdef cnp.ndarray[cplx, ndim=2] rows = np.ascontiguousarray(
        u_eff[np.asarray(basis[bra])]
    )
    cdef cplx sub[MAXP * MAXP]
    cdef cplx scratch[MAXP * MAXP]
    cdef cplx v
    cdef double nb = norms[bra]
    cdef Py_ssize_t s
    cdef int x, y
    with nogil:
        for s in range(nstates):
            for x in range(p):
                for y in range(p):
                    sub[x * p + y] = rows[x, basis[s, y]]
            if p > 4 and not use_perm:
                for x in range(p * p):
                    scratch[x] = sub[x]
                v = _det_lu(scratch, p)
            else:
                v = _value(sub, p, use_perm)
            # sqrt form rather than hypot: bit-identical to the numpy backend
            out[s] = (sqrt(v.real * v.real + v.imag * v.imag) * nb) * norms[s]
    return out


def accumulate_bins(cnp.ndarray[cplx, ndim=2] u_eff,
                    cnp.ndarray[cnp.int32_t, ndim=2] basis,
                    cnp.ndarray[cnp.float64_t, ndim=1] norms,
                    bint use_perm, double bin_width,
                    Py_ssize_t row_start, Py_ssize_t row_end):
    """Histogram of floor(|element| / bin_width) over rows [row_start, row_end)."""
    cdef Py_ssize_t nstates = basis.shape[0]
    cdef int p = <int>basis.shape[1]
    if p > MAXP:
        raise ValueError(f"particle count {p} exceeds kernel limit {MAXP}")
    cdef unordered_map[long long, long long] hist
    cdef cnp.ndarray[cplx, ndim=2] ue = np.ascontiguousarray(u_eff)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] bs = np.ascontiguousarray(basis)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] nm = np.ascontiguousarray(norms)
    cdef cplx rows[MAXP * 512]
    # rows buffer assumes n <= 512; the graphs here are far smaller
    cdef Py_ssize_t n = ue.shape[0]
    if n > 512:
        raise ValueError("graphs with more than 512 vertices are not supported")
    cdef cplx sub[MAXP * MAXP]
    cdef cplx scratch[MAXP * MAXP]
    cdef cplx v
    cdef double nb, mag
    cdef long long b
    cdef Py_ssize_t bra, s, j
    cdef int x, y
    cdef unordered_map[long long, long long].iterator it
    with nogil:
        for bra in range(row_start, row_end):
            for x in range(p):
                for j in range(n):
                    rows[x * n + j] = ue[bs[bra, x], j]
            nb = nm[bra]
            for s in range(nstates):
                for x in range(p):
                    for y in range(p):
                        sub[x * p + y] = rows[x * n + bs[s, y]]
                if p > 4 and not use_perm:
                    for x in range(p * p):
                        scratch[x] = sub[x]
                    v = _det_lu(scratch, p)
                else:
                    v = _value(sub, p, use_perm)
                mag = (sqrt(v.real * v.real + v.imag * v.imag) * nb) * nm[s]
                b = <long long>floor(mag / bin_width)
                hist[b] += 1
    out = {}
    it = hist.begin()
    while it != hist.end():
        out[deref(it).first] = deref(it).second
        inc(it)
    return out
