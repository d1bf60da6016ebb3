"""Pure numpy kernels for streaming Green's-function magnitudes.

This is the fallback used when the compiled extension is unavailable.  For
p <= 4 the permanent/determinant expansions here use exactly the same
expression trees (same association order, no FMA) as the compiled kernel,
so both backends produce bit-identical histograms.  Complex products are
written out over explicit real/imaginary arrays because numpy's vectorized
complex multiply may use FMA and drift from scalar arithmetic by one ulp.
For p >= 5 the backends agree to rounding error only.
"""

from __future__ import annotations

import numpy as np

IS_COMPILED = False


def _mul(a, b):
    """One complex multiply over (re, im) array pairs, naive 4-product form."""
    ar, ai = a
    br, bi = b
    return ar * br - ai * bi, ar * bi + ai * br


def _add(a, b):
    return a[0] + b[0], a[1] + b[1]


def _sub(a, b):
    return a[0] - b[0], a[1] - b[1]


def _split(m):
    return np.ascontiguousarray(m.real), np.ascontiguousarray(m.imag)


def _join(pair):
    out = np.empty(pair[0].shape, dtype=np.complex128)
    out.real, out.imag = pair
    return out


def _minor2(e, r0, r1, c0, c1, sign):
    """det (sign=-1) or perm (sign=+1) of the 2x2 [r0,r1] x [c0,c1] block."""
    t0 = _mul(e[r0][c0], e[r1][c1])
    t1 = _mul(e[r0][c1], e[r1][c0])
    return _add(t0, t1) if sign > 0 else _sub(t0, t1)


def _expand(e, rows, cols, sign):
    """Laplace expansion along the first row; mirrors the compiled kernel."""
    k = len(cols)
    if k == 1:
        return e[rows[0]][cols[0]]
    if k == 2:
        return _minor2(e, rows[0], rows[1], cols[0], cols[1], sign)
    total = None
    for j, c in enumerate(cols):
        rest = cols[:j] + cols[j + 1:]
        term = _mul(e[rows[0]][c], _expand(e, rows[1:], rest, sign))
        if total is None:
            total = term
        elif sign > 0 or j % 2 == 0:
            total = _add(total, term)
        else:
            total = _sub(total, term)
    return total


def _value_batch(m: np.ndarray, sign: int) -> tuple[np.ndarray, np.ndarray]:
    p = m.shape[-1]
    mr, mi = _split(m)
    e = [[(mr[:, x, y], mi[:, x, y]) for y in range(p)] for x in range(p)]
    return _expand(e, tuple(range(p)), tuple(range(p)), sign)


def _det_batch(m: np.ndarray) -> np.ndarray:
    """Determinants of a (S, p, p) batch, cofactor expansion along row 0."""
    if m.shape[-1] > 4:
        return np.linalg.det(m)
    return _join(_value_batch(m, -1))


def _perm_batch(m: np.ndarray) -> np.ndarray:
    """Permanents of a (S, p, p) batch; explicit expansion for p <= 4, Ryser above."""
    p = m.shape[-1]
    if p <= 4:
        return _join(_value_batch(m, +1))
    # Ryser: perm(A) = (-1)^p sum_{S != empty} (-1)^|S| prod_i sum_{j in S} a_ij
    S = m.shape[0]
    total = np.zeros(S, dtype=m.dtype)
    for mask in range(1, 1 << p):
        cols = [j for j in range(p) if mask >> j & 1]
        rowsums = m[:, :, cols].sum(axis=2)
        prod = rowsums[:, 0].copy()
        for i in range(1, p):
            prod *= rowsums[:, i]
        if (p - len(cols)) % 2:
            total -= prod
        else:
            total += prod
    return total


def _row_submatrices(u_eff: np.ndarray, basis: np.ndarray, bra: int) -> np.ndarray:
    rows = u_eff[basis[bra]]        # (p, n)
    sub = rows[:, basis]            # (p, S, p)
    return np.ascontiguousarray(np.swapaxes(sub, 0, 1))  # (S, p, p)


def _magnitudes(m: np.ndarray, use_perm: bool) -> np.ndarray:
    p = m.shape[-1]
    if p <= 4:
        vr, vi = _value_batch(m, +1 if use_perm else -1)
    else:
        v = _perm_batch(m) if use_perm else np.linalg.det(m)
        vr, vi = v.real, v.imag
    return np.sqrt(vr * vr + vi * vi)


def row_magnitudes(u_eff, basis, norms, bra, use_perm) -> np.ndarray:
    """|Green's function| for one bra row against every ket, in basis order."""
    m = _row_submatrices(u_eff, basis, bra)
    return (_magnitudes(m, use_perm) * norms[bra]) * norms


def accumulate_bins(u_eff, basis, norms, use_perm, bin_width, row_start, row_end):
    """Histogram of floor(|element| / bin_width) over rows [row_start, row_end)."""
    out: dict[int, int] = {}
    for bra in range(row_start, row_end):
        mags = row_magnitudes(u_eff, basis, norms, bra, use_perm)
        bins = np.floor(mags / bin_width).astype(np.int64)
        idx, cnt = np.unique(bins, return_counts=True)
        for i, c in zip(idx.tolist(), cnt.tolist()):
            out[i] = out.get(i, 0) + c
    return out
