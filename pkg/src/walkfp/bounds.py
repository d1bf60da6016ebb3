"""Counting bounds on the distinguishing power of p-particle walks.

Numeric evaluators for the fingerprint-count bound Z(p,N), the Latin-square
SRG count lower bound S(N), their ratio R(p,N) in log domain, and the
widget-class count X_p (exact below p=5, Burnside lower bound in general).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

_EXACT_BINOMIAL_BIT_LIMIT = 1_000_000


@dataclass(frozen=True)
class BoundReport:
    p: int
    n: int
    log_s_lower: float
    log_z_upper: float
    log_r_lower: float
    x_p_used: int
    x_p_is_lower_bound: bool

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "N": self.n,
            "log_S_lower": self.log_s_lower,
            "log_Z_upper": self.log_z_upper,
            "log_R_lower": self.log_r_lower,
            "x_p_used": self.x_p_used,
            "x_p_is_lower_bound": self.x_p_is_lower_bound,
        }


def evolution_operator_element_count(p: int, n: int) -> int:
    """Y = C(N+p-1, p)^2: squared dimension of the p-boson state space."""
    if p < 1 or n < 1:
        raise ValueError("p and N must be >= 1")
    return math.comb(n + p - 1, p) ** 2


def fingerprint_count(x_p: int, y: int) -> int:
    """Z = C(x_p + y - 1, x_p - 1): multisets of y elements over x_p values."""
    if x_p < 1 or y < 1:
        raise ValueError("x_p and y must be >= 1")
    # reject astronomically large exact evaluations toward the log-domain path
    approx_bits = (x_p - 1) * (math.log2(y + x_p) + 1)
    if approx_bits > _EXACT_BINOMIAL_BIT_LIMIT:
        raise OverflowError(
            "inputs too large for exact evaluation; use the log-domain bound"
        )
    return math.comb(x_p + y - 1, x_p - 1)


def latin_square_srg_lower_bound_log(n: int) -> float:
    """log of S(N) >= (1/6) (sqrt(N)!)^(2 sqrt(N) - 3) N^(-N/2), N a perfect square."""
    root = math.isqrt(n)
    if root * root != n or n < 4:
        raise ValueError(f"N={n} is not a perfect square >= 4")
    return (2 * root - 3) * math.lgamma(root + 1) - (n / 2) * math.log(n) - math.log(6)


def log_z_upper(p: int, n: int, x_p: int) -> float:
    """log of the bound Z(p,N) < N^(2 x_p (p+1))."""
    return 2 * x_p * (p + 1) * math.log(n)


def ratio_lower_bound_log(p: int, n: int, x_p: int | None = None) -> BoundReport:
    """Lower bound on log R(p,N) = log S(N) - log Z(p,N).

    When x_p is not supplied, the Burnside lower bound on the widget-class
    count is substituted.  Since X_p enters negatively, substituting a lower
    bound yields an upper-leaning estimate of log R; pass an explicit x_p
    for rigorous claims.
    """
    is_lb = x_p is None
    if x_p is None:
        x_p, _ = widget_class_count_bounds(p)
    log_s = latin_square_srg_lower_bound_log(n)
    log_z = log_z_upper(p, n, x_p)
    return BoundReport(p, n, log_s, log_z, log_s - log_z, x_p, is_lb)


def widget_class_count_bounds(p: int) -> tuple[int, float]:
    """(lower bound, log2 upper bound) on X_p, the widget-class count.

    Lower: the identity term of the Burnside sum, ceil(2^(p^2) / (2 (p!)^2)).
    Upper: p^2 in log2; the sub-quadratic correction term is non-constructive
    and intentionally omitted.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    lower = -(-(2 ** (p * p)) // (2 * math.factorial(p) ** 2))
    return lower, float(p * p)


def _cell_cycles(perm: list[int], size: int) -> int:
    seen = [False] * size
    cycles = 0
    for start in range(size):
        if seen[start]:
            continue
        cycles += 1
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
    return cycles


def _group_elements(p: int):
    """The action of (S_p x S_p) x| S_2 on p x p cells, as cell permutations."""
    for sigma in itertools.permutations(range(p)):
        for tau in itertools.permutations(range(p)):
            for swap in (False, True):
                perm = [0] * (p * p)
                for i in range(p):
                    for j in range(p):
                        if swap:
                            perm[i * p + j] = sigma[j] * p + tau[i]
                        else:
                            perm[i * p + j] = sigma[i] * p + tau[j]
                yield perm


def distinct_edge_pattern_count(p: int, method: str = "canonical") -> int:
    """Equivalence classes of p x p binary arrays under row/column permutation
    and transposition.

    'canonical' buckets all 2^(p^2) arrays by their orbit minimum; 'burnside'
    averages fixed-point counts over the group.  Both are exact and must
    agree; the cross-check is exercised by the test suite.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if p > 4:
        raise ValueError("brute force is capped at p=4 (2^(p^2) arrays)")
    cells = p * p
    group = list(_group_elements(p))
    if method == "burnside":
        total = sum(2 ** _cell_cycles(perm, cells) for perm in group)
        assert total % len(group) == 0
        return total // len(group)
    if method == "canonical":
        arrs = np.arange(2 ** cells, dtype=np.uint32)
        best = arrs.copy()
        for perm in group:
            img = np.zeros_like(arrs)
            for cell in range(cells):
                img |= ((arrs >> cell) & 1) << perm[cell]
            np.minimum(best, img, out=best)
        return int(np.unique(best).size)
    raise ValueError(f"unknown method {method!r}")
