"""Generalized-subgraph ("widget") machinery for multi-particle walks.

A widget abstracts one equivalence class of Green's functions: a p x p
matrix relating each bra vertex to each ket vertex by one of three
relations (same vertex, edge, or distinct-and-disconnected).  Internal
bra-bra and ket-ket adjacency never affects the value and is not
represented.  Two widgets are the same class when their relation matrices
agree up to permuting bra slots and ket slots.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .graphs import Graph, SrgParams
from .srg import PropagatorCoefficients

NEITHER, EDGE, SAME = 0, 1, 2
_CHAR = {"N": NEITHER, "E": EDGE, "S": SAME}
_CHAR_INV = {v: k for k, v in _CHAR.items()}

MAX_CENSUS_P = 4


@dataclass(frozen=True)
class Widget:
    """Relation pattern between p bra vertices and p ket vertices."""

    p: int
    relation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rel = self.relation
        if len(rel) != self.p or any(len(row) != self.p for row in rel):
            raise ValueError(f"relation matrix must be {self.p}x{self.p}")
        for row in rel:
            for v in row:
                if v not in (NEITHER, EDGE, SAME):
                    raise ValueError(f"invalid relation value {v}")
        # SAME entries must form a partial matching between bra and ket slots
        for x in range(self.p):
            if sum(1 for y in range(self.p) if rel[x][y] == SAME) > 1:
                raise ValueError(f"bra slot {x} equals more than one ket vertex")
        for y in range(self.p):
            if sum(1 for x in range(self.p) if rel[x][y] == SAME) > 1:
                raise ValueError(f"ket slot {y} equals more than one bra vertex")

    @classmethod
    def from_text(cls, text: str) -> "Widget":
        """Parse rows of E/S/N characters separated by '/', ',' or whitespace."""
        rows = [r for r in text.replace(",", "/").split() for r in r.split("/") if r]
        rel = []
        for row in rows:
            try:
                rel.append(tuple(_CHAR[c.upper()] for c in row))
            except KeyError as exc:
                raise ValueError(f"invalid relation character in {row!r}") from exc
        return cls(len(rel), tuple(rel))

    def to_text(self) -> str:
        return "/".join("".join(_CHAR_INV[v] for v in row) for row in self.relation)

    def code(self) -> int:
        """Base-3 encoding of the relation matrix, row-major."""
        c = 0
        for row in self.relation:
            for v in row:
                c = c * 3 + v
        return c

    def canonical_code(self) -> int:
        return _canonical_code(self.p, self.code())


PRESETS = {
    "empty2": Widget(2, ((NEITHER,) * 2,) * 2),
    "empty3": Widget(3, ((NEITHER,) * 3,) * 3),
    "complete3": Widget(3, ((EDGE,) * 3,) * 3),
}


def widget_preset(name: str) -> Widget:
    try:
        return PRESETS[name]
    except KeyError as exc:
        raise ValueError(f"unknown widget preset {name!r}") from exc


def _code_of_matrix(rel: np.ndarray) -> int:
    c = 0
    for v in rel.ravel():
        c = c * 3 + int(v)
    return c


@lru_cache(maxsize=None)
def _perm_pairs(p: int):
    return tuple(itertools.product(itertools.permutations(range(p)), repeat=2))


@lru_cache(maxsize=200_000)
def _canonical_code(p: int, code: int) -> int:
    digits = np.zeros((p, p), dtype=np.int64)
    c = code
    for x in range(p - 1, -1, -1):
        for y in range(p - 1, -1, -1):
            digits[x, y] = c % 3
            c //= 3
    best = None
    for sigma, tau in _perm_pairs(p):
        cand = _code_of_matrix(digits[np.ix_(sigma, tau)])
        if best is None or cand < best:
            best = cand
    return best


@lru_cache(maxsize=None)
def _canonical_lut(p: int) -> np.ndarray:
    """Canonical code for every base-3 relation code; p <= 3 only (3^(p*p) entries)."""
    size = 3 ** (p * p)
    lut = np.empty(size, dtype=np.int64)
    for code in range(size):
        lut[code] = _canonical_code(p, code)
    return lut


def relation_matrix(g: Graph) -> np.ndarray:
    """Pairwise vertex relations: SAME on the diagonal, EDGE where adjacent."""
    r = g.adjacency.astype(np.int64)
    np.fill_diagonal(r, SAME)
    return r


def widget_census(g: Graph, p: int) -> dict[int, int]:
    """Count of every widget class over all (sorted bra, sorted ket) placements.

    Keys are canonical relation codes; values are exact multiplicities.  The
    multiset of (widget value, multiplicity) pairs over this census is the
    fermionic fingerprint of the graph, by construction.
    """
    if not 1 <= p <= MAX_CENSUS_P:
        raise ValueError(f"census supports 1 <= p <= {MAX_CENSUS_P}")
    combos = np.array(list(itertools.combinations(range(g.n), p)), dtype=np.int64)
    r = relation_matrix(g)
    weights = np.array(
        [[3 ** ((p - 1 - x) * p + (p - 1 - y)) for y in range(p)] for x in range(p)],
        dtype=np.int64,
    )
    counts: Counter[int] = Counter()
    use_lut = p <= 3
    lut = _canonical_lut(p) if use_lut else None
    for bra in combos:
        rows = r[bra]                      # (p, n)
        sub = rows[:, combos]              # (p, C, p)
        codes = np.einsum("xcy,xy->c", sub, weights)
        if use_lut:
            canon = lut[codes]
        else:
            uniq, inv = np.unique(codes, return_inverse=True)
            canon = np.array([_canonical_code(p, int(u)) for u in uniq])[inv]
        for code, cnt in zip(*np.unique(canon, return_counts=True)):
            counts[int(code)] += int(cnt)
    return dict(counts)


@dataclass(frozen=True)
class WidgetCount:
    widget: Widget
    multiplicity: int


def count_widget(g: Graph, w: Widget) -> WidgetCount:
    """Exact number of (bra set, ket set) placements realizing the widget."""
    census = widget_census(g, w.p)
    return WidgetCount(w, census.get(w.canonical_code(), 0))


def widget_value(
    w: Widget, coeffs: PropagatorCoefficients, statistics: str = "boson"
) -> complex:
    """The Green's-function value of a widget class on an SRG family.

    Each bra-ket pair contributes a single propagator entry determined by its
    relation alone: alpha+beta (same vertex), beta+gamma (edge), beta
    (disconnected).  The value is the permanent (bosons) or determinant of
    the conjugate (fermions) of the resulting p x p scalar matrix.
    """
    scalars = {
        SAME: coeffs.alpha + coeffs.beta,
        EDGE: coeffs.beta + coeffs.gamma,
        NEITHER: coeffs.beta,
    }
    m = np.array(
        [[scalars[v] for v in row] for row in w.relation], dtype=np.complex128
    )[np.newaxis]
    if statistics == "boson":
        return complex(kernels.pure._perm_batch(m)[0])
    if statistics == "fermion":
        return complex(kernels.pure._det_batch(np.conj(m))[0])
    raise ValueError(f"unknown statistics {statistics!r}")


def _comb2(x: int) -> int:
    return math.comb(x, 2) if x >= 2 else 0


def two_particle_empty_count(params: SrgParams) -> int:
    """Closed form for the multiplicity of the two-particle empty widget.

    M = (Nk/2) C(N-2k+lam, 2) + (C(N,2) - Nk/2) C(N-2-2k+mu, 2); binomials
    with deficient arguments contribute zero.
    """
    n, k, lam, mu = params.as_tuple()
    edges = n * k // 2
    return edges * _comb2(n - 2 * k + lam) + (math.comb(n, 2) - edges) * _comb2(
        n - 2 - 2 * k + mu
    )


def triple_neighbor_census(g: Graph) -> dict[int, int]:
    """Histogram of common-neighbor counts over mutually non-adjacent triples."""
    a = g.adjacency
    out: Counter[int] = Counter()
    for i, j, k in itertools.combinations(range(g.n), 3):
        if a[i, j] or a[i, k] or a[j, k]:
            continue
        shared = int(np.sum(a[i] & a[j] & a[k]))
        out[shared] += 1
    return dict(out)
