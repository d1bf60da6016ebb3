"""Generate the bundled strongly-regular-graph datasets under src/walkfp/data/.

Run once:  python3 tools/make_srg_data.py

Every family is constructed from first principles and certified by
walkfp.detect_srg before being written:

  (5,2,0,1)     the 5-cycle
  (9,4,1,2)     3x3 rook's graph
  (10,3,0,1)    Petersen graph (Kneser K(5,2))
  (13,6,2,3)    Paley graph on GF(13)
  (15,6,1,3)    Kneser graph K(6,2)
  (16,6,2,2)    Shrikhande graph and the 4x4 rook's graph
  (16,9,4,6)    complements of the two graphs above
  (25,12,5,6)   all 15 graphs, via Seidel-switching closure
  (26,10,3,4)   all 10 graphs, via Seidel-switching closure
  (28,12,6,4)   T(8) and the three Chang graphs, via switching
  (29,14,6,7)   Paley graph on GF(29)

The (25/26)-vertex families are reached from seeds (Paley(25), the two
Latin-square graphs of order 5, and the complements of the block graphs of
the two Steiner triple systems STS(13)).  Adding an isolated vertex to an
SRG(25,12,5,6) lands in the Seidel switching class of a regular two-graph
on 26 points; enumerating the 10-regular members of those classes yields
the SRG(26,10,3,4) graphs, and isolating/deleting each vertex of those
yields the SRG(25,12,5,6) descendants.
"""

from __future__ import annotations

import collections
import itertools
import os
import sys

import numpy as np
from numba import njit

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from walkfp.graphs import Graph, complement, detect_srg, write_graph6_file  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "walkfp", "data")


# ---------------------------------------------------------------------------
# elementary constructions
# ---------------------------------------------------------------------------

def cycle5() -> Graph:
    return Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


def rook_graph(m: int) -> Graph:
    n = m * m
    edges = []
    for (r1, c1), (r2, c2) in itertools.combinations(
        itertools.product(range(m), repeat=2), 2
    ):
        if r1 == r2 or c1 == c2:
            edges.append((r1 * m + c1, r2 * m + c2))
    return Graph.from_edges(n, edges)


def kneser(m: int, k: int) -> Graph:
    subsets = list(itertools.combinations(range(m), k))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return Graph.from_edges(len(subsets), edges)


def paley(q: int) -> Graph:
    residues = {(x * x) % q for x in range(1, q)}
    edges = [(i, j) for i, j in itertools.combinations(range(q), 2) if (j - i) % q in residues]
    return Graph.from_edges(q, edges)


def shrikhande() -> Graph:
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    verts = list(itertools.product(range(4), repeat=2))
    for i, (a, b) in enumerate(verts):
        for j, (c, d) in enumerate(verts):
            if i < j and ((c - a) % 4, (d - b) % 4) in conn:
                edges.append((i, j))
    return Graph.from_edges(16, edges)


def triangular8() -> Graph:
    pairs = list(itertools.combinations(range(8), 2))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(pairs)), 2)
        if set(pairs[i]) & set(pairs[j])
    ]
    return Graph.from_edges(28, edges)


def paley25() -> Graph:
    # GF(25) = GF(5)[x]/(x^2 - 2); squares of the multiplicative group
    def mul(a, b):
        c0 = (a[0] * b[0] + 2 * a[1] * b[1]) % 5
        c1 = (a[0] * b[1] + a[1] * b[0]) % 5
        return (c0, c1)

    elements = [(a, b) for a in range(5) for b in range(5)]
    squares = {mul(e, e) for e in elements if e != (0, 0)}
    idx = {e: i for i, e in enumerate(elements)}
    edges = []
    for e, f in itertools.combinations(elements, 2):
        diff = ((e[0] - f[0]) % 5, (e[1] - f[1]) % 5)
        if diff in squares:
            edges.append((idx[e], idx[f]))
    return Graph.from_edges(25, edges)


# ---------------------------------------------------------------------------
# Steiner triple systems on 13 points -> SRG(26,10,3,4) seeds
# ---------------------------------------------------------------------------

def cyclic_sts13() -> list[frozenset]:
    blocks = []
    for base in [(0, 1, 4), (0, 2, 7)]:
        for s in range(13):
            blocks.append(frozenset((v + s) % 13 for v in base))
    return blocks


def is_sts(blocks: list[frozenset], v: int = 13) -> bool:
    seen = set()
    for b in blocks:
        for pair in itertools.combinations(sorted(b), 2):
            if pair in seen:
                return False
            seen.add(pair)
    return len(seen) == v * (v - 1) // 2


def pasch_switch(blocks: list[frozenset]) -> list[frozenset]:
    """Switch the first Pasch configuration found, yielding a different STS."""
    bset = set(blocks)
    for quad in itertools.combinations(blocks, 4):
        pts = set().union(*quad)
        if len(pts) != 6:
            continue
        # pattern {a,b,c},{a,d,e},{f,b,d},{f,c,e}
        for b1, b2, b3, b4 in itertools.permutations(quad):
            inter = b1 & b2
            if len(inter) != 1:
                continue
            a = next(iter(inter))
            rest = pts - b1 - b2
            if len(rest) != 1:
                continue
            f = next(iter(rest))
            if a in b3 or a in b4 or f not in b3 or f not in b4:
                continue
            b_c = sorted(b1 - {a})
            d_e = sorted(b2 - {a})
            for b, c in (b_c, b_c[::-1]):
                for d, e in (d_e, d_e[::-1]):
                    if b3 == frozenset({f, b, d}) and b4 == frozenset({f, c, e}):
                        new = [x for x in blocks if x not in (b1, b2, b3, b4)]
                        new += [
                            frozenset({a, b, d}),
                            frozenset({a, c, e}),
                            frozenset({f, b, c}),
                            frozenset({f, d, e}),
                        ]
                        if is_sts(new):
                            return new
    raise RuntimeError("no Pasch configuration found")


def sts_block_graph_complement(blocks: list[frozenset]) -> Graph:
    n = len(blocks)
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(n), 2)
        if not blocks[i] & blocks[j]
    ]
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Latin squares of order 5 -> SRG(25,12,5,6) seeds
# ---------------------------------------------------------------------------

def latin_squares_order5():
    """All order-5 Latin squares with first row 0..4 (backtracking)."""
    out = []
    rows = [tuple(range(5))]

    def extend(rows):
        if len(rows) == 5:
            out.append(tuple(rows))
            return
        for perm in itertools.permutations(range(5)):
            if all(perm[c] != r[c] for r in rows for c in range(5)):
                extend(rows + [perm])

    extend(rows)
    return out


def latin_square_graph(square) -> Graph:
    edges = []
    cells = [(r, c) for r in range(5) for c in range(5)]
    for (r1, c1), (r2, c2) in itertools.combinations(cells, 2):
        if r1 == r2 or c1 == c2 or square[r1][c1] == square[r2][c2]:
            edges.append((r1 * 5 + c1, r2 * 5 + c2))
    return Graph.from_edges(25, edges)


# ---------------------------------------------------------------------------
# Seidel switching machinery
# ---------------------------------------------------------------------------

@njit(cache=True)
def _popcount(x):
    count = 0
    while x:
        x &= x - 1
        count += 1
    return count


@njit(cache=True)
def _regular_switch_sets(adj_bits, degs, n, target, out):
    """Subsets S of {0..n-2} whose Seidel switch makes the graph target-regular.

    Vertex n-1 is pinned outside S (S and its complement induce the same
    switch).  Writes masks into out and returns the number found.
    """
    found = 0
    limit = 1 << (n - 1)
    for s in range(limit):
        ns = _popcount(s)
        ok = True
        for v in range(n):
            a = _popcount(adj_bits[v] & s)
            if s >> v & 1:
                newdeg = a + (n - ns) - (degs[v] - a)
            else:
                newdeg = degs[v] + ns - 2 * a
            if newdeg != target:
                ok = False
                break
        if ok:
            out[found] = s
            found += 1
            if found == out.shape[0]:
                return found
    return found


def regular_switchings(g: Graph, target: int) -> list[Graph]:
    """All target-regular graphs in the Seidel switching class of g."""
    n = g.n
    adj_bits = np.zeros(n, dtype=np.int64)
    for v in range(n):
        mask = 0
        for u in np.flatnonzero(g.adjacency[v]):
            mask |= 1 << int(u)
        adj_bits[v] = mask
    degs = g.degree_sequence().astype(np.int64)
    out = np.zeros(65536, dtype=np.int64)
    count = _regular_switch_sets(adj_bits, degs, n, target, out)
    if count == out.shape[0]:
        raise RuntimeError("switching-set buffer saturated; raise the cap")
    results = []
    for mask in out[:count]:
        a = g.adjacency.copy()
        in_s = np.array([(int(mask) >> v) & 1 for v in range(n)], dtype=bool)
        flip = np.logical_xor.outer(in_s, in_s)
        np.fill_diagonal(flip, False)
        results.append(Graph(n, np.logical_xor(a, flip)))
    return results


def add_isolated_vertex(g: Graph) -> Graph:
    a = np.zeros((g.n + 1, g.n + 1), dtype=bool)
    a[: g.n, : g.n] = g.adjacency
    return Graph(g.n + 1, a)


def descendants(g: Graph) -> list[Graph]:
    """Isolate each vertex by switching on its neighborhood, then delete it."""
    out = []
    for v in range(g.n):
        in_s = g.adjacency[v].copy()
        flip = np.logical_xor.outer(in_s, in_s)
        np.fill_diagonal(flip, False)
        a = np.logical_xor(g.adjacency, flip)
        assert not a[v].any()
        keep = [u for u in range(g.n) if u != v]
        out.append(Graph(g.n - 1, a[np.ix_(keep, keep)]))
    return out


# ---------------------------------------------------------------------------
# isomorphism-classed collections
# ---------------------------------------------------------------------------

def _subset_census(g: Graph, k: int):
    """Histogram over all k-subsets of (induced edge count, common neighbors).

    A label-invariant combinatorial certificate; distinct censuses prove
    non-isomorphism.  Deduplication relies on this plus the exact, known
    family sizes asserted in main().
    """
    a = g.adjacency
    idx = np.array(list(itertools.combinations(range(g.n), k)), dtype=np.intp)
    common = a[idx[:, 0]].copy()
    for c in range(1, k):
        common &= a[idx[:, c]]
    shared = common.sum(axis=1)
    edges = np.zeros(idx.shape[0], dtype=np.int64)
    for x, y in itertools.combinations(range(k), 2):
        edges += a[idx[:, x], idx[:, y]]
    pairs = edges * (g.n + 1) + shared
    vals, cnts = np.unique(pairs, return_counts=True)
    return tuple(zip(vals.tolist(), cnts.tolist()))


def _neighborhood_spectra(g: Graph):
    """Multiset, over vertices, of the rounded spectrum of the subgraph
    induced on each vertex's neighborhood.  Separates cospectral pairs that
    the small-subset censuses miss."""
    a = g.adjacency
    spectra = []
    for v in range(g.n):
        nbrs = np.flatnonzero(a[v])
        sub = a[np.ix_(nbrs, nbrs)].astype(np.float64)
        w = np.linalg.eigvalsh(sub)
        spectra.append(tuple(np.round(w, 6).tolist()))
    return tuple(sorted(collections.Counter(spectra).items()))


def _invariant(g: Graph):
    params = detect_srg(g)
    return (
        params.as_tuple() if params else None,
        _subset_census(g, 3),
        _subset_census(g, 4),
        _neighborhood_spectra(g),
    )


class IsoSet:
    """Graphs deduplicated by a strong label-invariant certificate."""

    def __init__(self):
        self.graphs: list[Graph] = []
        self._keys: set = set()

    def add(self, g: Graph) -> bool:
        key = _invariant(g)
        if key in self._keys:
            return False
        self._keys.add(key)
        self.graphs.append(g)
        return True


def switching_closure(seeds26, seeds25, k26=10, k25=12):
    """All SRGs in the two-graph switching classes reachable from the seeds."""
    srg26, srg25 = IsoSet(), IsoSet()
    class_reps = [*seeds26] + [add_isolated_vertex(g) for g in seeds25]
    for rep in class_reps:
        for cand in regular_switchings(rep, k26):
            params = detect_srg(cand)
            if params and params.k == k26 and srg26.add(cand):
                for desc in descendants(cand):
                    dp = detect_srg(desc)
                    if dp and dp.k == k25:
                        srg25.add(desc)
    return srg26.graphs, srg25.graphs


# ---------------------------------------------------------------------------
# main
# ---------------------------------------------------------------------------

def certify(graphs, expected_params, expected_count=None):
    for g in graphs:
        params = detect_srg(g)
        assert params and params.as_tuple() == expected_params, (
            f"certification failed: {params} != {expected_params}"
        )
    if expected_count is not None:
        assert len(graphs) == expected_count, (
            f"expected {expected_count} graphs for {expected_params}, got {len(graphs)}"
        )


def main():
    os.makedirs(DATA_DIR, exist_ok=True)
    families = {}

    families[(5, 2, 0, 1)] = [cycle5()]
    families[(9, 4, 1, 2)] = [rook_graph(3)]
    families[(10, 3, 0, 1)] = [kneser(5, 2)]
    families[(13, 6, 2, 3)] = [paley(13)]
    families[(15, 6, 1, 3)] = [kneser(6, 2)]
    families[(16, 6, 2, 2)] = [shrikhande(), rook_graph(4)]
    families[(16, 9, 4, 6)] = [complement(g) for g in families[(16, 6, 2, 2)]]
    families[(29, 14, 6, 7)] = [paley(29)]

    print("building T(8) switching class ...")
    chang = IsoSet()
    for cand in regular_switchings(triangular8(), 12):
        if detect_srg(cand):
            chang.add(cand)
    families[(28, 12, 6, 4)] = chang.graphs

    print("building STS(13) seeds ...")
    sts_a = cyclic_sts13()
    assert is_sts(sts_a)
    sts_b = pasch_switch(sts_a)
    seeds26 = [sts_block_graph_complement(b) for b in (sts_a, sts_b)]
    certify(seeds26, (26, 10, 3, 4))

    print("building Latin-square and Paley(25) seeds ...")
    ls_graphs = IsoSet()
    for square in latin_squares_order5():
        ls_graphs.add(latin_square_graph(square))
    print(f"  {len(ls_graphs.graphs)} Latin-square graph classes of order 5")
    seeds25 = [paley25()] + ls_graphs.graphs
    certify(seeds25, (25, 12, 5, 6))

    print("running switching closure (this enumerates 2^25 subsets per class) ...")
    srg26, srg25 = switching_closure(seeds26, seeds25)
    certify(srg26, (26, 10, 3, 4), 10)
    certify(srg25, (25, 12, 5, 6), 15)
    families[(26, 10, 3, 4)] = srg26
    families[(25, 12, 5, 6)] = srg25

    for params, graphs in sorted(families.items()):
        certify(graphs, params)
        name = "srg_" + "_".join(str(x) for x in params) + ".g6"
        path = os.path.join(DATA_DIR, name)
        write_graph6_file(path, graphs)
        print(f"wrote {name}: {len(graphs)} graph(s)")


if __name__ == "__main__":
    main()
