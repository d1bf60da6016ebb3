"""Simple undirected graphs: graph6 serialization, permutations, SRG certification.

Vertices are always 0-based internally.  Adjacency is kept as a dense boolean
numpy array; the graphs of interest here have at most a few dozen vertices.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

GRAPH6_HEADER = ">>graph6<<"
_MAX_N = 258047  # largest n with the 4-byte size prefix


class Graph6Error(ValueError):
    """Malformed graph6 record.  `offset` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph: vertex count plus symmetric 0/1 adjacency."""

    n: int
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool)
        if a.shape != (self.n, self.n):
            raise ValueError(f"adjacency shape {a.shape} does not match n={self.n}")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if a.diagonal().any():
            raise ValueError("self-loops are not allowed (diagonal must be zero)")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            a[u, v] = a[v, u] = True
        return cls(n, a)

    def degree_sequence(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def num_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.adjacency, other.adjacency)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency.tobytes()))

    def content_hash(self) -> str:
        """SHA-256 of the canonical graph6 record (label-sensitive)."""
        return hashlib.sha256(encode_graph6(self).encode("ascii")).hexdigest()


@dataclass(frozen=True)
class SrgParams:
    """Strongly-regular family parameters (N, k, lambda, mu)."""

    n: int
    k: int
    lam: int
    mu: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)

    def __str__(self) -> str:
        return f"({self.n},{self.k},{self.lam},{self.mu})"


@dataclass(frozen=True)
class VertexPermutation:
    """A bijection on {0..n-1}, stored as the image array."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError("mapping is not a bijection on 0..n-1")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def inverse(self) -> "VertexPermutation":
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return VertexPermutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "VertexPermutation":
        return cls(tuple(int(x) for x in rng.permutation(n)))


# ---------------------------------------------------------------------------
# graph6 codec
# ---------------------------------------------------------------------------

def _decode_size(data: bytes) -> tuple[int, int]:
    """Return (n, number of size bytes consumed)."""
    if not data:
        raise Graph6Error("empty record", 0)
    b0 = data[0]
    if b0 == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("graphs above n=258047 are not supported", 0)
        if len(data) < 4:
            raise Graph6Error("record truncated inside extended size prefix", len(data))
        vals = []
        for i in range(1, 4):
            v = data[i] - 63
            if not 0 <= v < 64:
                raise Graph6Error("malformed length prefix", i)
            vals.append(v)
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        if n < 63:
            raise Graph6Error("non-canonical extended size prefix", 0)
        return n, 4
    v = b0 - 63
    if not 0 <= v < 64:
        raise Graph6Error("malformed length prefix", 0)
    return v, 1


def decode_graph6(text: str) -> Graph:
    """Decode a single graph6 record (no header) into a Graph."""
    data = text.strip().encode("ascii")
    n, off = _decode_size(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - off < nbytes:
        raise Graph6Error(
            f"record truncated: need {nbytes} data bytes, found {len(data) - off}",
            len(data),
        )
    if len(data) - off > nbytes:
        raise Graph6Error("trailing bytes after adjacency data", off + nbytes)

    bits = np.zeros(nbytes * 6, dtype=bool)
    for idx in range(nbytes):
        v = data[off + idx] - 63
        if not 0 <= v < 64:
            raise Graph6Error("data byte out of range", off + idx)
        for b in range(6):
            bits[idx * 6 + b] = (v >> (5 - b)) & 1
    if bits[nbits:].any():
        raise Graph6Error("padding bits are nonzero", off + nbits // 6)

    a = np.zeros((n, n), dtype=bool)
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                a[i, j] = a[j, i] = True
            pos += 1
    return Graph(n, a)


def encode_graph6(g: Graph) -> str:
    """Encode a Graph as its canonical graph6 record."""
    n = g.n
    if n > _MAX_N:
        raise ValueError(f"n={n} exceeds the supported graph6 range ({_MAX_N})")
    if n <= 62:
        out = [n + 63]
    else:
        out = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]

    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.adjacency[i, j] else 0)
    for idx in range(0, len(bits), 6):
        chunk = bits[idx : idx + 6]
        chunk += [0] * (6 - len(chunk))
        v = 0
        for b in chunk:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out).decode("ascii")


def read_graph6_file(path) -> list[Graph]:
    """Read a file with one graph6 record per line; a format header is tolerated."""
    graphs = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith(GRAPH6_HEADER):
                line = line[len(GRAPH6_HEADER):].strip()
                if not line:
                    continue
            graphs.append(decode_graph6(line))
    return graphs


def write_graph6_file(path, graphs: Sequence[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")


# ---------------------------------------------------------------------------
# permutations and neighborhood counting
# ---------------------------------------------------------------------------

def apply_permutation(g: Graph, p: VertexPermutation) -> Graph:
    """Relabel g by p: vertex v of g becomes p.mapping[v] in the result."""
    if p.n != g.n:
        raise ValueError(f"permutation size {p.n} does not match graph size {g.n}")
    m = np.asarray(p.mapping)
    a = np.zeros_like(g.adjacency)
    a[np.ix_(m, m)] = g.adjacency
    return Graph(g.n, a)


def common_neighbors(g: Graph, vertices: Iterable[int]) -> int:
    """Number of vertices adjacent to every vertex in the given nonempty set."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("vertex set must be nonempty")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise ValueError(f"vertex id out of range 0..{g.n - 1}")
    mask = np.all(g.adjacency[vs], axis=0)
    return int(mask.sum())


def detect_srg(g: Graph) -> Optional[SrgParams]:
    """Certify g as strongly regular, returning its parameters, or None.

    Complete and edgeless graphs are reported as not-SRG: they lack a witness
    pair for mu (resp. lambda).
    """
    n = g.n
    if n < 2:
        return None
    a = g.adjacency
    degs = a.sum(axis=1)
    k = int(degs[0])
    if not np.all(degs == k):
        return None

    counts = a.astype(np.int64) @ a.astype(np.int64)
    off_diag = ~np.eye(n, dtype=bool)
    adj_counts = counts[a]
    non_counts = counts[off_diag & ~a]
    if adj_counts.size == 0 or non_counts.size == 0:
        return None  # edgeless or complete
    lam = int(adj_counts[0])
    mu = int(non_counts[0])
    if not np.all(adj_counts == lam) or not np.all(non_counts == mu):
        return None
    return SrgParams(n, k, lam, mu)


def verify_srg_identity(g: Graph, params: SrgParams) -> bool:
    """Exact integer check of A^2 == (k-mu) I + mu J + (lam-mu) A."""
    a = g.adjacency.astype(np.int64)
    lhs = a @ a
    n, k, lam, mu = params.as_tuple()
    rhs = (k - mu) * np.eye(n, dtype=np.int64) + mu * np.ones((n, n), dtype=np.int64)
    rhs += (lam - mu) * a
    return bool(np.array_equal(lhs, rhs))


def complement(g: Graph) -> Graph:
    a = ~g.adjacency & ~np.eye(g.n, dtype=bool)
    return Graph(g.n, a)
