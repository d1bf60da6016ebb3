"""Many-body basis enumeration and Green's functions for non-interacting walks.

The production path factorizes each element of the p-particle evolution
operator into a p x p permanent (bosons) or determinant (fermions) of
single-particle propagator entries.  A direct many-body exponentiation
oracle over the same basis is provided for validation.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np

from . import kernels
from .graphs import Graph

Statistics = Literal["boson", "fermion"]

DEFAULT_ORACLE_CAP = 5000


@dataclass(frozen=True)
class WalkSpec:
    """Particle count, exchange statistics, and evolution time of a walk."""

    p: int
    statistics: Statistics
    t: float = 1.0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("particle count must be >= 1")
        if self.statistics not in ("boson", "fermion"):
            raise ValueError(f"unknown statistics {self.statistics!r}")

    @property
    def is_boson(self) -> bool:
        return self.statistics == "boson"


@dataclass(frozen=True)
class Propagator1P:
    """Single-particle propagator exp(+iAt)."""

    matrix: np.ndarray = field(repr=False)
    t: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ManyBodyOperator:
    """Dense p-particle evolution operator over an ordered occupation basis."""

    basis: np.ndarray = field(repr=False)  # (num_states, p) int32, rows sorted
    matrix: np.ndarray = field(repr=False)
    statistics: Statistics
    t: float


def basis_dimension(n: int, spec: WalkSpec) -> int:
    if spec.is_boson:
        return math.comb(n + spec.p - 1, spec.p)
    return math.comb(n, spec.p)


def enumerate_basis(n: int, spec: WalkSpec) -> np.ndarray:
    """Lexicographically ordered particles-on-vertices basis, one row per state.

    Bosons enumerate sorted multisets of p vertices, fermions sorted sets
    (Pauli exclusion: no vertex may hold two fermions).
    """
    if spec.is_boson:
        states = itertools.combinations_with_replacement(range(n), spec.p)
    else:
        if spec.p > n:
            raise ValueError(f"cannot place {spec.p} fermions on {n} vertices")
        states = itertools.combinations(range(n), spec.p)
    arr = np.fromiter(
        itertools.chain.from_iterable(states), dtype=np.int32
    ).reshape(-1, spec.p)
    assert arr.shape[0] == basis_dimension(n, spec)
    return arr


def boson_norms(basis: np.ndarray) -> np.ndarray:
    """Per-state normalization 1/sqrt(prod multiplicity!) for multiply-occupied states."""
    norms = np.ones(basis.shape[0], dtype=np.float64)
    for i, state in enumerate(basis):
        prod = 1
        for _, c in Counter(state.tolist()).items():
            prod *= math.factorial(c)
        if prod != 1:
            norms[i] = 1.0 / math.sqrt(prod)
    return norms


def state_norms(basis: np.ndarray, spec: WalkSpec) -> np.ndarray:
    if spec.is_boson:
        return boson_norms(basis)
    return np.ones(basis.shape[0], dtype=np.float64)


def single_particle_propagator(g: Graph, t: float) -> Propagator1P:
    """U = exp(+iAt) by real-symmetric eigendecomposition of the adjacency matrix."""
    a = g.adjacency.astype(np.float64)
    w, v = np.linalg.eigh(a)
    u = (v * np.exp(1j * w * t)) @ v.T
    return Propagator1P(u, t)


def effective_matrix(u1: Propagator1P, spec: WalkSpec) -> np.ndarray:
    """Matrix whose p x p minors give the amplitudes: U for bosons, conj(U) for fermions."""
    return u1.matrix if spec.is_boson else np.conj(u1.matrix)


def raw_amplitude(
    u1: Propagator1P,
    bra: Sequence[int],
    ket: Sequence[int],
    statistics: Statistics,
) -> complex:
    """Amplitude for the bra/ket vertex tuples exactly as ordered (no canonicalization).

    Fermionic values pick up the permutation sign of the ordering; bosonic
    values include the multiple-occupancy normalization.
    """
    if len(bra) != len(ket):
        raise ValueError("bra and ket must carry the same particle count")
    spec = WalkSpec(len(bra), statistics, u1.t)
    ueff = effective_matrix(u1, spec)
    sub = ueff[np.ix_(list(bra), list(ket))][np.newaxis]
    if spec.is_boson:
        val = kernels.pure._perm_batch(sub)[0]
        norm = 1.0
        for state in (bra, ket):
            for _, c in Counter(state).items():
                norm *= math.factorial(c)
        return complex(val / math.sqrt(norm))
    return complex(kernels.pure._det_batch(sub)[0])


def greens_function(
    u1: Propagator1P,
    bra: Sequence[int],
    ket: Sequence[int],
    statistics: Statistics,
) -> complex:
    """One element of the many-body evolution operator, on canonical sorted states."""
    return raw_amplitude(u1, sorted(bra), sorted(ket), statistics)


def _hop_sign_fermion(state: tuple[int, ...], src: int, dst: int) -> tuple[tuple[int, ...], int]:
    """Apply c+_dst c_src to a sorted fermionic state; returns (new state, sign)."""
    pos = state.index(src)
    sign = -1 if pos % 2 else 1
    reduced = state[:pos] + state[pos + 1:]
    below = sum(1 for v in reduced if v < dst)
    if below % 2:
        sign = -sign
    new = tuple(sorted(reduced + (dst,)))
    return new, sign


def many_body_hamiltonian(g: Graph, spec: WalkSpec) -> tuple[np.ndarray, np.ndarray]:
    """The p-particle non-interacting Hamiltonian in the occupation basis.

    Bosons: H = -sum_ij A_ij c+_i c_j.  Fermions use the opposite overall
    sign, which makes the oracle agree with the determinant factorization
    through conj(U) element by element, not just in absolute value.
    """
    basis = enumerate_basis(g.n, spec)
    index = {tuple(row.tolist()): i for i, row in enumerate(basis)}
    dim = basis.shape[0]
    h = np.zeros((dim, dim), dtype=np.float64)
    neighbors = [np.flatnonzero(g.adjacency[v]).tolist() for v in range(g.n)]

    for col, row_state in enumerate(basis):
        state = tuple(row_state.tolist())
        if spec.is_boson:
            occ = Counter(state)
            for j in occ:
                for i in neighbors[j]:
                    new = list(state)
                    new.remove(j)
                    new.append(i)
                    new_t = tuple(sorted(new))
                    amp = math.sqrt(occ[j] * (occ[i] + 1))  # i != j: A has zero diagonal
                    h[index[new_t], col] += -amp
        else:
            for j in state:
                for i in neighbors[j]:
                    if i in state:
                        continue
                    new_t, sign = _hop_sign_fermion(state, j, i)
                    h[index[new_t], col] += sign
    return basis, h


def direct_evolution_operator(
    g: Graph, spec: WalkSpec, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> ManyBodyOperator:
    """exp(-itH) by Hermitian eigendecomposition; validation oracle only."""
    dim = basis_dimension(g.n, spec)
    if dim > oracle_cap:
        raise ValueError(
            f"basis dimension {dim} exceeds the oracle cap {oracle_cap}"
        )
    basis, h = many_body_hamiltonian(g, spec)
    w, v = np.linalg.eigh(h)
    u = (v * np.exp(-1j * w * spec.t)) @ v.T
    return ManyBodyOperator(basis, u, spec.statistics, spec.t)


def stream_green_magnitudes(
    g: Graph, spec: WalkSpec, consumer: Callable[[float], None]
) -> int:
    """Invoke consumer with |element| for every ordered (bra, ket) basis pair.

    Enumeration is row-major over the lexicographic basis and deterministic.
    Returns the number of values emitted, (basis size)^2.
    """
    u1 = single_particle_propagator(g, spec.t)
    basis = enumerate_basis(g.n, spec)
    norms = state_norms(basis, spec)
    ueff = np.ascontiguousarray(effective_matrix(u1, spec))
    count = 0
    for bra in range(basis.shape[0]):
        mags = kernels.row_magnitudes(ueff, basis, norms, bra, spec.is_boson)
        for v in mags:
            consumer(float(v))
        count += mags.shape[0]
    return count
