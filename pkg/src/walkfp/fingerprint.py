"""Sorted-magnitude fingerprints of evolution operators and the list distance.

A fingerprint is the run-length-encoded sorted list of |element| values of a
many-body evolution operator, after snapping each magnitude to a fixed grid
of bins (index = floor(value / bin_width)).  The distance Delta between two
fingerprints is the sum of |X_A[nu] - X_B[nu]| over the fully expanded
sorted lists, computed by a two-pointer merge over the run lengths.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .graphs import Graph
from .walk import (
    WalkSpec,
    effective_matrix,
    enumerate_basis,
    single_particle_propagator,
    state_norms,
)

DEFAULT_BIN_WIDTH = 1e-6
DEFAULT_THRESHOLD = 1e-6
MIN_BIN_WIDTH = 1e-12
MAX_BIN_WIDTH = 1e-2
CACHE_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Provenance:
    graph_hash: str
    n: int
    p: int
    statistics: str
    t: float

    def as_dict(self) -> dict:
        return {
            "graph_hash": self.graph_hash,
            "n": self.n,
            "p": self.p,
            "statistics": self.statistics,
            "t": self.t,
        }


@dataclass(frozen=True)
class Fingerprint:
    """Run-length-encoded sorted magnitude list of one evolution operator."""

    bin_indices: np.ndarray = field(repr=False)  # int64, strictly increasing
    counts: np.ndarray = field(repr=False)       # int64, >= 1
    bin_width: float
    total_elements: int
    provenance: Provenance

    def __post_init__(self):
        if self.bin_indices.shape != self.counts.shape:
            raise ValueError("bin index and count arrays must align")
        if self.bin_indices.size and np.any(np.diff(self.bin_indices) <= 0):
            raise ValueError("bin indices must be strictly increasing")
        if int(self.counts.sum()) != self.total_elements:
            raise ValueError("multiplicities do not sum to the element count")
        self.bin_indices.setflags(write=False)
        self.counts.setflags(write=False)

    @property
    def values(self) -> np.ndarray:
        """Representative magnitude of each bin: (index + 0.5) * bin_width."""
        return (self.bin_indices + 0.5) * self.bin_width

    @property
    def num_bins(self) -> int:
        return int(self.bin_indices.size)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Fingerprint)
            and self.bin_width == other.bin_width
            and self.total_elements == other.total_elements
            and np.array_equal(self.bin_indices, other.bin_indices)
            and np.array_equal(self.counts, other.counts)
        )

    def __hash__(self):
        return hash((self.bin_width, self.total_elements, self.bin_indices.tobytes()))


@dataclass(frozen=True)
class ComparisonReport:
    delta: float
    threshold: float
    distinguished: bool
    provenance_a: Provenance
    provenance_b: Provenance
    bin_width: float
    wall_time: float
    comparable: bool = True

    def as_dict(self) -> dict:
        return {
            "graph_a": self.provenance_a.as_dict(),
            "graph_b": self.provenance_b.as_dict(),
            "p": self.provenance_a.p,
            "statistics": self.provenance_a.statistics,
            "t": self.provenance_a.t,
            "bin_width": self.bin_width,
            "delta": self.delta,
            "threshold": self.threshold,
            "distinguished": self.distinguished,
            "comparable": self.comparable,
            "wall_time": self.wall_time,
        }


def _merge_histograms(parts: Sequence[dict[int, int]]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in parts:
        for k, v in part.items():
            out[k] = out.get(k, 0) + v
    return out


def build_fingerprint(
    g: Graph,
    spec: WalkSpec,
    bin_width: float = DEFAULT_BIN_WIDTH,
    workers: int = 1,
) -> Fingerprint:
    """Stream all |Green's function| values of the walk into a binned fingerprint.

    The histogram is a commutative integer monoid, so the result is
    bit-identical for any worker count.
    """
    if not MIN_BIN_WIDTH <= bin_width <= MAX_BIN_WIDTH:
        raise ValueError(
            f"bin_width {bin_width} outside [{MIN_BIN_WIDTH}, {MAX_BIN_WIDTH}]"
        )
    u1 = single_particle_propagator(g, spec.t)
    basis = enumerate_basis(g.n, spec)
    norms = state_norms(basis, spec)
    ueff = np.ascontiguousarray(effective_matrix(u1, spec))
    nstates = basis.shape[0]

    if workers <= 1:
        hist = kernels.accumulate_bins(
            ueff, basis, norms, spec.is_boson, bin_width, 0, nstates
        )
    else:
        bounds = np.linspace(0, nstates, workers + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [
                pool.submit(
                    kernels.accumulate_bins,
                    ueff, basis, norms, spec.is_boson, bin_width,
                    int(bounds[i]), int(bounds[i + 1]),
                )
                for i in range(workers)
            ]
            hist = _merge_histograms([f.result() for f in futs])

    idx = np.array(sorted(hist), dtype=np.int64)
    cnt = np.array([hist[i] for i in idx.tolist()], dtype=np.int64)
    prov = Provenance(g.content_hash(), g.n, spec.p, spec.statistics, spec.t)
    return Fingerprint(idx, cnt, bin_width, nstates * nstates, prov)


def delta(fa: Fingerprint, fb: Fingerprint) -> float:
    """The list distance over the expanded sorted lists, without expanding them."""
    if fa.total_elements != fb.total_elements:
        raise ValueError(
            f"fingerprints have different element counts "
            f"({fa.total_elements} vs {fb.total_elements}); walks are incomparable"
        )
    if fa.bin_width != fb.bin_width:
        raise ValueError("fingerprints use different bin widths")
    va, vb = fa.values, fb.values
    ca, cb = fa.counts, fb.counts
    ia = ib = 0
    rem_a = int(ca[0]) if ca.size else 0
    rem_b = int(cb[0]) if cb.size else 0
    total = 0.0
    while ia < ca.size and ib < cb.size:
        run = min(rem_a, rem_b)
        total += run * abs(va[ia] - vb[ib])
        rem_a -= run
        rem_b -= run
        if rem_a == 0:
            ia += 1
            if ia < ca.size:
                rem_a = int(ca[ia])
        if rem_b == 0:
            ib += 1
            if ib < cb.size:
                rem_b = int(cb[ib])
    return float(total)


def compare(
    ga: Graph,
    gb: Graph,
    spec: WalkSpec,
    bin_width: float = DEFAULT_BIN_WIDTH,
    threshold: float = DEFAULT_THRESHOLD,
    workers: int = 1,
    cache: "FingerprintCache | None" = None,
) -> ComparisonReport:
    """Compare two graphs under one walk; distinguished iff Delta > threshold."""
    start = time.perf_counter()
    if ga.n != gb.n:
        prov_a = Provenance(ga.content_hash(), ga.n, spec.p, spec.statistics, spec.t)
        prov_b = Provenance(gb.content_hash(), gb.n, spec.p, spec.statistics, spec.t)
        return ComparisonReport(
            delta=float("nan"), threshold=threshold, distinguished=False,
            provenance_a=prov_a, provenance_b=prov_b, bin_width=bin_width,
            wall_time=time.perf_counter() - start, comparable=False,
        )
    fa = _build_cached(ga, spec, bin_width, workers, cache)
    fb = _build_cached(gb, spec, bin_width, workers, cache)
    d = delta(fa, fb)
    return ComparisonReport(
        delta=d, threshold=threshold, distinguished=d > threshold,
        provenance_a=fa.provenance, provenance_b=fb.provenance,
        bin_width=bin_width, wall_time=time.perf_counter() - start,
    )


def _build_cached(g, spec, bin_width, workers, cache):
    if cache is None:
        return build_fingerprint(g, spec, bin_width, workers)
    key = cache.key_for(g, spec, bin_width)
    fp = cache.load(key)
    if fp is None:
        fp = build_fingerprint(g, spec, bin_width, workers)
        cache.store(key, fp)
    return fp


def bin_sweep(
    g: Graph, spec: WalkSpec, widths: Sequence[float]
) -> list[tuple[float, int]]:
    """Distinct-bin count per width; exposes the plateau of stable counts."""
    if any(w <= 0 for w in widths):
        raise ValueError("bin widths must be positive")
    out = []
    coarse_ref = None
    for w in sorted(widths):
        if w < MIN_BIN_WIDTH:
            raise ValueError(f"bin width {w} below supported minimum {MIN_BIN_WIDTH}")
        if w <= MAX_BIN_WIDTH:
            fp = build_fingerprint(g, spec, w)
            out.append((w, fp.num_bins))
        else:
            # widths above the supported grid are re-binned from the coarsest grid
            if coarse_ref is None:
                coarse_ref = build_fingerprint(g, spec, MAX_BIN_WIDTH)
            out.append((w, _rebin_count(coarse_ref, w)))
    return out


def _rebin_count(fp: Fingerprint, width: float) -> int:
    coarse = np.floor(fp.values / width).astype(np.int64)
    return int(np.unique(coarse).size)


# ---------------------------------------------------------------------------
# Fingerprint cache
# ---------------------------------------------------------------------------

class CacheError(ValueError):
    pass


class FingerprintCache:
    """One JSON file per (graph hash, p, statistics, t, bin width) key."""

    def __init__(self, directory):
        self.directory = os.fspath(directory)
        os.makedirs(self.directory, exist_ok=True)

    @staticmethod
    def key_for(g: Graph, spec: WalkSpec, bin_width: float) -> str:
        payload = f"{g.content_hash()}|{spec.p}|{spec.statistics}|{spec.t!r}|{bin_width!r}"
        return hashlib.sha256(payload.encode("ascii")).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f"{key}.json")

    def store(self, key: str, fp: Fingerprint) -> None:
        body = {
            "schema_version": CACHE_SCHEMA_VERSION,
            "provenance": fp.provenance.as_dict(),
            "bin_width": fp.bin_width,
            "total_elements": fp.total_elements,
            "bins": [
                [int(i), int(c)]
                for i, c in zip(fp.bin_indices.tolist(), fp.counts.tolist())
            ],
        }
        blob = json.dumps(body, sort_keys=True)
        record = {"checksum": hashlib.sha256(blob.encode()).hexdigest(), "body": body}
        with open(self._path(key), "w") as fh:
            json.dump(record, fh)

    def load(self, key: str) -> Fingerprint | None:
        path = self._path(key)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            record = json.load(fh)
        body = record.get("body")
        blob = json.dumps(body, sort_keys=True)
        if hashlib.sha256(blob.encode()).hexdigest() != record.get("checksum"):
            raise CacheError(f"corrupt cache record {path}")
        if body.get("schema_version") != CACHE_SCHEMA_VERSION:
            raise CacheError(
                f"cache schema {body.get('schema_version')} != {CACHE_SCHEMA_VERSION}"
            )
        bins = np.array(body["bins"], dtype=np.int64).reshape(-1, 2)
        prov = Provenance(**body["provenance"])
        return Fingerprint(
            np.ascontiguousarray(bins[:, 0]),
            np.ascontiguousarray(bins[:, 1]),
            body["bin_width"],
            body["total_elements"],
            prov,
        )
