"""Seeded random-graph sampling from a step-graphon.

A draw places n node coordinates uniformly on [0,1), assigns each node to
the partition interval containing its coordinate, and then includes each
unordered node pair independently with the block probability of the two
groups.

Everything is driven by a counter-based Philox stream keyed by the 64-bit
seed, with a fixed draw order (n coordinate words, then one word per node
pair in row-major order), so a draw is fully determined by
(graphon, n, seed) and can be regenerated byte-for-byte.  Coordinates are
53-bit dyadic rationals; group assignment and edge thresholds are computed
from the exact rational partition and block values, so block boundaries are
never blurred by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .core import StepGraphon, concentration_vector

_RESOLUTION_BITS = 53
_SCALE = 1 << _RESOLUTION_BITS
_PAIR_CHUNK = 1 << 21


class MalformedGraphDump(ValueError):
    """Graph dump text does not follow the documented format."""


@dataclass(frozen=True, eq=False)
class SampledGraph:
    """One graph drawn from a step-graphon.

    ``group_of`` holds 1-based interval labels; ``edges`` is an (m, 2) array
    of node pairs with u < v, sorted lexicographically.  ``coordinates`` is
    None for graphs re-read from a dump file (the dump stores only structure).
    """

    n: int
    q: int
    group_of: np.ndarray
    edges: np.ndarray
    coordinates: np.ndarray | None = None

    def __post_init__(self):
        self.group_of.setflags(write=False)
        self.edges.setflags(write=False)
        if self.coordinates is not None:
            self.coordinates.setflags(write=False)

    def neighbor_sets(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges.tolist():
            out[u].add(v)
            out[v].add(u)
        return out


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in 64 bits")
    return seed


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _coordinate_thresholds(g: StepGraphon) -> np.ndarray:
    """Interior partition points scaled to integer coordinate resolution.

    A 53-bit coordinate k lands in group i exactly when
    thresholds[i-1] <= k < thresholds[i] with thresholds padded by 0 and 2^53;
    this reproduces the exact rational comparison sigma_{i-1} <= k/2^53 < sigma_i.
    """
    interior = g.partition[1:-1]
    return np.array(
        [_ceil_div(p.numerator * _SCALE, p.denominator) for p in interior],
        dtype=np.uint64,
    )


def _block_thresholds(g: StepGraphon) -> np.ndarray:
    """Edge-inclusion thresholds: a 53-bit word u yields an edge iff u < thr.

    thr/2^53 differs from the exact block value by less than 2^-53, and is
    exact whenever the value is a 53-bit dyadic (0, 1, 1/2, ...).
    """
    q = g.q
    thr = np.zeros((q, q), dtype=np.uint64)
    for i in range(q):
        for j in range(q):
            p = g.values[i][j]
            thr[i, j] = _ceil_div(p.numerator * _SCALE, p.denominator)
    return thr


_PAIR_CACHE: dict[int, list[tuple[np.ndarray, np.ndarray]]] = {}
_PAIR_CACHE_MAX_N = 2500
_PAIR_CACHE_SLOTS = 6


def _pair_chunks(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pair-index chunks for n nodes, cached for the sizes trial runs reuse."""
    if n > _PAIR_CACHE_MAX_N:
        return _generate_pair_chunks(n)
    cached = _PAIR_CACHE.get(n)
    if cached is None:
        cached = list(_generate_pair_chunks(n))
        for ii, jj in cached:
            ii.setflags(write=False)
            jj.setflags(write=False)
        if len(_PAIR_CACHE) >= _PAIR_CACHE_SLOTS:
            _PAIR_CACHE.clear()
        _PAIR_CACHE[n] = cached
    return cached


def _generate_pair_chunks(n: int, chunk: int = _PAIR_CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (i, j) index arrays covering all pairs i < j in row-major order,
    at most ~chunk pairs at a time, without materializing all pairs."""
    row = 0
    while row < n - 1:
        last = row
        total = 0
        while last < n - 1:
            size = n - 1 - last
            if total and total + size > chunk:
                break
            total += size
            last += 1
        counts = np.arange(n - 1 - row, n - 1 - last, -1, dtype=np.int64)
        ii = np.repeat(np.arange(row, last, dtype=np.int32), counts)
        jj = np.concatenate(
            [np.arange(r + 1, n, dtype=np.int32) for r in range(row, last)]
        )
        yield ii, jj
        row = last


def _draw_labels(g: StepGraphon, n: int, gen: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    words = gen.integers(0, 2**64, size=n, dtype=np.uint64)
    k = words >> np.uint64(64 - _RESOLUTION_BITS)
    labels = (
        np.searchsorted(_coordinate_thresholds(g), k, side="right").astype(np.int16) + 1
    )
    return k, labels


def sample_graph(g: StepGraphon, n: int, seed: int) -> SampledGraph:
    """Draw one graph on n nodes; fully determined by (g, n, seed)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    seed = _check_seed(seed)
    gen = np.random.Generator(np.random.Philox(key=seed))
    k, labels = _draw_labels(g, n, gen)
    thr = _block_thresholds(g)
    labels0 = (labels - 1).astype(np.int64)

    edge_parts: list[np.ndarray] = []
    for ii, jj in _pair_chunks(n):
        u = gen.integers(0, 2**64, size=ii.shape[0], dtype=np.uint64) >> np.uint64(
            64 - _RESOLUTION_BITS
        )
        mask = u < thr[labels0[ii], labels0[jj]]
        if mask.any():
            edge_parts.append(
                np.stack([ii[mask], jj[mask]], axis=1)
            )
    if edge_parts:
        edges = np.concatenate(edge_parts, axis=0)
    else:
        edges = np.empty((0, 2), dtype=np.int32)
    coordinates = np.ldexp(k.astype(np.float64), -_RESOLUTION_BITS)
    return SampledGraph(n=n, q=g.q, group_of=labels, edges=edges, coordinates=coordinates)


def sample_group_counts(g: StepGraphon, n: int, seed: int) -> tuple[int, ...]:
    """Group sizes of the draw (g, n, seed) without materializing edges.

    Consumes the same leading coordinate words as sample_graph, so the
    counts agree exactly with group_counts(sample_graph(g, n, seed)).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    seed = _check_seed(seed)
    gen = np.random.Generator(np.random.Philox(key=seed))
    _, labels = _draw_labels(g, n, gen)
    return _counts_of_labels(labels, g.q)


def _counts_of_labels(labels: np.ndarray, q: int) -> tuple[int, ...]:
    return tuple(int(c) for c in np.bincount(labels, minlength=q + 1)[1:])


def group_counts(sg: SampledGraph) -> tuple[int, ...]:
    """Number of nodes per group, n_1..n_q; sums to n."""
    return _counts_of_labels(sg.group_of, sg.q)


def empirical_concentration(sg: SampledGraph) -> tuple[Fraction, ...]:
    """Exact group frequencies n_i/n."""
    return tuple(Fraction(c, sg.n) for c in group_counts(sg))


def coordinate_groups_consistent(g: StepGraphon, sg: SampledGraph) -> bool:
    """Exact check that every node's group matches its coordinate interval."""
    if sg.coordinates is None:
        raise ValueError("graph has no stored coordinates")
    for v in range(sg.n):
        y = Fraction(float(sg.coordinates[v]))
        i = int(sg.group_of[v])
        if not (g.partition[i - 1] <= y < g.partition[i]):
            return False
    return True


# -- graph dump format ---------------------------------------------------
#
# Line 1: "n q"
# Line 2: n space-separated group labels in 1..q
# Then one line "u v" per edge with 0 <= u < v < n, sorted lexicographically.


def dumps_graph(sg: SampledGraph) -> str:
    lines = [f"{sg.n} {sg.q}", " ".join(str(int(v)) for v in sg.group_of)]
    lines.extend(f"{int(u)} {int(v)}" for u, v in sg.edges)
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> SampledGraph:
    lines = text.splitlines()
    if len(lines) < 2:
        raise MalformedGraphDump("dump needs a header line and a label line")
    try:
        n, q = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise MalformedGraphDump(f"bad header line {lines[0]!r}") from exc
    if n < 1 or q < 1:
        raise MalformedGraphDump("n and q must be positive")
    try:
        labels = np.array([int(tok) for tok in lines[1].split()], dtype=np.int16)
    except ValueError as exc:
        raise MalformedGraphDump("bad group-label line") from exc
    if labels.shape[0] != n:
        raise MalformedGraphDump(f"expected {n} group labels, found {labels.shape[0]}")
    if int(labels.min()) < 1 or int(labels.max()) > q:
        raise MalformedGraphDump("group labels must lie in 1..q")

    pairs = []
    seen: set[tuple[int, int]] = set()
    for line in lines[2:]:
        if not line.strip():
            continue
        try:
            u, v = (int(tok) for tok in line.split())
        except ValueError as exc:
            raise MalformedGraphDump(f"bad edge line {line!r}") from exc
        if not (0 <= u < v < n):
            raise MalformedGraphDump(f"edge ({u},{v}) out of range or not u < v")
        if (u, v) in seen:
            raise MalformedGraphDump(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        pairs.append((u, v))
    pairs.sort()
    edges = (
        np.array(pairs, dtype=np.int32) if pairs else np.empty((0, 2), dtype=np.int32)
    )
    return SampledGraph(n=n, q=q, group_of=labels, edges=edges, coordinates=None)


def save_graph(sg: SampledGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_graph(sg))


def load_graph(path) -> SampledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_graph(fh.read())
