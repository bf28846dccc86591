"""Hamiltonian decompositions of the directed version of a sampled graph.

The directed version replaces every undirected edge by two opposite arcs.
A Hamiltonian decomposition is a spanning disjoint union of directed cycles
(2-cycles allowed, 1-cycles not).  Deciding existence reduces to a perfect
matching question: the directed graph has a spanning cycle union iff the
bipartite graph on left/right copies of the nodes, with an edge (L_i, R_j)
per arc i -> j, has a perfect matching; cycles are the orbits of the
matching permutation.

Alongside the exact decision there is a staged constructor for graphons
whose skeleton is a path with a self-loop at the far end: it chains
left-perfect matchings group by group along the path and closes with a
matching (plus a triangle when odd) inside the final group.  The
constructor is best-effort: it can fail on a finite sample even when a
decomposition exists, and reports the stage that failed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .matching import left_perfect_matching
from .sampling import SampledGraph, group_counts

SUCCESS = "success"
COUNTS_FAILED = "counts_failed"
RESIDUAL_FAILED = "residual_failed"
NOT_RUN = "not_run"


def matching_failed_at_stage(k: int) -> str:
    return f"matching_failed_at_stage_{k}"


class TooLarge(ValueError):
    """Brute-force enumeration is capped at 9 nodes."""


@dataclass(frozen=True)
class HamiltonianDecomposition:
    """Directed cycles, each written as a node sequence of length >= 2.

    Canonical form: every cycle starts at its smallest node and cycles are
    ordered by that node.
    """

    cycles: tuple[tuple[int, ...], ...]

    def node_count(self) -> int:
        return sum(len(c) for c in self.cycles)


@dataclass(frozen=True)
class ConstructionResult:
    """Outcome of the staged path constructor."""

    outcome: str
    decomposition: HamiltonianDecomposition | None = None

    @property
    def succeeded(self) -> bool:
        return self.outcome == SUCCESS


def _canonical_cycles(cycles) -> tuple[tuple[int, ...], ...]:
    canon = []
    for cycle in cycles:
        cycle = [int(v) for v in cycle]
        pivot = cycle.index(min(cycle))
        canon.append(tuple(cycle[pivot:] + cycle[:pivot]))
    canon.sort(key=lambda c: c[0])
    return tuple(canon)


def has_hamiltonian_decomposition(
    sg: SampledGraph,
) -> tuple[bool, HamiltonianDecomposition | None]:
    """Exact decision via perfect matching on the bipartite arc graph.

    The empty graph is vacuously decomposable (zero cycles).  When the
    answer is yes, the returned decomposition passes verify_decomposition.
    """
    n = sg.n
    if n == 0:
        return True, HamiltonianDecomposition(cycles=())
    if sg.edges.shape[0] == 0:
        return False, None
    eu = sg.edges[:, 0]
    ev = sg.edges[:, 1]
    rows = np.concatenate([eu, ev])
    cols = np.concatenate([ev, eu])
    biadjacency = csr_matrix(
        (np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(n, n)
    )
    matched_col = maximum_bipartite_matching(biadjacency, perm_type="column")
    if int((matched_col >= 0).sum()) < n:
        return False, None
    successor = [int(v) for v in matched_col]
    visited = [False] * n
    cycles = []
    for start in range(n):
        if visited[start]:
            continue
        cycle = []
        v = start
        while not visited[v]:
            visited[v] = True
            cycle.append(v)
            v = successor[v]
        cycles.append(cycle)
    hd = HamiltonianDecomposition(cycles=_canonical_cycles(cycles))
    return True, hd


def brute_force_hd(sg: SampledGraph) -> bool:
    """Exhaustive check over fixed-point-free successor permutations (n <= 9)."""
    n = sg.n
    if n > 9:
        raise TooLarge(f"brute force capped at 9 nodes, got {n}")
    if n == 0:
        return True
    neighbors = [sorted(s) for s in sg.neighbor_sets()]
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in neighbors[v]:
            if not used[w]:
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        return False

    return extend(0)


def find_triangle(sg: SampledGraph, nodes=None) -> tuple[int, int, int] | None:
    """Lexicographically smallest triangle in the induced subgraph, if any."""
    if nodes is None:
        candidates = list(range(sg.n))
    else:
        candidates = sorted(int(v) for v in nodes)
    allowed = set(candidates)
    neighbor = sg.neighbor_sets()
    for u in candidates:
        around = sorted(w for w in neighbor[u] if w in allowed and w > u)
        for i, v in enumerate(around):
            nv = neighbor[v]
            for w in around[i + 1 :]:
                if w in nv:
                    return (u, v, w)
    return None


def _cross_edges(sg: SampledGraph, left: list[int], right: list[int]) -> list[tuple[int, int]]:
    """Edges of sg with one endpoint in left, one in right, oriented left-first."""
    in_left = np.zeros(sg.n, dtype=bool)
    in_right = np.zeros(sg.n, dtype=bool)
    in_left[left] = True
    in_right[right] = True
    u = sg.edges[:, 0]
    v = sg.edges[:, 1]
    forward = in_left[u] & in_right[v]
    backward = in_left[v] & in_right[u]
    pairs = np.concatenate(
        [sg.edges[forward], sg.edges[backward][:, ::-1]], axis=0
    )
    return [tuple(p) for p in pairs.tolist()]


def er_hamiltonian_decomposition(
    sg: SampledGraph, nodes=None
) -> HamiltonianDecomposition | None:
    """Triangle-plus-matching construction on an induced subgraph.

    Even node count: split by position parity in ascending node order (even
    positions left), find a left-perfect matching across the split, and emit
    its 2-cycles.  Odd: peel off the smallest triangle first.  Returns None
    when the triangle or the matching is missing; a finite sample may fail
    here even when a decomposition exists.
    """
    if nodes is None:
        nodes = range(sg.n)
    remaining = sorted(int(v) for v in nodes)
    cycles: list[tuple[int, ...]] = []
    if len(remaining) % 2 == 1:
        triangle = find_triangle(sg, remaining)
        if triangle is None:
            return None
        cycles.append(triangle)
        dropped = set(triangle)
        remaining = [v for v in remaining if v not in dropped]
    if remaining:
        left = remaining[0::2]
        right = remaining[1::2]
        result = left_perfect_matching(left, right, _cross_edges(sg, left, right))
        if result.matching is None:
            return None
        cycles.extend(result.matching.pairs)
    return HamiltonianDecomposition(cycles=_canonical_cycles(cycles))


def construct_line_decomposition(
    sg: SampledGraph, order: tuple[int, ...]
) -> ConstructionResult:
    """Staged constructor for path-shaped skeletons with an end self-loop.

    ``order`` lists the group labels along the path, self-loop group last
    (see core.line_order).  Stages: check that every alternating count sum
    n_k - n_{k-1} + ... stays positive; chain left-perfect matchings from
    the unmatched part of each group into the next; finish with the
    triangle-plus-matching construction inside the final group.  Matchings
    only ever use cross-group edges.
    """
    if sorted(order) != list(range(1, sg.q + 1)):
        raise ValueError(f"order {order} is not a permutation of 1..{sg.q}")
    counts = group_counts(sg)
    reordered = [counts[g - 1] for g in order]
    running = 0
    for c in reordered:
        running = c - running
        if running <= 0:
            return ConstructionResult(outcome=COUNTS_FAILED)

    labels = sg.group_of
    members: dict[int, list[int]] = {
        g: [int(v) for v in np.flatnonzero(labels == g)] for g in order
    }
    cycles: list[tuple[int, ...]] = []
    available = members[order[0]]
    for k in range(len(order) - 1):
        right_nodes = members[order[k + 1]]
        cross = _cross_edges(sg, available, right_nodes)
        result = left_perfect_matching(available, right_nodes, cross)
        if result.matching is None:
            return ConstructionResult(outcome=matching_failed_at_stage(k + 1))
        cycles.extend(result.matching.pairs)
        matched_right = result.matching.right_nodes()
        available = [v for v in right_nodes if v not in matched_right]

    residual = er_hamiltonian_decomposition(sg, available)
    if residual is None:
        return ConstructionResult(outcome=RESIDUAL_FAILED)
    cycles.extend(residual.cycles)
    hd = HamiltonianDecomposition(cycles=_canonical_cycles(cycles))
    return ConstructionResult(outcome=SUCCESS, decomposition=hd)


def verify_decomposition(sg: SampledGraph, hd: HamiltonianDecomposition) -> bool:
    """Definitional check: disjoint cycles of length >= 2 covering every node,
    every arc backed by an undirected edge."""
    n = sg.n
    seen: set[int] = set()
    arcs: list[tuple[int, int]] = []
    for cycle in hd.cycles:
        if len(cycle) < 2:
            return False
        for v in cycle:
            if not 0 <= v < n or v in seen:
                return False
            seen.add(v)
        arcs.extend(zip(cycle, cycle[1:] + cycle[:1]))
    if len(seen) != n:
        return False
    if not arcs:
        return True
    # sg.edges is lexicographically sorted, so encoded keys are sorted too
    encoded = sg.edges[:, 0].astype(np.int64) * n + sg.edges[:, 1].astype(np.int64)
    a = np.array([min(p) for p in arcs], dtype=np.int64)
    b = np.array([max(p) for p in arcs], dtype=np.int64)
    queries = a * n + b
    pos = np.searchsorted(encoded, queries)
    inside = pos < encoded.shape[0]
    return bool(np.all(inside) and np.all(encoded[pos[inside]] == queries[inside]))
