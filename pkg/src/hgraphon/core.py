"""Exact data model for step-graphons and their structural objects.

A step-graphon is a symmetric function on the unit square that is constant
over the rectangles of a grid partition.  Everything structural here
(partition points, block values, concentration vector, incidence columns)
is kept as exact rationals: the interior/boundary distinction for the edge
polytope is not robust under floating point, and the interesting examples
sit exactly on the boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]


class GraphonError(ValueError):
    """Base class for invalid step-graphon input."""


class MalformedGraphon(GraphonError):
    """Structurally broken input (wrong shapes, unparseable entries)."""


class NonMonotonePartition(GraphonError):
    """Partition points are not strictly increasing."""


class EndpointViolation(GraphonError):
    """Partition does not start at 0 or end at 1."""


class AsymmetricValues(GraphonError):
    """Block value matrix is not symmetric."""


class ValueOutOfRange(GraphonError):
    """Some block value lies outside [0, 1]."""


class DisconnectedSkeleton(GraphonError):
    """Analysis requires a connected skeleton graph."""


class NotALineGraphon(GraphonError):
    """Skeleton is not a path with a single self-loop at an ending node."""


def to_rational(value: RationalLike) -> Fraction:
    """Convert an input token to an exact rational.

    Accepts Fraction, int, or a string holding either "p/q" or a finite
    decimal ("0.2" becomes exactly 1/5).  Binary floats are rejected: they
    do not round-trip decimal inputs and would silently move boundary cases.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise MalformedGraphon(f"expected a rational, got bool {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise MalformedGraphon(
            f"refusing inexact float {value!r}; pass a string like '1/5' or '0.2'"
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedGraphon(f"cannot parse rational from {value!r}") from exc
    raise MalformedGraphon(f"cannot parse rational from {value!r}")


@dataclass(frozen=True)
class StepGraphon:
    """A validated step-graphon: grid partition plus symmetric block values."""

    partition: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]

    @property
    def q(self) -> int:
        return len(self.values)

    def block(self, i: int, j: int) -> Fraction:
        """Value over block (i, j), 1-based."""
        return self.values[i - 1][j - 1]


@dataclass(frozen=True)
class SkeletonGraph:
    """Support structure of a step-graphon: which blocks are nonzero.

    Nodes are 1..node_count.  ``edges`` holds unordered pairs (i, j) with
    i < j for nonzero off-diagonal blocks; ``self_loops`` holds the nodes
    with a nonzero diagonal block.
    """

    node_count: int
    self_loops: frozenset[int]
    edges: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class IncidenceMatrix:
    """Columns are probability vectors, one per skeleton edge or self-loop.

    An edge column carries 1/2 at each endpoint; a self-loop column carries
    1 at its node.  Column order is deterministic: edges sorted by endpoint
    pair, then self-loops sorted by node.  ``column_edge[j]`` identifies the
    support element of column j, with a loop at node i encoded as (i, i).
    """

    node_count: int
    columns: tuple[tuple[Fraction, ...], ...]
    column_edge: tuple[tuple[int, int], ...]


def validate_graphon(
    raw_partition: Sequence[RationalLike],
    raw_values: Sequence[Sequence[RationalLike]],
) -> StepGraphon:
    """Validate raw partition/value data into a StepGraphon.

    Raises a specific GraphonError naming the violated invariant; never
    repairs the input.
    """
    partition = tuple(to_rational(v) for v in raw_partition)
    if len(partition) < 2:
        raise MalformedGraphon("partition needs at least two points")
    if partition[0] != 0 or partition[-1] != 1:
        raise EndpointViolation(
            f"partition must run from 0 to 1, got {partition[0]}..{partition[-1]}"
        )
    for a, b in zip(partition, partition[1:]):
        if not a < b:
            raise NonMonotonePartition(f"partition not strictly increasing at {a} >= {b}")

    q = len(partition) - 1
    rows = [tuple(to_rational(v) for v in row) for row in raw_values]
    if len(rows) != q or any(len(row) != q for row in rows):
        raise MalformedGraphon(f"value matrix must be {q}x{q} for this partition")
    for i in range(q):
        for j in range(q):
            v = rows[i][j]
            if v < 0 or v > 1:
                raise ValueOutOfRange(f"value at block ({i + 1},{j + 1}) is {v}, outside [0,1]")
            if rows[j][i] != v:
                raise AsymmetricValues(
                    f"values at ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ: {v} != {rows[j][i]}"
                )
    return StepGraphon(partition=partition, values=tuple(rows))


def concentration_vector(g: StepGraphon) -> tuple[Fraction, ...]:
    """Lengths of the partition intervals; strictly positive, sums to 1."""
    return tuple(b - a for a, b in zip(g.partition, g.partition[1:]))


def skeleton_graph(g: StepGraphon) -> SkeletonGraph:
    """Support graph: node i gets a self-loop iff block (i,i) is nonzero,
    an edge {i,j} iff block (i,j) is nonzero."""
    q = g.q
    loops = frozenset(i for i in range(1, q + 1) if g.block(i, i) != 0)
    edges = frozenset(
        (i, j) for i in range(1, q + 1) for j in range(i + 1, q + 1) if g.block(i, j) != 0
    )
    return SkeletonGraph(node_count=q, self_loops=loops, edges=edges)


def incidence_matrix(s: SkeletonGraph) -> IncidenceMatrix:
    q = s.node_count
    half = Fraction(1, 2)
    columns: list[tuple[Fraction, ...]] = []
    which: list[tuple[int, int]] = []
    for i, j in sorted(s.edges):
        col = [Fraction(0)] * q
        col[i - 1] = half
        col[j - 1] = half
        columns.append(tuple(col))
        which.append((i, j))
    for i in sorted(s.self_loops):
        col = [Fraction(0)] * q
        col[i - 1] = Fraction(1)
        columns.append(tuple(col))
        which.append((i, i))
    return IncidenceMatrix(node_count=q, columns=tuple(columns), column_edge=tuple(which))


def is_connected(s: SkeletonGraph) -> bool:
    """Connectivity over the plain edges; self-loops do not connect anything."""
    if s.node_count <= 1:
        return True
    adjacent: dict[int, set[int]] = {i: set() for i in range(1, s.node_count + 1)}
    for i, j in s.edges:
        adjacent[i].add(j)
        adjacent[j].add(i)
    seen = {1}
    stack = [1]
    while stack:
        u = stack.pop()
        for v in adjacent[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == s.node_count


def is_line_graphon(s: SkeletonGraph) -> bool:
    """True iff the skeleton is a simple path over all nodes with exactly one
    self-loop, located at an end of the path.

    A single node with a self-loop counts (the constant-graphon case).
    """
    try:
        line_order(s)
    except NotALineGraphon:
        return False
    return True


def line_order(s: SkeletonGraph) -> tuple[int, ...]:
    """Node order along the path, ending at the self-loop node.

    Raises NotALineGraphon when the skeleton is not a path with a single
    self-loop at an ending node.
    """
    q = s.node_count
    if len(s.self_loops) != 1:
        raise NotALineGraphon(f"expected exactly one self-loop, found {len(s.self_loops)}")
    loop_node = next(iter(s.self_loops))

    if q == 1:
        return (loop_node,)

    if len(s.edges) != q - 1:
        raise NotALineGraphon(f"a path on {q} nodes has {q - 1} edges, found {len(s.edges)}")
    degree = {i: 0 for i in range(1, q + 1)}
    adjacent: dict[int, list[int]] = {i: [] for i in range(1, q + 1)}
    for i, j in s.edges:
        degree[i] += 1
        degree[j] += 1
        adjacent[i].append(j)
        adjacent[j].append(i)
    ends = sorted(i for i, d in degree.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in degree.values()):
        raise NotALineGraphon("plain edges do not form a simple path")
    if loop_node not in ends:
        raise NotALineGraphon(f"self-loop at node {loop_node} is not at an end of the path")

    start = ends[0] if ends[1] == loop_node else ends[1]
    order = [start]
    previous = None
    current = start
    while len(order) < q:
        nxt = [v for v in adjacent[current] if v != previous]
        if len(nxt) != 1:
            raise NotALineGraphon("plain edges do not form a simple path")
        previous, current = current, nxt[0]
        order.append(current)
    if current != loop_node:
        raise NotALineGraphon("path does not end at the self-loop node")
    return tuple(order)


# -- JSON serialization -------------------------------------------------

def _rational_str(v: Fraction) -> str:
    return str(v)


def graphon_to_dict(g: StepGraphon) -> dict:
    return {
        "partition": [_rational_str(v) for v in g.partition],
        "values": [[_rational_str(v) for v in row] for row in g.values],
    }


def graphon_from_dict(data: dict) -> StepGraphon:
    if not isinstance(data, dict) or "partition" not in data or "values" not in data:
        raise MalformedGraphon("graphon JSON needs 'partition' and 'values' keys")
    return validate_graphon(data["partition"], data["values"])


def dumps_graphon(g: StepGraphon) -> str:
    return json.dumps(graphon_to_dict(g), indent=2) + "\n"


def loads_graphon(text: str) -> StepGraphon:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedGraphon(f"invalid JSON: {exc}") from exc
    return graphon_from_dict(data)


def load_graphon(path) -> StepGraphon:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_graphon(fh.read())


def save_graphon(g: StepGraphon, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_graphon(g))
