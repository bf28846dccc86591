"""Decision procedures for the Hamiltonian-decomposition conditions.

Three checks drive the verdict for a step-graphon:

* an odd cycle in the skeleton graph (a self-loop counts as a 1-cycle),
* membership of the concentration vector in the edge polytope spanned by
  the incidence columns,
* membership in the *relative interior* of that polytope.

Membership is decided by an exact rational LP: maximize t subject to the
vector being a convex combination with all coefficients >= t.  The optimum
is 0 exactly on the boundary and positive exactly in the relative interior.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DisconnectedSkeleton,
    IncidenceMatrix,
    SkeletonGraph,
    StepGraphon,
    concentration_vector,
    incidence_matrix,
    is_connected,
    is_line_graphon,
    line_order,
    skeleton_graph,
)
from .simplex import INFEASIBLE, OPTIMAL, solve_equality_lp

OUTSIDE = "outside"
BOUNDARY = "boundary"
RELATIVE_INTERIOR = "relative_interior"

H_PROPERTY = "H_PROPERTY"
NO_H_PROPERTY = "NO_H_PROPERTY"
BORDERLINE = "BORDERLINE"


class DimensionMismatch(ValueError):
    """Vector length does not match the incidence matrix."""


@dataclass(frozen=True)
class MembershipResult:
    """Exact polytope classification with a checkable certificate.

    When status is not OUTSIDE, ``certificate`` holds convex-combination
    coefficients (nonnegative, summing to 1, strictly positive for
    RELATIVE_INTERIOR) reproducing the queried vector from the incidence
    columns.  When OUTSIDE, ``infeasibility_witness`` describes a separating
    functional.
    """

    status: str
    certificate: tuple[Fraction, ...] | None = None
    infeasibility_witness: str | None = None


@dataclass(frozen=True)
class ConditionReport:
    condition1: bool
    condition2A: bool
    condition2B: bool
    polytope_rank: int
    verdict: str
    membership: MembershipResult


def has_odd_cycle(s: SkeletonGraph) -> bool:
    """True iff the skeleton has a self-loop or a plain odd cycle.

    Requires a connected skeleton; raises DisconnectedSkeleton otherwise.
    """
    if not is_connected(s):
        raise DisconnectedSkeleton("skeleton graph is not connected")
    if s.self_loops:
        return True
    # bipartiteness check by BFS 2-coloring over the plain edges
    adjacent: dict[int, list[int]] = {i: [] for i in range(1, s.node_count + 1)}
    for i, j in s.edges:
        adjacent[i].append(j)
        adjacent[j].append(i)
    color = {1: 0}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for v in adjacent[u]:
            if v not in color:
                color[v] = color[u] ^ 1
                queue.append(v)
            elif color[v] == color[u]:
                return True
    return False


def polytope_membership(z: IncidenceMatrix, x) -> MembershipResult:
    """Classify x against the convex hull of the incidence columns, exactly.

    x must be a length-q vector of rationals summing to 1 (the hull consists
    of probability vectors, so nothing else can ever be a member).
    """
    x = tuple(Fraction(v) for v in x)
    q = z.node_count
    if len(x) != q:
        raise DimensionMismatch(f"vector has length {len(x)}, incidence matrix has {q} rows")
    if sum(x) != 1:
        raise ValueError("queried vector must sum to exactly 1")

    ncols = len(z.columns)
    if ncols == 0:
        return MembershipResult(
            status=OUTSIDE,
            infeasibility_witness="the skeleton has no edges or self-loops; the edge polytope is empty",
        )

    # variables (u_1..u_m, t): column weights are alpha_j = u_j + t, so
    # maximizing t maximizes the smallest weight.  Feasibility at t = 0 is
    # plain membership; a positive optimum is relative-interior membership.
    row_sums = [sum((col[i] for col in z.columns), Fraction(0)) for i in range(q)]
    lhs = [[z.columns[j][i] for j in range(ncols)] + [row_sums[i]] for i in range(q)]
    lhs.append([Fraction(1)] * ncols + [Fraction(ncols)])
    rhs = list(x) + [Fraction(1)]
    objective = [Fraction(0)] * ncols + [Fraction(1)]

    result = solve_equality_lp(objective, lhs, rhs)
    if result.status == INFEASIBLE:
        assert result.farkas is not None
        y = result.farkas[:q]
        separations = [
            sum((y[i] * col[i] for i in range(q)), Fraction(0)) for col in z.columns
        ]
        witness = (
            f"separating functional y = ({', '.join(str(v) for v in y)}): "
            f"y.x = {sum(a * b for a, b in zip(y, x))} exceeds "
            f"y.z_j for every generator column (max {max(separations)})"
        )
        return MembershipResult(status=OUTSIDE, infeasibility_witness=witness)
    if result.status != OPTIMAL:
        raise ArithmeticError("membership LP cannot be unbounded")

    assert result.solution is not None and result.value is not None
    t_star = result.value
    alpha = tuple(result.solution[j] + t_star for j in range(ncols))
    _check_certificate(z, x, alpha, strict=t_star > 0)
    if t_star > 0:
        return MembershipResult(status=RELATIVE_INTERIOR, certificate=alpha)
    return MembershipResult(status=BOUNDARY, certificate=alpha)


def _check_certificate(z: IncidenceMatrix, x, alpha, strict: bool) -> None:
    if any(a < 0 for a in alpha) or (strict and any(a == 0 for a in alpha)):
        raise ArithmeticError("certificate violates sign constraints")
    if sum(alpha) != 1:
        raise ArithmeticError("certificate does not sum to 1")
    for i in range(z.node_count):
        if sum(a * col[i] for a, col in zip(alpha, z.columns)) != x[i]:
            raise ArithmeticError("certificate does not reproduce the queried vector")


def line_inequalities(x) -> tuple[Fraction, ...]:
    """Alternating partial sums s_k = x_k - x_{k-1} + x_{k-2} - ...

    For a path-shaped skeleton with the self-loop at the far end, all sums
    strictly positive characterizes relative-interior membership of x (in
    path order).  Callers test positivity themselves.
    """
    x = tuple(Fraction(v) for v in x)
    sums = []
    running = Fraction(0)
    for xi in x:
        running = xi - running
        sums.append(running)
    return tuple(sums)


def polytope_rank(z: IncidenceMatrix) -> int:
    """Affine dimension of the hull: rank of {z_j - z_1 : j >= 2}, exact."""
    if len(z.columns) <= 1:
        return 0
    base = z.columns[0]
    vectors = [
        [col[i] - base[i] for i in range(z.node_count)] for col in z.columns[1:]
    ]
    return _rational_rank(vectors)


def _rational_rank(vectors: list[list[Fraction]]) -> int:
    rows = [row[:] for row in vectors]
    rank = 0
    col_count = len(rows[0]) if rows else 0
    pivot_col = 0
    while rank < len(rows) and pivot_col < col_count:
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][pivot_col] != 0), None)
        if pivot_row is None:
            pivot_col += 1
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = 1 / rows[rank][pivot_col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][pivot_col] != 0:
                factor = rows[r][pivot_col]
                rows[r] = [v - factor * p for v, p in zip(rows[r], rows[rank])]
        rank += 1
        pivot_col += 1
    return rank


def classify(g: StepGraphon) -> ConditionReport:
    """Assemble the full condition report for a validated step-graphon.

    For path-with-end-loop skeletons the LP verdict is cross-checked against
    the alternating-sum closed form; any disagreement is a hard error.
    """
    s = skeleton_graph(g)
    if not is_connected(s):
        raise DisconnectedSkeleton("skeleton graph is not connected")
    condition1 = has_odd_cycle(s)
    z = incidence_matrix(s)
    x = concentration_vector(g)
    membership = polytope_membership(z, x)
    rank = polytope_rank(z)

    if is_line_graphon(s):
        order = line_order(s)
        sums = line_inequalities([x[node - 1] for node in order])
        closed_form = all(v > 0 for v in sums)
        if closed_form != (membership.status == RELATIVE_INTERIOR):
            raise ArithmeticError(
                "alternating-sum closed form disagrees with LP membership "
                f"for x = {x}, path order {order}: sums {sums}, LP {membership.status}"
            )

    condition2a = membership.status != OUTSIDE
    condition2b = membership.status == RELATIVE_INTERIOR
    if condition1 and condition2b:
        verdict = H_PROPERTY
    elif not condition1 or not condition2a:
        verdict = NO_H_PROPERTY
    else:
        verdict = BORDERLINE
    return ConditionReport(
        condition1=condition1,
        condition2A=condition2a,
        condition2B=condition2b,
        polytope_rank=rank,
        verdict=verdict,
        membership=membership,
    )
