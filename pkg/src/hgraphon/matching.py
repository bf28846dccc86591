"""Hopcroft-Karp maximum bipartite matching with a Hall-violation witness.

Deterministic by construction: left nodes are processed in ascending order
and adjacency lists are iterated in ascending right-node order, so the same
input always yields the same matching.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

_INF = -1


class LeftLargerThanRight(ValueError):
    """A left-perfect matching needs |left| <= |right|."""


@dataclass(frozen=True)
class Matching:
    """Pairs (left node, right node); no node appears twice."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def right_nodes(self) -> frozenset[int]:
        return frozenset(r for _, r in self.pairs)


@dataclass(frozen=True)
class MatchingResult:
    """Outcome of a left-perfect matching query.

    Exactly one of the fields is set: ``matching`` covers every left node,
    or ``hall_witness`` is a left subset with fewer neighbors than members.
    """

    matching: Matching | None
    hall_witness: tuple[int, ...] | None


class _Bipartite:
    def __init__(self, left: Sequence[int], right: Sequence[int], edges: Iterable[tuple[int, int]]):
        self.left = sorted(left)
        self.right = sorted(right)
        left_index = {v: i for i, v in enumerate(self.left)}
        right_index = {v: i for i, v in enumerate(self.right)}
        adj: list[list[int]] = [[] for _ in self.left]
        seen: set[tuple[int, int]] = set()
        for l, r in edges:
            if l not in left_index or r not in right_index:
                raise ValueError(f"edge ({l},{r}) joins nodes outside the given sides")
            key = (left_index[l], right_index[r])
            if key not in seen:
                seen.add(key)
                adj[key[0]].append(key[1])
        for lst in adj:
            lst.sort()
        self.adj = adj

    def maximum_matching(self) -> tuple[list[int], list[int]]:
        """Hopcroft-Karp; returns (match_of_left, match_of_right) as indices."""
        nl, nr = len(self.left), len(self.right)
        match_l = [_INF] * nl
        match_r = [_INF] * nr
        dist = [0] * nl
        adj = self.adj

        def bfs() -> bool:
            queue = deque()
            for u in range(nl):
                if match_l[u] == _INF:
                    dist[u] = 0
                    queue.append(u)
                else:
                    dist[u] = _INF
            found = False
            while queue:
                u = queue.popleft()
                for r in adj[u]:
                    w = match_r[r]
                    if w == _INF:
                        found = True
                    elif dist[w] == _INF:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            return found

        def dfs(root: int, ptr: list[int]) -> bool:
            # iterative layered search with a current-arc pointer per node;
            # rpath[i] is the right node linking stack[i] to stack[i + 1]
            stack = [root]
            rpath: list[int] = []
            while stack:
                u = stack[-1]
                advanced = False
                while ptr[u] < len(adj[u]):
                    r = adj[u][ptr[u]]
                    ptr[u] += 1
                    w = match_r[r]
                    if w == _INF:
                        match_l[u] = r
                        match_r[r] = u
                        for k in range(len(stack) - 2, -1, -1):
                            match_l[stack[k]] = rpath[k]
                            match_r[rpath[k]] = stack[k]
                        return True
                    if dist[w] == dist[u] + 1:
                        stack.append(w)
                        rpath.append(r)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = _INF
                    stack.pop()
                    if rpath:
                        rpath.pop()
            return False

        while bfs():
            ptr = [0] * nl
            for u in range(nl):
                if match_l[u] == _INF:
                    dfs(u, ptr)
        return match_l, match_r

    def hall_witness(self, match_l: list[int], match_r: list[int]) -> list[int]:
        """Left nodes reachable by alternating paths from the unmatched ones.

        By Konig's argument this set has strictly fewer right neighbors than
        members whenever the matching is not left-perfect.
        """
        queue = deque(u for u in range(len(self.left)) if match_l[u] == _INF)
        reachable = set(queue)
        seen_r: set[int] = set()
        while queue:
            u = queue.popleft()
            for r in self.adj[u]:
                if r in seen_r:
                    continue
                seen_r.add(r)
                w = match_r[r]
                if w != _INF and w not in reachable:
                    reachable.add(w)
                    queue.append(w)
        return sorted(reachable)


def left_perfect_matching(
    left: Sequence[int], right: Sequence[int], edges: Iterable[tuple[int, int]]
) -> MatchingResult:
    """Find a matching covering every left node, or a Hall violation.

    Runs Hopcroft-Karp (O(E * sqrt(V))).  When no left-perfect matching
    exists the returned witness W satisfies |N(W)| < |W| exactly.
    """
    left = list(left)
    right = list(right)
    if len(left) > len(right):
        raise LeftLargerThanRight(f"|left| = {len(left)} exceeds |right| = {len(right)}")
    graph = _Bipartite(left, right, edges)
    match_l, match_r = graph.maximum_matching()
    if all(m != _INF for m in match_l):
        pairs = tuple(
            (graph.left[u], graph.right[match_l[u]]) for u in range(len(graph.left))
        )
        return MatchingResult(matching=Matching(pairs=pairs), hall_witness=None)
    witness = tuple(graph.left[u] for u in graph.hall_witness(match_l, match_r))
    return MatchingResult(matching=None, hall_witness=witness)


def maximum_matching_pairs(
    left: Sequence[int], right: Sequence[int], edges: Iterable[tuple[int, int]]
) -> Matching:
    """Maximum-cardinality matching (not necessarily left-perfect)."""
    graph = _Bipartite(list(left), list(right), edges)
    match_l, _ = graph.maximum_matching()
    pairs = tuple(
        (graph.left[u], graph.right[match_l[u]])
        for u in range(len(graph.left))
        if match_l[u] != _INF
    )
    return Matching(pairs=pairs)
