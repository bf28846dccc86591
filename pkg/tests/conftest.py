from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from hgraphon.core import SkeletonGraph, StepGraphon, validate_graphon

REPO_ROOT = Path(__file__).resolve().parent.parent
GRAPHON_DIR = REPO_ROOT / "graphons"
SCHEMA_DIR = REPO_ROOT / "docs" / "schemas"


@pytest.fixture(scope="session")
def graphon_dir() -> Path:
    return GRAPHON_DIR


def fractions_01(max_denominator: int = 20):
    return st.fractions(min_value=0, max_value=1, max_denominator=max_denominator)


@st.composite
def step_graphons(draw, max_q: int = 4, allow_zero_blocks: bool = True) -> StepGraphon:
    """Arbitrary valid step-graphons with small exact-rational data."""
    q = draw(st.integers(min_value=1, max_value=max_q))
    cuts = draw(
        st.lists(
            st.fractions(min_value=Fraction(1, 24), max_value=Fraction(23, 24), max_denominator=24),
            min_size=q - 1,
            max_size=q - 1,
            unique=True,
        )
    )
    partition = [Fraction(0)] + sorted(cuts) + [Fraction(1)]
    lower = 0 if allow_zero_blocks else Fraction(1, 16)
    entries = {}
    for i in range(q):
        for j in range(i, q):
            entries[(i, j)] = draw(
                st.fractions(min_value=lower, max_value=1, max_denominator=16)
            )
    values = [[entries[(min(i, j), max(i, j))] for j in range(q)] for i in range(q)]
    return validate_graphon(partition, values)


def random_connected_skeleton(rng: random.Random, q: int) -> SkeletonGraph:
    """Random connected skeleton on q nodes; F is never empty."""
    edges: set[tuple[int, int]] = set()
    for node in range(2, q + 1):
        other = rng.randint(1, node - 1)
        edges.add((other, node))
    extra = rng.randint(0, max(0, q * (q - 1) // 2 - (q - 1)))
    candidates = [
        (i, j) for i in range(1, q + 1) for j in range(i + 1, q + 1) if (i, j) not in edges
    ]
    rng.shuffle(candidates)
    edges.update(candidates[:extra])
    loops = frozenset(i for i in range(1, q + 1) if rng.random() < 0.3)
    if q == 1 and not loops:
        loops = frozenset({1})
    return SkeletonGraph(node_count=q, self_loops=loops, edges=frozenset(edges))


def random_line_skeleton(q: int, loop_at_start: bool = False) -> SkeletonGraph:
    edges = frozenset((i, i + 1) for i in range(1, q))
    loop = 1 if (loop_at_start and q > 1) else q
    return SkeletonGraph(node_count=q, self_loops=frozenset({loop}), edges=edges)


def random_positive_concentration(rng: random.Random, q: int) -> tuple[Fraction, ...]:
    """Strictly positive exact rationals summing to 1."""
    weights = [rng.randint(1, 30) for _ in range(q)]
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)
