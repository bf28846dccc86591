"""Pinned experiment presets covering the three limit regimes.

Each preset fixes the graphon, the n grid, the trial count, the master seed
and the decision method, so a preset run is a single reproducible artifact.

* ``borderline``: two groups of equal mass, zero upper-left block.  The
  concentration vector sits exactly on the boundary of the edge polytope
  and the decomposition probability converges to 1/2.
* ``line``: four groups along a path with an end self-loop, interior
  concentration vector; probability converges to 1 and the staged
  constructor should succeed almost always.
* ``no-odd-cycle``: bipartite skeleton (no self-loops) sampled at odd n;
  a parity obstruction makes every trial fail deterministically.
* ``outside-polytope``: path skeleton whose first group is too heavy for
  the polytope; probability converges to 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import StepGraphon, validate_graphon
from .montecarlo import METHOD_BOTH, METHOD_MATCHING, ExperimentConfig

_HALF = Fraction(1, 2)
_ZERO = Fraction(0)


def borderline_graphon(p: Fraction = _HALF) -> StepGraphon:
    """Two equal groups; the block of the first group with itself is zero."""
    return validate_graphon(
        [0, _HALF, 1],
        [[_ZERO, p], [p, p]],
    )


def line_graphon_4() -> StepGraphon:
    """Four groups with masses (1/5, 3/10, 1/4, 1/4); path skeleton
    1-2-3-4 with a self-loop at group 4; every nonzero block is 1/2."""
    return validate_graphon(
        [0, Fraction(1, 5), _HALF, Fraction(3, 4), 1],
        [
            [_ZERO, _HALF, _ZERO, _ZERO],
            [_HALF, _ZERO, _HALF, _ZERO],
            [_ZERO, _HALF, _ZERO, _HALF],
            [_ZERO, _ZERO, _HALF, _HALF],
        ],
    )


def bipartite_graphon(p: Fraction = _HALF) -> StepGraphon:
    """Two equal groups, only the cross block nonzero: bipartite skeleton."""
    return validate_graphon(
        [0, _HALF, 1],
        [[_ZERO, p], [p, _ZERO]],
    )


def heavy_head_line_graphon() -> StepGraphon:
    """Path skeleton with masses (3/5, 1/5, 1/10, 1/10): the first group is
    heavier than the rest combined, so the concentration vector falls
    outside the edge polytope."""
    return validate_graphon(
        [0, Fraction(3, 5), Fraction(4, 5), Fraction(9, 10), 1],
        [
            [_ZERO, _HALF, _ZERO, _ZERO],
            [_HALF, _ZERO, _HALF, _ZERO],
            [_ZERO, _HALF, _ZERO, _HALF],
            [_ZERO, _ZERO, _HALF, _HALF],
        ],
    )


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    config: ExperimentConfig


PRESETS: dict[str, Preset] = {
    "borderline": Preset(
        name="borderline",
        description="boundary concentration vector; limit probability 1/2",
        config=ExperimentConfig(
            graphon=borderline_graphon(),
            n_values=(500, 1000, 2000),
            trials_per_n=2000,
            master_seed=271828,
            method=METHOD_MATCHING,
        ),
    ),
    "line": Preset(
        name="line",
        description="interior concentration vector on a path skeleton; limit 1",
        config=ExperimentConfig(
            graphon=line_graphon_4(),
            n_values=(800,),
            trials_per_n=500,
            master_seed=314159,
            method=METHOD_BOTH,
        ),
    ),
    "no-odd-cycle": Preset(
        name="no-odd-cycle",
        description="bipartite skeleton at odd n; parity forces probability 0",
        config=ExperimentConfig(
            graphon=bipartite_graphon(),
            n_values=(251, 501, 1001),
            trials_per_n=300,
            master_seed=161803,
            method=METHOD_MATCHING,
        ),
    ),
    "outside-polytope": Preset(
        name="outside-polytope",
        description="concentration vector outside the polytope; limit 0",
        config=ExperimentConfig(
            graphon=heavy_head_line_graphon(),
            n_values=(250, 500, 1000),
            trials_per_n=500,
            master_seed=141421,
            method=METHOD_MATCHING,
        ),
    ),
}
