"""Level relations derived from a superiority-degree matrix, and their ladder.

``level_relation(m, l)`` keeps the pairs whose degree clears the threshold
``l`` (inclusively, so the zero-level relation stays connected and carries
ties).  Sweeping the threshold upward thins the relation and grows its core,
which yields a finite ladder of nested Pareto sets: the relation only changes
at the distinct entry magnitudes, so those are the only rungs worth
reporting.

Threshold conventions differ by a hair between the standalone relation and
the ladder, deliberately:

* ``level_relation`` uses ``phi >= l`` so that the zero level is connected
  and non-strict, and so that the group-decision level relation (built on
  the same rule) keeps its weak-order reading.
* ladder rungs use ``phi > l``: a rung answers "what still dominates
  strictly above this level", which makes the chain top out at the full set
  when the level reaches the largest degree, exactly where strict
  domination runs out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation
from .relations import Core, PreferenceRelation, core, intersect, union
from .superiority import DEFAULT_EPS, SDMatrix, WeightVector, default_weights


@dataclass(frozen=True, eq=False)
class LevelRelation:
    """A level relation that remembers which matrix and threshold produced it."""

    source: SDMatrix
    level: float
    relation: PreferenceRelation

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LevelRelation)
            and self.source == other.source
            and self.level == other.level
            and self.relation == other.relation
        )

    def __hash__(self) -> int:
        return hash((self.source, self.level, self.relation))


@dataclass(frozen=True)
class Rung:
    """One ladder step: the strict relation above ``level`` and its core."""

    level: float
    relation: PreferenceRelation
    core: Core


@dataclass(frozen=True, eq=False)
class LevelChain:
    """Ascending rungs with weakly growing cores; tops out at the full set."""

    source: SDMatrix
    weights: WeightVector
    rungs: tuple[Rung, ...]

    @property
    def level_star(self) -> float:
        """Threshold at which strict domination runs out."""
        return self.source.phi_star

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LevelChain)
            and self.source == other.source
            and self.weights == other.weights
            and self.rungs == other.rungs
        )


def level_relation(m: SDMatrix, level: float) -> PreferenceRelation:
    """Pairs whose degree reaches ``level``; inclusive threshold.

    At level 0 this is connected and non-strict (ties and the diagonal are
    in); at positive levels it is strict and in general disconnected.  Its
    inverse collects the pairs with degree at most ``-level``.
    """
    if level < 0:
        raise InvariantViolation(f"level must be nonnegative, got {level!r}")
    return PreferenceRelation(m.base, m.phi >= level)


def strict_level_relation(m: SDMatrix, level: float) -> PreferenceRelation:
    """Pairs whose degree strictly exceeds ``level``; empty once level reaches phi_star."""
    if level < 0:
        raise InvariantViolation(f"level must be nonnegative, got {level!r}")
    return PreferenceRelation(m.base, m.phi > level)


def level_slice(m: SDMatrix, level: float) -> LevelRelation:
    """``level_relation`` bundled with its provenance, for lattice operations."""
    return LevelRelation(m, float(level), level_relation(m, level))


def identity_relation(m: SDMatrix, eps: float = DEFAULT_EPS) -> PreferenceRelation:
    """Pairs with (numerically) zero degree; an equivalence when m is transitive."""
    return PreferenceRelation(m.base, np.abs(m.phi) <= eps)


def nonstrict_level_relation(
    m: SDMatrix, level: float, eps: float = DEFAULT_EPS
) -> PreferenceRelation:
    """Union of the identity relation and the level relation; positive levels only."""
    if level <= 0:
        raise InvariantViolation(
            f"nonstrict level relation needs a positive level, got {level!r}"
        )
    return union(identity_relation(m, eps), level_relation(m, level))


def meet(a: LevelRelation, b: LevelRelation) -> LevelRelation:
    """Intersection of two level relations off one matrix; lands at the max level."""
    _check_provenance(a, b)
    return LevelRelation(
        a.source, max(a.level, b.level), intersect(a.relation, b.relation)
    )


def join(a: LevelRelation, b: LevelRelation) -> LevelRelation:
    """Union of two level relations off one matrix; lands at the min level."""
    _check_provenance(a, b)
    return LevelRelation(
        a.source, min(a.level, b.level), union(a.relation, b.relation)
    )


def _check_provenance(a: LevelRelation, b: LevelRelation) -> None:
    if a.source != b.source:
        raise InvariantViolation("level relations come from different matrices")


def ladder_levels(m: SDMatrix) -> list[float]:
    """0 plus every distinct positive entry magnitude, ascending."""
    mags = np.unique(np.abs(m.phi))
    return [0.0] + [float(v) for v in mags if v > 0]


def ladder(m: SDMatrix, w: WeightVector | None = None) -> LevelChain:
    """The full nested-core ladder of the matrix.

    Rungs sit at 0 and at each distinct entry magnitude -- the only points
    where the relation changes.  Each rung carries the strictly-above
    relation and its core; cores are weakly nested upward and the last rung
    (at phi_star) always shows the whole set.  Levels beyond phi_star add
    nothing and are not included.
    """
    w = default_weights(m.base, w)
    rungs = []
    for level in ladder_levels(m):
        rel = strict_level_relation(m, level)
        rungs.append(Rung(level=level, relation=rel, core=core(rel)))
    return LevelChain(source=m, weights=w, rungs=tuple(rungs))
