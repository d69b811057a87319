"""Group decision procedures over a panel of expert preference relations.

Each expert contributes an ordinary binary relation (transitivity is not
required).  Pairwise tallies count, per ordered pair, one point for a clear
verdict and half a point each way for a tie; the tally differences form a
skew-symmetric group superiority matrix, from which majority voting, the
Copeland score ranking and level-based group decisions all derive.  Panels
with incomparable pairs (abstentions) are handled in :mod:`sdkit.interval`.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, WrongDataKind
from .relations import (
    AlternativeSet,
    Core,
    PreferenceRelation,
    core,
    is_connected,
    _frozen,
)
from .superiority import DEFAULT_EPS, SDMatrix, UtilityVector, classify


@dataclass(frozen=True, eq=False)
class VectorPreferenceRelation:
    """One preference relation per expert, all over the same alternatives."""

    base: AlternativeSet
    experts: tuple[PreferenceRelation, ...]
    expert_ids: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        experts = tuple(self.experts)
        if not experts:
            raise InvariantViolation("panel needs at least one expert")
        for r in experts:
            if r.base != self.base:
                raise InvariantViolation("expert relations must share the alternative set")
        object.__setattr__(self, "experts", experts)
        if self.expert_ids is not None:
            ids = tuple(str(i) for i in self.expert_ids)
            if len(ids) != len(experts):
                raise InvariantViolation("one expert id per relation required")
            object.__setattr__(self, "expert_ids", ids)

    @property
    def n_experts(self) -> int:
        return len(self.experts)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VectorPreferenceRelation)
            and self.base == other.base
            and self.experts == other.experts
            and self.expert_ids == other.expert_ids
        )

    def __hash__(self) -> int:
        return hash((self.base, self.experts, self.expert_ids))


@dataclass(frozen=True, eq=False)
class TallyMatrix:
    """Vote tallies n_ij: how much of the panel put x_i over x_j.

    Ties contribute half a point in each direction, so for a panel of
    connected relations n_ij + n_ji = N off the diagonal.  The diagonal is
    fixed at N/2 by the tie convention; no downstream procedure reads it,
    since they all work on differences.
    """

    base: AlternativeSet
    counts: np.ndarray
    n_experts: int

    def __post_init__(self) -> None:
        c = np.asarray(self.counts, dtype=float)
        n = self.base.n
        if c.shape != (n, n):
            raise InvariantViolation(f"tally matrix must be {n}x{n}, got {c.shape}")
        if np.any(c < 0):
            raise InvariantViolation("tallies must be nonnegative")
        if self.n_experts < 1:
            raise InvariantViolation("expert count must be at least 1")
        object.__setattr__(self, "counts", _frozen(c))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TallyMatrix)
            and self.base == other.base
            and self.n_experts == other.n_experts
            and np.array_equal(self.counts, other.counts)
        )

    def __hash__(self) -> int:
        return hash((self.base, self.n_experts, self.counts.tobytes()))


def expert_from_order(base: AlternativeSet, order: Sequence[str]) -> PreferenceRelation:
    """Expand a linear-order ballot into the full strict relation plus reflexive ties."""
    seen = [str(a) for a in order]
    if sorted(seen) != sorted(base.ids):
        raise InvariantViolation(
            f"order must list every alternative exactly once, got {seen}"
        )
    member = np.eye(base.n, dtype=bool)
    for pos, x in enumerate(seen):
        for y in seen[pos + 1 :]:
            member[base.index(x), base.index(y)] = True
    return PreferenceRelation(base, member)


def _delta(r: PreferenceRelation) -> np.ndarray:
    fwd = r.member
    bwd = r.member.T
    d = np.where(fwd & bwd, 0.5, np.where(fwd, 1.0, 0.0))
    np.fill_diagonal(d, 0.5)
    return d


def tally(vpr: VectorPreferenceRelation) -> TallyMatrix:
    """Count the panel's verdicts per ordered pair.

    Requires every expert relation to be connected (complete information);
    a panel with incomparable pairs must go through
    :func:`sdkit.interval.abstention_tally` instead.
    """
    for k, r in enumerate(vpr.experts):
        if not is_connected(r):
            raise WrongDataKind(
                f"expert {k} leaves some pairs incomparable; "
                "use abstention_tally for incomplete panels"
            )
    counts = np.zeros((vpr.base.n, vpr.base.n))
    for r in vpr.experts:
        counts += _delta(r)
    return TallyMatrix(vpr.base, counts, vpr.n_experts)


def majority(t: TallyMatrix) -> PreferenceRelation:
    """Voting by majority: strict where n_ij > n_ji, tied where equal.

    Not transitive in general (the classic cycle shows up with three experts
    already).
    """
    strict = t.counts > t.counts.T
    tied = t.counts == t.counts.T
    return PreferenceRelation(t.base, strict | tied)


def copeland(t: TallyMatrix) -> tuple[UtilityVector, PreferenceRelation]:
    """Copeland scores (net pairwise vote margins) and the weak order they induce.

    The score of x_i is sum_j (n_ij - n_ji); the relation keeps every pair
    whose first score is at least the second, so tied scores stay visibly
    tied.  Always connected and transitive.
    """
    z = t.counts - t.counts.T
    scores = z.sum(axis=1)
    member = scores[:, None] >= scores[None, :]
    return UtilityVector(t.base, scores), PreferenceRelation(t.base, member)


def group_sd(t: TallyMatrix) -> SDMatrix:
    """Net vote margins Z_ij = n_ij - n_ji as a superiority-degree matrix."""
    return SDMatrix(t.base, t.counts - t.counts.T)


def group_isd(t: TallyMatrix) -> SDMatrix:
    """Integral group degrees F_ij = V_i - V_j with V the row sums of Z.

    Unweighted sums, in natural units of net votes; V coincides with the
    Copeland score vector.
    """
    z = t.counts - t.counts.T
    v = z.sum(axis=1)
    return SDMatrix(t.base, np.subtract.outer(v, v))


def group_level(
    t: TallyMatrix, level: float
) -> tuple[PreferenceRelation, Core]:
    """Level decision G(l) = pairs with F_ij >= l, plus its core.

    At level 0 this is the Copeland weak order; at positive levels it thins
    to a strict partial order whose core is never empty.
    """
    if level < 0:
        raise InvariantViolation(f"level must be nonnegative, got {level!r}")
    f = group_isd(t)
    g = PreferenceRelation(t.base, f.phi >= level)
    return g, core(g)


def additivity_check(z: SDMatrix, eps: float = DEFAULT_EPS) -> bool:
    """True iff Z_ij = Z_is + Z_sj for every triple.

    A sufficient condition for majority voting to be transitive; when it
    holds, majority and the Copeland ranking agree.
    """
    return classify(z, eps).in_t
