"""Algebra of binary preference relations over a finite set of alternatives.

A relation is stored as a dense boolean membership matrix indexed by the
(fixed) order of an :class:`AlternativeSet`.  Every relation splits into an
identity part (pairs present in both directions) and a strict part (pairs
present one way only); the core collects the alternatives nobody strictly
dominates.  All values are immutable after construction and all operations
are pure.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AlternativeSet:
    """Ordered collection of unique alternative ids; order fixes matrix indexing."""

    ids: tuple[str, ...]

    def __post_init__(self) -> None:
        ids = tuple(str(i) for i in self.ids)
        if not ids:
            raise InvariantViolation("alternative set must not be empty")
        if len(set(ids)) != len(ids):
            raise InvariantViolation("alternative ids must be unique")
        object.__setattr__(self, "ids", ids)

    @property
    def n(self) -> int:
        return len(self.ids)

    def index(self, alt: str) -> int:
        try:
            return self.ids.index(alt)
        except ValueError:
            raise InvariantViolation(f"unknown alternative {alt!r}") from None

    def __contains__(self, alt: object) -> bool:
        return alt in self.ids

    def __iter__(self):
        return iter(self.ids)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlternativeSet) and self.ids == other.ids

    def __hash__(self) -> int:
        return hash(self.ids)


def check_same_base(a, b) -> None:
    """Raise unless two carriers share one alternative set."""
    if a.base != b.base:
        raise InvariantViolation("alternative sets differ")


@dataclass(frozen=True, eq=False)
class PreferenceRelation:
    """Binary relation R over ordered pairs; ``member[i, j]`` means (x_i, x_j) in R."""

    base: AlternativeSet
    member: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.member, dtype=bool)
        n = self.base.n
        if m.shape != (n, n):
            raise InvariantViolation(
                f"membership matrix must be {n}x{n}, got {m.shape}"
            )
        object.__setattr__(self, "member", _frozen(m))

    @classmethod
    def from_pairs(
        cls, base: AlternativeSet, pairs: Iterable[Sequence[str]]
    ) -> PreferenceRelation:
        m = np.zeros((base.n, base.n), dtype=bool)
        for x, y in pairs:
            m[base.index(x), base.index(y)] = True
        return cls(base, m)

    @classmethod
    def empty(cls, base: AlternativeSet) -> PreferenceRelation:
        return cls(base, np.zeros((base.n, base.n), dtype=bool))

    @classmethod
    def full(cls, base: AlternativeSet) -> PreferenceRelation:
        return cls(base, np.ones((base.n, base.n), dtype=bool))

    def pairs(self) -> list[tuple[str, str]]:
        """All member pairs as id tuples, row-major (deterministic)."""
        ids = self.base.ids
        rows, cols = np.nonzero(self.member)
        return [(ids[i], ids[j]) for i, j in zip(rows.tolist(), cols.tolist())]

    def __contains__(self, pair: Sequence[str]) -> bool:
        x, y = pair
        return bool(self.member[self.base.index(x), self.base.index(y)])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PreferenceRelation)
            and self.base == other.base
            and np.array_equal(self.member, other.member)
        )

    def __hash__(self) -> int:
        return hash((self.base, self.member.tobytes()))


@dataclass(frozen=True, eq=False)
class Core:
    """The undominated alternatives of a relation (its Pareto set); may be empty."""

    base: AlternativeSet
    members: tuple[str, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        for alt in members:
            self.base.index(alt)
        object.__setattr__(self, "members", members)

    @property
    def as_set(self) -> frozenset[str]:
        return frozenset(self.members)

    def __contains__(self, alt: object) -> bool:
        return alt in self.members

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Core)
            and self.base == other.base
            and self.as_set == other.as_set
        )

    def __hash__(self) -> int:
        return hash((self.base, self.as_set))


def inverse(r: PreferenceRelation) -> PreferenceRelation:
    """Swap every pair: (x, y) becomes (y, x)."""
    return PreferenceRelation(r.base, r.member.T.copy())


def decompose(r: PreferenceRelation) -> tuple[PreferenceRelation, PreferenceRelation]:
    """Split R into its identity part (both directions) and strict part (one way).

    The two parts partition R: their union is R, their intersection empty.
    """
    both = r.member & r.member.T
    return (
        PreferenceRelation(r.base, both),
        PreferenceRelation(r.base, r.member & ~both),
    )


def identity_part(r: PreferenceRelation) -> PreferenceRelation:
    return decompose(r)[0]


def strict_part(r: PreferenceRelation) -> PreferenceRelation:
    return decompose(r)[1]


def is_connected(r: PreferenceRelation) -> bool:
    """True iff every pair of distinct alternatives is comparable some way."""
    either = r.member | r.member.T
    return bool(np.all(either | np.eye(r.base.n, dtype=bool)))


def is_transitive(r: PreferenceRelation) -> bool:
    """True iff (x,y) and (y,z) in R always imply (x,z) in R."""
    m = r.member
    reach2 = (m.astype(np.uint8) @ m.astype(np.uint8)) > 0
    return not bool(np.any(reach2 & ~m))


def core(r: PreferenceRelation) -> Core:
    """Alternatives with no strict dominator.

    The core of the empty relation is all of X: with no strict preference
    nothing is dominated.  A transitive relation always has a nonempty core.
    """
    strict = strict_part(r)
    undominated = ~strict.member.any(axis=0)
    ids = r.base.ids
    return Core(r.base, tuple(ids[i] for i in np.nonzero(undominated)[0]))


def is_coordinated(r1: PreferenceRelation, r2: PreferenceRelation) -> bool:
    """True iff R1's strict part and identity part are contained in R2's.

    When this holds, core(R2) is contained in core(R1).
    """
    check_same_base(r1, r2)
    id1, s1 = decompose(r1)
    id2, s2 = decompose(r2)
    strict_ok = bool(np.all(~s1.member | s2.member))
    ident_ok = bool(np.all(~id1.member | id2.member))
    return strict_ok and ident_ok


def intersect(r1: PreferenceRelation, r2: PreferenceRelation) -> PreferenceRelation:
    check_same_base(r1, r2)
    return PreferenceRelation(r1.base, r1.member & r2.member)


def union(r1: PreferenceRelation, r2: PreferenceRelation) -> PreferenceRelation:
    check_same_base(r1, r2)
    return PreferenceRelation(r1.base, r1.member | r2.member)
