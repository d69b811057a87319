"""Superiority-degree matrices and the utility calculus built on them.

A superiority degree is a skew-symmetric scalar phi(x, y) saying how much x
outranks y, on a differences scale.  The integral superiority degree compares
x and y through every reference point z and is additively transitive no
matter what the input was; its potential orders the alternatives.  Class
membership:

* H  -- skew-symmetric: phi(x, y) = -phi(y, x),
* T  -- additively transitive: phi(x, z) + phi(z, y) = phi(x, y),
* S  -- max-transitive: phi(x, y) >= max(phi(x, z), phi(z, y)) over every
  triple of distinct alternatives (quantifier reading documented on
  :func:`classify`).
"""

from __future__ import annotations

import warnings
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation
from .relations import AlternativeSet, PreferenceRelation, check_same_base, decompose, _frozen

#: Module-wide tolerance for class checks on exact inputs.
DEFAULT_EPS = 1e-9


class NonTransitiveAggregateWarning(UserWarning):
    """The aggregated criterion matrix is not additively transitive."""


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Nonnegative significance coefficients over the alternatives, summing to 1."""

    base: AlternativeSet
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.base.n,):
            raise InvariantViolation(
                f"weight vector must have length {self.base.n}, got {v.shape}"
            )
        if np.any(v < 0):
            raise InvariantViolation("weights must be nonnegative")
        total = float(v.sum())
        if abs(total - 1.0) > DEFAULT_EPS:
            raise InvariantViolation(f"weights must sum to 1, got {total!r}")
        object.__setattr__(self, "values", _frozen(v))

    @classmethod
    def uniform(cls, base: AlternativeSet) -> WeightVector:
        return cls(base, np.full(base.n, 1.0 / base.n))

    @classmethod
    def from_mapping(cls, base: AlternativeSet, weights: Mapping[str, float]) -> WeightVector:
        unknown = set(weights) - set(base.ids)
        if unknown:
            raise InvariantViolation(f"weights name unknown alternatives: {sorted(unknown)}")
        missing = set(base.ids) - set(weights)
        if missing:
            raise InvariantViolation(f"weights missing for alternatives: {sorted(missing)}")
        return cls(base, np.array([weights[a] for a in base.ids], dtype=float))

    def weight(self, alt: str) -> float:
        return float(self.values[self.base.index(alt)])

    def as_dict(self) -> dict[str, float]:
        return {a: float(v) for a, v in zip(self.base.ids, self.values)}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightVector)
            and self.base == other.base
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.base, self.values.tobytes()))


@dataclass(frozen=True, eq=False)
class SDMatrix:
    """Square skew-symmetric matrix of superiority degrees with zero diagonal."""

    base: AlternativeSet
    phi: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.phi, dtype=float)
        n = self.base.n
        if p.shape != (n, n):
            raise InvariantViolation(f"matrix must be {n}x{n}, got {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvariantViolation("matrix entries must be finite")
        bad = np.abs(p + p.T) > DEFAULT_EPS
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise InvariantViolation(
                f"not skew-symmetric at ({self.base.ids[i]}, {self.base.ids[j]}): "
                f"{float(p[i, j])!r} vs {float(p[j, i])!r}"
            )
        if np.any(np.abs(np.diag(p)) > DEFAULT_EPS):
            raise InvariantViolation("diagonal must be zero")
        object.__setattr__(self, "phi", _frozen(p))

    @property
    def phi_star(self) -> float:
        """Largest absolute superiority degree in the matrix."""
        return float(np.max(np.abs(self.phi)))

    @classmethod
    def from_entries(
        cls, base: AlternativeSet, entries: Mapping[tuple[str, str], float]
    ) -> SDMatrix:
        """Build from one direction per pair; the mirror entries are implied."""
        p = np.zeros((base.n, base.n))
        for (x, y), v in entries.items():
            i, j = base.index(x), base.index(y)
            p[i, j] = v
            p[j, i] = -v
        return cls(base, p)

    @classmethod
    def from_potential(cls, base: AlternativeSet, values: Sequence[float]) -> SDMatrix:
        """Difference matrix phi(x, y) = f(x) - f(y); always additively transitive."""
        f = np.asarray(values, dtype=float)
        return cls(base, np.subtract.outer(f, f))

    def entry(self, x: str, y: str) -> float:
        return float(self.phi[self.base.index(x), self.base.index(y)])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SDMatrix)
            and self.base == other.base
            and np.array_equal(self.phi, other.phi)
        )

    def __hash__(self) -> int:
        return hash((self.base, self.phi.tobytes()))


@dataclass(frozen=True, eq=False)
class UtilityVector:
    """Scalar scores over the alternatives, meaningful on a differences scale only.

    Rankings and score differences are invariant under the allowed (linear)
    transformations; absolute values are not.
    """

    scale = "differences"

    base: AlternativeSet
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.base.n,):
            raise InvariantViolation(
                f"utility vector must have length {self.base.n}, got {v.shape}"
            )
        object.__setattr__(self, "values", _frozen(v))

    def value(self, alt: str) -> float:
        return float(self.values[self.base.index(alt)])

    def as_dict(self) -> dict[str, float]:
        return {a: float(v) for a, v in zip(self.base.ids, self.values)}

    def ranking(self, eps: float = DEFAULT_EPS) -> list[list[str]]:
        """Descending tie groups; within a group, ids sort lexicographically."""
        order = sorted(zip(self.base.ids, self.values), key=lambda t: (-t[1], t[0]))
        groups: list[list[str]] = []
        head = None
        for alt, v in order:
            if head is None or head - v > eps:
                groups.append([alt])
                head = v
            else:
                groups[-1].append(alt)
        for g in groups:
            g.sort()
        return groups

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UtilityVector)
            and self.base == other.base
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.base, self.values.tobytes()))


@dataclass(frozen=True, eq=False)
class CriterionFamily:
    """A superiority-degree matrix per criterion plus criterion weights."""

    base: AlternativeSet
    criteria: tuple[SDMatrix, ...]
    weights: tuple[float, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        criteria = tuple(self.criteria)
        weights = tuple(float(w) for w in self.weights)
        if not criteria:
            raise InvariantViolation("criterion family must not be empty")
        if len(weights) != len(criteria):
            raise InvariantViolation("one weight per criterion required")
        for m in criteria:
            if m.base != self.base:
                raise InvariantViolation("criteria must share the alternative set")
        if any(w < 0 for w in weights):
            raise InvariantViolation("criterion weights must be nonnegative")
        if abs(sum(weights) - 1.0) > DEFAULT_EPS:
            raise InvariantViolation("criterion weights must sum to 1")
        object.__setattr__(self, "criteria", criteria)
        object.__setattr__(self, "weights", weights)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(criteria):
                raise InvariantViolation("one label per criterion required")
            object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return len(self.criteria)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CriterionFamily)
            and self.base == other.base
            and self.criteria == other.criteria
            and self.weights == other.weights
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.base, self.criteria, self.weights, self.labels))


@dataclass(frozen=True)
class ClassFlags:
    in_h: bool
    in_t: bool
    in_s: bool


def classify(m: SDMatrix, eps: float = DEFAULT_EPS) -> ClassFlags:
    """Class membership of the matrix: skew-symmetric / additively transitive / max-transitive.

    The max-transitivity check quantifies over ordered pairs of distinct
    alternatives and every third alternative distinct from both, and accepts
    equality within ``eps`` (a strict reading would reject matrices whose
    path and direct degrees coincide, purely through rounding).
    """
    p = m.phi
    in_h = bool(np.max(np.abs(p + p.T)) <= eps) if p.size else True
    # D[x, z, y] = phi(x, z) + phi(z, y) - phi(x, y)
    d = p[:, :, None] + p[None, :, :] - p[:, None, :]
    in_t = bool(np.max(np.abs(d)) <= eps)
    n = m.base.n
    if n < 3:
        in_s = True
    else:
        idx = np.arange(n)
        distinct = (
            (idx[:, None, None] != idx[None, :, None])
            & (idx[:, None, None] != idx[None, None, :])
            & (idx[None, :, None] != idx[None, None, :])
        )
        path_max = np.maximum(p[:, :, None], p[None, :, :])
        viol = (p[:, None, :] + eps < path_max) & distinct
        in_s = not bool(viol.any())
    return ClassFlags(in_h=in_h, in_t=in_t, in_s=in_s)


def default_weights(base: AlternativeSet, w: WeightVector | None) -> WeightVector:
    """Resolve an optional weight vector to uniform 1/n weights."""
    if w is None:
        return WeightVector.uniform(base)
    if w.base != base:
        raise InvariantViolation("alternative sets differ")
    return w


def isd(m: SDMatrix, w: WeightVector | None = None) -> SDMatrix:
    """Integral superiority degree F(x, y) = sum_z lambda(z) [phi(x, z) - phi(y, z)].

    F compares x and y through every reference point z.  It is always
    skew-symmetric and additively transitive, whatever the input; when the
    input already is additively transitive, F reproduces it entrywise.
    """
    w = default_weights(m.base, w)
    f = m.phi @ w.values
    return SDMatrix(m.base, np.subtract.outer(f, f))


def potential(m: SDMatrix, w: WeightVector | None = None) -> UtilityVector:
    """Potential f(x) = sum_y lambda(y) phi(x, y).

    For an additively transitive matrix this represents it exactly as
    phi(x, y) = f(x) - f(y); otherwise the values are still well defined but
    that representation is not implied.
    """
    w = default_weights(m.base, w)
    return UtilityVector(m.base, m.phi @ w.values)


def utility(m: SDMatrix, w: WeightVector | None = None) -> UtilityVector:
    """Utility q = potential of the integral superiority degree.

    The induced pairwise differences q(x) - q(y) reproduce isd(m, w) for any
    input; when the matrix is already additively transitive, q coincides with
    its plain potential.
    """
    w = default_weights(m.base, w)
    return potential(isd(m, w), w)


def sd_coordinated_with(
    m: SDMatrix, r: PreferenceRelation, eps: float = DEFAULT_EPS
) -> bool:
    """Check agreement of the degrees with a relation, one direction only.

    Strict preference must show a positive degree (> eps) and identity pairs
    a zero degree (|phi| <= eps); pairs outside the relation are
    unconstrained, since the relation may be disconnected while the degrees
    never are.
    """
    check_same_base(m, r)
    ident, strict = decompose(r)
    if np.any(strict.member & ~(m.phi > eps)):
        return False
    if np.any(ident.member & ~(np.abs(m.phi) <= eps)):
        return False
    return True


def aggregate(fam: CriterionFamily) -> SDMatrix:
    """Weighted sum of the criterion matrices; skew-symmetry is preserved.

    If every criterion is additively transitive, so is the aggregate.
    """
    stack = np.stack([m.phi for m in fam.criteria])
    p = np.tensordot(np.asarray(fam.weights), stack, axes=1)
    return SDMatrix(fam.base, p)


def convolution(
    fam: CriterionFamily, w: WeightVector | None = None
) -> tuple[UtilityVector, tuple[UtilityVector, ...]]:
    """Linear multicriteria convolution L plus the per-criterion potentials K_j.

    L(x) = sum_j lambda_j K_j(x) with K_j the potential of criterion j; this
    equals the potential of the aggregated matrix.  A warning is emitted when
    the aggregate is not additively transitive, in which case L still ranks
    the alternatives but is not a faithful difference representation.
    """
    w = default_weights(fam.base, w)
    k = tuple(potential(m, w) for m in fam.criteria)
    l_values = np.zeros(fam.base.n)
    for lam_j, k_j in zip(fam.weights, k):
        l_values = l_values + lam_j * k_j.values
    if not classify(aggregate(fam)).in_t:
        warnings.warn(
            "aggregated criteria are not additively transitive; the "
            "convolution ranks but is not a difference representation",
            NonTransitiveAggregateWarning,
            stacklevel=2,
        )
    return UtilityVector(fam.base, l_values), k
