"""Decision analysis under incomplete pairwise information.

When some pairs were never compared, each known degree stays as it is and
every unknown one is bracketed by the worst and best conceivable values
(-phi_star and +phi_star).  Weighted sums of those brackets give each
alternative a utility interval; the interval width is exactly twice the
missing weight around the alternative times the bound, so answering one more
comparison provably narrows the picture.  The same machinery covers expert
panels with abstentions.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation
from .relations import AlternativeSet, PreferenceRelation, _frozen
from .superiority import (
    DEFAULT_EPS,
    SDMatrix,
    WeightVector,
    default_weights,
)
from .group import VectorPreferenceRelation


@dataclass(frozen=True, eq=False)
class PartialSDMatrix:
    """Superiority degrees with holes: a presence mask plus a magnitude bound.

    Present entries are skew-symmetric and bounded by ``phi_star``; the
    diagonal always counts as present (and zero).  Absent cells are stored
    as 0 but carry no information -- the mask is the truth.  Supplying
    ``phi_star`` explicitly is recommended: the default (largest observed
    magnitude) can undersell how wrong the unknown comparisons might be.
    """

    base: AlternativeSet
    phi: np.ndarray
    known: np.ndarray
    phi_star: float

    def __post_init__(self) -> None:
        n = self.base.n
        p = np.asarray(self.phi, dtype=float)
        k = np.asarray(self.known, dtype=bool)
        if p.shape != (n, n) or k.shape != (n, n):
            raise InvariantViolation(f"matrix and mask must be {n}x{n}")
        if not np.array_equal(k, k.T):
            raise InvariantViolation("presence mask must be symmetric")
        if not np.all(np.diag(k)):
            raise InvariantViolation("diagonal entries are always present")
        if np.any(np.abs(np.diag(p)) > DEFAULT_EPS):
            raise InvariantViolation("diagonal must be zero")
        bad = (np.abs(p + p.T) > DEFAULT_EPS) & k
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise InvariantViolation(
                f"not skew-symmetric at ({self.base.ids[i]}, {self.base.ids[j]})"
            )
        if not np.isfinite(self.phi_star) or self.phi_star < 0:
            raise InvariantViolation("phi_star must be a finite nonnegative bound")
        if np.any(np.abs(p[k]) > self.phi_star + DEFAULT_EPS):
            raise InvariantViolation("present entries exceed phi_star")
        if not k.all() and self.phi_star <= 0:
            raise InvariantViolation(
                "a positive phi_star bound is required while pairs are missing"
            )
        p = np.where(k, p, 0.0)  # canonical: absent cells hold no stray values
        object.__setattr__(self, "phi", _frozen(p))
        object.__setattr__(self, "known", _frozen(k))
        object.__setattr__(self, "phi_star", float(self.phi_star))

    @classmethod
    def from_entries(
        cls,
        base: AlternativeSet,
        entries: Mapping[tuple[str, str], float],
        phi_star: float | None = None,
    ) -> PartialSDMatrix:
        """Build from the known directed entries; mirrors and diagonal are implied."""
        p = np.zeros((base.n, base.n))
        k = np.eye(base.n, dtype=bool)
        for (x, y), v in entries.items():
            i, j = base.index(x), base.index(y)
            p[i, j] = v
            p[j, i] = -v
            k[i, j] = k[j, i] = True
        if phi_star is None:
            phi_star = float(np.max(np.abs(p)))
        return cls(base, p, k, phi_star)

    @classmethod
    def complete(cls, m: SDMatrix, phi_star: float | None = None) -> PartialSDMatrix:
        """Wrap a fully known matrix (zero-width intervals downstream)."""
        star = m.phi_star if phi_star is None else phi_star
        return cls(m.base, m.phi.copy(), np.ones((m.base.n, m.base.n), dtype=bool), star)

    @property
    def is_complete(self) -> bool:
        return bool(self.known.all())

    def absent_pairs(self) -> list[tuple[str, str]]:
        """Unordered missing comparisons, one per pair, in base order."""
        ids = self.base.ids
        out = []
        for i in range(self.base.n):
            for j in range(i + 1, self.base.n):
                if not self.known[i, j]:
                    out.append((ids[i], ids[j]))
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PartialSDMatrix)
            and self.base == other.base
            and self.phi_star == other.phi_star
            and np.array_equal(self.known, other.known)
            and np.array_equal(self.phi, other.phi)
        )

    def __hash__(self) -> int:
        return hash(
            (self.base, self.phi_star, self.known.tobytes(), self.phi.tobytes())
        )


@dataclass(frozen=True, eq=False)
class IntervalEstimate:
    """Per-alternative utility intervals [lower, upper] plus the missing mass.

    The missing mass mu(x) is the weight of the alternatives x was never
    compared with; interval widths equal 2 * mu * phi_star, so complete
    information collapses everything to points.
    """

    base: AlternativeSet
    lower: np.ndarray
    upper: np.ndarray
    missing_mass: np.ndarray
    phi_star: float

    def __post_init__(self) -> None:
        n = self.base.n
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        mu = np.asarray(self.missing_mass, dtype=float)
        if lo.shape != (n,) or hi.shape != (n,) or mu.shape != (n,):
            raise InvariantViolation(f"interval arrays must have length {n}")
        if np.any(lo > hi + DEFAULT_EPS):
            raise InvariantViolation("lower bounds exceed upper bounds")
        if np.any(mu < -DEFAULT_EPS) or np.any(mu > 1 + DEFAULT_EPS):
            raise InvariantViolation("missing mass must lie in [0, 1]")
        tol = DEFAULT_EPS * max(1.0, abs(self.phi_star))
        if np.any(np.abs((hi - lo) - 2.0 * mu * self.phi_star) > tol):
            raise InvariantViolation("interval widths must equal 2 * mu * phi_star")
        object.__setattr__(self, "lower", _frozen(lo))
        object.__setattr__(self, "upper", _frozen(hi))
        object.__setattr__(self, "missing_mass", _frozen(mu))
        object.__setattr__(self, "phi_star", float(self.phi_star))

    def interval(self, alt: str) -> tuple[float, float]:
        i = self.base.index(alt)
        return float(self.lower[i]), float(self.upper[i])

    def as_dict(self) -> dict[str, tuple[float, float]]:
        return {a: self.interval(a) for a in self.base.ids}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntervalEstimate)
            and self.base == other.base
            and self.phi_star == other.phi_star
            and np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
            and np.array_equal(self.missing_mass, other.missing_mass)
        )


@dataclass(frozen=True, eq=False)
class AbstentionTally:
    """Per-pair counts: a for x, b against, p couldn't say; a + b + p = N."""

    base: AlternativeSet
    a: np.ndarray
    b: np.ndarray
    p: np.ndarray
    n_experts: int

    def __post_init__(self) -> None:
        n = self.base.n
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        p = np.asarray(self.p, dtype=float)
        for name, arr in (("a", a), ("b", b), ("p", p)):
            if arr.shape != (n, n):
                raise InvariantViolation(f"count matrix {name} must be {n}x{n}")
            if np.any(arr < 0):
                raise InvariantViolation(f"count matrix {name} must be nonnegative")
        if not np.array_equal(a, b.T):
            raise InvariantViolation("a(x, y) must equal b(y, x)")
        if not np.array_equal(p, p.T):
            raise InvariantViolation("abstention counts must be symmetric")
        total = a + b + p
        off = ~np.eye(n, dtype=bool)
        if np.any(np.abs(total[off] - self.n_experts) > DEFAULT_EPS):
            raise InvariantViolation("a + b + p must equal the expert count per pair")
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))
        object.__setattr__(self, "p", _frozen(p))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AbstentionTally)
            and self.base == other.base
            and self.n_experts == other.n_experts
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
            and np.array_equal(self.p, other.p)
        )


@dataclass(frozen=True)
class MissingInfo:
    """Three summary criteria for how much comparison data is absent."""

    mean: float
    max: float
    sum: float


def partition(p: PartialSDMatrix, x: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split the alternatives into those comparable with x and the rest; x is comparable with itself."""
    i = p.base.index(x)
    ids = p.base.ids
    row = p.known[i]
    x1 = tuple(ids[j] for j in range(p.base.n) if row[j])
    x2 = tuple(ids[j] for j in range(p.base.n) if not row[j])
    return x1, x2


def bounds(p: PartialSDMatrix, x: str, y: str) -> tuple[float, float]:
    """Upper and lower superiority degree of the pair: the entry when known, else +/- phi_star."""
    i, j = p.base.index(x), p.base.index(y)
    if p.known[i, j]:
        v = float(p.phi[i, j])
        return v, v
    return p.phi_star, -p.phi_star


def _bound_arrays(p: PartialSDMatrix) -> tuple[np.ndarray, np.ndarray]:
    u = np.where(p.known, p.phi, p.phi_star)
    d = np.where(p.known, p.phi, -p.phi_star)
    return u, d


def interval_utilities(
    p: PartialSDMatrix, w: WeightVector | None = None
) -> IntervalEstimate:
    """Utility interval per alternative from the bracketed degrees.

    lower(x) = sum_y lambda(y) d(x, y) and upper(x) = sum_y lambda(y) u(x, y);
    equivalently the known-information potential shifted down and up by
    mu(x) * phi_star, where mu(x) is the weight of the alternatives missing
    from x's comparisons.
    """
    w = default_weights(p.base, w)
    u, d = _bound_arrays(p)
    lower = d @ w.values
    upper = u @ w.values
    mu = (~p.known) @ w.values
    return IntervalEstimate(p.base, lower, upper, mu, p.phi_star)


def missing_info(est: IntervalEstimate, w: WeightVector | None = None) -> MissingInfo:
    """Summaries of the missing mass: weighted mean, worst case, affected weight.

    All three are zero exactly when information is complete.
    """
    w = default_weights(est.base, w)
    mu = est.missing_mass
    return MissingInfo(
        mean=float(w.values @ mu),
        max=float(mu.max()),
        sum=float(w.values[mu > 0].sum()),
    )


def integral_bounds(
    p: PartialSDMatrix, w: WeightVector | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Integral upper/lower degrees U(x, y) = sum_r lambda(r) [u(x, r) - d(y, r)] and its mirror.

    These collapse to interval-endpoint differences: U(x, y) = upper(x) - lower(y)
    and D(x, y) = lower(x) - upper(y).  The diagonal measures residual
    uncertainty (U(r, r) = 2 mu(r) phi_star) and vanishes under complete
    information.
    """
    w = default_weights(p.base, w)
    est = interval_utilities(p, w)
    u_mat = np.subtract.outer(est.upper, est.lower)
    d_mat = np.subtract.outer(est.lower, est.upper)
    return _frozen(u_mat), _frozen(d_mat)


def interval_order(est: IntervalEstimate) -> PreferenceRelation:
    """Strict interval dominance: x over y iff lower(x) > upper(y).

    Touching intervals stay incomparable, so the result is a strict partial
    order (irreflexive and transitive) and its core is never empty.
    """
    member = est.lower[:, None] > est.upper[None, :]
    return PreferenceRelation(est.base, member)


def refine(p: PartialSDMatrix, x: str, y: str, value: float) -> PartialSDMatrix:
    """Record one previously missing comparison; every interval weakly narrows.

    Re-answering an already known pair is rejected (contradiction handling is
    out of scope), as are values beyond the phi_star bound.
    """
    i, j = p.base.index(x), p.base.index(y)
    if i == j:
        raise InvariantViolation("cannot refine an alternative against itself")
    if p.known[i, j]:
        raise InvariantViolation(f"pair ({x}, {y}) is already known")
    if abs(value) > p.phi_star + DEFAULT_EPS:
        raise InvariantViolation(
            f"value {value!r} exceeds the bound {p.phi_star!r}"
        )
    phi = p.phi.copy()
    known = p.known.copy()
    phi[i, j] = value
    phi[j, i] = -value
    known[i, j] = known[j, i] = True
    return PartialSDMatrix(p.base, phi, known, p.phi_star)


def abstention_tally(vpr: VectorPreferenceRelation) -> AbstentionTally:
    """Count per pair who backed x, who backed y, who couldn't compare them.

    Ties contribute half a point to each side, keeping a + b + p = N.  The
    diagonal follows the trivial-tie convention (a = b = N/2, p = 0) whether
    or not the expert relations are reflexive; nothing downstream reads it.
    """
    n = vpr.base.n
    a = np.zeros((n, n))
    b = np.zeros((n, n))
    p = np.zeros((n, n))
    for r in vpr.experts:
        fwd = r.member
        bwd = r.member.T
        both = fwd & bwd
        a += np.where(both, 0.5, np.where(fwd, 1.0, 0.0))
        b += np.where(both, 0.5, np.where(bwd, 1.0, 0.0))
        p += (~fwd & ~bwd).astype(float)
    half = vpr.n_experts / 2.0
    np.fill_diagonal(a, half)
    np.fill_diagonal(b, half)
    np.fill_diagonal(p, 0.0)
    return AbstentionTally(vpr.base, a, b, p, vpr.n_experts)


def group_intervals(
    t: AbstentionTally, w: WeightVector | None = None
) -> IntervalEstimate:
    """Interval utilities for a panel with abstentions.

    Net margins phi = a - b are bracketed by d = phi - p and u = phi + p
    (an abstaining expert could have gone either way), and the margins are
    always the midpoint (d + u) / 2.  The bound is the panel size: a pair
    nobody compared spans the full [-N, N].
    """
    w = default_weights(t.base, w)
    phi = t.a - t.b
    lower = (phi - t.p) @ w.values
    upper = (phi + t.p) @ w.values
    n = float(t.n_experts)
    mu = (t.p @ w.values) / n
    return IntervalEstimate(t.base, lower, upper, mu, n)


def group_margins(t: AbstentionTally) -> SDMatrix:
    """The panel's net margins a - b as a superiority-degree matrix."""
    return SDMatrix(t.base, t.a - t.b)
