"""Analysis sessions: validated data plus an append-only event history.

A session wraps one dataset (degree matrix, partial matrix, expert panel,
abstention tally, or criterion family) together with weights, refinements
and bookmarks.  The current state is always the replay of the history over
the initial data, so persisting a session and reloading it reproduces every
report byte for byte.  Reports quantize reals to 12 significant digits.
"""

from __future__ import annotations

import uuid
import warnings
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import formats, levels
from .errors import ParseError, WrongDataKind
from .formats import SCHEMA_VERSION, LoadedData, dumps_json, fmt_real
from .group import (
    VectorPreferenceRelation,
    additivity_check,
    copeland,
    group_isd,
    group_level,
    group_sd,
    majority,
    tally,
)
from .interval import (
    AbstentionTally,
    PartialSDMatrix,
    group_intervals,
    group_margins,
    interval_order,
    interval_utilities,
    missing_info,
    refine,
)
from .relations import AlternativeSet, core as relations_core, is_transitive
from .superiority import (
    CriterionFamily,
    NonTransitiveAggregateWarning,
    SDMatrix,
    WeightVector,
    aggregate,
    classify,
    convolution,
    utility,
)

SESSION_KINDS = ("sd", "partial", "panel", "abstention", "criteria")


@dataclass(frozen=True, eq=False)
class Session:
    """One dataset under analysis; immutable, mutations return a new value."""

    id: str
    kind: str
    weights: WeightVector
    initial: Any
    history: tuple[dict, ...]
    data: Any
    bookmarks: dict[str, float]

    @property
    def base(self) -> AlternativeSet:
        return self.weights.base


def _replay(kind: str, initial: Any, history: tuple[dict, ...]) -> tuple[Any, dict[str, float]]:
    data = initial
    bookmarks: dict[str, float] = {}
    for event in history:
        op = event.get("op")
        if op == "refine":
            if kind != "partial":
                raise WrongDataKind("refinements only apply to partial matrices")
            data = refine(data, event["x"], event["y"], float(event["value"]))
        elif op == "bookmark":
            bookmarks[str(event["name"])] = fmt_real(float(event["level"]))
        else:
            raise ParseError(f"unknown history event {op!r}")
    return data, bookmarks


def _build(
    kind: str,
    initial: Any,
    weights: WeightVector,
    history: tuple[dict, ...] = (),
    session_id: str | None = None,
) -> Session:
    data, bookmarks = _replay(kind, initial, history)
    return Session(
        id=session_id or uuid.uuid4().hex,
        kind=kind,
        weights=weights,
        initial=initial,
        history=history,
        data=data,
        bookmarks=bookmarks,
    )


def _qarr(a: np.ndarray) -> np.ndarray:
    return np.array([[fmt_real(v) for v in row] for row in np.asarray(a, dtype=float)])


def _canonical_data(kind: str, value: Any) -> Any:
    """Snap every stored real onto the 12-significant-digit serialization grid.

    Sessions persist reals as 12-digit decimals, so quantizing at ingestion
    makes the in-memory state identical to its own save/load round trip --
    that is what lets replays reproduce reports byte for byte.
    """
    if kind == "sd":
        return SDMatrix(value.base, _qarr(value.phi))
    if kind == "partial":
        return PartialSDMatrix(
            value.base, _qarr(value.phi), value.known.copy(), fmt_real(value.phi_star)
        )
    if kind == "abstention":
        return AbstentionTally(
            value.base, _qarr(value.a), _qarr(value.b), _qarr(value.p), value.n_experts
        )
    if kind == "criteria":
        return CriterionFamily(
            value.base,
            tuple(SDMatrix(m.base, _qarr(m.phi)) for m in value.criteria),
            tuple(fmt_real(w) for w in value.weights),
            labels=value.labels,
        )
    return value  # expert panels hold boolean matrices only


def new_session(
    loaded: LoadedData,
    weights: WeightVector | None = None,
    session_id: str | None = None,
) -> Session:
    """Open a session over freshly loaded data (uniform weights by default)."""
    if loaded.kind == "session":
        return session_from_document(loaded.value)
    if loaded.kind not in SESSION_KINDS:
        raise WrongDataKind(
            f"{loaded.kind} data carries no degrees to analyze; supply a degree "
            "matrix, ballots, or criteria"
        )
    base = loaded.value.base
    w = weights if weights is not None else WeightVector.uniform(base)
    if w.base != base:
        raise WrongDataKind("weights are defined over different alternatives")
    w = WeightVector(base, np.array([fmt_real(v) for v in w.values]))
    return _build(loaded.kind, _canonical_data(loaded.kind, loaded.value), w, (), session_id)


def load(
    path: str,
    fmt: str | None = None,
    weights: WeightVector | None = None,
    phi_star: float | None = None,
) -> Session:
    """Load any supported file into a session, validating on the way in."""
    loaded = formats.load_file(path, fmt, phi_star=phi_star)
    return new_session(loaded, weights)


def apply_refinement(s: Session, x: str, y: str, value: float) -> Session:
    """Answer one missing comparison; appends to the history."""
    if s.kind != "partial":
        raise WrongDataKind("refinements only apply to partial matrices")
    event = {"op": "refine", "x": x, "y": y, "value": fmt_real(value)}
    return _build(s.kind, s.initial, s.weights, s.history + (event,), s.id)


def add_bookmark(s: Session, name: str, level: float) -> Session:
    """Remember a level of interest under a name; appends to the history."""
    if level < 0:
        raise WrongDataKind(f"bookmark level must be nonnegative, got {level!r}")
    event = {"op": "bookmark", "name": str(name), "level": fmt_real(level)}
    return _build(s.kind, s.initial, s.weights, s.history + (event,), s.id)


def suggest_next_pair(s: Session) -> tuple[str, str] | None:
    """The most valuable missing comparison: the absent pair with the largest
    weight product, ties broken lexicographically.  None once complete."""
    if s.kind != "partial":
        raise WrongDataKind("suggestions only apply to partial matrices")
    p: PartialSDMatrix = s.data
    best: tuple[str, str] | None = None
    best_score = -1.0
    for x, y in sorted(tuple(sorted(pair)) for pair in p.absent_pairs()):
        score = s.weights.weight(x) * s.weights.weight(y)
        if score > best_score:
            best, best_score = (x, y), score
    return best


# -- reports -------------------------------------------------------------------


def _q(value: Any) -> Any:
    """Plain JSON types with floats at 12 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return fmt_real(float(value))
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {k: _q(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_q(v) for v in value]
    return value


def _rows(matrix: np.ndarray) -> list[list[float]]:
    return [[float(v) for v in row] for row in matrix]


def _ladder_payload(chain: levels.LevelChain) -> list[dict]:
    return [
        {
            "level": rung.level,
            "core": list(rung.core.members),
            "strict_pairs": [[x, y] for x, y in rung.relation.pairs()],
        }
        for rung in chain.rungs
    ]


def _interval_block(est, w) -> dict:
    mi = missing_info(est, w)
    order = interval_order(est)
    return {
        "intervals": {a: list(est.interval(a)) for a in est.base.ids},
        "missing_mass": {a: float(m) for a, m in zip(est.base.ids, est.missing_mass)},
        "missing_info": {"mean": mi.mean, "max": mi.max, "sum": mi.sum},
        "interval_order": {
            "pairs": [[x, y] for x, y in order.pairs()],
            "core": list(relations_core(order).members),
        },
    }


def _report_sd(s: Session) -> dict:
    m: SDMatrix = s.data
    flags = classify(m)
    q = utility(m, s.weights)
    report = {
        "classes": {
            "skew_symmetric": flags.in_h,
            "additively_transitive": flags.in_t,
            "max_transitive": flags.in_s,
        },
        "phi_star": m.phi_star,
        "utilities": q.as_dict(),
        "ranking": q.ranking(),
        "ladder": _ladder_payload(levels.ladder(m, s.weights)),
    }
    warnings_out = []
    if not flags.in_t:
        warnings_out.append(
            "degrees are not additively transitive; utilities use the "
            "integral-degree repair"
        )
    report["warnings"] = warnings_out
    return report


def _report_partial(s: Session) -> dict:
    p: PartialSDMatrix = s.data
    est = interval_utilities(p, s.weights)
    report = {
        "phi_star": p.phi_star,
        "complete": p.is_complete,
        **_interval_block(est, s.weights),
        "suggestion": list(suggest_next_pair(s) or []) or None,
    }
    return report


def _report_panel(s: Session) -> dict:
    vpr: VectorPreferenceRelation = s.data
    t = tally(vpr)
    maj = majority(t)
    maj_transitive = is_transitive(maj)
    scores, _gk = copeland(t)
    z = group_sd(t)
    f = group_isd(t)
    _g0, core0 = group_level(t, 0.0)
    report = {
        "n_experts": t.n_experts,
        "tally": _rows(t.counts),
        "majority": {
            "pairs": [[x, y] for x, y in maj.pairs()],
            "core": list(relations_core(maj).members),
            "transitive": maj_transitive,
        },
        "copeland": {"scores": scores.as_dict(), "ranking": scores.ranking()},
        "group_sd": _rows(z.phi),
        "additive": additivity_check(z),
        "level0": {"core": list(core0.members)},
        "ladder": _ladder_payload(levels.ladder(f, s.weights)),
    }
    warnings_out = []
    if not maj_transitive:
        warnings_out.append("majority voting cycles on this panel; its core may be empty")
    report["warnings"] = warnings_out
    return report


def _report_abstention(s: Session) -> dict:
    t: AbstentionTally = s.data
    est = group_intervals(t, s.weights)
    return {
        "n_experts": t.n_experts,
        "phi_star": est.phi_star,
        "counts": {"a": _rows(t.a), "b": _rows(t.b), "p": _rows(t.p)},
        "margins": _rows(group_margins(t).phi),
        **_interval_block(est, s.weights),
    }


def _report_criteria(s: Session) -> dict:
    fam: CriterionFamily = s.data
    labels = fam.labels or tuple(f"criterion{k + 1}" for k in range(fam.m))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonTransitiveAggregateWarning)
        l_vec, k_vecs = convolution(fam, s.weights)
    agg = aggregate(fam)
    flags = classify(agg)
    report = {
        "criterion_weights": {labels[k]: fam.weights[k] for k in range(fam.m)},
        "per_criterion": {labels[k]: k_vecs[k].as_dict() for k in range(fam.m)},
        "utilities": l_vec.as_dict(),
        "ranking": l_vec.ranking(),
        "aggregate_classes": {
            "skew_symmetric": flags.in_h,
            "additively_transitive": flags.in_t,
            "max_transitive": flags.in_s,
        },
        "ladder": _ladder_payload(levels.ladder(agg, s.weights)),
    }
    report["warnings"] = (
        []
        if flags.in_t
        else ["aggregated criteria are not additively transitive"]
    )
    return report


_REPORTERS = {
    "sd": _report_sd,
    "partial": _report_partial,
    "panel": _report_panel,
    "abstention": _report_abstention,
    "criteria": _report_criteria,
}


def analyze(s: Session) -> dict:
    """Full deterministic report for the session's data kind."""
    body = _REPORTERS[s.kind](s)
    report = {
        "schema_version": SCHEMA_VERSION,
        "session": s.id,
        "kind": s.kind,
        "alternatives": list(s.base.ids),
        "weights": s.weights.as_dict(),
        **body,
        "bookmarks": dict(sorted(s.bookmarks.items())),
    }
    return _q(report)


def report_json(s: Session) -> str:
    return dumps_json(analyze(s))


def ladder_report(s: Session, level: float | None = None) -> dict:
    """Ladder rungs for the session; a single rung when a level is given.

    Rungs use the strictly-above threshold everywhere (see
    :mod:`sdkit.levels`), so sliding past the top degree always surfaces the
    whole set.
    """
    m = _degree_matrix(s)
    if level is None:
        rungs = _ladder_payload(levels.ladder(m, s.weights))
        return _q({"schema_version": SCHEMA_VERSION, "rungs": rungs})
    if level < 0:
        raise WrongDataKind(f"level must be nonnegative, got {level!r}")
    rel = levels.strict_level_relation(m, level)
    return _q(
        {
            "schema_version": SCHEMA_VERSION,
            "level": float(level),
            "core": list(relations_core(rel).members),
            "strict_pairs": [[x, y] for x, y in rel.pairs()],
        }
    )


def _degree_matrix(s: Session) -> SDMatrix:
    """The matrix a session's level analysis runs on."""
    if s.kind == "sd":
        return s.data
    if s.kind == "panel":
        return group_isd(tally(s.data))
    if s.kind == "criteria":
        return aggregate(s.data)
    if s.kind == "abstention":
        return group_margins(s.data)
    raise WrongDataKind(f"{s.kind} sessions have no degree matrix for level analysis")


# -- persistence ---------------------------------------------------------------


def _data_payload(s: Session) -> dict:
    if s.kind == "sd":
        return {"kind": "sd", "matrix": [[fmt_real(v) for v in row] for row in s.initial.phi]}
    if s.kind == "partial":
        p: PartialSDMatrix = s.initial
        matrix = [
            [fmt_real(p.phi[i, j]) if p.known[i, j] else None for j in range(p.base.n)]
            for i in range(p.base.n)
        ]
        return {"kind": "partial", "matrix": matrix, "phi_star": fmt_real(p.phi_star)}
    if s.kind == "panel":
        return {"kind": "panel", "ballots": formats.dump_ballots(s.initial)}
    if s.kind == "abstention":
        t: AbstentionTally = s.initial
        return {
            "kind": "abstention",
            "a": [[fmt_real(v) for v in row] for row in t.a],
            "b": [[fmt_real(v) for v in row] for row in t.b],
            "p": [[fmt_real(v) for v in row] for row in t.p],
            "n_experts": t.n_experts,
        }
    if s.kind == "criteria":
        return {"kind": "criteria", "criteria": formats.dump_criteria(s.initial)}
    raise WrongDataKind(f"cannot persist session of kind {s.kind!r}")


def _data_from_payload(base: AlternativeSet, payload: dict) -> tuple[str, Any]:
    kind = payload.get("kind")
    if kind == "sd":
        return "sd", SDMatrix(base, np.array(payload["matrix"], dtype=float))
    if kind == "partial":
        raw = payload["matrix"]
        n = base.n
        phi = np.zeros((n, n))
        known = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(n):
                if raw[i][j] is not None:
                    phi[i, j] = float(raw[i][j])
                    known[i, j] = True
        return "partial", PartialSDMatrix(base, phi, known, float(payload["phi_star"]))
    if kind == "panel":
        vpr = formats.parse_ballots(payload["ballots"])
        if vpr.base != base:
            raise ParseError("session data alternatives disagree with the session")
        return "panel", vpr
    if kind == "abstention":
        return "abstention", AbstentionTally(
            base,
            np.array(payload["a"], dtype=float),
            np.array(payload["b"], dtype=float),
            np.array(payload["p"], dtype=float),
            int(payload["n_experts"]),
        )
    if kind == "criteria":
        fam = formats.parse_criteria(payload["criteria"])
        if fam.base != base:
            raise ParseError("session data alternatives disagree with the session")
        return "criteria", fam
    raise ParseError(f"unknown session data kind {kind!r}")


def session_to_document(s: Session) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "id": s.id,
        "alternatives": list(s.base.ids),
        "weights": formats.dump_weights(s.weights),
        "data": _data_payload(s),
        "history": [_q(dict(e)) for e in s.history],
    }


def session_json(s: Session) -> str:
    return dumps_json(session_to_document(s))


def session_from_document(doc: Any) -> Session:
    if not isinstance(doc, dict):
        raise ParseError("session document must be an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema version {version!r}")
    base = formats._base_from(doc, "session")
    weights = formats.parse_weights(doc.get("weights", {}), base)
    payload = doc.get("data")
    if not isinstance(payload, dict):
        raise ParseError("session: missing 'data' object")
    kind, initial = _data_from_payload(base, payload)
    history_raw = doc.get("history", [])
    if not isinstance(history_raw, list):
        raise ParseError("session: 'history' must be a list")
    history = tuple(dict(e) for e in history_raw)
    session_id = str(doc.get("id") or uuid.uuid4().hex)
    return _build(kind, initial, weights, history, session_id)
