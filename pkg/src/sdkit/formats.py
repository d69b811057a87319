"""File formats: relation literals, degree matrices (CSV), ballots, criteria.

Loaders validate up front (a malformed cell is a parse error with its
line/column; a broken domain invariant is an invariant violation naming the
offending cells) and produce the immutable domain values.  Savers write
every real with 12 significant digits, which makes save -> load -> save a
fixed point and keeps reports reproducible across platforms.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import InvariantViolation, ParseError
from .group import VectorPreferenceRelation, expert_from_order
from .interval import PartialSDMatrix, abstention_tally
from .relations import AlternativeSet, PreferenceRelation, is_connected
from .superiority import DEFAULT_EPS, CriterionFamily, SDMatrix, WeightVector

SCHEMA_VERSION = 1

_PHI_STAR_COMMENT = re.compile(r"^#\s*phi_star\s*=\s*(?P<value>\S+)\s*$")
_ABSENT_CELLS = {"", "na", "n/a"}


def fmt_real(x: float) -> float:
    """Quantize to 12 significant digits (and normalize the sign of zero)."""
    v = float(f"{float(x):.12g}")
    return 0.0 if v == 0 else v


def _fmt_cell(x: float) -> str:
    return f"{fmt_real(x):.12g}"


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON (line {e.lineno}, column {e.colno}): {e.msg}") from None


def _require(obj: Any, key: str, context: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{context}: missing key {key!r}")
    return obj[key]


def _base_from(obj: Any, context: str) -> AlternativeSet:
    alts = _require(obj, "alternatives", context)
    if not isinstance(alts, list) or not all(isinstance(a, str) for a in alts):
        raise ParseError(f"{context}: 'alternatives' must be a list of strings")
    return AlternativeSet(tuple(alts))


# -- relation literal ---------------------------------------------------------

def parse_relation(obj: Any) -> PreferenceRelation:
    base = _base_from(obj, "relation")
    pairs = _require(obj, "pairs", "relation")
    if not isinstance(pairs, list):
        raise ParseError("relation: 'pairs' must be a list")
    checked = []
    for k, pair in enumerate(pairs):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(f"relation: pair #{k + 1} must be a two-element list")
        checked.append((str(pair[0]), str(pair[1])))
    return PreferenceRelation.from_pairs(base, checked)


def dump_relation(r: PreferenceRelation) -> dict:
    return {
        "alternatives": list(r.base.ids),
        "pairs": [[x, y] for x, y in r.pairs()],
    }


# -- degree matrix CSV --------------------------------------------------------

def _read_csv_grid(text: str) -> tuple[list[list[str]], float | None]:
    phi_star = None
    lines = []
    for line in text.splitlines():
        m = _PHI_STAR_COMMENT.match(line.strip())
        if m:
            try:
                phi_star = float(m.group("value"))
            except ValueError:
                raise ParseError(f"invalid phi_star comment: {line.strip()!r}") from None
            continue
        if line.strip().startswith("#") or not line.strip():
            continue
        lines.append(line)
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    if len(rows) < 2:
        raise ParseError("matrix CSV needs a header row and one row per alternative")
    return rows, phi_star


def _csv_header(rows: list[list[str]]) -> AlternativeSet:
    ids = [c.strip() for c in rows[0][1:]]
    base = AlternativeSet(tuple(ids))
    if len(rows) != base.n + 1:
        raise ParseError(
            f"matrix CSV: expected {base.n} data rows, found {len(rows) - 1}"
        )
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != base.n + 1:
            raise ParseError(f"matrix CSV: line {k} has {len(row)} cells, expected {base.n + 1}")
        if row[0].strip() != base.ids[k - 2]:
            raise ParseError(
                f"matrix CSV: line {k} is labeled {row[0].strip()!r}, "
                f"expected {base.ids[k - 2]!r} (row and column order must match)"
            )
    return base


def _parse_grid(
    rows: list[list[str]], base: AlternativeSet, allow_absent: bool
) -> tuple[np.ndarray, np.ndarray]:
    phi = np.zeros((base.n, base.n))
    known = np.ones((base.n, base.n), dtype=bool)
    for i in range(base.n):
        for j in range(base.n):
            cell = rows[i + 1][j + 1].strip()
            if cell.lower() in _ABSENT_CELLS:
                if not allow_absent:
                    raise ParseError(
                        f"matrix CSV: empty cell at line {i + 2}, column {j + 2}; "
                        "absent pairs belong to the partial format"
                    )
                known[i, j] = False
                continue
            try:
                phi[i, j] = float(cell)
            except ValueError:
                raise ParseError(
                    f"matrix CSV: bad number {cell!r} at line {i + 2}, column {j + 2}"
                ) from None
    return phi, known


def _check_skew(phi: np.ndarray, known: np.ndarray, base: AlternativeSet, eps: float) -> None:
    diag = (np.abs(np.diag(phi)) > eps) & np.diag(known)
    if np.any(diag):
        i = int(np.nonzero(diag)[0][0])
        raise InvariantViolation(
            f"diagonal must be zero, got {float(phi[i, i])!r} at "
            f"({base.ids[i]}, {base.ids[i]})"
        )
    both = known & known.T
    bad = (np.abs(phi + phi.T) > eps) & both
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise InvariantViolation(
            f"skew-symmetry violated at ({base.ids[i]}, {base.ids[j]}): "
            f"{float(phi[i, j])!r} vs {float(phi[j, i])!r}"
        )


def _snap_skew(phi: np.ndarray) -> np.ndarray:
    # exact skew-symmetry after an eps-tolerant check
    p = (phi - phi.T) / 2.0
    np.fill_diagonal(p, 0.0)
    return p


def parse_sd_csv(text: str, eps: float = DEFAULT_EPS) -> SDMatrix:
    """Complete degree matrix; rejects absent cells and skew violations."""
    rows, _ = _read_csv_grid(text)
    base = _csv_header(rows)
    phi, known = _parse_grid(rows, base, allow_absent=False)
    _check_skew(phi, known, base, eps)
    return SDMatrix(base, _snap_skew(phi))


def dump_sd_csv(m: SDMatrix) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow([""] + list(m.base.ids))
    for i, alt in enumerate(m.base.ids):
        w.writerow([alt] + [_fmt_cell(v) for v in m.phi[i]])
    return out.getvalue()


def parse_partial_csv(
    text: str, eps: float = DEFAULT_EPS, phi_star: float | None = None
) -> PartialSDMatrix:
    """Degree matrix with absent cells ("" or NA); phi_star from the header comment or the caller."""
    rows, phi_star_comment = _read_csv_grid(text)
    base = _csv_header(rows)
    phi, known = _parse_grid(rows, base, allow_absent=True)
    if not np.array_equal(known, known.T):
        bad = np.argwhere(known != known.T)
        i, j = map(int, bad[0])
        raise InvariantViolation(
            f"presence must be symmetric: ({base.ids[i]}, {base.ids[j]}) is absent "
            "while its mirror is present"
        )
    if not np.all(np.diag(known)):
        i = int(np.nonzero(~np.diag(known))[0][0])
        raise InvariantViolation(f"diagonal cell ({base.ids[i]}, {base.ids[i]}) must be present")
    _check_skew(phi, known, base, eps)
    star = phi_star if phi_star is not None else phi_star_comment
    if star is None:
        star = float(np.max(np.abs(phi[known]))) if known.any() else 0.0
    phi = np.where(known, _snap_skew(np.where(known & known.T, phi, 0.0)), 0.0)
    return PartialSDMatrix(base, phi, known, star)


def dump_partial_csv(p: PartialSDMatrix) -> str:
    out = io.StringIO()
    out.write(f"# phi_star = {_fmt_cell(p.phi_star)}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow([""] + list(p.base.ids))
    for i, alt in enumerate(p.base.ids):
        row = [alt]
        for j in range(p.base.n):
            row.append(_fmt_cell(p.phi[i, j]) if p.known[i, j] else "NA")
        w.writerow(row)
    return out.getvalue()


# -- ballots ------------------------------------------------------------------

_VERDICTS = {"x", "y", "tie", "abstain"}


def parse_ballots(obj: Any) -> VectorPreferenceRelation:
    """Expert ballots: linear-order shorthand or explicit pair verdicts.

    Orders expand to the full strict relation plus reflexive ties.  With pair
    verdicts, a pair never mentioned counts as not compared, same as an
    explicit abstention.
    """
    base = _base_from(obj, "ballots")
    experts_raw = _require(obj, "experts", "ballots")
    if not isinstance(experts_raw, list) or not experts_raw:
        raise ParseError("ballots: 'experts' must be a nonempty list")
    relations = []
    ids = []
    for k, entry in enumerate(experts_raw):
        if not isinstance(entry, dict):
            raise ParseError(f"ballots: expert #{k + 1} must be an object")
        ids.append(str(entry.get("id", f"E{k + 1}")))
        if ("order" in entry) == ("pairs" in entry):
            raise ParseError(
                f"ballots: expert {ids[-1]!r} needs exactly one of 'order' or 'pairs'"
            )
        if "order" in entry:
            relations.append(expert_from_order(base, entry["order"]))
            continue
        member = np.eye(base.n, dtype=bool)
        seen: set[frozenset[int]] = set()
        for item in entry["pairs"]:
            x = str(_require(item, "x", f"ballots expert {ids[-1]!r}"))
            y = str(_require(item, "y", f"ballots expert {ids[-1]!r}"))
            verdict = str(_require(item, "verdict", f"ballots expert {ids[-1]!r}"))
            if verdict not in _VERDICTS:
                raise ParseError(
                    f"ballots: unknown verdict {verdict!r} for ({x}, {y}); "
                    f"expected one of {sorted(_VERDICTS)}"
                )
            i, j = base.index(x), base.index(y)
            if i == j:
                raise ParseError(f"ballots: pair ({x}, {y}) compares an alternative with itself")
            key = frozenset((i, j))
            if key in seen:
                raise ParseError(f"ballots: duplicate verdict for pair ({x}, {y})")
            seen.add(key)
            if verdict == "x":
                member[i, j] = True
            elif verdict == "y":
                member[j, i] = True
            elif verdict == "tie":
                member[i, j] = member[j, i] = True
        relations.append(PreferenceRelation(base, member))
    return VectorPreferenceRelation(base, tuple(relations), expert_ids=tuple(ids))


def dump_ballots(vpr: VectorPreferenceRelation) -> dict:
    base = vpr.base
    experts = []
    for k, r in enumerate(vpr.experts):
        label = vpr.expert_ids[k] if vpr.expert_ids else f"E{k + 1}"
        pairs = []
        for i in range(base.n):
            for j in range(i + 1, base.n):
                fwd, bwd = bool(r.member[i, j]), bool(r.member[j, i])
                verdict = "tie" if fwd and bwd else "x" if fwd else "y" if bwd else "abstain"
                pairs.append({"x": base.ids[i], "y": base.ids[j], "verdict": verdict})
        experts.append({"id": label, "pairs": pairs})
    return {"alternatives": list(base.ids), "experts": experts}


def panel_kind(vpr: VectorPreferenceRelation) -> str:
    """'panel' when every expert compared everything, else 'abstention'."""
    return "panel" if all(is_connected(r) for r in vpr.experts) else "abstention"


# -- criterion families -------------------------------------------------------

def parse_criteria(obj: Any, eps: float = DEFAULT_EPS) -> CriterionFamily:
    base = _base_from(obj, "criteria")
    raw = _require(obj, "criteria", "criteria")
    if not isinstance(raw, list) or not raw:
        raise ParseError("criteria: 'criteria' must be a nonempty list")
    mats = []
    weights = []
    labels = []
    for k, entry in enumerate(raw):
        labels.append(str(entry.get("id", f"criterion{k + 1}")) if isinstance(entry, dict) else "")
        weight = _require(entry, "weight", f"criterion #{k + 1}")
        matrix = _require(entry, "matrix", f"criterion #{k + 1}")
        try:
            phi = np.array(matrix, dtype=float)
        except (TypeError, ValueError):
            raise ParseError(f"criterion #{k + 1}: 'matrix' must be numeric rows") from None
        if phi.shape != (base.n, base.n):
            raise ParseError(
                f"criterion #{k + 1}: matrix must be {base.n}x{base.n}, got {phi.shape}"
            )
        known = np.ones_like(phi, dtype=bool)
        _check_skew(phi, known, base, eps)
        mats.append(SDMatrix(base, _snap_skew(phi)))
        weights.append(float(weight))
    return CriterionFamily(base, tuple(mats), tuple(weights), labels=tuple(labels))


def dump_criteria(fam: CriterionFamily) -> dict:
    labels = fam.labels or tuple(f"criterion{k + 1}" for k in range(fam.m))
    return {
        "alternatives": list(fam.base.ids),
        "criteria": [
            {
                "id": labels[k],
                "weight": fmt_real(fam.weights[k]),
                "matrix": [[fmt_real(v) for v in row] for row in fam.criteria[k].phi],
            }
            for k in range(fam.m)
        ],
    }


# -- weights ------------------------------------------------------------------

def parse_weights(obj: Any, base: AlternativeSet) -> WeightVector:
    if not isinstance(obj, dict):
        raise ParseError("weights file must be an object mapping alternative to weight")
    try:
        weights = {str(k): float(v) for k, v in obj.items()}
    except (TypeError, ValueError):
        raise ParseError("weights must be numeric") from None
    return WeightVector.from_mapping(base, weights)


def dump_weights(w: WeightVector) -> dict:
    return {a: fmt_real(v) for a, v in w.as_dict().items()}


# -- sniffing and top-level load ----------------------------------------------

FORMATS = ("relation", "sd", "partial", "ballots", "criteria", "session")


@dataclass(frozen=True)
class LoadedData:
    """Outcome of loading a file: the data kind plus the parsed value.

    Kinds: relation, sd, partial, panel, abstention, criteria, session (raw
    document).  Ballots resolve to panel or abstention depending on whether
    every expert compared every pair.
    """

    kind: str
    value: Any


def sniff_format(text: str) -> str:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = _load_json(text)
        if not isinstance(obj, dict):
            raise ParseError("cannot determine format of a non-object JSON document")
        if "schema_version" in obj and "data" in obj:
            return "session"
        if "experts" in obj:
            return "ballots"
        if "criteria" in obj:
            return "criteria"
        if "pairs" in obj:
            return "relation"
        raise ParseError(
            "cannot determine JSON format: expected a relation, ballots, "
            "criteria, or session document"
        )
    rows, star = _read_csv_grid(text)
    if star is not None:
        return "partial"
    cells = [c.strip().lower() for row in rows[1:] for c in row[1:]]
    return "partial" if any(c in _ABSENT_CELLS for c in cells) else "sd"


def load_text(
    text: str,
    fmt: str | None = None,
    eps: float = DEFAULT_EPS,
    phi_star: float | None = None,
) -> LoadedData:
    """Parse a document of any supported format into domain data."""
    fmt = fmt or sniff_format(text)
    if fmt == "relation":
        return LoadedData("relation", parse_relation(_load_json(text)))
    if fmt == "sd":
        return LoadedData("sd", parse_sd_csv(text, eps))
    if fmt == "partial":
        return LoadedData("partial", parse_partial_csv(text, eps, phi_star))
    if fmt == "ballots":
        vpr = parse_ballots(_load_json(text))
        kind = panel_kind(vpr)
        value = vpr if kind == "panel" else abstention_tally(vpr)
        return LoadedData(kind, value)
    if fmt == "criteria":
        return LoadedData("criteria", parse_criteria(_load_json(text), eps))
    if fmt == "session":
        return LoadedData("session", _load_json(text))
    raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def load_file(
    path: str,
    fmt: str | None = None,
    eps: float = DEFAULT_EPS,
    phi_star: float | None = None,
) -> LoadedData:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    return load_text(text, fmt, eps, phi_star)
