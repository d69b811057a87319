"""The ``sd`` command line: check, rank, ladder, group, interval, refine, serve.

Every analysis command prints a JSON document.  Exit codes: 0 on success,
1 when a domain invariant is violated, 2 on parse/usage errors, 3 when the
file holds the wrong kind of data for the command.
"""

from __future__ import annotations

import sys

import click

from . import formats, session as sessions
from .errors import InvariantViolation, ParseError, WrongDataKind
from .formats import LoadedData, dumps_json
from .group import copeland, group_level, majority, tally
from .interval import PartialSDMatrix
from .relations import core as relation_core, is_transitive
from .superiority import WeightVector, classify


def _echo(obj) -> None:
    click.echo(dumps_json(obj), nl=False)


def _load_weights(loaded: LoadedData, weights_path: str | None) -> WeightVector | None:
    if weights_path is None:
        return None
    if loaded.kind == "session":
        raise InvariantViolation("session files carry their own weights")
    obj = formats._load_json(_read(weights_path))
    return formats.parse_weights(obj, loaded.value.base)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None


def _open_session(
    path: str, weights_path: str | None = None, phi_star: float | None = None
) -> sessions.Session:
    loaded = formats.load_file(path, phi_star=phi_star)
    return sessions.new_session(loaded, _load_weights(loaded, weights_path))


@click.group()
def cli() -> None:
    """Decision analysis over pairwise superiority degrees."""


@cli.command()
@click.argument("file", type=click.Path())
@click.option("--eps", type=float, default=None, help="Tolerance for the class checks.")
def check(file: str, eps: float | None) -> None:
    """Class flags (skew-symmetric / additively transitive / max-transitive)."""
    loaded = formats.load_file(file)
    if loaded.kind != "sd":
        raise WrongDataKind(
            f"'sd check' needs a complete degree matrix, got {loaded.kind} data"
        )
    flags = classify(loaded.value) if eps is None else classify(loaded.value, eps)
    _echo(
        {
            "skew_symmetric": flags.in_h,
            "additively_transitive": flags.in_t,
            "max_transitive": flags.in_s,
            "phi_star": formats.fmt_real(loaded.value.phi_star),
        }
    )


@cli.command()
@click.argument("file", type=click.Path())
@click.option("--weights", "weights_path", type=click.Path(), default=None)
def rank(file: str, weights_path: str | None) -> None:
    """Utilities and the ranking they induce."""
    s = _open_session(file, weights_path)
    if s.kind not in ("sd", "criteria"):
        raise WrongDataKind(
            f"'sd rank' applies to degree matrices or criteria, got {s.kind} data; "
            "panels rank via 'sd group', incomplete data via 'sd interval'"
        )
    report = sessions.analyze(s)
    _echo({"utilities": report["utilities"], "ranking": report["ranking"],
           "warnings": report["warnings"]})


@cli.command()
@click.argument("file", type=click.Path())
@click.option("--levels", "levels_csv", default=None,
              help="Comma-separated levels to sample instead of the breakpoints.")
@click.option("--weights", "weights_path", type=click.Path(), default=None)
def ladder(file: str, levels_csv: str | None, weights_path: str | None) -> None:
    """Nested-core ladder (or specific levels) of the file's degree matrix."""
    s = _open_session(file, weights_path)
    if levels_csv is None:
        _echo(sessions.ladder_report(s))
        return
    try:
        wanted = [float(tok) for tok in levels_csv.split(",") if tok.strip()]
    except ValueError:
        raise ParseError(f"--levels must be comma-separated numbers, got {levels_csv!r}") from None
    rungs = [sessions.ladder_report(s, level) for level in wanted]
    for rung in rungs:
        rung.pop("schema_version", None)
    _echo({"schema_version": formats.SCHEMA_VERSION, "rungs": rungs})


@cli.group()
@click.argument("ballots", type=click.Path())
@click.pass_context
def group(ctx: click.Context, ballots: str) -> None:
    """Group decisions over an expert panel (complete information)."""
    loaded = formats.load_file(ballots)
    if loaded.kind == "abstention":
        raise WrongDataKind(
            "panel has abstentions or incomparable pairs; use 'sd interval' on it"
        )
    if loaded.kind != "panel":
        raise WrongDataKind(f"'sd group' needs ballots, got {loaded.kind} data")
    ctx.obj = tally(loaded.value)


@group.command("tally")
@click.pass_context
def group_tally(ctx: click.Context) -> None:
    """Pairwise vote counts."""
    t = ctx.obj
    _echo(
        {
            "alternatives": list(t.base.ids),
            "n_experts": t.n_experts,
            "tally": [[formats.fmt_real(v) for v in row] for row in t.counts],
        }
    )


@group.command("majority")
@click.pass_context
def group_majority(ctx: click.Context) -> None:
    """Voting by majority: relation, core, transitivity."""
    rel = majority(ctx.obj)
    _echo(
        {
            "pairs": [[x, y] for x, y in rel.pairs()],
            "core": list(relation_core(rel).members),
            "transitive": is_transitive(rel),
        }
    )


@group.command("copeland")
@click.pass_context
def group_copeland(ctx: click.Context) -> None:
    """Copeland scores and ranking."""
    scores, _ = copeland(ctx.obj)
    _echo({"scores": {k: formats.fmt_real(v) for k, v in scores.as_dict().items()},
           "ranking": scores.ranking()})


@group.command("level")
@click.option("--l", "--level", "level", type=float, required=True,
              help="Nonnegative decision level in net votes.")
@click.pass_context
def group_level_cmd(ctx: click.Context, level: float) -> None:
    """Level decision G(l) and its core."""
    rel, core_ = group_level(ctx.obj, level)
    _echo(
        {
            "level": formats.fmt_real(level),
            "pairs": [[x, y] for x, y in rel.pairs()],
            "core": list(core_.members),
        }
    )


@cli.group("interval")
@click.argument("file", type=click.Path())
@click.option("--phi-star", type=float, default=None,
              help="Bound on the unknown degrees (partial CSV only).")
@click.option("--weights", "weights_path", type=click.Path(), default=None)
@click.pass_context
def interval_group(ctx: click.Context, file: str, phi_star: float | None,
                   weights_path: str | None) -> None:
    """Interval estimates under incomplete information."""
    loaded = formats.load_file(file, phi_star=phi_star)
    if loaded.kind == "sd":
        loaded = LoadedData("partial", PartialSDMatrix.complete(loaded.value))
    if loaded.kind not in ("partial", "abstention"):
        raise WrongDataKind(
            f"'sd interval' needs a partial matrix or abstention ballots, got {loaded.kind} data"
        )
    ctx.obj = sessions.new_session(loaded, _load_weights(loaded, weights_path))


@interval_group.command("rank")
@click.pass_context
def interval_rank(ctx: click.Context) -> None:
    """Intervals and the strict dominance order they allow."""
    report = sessions.analyze(ctx.obj)
    _echo(
        {
            "phi_star": report["phi_star"],
            "intervals": report["intervals"],
            "interval_order": report["interval_order"],
        }
    )


@interval_group.command("missing")
@click.pass_context
def interval_missing(ctx: click.Context) -> None:
    """How much comparison information is missing."""
    report = sessions.analyze(ctx.obj)
    _echo({"missing_mass": report["missing_mass"], "missing_info": report["missing_info"]})


@interval_group.command("suggest")
@click.pass_context
def interval_suggest(ctx: click.Context) -> None:
    """The most valuable comparison to ask next."""
    s = ctx.obj
    if s.kind != "partial":
        raise WrongDataKind("suggestions only apply to partial matrices")
    pair = sessions.suggest_next_pair(s)
    _echo({"suggestion": list(pair) if pair else None})


@cli.command()
@click.argument("file", type=click.Path())
@click.option("--pair", required=True, help="The missing pair, as 'x,y'.")
@click.option("--value", type=float, required=True,
              help="Superiority degree of x over y; |value| must stay within the bound.")
def refine(file: str, pair: str, value: float) -> None:
    """Answer one missing comparison in a session file or partial CSV, in place."""
    parts = [p.strip() for p in pair.split(",")]
    if len(parts) != 2 or not all(parts):
        raise ParseError(f"--pair must be 'x,y', got {pair!r}")
    x, y = parts
    loaded = formats.load_file(file)
    if loaded.kind == "session":
        s = sessions.session_from_document(loaded.value)
        s = sessions.apply_refinement(s, x, y, value)
        _write(file, sessions.session_json(s))
        _echo(sessions.analyze(s))
        return
    if loaded.kind == "partial":
        s = sessions.new_session(loaded)
        s = sessions.apply_refinement(s, x, y, value)
        _write(file, formats.dump_partial_csv(s.data))
        _echo(sessions.analyze(s))
        return
    raise WrongDataKind(
        f"'sd refine' needs a session file or a partial matrix, got {loaded.kind} data"
    )


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


@cli.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--console-dir", type=click.Path(), default=None,
              help="Static console bundle to serve at /; defaults to ./frontend/dist when present.")
def serve(port: int, host: str, console_dir: str | None) -> None:
    """Run the HTTP session service (and the console, when built)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(console_dir=console_dir), host=host, port=port)


def main(argv: list[str] | None = None) -> int:
    """Entry point with domain errors mapped to exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        return 130
    except ParseError as e:
        click.echo(f"error: {e}", err=True)
        return 2
    except WrongDataKind as e:
        click.echo(f"error: {e}", err=True)
        return 3
    except InvariantViolation as e:
        click.echo(f"error: {e}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
