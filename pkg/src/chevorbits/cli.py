"""Command-line front end: ``param``, ``count`` and ``oracle``.

Exit codes: 0 success, 2 invalid input, 3 budget abort, 4 mismatch against
the tables or the oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .counter import (
    CountError,
    EnumerationBudgetExceeded,
    InterpolationMismatch,
    DEFAULT_ENUM_BUDGET,
    assemble_k,
)
from .finitefield import FieldError, field_for, prime_power
from .oracle import OracleBudgetExceeded, oracle_report
from .parametrizer import BudgetExceeded, Options, parametrize, parametrize_subquotient
from .rootdata import RootDataError, build_root_system, descending_central_indices
from .tables import expected_polynomial
from .zform import build_bracket_table

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4


class InvalidInput(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    type_label: str
    rank: int
    qs: list = field(default_factory=list)
    subquotient: str | None = None
    normalize: bool = True
    substitute: bool = True
    strategy: str = "symbolic"
    budget_nodes: int | None = None
    budget_enum: int = DEFAULT_ENUM_BUDGET
    out: str | None = None
    format: str = "json"
    check_table: bool = False
    compare: bool = False
    force: bool = False

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return d


def _parse_qs(text: str | None) -> list:
    if not text:
        return []
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            q = int(part)
            prime_power(q)
        except (ValueError, FieldError):
            raise InvalidInput(f"--q: {part!r} is not a prime power")
        out.append(q)
    return out


def _ideals(cfg: RunConfig, datum):
    """(outer, inner, level) for the subquotient option; level set only for U^(l)."""
    s = cfg.subquotient
    if s is None:
        return None, (), None
    if s.startswith("@"):
        try:
            data = json.loads(Path(s[1:]).read_text())
            return frozenset(data["outer"]), frozenset(data.get("inner", ())), None
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InvalidInput(f"--subquotient {s}: cannot read ideals ({exc})")
    try:
        if ":" in s:
            a, b = (int(x) for x in s.split(":"))
            if not 0 <= a <= b:
                raise InvalidInput(f"--subquotient {s}: need 0 <= l1 <= l2")
            return descending_central_indices(datum, a), descending_central_indices(datum, b), None
        level = int(s)
    except ValueError:
        raise InvalidInput(f"--subquotient {s!r}: expected l, l1:l2 or @file.json")
    if level < 0:
        raise InvalidInput("--subquotient level must be >= 0")
    return descending_central_indices(datum, level), (), level


def _build(cfg: RunConfig):
    datum = build_root_system(cfg.type_label, cfg.rank)
    table = build_bracket_table(datum)
    outer, inner, level = _ideals(cfg, datum)
    options = Options(normalize=cfg.normalize, substitute=cfg.substitute, max_nodes=cfg.budget_nodes)
    if outer is None:
        param = parametrize(datum, table, options)
    else:
        param = parametrize_subquotient(datum, table, outer, inner, options)
    return datum, table, param, outer, inner, level


def _envelope(cfg: RunConfig, result: dict) -> dict:
    return {"tool": "chevorbits", "version": __version__, "config": cfg.echo(), "result": result}


def cmd_param(cfg: RunConfig):
    _, _, param, *_ = _build(cfg)
    result = param.to_json()
    lines = [
        f"{param.datum.requested_label}: {len(param.cells)} cells, pattern length {len(param.basis)}",
        f"excluded primes: {sorted(param.excluded_primes)}",
    ]
    for c in param.sorted_cells():
        lines.append(f"  {c.pattern}  A={[str(a) for a in c.A]}  B={[str(b) for b in c.B]}")
    return EXIT_OK, result, lines


def cmd_count(cfg: RunConfig):
    datum, _, param, outer, inner, level = _build(cfg)
    if cfg.strategy == "per-q" and not cfg.qs:
        raise InvalidInput("--strategy per-q needs --q")
    report = assemble_k(param, cfg.strategy, qs=cfg.qs, budget=cfg.budget_enum)
    result = {"excluded_primes": sorted(param.excluded_primes), "report": report.to_json()}
    lines = []
    if report.total is not None:
        lines.append(f"k = {report.total}")
    for q in cfg.qs:
        lines.append(f"q = {q}: {report.value_at(q)}")
    code = EXIT_OK
    if cfg.check_table:
        if outer is not None and level is None:
            raise InvalidInput("--check-table only covers the full space or a single level l")
        want = expected_polynomial(datum.requested_label[0], datum.rank, level)
        if want is None:
            raise InvalidInput(f"no tabulated polynomial for {datum.requested_label} level {level}")
        if report.total is not None:
            ok = report.total == want
        else:
            ok = all(report.value_at(q) == want(q) for q in cfg.qs)
        result["table_check"] = {"expected": want.to_text(), "pass": ok}
        lines.append(f"table check: {'pass' if ok else 'FAIL'} (expected {want})")
        if not ok:
            code = EXIT_MISMATCH
    return code, result, lines


def cmd_oracle(cfg: RunConfig):
    if not cfg.qs:
        raise InvalidInput("oracle needs --q")
    datum = build_root_system(cfg.type_label, cfg.rank)
    table = build_bracket_table(datum)
    outer, inner, _ = _ideals(cfg, datum)
    for q in cfg.qs:
        p, _ = prime_power(q)
        if p in datum.bad_primes and not cfg.force:
            raise InvalidInput(f"q = {q} lies over the bad prime {p} of {datum.requested_label}; use --force")
    runs, lines, code = [], [], EXIT_OK
    param = None
    for q in cfg.qs:
        rep = oracle_report(table, field_for(q), outer, inner, budget=cfg.budget_enum)
        line = f"q = {q}: {rep['orbit_count']} orbits"
        if cfg.compare:
            if param is None:
                *_, param, _, _, _ = _build(cfg)
            total = assemble_k(param, "per-q", qs=[q], budget=cfg.budget_enum).values[q]
            rep["pipeline_count"] = total
            rep["match"] = total == rep["orbit_count"]
            line += f"; pipeline {total}: {rep['orbit_count']} {'=' if rep['match'] else '!='} {total}"
            if not rep["match"]:
                code = EXIT_MISMATCH
        runs.append(rep)
        lines.append(line)
    return code, {"runs": runs}, lines


COMMANDS = {"param": cmd_param, "count": cmd_count, "oracle": cmd_oracle}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chevorbits", description="Adjoint orbit parametrization and class counts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("param", "parametrize orbits by cells"),
        ("count", "count classes as a polynomial in v = q-1 or at given q"),
        ("oracle", "brute-force orbit count over F_q"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--type", dest="type_label", required=True, help="Cartan type A..G")
        p.add_argument("--rank", type=int, required=True)
        p.add_argument("--q", dest="qs", default=None, help="comma-separated prime powers")
        p.add_argument("--subquotient", default=None, help="l, l1:l2 or @roots.json")
        p.add_argument("--no-normalize", dest="normalize", action="store_false")
        p.add_argument("--no-subst", dest="substitute", action="store_false")
        p.add_argument("--strategy", choices=("symbolic", "per-q", "interpolate"), default="symbolic")
        p.add_argument("--budget-nodes", type=int, default=None)
        p.add_argument("--budget-enum", type=int, default=DEFAULT_ENUM_BUDGET)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--check-table", action="store_true")
        p.add_argument("--compare", action="store_true")
        p.add_argument("--force", action="store_true")
    return parser


def _emit(cfg: RunConfig, payload: dict, lines: list) -> None:
    if cfg.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        cfg = RunConfig(
            command=ns.command,
            type_label=ns.type_label.upper(),
            rank=ns.rank,
            qs=_parse_qs(ns.qs),
            subquotient=ns.subquotient,
            normalize=ns.normalize,
            substitute=ns.substitute,
            strategy=ns.strategy,
            budget_nodes=ns.budget_nodes,
            budget_enum=ns.budget_enum,
            out=ns.out,
            format=ns.format,
            check_table=ns.check_table,
            compare=ns.compare,
            force=ns.force,
        )
        code, result, lines = COMMANDS[cfg.command](cfg)
    except (InvalidInput, RootDataError, CountError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BudgetExceeded, EnumerationBudgetExceeded, OracleBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InterpolationMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    _emit(cfg, _envelope(cfg, result), lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
