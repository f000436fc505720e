"""Command-line entry points: ``census run|list|ms`` and the ``ms`` shortcut."""

from __future__ import annotations

import argparse
import fnmatch
import sys
from pathlib import Path

from .autiso import automorphism_group
from .census.builders import BuildError
from .census.cases import ALL_CASES
from .census.report import FORMATS, CensusReport, emit_report, run_cases
from .ms import MSParams, classify_ms, ms_aut_fast, ms_context, ms_digraph, ms_isomorphic_fast

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def parse_subset(text: str, q: int, *, allow_all: bool) -> frozenset[int]:
    """``none`` for the empty set, ``all`` for Z_q, else a comma list."""
    t = text.strip().lower()
    if t in ("none", ""):
        return frozenset()
    if t == "all":
        if not allow_all:
            raise ConfigError("'all' is only meaningful for T")
        return frozenset(range(q))
    try:
        return frozenset(int(x) % q for x in t.split(","))
    except ValueError:
        raise ConfigError(f"bad subset {text!r}; use e.g. 1,4 or none") from None


def _params(ns, suffix: str = "") -> MSParams:
    S = parse_subset(getattr(ns, "S" + suffix), ns.q, allow_all=False)
    T = parse_subset(getattr(ns, "T" + suffix), ns.q, allow_all=True)
    try:
        return MSParams(ns.s, ns.q, S, T)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _add_ms_args(p: argparse.ArgumentParser, second: bool = False) -> None:
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--S", default="none", help="comma list of Z_q^* elements or none")
    p.add_argument("--T", default="none", help="comma list, none or all")
    if second:
        p.add_argument("--S2", default="none")
        p.add_argument("--T2", default="none")


def _select(patterns: list[str] | None):
    if not patterns:
        return list(ALL_CASES)
    chosen = []
    known = {c.id for c in ALL_CASES}
    for pat in patterns:
        is_glob = any(ch in pat for ch in "*?[")
        if not is_glob and pat not in known:
            raise ConfigError(f"unknown case {pat!r}; see 'census list'")
        for c in ALL_CASES:
            if fnmatch.fnmatchcase(c.id, pat) and c not in chosen:
                chosen.append(c)
    return chosen


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from None


def cmd_run(ns) -> int:
    cases = _select(ns.case)
    budget = None if ns.budget <= 0 else ns.budget
    report = CensusReport(run_cases(cases, budget, ns.enable_stretch), timings=ns.timings)
    _write(emit_report(report, ns.format), ns.out)
    for r in report.results:
        for c in r.failed_checks:
            print(f"FAIL {r.case_id} {c.name}: expected {c.expected!r}, computed {c.computed!r}",
                  file=sys.stderr)
        if r.status == "error":
            print(f"ERROR {r.case_id}: {r.message}", file=sys.stderr)
    return report.exit_code


def cmd_list(ns) -> int:
    for c in ALL_CASES:
        flags = " [stretch]" if c.stretch else ""
        print(f"{c.id:22s} {c.title}{flags}")
    return EXIT_PASS


def cmd_ms_build(ns) -> int:
    p = _params(ns)
    _write(ms_digraph(p).to_text(), ns.out)
    return EXIT_PASS


def cmd_ms_iso(ns) -> int:
    p1, p2 = _params(ns), _params(ns, "2")
    if p1.degenerate or p2.degenerate:
        raise ConfigError("fast isomorphism test needs nondegenerate T")
    wit = ms_isomorphic_fast(p1, p2)
    if wit is None:
        print(f"{p1} and {p2} are not isomorphic")
        return EXIT_PASS
    cycles = "".join("(" + " ".join(map(str, c)) + ")" for c in wit.cycles()) or "()"
    print(f"{p1} ~ {p2} via {cycles}")
    return EXIT_PASS


def cmd_ms_aut(ns) -> int:
    p = _params(ns)
    cls = classify_ms(p)
    if cls.case == "imprimitive":
        res = ms_aut_fast(p)
        order, how = res.order, f"fast, accepted maps {res.accepted}"
    else:
        res = automorphism_group(ms_digraph(p), ms_context(p.s, p.q).sl2() if not p.degenerate else None)
        order, how = res.order, "general search"
    print(f"{p}: case {cls.case}; |Aut| = {order} ({how})")
    if cls.predicted_order is not None and cls.predicted_order != order:
        print(f"predicted order {cls.predicted_order} differs", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def _ms_parser(sub) -> None:
    b = sub.add_parser("build", help="print an MS digraph in digraph text format")
    _add_ms_args(b)
    b.add_argument("--out")
    b.set_defaults(func=cmd_ms_build)
    i = sub.add_parser("iso", help="fast isomorphism test between two MS digraphs")
    _add_ms_args(i, second=True)
    i.set_defaults(func=cmd_ms_iso)
    a = sub.add_parser("aut", help="automorphism group order of an MS digraph")
    _add_ms_args(a)
    a.set_defaults(func=cmd_ms_aut)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="census", description="Verification census for digraphs of order pq.")
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run census cases and emit a report")
    r.add_argument("--case", action="append", help="case id or glob; repeatable")
    r.add_argument("--budget", type=float, default=300.0, help="seconds per case; 0 disables")
    r.add_argument("--format", choices=FORMATS, default="markdown")
    r.add_argument("--out")
    r.add_argument("--enable-stretch", action="store_true")
    r.add_argument("--timings", action="store_true", help="include wall-clock seconds")
    r.set_defaults(func=cmd_run)
    sub.add_parser("list", help="list case ids").set_defaults(func=cmd_list)
    m = sub.add_parser("ms", help="MS digraph tools")
    _ms_parser(m.add_subparsers(dest="ms_command", required=True))
    return parser


def _dispatch(parser: argparse.ArgumentParser, argv: list[str] | None) -> int:
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_CONFIG
    try:
        return ns.func(ns)
    except (ConfigError, BuildError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main(argv: list[str] | None = None) -> int:
    return _dispatch(build_parser(), argv)


def ms_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ms", description="MS digraph tools.")
    _ms_parser(parser.add_subparsers(dest="ms_command", required=True))
    return _dispatch(parser, argv)


if __name__ == "__main__":
    sys.exit(main())
