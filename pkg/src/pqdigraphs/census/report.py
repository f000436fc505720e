"""Report assembly and serialization (json, csv, markdown)."""

from __future__ import annotations

import csv
import io
import json
import platform
from dataclasses import dataclass, field
from importlib import metadata

from .builders import BuildError
from .cases import ALL_CASES, PRIMITIVE_ROWS, CaseResult, CensusCase, UntaggedExpectation, verify_case

FORMATS = ("json", "csv", "markdown")
_STATIC_REF = "source: paper"


def _version(dist: str) -> str:
    try:
        return metadata.version(dist)
    except metadata.PackageNotFoundError:
        return "unknown"


def toolchain_fingerprint() -> dict[str, str]:
    return {
        "python": platform.python_version(),
        "implementation": platform.python_implementation(),
        "numpy": _version("numpy"),
        "sympy": _version("sympy"),
        "artifact": _version("artifact"),
    }


@dataclass
class CensusReport:
    results: list[CaseResult] = field(default_factory=list)
    fingerprint: dict[str, str] = field(default_factory=toolchain_fingerprint)
    timings: bool = False

    def __post_init__(self):
        self.results = sorted(self.results, key=lambda r: r.case_id)

    @property
    def exit_code(self) -> int:
        statuses = {r.status for r in self.results}
        if "error" in statuses:
            return 2
        return 1 if "fail" in statuses else 0

    def primitive_rows(self) -> list[list[str]]:
        """Static rows plus recomputed rows for covered degrees."""
        if not self.results:
            return []
        rows = [[*r, _STATIC_REF] for r in PRIMITIVE_ROWS]
        for res in self.results:
            if res.case_id != "primitive-table" or res.status not in ("pass", "fail"):
                continue
            for chk in res.checks:
                computed = chk.computed
                if isinstance(computed, list) and len(computed) == 4:
                    rows.append([*computed, "computed" if chk.passed else "computed (differs)"])
        return rows

    def as_dict(self) -> dict:
        return {
            "fingerprint": self.fingerprint,
            "exit_code": self.exit_code,
            "cases": [r.as_dict(self.timings) for r in self.results],
            "primitive_table": self.primitive_rows(),
        }


def run_cases(cases: list[CensusCase], budget: float | None = 300.0,
              enable_stretch: bool = False) -> list[CaseResult]:
    out = []
    for case in cases:
        try:
            out.append(verify_case(case, budget, enable_stretch))
        except (BuildError, UntaggedExpectation) as exc:
            out.append(CaseResult(case.id, case.title, "error", message=f"{type(exc).__name__}: {exc}"))
    return out


def run_census(case_ids: list[str] | None = None, budget: float | None = 300.0,
               enable_stretch: bool = False, timings: bool = False) -> CensusReport:
    cases = ALL_CASES if case_ids is None else [c for c in ALL_CASES if c.id in set(case_ids)]
    return CensusReport(run_cases(cases, budget, enable_stretch), timings=timings)


def _j(value) -> str:
    return json.dumps(value, sort_keys=True, default=str, ensure_ascii=False)


def to_json(report: CensusReport) -> str:
    return json.dumps(report.as_dict(), sort_keys=True, indent=2, default=str,
                      ensure_ascii=False) + "\n"


CSV_HEADER = ["case", "status", "check", "expected", "computed", "source", "anchor", "passed"]


def to_csv(report: CensusReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.results:
        if not r.checks:
            w.writerow([r.case_id, r.status, "", "", "", "", "", ""])
        for c in r.checks:
            w.writerow([r.case_id, r.status, c.name, _j(c.expected), _j(c.computed), c.source,
                        c.anchor, str(c.passed).lower()])
    return buf.getvalue()


def _cell(text: str) -> str:
    return str(text).replace("|", "\\|")


def to_markdown(report: CensusReport) -> str:
    lines = ["# Census report", ""]
    lines.append("Toolchain: " + ", ".join(f"{k} {v}" for k, v in sorted(report.fingerprint.items())))
    lines.append("")
    head = "| Case | Status | Checks passed |"
    if report.timings:
        head += " Seconds |"
    lines += [head, "|" + "---|" * (head.count("|") - 1)]
    for r in report.results:
        row = f"| {r.case_id} | {r.status} | {sum(c.passed for c in r.checks)}/{len(r.checks)} |"
        if report.timings:
            row += f" {r.seconds:.2f} |"
        lines.append(row)
    failed = [(r, c) for r in report.results for c in r.failed_checks]
    if failed:
        lines += ["", "## Failed checks", ""]
        for r, c in failed:
            lines.append(f"- `{r.case_id}` {c.name} [{c.source}: {c.anchor}]: "
                         f"expected `{_j(c.expected)}`, computed `{_j(c.computed)}`")
    notes = [r for r in report.results if r.message]
    if notes:
        lines += ["", "## Notes", ""]
        lines += [f"- `{r.case_id}` {r.status}: {r.message}" for r in notes]
    rows = report.primitive_rows()
    if rows:
        lines += ["", "## Simply primitive automorphism groups of order qp", "",
                  "| soc(G) | qp | Valency | Cayley | Reference |", "|---|---|---|---|---|"]
        lines += ["| " + " | ".join(_cell(x) for x in row) + " |" for row in rows]
    recorded = [r for r in report.results if r.recorded]
    if recorded:
        lines += ["", "## Recorded observations", ""]
        for r in recorded:
            for k in sorted(r.recorded):
                lines.append(f"- `{r.case_id}` {k}: `{_j(r.recorded[k])}`")
    return "\n".join(lines) + "\n"


def emit_report(report: CensusReport, fmt: str = "markdown") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    return {"json": to_json, "csv": to_csv, "markdown": to_markdown}[fmt](report)
