"""Generator files: ``degree n`` then one permutation per line in cycle notation."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .group import PermutationGroup
from .permutation import Permutation


def parse_generators(text: str) -> PermutationGroup:
    degree = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise ValueError(f"line {lineno}: expected 'degree n', got {raw!r}")
            degree = int(parts[1])
            continue
        try:
            gens.append(Permutation.parse(line, degree))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise ValueError("missing 'degree n' header")
    return PermutationGroup(gens, degree)


def format_generators(generators: Iterable[Permutation], degree: int,
                      comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"degree {degree}")
    lines.extend(str(g) for g in generators)
    return "\n".join(lines) + "\n"


def read_generators(path: str | Path) -> PermutationGroup:
    return parse_generators(Path(path).read_text())


def write_generators(path: str | Path, group: PermutationGroup, comment: str | None = None) -> None:
    Path(path).write_text(format_generators(group.generators, group.degree, comment))
