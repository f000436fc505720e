"""Permutations of {0, ..., n-1} stored as image tuples."""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence


class Permutation(tuple):
    """A bijection on ``range(n)``; ``p[x]`` is the image of ``x``.

    Products follow function composition: ``(p * q)(x) == p(q(x))``.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        p = tuple.__new__(cls, images)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {tuple(p)!r}")
        return p

    @classmethod
    def _raw(cls, images: Iterable[int]) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return tuple.__new__(cls, range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < n:
                    raise ValueError(f"point {x} out of range for degree {n}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return tuple.__new__(cls, img)

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse disjoint-cycle notation such as ``(0 1 2)(3 4)`` or ``()``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if pts:
                cycles.append(pts)
        return cls.from_cycles(cycles, n)

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other: "Permutation") -> "Permutation":  # type: ignore[override]
        if len(self) != len(other):
            raise ValueError("degree mismatch")
        return tuple.__new__(Permutation, map(self.__getitem__, other))

    __rmul__ = None  # type: ignore[assignment]

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return tuple.__new__(Permutation, inv)

    def inverse(self) -> "Permutation":
        return ~self

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return (~self) ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self else 1

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self) if i == x]

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self) if i != x]

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return ``g * self * g^-1``."""
        img = [0] * len(self)
        for i, x in enumerate(self):
            img[g[i]] = g[x]
        return tuple.__new__(Permutation, img)

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, n={len(self)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``compose(p, q)(x) == p(q(x))``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return ~p
