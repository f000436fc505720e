"""GF(2^s) in a polynomial basis, and 2x2 matrices over it."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Fixed moduli, written as bit masks including the leading term.
MODULI = {1: 0b11, 2: 0b111, 4: 0b10011, 8: 0b100011101}


def _clmul_mod(a: int, b: int, s: int, modulus: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> s & 1:
            a ^= modulus
    return r


class Field:
    """Arithmetic on ``range(2**s)``; ``omega`` is the class of ``x``, a generator of the unit group."""

    def __init__(self, s: int):
        if s not in MODULI:
            raise ValueError(f"s must be one of {sorted(MODULI)}, got {s}")
        self.s = s
        self.size = 1 << s
        self.modulus = MODULI[s]
        self.units = self.size - 1
        self.omega = 2 if s > 1 else 1
        exp = [1] * self.units
        for i in range(1, self.units):
            exp[i] = _clmul_mod(exp[i - 1], self.omega, s, self.modulus)
        log = {v: i for i, v in enumerate(exp)}
        if len(log) != self.units:
            raise AssertionError("omega is not primitive for this modulus")
        self.exp = exp
        self.log = log

    def __repr__(self) -> str:
        return f"GF(2^{self.s})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.s == self.s

    def __hash__(self) -> int:
        return hash(("GF2", self.s))

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % self.units]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[-self.log[a] % self.units]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        return self.exp[self.log[a] * k % self.units]

    def sqrt(self, a: int) -> int:
        """The unique square root, ``a^(2^(s-1))``."""
        return self.pow(a, 1 << (self.s - 1))

    def omega_pow(self, k: int) -> int:
        return self.exp[k % self.units]

    def sqrt_omega_pow(self, k: int) -> int:
        """``sqrt(omega)^k``; note ``sqrt(omega) = omega^(2^(s-1))``."""
        return self.exp[(k << (self.s - 1)) % self.units]

    def frobenius(self, a: int) -> int:
        return self.mul(a, a)

    def element(self, bits: int) -> "FieldElement":
        return FieldElement(self, bits)


@lru_cache(maxsize=None)
def field_make(s: int) -> Field:
    return Field(s)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < self.field.size:
            raise ValueError("bits out of range")

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return self._wrap(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return self._wrap(self.field.mul(self.bits, other.bits))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self._wrap(self.field.div(self.bits, other.bits))

    def __pow__(self, k: int) -> "FieldElement":
        return self._wrap(self.field.pow(self.bits, k))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.bits))

    def sqrt(self) -> "FieldElement":
        return self._wrap(self.field.sqrt(self.bits))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __repr__(self) -> str:
        return f"<{self.bits:#x} in {self.field!r}>"


@dataclass(frozen=True)
class Matrix2:
    """``[[a, b], [c, d]]`` acting on column vectors."""

    field: Field
    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        f = self.field
        return f.mul(self.a, self.d) ^ f.mul(self.b, self.c)

    def is_special(self) -> bool:
        return self.det() == 1

    def __mul__(self, o: "Matrix2") -> "Matrix2":
        f = self.field
        m = f.mul
        return Matrix2(f, m(self.a, o.a) ^ m(self.b, o.c), m(self.a, o.b) ^ m(self.b, o.d),
                       m(self.c, o.a) ^ m(self.d, o.c), m(self.c, o.b) ^ m(self.d, o.d))

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        f = self.field
        x, y = v
        return (f.mul(self.a, x) ^ f.mul(self.b, y), f.mul(self.c, x) ^ f.mul(self.d, y))

    def frobenius(self) -> "Matrix2":
        fr = self.field.frobenius
        return Matrix2(self.field, fr(self.a), fr(self.b), fr(self.c), fr(self.d))

    @classmethod
    def identity(cls, f: Field) -> "Matrix2":
        return cls(f, 1, 0, 0, 1)

    @classmethod
    def scalar(cls, f: Field, a: int) -> "Matrix2":
        return cls(f, a, 0, 0, a)

    @classmethod
    def k(cls, f: Field, a: int) -> "Matrix2":
        """``diag(sqrt(a), sqrt(a)^-1)``."""
        r = f.sqrt(a)
        return cls(f, r, 0, 0, f.inv(r))

    @classmethod
    def h(cls, f: Field, b: int) -> "Matrix2":
        """``[[1, b], [0, 1]]``."""
        return cls(f, 1, b, 0, 1)

    @classmethod
    def swap(cls, f: Field) -> "Matrix2":
        return cls(f, 0, 1, 1, 0)
