"""Exact ground fields: arbitrary-precision rationals and prime fields GF(p).

Scalars are plain Python values: ``Fraction`` over the rationals, ``int`` in
``[0, p)`` over GF(p).  A :class:`Field` instance carries the arithmetic, so
all higher layers stay field-agnostic.  Characteristic 2 is rejected
everywhere (the anticommutator needs an invertible 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p == 0``) or the prime field GF(p), p an odd prime."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if self.p == 2:
                raise ValueError("characteristic 2 is not supported")
            if self.p < 3 or not _is_prime(self.p):
                raise ValueError(f"{self.p} is not an odd prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def kind(self) -> str:
        return "GF" if self.p else "Q"

    @property
    def char(self) -> int:
        return self.p

    def __repr__(self):
        return f"GF({self.p})" if self.p else "Q"

    # -- arithmetic -----------------------------------------------------

    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def of(self, value) -> Scalar:
        """Coerce an int, Fraction or "a/b" string into a field scalar."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else a - b

    def neg(self, a: Scalar) -> Scalar:
        return -a % self.p if self.p else -a

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p else a * b

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def half(self) -> Scalar:
        return self.inv(self.of(2))

    # -- serialization --------------------------------------------------

    def scalar_to_json(self, a: Scalar):
        """GF(p) scalars as ints in [0, p); rationals as "a/b" ("a" when b = 1)."""
        if self.p:
            return int(a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def scalar_from_json(self, value) -> Scalar:
        return self.of(value)

    def to_json(self):
        return {"kind": "GF", "p": self.p} if self.p else {"kind": "Q"}

    @classmethod
    def from_json(cls, doc) -> "Field":
        if doc.get("kind") == "Q":
            return cls(0)
        if doc.get("kind") == "GF":
            return cls(int(doc["p"]))
        raise ValueError(f"unknown field document: {doc!r}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse a command-line field spec, "Q" or "GF:p"."""
        text = text.strip()
        if text in ("Q", "q"):
            return cls(0)
        if text.upper().startswith("GF:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field spec {text!r} (expected Q or GF:p)")
