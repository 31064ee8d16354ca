"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first; the zero polynomial is the
empty coefficient tuple (degree -1).  Only the machinery needed downstream
is provided: euclidean division, gcd/xgcd, derivatives, composition, and
the squarefree part -- no factorization into irreducibles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .fields import Field, Scalar


@dataclass(frozen=True)
class Poly:
    field: Field
    coeffs: Tuple[Scalar, ...]

    @classmethod
    def make(cls, field: Field, coeffs: Sequence) -> "Poly":
        cs = [field.of(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        return cls(field, tuple(cs))

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls.make(field, [1])

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls.make(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c) -> "Poly":
        return cls.make(field, [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self) -> Scalar:
        return self.coeffs[0] if self.coeffs else self.field.zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly.make(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, tuple(F.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly.zero(F)
        out = [F.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly.make(F, out)

    def scale(self, c) -> "Poly":
        F = self.field
        c = F.of(c)
        return Poly.make(F, [F.mul(c, a) for a in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(F), self
        quot = [F.zero()] * (dq + 1)
        lead_inv = F.inv(other.leading())
        for k in range(dq, -1, -1):
            c = F.mul(rem[k + other.degree], lead_inv)
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = F.sub(rem[k + i], F.mul(c, b))
        return Poly.make(F, quot), Poly.make(F, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other: "Poly") -> Tuple["Poly", "Poly", "Poly"]:
        """(g, u, v) with g = gcd monic and u*self + v*other = g."""
        F = self.field
        r0, r1 = self, other
        u0, u1 = Poly.one(F), Poly.zero(F)
        v0, v1 = Poly.zero(F), Poly.one(F)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            u0, u1 = u1, u0 - q * u1
            v0, v1 = v1, v0 - q * v1
        if r0.is_zero():
            return r0, u0, v0
        c = F.inv(r0.leading())
        return r0.scale(c), u0.scale(c), v0.scale(c)

    def lcm(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        return ((self * other) // self.gcd(other)).monic()

    # -- calculus and evaluation ------------------------------------------

    def derivative(self) -> "Poly":
        F = self.field
        return Poly.make(F, [F.mul(F.of(i), c) for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x) -> Scalar:
        F = self.field
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, F.of(x)), c)
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(t)), by Horner on polynomial values."""
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.constant(self.field, c)
        return acc

    def squarefree_part(self) -> "Poly":
        """Monic product of the distinct irreducible factors.

        Over GF(p) a factor whose multiplicity is divisible by p hides inside
        gcd(f, f'); such blocks are perfect p-th powers with the same
        coefficients (Frobenius is the identity on the prime field), so the
        p-th root is a coefficient reindexing and the computation recurses.
        """
        f = self.monic()
        if f.degree <= 0:
            return Poly.one(self.field)
        p = self.field.p
        d = f.derivative()
        if d.is_zero():
            # f is a polynomial in t^p
            return Poly(self.field, f.coeffs[::p]).squarefree_part()
        w = (f // f.gcd(d)).monic()  # factors of multiplicity not divisible by p
        c = f.gcd(d)
        while True:
            g = c.gcd(w)
            if g.degree <= 0:
                break
            c = c // g
        # c is now a perfect p-th power (empty unless char p)
        if c.degree <= 0:
            return w
        rest = Poly(self.field, c.coeffs[::p]).squarefree_part()
        return (w * rest).monic()

    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        return self.squarefree_part().degree == self.degree

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return [self.field.scalar_to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: Field, doc) -> "Poly":
        return cls.make(field, [field.scalar_from_json(c) for c in doc])

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*t^{i}" if i else f"{c}")
        return "Poly(" + " + ".join(terms) + ")"
