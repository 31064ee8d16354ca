"""Spectral-free exact decompositions of square matrices.

char_poly uses a Hessenberg reduction (divisions are fine in both supported
fields), min_poly takes the lcm of Krylov relation polynomials, and the
semisimple/nilpotent splitting runs a Newton iteration on the squarefree
part of the minimal polynomial, entirely inside K[t]/(min_poly) so the
semisimple part is explicitly a polynomial in the input.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .fields import Field
from .matrix import Matrix, apply_poly
from .poly import Poly


def _require_square(m: Matrix):
    if not m.is_square():
        raise ValueError("expected a square matrix")


def char_poly(m: Matrix) -> Poly:
    """Monic characteristic polynomial det(t*I - m)."""
    _require_square(m)
    F = m.field
    n = m.nrows
    h = [list(row) for row in m.data]
    # similarity reduction to upper Hessenberg form
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        for i in range(j + 2, n):
            if h[i][j]:
                f = F.div(h[i][j], h[j + 1][j])
                h[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = F.add(row[j + 1], F.mul(f, row[i]))
    # char polys of leading principal blocks of a Hessenberg matrix
    polys = [Poly.one(F)]
    for k in range(1, n + 1):
        t_minus = Poly.make(F, [F.neg(h[k - 1][k - 1]), F.one()])
        acc = t_minus * polys[k - 1]
        prod = F.one()
        for i in range(1, k):
            prod = F.mul(prod, h[k - i][k - i - 1])
            if not prod:
                break
            coeff = F.mul(h[k - 1 - i][k - 1], prod)
            if coeff:
                acc = acc - polys[k - 1 - i].scale(coeff)
        polys.append(acc)
    return polys[n]


def _krylov_relation(m: Matrix, v) -> Poly:
    """Least-degree monic g with g(m) v = 0."""
    F = m.field
    rows: List[Tuple[list, list, int]] = []
    cur = list(v)
    k = 0
    while True:
        coeff = [F.zero()] * k + [F.one()]
        vec = list(cur)
        for rvec, rcoef, rpiv in rows:
            if vec[rpiv]:
                lam = F.div(vec[rpiv], rvec[rpiv])
                vec = [F.sub(a, F.mul(lam, b)) for a, b in zip(vec, rvec)]
                for i, c in enumerate(rcoef):
                    coeff[i] = F.sub(coeff[i], F.mul(lam, c))
        piv: Optional[int] = None
        for i, val in enumerate(vec):
            if val:
                piv = i
                break
        if piv is None:
            return Poly.make(F, coeff)
        rows.append((vec, coeff, piv))
        cur = list(m.apply(cur))
        k += 1


def min_poly(m: Matrix) -> Poly:
    """Monic minimal polynomial, the least-degree annihilator of m."""
    _require_square(m)
    F = m.field
    n = m.nrows
    acc = Poly.one(F)
    for i in range(n):
        e = [F.zero()] * n
        e[i] = F.one()
        acc = acc.lcm(_krylov_relation(m, e))
        if acc.degree == n:
            break
    return acc


def jordan_chevalley(m: Matrix) -> Tuple[Poly, Matrix, Matrix]:
    """(f, s, n) with s = f(m) semisimple, n = m - s nilpotent, s n = n s.

    Newton iteration on the squarefree part r of the minimal polynomial,
    carried out in K[t]/(min_poly); r' stays invertible there because
    gcd(r, r') = 1 for a separable r.
    """
    _require_square(m)
    F = m.field
    mu = min_poly(m)
    rad = mu.squarefree_part()
    if rad.degree == mu.degree:
        return Poly.x(F), m, Matrix.zero(F, m.nrows, m.nrows)
    s = Poly.x(F)
    rad_d = rad.derivative()
    for _ in range(m.nrows.bit_length() + 2):
        val = rad.compose(s) % mu
        if val.is_zero():
            break
        der = rad_d.compose(s) % mu
        g, u, _ = der.xgcd(mu)
        if g.degree != 0:
            raise ArithmeticError("derivative not invertible modulo the minimal polynomial")
        inv = u.scale(F.inv(g.constant_term()))
        s = (s - val * inv) % mu
    else:
        raise ArithmeticError("semisimple-part iteration failed to converge")
    semi = apply_poly(s, m)
    return s, semi, m - semi


def idempotent_polynomial(m: Matrix) -> Tuple[Poly, Matrix]:
    """(f, e) with e = f(m) idempotent of the same rank as the semisimple
    part of m (equal to rank(m) when the kernel carries no nilpotency).

    Nondegenerate maps take f = 1 - charpoly/charpoly(0), so e is the
    identity; semisimple singular maps split min_poly = t*g with g(0) != 0
    and interpolate f = 0 (mod t), f = 1 (mod g); everything else routes
    through the semisimple part, which is itself a polynomial in m.
    """
    _require_square(m)
    F = m.field
    mu = min_poly(m)
    if mu.is_squarefree():
        if mu.constant_term():
            chi = char_poly(m)
            f = Poly.one(F) - chi.scale(F.inv(chi.constant_term()))
        else:
            t = Poly.x(F)
            g = Poly(F, mu.coeffs[1:])
            one, u, _ = t.xgcd(g)
            if one.degree != 0:
                raise ArithmeticError("squarefree minimal polynomial with repeated root at 0")
            f = (u.scale(F.inv(one.constant_term())) * t) % mu
        return f, apply_poly(f, m)
    h, semi, _ = jordan_chevalley(m)
    g, _ = idempotent_polynomial(semi)
    f = g.compose(h) % mu
    return f, apply_poly(f, m)


def is_nilpotent(m: Matrix) -> bool:
    """True iff the minimal polynomial is a power of t."""
    _require_square(m)
    mu = min_poly(m)
    return all(not c for c in mu.coeffs[:-1])
