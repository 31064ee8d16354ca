"""Anticommutator closure of a map space and the structures it carries.

When a space of Hom-Lie structures is closed under the symmetrized product
(phi * psi = (phi psi + psi phi)/2) it is a special Jordan algebra; this
module decides closure, extracts the multiplication table, harvests
idempotent and square-zero elements through exact polynomial calculus, and
checks the twisted (conjugation-dressed) variant of the product.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .decomp import idempotent_polynomial, is_nilpotent
from .fields import Field
from .homspaces import MapSpace, is_hom_lie, module_action
from .liealg import LieAlgebra, is_automorphism
from .matrix import Matrix, Vector, apply_poly, kernel_basis
from .poly import Poly


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    """(a b + b a) / 2, the Jordan product of maps."""
    return (a * b + b * a).scale(a.field.half())


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    witness_pair: Optional[Tuple[int, int]] = None
    offending: Optional[Matrix] = None
    jordan_constants: Optional[Tuple] = None  # [i][j] -> coordinate Vector

    def to_json(self, fld: Field):
        doc = {"closed": self.closed}
        if not self.closed:
            doc["witness_pair"] = list(self.witness_pair)
            doc["offending_product"] = self.offending.to_json()
        else:
            doc["jordan_constants"] = [
                [[fld.scalar_to_json(c) for c in coords] for coords in row]
                for row in self.jordan_constants]
        return doc


def anticommutator_closure(alg: LieAlgebra, space: MapSpace) -> ClosureReport:
    """Decide whether all pairwise symmetrized products stay in the span.

    Assumes every basis element already satisfies the twisted Jacobi
    condition (the caller's obligation).  When closed, the returned
    constants express phi_i * phi_j in the given basis and are symmetric in
    the two lower indices.
    """
    k = space.dim
    constants: List[List[Optional[Vector]]] = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            prod = anticommutator(space.basis[i], space.basis[j])
            coords = space.coords_of(prod)
            if coords is None:
                return ClosureReport(False, (i, j), prod)
            constants[i][j] = coords
            constants[j][i] = coords
    return ClosureReport(True, jordan_constants=tuple(tuple(row) for row in constants))


def square_closure(alg: LieAlgebra, space: MapSpace) -> bool:
    """Closure under squaring, tested on basis squares and pairwise-sum
    squares (the linearized form)."""
    k = space.dim
    for i in range(k):
        if not space.contains(space.basis[i] * space.basis[i]):
            return False
    for i in range(k):
        for j in range(i + 1, k):
            s = space.basis[i] + space.basis[j]
            if not space.contains(s * s):
                return False
    return True


def polynomial_closure_spotcheck(alg: LieAlgebra, space: MapSpace,
                                 phi: Matrix, f: Poly) -> bool:
    """Membership of f(phi) in the span.

    Guaranteed to hold for phi in the span only when the space is closed
    under the anticommutator; this is a spot check, not an enforcement.
    """
    return space.contains(apply_poly(f, phi))


@dataclass(frozen=True)
class JordanElementFacts:
    coordinates: Optional[Vector]
    rank: int
    nilpotent: bool
    invertible: bool

    def to_json(self, fld: Field):
        return {"coordinates": None if self.coordinates is None
                else [fld.scalar_to_json(c) for c in self.coordinates],
                "rank": self.rank, "nilpotent": self.nilpotent,
                "invertible": self.invertible}


def element_facts(space: MapSpace, phi: Matrix) -> JordanElementFacts:
    rank = phi.rank()
    return JordanElementFacts(
        coordinates=space.coords_of(phi),
        rank=rank,
        nilpotent=is_nilpotent(phi),
        invertible=rank == phi.nrows)


def _candidates(space: MapSpace, budget: int, seed: int):
    """Deterministic harvest stream: basis, pairwise sums, then seeded random
    combinations (rational coefficients of height <= 3, full range mod p)."""
    F = space.algebra.field
    count = 0
    for m in space.basis:
        if count >= budget:
            return
        count += 1
        yield m
    k = space.dim
    for i in range(k):
        for j in range(i + 1, k):
            if count >= budget:
                return
            count += 1
            yield space.basis[i] + space.basis[j]
    rng = random.Random(seed)
    while count < budget:
        if F.p:
            coords = [rng.randrange(F.p) for _ in range(k)]
        else:
            coords = [rng.randint(-3, 3) for _ in range(k)]
        count += 1
        m = space.combination(coords)
        if not m.is_zero():
            yield m


def harvest_idempotents(alg: LieAlgebra, space: MapSpace, budget: int = 48,
                        seed: int = 0) -> List[Tuple[Matrix, JordanElementFacts]]:
    """Idempotents f(phi) distinct from 0 and the identity, for candidates
    phi drawn from the space.  Every returned map is verified idempotent and
    a Hom-Lie structure (the verification matters when closure fails and
    candidates leave the span)."""
    n = alg.dim
    ident = Matrix.identity(alg.field, n)
    seen = set()
    out = []
    for cand in _candidates(space, budget, seed):
        _, e = idempotent_polynomial(cand)
        if e.is_zero() or e == ident or e.data in seen:
            continue
        seen.add(e.data)
        if e * e == e and is_hom_lie(alg, e):
            out.append((e, element_facts(space, e)))
    return out


def harvest_square_zero(alg: LieAlgebra, space: MapSpace, budget: int = 48,
                        seed: int = 0) -> List[Matrix]:
    """Nonzero maps phi with phi^2 = 0, obtained by repeatedly squaring
    nilpotent candidates (nilpotency detected on the minimal polynomial)."""
    seen = set()
    out = []
    for cand in _candidates(space, budget, seed):
        if cand.is_zero() or not is_nilpotent(cand):
            continue
        psi = cand
        while not (psi * psi).is_zero():
            psi = psi * psi
        if psi.data in seen:
            continue
        seen.add(psi.data)
        if is_hom_lie(alg, psi):
            out.append(psi)
    return out


@dataclass(frozen=True)
class TraceRadicalReport:
    status: str  # "certified" over the rationals, "heuristic" mod p
    coordinates: Tuple[Vector, ...]
    maps: Tuple[Matrix, ...]

    def to_json(self, fld: Field):
        return {"status": self.status, "dimension": len(self.maps),
                "coordinates": [[fld.scalar_to_json(c) for c in v]
                                for v in self.coordinates]}


def trace_form_radical(space: MapSpace) -> TraceRadicalReport:
    """Kernel of the Gram matrix G_ij = trace(phi_i phi_j) on the span.

    Over the rationals a degenerate direction is genuinely radical; in
    positive characteristic the criterion is not certified and the result
    is labeled heuristic.
    """
    F = space.algebra.field
    k = space.dim
    gram = Matrix.from_rows(F, [[(space.basis[i] * space.basis[j]).trace()
                                 for j in range(k)] for i in range(k)])
    coords = kernel_basis(gram) if k else []
    maps = tuple(space.combination(v) for v in coords)
    status = "heuristic-positive-characteristic" if F.p else "certified-characteristic-0"
    return TraceRadicalReport(status, tuple(coords), maps)


@dataclass(frozen=True)
class TwistedClosureReport:
    closed: bool
    mode: str  # "general" or "automorphism"
    alpha_is_hom_lie: bool
    witness_pair: Optional[Tuple[int, int]] = None
    offending: Optional[Matrix] = None

    def to_json(self, fld: Field):
        doc = {"closed": self.closed, "mode": self.mode,
               "alpha_is_hom_lie": self.alpha_is_hom_lie}
        if not self.closed:
            doc["witness_pair"] = list(self.witness_pair)
        return doc


def twisted_closure(alg: LieAlgebra, space: MapSpace, alpha: Matrix,
                    mode: str = "auto") -> TwistedClosureReport:
    """Closure under the alpha-twisted product
    (phi, psi) -> Ad_alpha(phi alpha psi + psi alpha phi)/2.

    In automorphism mode the outer conjugation is dropped (the span is
    already stable under it); general mode keeps the full formula for any
    invertible alpha.  The report also records whether alpha itself
    satisfies the twisted Jacobi condition -- a necessary condition for
    closure whenever the identity lies in the space.
    """
    alpha_inv = alpha.inverse()  # raises on singular alpha
    if mode == "auto":
        mode = "automorphism" if is_automorphism(alg, alpha) else "general"
    elif mode == "automorphism" and not is_automorphism(alg, alpha):
        raise ValueError("automorphism mode requested for a non-automorphism")
    elif mode not in ("automorphism", "general"):
        raise ValueError(f"unknown mode {mode!r}")
    half = alg.field.half()
    k = space.dim
    flag = is_hom_lie(alg, alpha)
    for i in range(k):
        for j in range(i, k):
            a, b = space.basis[i], space.basis[j]
            core = (a * alpha * b + b * alpha * a).scale(half)
            if mode == "general":
                core = alpha_inv * core * alpha
            if not space.contains(core):
                return TwistedClosureReport(False, mode, flag, (i, j), core)
    return TwistedClosureReport(True, mode, flag)


def derivation_property(alg: LieAlgebra, space: MapSpace) -> bool:
    """The basis action y . phi = [phi(-), y] - phi([-, y]) is a derivation
    of the anticommutator: y.(a*b) = (y.a)*b + a*(y.b) on all basis picks."""
    k = space.dim
    for t in range(alg.dim):
        y = alg.basis_vector(t)
        acted = [module_action(alg, y, m) for m in space.basis]
        for i in range(k):
            for j in range(i, k):
                a, b = space.basis[i], space.basis[j]
                lhs = module_action(alg, y, anticommutator(a, b))
                rhs = anticommutator(acted[i], b) + anticommutator(a, acted[j])
                if lhs != rhs:
                    return False
    return True
