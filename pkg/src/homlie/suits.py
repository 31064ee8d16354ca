"""Decomposition witnesses built from subspace pairs (A, B).

Two shapes are verified: a *split* witness (A direct-sum B = L) and a
*nested* witness (A inside B with dim A + dim B = dim L), both subject to
the bracket conditions [[A,A],B] = 0 and [[B,B],A] = 0.  Constructors turn
an idempotent Hom-Lie structure into a split witness (image/kernel) and a
square-zero one into a nested witness.  Verification transcripts separate
the easy-to-miss nonzero side conditions from the bracket conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .homspaces import hom_lie_basis, is_hom_lie
from .jordan import anticommutator_closure, harvest_idempotents, harvest_square_zero
from .liealg import (LieAlgebra, Subspace, image_subspace, kernel_subspace,
                     subspace_bracket)
from .matrix import Matrix

DIAMOND = "diamond"
HEART = "heart"


@dataclass(frozen=True)
class TranscriptEntry:
    condition: str
    ok: bool
    defect: Optional[Subspace] = None

    def to_json(self):
        doc = {"condition": self.condition, "status": "pass" if self.ok else "fail"}
        if self.defect is not None:
            doc["defect"] = self.defect.to_json()
        return doc


@dataclass(frozen=True)
class Witness:
    kind: str
    a: Subspace
    b: Subspace
    transcript: Tuple[TranscriptEntry, ...]
    valid: bool

    @property
    def failure(self) -> Optional[str]:
        for entry in self.transcript:
            if not entry.ok:
                return entry.condition
        return None

    def to_json(self):
        return {"kind": self.kind, "valid": self.valid,
                "A": self.a.to_json(), "B": self.b.to_json(),
                "transcript": [e.to_json() for e in self.transcript]}


def _bracket_condition(alg: LieAlgebra, outer: Subspace, inner: Subspace,
                       label: str) -> TranscriptEntry:
    produced = subspace_bracket(alg, subspace_bracket(alg, outer, outer), inner)
    if produced.is_zero():
        return TranscriptEntry(label, True)
    return TranscriptEntry(label, False, defect=produced)


def _finish(kind: str, a: Subspace, b: Subspace,
            entries: List[TranscriptEntry]) -> Witness:
    valid = all(e.ok for e in entries)
    return Witness(kind, a, b, tuple(entries), valid)


def verify_diamond(alg: LieAlgebra, a: Subspace, b: Subspace) -> Witness:
    """Check A nonzero, B nonzero, A direct-sum B = L, and both bracket
    conditions; stops at the first failure."""
    if a.ambient != alg.dim or b.ambient != alg.dim:
        raise ValueError("subspace/algebra dimension mismatch")
    entries = []
    for label, ok in (("A nonzero", not a.is_zero()), ("B nonzero", not b.is_zero())):
        entries.append(TranscriptEntry(label, ok))
        if not ok:
            return _finish(DIAMOND, a, b, entries)
    split = a.sum(b).dim == alg.dim and a.dim + b.dim == alg.dim
    entries.append(TranscriptEntry("A (+) B = L", split))
    if not split:
        return _finish(DIAMOND, a, b, entries)
    for outer, inner, label in ((a, b, "[[A,A],B] = 0"), (b, a, "[[B,B],A] = 0")):
        entry = _bracket_condition(alg, outer, inner, label)
        entries.append(entry)
        if not entry.ok:
            return _finish(DIAMOND, a, b, entries)
    return _finish(DIAMOND, a, b, entries)


def verify_heart(alg: LieAlgebra, a: Subspace, b: Subspace) -> Witness:
    """Check A nonzero, B nonzero, A inside B, dim A + dim B = dim L, and
    both bracket conditions; stops at the first failure."""
    if a.ambient != alg.dim or b.ambient != alg.dim:
        raise ValueError("subspace/algebra dimension mismatch")
    entries = []
    checks = (("A nonzero", not a.is_zero()),
              ("B nonzero", not b.is_zero()),
              ("A within B", b.contains_subspace(a)),
              ("dim A + dim B = dim L", a.dim + b.dim == alg.dim))
    for label, ok in checks:
        entries.append(TranscriptEntry(label, ok))
        if not ok:
            return _finish(HEART, a, b, entries)
    for outer, inner, label in ((a, b, "[[A,A],B] = 0"), (b, a, "[[B,B],A] = 0")):
        entry = _bracket_condition(alg, outer, inner, label)
        entries.append(entry)
        if not entry.ok:
            return _finish(HEART, a, b, entries)
    return _finish(HEART, a, b, entries)


def diamond_from_idempotent(alg: LieAlgebra, e: Matrix) -> Witness:
    """Split witness A = im(e) (the fixed space), B = ker(e) from a
    nontrivial idempotent Hom-Lie structure."""
    n = alg.dim
    if e.shape != (n, n):
        raise ValueError("map shape does not match the algebra dimension")
    if e * e != e:
        raise ValueError("map is not idempotent")
    if e.is_zero() or e == Matrix.identity(alg.field, n):
        raise ValueError("trivial idempotent rejected")
    if not is_hom_lie(alg, e):
        raise ValueError("map is not a Hom-Lie structure")
    return verify_diamond(alg, image_subspace(e), kernel_subspace(e))


def heart_from_squarezero(alg: LieAlgebra, phi: Matrix) -> Witness:
    """Nested witness A = im(phi), B = ker(phi) from a nonzero square-zero
    Hom-Lie structure; the dimension condition holds by rank-nullity."""
    n = alg.dim
    if phi.shape != (n, n):
        raise ValueError("map shape does not match the algebra dimension")
    if phi.is_zero():
        raise ValueError("zero map rejected")
    if not (phi * phi).is_zero():
        raise ValueError("map does not square to zero")
    if not is_hom_lie(alg, phi):
        raise ValueError("map is not a Hom-Lie structure")
    return verify_heart(alg, image_subspace(phi), kernel_subspace(phi))


def diamond_search(alg: LieAlgebra, budget: int = 48, seed: int = 0) -> Optional[Witness]:
    """Search for a split witness through the idempotent-harvest pipeline.

    A `None` outcome carries no nonexistence claim beyond the budget;
    exhaustive subspace enumeration is deliberately not attempted.  When the
    space fails to close under the anticommutator the harvest keeps only
    candidates individually verified as Hom-Lie structures.
    """
    space = hom_lie_basis(alg)
    anticommutator_closure(alg, space)  # informative only; harvest self-filters
    for e, _ in harvest_idempotents(alg, space, budget=budget, seed=seed):
        witness = diamond_from_idempotent(alg, e)
        if witness.valid:
            return witness
    return None


def heart_search(alg: LieAlgebra, budget: int = 48, seed: int = 0) -> Optional[Witness]:
    """Search for a nested witness through the square-zero harvest."""
    space = hom_lie_basis(alg)
    for phi in harvest_square_zero(alg, space, budget=budget, seed=seed):
        witness = heart_from_squarezero(alg, phi)
        if witness.valid:
            return witness
    return None
