"""Lie algebras presented by structure constants, plus subspace calculus.

Brackets are stored only for basis pairs i < j, so antisymmetry holds by
construction; accessors synthesize the signed completion.  Basis-order
conventions of every constructor are frozen (documented on each) so golden
outputs stay stable.  Subspaces are normalized to a canonical RREF basis on
construction, making subspace equality plain tuple equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .fields import Field, Scalar
from .matrix import Matrix, Vector, _rref_rows, kernel_basis, kernel_from_rref


def _vzero(field: Field, n: int) -> Vector:
    return (field.zero(),) * n


def _vadd(field: Field, a: Sequence, b: Sequence) -> Vector:
    return tuple(field.add(x, y) for x, y in zip(a, b))


def _vneg(field: Field, a: Sequence) -> Vector:
    return tuple(field.neg(x) for x in a)


def _vscale(field: Field, c, a: Sequence) -> Vector:
    return tuple(field.mul(c, x) for x in a)


def _vis_zero(a: Sequence) -> bool:
    return all(not x for x in a)


class LieAlgebra:
    """Structure-constant Lie algebra; treat instances as immutable."""

    def __init__(self, field: Field, dim: int,
                 table: Dict[Tuple[int, int], Sequence], label: str = ""):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.field = field
        self.dim = dim
        self.label = label or f"liealg(dim={dim})"
        clean: Dict[Tuple[int, int], Vector] = {}
        for (i, j), vec in table.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            v = tuple(field.of(x) for x in vec)
            if len(v) != dim:
                raise ValueError("bracket vector length mismatch")
            if not _vis_zero(v):
                clean[(i, j)] = v
        self.table = clean
        self._zero = _vzero(field, dim)

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.dim == other.dim and self.table == other.table)

    def __repr__(self):
        return f"LieAlgebra({self.label}, {self.field}, dim={self.dim})"

    # -- bracket calculus --------------------------------------------------

    def basis_vector(self, i: int) -> Vector:
        v = [self.field.zero()] * self.dim
        v[i] = self.field.one()
        return tuple(v)

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[e_i, e_j], synthesizing antisymmetry from the i < j table."""
        if i == j:
            return self._zero
        if i < j:
            return self.table.get((i, j), self._zero)
        v = self.table.get((j, i))
        return _vneg(self.field, v) if v is not None else self._zero

    def bracket_vec_basis(self, v: Sequence, k: int) -> Vector:
        """[v, e_k] for a coordinate vector v."""
        F = self.field
        acc = list(self._zero)
        for m, c in enumerate(v):
            if c:
                w = self.bracket_basis(m, k)
                if w is not self._zero:
                    for r, x in enumerate(w):
                        if x:
                            acc[r] = F.add(acc[r], F.mul(c, x))
        return tuple(acc)

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        F = self.field
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector dimension mismatch")
        acc = list(self._zero)
        for (i, j), vec in self.table.items():
            c = F.sub(F.mul(F.of(x[i]), F.of(y[j])), F.mul(F.of(x[j]), F.of(y[i])))
            if c:
                for r, v in enumerate(vec):
                    if v:
                        acc[r] = F.add(acc[r], F.mul(c, v))
        return tuple(acc)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y]; column j is [x, e_j]."""
        cols = [self.bracket_vec_basis(x, j) for j in range(self.dim)]
        return Matrix(self.field, tuple(tuple(col[r] for col in cols)
                                        for r in range(self.dim)))

    # -- serialization -----------------------------------------------------

    def to_json(self):
        f = self.field
        brackets = []
        for (i, j) in sorted(self.table):
            terms = [[k, f.scalar_to_json(c)] for k, c in enumerate(self.table[(i, j)]) if c]
            brackets.append({"i": i, "j": j, "terms": terms})
        return {"field": f.to_json(), "dim": self.dim, "brackets": brackets}

    @classmethod
    def from_json(cls, doc) -> "LieAlgebra":
        field = Field.from_json(doc["field"])
        dim = int(doc["dim"])
        table: Dict[Tuple[int, int], list] = {}
        for entry in doc.get("brackets", []):
            i, j = int(entry["i"]), int(entry["j"])
            vec = [field.zero()] * dim
            for k, c in entry["terms"]:
                vec[int(k)] = field.scalar_from_json(c)
            table[(i, j)] = vec
        return cls(field, dim, table, label=doc.get("label", ""))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    triple: Optional[Tuple[int, int, int]] = None
    defect: Optional[Vector] = None

    def to_json(self, field: Field):
        if self.ok:
            return {"ok": True}
        return {"ok": False, "triple": list(self.triple),
                "defect": [field.scalar_to_json(v) for v in self.defect]}


def validate(alg: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on all basis triples i < j < k."""
    F = alg.field
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            uij = alg.bracket_basis(i, j)
            for k in range(j + 1, n):
                d = _vadd(F, alg.bracket_vec_basis(uij, k),
                          _vadd(F, alg.bracket_vec_basis(alg.bracket_basis(k, i), j),
                                alg.bracket_vec_basis(alg.bracket_basis(j, k), i)))
                if not _vis_zero(d):
                    return ValidationReport(False, (i, j, k), d)
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# constructors (basis orders are frozen conventions)
# ---------------------------------------------------------------------------

def abelian(field: Field, n: int) -> LieAlgebra:
    return LieAlgebra(field, n, {}, label=f"abelian({n})")


def sl2(field: Field) -> LieAlgebra:
    """Basis (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    table = {
        (0, 1): [0, 0, 1],    # [e,f] = h
        (0, 2): [-2, 0, 0],   # [e,h] = -2e
        (1, 2): [0, 2, 0],    # [f,h] = 2f
    }
    return LieAlgebra(field, 3, table, label="sl2")


def heisenberg(field: Field) -> LieAlgebra:
    """Basis (x, y, z) with [x,y] = z, z central."""
    return LieAlgebra(field, 3, {(0, 1): [0, 0, 1]}, label="heisenberg")


def witt_mod_p(p: int) -> LieAlgebra:
    """Witt algebra over GF(p) on basis e_0..e_{p-1} indexed by residues,
    [e_a, e_b] = (b - a) e_{a+b mod p}."""
    field = Field.prime(p)
    table = {}
    for a in range(p):
        for b in range(a + 1, p):
            c = (b - a) % p
            if c:
                vec = [0] * p
                vec[(a + b) % p] = c
                table[(a, b)] = vec
    return LieAlgebra(field, p, table, label=f"witt_mod_p({p})")


def _comb0(m: int, r: int) -> int:
    if r < 0 or r > m or m < 0:
        return 0
    return math.comb(m, r)


def zassenhaus(p: int, n: int) -> LieAlgebra:
    """Graded realization over GF(p), basis e_{-1}, e_0, ..., e_{p^n - 2}
    (basis position = index + 1), with binomial structure constants."""
    field = Field.prime(p)
    if n < 1:
        raise ValueError("n must be at least 1")
    dim = p ** n
    if dim > 128:
        raise ValueError(f"zassenhaus({p},{n}) has dimension {dim} > 128 cap")
    top = dim - 2
    table = {}
    for i in range(-1, top + 1):
        for j in range(i + 1, top + 1):
            s = i + j
            if s < -1 or s > top:
                continue
            c = (_comb0(s + 1, j) - _comb0(s + 1, i)) % p
            if c:
                vec = [0] * dim
                vec[s + 1] = c
                table[(i + 1, j + 1)] = vec
    return LieAlgebra(field, dim, table, label=f"zassenhaus({p},{n})")


def current(alg: LieAlgebra, order: int) -> LieAlgebra:
    """Tensor with truncated polynomials K[t]/(t^order); basis e_i (x) t^a at
    position a*dim + i (t-degree major)."""
    if order < 1:
        raise ValueError("truncation order must be at least 1")
    F = alg.field
    d = alg.dim
    dim = d * order
    table: Dict[Tuple[int, int], list] = {}
    for p1 in range(dim):
        a, i = divmod(p1, d)
        for p2 in range(p1 + 1, dim):
            b, j = divmod(p2, d)
            if a + b >= order:
                continue
            vec = alg.bracket_basis(i, j)
            if _vis_zero(vec):
                continue
            tgt = [F.zero()] * dim
            for r, c in enumerate(vec):
                tgt[(a + b) * d + r] = c
            table[(p1, p2)] = tgt
    return LieAlgebra(F, dim, table, label=f"current({alg.label},{order})")


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    if a.field != b.field:
        raise ValueError("field mismatch in direct sum")
    F = a.field
    dim = a.dim + b.dim
    table: Dict[Tuple[int, int], list] = {}
    for (i, j), vec in a.table.items():
        table[(i, j)] = list(vec) + [F.zero()] * b.dim
    for (i, j), vec in b.table.items():
        table[(a.dim + i, a.dim + j)] = [F.zero()] * a.dim + list(vec)
    return LieAlgebra(F, dim, table, label=f"direct_sum({a.label},{b.label})")


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of K^ambient with canonical (RREF) basis rows."""

    field: Field
    ambient: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [[field.of(x) for x in v] for v in vectors]
        for row in rows:
            if len(row) != ambient:
                raise ValueError("vector dimension mismatch")
        red, _ = _rref_rows(field, rows)
        return cls(field, ambient, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls.span(field, ambient, Matrix.identity(field, ambient).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, vec: Sequence) -> bool:
        F = self.field
        v = [F.of(x) for x in vec]
        for row in self.basis:
            piv = next(i for i, x in enumerate(row) if x)
            if v[piv]:
                c = v[piv]
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return _vis_zero(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(self.field, self.ambient, list(self.basis) + list(other.basis))

    def to_json(self):
        f = self.field
        return {"ambient": self.ambient,
                "basis": [[f.scalar_to_json(x) for x in v] for v in self.basis]}


def subspace_bracket(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Canonical basis of span{[x, y] : x in basis(a), y in basis(b)}."""
    if a.ambient != alg.dim or b.ambient != alg.dim:
        raise ValueError("subspace/algebra dimension mismatch")
    vecs = [alg.bracket(x, y) for x in a.basis for y in b.basis]
    return Subspace.span(alg.field, alg.dim, vecs)


def image_subspace(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.nrows, [m.col(j) for j in range(m.ncols)])


def kernel_subspace(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.ncols, kernel_basis(m))


def is_automorphism(alg: LieAlgebra, alpha: Matrix) -> bool:
    """True iff alpha is invertible and preserves all basis brackets."""
    if alpha.shape != (alg.dim, alg.dim):
        return False
    if alpha.rank() != alg.dim:
        return False
    cols = [alpha.col(i) for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = alpha.apply(alg.bracket_basis(i, j))
            if lhs != alg.bracket(cols[i], cols[j]):
                return False
    return True


def center_basis(alg: LieAlgebra) -> List[Vector]:
    """Canonical basis of {x : [x, e_j] = 0 for all j} (stacked ad kernel)."""
    F = alg.field
    rows = []
    for j in range(alg.dim):
        m = alg.ad(alg.basis_vector(j))
        rows.extend([list(r) for r in m.data])
    if not rows:
        return [alg.basis_vector(i) for i in range(alg.dim)]
    red, piv = _rref_rows(F, rows)
    return kernel_from_rref(F, red, piv, alg.dim)
