"""Exact dense matrices and reduced row echelon machinery.

Two elimination regimes share one contract:

* rationals -- fraction-free pivoting on primitive integer rows (cross
  multiply, then divide out the content) so intermediate values stay
  bounded; pivots are normalized to 1 only at the end;
* GF(p) -- plain modular elimination, with a numpy block path used by the
  streaming solver for the large homogeneous systems.

RREF is unique, so every path produces identical canonical output.  The
canonical kernel basis sets each free variable to 1 in turn (others 0) and
solves the pivot variables; vectors are ordered by free column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .fields import Field, Scalar
from .poly import Poly

Vector = Tuple[Scalar, ...]


# ---------------------------------------------------------------------------
# row-level elimination on plain Python lists
# ---------------------------------------------------------------------------

def _rref_rows_gf(p: int, rows: List[List[int]]) -> Tuple[List[List[int]], List[int]]:
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r == m:
            break
        for i in range(r, m):
            if rows[i][c]:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    nz = [row for row in rows if any(row)]
    return nz, pivots


def _primitive(row: List[int]) -> List[int]:
    g = 0
    for v in row:
        if v:
            g = math.gcd(g, v if v > 0 else -v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def _rref_rows_q(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    # clear denominators and strip content: every working row is a primitive
    # integer vector until the final normalization
    work: List[List[int]] = []
    for row in rows:
        den = 1
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
        work.append(_primitive([int(v * den) for v in row]))
    m = len(work)
    n = len(work[0]) if m else 0
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r == m:
            break
        for i in range(r, m):
            if work[i][c]:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        a = work[r][c]
        for i in range(m):
            b = work[i][c]
            if i != r and b:
                work[i] = _primitive([a * x - b * y for x, y in zip(work[i], work[r])])
        pivots.append(c)
        r += 1
    out = []
    for row, c in zip(work, pivots):
        piv = Fraction(row[c])
        out.append([Fraction(v) / piv for v in row])
    return out, pivots


def _rref_rows(field: Field, rows: List[List[Scalar]]) -> Tuple[List[List[Scalar]], List[int]]:
    if field.p:
        return _rref_rows_gf(field.p, [list(r) for r in rows])
    return _rref_rows_q([[Fraction(v) for v in r] for r in rows])


def kernel_from_rref(field: Field, rref_rows: Sequence[Sequence[Scalar]],
                     pivots: Sequence[int], ncols: int) -> List[Vector]:
    """Canonical kernel basis: one vector per free column, in column order."""
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero()] * ncols
        v[f] = field.one()
        for row, c in zip(rref_rows, pivots):
            v[c] = field.neg(row[f])
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    field: Field
    data: Tuple[Vector, ...]

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        data = tuple(tuple(field.of(v) for v in row) for row in rows)
        if data:
            w = len(data[0])
            if any(len(r) != w for r in data):
                raise ValueError("ragged rows")
        return cls(field, data)

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero()
        return cls(field, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> "Matrix":
        z = field.zero()
        es = [field.of(v) for v in entries]
        n = len(es)
        return cls(field, tuple(tuple(es[i] if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, field: Field, nrows: int, ncols: int, i: int, j: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, tuple(tuple(o if (r, c) == (i, j) else z for c in range(ncols))
                                for r in range(nrows)))

    @classmethod
    def from_flat(cls, field: Field, nrows: int, ncols: int, flat: Sequence) -> "Matrix":
        vals = [field.of(v) for v in flat]
        if len(vals) != nrows * ncols:
            raise ValueError("flat length mismatch")
        return cls(field, tuple(tuple(vals[r * ncols + c] for c in range(ncols))
                                for r in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.data)

    @property
    def ncols(self) -> int:
        return len(self.data[0]) if self.data else 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, i: int) -> Vector:
        return self.data[i]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def flatten(self) -> Vector:
        """Row-major flattening, entry (a, b) at index a*ncols + b."""
        return tuple(v for row in self.data for v in row)

    def _check_same_field(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError("mixed-field matrices")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        return Matrix(F, tuple(tuple(F.add(a, b) for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        F = self.field
        return Matrix(F, tuple(tuple(F.neg(v) for v in row) for row in self.data))

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F.of(c)
        return Matrix(F, tuple(tuple(F.mul(c, v) for v in row) for row in self.data))

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        F = self.field
        cols = [other.col(j) for j in range(other.ncols)]
        out = []
        for row in self.data:
            new = []
            for col in cols:
                acc = F.zero()
                for a, b in zip(row, col):
                    if a and b:
                        acc = F.add(acc, F.mul(a, b))
                new.append(acc)
            out.append(tuple(new))
        return Matrix(F, tuple(out))

    def apply(self, vec: Sequence) -> Vector:
        F = self.field
        v = [F.of(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.data:
            acc = F.zero()
            for a, b in zip(row, v):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(self.col(j) for j in range(self.ncols)))

    def trace(self) -> Scalar:
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        F = self.field
        acc = F.zero()
        for i in range(self.nrows):
            acc = F.add(acc, self.data[i][i])
        return acc

    def is_zero(self) -> bool:
        return all(not v for row in self.data for v in row)

    def pow_int(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        acc = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    def rank(self) -> int:
        return rref(self).rank

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        F = self.field
        aug = [list(self.data[i]) + [F.one() if j == i else F.zero() for j in range(n)]
               for i in range(n)]
        rows, pivots = _rref_rows(F, aug)
        if pivots != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix(F, tuple(tuple(rows[i][n:]) for i in range(n)))

    def to_json(self):
        f = self.field
        return {"rows": self.nrows, "cols": self.ncols,
                "entries": [[f.scalar_to_json(v) for v in row] for row in self.data]}

    @classmethod
    def from_json(cls, field: Field, doc) -> "Matrix":
        m = cls.from_rows(field, doc["entries"])
        if m.shape != (doc["rows"], doc["cols"]):
            raise ValueError("matrix document shape mismatch")
        return m

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.data)
        return f"Matrix({self.field}, [{body}])"


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    rank: int
    pivots: Tuple[int, ...]


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form, rank, and pivot columns."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.data])
    z = [m.field.zero()] * m.ncols
    full = rows + [z] * (m.nrows - len(rows))
    return RrefResult(Matrix.from_rows(m.field, full), len(pivots), tuple(pivots))


def kernel_basis(m: Matrix) -> List[Vector]:
    """Canonical basis of the right kernel {v : m v = 0}."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.data])
    return kernel_from_rref(m.field, rows, pivots, m.ncols)


def apply_poly(f: Poly, m: Matrix) -> Matrix:
    """f(m) by Horner's scheme."""
    if not m.is_square():
        raise ValueError("polynomial of non-square matrix")
    F = m.field
    acc = Matrix.zero(F, m.nrows, m.nrows)
    for c in reversed(f.coeffs):
        acc = acc * m
        if c:
            acc = acc + Matrix.identity(F, m.nrows).scale(c)
    return acc


def random_matrix(field: Field, nrows: int, ncols: int, rng, height: int = 3) -> Matrix:
    """Seeded random matrix; GF(p) entries cover the full range, rational
    entries are integers of absolute value at most ``height``."""
    if field.p:
        return Matrix.from_rows(field, [[rng.randrange(field.p) for _ in range(ncols)]
                                        for _ in range(nrows)])
    return Matrix.from_rows(field, [[rng.randint(-height, height) for _ in range(ncols)]
                                    for _ in range(nrows)])


# ---------------------------------------------------------------------------
# streaming kernel solver
# ---------------------------------------------------------------------------

def _exact_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact while inner * (p-1)^2 < 2^53; fall back to int64
    if b.shape[0] * (p - 1) * (p - 1) < 2 ** 52:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return a @ b


def _rref_block(block: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    m, n = block.shape
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(block[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            block[[r, i]] = block[[i, r]]
        inv = pow(int(block[r, c]), -1, p)
        block[r] = block[r] * inv % p
        hit = np.nonzero(block[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            block[hit] = (block[hit] - np.outer(block[hit, c], block[r])) % p
        pivots.append(c)
        r += 1
    return block[:r], pivots


class KernelStream:
    """Incremental kernel solver for a large homogeneous system.

    Rows arrive in blocks; the current RREF is maintained throughout, so the
    peak memory is one block plus the (rank x ncols) state.  Over GF(p) the
    blocks are numpy int64 and reduction against the accumulated RREF is one
    exact matrix product; over the rationals rows are collected and
    eliminated at the end (rational systems stay at desk scale).
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows_seen = 0
        if field.p:
            self._state = np.zeros((0, ncols), dtype=np.int64)
            self._pivots: List[int] = []
        else:
            self._rows: List[List[Scalar]] = []

    def add_rows(self, rows) -> None:
        """Absorb a block: a numpy array (GF(p)) or a list of scalar rows."""
        if self.field.p:
            block = np.asarray(rows, dtype=np.int64) % self.field.p
            if block.ndim != 2 or block.shape[1] != self.ncols:
                raise ValueError("block shape mismatch")
            self.rows_seen += block.shape[0]
            self._absorb_gf(block)
        else:
            self.rows_seen += len(rows)
            self._rows.extend([list(r) for r in rows])

    def _absorb_gf(self, block: np.ndarray) -> None:
        p = self.field.p
        if self._state.shape[0]:
            coef = block[:, self._pivots]
            if coef.any():
                block = (block - _exact_matmul(coef, self._state, p)) % p
        block = block[block.any(axis=1)]
        if not block.shape[0]:
            return
        newrows, newpivs = _rref_block(block, p)
        if self._state.shape[0]:
            coef = self._state[:, newpivs]
            if coef.any():
                self._state = (self._state - _exact_matmul(coef, newrows, p)) % p
        merged = np.vstack([self._state, newrows])
        pivs = self._pivots + newpivs
        order = sorted(range(len(pivs)), key=lambda i: pivs[i])
        self._state = merged[order]
        self._pivots = [pivs[i] for i in order]

    def _finish(self) -> Tuple[List[List[Scalar]], List[int]]:
        if self.field.p:
            rows = [[int(v) for v in row] for row in self._state]
            return rows, list(self._pivots)
        return _rref_rows(self.field, self._rows)

    @property
    def rank(self) -> int:
        if self.field.p:
            return self._state.shape[0]
        rows, _ = _rref_rows(self.field, self._rows)
        return len(rows)

    def kernel(self) -> List[Vector]:
        rows, pivots = self._finish()
        return kernel_from_rref(self.field, rows, pivots, self.ncols)
