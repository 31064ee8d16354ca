"""Hom-Lie structure spaces and the centroid as exact kernel computations.

A linear self-map phi is encoded by the n x n unknown matrix phi_{ab},
flattened row-major (unknown a*n + b).  Equation rows for the twisted
Jacobi condition are generated per basis triple i < j < k only -- the
underlying trilinear form is alternating in characteristic != 2, so the
full enumeration adds nothing (kept as a test, not the production path).
Over GF(p) row blocks are assembled as numpy arrays and fed to the
streaming eliminator; over the rationals the systems stay small and go
through the fraction-free path.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .fields import Field, Scalar
from .liealg import LieAlgebra, _vadd, _vis_zero, is_automorphism
from .matrix import KernelStream, Matrix, Vector

# the (dim choose 3) * dim row systems stay desk-scale up to here
SOLVER_CAP = 32


def _check_solver_cap(alg: LieAlgebra, what: str):
    if alg.dim > SOLVER_CAP:
        raise ValueError(f"{what} is capped at dimension {SOLVER_CAP}; "
                         f"algebra has dimension {alg.dim}")


# ---------------------------------------------------------------------------
# map spaces
# ---------------------------------------------------------------------------

def _rref_with_transform(field: Field, rows: List[List[Scalar]]):
    """(rref_rows, pivots, u) with rref = u * rows; raises on dependent rows."""
    k = len(rows)
    n = len(rows[0]) if k else 0
    work = [list(r) + [field.one() if t == i else field.zero() for t in range(k)]
            for i, r in enumerate(rows)]
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r == k:
            break
        for i in range(r, k):
            if work[i][c]:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        inv = field.inv(work[r][c])
        work[r] = [field.mul(inv, v) for v in work[r]]
        for i in range(k):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    if r < k:
        raise ValueError("dependent spanning set")
    red = [row[:n] for row in work]
    transform = [tuple(row[n:]) for row in work]
    return red, pivots, transform


class MapSpace:
    """Subspace of linear self-maps of an algebra, with a fixed ordered basis.

    Membership tests reuse one cached row reduction of the flattened basis,
    so span queries against the same space cost a single back-substitution.
    """

    def __init__(self, algebra: LieAlgebra, maps: Sequence[Matrix],
                 system_shape: Optional[Tuple[int, int]] = None):
        self.algebra = algebra
        self.basis = tuple(maps)
        self.system_shape = system_shape
        n = algebra.dim
        for m in self.basis:
            if m.shape != (n, n):
                raise ValueError("map shape does not match the algebra dimension")
        rows = [list(m.flatten()) for m in self.basis]
        self._red, self._pivots, self._transform = _rref_with_transform(algebra.field, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_of(self, target) -> Optional[Vector]:
        """Coordinates of a map (or flat vector) in this basis, or None."""
        F = self.algebra.field
        v = list(target.flatten()) if isinstance(target, Matrix) else [F.of(x) for x in target]
        coef = []
        for row, piv in zip(self._red, self._pivots):
            c = v[piv]
            coef.append(c)
            if c:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        if not _vis_zero(v):
            return None
        out = [F.zero()] * self.dim
        for c, urow in zip(coef, self._transform):
            if c:
                for t, u in enumerate(urow):
                    if u:
                        out[t] = F.add(out[t], F.mul(c, u))
        return tuple(out)

    def contains(self, target) -> bool:
        return self.coords_of(target) is not None

    def combination(self, coords: Sequence) -> Matrix:
        F = self.algebra.field
        n = self.algebra.dim
        acc = Matrix.zero(F, n, n)
        for c, m in zip(coords, self.basis):
            c = F.of(c)
            if c:
                acc = acc + m.scale(c)
        return acc

    def to_json(self):
        doc = {"dimension": self.dim, "maps": [m.to_json() for m in self.basis]}
        if self.system_shape is not None:
            doc["system"] = {"rows": self.system_shape[0], "cols": self.system_shape[1]}
        return doc


# ---------------------------------------------------------------------------
# equation rows
# ---------------------------------------------------------------------------

def _triple_rows(alg: LieAlgebra, i: int, j: int, k: int) -> List[List[Scalar]]:
    """Rows of [[e_i,e_j],phi(e_k)] + [[e_k,e_i],phi(e_j)] + [[e_j,e_k],phi(e_i)] = 0."""
    F = alg.field
    n = alg.dim
    parts = [(alg.ad(alg.bracket_basis(i, j)), k),
             (alg.ad(alg.bracket_basis(k, i)), j),
             (alg.ad(alg.bracket_basis(j, k)), i)]
    rows = []
    for m in range(n):
        row = [F.zero()] * (n * n)
        for mat, c in parts:
            mrow = mat[m]
            for r in range(n):
                if mrow[r]:
                    row[r * n + c] = F.add(row[r * n + c], mrow[r])
        rows.append(row)
    return rows


def _basis_ads_np(alg: LieAlgebra) -> np.ndarray:
    n = alg.dim
    out = np.zeros((n, n, n), dtype=np.int64)
    for m in range(n):
        ad = alg.ad(alg.basis_vector(m))
        out[m] = np.array([[int(v) for v in row] for row in ad.data], dtype=np.int64)
    return out


def _hom_lie_stream_gf(alg: LieAlgebra, stream: KernelStream) -> int:
    p = alg.field.p
    n = alg.dim
    ads = _basis_ads_np(alg)
    pair_ad: Dict[Tuple[int, int], np.ndarray] = {}
    for i in range(n):
        for j in range(i + 1, n):
            u = np.array([int(v) for v in alg.bracket_basis(i, j)], dtype=np.int64)
            pair_ad[(i, j)] = np.tensordot(u, ads, axes=(0, 0)) % p
    def pad(a: int, b: int) -> np.ndarray:
        return pair_ad[(a, b)] if a < b else (-pair_ad[(b, a)]) % p
    per_chunk = max(1, 1536 // n)
    chunk: List[np.ndarray] = []
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                z = np.zeros((n, n, n), dtype=np.int64)
                z[:, :, k] += pad(i, j)
                z[:, :, j] += pad(k, i)
                z[:, :, i] += pad(j, k)
                chunk.append(z.reshape(n, n * n))
                count += 1
                if len(chunk) >= per_chunk:
                    stream.add_rows(np.concatenate(chunk))
                    chunk = []
    if chunk:
        stream.add_rows(np.concatenate(chunk))
    return count


def hom_lie_basis(alg: LieAlgebra) -> MapSpace:
    """Canonical basis of all maps satisfying the twisted Jacobi condition."""
    _check_solver_cap(alg, "hom_lie_basis")
    n = alg.dim
    F = alg.field
    stream = KernelStream(F, n * n)
    if F.p:
        triples = _hom_lie_stream_gf(alg, stream)
    else:
        triples = 0
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    stream.add_rows(_triple_rows(alg, i, j, k))
                    triples += 1
    vectors = stream.kernel()
    maps = [Matrix.from_flat(F, n, n, v) for v in vectors]
    return MapSpace(alg, maps, system_shape=(triples * n, n * n))


def is_hom_lie(alg: LieAlgebra, phi: Matrix) -> bool:
    """Direct evaluation of the twisted Jacobi condition on basis triples.

    Deliberately independent of the kernel solver, so the two routes
    cross-check each other.
    """
    if phi.shape != (alg.dim, alg.dim):
        raise ValueError("map shape does not match the algebra dimension")
    F = alg.field
    n = alg.dim
    cols = [phi.col(c) for c in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            uij = alg.bracket_basis(i, j)
            for k in range(j + 1, n):
                d = _vadd(F, alg.bracket(uij, cols[k]),
                          _vadd(F, alg.bracket(alg.bracket_basis(k, i), cols[j]),
                                alg.bracket(alg.bracket_basis(j, k), cols[i])))
                if not _vis_zero(d):
                    return False
    return True


def _centroid_rows(alg: LieAlgebra, i: int, j: int) -> List[List[Scalar]]:
    """Rows of phi([e_i,e_j]) - [phi(e_i), e_j] = 0."""
    F = alg.field
    n = alg.dim
    u = alg.bracket_basis(i, j)
    rows = []
    for m in range(n):
        row = [F.zero()] * (n * n)
        for c in range(n):
            if u[c]:
                row[m * n + c] = F.add(row[m * n + c], u[c])
        for r in range(n):
            w = alg.bracket_basis(r, j)
            if w[m]:
                row[r * n + i] = F.sub(row[r * n + i], w[m])
        rows.append(row)
    return rows


def centroid_basis(alg: LieAlgebra) -> MapSpace:
    """Canonical basis of maps commuting into the bracket,
    phi([x,y]) = [phi(x),y], enumerated over all ordered basis pairs."""
    _check_solver_cap(alg, "centroid_basis")
    n = alg.dim
    F = alg.field
    stream = KernelStream(F, n * n)
    if F.p:
        p = F.p
        ads = _basis_ads_np(alg)
        chunk = []
        for i in range(n):
            for j in range(n):
                u = np.array([int(v) for v in alg.bracket_basis(i, j)], dtype=np.int64)
                z = np.zeros((n, n, n), dtype=np.int64)
                idx = np.arange(n)
                z[idx, idx, :] = u
                # [phi(e_i), e_j]_m = sum_r phi_{ri} [e_r, e_j]_m and
                # [e_r, e_j] = -ad(e_j) e_r, so the subtraction flips to +ad_j
                z[:, :, i] += ads[j]
                chunk.append(z.reshape(n, n * n))
                if len(chunk) * n >= 1536:
                    stream.add_rows(np.concatenate(chunk))
                    chunk = []
        if chunk:
            stream.add_rows(np.concatenate(chunk))
    else:
        for i in range(n):
            for j in range(n):
                stream.add_rows(_centroid_rows(alg, i, j))
    vectors = stream.kernel()
    maps = [Matrix.from_flat(F, n, n, v) for v in vectors]
    return MapSpace(alg, maps, system_shape=(n * n * n, n * n))


# ---------------------------------------------------------------------------
# module action and conjugation
# ---------------------------------------------------------------------------

def module_action(alg: LieAlgebra, y: Sequence, phi: Matrix) -> Matrix:
    """Matrix of x -> [phi(x), y] - phi([x, y])."""
    F = alg.field
    n = alg.dim
    y = tuple(F.of(v) for v in y)
    cols = []
    for c in range(n):
        v1 = alg.bracket(phi.col(c), y)
        inner = alg.bracket(alg.basis_vector(c), y)
        v2 = phi.apply(inner)
        cols.append(tuple(F.sub(a, b) for a, b in zip(v1, v2)))
    return Matrix(F, tuple(tuple(col[r] for col in cols) for r in range(n)))


def check_submodule(alg: LieAlgebra, space: MapSpace) -> bool:
    """True iff the space is stable under the action of every basis element."""
    for i in range(alg.dim):
        y = alg.basis_vector(i)
        for phi in space.basis:
            if not space.contains(module_action(alg, y, phi)):
                return False
    return True


def conjugate(phi: Matrix, alpha: Matrix) -> Matrix:
    """alpha^{-1} o phi o alpha; raises on singular alpha."""
    return alpha.inverse() * phi * alpha


def check_ad_invariance(alg: LieAlgebra, space: MapSpace, alpha: Matrix) -> bool:
    """True iff conjugation by the automorphism alpha preserves the span."""
    if not is_automorphism(alg, alpha):
        raise ValueError("alpha is not an automorphism of the algebra")
    return all(space.contains(conjugate(phi, alpha)) for phi in space.basis)
