"""Dense exact linear algebra over a Field.

Vectors are tuples of scalars.  Matrices are immutable row-major tuples of
row tuples with a field tag.  Elimination uses first-nonzero pivoting and
produces reduced echelon forms, so kernels, solutions and inverses are
canonical: the same input always yields byte-identical output.

Over a prime field, large eliminations switch to an int64 numpy backend.
All numpy arithmetic stays in machine integers reduced mod p, so results
are exact and identical to the generic path (property-tested).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import FieldMismatchError, ShapeError, SingularError
from .scalars import Field, PrimeField

# beyond this many cells, prime-field elimination goes through numpy
_NUMPY_CELLS = 4096


def zero_vec(field: Field, n: int) -> tuple:
    return (field.zero(),) * n


def basis_vec(field: Field, n: int, i: int) -> tuple:
    z, o = field.zero(), field.one()
    return tuple(o if j == i else z for j in range(n))


def vadd(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.normalize(a + b) for a, b in zip(u, v, strict=True))


def vsub(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.normalize(a - b) for a, b in zip(u, v, strict=True))


def vscale(field: Field, c, v: Sequence) -> tuple:
    return tuple(field.normalize(c * a) for a in v)


def dot(field: Field, u: Sequence, v: Sequence):
    acc = field.zero()
    for a, b in zip(u, v, strict=True):
        acc = acc + a * b
    return field.normalize(acc)


def is_zero_vec(field: Field, v: Sequence) -> bool:
    z = field.zero()
    return all(a == z for a in v)


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ShapeError("ragged rows")

    @staticmethod
    def from_rows(field: Field, rows: Iterable[Iterable]) -> "Matrix":
        return Matrix(field, tuple(tuple(field.normalize(x) for x in r) for r in rows))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        return Matrix(field, tuple(basis_vec(field, n, i) for i in range(n)))

    @staticmethod
    def zeros(field: Field, m: int, n: int) -> "Matrix":
        return Matrix(field, tuple(zero_vec(field, n) for _ in range(m)))

    @staticmethod
    def from_columns(field: Field, cols: Iterable[Iterable]) -> "Matrix":
        cols = [tuple(c) for c in cols]
        return Matrix.from_rows(field, zip(*cols)) if cols else Matrix(field, ())

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError("matrices over different fields")

    def mul(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"{self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        norm = self.field.normalize
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            out.append(tuple(norm(sum(a * b for a, b in zip(r, c))) for c in cols))
        return Matrix(self.field, tuple(out))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.mul(other)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ShapeError("vector length mismatch")
        norm = self.field.normalize
        return tuple(norm(sum(a * b for a, b in zip(r, vec))) for r in self.rows)

    def add(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, tuple(vadd(self.field, a, b) for a, b in zip(self.rows, other.rows, strict=True)))

    def sub(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, tuple(vsub(self.field, a, b) for a, b in zip(self.rows, other.rows, strict=True)))

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, tuple(vscale(self.field, c, r) for r in self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        z, o = self.field.zero(), self.field.one()
        return all(x == (o if i == j else z) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return all(is_zero_vec(self.field, r) for r in self.rows)

    def pow_(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ShapeError("power of non-square matrix")
        acc = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                acc = acc.mul(base)
            base_needed = k >> 1
            if base_needed:
                base = base.mul(base)
            k = base_needed
        return acc

    # -- elimination ------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        rows, pivots = _rref(self.field, [list(r) for r in self.rows])
        return Matrix(self.field, tuple(tuple(r) for r in rows)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> tuple[tuple, ...]:
        """Canonical basis of the right kernel: reduced-echelon row vectors."""
        red, pivots = self.rref()
        n = self.ncols
        free = [j for j in range(n) if j not in pivots]
        vecs = []
        z, o = self.field.zero(), self.field.one()
        for f in free:
            v = [z] * n
            v[f] = o
            for r, pc in enumerate(pivots):
                v[pc] = self.field.neg(red.rows[r][f])
            vecs.append(tuple(v))
        return canonical_basis(self.field, vecs)

    def solve(self, rhs: Sequence) -> Optional[tuple]:
        """One exact solution of self @ x = rhs with free variables set to
        zero, or None when the system is inconsistent."""
        if len(rhs) != self.nrows:
            raise ShapeError("rhs length mismatch")
        aug = [list(r) + [self.field.normalize(b)] for r, b in zip(self.rows, rhs)]
        if not aug:
            return ()
        rows, pivots = _rref(self.field, aug)
        n = self.ncols
        if n in pivots:
            return None
        z = self.field.zero()
        x = [z] * n
        for r, pc in enumerate(pivots):
            x[pc] = rows[r][n]
        for r in range(len(pivots), len(rows)):
            if rows[r][n] != z:
                return None
        return tuple(x)

    def solve_matrix(self, rhs: "Matrix") -> Optional["Matrix"]:
        """Columnwise solve; None if any column is inconsistent."""
        cols = []
        for j in range(rhs.ncols):
            x = self.solve(rhs.col(j))
            if x is None:
                return None
            cols.append(x)
        return Matrix.from_columns(self.field, cols)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ShapeError("inverse of non-square matrix")
        o, z = self.field.one(), self.field.zero()
        aug = [list(r) + [o if i == j else z for j in range(n)] for i, r in enumerate(self.rows)]
        rows, pivots = _rref(self.field, aug)
        if list(pivots[:n]) != list(range(n)):
            raise SingularError("matrix not invertible")
        return Matrix(self.field, tuple(tuple(rows[i][n:]) for i in range(n)))

    def det(self):
        n = self.nrows
        if n != self.ncols:
            raise ShapeError("determinant of non-square matrix")
        field = self.field
        rows = [list(r) for r in self.rows]
        z = field.zero()
        det = field.one()
        for c in range(n):
            piv = next((r for r in range(c, n) if rows[r][c] != z), None)
            if piv is None:
                return z
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = field.neg(det)
            det = field.normalize(det * rows[c][c])
            inv = field.inv(rows[c][c])
            for r in range(c + 1, n):
                f = field.normalize(rows[r][c] * inv)
                if f != z:
                    rows[r] = [field.normalize(a - f * b) for a, b in zip(rows[r], rows[c])]
        return det

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"


def matrix_order(M: Matrix, cap: int) -> Optional[int]:
    """Smallest k >= 1 with M^k = I, or None if no such k <= cap."""
    if M.nrows != M.ncols:
        raise ShapeError("order of non-square matrix")
    acc = M
    for k in range(1, cap + 1):
        if acc.is_identity():
            return k
        acc = acc.mul(M)
    return None


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row-major pair indexing on both axes."""
    if a.field != b.field:
        raise FieldMismatchError("kronecker over different fields")
    norm = a.field.normalize
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(norm(x * y) for x in ra for y in rb))
    return Matrix(a.field, tuple(rows))


def canonical_basis(field: Field, vectors: Iterable[Sequence]) -> tuple[tuple, ...]:
    """Canonical (reduced-echelon) basis of the span of the given vectors."""
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        return ()
    rows, pivots = _rref(field, [list(v) for v in vecs])
    return tuple(tuple(rows[i]) for i in range(len(pivots)))


def span_contains(field: Field, echelon_basis: Sequence[Sequence], v: Sequence) -> bool:
    return is_zero_vec(field, reduce_mod_span(field, echelon_basis, v))


def reduce_mod_span(field: Field, echelon_basis: Sequence[Sequence], v: Sequence) -> tuple:
    """Reduce v against reduced-echelon rows (canonical coset representative)."""
    w = list(field.normalize(x) for x in v)
    z = field.zero()
    for row in echelon_basis:
        lead = next((j for j, x in enumerate(row) if x != z), None)
        if lead is None:
            continue
        c = field.normalize(w[lead] * field.inv(row[lead]))
        if c != z:
            w = [field.normalize(a - c * b) for a, b in zip(w, row)]
    return tuple(w)


def span_equal(field: Field, vs: Iterable[Sequence], ws: Iterable[Sequence]) -> bool:
    return canonical_basis(field, vs) == canonical_basis(field, ws)


def iterated_kernel_sparse(field: Field, dim: int, constraints) -> tuple[tuple, ...]:
    """Canonical basis of the joint kernel of a family of dim x dim operators.

    constraints: iterable of sparse operators as {(row, col): scalar} dicts.
    The intersection is refined one constraint at a time, so the ambient
    dim^2-row system is never materialized; over a machine-word prime field
    the refinement runs on int64 numpy arrays.
    """
    # gate keeps every int64 accumulation p^2 * dim well below 2^63
    if isinstance(field, PrimeField) and field.p < 2**24 and dim < 2**14:
        return _iterated_kernel_modp(field, dim, constraints)
    # columns of K span the current candidate subspace
    K = [basis_vec(field, dim, i) for i in range(dim)]
    for sp in constraints:
        if not K:
            break
        z = field.zero()
        ck_rows = []
        for r in range(dim):
            ck_rows.append([z] * len(K))
        for (r, c), val in sp.items():
            val = field.normalize(val)
            if val == z:
                continue
            for t, v in enumerate(K):
                if v[c] != z:
                    ck_rows[r][t] = ck_rows[r][t] + val * v[c]
        CK = Matrix.from_rows(field, ck_rows)
        null = CK.kernel()
        if len(null) == len(K):
            continue
        newK = []
        for n in null:
            w = [z] * dim
            for t, coef in enumerate(n):
                if coef != z:
                    for d in range(dim):
                        w[d] = w[d] + coef * K[t][d]
            newK.append(tuple(field.normalize(x) for x in w))
        K = newK
    return canonical_basis(field, K)


def _iterated_kernel_modp(field: PrimeField, dim: int, constraints) -> tuple[tuple, ...]:
    import numpy as np

    p = field.p
    K = np.eye(dim, dtype=np.int64)
    for sp in constraints:
        if K.shape[1] == 0:
            break
        C = np.zeros((dim, dim), dtype=np.int64)
        for (r, c), val in sp.items():
            C[r, c] = (C[r, c] + int(val)) % p
        CK = (C @ K) % p
        rows, pivots = _rref_modp_numpy([list(map(int, r)) for r in CK], p)
        k = K.shape[1]
        free = [j for j in range(k) if j not in pivots]
        if len(free) == k:
            continue
        N = np.zeros((k, len(free)), dtype=np.int64)
        for idx, f in enumerate(free):
            N[f, idx] = 1
            for r, pc in enumerate(pivots):
                N[pc, idx] = (-rows[r][f]) % p
        K = (K @ N) % p
    vecs = [tuple(int(x) for x in K[:, j]) for j in range(K.shape[1])]
    return canonical_basis(field, vecs)


# -- elimination engines ---------------------------------------------------


def _rref(field: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    if not rows or not rows[0]:
        return rows, []
    # int64 stays exact: worst intermediate is (p-1)^2 < 2^62 when p < 2^31
    if (
        isinstance(field, PrimeField)
        and field.p < 2**31
        and len(rows) * len(rows[0]) >= _NUMPY_CELLS
    ):
        return _rref_modp_numpy(rows, field.p)
    return _rref_generic(field, rows)


def _rref_generic(field: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    m, n = len(rows), len(rows[0])
    z = field.zero()
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != z), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if rows[r][c] != field.one():
            rows[r] = [field.normalize(inv * x) for x in rows[r]]
        prow = rows[r]
        for i in range(m):
            if i != r and rows[i][c] != z:
                f = rows[i][c]
                rows[i] = [field.normalize(a - f * b) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _rref_modp_numpy(rows: list[list], p: int) -> tuple[list[list], list[int]]:
    import numpy as np

    a = np.array(rows, dtype=np.int64) % p
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    out = [[int(x) for x in row] for row in a]
    return out, pivots
