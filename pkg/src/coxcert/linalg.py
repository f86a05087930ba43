"""Exact linear algebra over the fields in `fields`, plus fraction-free
determinants for matrices whose entries live in a polynomial ring.

Prime-field matrices above a size cutoff take a numpy int64 path; the
products stay below 2**62 because every reduction is applied immediately,
so this remains exact arithmetic, just faster.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .fields import Element, Field, FieldError

_NUMPY_CUTOFF = 600  # entries; below this pure python wins on overhead


class Matrix:
    """Dense matrix over a Field.  Rows of Elements; immutable by convention."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [[e if isinstance(e, Element) else field(e) for e in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        return Matrix(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.rows == other.rows
        )

    def copy_rows(self):
        return [list(r) for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def column(self, j: int) -> list:
        return [self.rows[i][j] for i in range(self.nrows)]

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.nrows != self.nrows:
            raise ValueError("row mismatch")
        return Matrix(self.field, [self.rows[i] + other.rows[i] for i in range(self.nrows)])

    def __mul__(self, other):
        f = self.field
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = f.zero
                    for k in range(self.ncols):
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                    row.append(acc)
                out.append(row)
            return Matrix(f, out)
        # vector
        vec = [e if isinstance(e, Element) else f(e) for e in other]
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            acc = f.zero
            for k in range(self.ncols):
                acc = acc + self.rows[i][k] * vec[k]
            out.append(acc)
        return out

    # -- elimination ---------------------------------------------------------

    def rref(self):
        """Reduced row echelon form.  Returns (Matrix, pivot column list)."""
        if self._numpy_eligible():
            arr, piv = _rref_numpy(self._to_int_array(), self.field.p)
            f = self.field
            return Matrix(f, [[f(int(v)) for v in row] for row in arr]), piv
        return self._rref_generic()

    def _numpy_eligible(self) -> bool:
        return (
            self.field.kind == "prime"
            and self.nrows * self.ncols >= _NUMPY_CUTOFF
            and self.field.p < 2 ** 20
        )

    def _to_int_array(self):
        return np.array([[e.val for e in row] for row in self.rows], dtype=np.int64)

    def _rref_generic(self):
        f = self.field
        m = self.copy_rows()
        nr, nc = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            pr = None
            for i in range(r, nr):
                if not m[i][c].is_zero:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c].inv()
            m[r] = [x * inv for x in m[r]]
            for i in range(nr):
                if i != r and not m[i][c].is_zero:
                    factor = m[i][c]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Matrix(f, m), pivots

    def rank(self) -> int:
        if self._numpy_eligible():
            return len(_rref_numpy(self._to_int_array(), self.field.p)[1])
        return len(self._rref_generic()[1])

    def kernel_basis(self) -> list:
        """Basis of the right null space, one vector per free column.

        The free coordinate of each basis vector is 1 and the vectors are
        ordered by free column index, so the output is canonical.
        """
        R, pivots = self.rref()
        f = self.field
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = -R.rows[r][fc]
            basis.append(v)
        return basis

    def solve(self, b):
        """One solution x of self @ x = b, or None if inconsistent."""
        f = self.field
        vec = [e if isinstance(e, Element) else f(e) for e in b]
        aug = Matrix(f, [self.rows[i] + [vec[i]] for i in range(self.nrows)])
        R, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [f.zero] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = R.rows[r][self.ncols]
        return x

    def det(self) -> Element:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        f = self.field
        m = self.copy_rows()
        n = self.nrows
        det = f.one
        for c in range(n):
            pr = None
            for i in range(c, n):
                if not m[i][c].is_zero:
                    pr = i
                    break
            if pr is None:
                return f.zero
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inv()
            for i in range(c + 1, n):
                if not m[i][c].is_zero:
                    factor = m[i][c] * inv
                    m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(self.field, n))
        R, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(self.field, [row[n:] for row in R.rows])


def _rref_numpy(A: np.ndarray, p: int):
    A = A % p
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank_mod_p(int_rows, p: int) -> int:
    """Rank of an integer matrix reduced mod p (numpy elimination)."""
    A = np.array(int_rows, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(_rref_numpy(A, p)[1])


# ---------------------------------------------------------------------------
# fraction-free determinant over an integral domain

def det_bareiss(rows, zero, one, divexact):
    """Bareiss determinant for entries supporting *, -, unary - and an
    exact-division callable.  Entries may be polynomials; all intermediate
    divisions are exact so no fractions ever appear.
    """
    n = len(rows)
    if n == 0:
        return one
    M = [list(r) for r in rows]
    for r in M:
        if len(r) != n:
            raise ValueError("determinant of a non-square matrix")
    sign = 1

    def is_zero(x):
        return x == zero or (hasattr(x, "is_zero") and x.is_zero)

    prev = one
    for k in range(n - 1):
        if is_zero(M[k][k]):
            swap = None
            for i in range(k + 1, n):
                if not is_zero(M[i][k]):
                    swap = i
                    break
            if swap is None:
                return zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = divexact(num, prev)
            M[i][k] = zero
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d


def det_bareiss_int(rows) -> int:
    return det_bareiss(rows, 0, 1, lambda a, b: a // b)


# ---------------------------------------------------------------------------
# modular lifting helpers

def crt_pair(a1: int, m1: int, a2: int, m2: int) -> int:
    """x mod m1*m2 with x = a1 mod m1, x = a2 mod m2; moduli must be coprime."""
    if gcd(m1, m2) != 1:
        raise ValueError("moduli are not coprime")
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    return (a1 + m1 * t) % (m1 * m2)


def crt_list(residues, moduli) -> tuple[int, int]:
    """Combine many congruences; returns (value, combined modulus)."""
    a, m = 0, 1
    for r, q in zip(residues, moduli):
        a = crt_pair(a, m, r % q, q)
        m *= q
    return a, m


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """Unique n/d with n = a*d mod m, |n| and |d| below sqrt(m/2), if any.

    Standard half-gcd reconstruction; returns None when no representative
    within the bound exists (then more moduli are needed upstream).
    """
    a %= m
    if a == 0:
        return Fraction(0)
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    n, d = r1, s1
    if d == 0:
        return None
    if d < 0:
        n, d = -n, -d
    if d > bound or gcd(n, d) != 1:
        return None
    if (n - a * d) % m != 0:
        return None
    return Fraction(n, d)
