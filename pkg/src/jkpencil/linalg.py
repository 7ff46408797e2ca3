"""Exact linear algebra over the rationals and over polynomial rings.

Rational matrices are tuples of tuples of Fraction.  Subspaces carry
reduced-row-echelon bases, so equal spans compare equal and all reported
bases are deterministic.  Rank over polynomial fraction fields uses
one-step fraction-free (Bareiss) elimination with first-nonzero pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SingularMatrixError, ValidationError
from .unipoly import UniPoly, _as_fraction

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def vector(entries: Sequence) -> Vector:
    return tuple(_as_fraction(e) for e in entries)


def matrix(rows: Sequence[Sequence]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValidationError("ragged matrix")
    return out


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(m: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def bilinear(u: Vector, m: Matrix, v: Vector) -> Fraction:
    return sum(x * y for x, y in zip(u, mat_vec(m, v)))


def is_skew(m: Matrix) -> bool:
    n = len(m)
    if any(len(row) != n for row in m):
        return False
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(i, n))


def congruence(p: Matrix, m: Matrix) -> Matrix:
    """P^T M P."""
    return mat_mul(mat_mul(transpose(p), m), p)


# -- elimination over Q ------------------------------------------------


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(m)[1])


def mat_inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red[:n])


def reduce_against_rref(basis: Sequence[Vector], v: Sequence[Fraction]) -> list[Fraction]:
    """Residual of v after eliminating the pivots of an RREF row basis."""
    out = list(v)
    for row in basis:
        pivot = next((c for c, x in enumerate(row) if x != 0), None)
        if pivot is None or out[pivot] == 0:
            continue
        f = out[pivot]
        out = [x - f * y for x, y in zip(out, row)]
    return out


# -- subspaces ----------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n with a reduced-row-echelon basis (rows)."""

    ambient: int
    basis: tuple[Vector, ...]

    @classmethod
    def from_vectors(cls, ambient: int, vectors: Sequence[Sequence]) -> "Subspace":
        vecs = [vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValidationError("vector length does not match ambient dimension")
        if not vecs:
            return cls(ambient, ())
        red, pivots = rref(vecs)
        return cls(ambient, tuple(tuple(red[i]) for i in range(len(pivots))))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, identity_matrix(ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        residual = reduce_against_rref(self.basis, vector(v))
        return all(x == 0 for x in residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise ValidationError("ambient dimension mismatch")
    return Subspace.from_vectors(a.ambient, list(a.basis) + list(b.basis))


def kernel_basis(m: Sequence[Sequence[Fraction]]) -> Subspace:
    """Right kernel of a rectangular rational matrix."""
    rows = [list(r) for r in m]
    if not rows:
        raise ValidationError("empty matrix")
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    vecs = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        vecs.append(v)
    return Subspace.from_vectors(ncols, vecs)


# -- characteristic polynomial over Q ------------------------------------


def charpoly_rational(m: Matrix) -> UniPoly:
    """det(lambda*I - M) via the Faddeev-LeVerrier recursion, monic."""
    n = len(m)
    coeffs = [Fraction(1)]  # c_0 = 1 for lambda^n
    work = identity_matrix(n)
    for k in range(1, n + 1):
        work = mat_mul(m, work)
        ck = -sum(work[i][i] for i in range(n)) / k
        coeffs.append(ck)
        work = mat_add(work, mat_scale(identity_matrix(n), ck))
    return UniPoly(list(reversed(coeffs)))


def determinant(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    cp = charpoly_rational(m)
    det = cp.coefficient(0)
    return det if n % 2 == 0 else -det


# -- fraction-free elimination over polynomial rings ---------------------


def fraction_free_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the fraction field of entries (UniPoly or MultiPoly).

    One-step Bareiss elimination; pivot is the first row with a nonzero
    entry in column order, so results are deterministic.
    """
    work = [list(r) for r in rows]
    if not work:
        return 0
    nrows, ncols = len(work), len(work[0])
    prev = None  # previous pivot; first division is skipped
    rk = 0
    pr = 0
    for c in range(ncols):
        piv = next((i for i in range(pr, nrows) if not work[i][c].is_zero), None)
        if piv is None:
            continue
        work[pr], work[piv] = work[piv], work[pr]
        for i in range(pr + 1, nrows):
            for j in range(c + 1, ncols):
                num = work[pr][c] * work[i][j] - work[i][c] * work[pr][j]
                work[i][j] = num if prev is None else num.exact_div(prev)
            work[i][c] = work[i][c] - work[i][c]  # ring zero
        prev = work[pr][c]
        rk += 1
        pr += 1
        if pr == nrows:
            break
    return rk


# -- Pfaffians ----------------------------------------------------------


class PfaffianCache:
    """Pfaffians of principal submatrices of one skew matrix.

    Values are memoized per index subset, so enumerating Pfaffians of
    many overlapping principal minors shares the recursive work.  Entries
    may live in any commutative ring (Fraction, UniPoly, MultiPoly).
    """

    def __init__(self, m: Sequence[Sequence], zero, one):
        self.m = [list(r) for r in m]
        self.zero = zero
        self.one = one
        self._memo: dict[tuple[int, ...], object] = {}

    def _is_zero_entry(self, x) -> bool:
        if isinstance(x, Fraction) or isinstance(x, int):
            return x == 0
        return x.is_zero

    def pfaffian(self, indices: Sequence[int]):
        idx = tuple(indices)
        if len(idx) % 2 == 1:
            return self.zero
        if not idx:
            return self.one
        cached = self._memo.get(idx)
        if cached is not None:
            return cached
        i0 = idx[0]
        total = self.zero
        for pos in range(1, len(idx)):
            entry = self.m[i0][idx[pos]]
            if self._is_zero_entry(entry):
                continue
            rest = idx[1:pos] + idx[pos + 1 :]
            sub = self.pfaffian(rest)
            if self._is_zero_entry(sub):
                continue
            term = entry * sub
            total = total + term if pos % 2 == 1 else total - term
        self._memo[idx] = total
        return total


def pfaffian(m: Sequence[Sequence], zero=None, one=None):
    """Pfaffian of a skew-symmetric matrix; zero for odd size.

    Pf(m)**2 = det(m).  The entries may live in any commutative ring;
    for rings other than Fraction, pass the ring's zero and one.
    """
    n = len(m)
    if zero is None:
        zero, one = Fraction(0), Fraction(1)
    for i in range(n):
        if len(m[i]) != n:
            raise ValidationError("pfaffian of a non-square matrix")
        for j in range(i, n):
            if not (m[i][j] == -m[j][i]):
                raise ValidationError("pfaffian of a non-skew matrix")
    if n % 2 == 1:
        return zero
    return PfaffianCache(m, zero, one).pfaffian(range(n))
