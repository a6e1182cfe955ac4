"""Exact integer linear algebra on Python ints.

Entries are arbitrary-precision, so nothing overflows however large the
intermediate values of elimination get.  Matrices are small here (a few
dozen rows at most), which is why plain lists beat numpy object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable rectangular integer matrix (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]] = (), cols: int | None = None):
        ent = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        if any(len(r) != cols for r in ent):
            raise ValueError("rows of unequal length")
        self.rows = len(ent)
        self.cols = cols
        self.entries = ent

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        b = other.entries
        return IntMatrix([[sum(row[k] * b[k][j] for k in range(self.cols) if row[k])
                           for j in range(other.cols)] for row in self.entries], other.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[r[j] for r in self.entries] for j in range(self.cols)], self.rows)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, signed last pivot)."""
    m = len(a)
    n = len(a[0]) if m else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, n):
                ai[j] = (p * ai[j] - f * a[r][j]) // prev
            ai[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r, sign * prev


def rank(a: IntMatrix) -> int:
    """Rank over the rationals, by fraction-free (Bareiss) elimination."""
    if not a.rows or not a.cols:
        return 0
    return _bareiss([list(r) for r in a.entries])[0]


def det(a: IntMatrix) -> int:
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    if a.rows == 0:
        return 1
    r, d = _bareiss([list(row) for row in a.entries])
    return d if r == a.rows else 0


def rows_independent(a: IntMatrix) -> bool:
    """True iff the rows are linearly independent (an empty row set is)."""
    return rank(a) == a.rows


@dataclass(frozen=True)
class SmithNormalForm:
    """``U @ A @ V == D`` with ``D`` diagonal, ``d1 | d2 | ...``, all ``>= 0``."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def invariant_factors(self) -> list[int]:
        """Nonzero diagonal entries."""
        return [d for d in self.diagonal if d]


def snf(a: IntMatrix) -> SmithNormalForm:
    """Smith normal form with unimodular transforms.

    Pivot rule: smallest nonzero absolute value in the working submatrix,
    ties broken by lowest ``(row, col)``.  The result is re-multiplied and
    checked before being returned.
    """
    m, n = a.shape
    A = [list(r) for r in a.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    r = 0
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean &= A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean &= A[t][j] == 0
            if not clean:
                continue  # a smaller remainder exists; re-pick the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                       None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if best is None:
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        r += 1

    out = SmithNormalForm(IntMatrix(A, n), IntMatrix(U, m), IntMatrix(V, n), r)
    if out.U @ a @ out.V != out.D:
        raise ArithmeticError("Smith normal form failed its re-multiplication check")
    return out


def left_kernel_vector(a: IntMatrix) -> list[int] | None:
    """A nonzero integer vector ``v`` with ``v @ a == 0``, or None if rows are independent."""
    s = snf(a)
    if s.rank == a.rows:
        return None
    return list(s.U.row(s.rank))


def from_rows(rows: Sequence[Sequence[int]], cols: int) -> IntMatrix:
    return IntMatrix(rows, cols)
