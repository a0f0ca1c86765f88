"""Exact integer and rational matrix algebra.

Everything here is pure Python over int / fractions.Fraction, so results are
exact at any size. The Smith normal form keeps both unimodular transforms and
uses a fixed pivot rule, which makes every output byte-for-byte reproducible:

  * pivot = smallest nonzero |entry| in the working submatrix, ties broken
    row-major (first by row, then by column);
  * diagonal entries are normalized to be nonnegative;
  * each diagonal entry divides the next.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _swap_rows(m: Matrix, i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: Matrix, i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: Matrix, dst: int, src: int, k: int) -> None:
    m[dst] = [a + k * b for a, b in zip(m[dst], m[src])]


def _add_col(m: Matrix, dst: int, src: int, k: int) -> None:
    for row in m:
        row[dst] += k * row[src]


@dataclass(frozen=True)
class SNFResult:
    """D = U * M * V with U, V unimodular and D the invariant diagonal.

    `diagonal` lists min(rows, cols) entries (trailing zeros kept), each
    nonnegative and dividing the next nonzero entry.
    """

    diagonal: tuple[int, ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(mat: list[list[int]] | tuple) -> SNFResult:
    """Smith normal form with transforms, deterministic under the fixed pivot rule."""
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ConsistencyError("ragged matrix")
    u = _identity(rows)
    v = _identity(cols)

    t = 0
    while t < min(rows, cols):
        # locate pivot: smallest |entry| != 0, row-major tie break
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            _swap_rows(a, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(a, t, pj)
            _swap_cols(v, t, pj)

        while True:
            # shrink entries below and right of the pivot
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    _add_row(a, i, t, -q)
                    _add_row(u, i, t, -q)
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    _add_col(a, j, t, -q)
                    _add_col(v, j, t, -q)
            residue = None
            for i in range(t + 1, rows):
                if a[i][t]:
                    residue = ("row", i)
                    break
            if residue is None:
                for j in range(t + 1, cols):
                    if a[t][j]:
                        residue = ("col", j)
                        break
            if residue is not None:
                # leftover is smaller than the pivot; promote it and repeat
                kind, idx = residue
                if kind == "row":
                    _swap_rows(a, t, idx)
                    _swap_rows(u, t, idx)
                else:
                    _swap_cols(a, t, idx)
                    _swap_cols(v, t, idx)
                continue
            # row and column are clean; enforce divisibility on the rest
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        bad = (i, j)
                        break
                if bad:
                    break
            if bad is None:
                break
            _add_row(a, t, bad[0], 1)
            _add_row(u, t, bad[0], 1)

        if a[t][t] < 0:
            for j in range(cols):
                a[t][j] = -a[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        t += 1

    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    return SNFResult(
        diagonal=diag,
        u=tuple(tuple(row) for row in u),
        v=tuple(tuple(row) for row in v),
        rows=rows,
        cols=cols,
    )


def matmul(a, b) -> Matrix:
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*b)]
        for row in a
    ]


def det(mat) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ConsistencyError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(mat) -> list[list[int]]:
    """Basis of the integer kernel {x : M x = 0}, from the SNF column transform.

    The columns of V indexed past the rank span the kernel saturatedly, so the
    result is a genuine basis of the kernel as a direct summand.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    s = smith_normal_form(mat)
    return [[s.v[i][j] for i in range(cols)] for j in range(s.rank, cols)]


def integer_solve(mat, rhs) -> list[int] | None:
    """One integer solution x of M x = rhs, or None if none exists."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if len(rhs) != rows:
        raise ConsistencyError("rhs length does not match row count")
    if rows == 0:
        return [0] * cols
    s = smith_normal_form(mat)
    y = [sum(s.u[i][k] * rhs[k] for k in range(rows)) for i in range(rows)]
    x_prime = [0] * cols
    for i in range(rows):
        d = s.diagonal[i] if i < len(s.diagonal) else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d != 0:
                return None
            if i < cols:
                x_prime[i] = y[i] // d
    return [sum(s.v[i][k] * x_prime[k] for k in range(cols)) for i in range(cols)]


def solve_rational(mat, rhs) -> list[Fraction]:
    """Solve the square system M x = rhs exactly over the rationals.

    Raises ConsistencyError if M is singular.
    """
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    if any(len(row) != n + 1 for row in a):
        raise ConsistencyError("solve_rational needs a square matrix")
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ConsistencyError("singular matrix in exact solve")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]
