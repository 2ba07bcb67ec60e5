"""Exact linear algebra over coefficient fields and polynomial rings."""

from __future__ import annotations

from typing import Sequence

from .errors import InvariantViolation


def rref(rows: Sequence[Sequence], field):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    A = [[field.normalize(field(x)) for x in row] for row in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.normalize(a * inv) for a in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [field.normalize(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence], field, ncols: int | None = None) -> list[list]:
    """Basis of ``{x : A x = 0}`` (column vectors written as lists)."""
    n = len(rows[0]) if rows else (ncols or 0)
    R, pivots = rref(rows, field) if rows else ([], [])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = field.normalize(-R[i][f])
        basis.append(v)
    return basis


def row_space_basis(rows, field) -> list[list]:
    R, pivots = rref(rows, field)
    return R[: len(pivots)]


def bareiss_det(M: Sequence[Sequence]):
    """Determinant of a square matrix of polynomials by fraction-free elimination.

    Every intermediate division is exact; a failed division means the entries
    are not over an integral domain and is reported as an invariant violation.
    """
    n = len(M)
    if n == 0:
        return None
    A = [list(row) for row in M]
    ring = A[0][0].ring
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return ring.zero
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                q = num.divexact(prev)
                if q is None:
                    raise InvariantViolation("inexact division in Bareiss elimination")
                A[i][j] = q
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def adjugate_column(M: Sequence[Sequence], col: int):
    """Column ``col`` of adj(M): the cofactors ``(-1)^(i+col) det(M minus row col, column i)``."""
    n = len(M)
    ring = M[0][0].ring
    out = []
    for i in range(n):
        if n == 1:
            out.append(ring.one)
            continue
        minor = [[M[r][c] for c in range(n) if c != i] for r in range(n) if r != col]
        d = bareiss_det(minor)
        out.append(d if (i + col) % 2 == 0 else -d)
    return out
