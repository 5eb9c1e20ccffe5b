"""Small dense exact-rational matrix helpers (lists of lists of Fraction)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = tuple[Fraction, ...]


class SingularMatrix(ValueError):
    pass


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matvec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def matmul(x: Sequence[Sequence[Fraction]], y: Sequence[Sequence[Fraction]]) -> Matrix:
    cols = transpose(y)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in x]


def _row_reduce(m: Matrix) -> tuple[Matrix, list[int]]:
    m = [list(map(Fraction, row)) for row in m]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    return len(_row_reduce([list(row) for row in m])[1])


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise SingularMatrix("not square")
    aug = [list(row) + ident for row, ident in zip(m, identity(n))]
    red, pivots = _row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]
