"""Dense exact linear algebra over any field whose elements support + - * /.

Matrices are lists of rows.  Used over Q, Q(zeta_d) and graded scalars.
"""

from __future__ import annotations

from typing import Callable, Sequence

Matrix = list[list]


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def _inv(x):
    return x.inverse() if hasattr(x, "inverse") else 1 / x


def zeros(n: int, m: int, zero) -> Matrix:
    return [[zero for _ in range(m)] for _ in range(n)]


def identity(n: int, zero, one) -> Matrix:
    out = zeros(n, n, zero)
    for i in range(n):
        out[i][i] = one
    return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                x = a[i][t]
                if _is_zero(x):
                    continue
                y = b[t][j]
                if _is_zero(y):
                    continue
                acc = x * y if acc is None else acc + x * y
            row.append(acc if acc is not None else a[i][0] * 0)
        out.append(row)
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    return [row[0] for row in matmul(a, [[x] for x in v])]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def equal(a: Matrix, b: Matrix) -> bool:
    return all(_is_zero(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def row_reduce(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(row_reduce(a)[1]) if a and a[0] else 0


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    zero = a[0][0] * 0
    one = zero + 1
    aug = [list(a[i]) + identity(n, zero, one)[i] for i in range(n)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def det(a: Matrix):
    m = [list(r) for r in a]
    n = len(m)
    result = m[0][0] * 0 + 1
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return m[0][0] * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result = result * m[c][c]
        inv = _inv(m[c][c])
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def independent_columns(cols: Sequence[Sequence], target: int | None = None) -> list[int]:
    """Greedy lowest-index selection of linearly independent columns."""
    chosen: list[int] = []
    basis: Matrix = []
    for idx, col in enumerate(cols):
        trial = basis + [list(col)]
        if rank(trial) > len(basis):
            basis = trial
            chosen.append(idx)
            if target is not None and len(chosen) == target:
                break
    return chosen


def matpow(a: Matrix, n: int) -> Matrix:
    zero = a[0][0] * 0
    out = identity(len(a), zero, zero + 1)
    for _ in range(n):
        out = matmul(out, a)
    return out


def mapmat(a: Matrix, fn: Callable) -> Matrix:
    return [[fn(x) for x in row] for row in a]
