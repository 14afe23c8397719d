"""Exact linear algebra used across the package.

Rank is computed by fraction-free Bareiss elimination, which works over
any integral domain supplying exact division (rationals, Gaussian
rationals, polynomial rings).  Rational solving/rref, an integer
diagonalization with unimodular transforms, and a GF(2) solver cover the
remaining needs; nothing here is asymptotically clever because every
matrix in this artifact is desk-sized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence


@dataclass(frozen=True)
class DomainOps:
    """Exact-division hooks for Bareiss elimination; + * - come from dunders."""

    is_zero: Callable
    div: Callable


FRACTION_DOMAIN = DomainOps(is_zero=lambda a: a == 0, div=lambda a, b: a / b)


def exact_rank(matrix: Sequence[Sequence], dom: DomainOps = FRACTION_DOMAIN) -> int:
    """Bareiss fraction-free elimination; divisions are exact by construction."""
    rows = [list(row) for row in matrix]
    m = len(rows)
    n = len(rows[0]) if m else 0
    for row in rows:
        if len(row) != n:
            raise ValueError("ragged matrix")
    rank = 0
    top = 0
    prev = None
    for col in range(n):
        piv = next((i for i in range(top, m) if not dom.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        pivot = rows[top][col]
        for i in range(top + 1, m):
            for j in range(col + 1, n):
                num = pivot * rows[i][j] - rows[i][col] * rows[top][j]
                rows[i][j] = num if prev is None else dom.div(num, prev)
            rows[i][col] = pivot - pivot
        prev = pivot
        rank += 1
        top += 1
        if top == m:
            break
    return rank


def _as_fractions(matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def rref(matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals, with pivot columns."""
    rows = _as_fractions(matrix)
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    top = 0
    for col in range(n):
        piv = next((i for i in range(top, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        inv = 1 / rows[top][col]
        rows[top] = [inv * x for x in rows[top]]
        for i in range(m):
            if i != top and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == m:
            break
    return rows, pivots


def solve_fractions(matrix, rhs) -> list[Fraction] | None:
    """One solution of A x = b over the rationals, or None; free variables 0."""
    rows = _as_fractions(matrix)
    m = len(rows)
    n = len(rows[0]) if m else 0
    b = [Fraction(x) for x in rhs]
    if len(b) != m:
        raise ValueError("rhs length mismatch")
    aug = [rows[i] + [b[i]] for i in range(m)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = red[r][n]
    return x


def nullspace(matrix) -> list[list[Fraction]]:
    """Basis of the rational kernel of A (columns are the variables)."""
    rows = _as_fractions(matrix)
    n = len(rows[0]) if rows else 0
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, col in enumerate(pivots):
            v[col] = -red[r][fc]
        basis.append(v)
    return basis


def integer_diagonalize(matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix: returns (D, U, V) with U A V = D.

    U and V are unimodular.  The diagonal is not normalized to the full
    divisibility chain; diagonal form is all the integer solver needs.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # dst += q * src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < m and t < n:
        mi, mj, best = -1, -1, 0
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i][j])
                if x and (best == 0 or x < best):
                    mi, mj, best = i, j, x
        if best == 0:
            break
        swap_rows(t, mi)
        swap_cols(t, mj)
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        t += 1
    return a, u, v


def solve_integer(matrix, rhs) -> list[int] | None:
    """One integer solution of A x = b, or None if no integral solution."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    d, u, v = integer_diagonalize(matrix)
    c = [sum(u[i][k] * int(rhs[k]) for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        dii = d[i][i] if i < n else 0
        if dii:
            if c[i] % dii:
                return None
            y[i] = c[i] // dii
        elif c[i]:
            return None
    return [sum(v[i][k] * y[k] for k in range(n)) for i in range(n)]


def solve_gf2(matrix, rhs) -> list[int] | None:
    """One solution of A x = b over GF(2), or None."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [[int(x) & 1 for x in matrix[i]] + [int(rhs[i]) & 1] for i in range(m)]
    pivots: list[int] = []
    top = 0
    for col in range(n):
        piv = next((i for i in range(top, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        for i in range(m):
            if i != top and rows[i][col]:
                rows[i] = [(x + y) & 1 for x, y in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == m:
            break
    for i in range(top, m):
        if rows[i][n]:
            return None
    x = [0] * n
    for r, col in enumerate(pivots):
        x[col] = rows[r][n]
    return x
