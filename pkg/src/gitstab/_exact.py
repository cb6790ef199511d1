"""Exact rational helpers: parsing, dense linear algebra, LP feasibility.

Everything here works over ``fractions.Fraction``; no floats ever enter.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InputError


def frac(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction (floats rejected)."""
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip().replace("−", "-")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r} (floats are not accepted)")


def fmt(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def primitive(vec: Iterable) -> tuple[int, ...]:
    """Primitive integral vector on the ray of a rational vector (zero stays zero)."""
    vec = [Fraction(x) for x in vec]
    den = 1
    for x in vec:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve the square system ``a x = b``; None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        row = [x / p for x in m[col]]
        m[col] = row
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], row)]
    return [m[i][n] for i in range(n)]


def det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    if any(len(row) != n for row in m):
        raise InputError("determinant of a non-square matrix")
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        out *= p
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return sign * out


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    cols = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def feasible_nonneg(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Find ``x >= 0`` with ``a x = b`` or return None.

    Phase-one simplex over the rationals with Bland's rule, so it terminates
    and the answer is exact.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [Fraction(0)] * cols
    # tableau columns: original vars, then one artificial per row, then rhs
    tab = []
    for i in range(rows):
        row = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(int(k == i)) for k in range(rows)]
        tab.append(row + art + [rhs])
    basis = [cols + i for i in range(rows)]
    width = cols + rows
    # objective: minimise sum of artificials -> reduced costs
    obj = [Fraction(0)] * (width + 1)
    for row in tab:
        for k in range(width + 1):
            obj[k] -= row[k]
    for k in range(cols, width):
        obj[k] = Fraction(0)

    while True:
        enter = next((k for k in range(width) if obj[k] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(rows):
            if tab[i][enter] > 0:
                ratio = tab[i][width] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded; cannot happen in phase one
            break
        _pivot(tab, obj, best[1], enter, width)
        basis[best[1]] = enter

    if obj[width] != 0:
        return None
    x = [Fraction(0)] * cols
    for i, var in enumerate(basis):
        if var < cols:
            x[var] = tab[i][width]
    return x


def _pivot(tab, obj, r, c, width):
    p = tab[r][c]
    tab[r] = [x / p for x in tab[r]]
    prow = tab[r]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [x - f * y for x, y in zip(row, prow)]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [x - f * y for x, y in zip(obj, prow)]
