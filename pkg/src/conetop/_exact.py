"""Small exact-arithmetic helpers: extended gcd and a rational phase-one simplex."""

from fractions import Fraction
from math import gcd


def xgcd(a, b):
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b) and g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lcm(a, b):
    return abs(a * b) // gcd(a, b) if a and b else 0


def feasible_point(A, b):
    """Find x >= 0 with A x = b over the rationals, or return None.

    Phase one of the simplex method on exact fractions with Bland's rule, so
    it always terminates.  Meant for the handful of variables that come up in
    monoid computations, not for real LP work.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(i == j)) for j in range(m)] + [rhs])
    total = n + m
    basis = [n + i for i in range(m)]
    # reduced costs of the auxiliary objective (sum of artificials)
    obj = [Fraction(0)] * (total + 1)
    for r in rows:
        for j in range(n):
            obj[j] -= r[j]
        obj[-1] -= r[-1]

    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # cannot happen: the auxiliary problem is bounded below
            break
        p = best[1]
        piv = rows[p][enter]
        rows[p] = [v / piv for v in rows[p]]
        for i in range(m):
            if i != p and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [a - f * c for a, c in zip(rows[i], rows[p])]
        f = obj[enter]
        obj = [a - f * c for a, c in zip(obj, rows[p])]
        basis[p] = enter

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, v in enumerate(basis):
        if v < n:
            x[v] = rows[i][-1]
    return x
