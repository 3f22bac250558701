"""Exact rational linear algebra on small dense and large sparse systems."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def rref(matrix):
    """Reduced row echelon form over the rationals.

    Returns ``(rows, pivots)`` where ``pivots[i]`` is the pivot column of row
    ``i``. Zero rows are dropped.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix):
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def primitive(vec):
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    vec = [Fraction(x) for x in vec]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    return [-x for x in ints] if lead < 0 else ints


def nullspace(matrix, ncols=None):
    """Basis of ``{x : matrix @ x = 0}`` as primitive integer vectors.

    One vector per free column, in ascending free-column order.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def solve_unique(a, b):
    """Solve ``a @ x = b`` exactly.

    Returns the solution list, or ``None`` when the system is inconsistent.
    Raises ``ValueError`` if the solution is not unique.
    """
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    if not aug:
        if ncols:
            raise ValueError("underdetermined system")
        return []
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    if len(pivots) < ncols:
        raise ValueError("underdetermined system")
    x = [Fraction(0)] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return x


def sparse_solve(rows, rhs):
    """Solve a square sparse system exactly.

    ``rows[i]`` maps column -> coefficient for equation ``i`` and ``rhs[i]`` is
    its right-hand side; equations and unknowns share the same index set.
    Pivot order prefers the unknown appearing in the fewest remaining
    equations (a cheap fill-in heuristic). Raises ``ValueError`` if singular.
    """
    rows = {i: {j: Fraction(v) for j, v in r.items() if v != 0} for i, r in rows.items()}
    rhs = {i: Fraction(rhs.get(i, 0)) for i in rows}
    occurs = {}
    for i, r in rows.items():
        for j in r:
            occurs.setdefault(j, set()).add(i)
    remaining = set(rows)
    order = []
    while remaining:
        col = min((j for j in occurs if occurs[j] & remaining),
                  key=lambda j: (len(occurs[j] & remaining), j), default=None)
        if col is None:
            raise ValueError("singular system")
        candidates = occurs[col] & remaining
        piv = min(candidates, key=lambda i: (len(rows[i]), i))
        prow = rows[piv]
        pval = prow[col]
        remaining.discard(piv)
        for i in candidates:
            if i == piv:
                continue
            r = rows[i]
            f = r[col] / pval
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv == 0:
                    if j in r:
                        del r[j]
                        occurs[j].discard(i)
                else:
                    if j not in r:
                        occurs.setdefault(j, set()).add(i)
                    r[j] = nv
            rhs[i] -= f * rhs[piv]
        order.append((piv, col))
        if len(order) > len(rows):
            raise ValueError("singular system")
    if len(order) != len(rows):
        raise ValueError("singular system")
    x = {}
    for piv, col in reversed(order):
        r = rows[piv]
        acc = rhs[piv]
        for j, v in r.items():
            if j != col:
                acc -= v * x[j]
        x[col] = acc / r[col]
    return x
