"""Smith normal form over the integers, with both transform matrices.

Plain Python ints throughout, so nothing overflows.  The algorithm is the
classical one: drag a small pivot to the corner, clear its row and column by
euclidean steps, patch up the divisibility chain, recurse on the rest.
"""

from __future__ import annotations

from math import gcd


def smith_normal_form(
    a: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (u, d, v) with u @ a @ v == d, u and v unimodular.

    d is diagonal (rectangular allowed) with nonnegative entries satisfying
    d[0] | d[1] | ... Input is not modified.
    """
    m = [row[:] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    u = _identity(nrows)
    v = _identity(ncols)

    t = 0
    while t < min(nrows, ncols):
        pivot = _find_pivot(m, t)
        if pivot is None:
            break
        while True:
            pi, pj = pivot
            _swap_rows(m, u, t, pi)
            _swap_cols(m, v, t, pj)

            # One sweep of balanced reduction.  Rounded quotients leave
            # remainders of at most half the pivot, and re-picking the pivot
            # after every sweep halves it each round, so the entries never
            # build on each other.  (Floor quotients with in-place swaps look
            # similar but let far columns feed back into the pivot column and
            # blow up without bound.)
            changed = False
            for i in range(t + 1, nrows):
                if m[i][t] != 0:
                    q = _rounded_quot(m[i][t], m[t][t])
                    if q:
                        _add_row(m, u, i, t, -q)
                    if m[i][t] != 0:
                        changed = True
            for j in range(t + 1, ncols):
                if m[t][j] != 0:
                    q = _rounded_quot(m[t][j], m[t][t])
                    if q:
                        _add_col(m, v, j, t, -q)
                    if m[t][j] != 0:
                        changed = True
            if changed:
                pivot = _find_pivot(m, t)
                continue

            # pivot must divide every remaining entry; if not, fold the
            # offending row into row t, which plants a smaller remainder for
            # the next sweep to pick up
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if m[i][j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row(m, u, t, offender, 1)
            pivot = (t, t)

        if m[t][t] < 0:
            _scale_row(m, u, t, -1)
        t += 1

    d = [[m[i][j] if i == j else 0 for j in range(ncols)] for i in range(nrows)]
    return u, d, v


def diagonal_of(d: list[list[int]]) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def integer_kernel(a: list[list[int]]) -> list[tuple[int, ...]]:
    """Basis of {x : a @ x == 0} over Z.  The basis is saturated (primitive)."""
    u, d, v = smith_normal_form(a)
    diag = diagonal_of(d)
    rank = sum(1 for x in diag if x != 0)
    ncols = len(v)
    return [tuple(v[i][j] for i in range(ncols)) for j in range(rank, ncols)]


def integer_left_inverse(a: list[list[int]]) -> list[list[int]]:
    """Left inverse of an integer matrix whose columns are a primitive basis
    (all invariant factors 1).  Raises if no integral left inverse exists."""
    u, d, v = smith_normal_form(a)
    diag = diagonal_of(d)
    ncols = len(a[0])
    if len(diag) < ncols or any(x != 1 for x in diag[:ncols]):
        raise ValueError("columns are not a primitive (unimodular) system")
    # a = u^-1 d v^-1, so  (v [I 0] u) a = v [I 0] d v^-1 = identity
    nrows = len(a)
    proj = [[1 if i == j else 0 for j in range(nrows)] for i in range(ncols)]
    return _mul(_mul(v, proj), u)


def solve_integer(a: list[list[int]], b: list[int]) -> list[int] | None:
    """One integral solution x of a @ x == b, or None."""
    u, d, v = smith_normal_form(a)
    diag = diagonal_of(d)
    ub = [sum(u[i][k] * b[k] for k in range(len(b))) for i in range(len(u))]
    ncols = len(v)
    y = [0] * ncols
    for i in range(len(ub)):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    return [sum(v[i][k] * y[k] for k in range(ncols)) for i in range(ncols)]


def lattice_gcd(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


# -- elementary operations, mirrored into the transform matrices -------------


def _identity(k: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _rounded_quot(a: int, b: int) -> int:
    """Quotient rounded to nearest, so |a - q*b| <= |b| / 2."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def _find_pivot(m, t):
    best = None
    for i in range(t, len(m)):
        for j in range(t, len(m[0])):
            if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                best = (i, j)
    return best


def _swap_rows(m, u, i, k):
    if i != k:
        m[i], m[k] = m[k], m[i]
        u[i], u[k] = u[k], u[i]


def _swap_cols(m, v, j, k):
    if j != k:
        for row in m:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]


def _add_row(m, u, i, k, c):
    """row_i += c * row_k"""
    m[i] = [x + c * y for x, y in zip(m[i], m[k])]
    u[i] = [x + c * y for x, y in zip(u[i], u[k])]


def _add_col(m, v, j, k, c):
    """col_j += c * col_k"""
    for row in m:
        row[j] += c * row[k]
    for row in v:
        row[j] += c * row[k]


def _scale_row(m, u, i, c):
    m[i] = [c * x for x in m[i]]
    u[i] = [c * x for x in u[i]]


def _mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
