"""Univariate polynomials over the exact fields, ascending coefficient lists.

A polynomial is a list of FieldElement with no trailing zeros ([] is zero).
Only what the curve machinery needs: euclidean arithmetic, gcds, modular
powers, and distinct-root extraction in the coefficient field.
"""

from __future__ import annotations

import random

from .fields import ExtensionField, Field, FieldElement, PrimeField, QQ, RationalField

Poly = list  # list[FieldElement], ascending


def trim(f: Poly) -> Poly:
    while f and not f[-1]:
        f.pop()
    return f


def from_ints(field: Field, coeffs) -> Poly:
    return trim([field(c) for c in coeffs])


def degree(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else None
        b = g[i] if i < len(g) else None
        if a is None:
            out.append(b)
        elif b is None:
            out.append(a)
        else:
            out.append(a + b)
    return trim(out)


def neg(f: Poly) -> Poly:
    return [-c for c in f]


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    field = f[0].field
    out = [field.zero() for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(f: Poly, c: FieldElement) -> Poly:
    return trim([a * c for a in f])


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    field = g[-1].field
    inv_lead = g[-1].inverse()
    q = [field.zero()] * max(0, len(f) - len(g) + 1)
    r = f[:]
    trim(r)
    while len(r) >= len(g):
        shift = len(r) - len(g)
        factor = r[-1] * inv_lead
        q[shift] = factor
        for i, b in enumerate(g):
            r[shift + i] = r[shift + i] - factor * b
        trim(r)
    return trim(q), r


def gcd(f: Poly, g: Poly) -> Poly:
    f, g = f[:], g[:]
    trim(f), trim(g)
    while g:
        f, g = g, divmod_poly(f, g)[1]
    return monic(f)


def monic(f: Poly) -> Poly:
    if not f:
        return f
    return scale(f, f[-1].inverse())


def pow_mod(f: Poly, n: int, m: Poly) -> Poly:
    field = m[-1].field
    result = [field.one()]
    base = divmod_poly(f, m)[1]
    while n:
        if n & 1:
            result = divmod_poly(mul(result, base), m)[1]
        base = divmod_poly(mul(base, base), m)[1]
        n >>= 1
    return result


def evaluate(f: Poly, x: FieldElement) -> FieldElement:
    acc = x.field.zero()
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: Poly) -> Poly:
    return trim([c * i for i, c in enumerate(f)][1:])


def x_poly(field: Field) -> Poly:
    return [field.zero(), field.one()]


# ---------------------------------------------------------------------------
# distinct roots in the coefficient field


_BRUTE_FORCE_ORDER = 4096


def roots_in_field(f: Poly, seed: int = 0) -> list[FieldElement]:
    """All distinct roots of f lying in its own coefficient field.

    Finite fields: complete (gcd with x^q - x, then seeded equal-degree
    splitting).  Over Q: complete for rational roots via the rational root
    theorem; irrational roots are simply not returned.
    """
    trim(f)
    if not f:
        raise ValueError("the zero polynomial has every root")
    if degree(f) == 0:
        return []
    field = f[0].field
    if isinstance(field, RationalField):
        return _rational_roots(f)
    if field.order is not None and field.order <= _BRUTE_FORCE_ORDER:
        return sorted(
            (x for x in field.elements() if not evaluate(f, x)),
            key=_sort_key,
        )
    return sorted(_finite_field_roots(f, field, seed), key=_sort_key)


def _sort_key(x: FieldElement):
    raw = x.raw
    return raw if isinstance(raw, tuple) else (raw,)


def _finite_field_roots(f: Poly, field: Field, seed: int) -> list[FieldElement]:
    q = field.order
    fm = monic(f[:])
    # strip a root at zero
    out = []
    if not fm[0]:
        out.append(field.zero())
        while fm and not fm[0]:
            fm = fm[1:]
    if degree(fm) < 1:
        return out
    xq = pow_mod(x_poly(field), q, fm)
    g = gcd(sub(xq, x_poly(field)), fm)
    if degree(g) < 1:
        return out
    rng = random.Random(f"{seed}|{q}|{[_sort_key(c) for c in f]}")
    out.extend(_split_linear(g, field, rng))
    return out


def _split_linear(g: Poly, field: Field, rng) -> list[FieldElement]:
    """g is a product of distinct monic linear factors; peel them apart."""
    if degree(g) == 0:
        return []
    if degree(g) == 1:
        return [-g[0] / g[1]]
    q = field.order
    p = field.char
    for _ in range(200):
        b = field.random_element(rng)
        if p == 2:
            # trace splitter: T(c x) = sum (c x)^(2^i), i < log2(q)
            m = q.bit_length() - 1
            cx = [field.zero(), b]
            acc = cx[:]
            term = cx[:]
            for _ in range(m - 1):
                term = divmod_poly(mul(term, term), g)[1]
                acc = add(acc, term)
            h = gcd(acc, g)
        else:
            probe = add(x_poly(field), [b])  # x + b
            powp = pow_mod(probe, (q - 1) // 2, g)
            h = gcd(sub(powp, [field.one()]), g)
        if 0 < degree(h) < degree(g):
            rest = divmod_poly(g, h)[0]
            return _split_linear(h, field, rng) + _split_linear(rest, field, rng)
    raise RuntimeError("equal-degree splitting failed to make progress")


def _rational_roots(f: Poly) -> list[FieldElement]:
    from fractions import Fraction
    from math import gcd as igcd

    # clear denominators to integer coefficients
    denoms = [c.raw.denominator for c in f]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // igcd(lcm, d)
    ints = [int(c.raw * lcm) for c in f]
    content = 0
    for c in ints:
        content = igcd(content, c)
    if content > 1:
        ints = [c // content for c in ints]
    # strip zero roots
    out = []
    while ints and ints[0] == 0:
        ints = ints[1:]
        if not out:
            out.append(QQ.zero())
    if len(ints) <= 1:
        return out
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                cand = Fraction(s * num, den)
                val = 0
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0:
                    e = QQ.element(cand)
                    if e not in out:
                        out.append(e)
    out.sort(key=lambda e: e.raw)
    return out


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def square_roots(a: FieldElement, seed: int = 0) -> list[FieldElement]:
    """Solutions of x^2 = a in the element's field (0, 1 or 2 of them)."""
    field = a.field
    if isinstance(field, RationalField):
        from fractions import Fraction
        from math import isqrt

        fr = a.raw
        if fr < 0:
            return []
        pn, pd = isqrt(fr.numerator), isqrt(fr.denominator)
        if pn * pn == fr.numerator and pd * pd == fr.denominator:
            r = Fraction(pn, pd)
            return [field.element(r)] if r == 0 else [field.element(r), field.element(-r)]
        return []
    f = [-a, field.zero(), field.one()]  # x^2 - a
    return roots_in_field(f, seed)
