"""Reflections, Weyl words, translations, and the isometry trichotomy.

Conventions used by every function here:

* reflections act as s_a(v) = v + (v.a) a for a root a (a^2 = -2);
* a word is a sequence of simple-root indices, applied left to right, so
  apply_word(v, [2, 0]) first reflects in alpha_2, then in alpha_0;
* word_to_isometry returns the matrix that reproduces apply_word when
  matrices act on column vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .lattice import (
    HyperbolicLattice,
    LatticeIsometry,
    LatticeVector,
    basis_vector,
    canonical_vector,
    inner,
    mat_identity,
    mat_mul,
    simple_roots,
)
from .smith import integer_kernel, lattice_gcd


def reflect(alpha: LatticeVector, v: LatticeVector) -> LatticeVector:
    """Reflection of v in the hyperplane orthogonal to the root alpha."""
    if inner(alpha, alpha) != -2:
        raise ValueError("reflection vector must have self-intersection -2")
    return v + inner(v, alpha) * alpha


def reflection_isometry(alpha: LatticeVector) -> LatticeIsometry:
    dim = len(alpha.coords)
    cols = [reflect(alpha, basis_vector(j, dim - 1)).coords for j in range(dim)]
    return LatticeIsometry(tuple(zip(*cols)))


@lru_cache(maxsize=None)
def simple_reflection(i: int, n: int) -> LatticeIsometry:
    roots = simple_roots(n)
    if not 0 <= i < n:
        raise ValueError(f"letter {i} outside 0..{n - 1}")
    return reflection_isometry(roots[i])


def apply_word(v: LatticeVector, word: Sequence[int]) -> LatticeVector:
    """Apply the simple reflections named by word, first letter first."""
    n = v.n
    roots = simple_roots(n)
    out = v
    for letter in word:
        if not 0 <= letter < n:
            raise ValueError(f"letter {letter} outside 0..{n - 1}")
        out = out + inner(out, roots[letter]) * roots[letter]
    return out


def word_to_isometry(word: Sequence[int], n: int) -> LatticeIsometry:
    """Matrix of the word's composite, compatible with apply_word:
    word_to_isometry(w, n).apply(v) == apply_word(v, w)."""
    m = LatticeIsometry.identity(n)
    for letter in word:
        m = simple_reflection(letter, n) @ m
    return m


# ---------------------------------------------------------------------------
# the extra isometries on nine points: shifts along the canonical direction


def iota(w: LatticeVector, v: LatticeVector) -> LatticeVector:
    """Unipotent isometry of Z^{1,9} attached to w in the canonical
    complement.  It fixes the canonical vector, acts on its complement by
    x |-> x + (w.x) k, and iota(w) o iota(w') = iota(w + w').
    """
    k = canonical_vector(9)
    if len(w.coords) != 10 or len(v.coords) != 10:
        raise ValueError("iota lives on Z^{1,9}")
    if inner(w, k) != 0:
        raise ValueError("shift vector must be orthogonal to the canonical vector")
    vk = inner(v, k)
    wv = inner(w, v)
    half_ww = inner(w, w) // 2  # even lattice, exact
    return v - vk * w + (wv - vk * half_ww) * k


def iota_isometry(w: LatticeVector) -> LatticeIsometry:
    cols = [iota(w, basis_vector(j, 9)).coords for j in range(10)]
    return LatticeIsometry(tuple(zip(*cols)))


def translation_isometry(a: LatticeVector, m: int) -> LatticeIsometry:
    """Translation-type isometry of Z^{1,9} attached to a section class.

    D |-> D - m (D.k) a + [ m (D.a) - (m^2/2) (D.k) (a.a) ] k

    where k is the canonical vector and a is orthogonal to it.  On the
    complement of k this restricts to D |-> D + m (D.a) k, the same as
    iota(m*a) restricted there.
    """
    k = canonical_vector(9)
    if len(a.coords) != 10:
        raise ValueError("translations live on Z^{1,9}")
    if inner(a, k) != 0:
        raise ValueError("section class must be orthogonal to the canonical vector")
    half_aa = inner(a, a) // 2

    def image(d: LatticeVector) -> LatticeVector:
        dk = inner(d, k)
        da = inner(d, a)
        return d - (m * dk) * a + (m * da - m * m * half_aa * dk) * k

    cols = [image(basis_vector(j, 9)).coords for j in range(10)]
    return LatticeIsometry(tuple(zip(*cols)))


# ---------------------------------------------------------------------------
# trichotomy


@dataclass(frozen=True)
class IsometryClass:
    """Result of classify_isometry.

    kind is "Elliptic", "Parabolic" or "Hyperbolic".  Elliptic carries the
    order and an invariant class (an orbit sum); Parabolic carries a
    primitive isotropic invariant class; Hyperbolic carries the spectral
    radius as a float witness.
    """

    kind: str
    witness: LatticeVector | None = None
    order: int | None = None
    spectral_radius: float | None = None


_FINITE_ORDER_EXPONENT = 2 * math.lcm(*range(1, 31))


def classify_isometry(g: LatticeIsometry) -> IsometryClass:
    """Exact elliptic/parabolic/hyperbolic trichotomy.

    The characteristic polynomial is stripped of cyclotomic factors; by
    Kronecker's theorem a monic integer polynomial has all roots on the unit
    circle iff it is a product of cyclotomics, so a nontrivial remainder
    certifies spectral radius > 1 (Hyperbolic).  Otherwise a single
    finite-order test g^(2 lcm(1..30)) == 1 separates Elliptic from
    Parabolic; that exponent is a multiple of every finite isometry order in
    these dimensions.  The order of the power is harmless here precisely
    because the on-circle case is decided first: entries of powers of an
    on-circle isometry grow at most polynomially.
    """
    coeffs = _charpoly_coeffs(g.rows)
    cyclo_indices, remainder = _strip_cyclotomic(coeffs)

    if len(remainder) > 1:  # non-cyclotomic content: off-circle eigenvalue
        rho = _max_root_modulus(coeffs)
        if rho <= 1.0 + 1e-9:
            rho = _max_root_modulus_precise(coeffs)
        return IsometryClass(kind="Hyperbolic", spectral_radius=rho)

    if _mat_pow_equals_identity(g.rows, _FINITE_ORDER_EXPONENT):
        order = 1
        for d in cyclo_indices:
            order = math.lcm(order, d)
        return IsometryClass(
            kind="Elliptic", witness=_elliptic_witness(g, order), order=order
        )

    return IsometryClass(kind="Parabolic", witness=_parabolic_witness(g))


def invariant_sublattice_basis(g: LatticeIsometry) -> list[LatticeVector]:
    """Saturated basis of the fixed sublattice {v : g(v) = v}."""
    dim = g.dim
    a = [[g.rows[i][j] - (1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    return [LatticeVector(b) for b in integer_kernel(a)]


def _parabolic_witness(g: LatticeIsometry) -> LatticeVector:
    """Primitive isotropic generator of the radical of the form restricted
    to the fixed sublattice, normalized to positive degree."""
    fixed = invariant_sublattice_basis(g)
    if not fixed:
        raise ValueError("parabolic isometry with trivial fixed lattice")
    gram = [[inner(u, v) for v in fixed] for u in fixed]
    radical = integer_kernel(gram)
    if len(radical) != 1:
        raise ValueError(
            f"expected a one-dimensional radical on the fixed lattice, got {len(radical)}"
        )
    coeffs = radical[0]
    z = LatticeVector(
        tuple(
            sum(c * b.coords[i] for c, b in zip(coeffs, fixed))
            for i in range(g.dim)
        )
    )
    g0 = lattice_gcd(z.coords)
    if g0 > 1:
        z = LatticeVector(tuple(c // g0 for c in z.coords))
    if z.degree < 0:
        z = -z
    if inner(z, z) != 0 or not g.fixes(z):
        raise AssertionError("parabolic witness failed its own checks")
    return z


def _elliptic_witness(g: LatticeIsometry, order: int) -> LatticeVector:
    """Invariant class: the orbit sum of the first basis vector whose orbit
    sum is nonzero (zero vector if none is, e.g. for -identity)."""
    n = g.n
    for j in range(n + 1):
        acc = basis_vector(j, n)
        cur = acc
        for _ in range(order - 1):
            cur = g.apply(cur)
            acc = acc + cur
        if any(c != 0 for c in acc.coords):
            return acc
    return LatticeVector((0,) * (n + 1))


def _charpoly_coeffs(rows) -> list[int]:
    """Monic characteristic polynomial, integer coefficients, descending.

    Faddeev-LeVerrier with exact rationals; no external dependency needed
    for an 11x11 matrix.
    """
    dim = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(1, dim + 1):
        # m = a @ m + c_{k-1} I
        am = [
            [sum(a[i][t] * m[t][j] for t in range(dim)) for j in range(dim)]
            for i in range(dim)
        ]
        for i in range(dim):
            am[i][i] += coeffs[-1]
        m = am
        ck = -sum(
            sum(a[i][t] * m[t][i] for t in range(dim)) for i in range(dim)
        ) / k
        coeffs.append(ck)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("characteristic polynomial must be integral")
        out.append(int(c))
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (descending coeffs), den monic."""
    num = num[:]
    q = []
    while len(num) >= len(den):
        lead = num[0]
        q.append(lead)
        for i, d in enumerate(den):
            num[i] -= lead * d
        assert num[0] == 0
        num.pop(0)
    while len(num) > 1 and num[0] == 0:
        num.pop(0)
    return q if q else [0], num


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    from sympy import Poly, Symbol, cyclotomic_poly

    x = Symbol("x")
    return tuple(int(c) for c in Poly(cyclotomic_poly(d, x), x).all_coeffs())


def _strip_cyclotomic(coeffs: list[int]) -> tuple[list[int], list[int]]:
    """Divide out every cyclotomic factor; return (indices found, remainder)."""
    from sympy import totient

    deg = len(coeffs) - 1
    rem = coeffs[:]
    found = []
    d = 1
    # totient(d) >= sqrt(d/2), so indices with totient <= deg live below 2(deg+1)^2
    while d <= 2 * (deg + 1) * (deg + 1):
        if int(totient(d)) <= deg:
            cd = list(_cyclotomic_coeffs(d))
            while len(rem) > len(cd) or (len(rem) == len(cd)):
                q, r = _poly_divmod(rem, cd)
                if r == [0]:
                    rem = q
                    found.append(d)
                else:
                    break
                if len(rem) == 1:
                    break
        if len(rem) == 1:
            break
        d += 1
    return found, rem


def _max_root_modulus(coeffs: list[int]) -> float:
    import numpy as np

    roots = np.roots([float(c) for c in coeffs])
    return float(max(abs(r) for r in roots))


def _max_root_modulus_precise(coeffs: list[int]) -> float:
    import mpmath

    with mpmath.workdps(60):
        roots = mpmath.polyroots([mpmath.mpf(c) for c in coeffs], maxsteps=200)
        return float(max(abs(r) for r in roots))


def _mat_pow_equals_identity(rows, e: int) -> bool:
    dim = len(rows)
    result = mat_identity(dim)
    base = rows
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result == mat_identity(dim)


# ---------------------------------------------------------------------------
# degree reduction


def noether_reduce(
    r: LatticeVector, trace: list[str] | None = None
) -> tuple[LatticeVector, tuple[int, ...]]:
    """Reduce a root of nonnegative degree by sorting and degree-drop steps.

    Repeatedly: sort the multiplicities into descending order (stable, so
    ties keep their lower index; each adjacent swap is the letter of the
    corresponding simple reflection), then, while the degree is positive and
    smaller than the sum of the top three multiplicities, reflect in
    alpha_0.  For n <= 10 every root lands on +-(a simple root): degree-0
    terminals are rotated to the first two indices by recorded swaps, and
    the degree-drop chain bottoms out at -alpha_0 exactly.

    Returns (terminal, word) where word replays the reduction backwards:
    apply_word(terminal, word) == r.  If trace is a list, one line per
    applied letter is appended to it.
    """
    n = r.n
    k = canonical_vector(n)
    if inner(r, r) != -2 or inner(r, k) != 0:
        raise ValueError("input is not a root orthogonal to the canonical vector")
    if r.degree < 0:
        raise ValueError("root must have nonnegative degree")

    a0 = r.degree
    mult = list(r.multiplicities)  # mult[i] = a_{i+1}
    letters: list[int] = []

    def emit(letter: int) -> None:
        letters.append(letter)
        if trace is not None:
            vec = [a0] + [-m for m in mult]
            trace.append(f"step {len(letters)}: apply s_{letter}, vector = {vec}")

    guard = 0
    while True:
        guard += 1
        if guard > 10_000:
            raise RuntimeError("reduction failed to terminate")
        top3 = sum(sorted(mult, reverse=True)[:3])
        if not (a0 > 0 and a0 < top3):
            break
        # materialize the stable descending sort as adjacent swaps
        swapped = True
        while swapped:
            swapped = False
            for l in range(1, n):
                if mult[l - 1] < mult[l]:
                    mult[l - 1], mult[l] = mult[l], mult[l - 1]
                    emit(l)
                    swapped = True
        b0 = 2 * a0 - mult[0] - mult[1] - mult[2]
        m1 = a0 - mult[1] - mult[2]
        m2 = a0 - mult[0] - mult[2]
        m3 = a0 - mult[0] - mult[1]
        a0, mult[0], mult[1], mult[2] = b0, m1, m2, m3
        emit(0)

    if a0 == 0:
        nz = [i for i, x in enumerate(mult) if x != 0]
        if len(nz) == 2 and sorted(mult[i] for i in nz) == [-1, 1] and nz[1] != nz[0] + 1:
            j1, j2 = nz
            for l in range(j1, 0, -1):  # bubble first nonzero to index 0
                mult[l - 1], mult[l] = mult[l], mult[l - 1]
                emit(l)
            for l in range(j2, 1, -1):  # bubble second nonzero to index 1
                mult[l - 1], mult[l] = mult[l], mult[l - 1]
                emit(l)

    terminal = LatticeVector((a0, *(-m for m in mult)))
    return terminal, tuple(reversed(letters))
