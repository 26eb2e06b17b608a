"""Census of roots and of the mod-2 nodal conditions on ten points.

Roots here are vectors r = m_0 e_0 - sum m_i e_i with r^2 = -2 orthogonal to
the canonical vector, i.e. integer solutions of

    sum m_i = 3 m_0        and        sum m_i^2 = m_0^2 + 2.

The second equation forces |m_i| <= m_0 + 1 outright, and m_i <= m_0 whenever
m_0 >= 1 (an entry m_0 + 1 alone already overshoots the square budget); both
bounds are asserted below.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .lattice import (
    LatticeVector,
    canonical_vector,
    gram_matrix,
    inner,
    simple_roots,
)
from .smith import integer_left_inverse


# ---------------------------------------------------------------------------
# coordinates in the simple-root basis, and the quadratic form mod 2


@lru_cache(maxsize=None)
def _root_basis_left_inverse(n: int) -> tuple[tuple[int, ...], ...]:
    cols = simple_roots(n)
    b = [[cols[j].coords[i] for j in range(n)] for i in range(n + 1)]
    return tuple(tuple(row) for row in integer_left_inverse(b))


def root_basis_coordinates(v: LatticeVector) -> tuple[int, ...]:
    """Coordinates of a vector from the canonical complement in the
    simple-root basis.  Exact; raises if v is not in the span."""
    n = v.n
    if inner(v, canonical_vector(n)) != 0:
        raise ValueError("vector is not orthogonal to the canonical vector")
    li = _root_basis_left_inverse(n)
    c = tuple(sum(li[i][j] * v.coords[j] for j in range(n + 1)) for i in range(n))
    roots = simple_roots(n)
    check = [0] * (n + 1)
    for ci, r in zip(c, roots):
        for i in range(n + 1):
            check[i] += ci * r.coords[i]
    if tuple(check) != v.coords:
        raise ValueError("vector is not in the simple-root span")
    return c


def residue_mod2(v: LatticeVector) -> tuple[int, ...]:
    return tuple(c % 2 for c in root_basis_coordinates(v))


def q2_value(coords_mod2: tuple[int, ...], n: int = 10) -> int:
    """Half the even quadratic form, reduced mod 2, on a residue class in
    root-basis coordinates."""
    g = gram_matrix(simple_roots(n))
    x = coords_mod2
    total = 0
    for i in range(n):
        total += (g[i][i] // 2) * x[i] * x[i]
        for j in range(i + 1, n):
            total += g[i][j] * x[i] * x[j]
    return total % 2


def residue_counts_mod2(n: int = 10) -> tuple[int, int]:
    """(#isotropic, #norm-one) residues in the rank-n root lattice mod 2."""
    iso = one = 0
    for mask in range(1 << n):
        x = tuple((mask >> i) & 1 for i in range(n))
        if q2_value(x, n) == 0:
            iso += 1
        else:
            one += 1
    return iso, one


# ---------------------------------------------------------------------------
# root enumeration


def enumerate_roots(n: int, max_degree: int) -> tuple[LatticeVector, ...]:
    """All roots of degree 0..max_degree, normalized and lex-sorted.

    Degree-0 roots come once each: the representative with positive first
    nonzero coordinate (e_i - e_j with i < j).  Positive degrees need no
    normalization since their negatives have negative degree.
    """
    out: list[LatticeVector] = []
    for m0 in range(max_degree + 1):
        bound = m0 + 1
        for multiset in _descending_solutions(n, 3 * m0, m0 * m0 + 2, bound):
            if m0 >= 1:
                assert max(multiset) <= m0, "bound m_i <= m_0 violated"
            for arrangement in _distinct_permutations(multiset):
                coords = (m0,) + tuple(-m for m in arrangement)
                if m0 == 0:
                    first = next((c for c in coords[1:] if c != 0), 0)
                    if first <= 0:
                        continue
                out.append(LatticeVector(coords))
    out.sort(key=lambda v: v.coords)
    k = None
    for r in out:
        if k is None:
            k = canonical_vector(r.n)
        assert r.is_root(k)
    return tuple(out)


def _descending_solutions(n, target_sum, target_sq, bound):
    """Nonincreasing integer n-tuples with given sum and sum of squares,
    entries in [-bound, bound]."""
    results: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec(pos: int, prev: int, rsum: int, rsq: int) -> None:
        if pos == n:
            if rsum == 0 and rsq == 0:
                results.append(tuple(prefix))
            return
        rest = n - pos - 1
        hi = min(prev, bound)
        for v in range(hi, -bound - 1, -1):
            if v * v > rsq:
                if v > 0:
                    continue
                break
            s = rsum - v
            # remaining entries are <= v and >= -bound
            if s > v * rest or s < -bound * rest:
                continue
            prefix.append(v)
            rec(pos + 1, v, s, rsq - v * v)
            prefix.pop()

    rec(0, bound, target_sum, target_sq)
    return results


def _distinct_permutations(values: tuple[int, ...]):
    from sympy.utilities.iterables import multiset_permutations

    for p in multiset_permutations(list(values)):
        yield tuple(p)


# ---------------------------------------------------------------------------
# the 496 nodal conditions mod 2 on ten points


@dataclass(frozen=True)
class ClassFamily:
    """One mod-2 condition: a residue class together with every integral
    root of degree <= 4 representing it, and the point indices involved."""

    label: str
    representative: LatticeVector
    index_set: tuple[int, ...]
    representatives: tuple[LatticeVector, ...]
    residue: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.representative.degree


def _class_from_multiplicities(degree: int, mults: dict[int, int]) -> LatticeVector:
    coords = [degree] + [0] * 10
    for i, m in mults.items():
        coords[i] = -m
    return LatticeVector(tuple(coords))


def coble_conditions() -> tuple[ClassFamily, ...]:
    """The 45 + 120 + 210 + 120 + 1 distinct mod-2 conditions on ten points.

    Five shapes: coincident pair, collinear triple, six on a conic, eight on
    a cubic singular at a ninth, and all ten on a quartic with a triple
    point.  The last two shapes collapse mod 2: three integral classes share
    each eight-point residue, ten share the quartic one.
    """
    families: list[ClassFamily] = []
    idx = range(1, 11)

    for i, j in combinations(idx, 2):
        rep = _class_from_multiplicities(0, {i: 1, j: -1})
        families.append(_family("coincident_pair", (i, j), (rep,)))

    for i, j, k in combinations(idx, 3):
        rep = _class_from_multiplicities(1, {i: 1, j: 1, k: 1})
        families.append(_family("collinear_triple", (i, j, k), (rep,)))

    for s in combinations(idx, 6):
        rep = _class_from_multiplicities(2, {i: 1 for i in s})
        families.append(_family("conic_six", s, (rep,)))

    for t in combinations(idx, 3):
        reps = []
        for j in t:
            omit = tuple(x for x in t if x != j)
            mults = {i: 1 for i in idx if i not in omit}
            mults[j] = 2
            reps.append(_class_from_multiplicities(3, mults))
        families.append(_family("singular_cubic_eight", t, tuple(reps)))

    reps = []
    for j in idx:
        mults = {i: 1 for i in idx}
        mults[j] = 3
        reps.append(_class_from_multiplicities(4, mults))
    families.append(_family("triple_point_quartic", tuple(idx), tuple(reps)))

    residues = {f.residue for f in families}
    if len(residues) != 496:
        raise AssertionError(f"expected 496 distinct residues, got {len(residues)}")
    return tuple(families)


def _family(label: str, index_set, reps) -> ClassFamily:
    k10 = canonical_vector(10)
    res = residue_mod2(reps[0])
    for r in reps:
        if not r.is_root(k10):
            raise AssertionError(f"{label} representative {r} is not a root")
        if residue_mod2(r) != res:
            raise AssertionError(f"{label} representatives disagree mod 2")
    if q2_value(res) != 1:
        raise AssertionError(f"{label} residue is not norm-one")
    rep = min(reps, key=lambda v: v.coords)
    return ClassFamily(
        label=label,
        representative=rep,
        index_set=tuple(index_set),
        representatives=tuple(sorted(reps, key=lambda v: v.coords)),
        residue=res,
    )


def catalog_to_csv(families: tuple[ClassFamily, ...]) -> str:
    """One row per condition: label, degree, ten multiplicities, residue bits."""
    lines = ["label,degree," + ",".join(f"m{i}" for i in range(1, 11)) + ",residue_mod2"]
    for f in families:
        mults = ",".join(str(m) for m in f.representative.multiplicities)
        bits = "".join(str(b) for b in f.residue)
        lines.append(f"{f.label},{f.representative.degree},{mults},{bits}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# prohibited classes for index-m pencils on nine points


def halphen_prohibited_classes(m: int) -> tuple[LatticeVector, ...]:
    """Roots that must not be effective for a nine-point set to carry an
    index-m pencil: k-shifted coincidence classes -dK + e_i - e_j for
    0 <= 2d <= m, and k-shifted line classes -dK +- (e_0 - e_i - e_j - e_k)
    subject to 0 <= 2(3d +- 1) <= 3m (the minus branch therefore starts at
    d = 1; at d = 0 it would have negative degree)."""
    if m < 1:
        raise ValueError("pencil index must be >= 1")
    k = canonical_vector(9)
    minus_k = -k
    out: list[LatticeVector] = []
    idx = range(1, 10)

    d = 0
    while 2 * d <= m:
        for i in idx:
            for j in idx:
                if i != j:
                    coords = list((d * minus_k).coords)
                    coords[i] += 1
                    coords[j] -= 1
                    out.append(LatticeVector(tuple(coords)))
        d += 1

    d = 0
    while 2 * (3 * d + 1) <= 3 * m:
        for i, j, l in combinations(idx, 3):
            base = d * minus_k
            line = _line_class(i, j, l)
            out.append(base + line)
        d += 1

    d = 1
    while 2 * (3 * d - 1) <= 3 * m:
        for i, j, l in combinations(idx, 3):
            base = d * minus_k
            line = _line_class(i, j, l)
            out.append(base - line)
        d += 1

    for r in out:
        assert r.is_root(k), f"prohibited class {r} is not a root"
    return tuple(out)


def _line_class(i: int, j: int, l: int) -> LatticeVector:
    coords = [1] + [0] * 9
    for t in (i, j, l):
        coords[t] = -1
    return LatticeVector(tuple(coords))
