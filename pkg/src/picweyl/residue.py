"""Quadratic-form arithmetic on the canonical complement, reduced mod m.

Everything here lives in simple-root coordinates: a residue vector is a
length-10 tuple of ints in [0, m), the coordinates of an element of the
rank-10 canonical complement inside Z^{1,10} with respect to the simple
roots.  In these coordinates the Gram matrix has -2 on the diagonal and 1
on the edges of the T-shaped tree, the lattice is even and unimodular, and
the half-norm q(x) = x.G.x / 2 is an integer with q(root) = -1.  Simple
reflections act by changing a single coordinate, which keeps the orbit
searches cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .errors import BudgetError, DomainError
from .lattice import LatticeVector, gram_matrix, simple_roots
from .smith import diagonal_of, integer_kernel, integer_left_inverse, smith_normal_form

_N = 10
_ALPHA = simple_roots(_N)
_GRAM = gram_matrix(_ALPHA)
# neighbours[i] lists the j with G[i][j] != 0, so b(x, alpha_i) is a short sum
_NEIGHBOURS = tuple(
    tuple(j for j in range(_N) if _GRAM[i][j]) for i in range(_N)
)

_WORD_DEPTH = 24
_ORBIT_DEPTH = 24
_VISITED_CAP = 2**24
_WITT_TRIALS = 50_000
_BASE_SCAN_CAP = 2**16


def _dot_gram(x, y) -> int:
    return sum(_GRAM[i][j] * x[i] * y[j] for i in range(_N) for j in range(_N))


def _q_int(x) -> int:
    acc = 0
    for i in range(_N):
        xi = x[i]
        if xi:
            for j in _NEIGHBOURS[i]:
                acc += _GRAM[i][j] * xi * x[j]
    return acc // 2


def _reflect_coord(x, i, m=None):
    """s_i in simple-root coordinates: only coordinate i moves."""
    t = sum(_GRAM[i][j] * x[j] for j in _NEIGHBOURS[i])
    out = list(x)
    out[i] = x[i] + t if m is None else (x[i] + t) % m
    return tuple(out)


class ResidueModule:
    """The rank-10 even unimodular lattice with coefficients in Z/m."""

    def __init__(self, m: int):
        if m < 2:
            raise DomainError("the modulus must be at least 2")
        self.m = m
        self.rank = _N

    # -- vector arithmetic -----------------------------------------------

    def reduce(self, x) -> tuple[int, ...]:
        if len(x) != _N:
            raise ValueError(f"residue vectors have {_N} coordinates")
        return tuple(int(c) % self.m for c in x)

    def add(self, x, y):
        return tuple((a + b) % self.m for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple((a - b) % self.m for a, b in zip(x, y))

    def neg(self, x):
        return tuple((-a) % self.m for a in x)

    def smul(self, c, x):
        return tuple((c * a) % self.m for a in x)

    def bilinear(self, x, y) -> int:
        return _dot_gram(x, y) % self.m

    def quadratic(self, x) -> int:
        return _q_int(x) % self.m

    # -- structure ---------------------------------------------------------

    def is_unit(self, a: int) -> bool:
        return math.gcd(a, self.m) == 1

    def inverse(self, a: int) -> int:
        if not self.is_unit(a):
            raise DomainError(f"{a} is not invertible mod {self.m}")
        return pow(a, -1, self.m)

    def prime_power(self) -> tuple[int, int]:
        from sympy import factorint

        fac = factorint(self.m)
        if len(fac) != 1:
            raise DomainError(f"modulus {self.m} is not a prime power")
        ((p, k),) = fac.items()
        return p, k

    def simple_residue(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < _N:
            raise ValueError(f"simple root index {i} outside 0..9")
        return tuple(1 % self.m if j == i else 0 for j in range(_N))

    def submodule(self, generators) -> "ResidueSubmodule":
        return ResidueSubmodule(self, [self.reduce(g) for g in generators])

    def full_submodule(self) -> "ResidueSubmodule":
        return self.submodule([self.simple_residue(i) for i in range(_N)])

    def __eq__(self, other):
        return isinstance(other, ResidueModule) and other.m == self.m

    def __hash__(self):
        return hash(("ResidueModule", self.m))

    def __repr__(self):
        return f"ResidueModule(m={self.m})"


class ResidueSubmodule:
    """Subgroup of (Z/m)^10 spanned by a generating set, with Smith-form
    structure data computed on first use."""

    def __init__(self, module: ResidueModule, generators):
        self.module = module
        self.generators = tuple(tuple(g) for g in generators)
        self._structure = None

    def _compute(self):
        if self._structure is not None:
            return self._structure
        m = self.module.m
        cols = [list(g) for g in self.generators]
        cols += [[m if i == j else 0 for i in range(_N)] for j in range(_N)]
        a = [[cols[j][i] for j in range(len(cols))] for i in range(_N)]
        u, d, _ = smith_normal_form(a)
        diag = diagonal_of(d)
        factors = tuple(diag[i] for i in range(_N))
        uinv = integer_left_inverse(u)
        basis = tuple(
            tuple(uinv[i][j] % m for i in range(_N)) for j in range(_N)
        )
        self._structure = (u, factors, basis)
        return self._structure

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self._compute()[1]

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f == 1)

    def free_basis(self) -> list[tuple[int, ...]]:
        """Vectors generating a free direct summand, one per unit factor."""
        u, factors, basis = self._compute()
        return [basis[j] for j in range(_N) if factors[j] == 1]

    def contains(self, x) -> bool:
        u, factors, _ = self._compute()
        xr = self.module.reduce(x)
        for i in range(_N):
            ui = sum(u[i][j] * xr[j] for j in range(_N))
            if ui % factors[i]:
                return False
        return True

    def __repr__(self):
        return (
            f"ResidueSubmodule(m={self.module.m}, "
            f"factors={self.invariant_factors})"
        )


# -- unit representation -------------------------------------------------


def represent_unit(sub: ResidueSubmodule, a: int):
    """A vector v of the submodule with q(v) = a, for a unit a mod p^k.

    The base solution mod p is found by search, then corrected one p-power
    at a time: if q(v) = a + c p^j, a companion w in the submodule with
    b(v, w) invertible turns v - c u^-1 p^j w into a solution mod p^(j+1);
    the square term is divisible by p^(2j) and drops out.
    """
    module = sub.module
    p, k = module.prime_power()
    a = a % module.m
    if not module.is_unit(a):
        raise DomainError(f"{a} is not a unit mod {module.m}")
    basis = sub.free_basis()
    if len(basis) < 2 or _mod_p_rank(basis, p) < 2:
        raise DomainError(
            "the submodule drops below rank 2 mod p; representation of a "
            "unit is not guaranteed"
        )
    v, w = _base_solution(basis, a, p)
    # Hensel-style corrections up to p^k
    for j in range(1, k):
        pj = p**j
        qv = _q_int(v)
        c = ((qv - a) // pj) % p
        if c:
            u = _dot_gram(v, w) % p
            t = (-c * pow(u, -1, p)) % p
            v = tuple(v[i] + t * pj * w[i] for i in range(_N))
    v = module.reduce(v)
    if module.quadratic(v) != a:
        raise DomainError("unit representation drifted during lifting")
    return v


def _mod_p_rank(vectors, p: int) -> int:
    rows = [[c % p for c in v] for v in vectors]
    rank = 0
    for col in range(_N):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = (rows[r][col] * inv) % p
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _combo(basis, coeffs):
    out = [0] * _N
    for c, b in zip(coeffs, basis):
        if c:
            for i in range(_N):
                out[i] += c * b[i]
    return tuple(out)


def _companion(basis, v, p):
    for w in basis:
        if _dot_gram(v, w) % p:
            return w
    return None


def _base_solution(basis, a: int, p: int):
    """(v, w) with q(v) = a mod p and b(v, w) a unit mod p, by search."""
    r = len(basis)
    if p**r <= _BASE_SCAN_CAP:
        for coeffs in product(range(p), repeat=r):
            v = _combo(basis, coeffs)
            if _q_int(v) % p != a % p:
                continue
            w = _companion(basis, v, p)
            if w is not None:
                return v, w
        raise DomainError(f"no vector of the submodule has q = {a} mod {p}")
    # big search space: restrict to a nondegenerate rank-3 slice, where a
    # ternary form over F_p takes every nonzero value
    gram = [[_dot_gram(x, y) % p for y in basis] for x in basis]
    for triple in combinations(range(r), 3):
        sub3 = [[gram[i][j] for j in triple] for i in triple]
        det = (
            sub3[0][0] * (sub3[1][1] * sub3[2][2] - sub3[1][2] * sub3[2][1])
            - sub3[0][1] * (sub3[1][0] * sub3[2][2] - sub3[1][2] * sub3[2][0])
            + sub3[0][2] * (sub3[1][0] * sub3[2][1] - sub3[1][1] * sub3[2][0])
        )
        if det % p == 0:
            continue
        picked = [basis[i] for i in triple]
        for coeffs in product(range(p), repeat=3):
            v = _combo(picked, coeffs)
            if _q_int(v) % p != a % p:
                continue
            w = _companion(basis, v, p)
            if w is not None:
                return v, w
    raise BudgetError(
        f"unit representation search mod {p} exhausted its candidate slices"
    )


# -- reflections -----------------------------------------------------------


def apply_reflection(module: ResidueModule, h, x):
    """s_h(x) = x - b(x, h) q(h)^-1 h, defined when q(h) is a unit."""
    qh = module.quadratic(h)
    factor = (module.bilinear(x, h) * module.inverse(qh)) % module.m
    return tuple((xi - factor * hi) % module.m for xi, hi in zip(x, h))


class ReflectionProduct:
    """An ordered list of reflection vectors, applied first vector first."""

    __slots__ = ("module", "vectors")

    def __init__(self, module: ResidueModule, vectors=()):
        self.module = module
        vecs = tuple(module.reduce(h) for h in vectors)
        for h in vecs:
            if not module.is_unit(module.quadratic(h)):
                raise DomainError(f"reflection vector {h} has non-unit norm")
        self.vectors = vecs

    def apply(self, x):
        out = self.module.reduce(x)
        for h in self.vectors:
            out = apply_reflection(self.module, h, out)
        return out

    def then(self, h) -> "ReflectionProduct":
        return ReflectionProduct(self.module, self.vectors + (tuple(h),))

    def concat(self, other: "ReflectionProduct") -> "ReflectionProduct":
        if other.module != self.module:
            raise DomainError("products live over different moduli")
        return ReflectionProduct(self.module, self.vectors + other.vectors)

    def __len__(self):
        return len(self.vectors)

    def __repr__(self):
        return f"ReflectionProduct({self.module.m}, {len(self.vectors)} reflections)"


def square_class(u: int, p: int, k: int) -> int:
    """Canonical label of a unit's class modulo squares of units.

    Odd p: 1 or the least non-residue mod p.  p = 2: the class is trivial
    mod 2, determined mod 4 for k = 2 and mod 8 beyond that.
    """
    if p != 2:
        if pow(u % p, (p - 1) // 2, p) == 1:
            return 1
        return _least_nonresidue(p)
    if k == 1:
        return 1
    if k == 2:
        return u % 4
    return u % 8


def _least_nonresidue(p: int) -> int:
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) != 1:
            return n
    raise AssertionError("every unit a residue: p is not an odd prime")


def spinor_norm(prod: ReflectionProduct) -> int:
    """Product of the reflection norms, reduced to a square-class label."""
    p, k = prod.module.prime_power()
    acc = 1
    for h in prod.vectors:
        acc = (acc * prod.module.quadratic(h)) % prod.module.m
    return square_class(acc, p, k)


# -- Witt extension ----------------------------------------------------------


def witt_extend(f_basis, g_basis, module: ResidueModule) -> ReflectionProduct:
    """A product of reflections carrying each f to the matching g.

    Pairs are matched one at a time.  The difference d of the current image
    and the target is automatically orthogonal to everything already
    matched, so s_d works outright whenever q(d) is invertible.  Otherwise
    an intermediate x = g + w is searched with w orthogonal to the matched
    part, q(w) and q(f' - x) both units and q(x) = q(f'); two ordinary
    steps then chain f' to x to g.  The search is bounded and failure is
    reported, not skipped.
    """
    if len(f_basis) != len(g_basis):
        raise DomainError("basis lists differ in length")
    fs = [module.reduce(f) for f in f_basis]
    gs = [module.reduce(g) for g in g_basis]
    for i in range(len(fs)):
        if module.quadratic(fs[i]) != module.quadratic(gs[i]):
            raise DomainError(f"pair {i}: norms differ, the data is not isometric")
        for j in range(i):
            if module.bilinear(fs[i], fs[j]) != module.bilinear(gs[i], gs[j]):
                raise DomainError(
                    f"pairs {i},{j}: inner products differ, the data is not isometric"
                )

    prod = ReflectionProduct(module)
    current = list(fs)
    for i, g in enumerate(gs):
        f = current[i]
        if f == g:
            continue
        d = module.sub(f, g)
        if module.is_unit(module.quadratic(d)):
            prod = prod.then(d)
        elif i == 0 and module.is_unit(module.quadratic(module.add(f, g))):
            # f -> -g -> g; only safe with nothing matched yet
            prod = prod.then(module.add(f, g)).then(g)
        else:
            w = _witt_connector(module, gs[:i], f, g, d)
            prod = prod.then(module.sub(d, w)).then(w)
        current = [prod.apply(x) for x in fs]
        if current[i] != g:
            raise AssertionError("Witt step failed to match its pair")
    return prod


def _witt_connector(module: ResidueModule, matched, f, g, d):
    """w with x = g + w an intermediate isometric image: w orthogonal to the
    matched part, q(w) a unit, b(g, w) = -q(w), and q(d - w) a unit."""
    m = module.m
    basis = _orthogonal_basis(module, matched)
    trials = 0
    for support in range(1, len(basis) + 1):
        for idxs in combinations(range(len(basis)), support):
            for coeffs in product(range(1, m), repeat=support):
                trials += 1
                if trials > _WITT_TRIALS:
                    raise BudgetError(
                        "no Witt connector found within the search budget"
                    )
                w = [0] * _N
                for c, t in zip(coeffs, idxs):
                    for col in range(_N):
                        w[col] += c * basis[t][col]
                w = module.reduce(w)
                qw = module.quadratic(w)
                if not module.is_unit(qw):
                    continue
                if module.bilinear(g, w) != (-qw) % m:
                    continue
                if not module.is_unit(module.quadratic(module.sub(d, w))):
                    continue
                return w
    raise BudgetError("no Witt connector found in the orthogonal complement")


def _orthogonal_basis(module: ResidueModule, matched):
    """Generators of {x mod m : b(x, g) = 0 for all matched g}."""
    if not matched:
        return [module.simple_residue(i) for i in range(_N)]
    m = module.m
    rows = [[_dot_gram_row(g, j) for j in range(_N)] for g in matched]
    block = [row + [m if i == j else 0 for j in range(len(matched))]
             for i, row in enumerate(rows)]
    kern = integer_kernel(block)
    out = []
    seen = set()
    for vec in kern:
        x = module.reduce(vec[:_N])
        if any(x) and x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _dot_gram_row(g, j: int) -> int:
    return sum(_GRAM[j][t] * g[t] for t in _NEIGHBOURS[j])


def adjust_to_spin(prod: ReflectionProduct, m0: ResidueSubmodule) -> ReflectionProduct:
    """Append one or two reflections in vectors of the submodule so that the
    product has even length and trivial spinor norm.  Appended vectors stay
    inside the submodule, so a target residue already there remains there."""
    module = prod.module
    if m0.module != module:
        raise DomainError("submodule modulus differs from the product's")
    p, k = module.prime_power()
    sn = spinor_norm(prod)
    if len(prod) % 2 == 0 and sn == 1:
        return prod
    if len(prod) % 2 == 1:
        h = represent_unit(m0, sn % module.m)
        return prod.then(h)
    h1 = represent_unit(m0, sn % module.m)
    h2 = represent_unit(m0, 1)
    return prod.then(h1).then(h2)


# -- root search -------------------------------------------------------------


@dataclass
class RootSearchResult:
    status: str  # "found" | "inconclusive"
    root: LatticeVector | None
    certificate: dict


def find_root_in_submodule(
    sub: ResidueSubmodule,
    method: str = "theory",
    *,
    max_depth: int | None = None,
    max_visited: int = _VISITED_CAP,
) -> RootSearchResult:
    """A norm -2 vector of the canonical complement whose residue mod m lies
    in the given submodule.

    "theory": per prime power, represent q = -1 inside a free rank-8 piece,
    Witt-extend the first simple root's residue onto it, adjust the product
    into the spin part, combine the per-prime targets by CRT, then search
    Weyl words realizing the combined target up to sign and up to the
    spin-stage latitude (any landing spot inside the combined rank-8 piece
    counts, because the adjustment reflections only ever move the tracked
    residue around inside that piece).
    "orbit-bfs": expand the Weyl orbit of the simple roots breadth-first
    over the integers until some residue lands in the submodule.

    Either search is bounded; exhaustion reports status "inconclusive",
    never nonexistence.
    """
    if sub.free_rank < 8:
        raise DomainError(
            f"free rank {sub.free_rank} < 8: the submodule is too small"
        )
    name = method.strip().lower().replace("_", "-")
    if name == "theory":
        depth = _WORD_DEPTH if max_depth is None else max_depth
        return _root_by_theory(sub, depth, max_visited)
    if name in ("orbit-bfs", "orbitbfs", "bfs"):
        depth = _ORBIT_DEPTH if max_depth is None else max_depth
        return _root_by_orbit(sub, depth, max_visited)
    raise ValueError(f"unknown method {method!r}: use theory or orbit-bfs")


def _root_by_theory(sub: ResidueSubmodule, depth: int, cap: int) -> RootSearchResult:
    from sympy import factorint

    module = sub.module
    m = module.m
    pieces = []
    local_bases = []
    for p, k in sorted(factorint(m).items()):
        pk = p**k
        local = ResidueModule(pk)
        vloc = local.submodule(sub.generators)
        basis = vloc.free_basis()[:8]
        m0 = local.submodule(basis)
        v = represent_unit(m0, (pk - 1) % pk)
        start = local.simple_residue(1)
        prod = witt_extend([start], [v], local)
        prod = adjust_to_spin(prod, m0)
        pieces.append((pk, prod.apply(start)))
        local_bases.append((pk, basis))
    target = _crt_combine(pieces, m)
    if not sub.contains(target):
        raise AssertionError("CRT target escaped the submodule")
    # The spin adjustment composes reflections in vectors of the rank-8
    # piece, which shuffle the tracked residue within that piece but never
    # out of it, so every landing spot inside the combined piece realizes
    # the construction for some choice of adjustment.  Accepting the whole
    # piece instead of the single combined vector is what keeps the word
    # length short: the exact vector can sit a hundred letters away even
    # mod 3, while the piece is dense enough to meet a shallow ball.
    accept = module.submodule(
        [
            _crt_combine([(pk, basis[i]) for pk, basis in local_bases], m)
            for i in range(8)
        ]
    )
    if not accept.contains(target):
        raise AssertionError("combined rank-8 piece lost the target")

    word = _residue_word_search(module, accept, depth, cap)
    if word is None:
        return RootSearchResult(
            "inconclusive",
            None,
            {
                "method": "Theory",
                "modulus": m,
                "residue": list(target),
                "reason": (
                    f"no word of length <= {depth} carries the base root"
                    " into the combined rank-8 piece"
                ),
            },
        )
    root_alpha = _apply_word_alpha((0, 1) + (0,) * 8, word)
    return _package(sub, root_alpha, word, "Theory", {"target": list(target)})


def _crt_combine(pieces, m: int):
    out = []
    for i in range(_N):
        acc = 0
        for pk, vec in pieces:
            other = m // pk
            acc += vec[i] * other * pow(other, -1, pk)
        out.append(acc % m)
    return tuple(out)


def _residue_word_search(module, accept: ResidueSubmodule, depth: int, cap: int):
    """A word carrying the first simple root's residue into the acceptance
    submodule, by breadth-first search over residue vectors.

    Levels correspond to word length, so the shortest acceptable word comes
    back first and the depth bound reads as a bound on word length.
    """
    m = module.m
    start = module.simple_residue(1)
    tree: dict[tuple[int, ...], tuple | None] = {start: None}
    frontier = [start]
    goal = start if accept.contains(start) else None
    level = 0
    while goal is None and frontier and level < depth:
        level += 1
        nxt = []
        for x in frontier:
            for letter in range(_N):
                child = _reflect_coord(x, letter, m)
                if child in tree:
                    continue
                tree[child] = (x, letter)
                nxt.append(child)
                if accept.contains(child):
                    goal = child
                    break
                if len(tree) > cap:
                    return None
            if goal is not None:
                break
        frontier = nxt
    if goal is None:
        return None
    word = []
    node = goal
    while tree[node] is not None:
        node, letter = tree[node]
        word.append(letter)
    word.reverse()
    return word


def _apply_word_alpha(x, word):
    for letter in word:
        x = _reflect_coord(x, letter)
    return x


# The integer orbit is independent of the modulus, so one expansion is
# shared by every search in the process.
_ORBIT_ROOTS: list[tuple[int, ...]] = []
_ORBIT_PARENT: list[tuple[int, int] | None] = []
_ORBIT_INDEX: dict[tuple[int, ...], int] = {}
_ORBIT_LEVEL_END: list[int] = []


def _orbit_reset():
    _ORBIT_ROOTS.clear()
    _ORBIT_PARENT.clear()
    _ORBIT_INDEX.clear()
    _ORBIT_LEVEL_END.clear()
    for i in range(_N):
        seed = tuple(1 if j == i else 0 for j in range(_N))
        _ORBIT_INDEX[seed] = len(_ORBIT_ROOTS)
        _ORBIT_ROOTS.append(seed)
        _ORBIT_PARENT.append(None)
    _ORBIT_LEVEL_END.append(len(_ORBIT_ROOTS))


def _orbit_grow_level(cap: int) -> bool:
    """Expand one more breadth-first level, atomically: either the whole
    level's children are committed or nothing changes (cap exceeded)."""
    if not _ORBIT_ROOTS:
        _orbit_reset()
    lo = _ORBIT_LEVEL_END[-2] if len(_ORBIT_LEVEL_END) > 1 else 0
    hi = _ORBIT_LEVEL_END[-1]
    children = []
    fresh = set()
    for idx in range(lo, hi):
        x = _ORBIT_ROOTS[idx]
        for letter in range(_N):
            child = _reflect_coord(x, letter)
            if child in _ORBIT_INDEX or child in fresh:
                continue
            fresh.add(child)
            children.append((child, idx, letter))
    if not children or len(_ORBIT_ROOTS) + len(children) > cap:
        return False
    for child, idx, letter in children:
        _ORBIT_INDEX[child] = len(_ORBIT_ROOTS)
        _ORBIT_ROOTS.append(child)
        _ORBIT_PARENT.append((idx, letter))
    _ORBIT_LEVEL_END.append(len(_ORBIT_ROOTS))
    return True


def _root_by_orbit(sub: ResidueSubmodule, depth: int, cap: int) -> RootSearchResult:
    if not _ORBIT_ROOTS:
        _orbit_reset()
    module = sub.module
    for level in range(depth + 1):
        # lazily extend the shared orbit; scanning stays within the depth
        # budget so the outcome does not depend on how deep earlier
        # searches already grew it
        while len(_ORBIT_LEVEL_END) - 1 < level:
            if not _orbit_grow_level(cap):
                return RootSearchResult(
                    "inconclusive",
                    None,
                    {
                        "method": "OrbitBFS",
                        "modulus": module.m,
                        "reason": f"orbit capped at {len(_ORBIT_ROOTS)} roots "
                        f"before level {level}",
                    },
                )
        lo = _ORBIT_LEVEL_END[level - 1] if level else 0
        for idx in range(lo, _ORBIT_LEVEL_END[level]):
            res = module.reduce(_ORBIT_ROOTS[idx])
            if sub.contains(res):
                word = _orbit_trace(idx)
                return _package(sub, _ORBIT_ROOTS[idx], word, "OrbitBFS")
    return RootSearchResult(
        "inconclusive",
        None,
        {
            "method": "OrbitBFS",
            "modulus": module.m,
            "reason": f"no orbit root within depth {depth} has its residue "
            "in the submodule",
        },
    )


def _orbit_trace(idx: int) -> list[int]:
    word = []
    while _ORBIT_PARENT[idx] is not None:
        idx, letter = _ORBIT_PARENT[idx]
        word.append(letter)
    word.reverse()
    return word


def _package(
    sub: ResidueSubmodule, root_alpha, word, method, extra: dict | None = None
) -> RootSearchResult:
    module = sub.module
    if _q_int(root_alpha) != -1:
        raise AssertionError("search produced a non-root")
    res = module.reduce(root_alpha)
    if not sub.contains(res):
        raise AssertionError("search produced a residue outside the submodule")
    coords = [0] * (_N + 1)
    for c, alpha in zip(root_alpha, _ALPHA):
        for i, a in enumerate(alpha.coords):
            coords[i] += c * a
    root = LatticeVector(tuple(coords))
    certificate = {
        "method": method,
        "word": list(word),
        "root": root.to_json(),
        "residue": list(res),
        "modulus": module.m,
    }
    if extra:
        certificate.update(extra)
    return RootSearchResult("found", root, certificate)
