"""Hyperbolic lattice Z^{1,n} with the geometric basis of a blown-up plane.

The lattice has basis e_0, e_1, ..., e_n with e_0^2 = 1, e_i^2 = -1 and all
mixed products zero.  Vectors are stored as integer coordinate tuples in this
basis, index 0 first.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def inner(u: "LatticeVector", v: "LatticeVector") -> int:
    """Signature (1, n) pairing: u_0*v_0 - sum_{i>=1} u_i*v_i."""
    if len(u.coords) != len(v.coords):
        raise ValueError(f"mixed ranks: {len(u.coords) - 1} vs {len(v.coords) - 1}")
    a, b = u.coords, v.coords
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


@dataclass(frozen=True)
class LatticeVector:
    """Immutable integer vector in the geometric basis.

    coords[0] is the coefficient of e_0 (the degree for a curve class);
    coords[i] the coefficient of e_i.  A class d*e_0 - sum m_i*e_i therefore
    has coords (d, -m_1, ..., -m_n).
    """

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 2:
            raise ValueError("need at least e_0 and e_1")
        if not all(isinstance(c, int) for c in self.coords):
            raise TypeError("coordinates must be ints")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def degree(self) -> int:
        return self.coords[0]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        """(m_1, ..., m_n) with the class written d*e_0 - sum m_i e_i."""
        return tuple(-c for c in self.coords[1:])

    def dot(self, other: "LatticeVector") -> int:
        return inner(self, other)

    def is_root(self, canonical: "LatticeVector") -> bool:
        """Self-intersection -2 and orthogonal to the canonical vector."""
        return self.dot(self) == -2 and self.dot(canonical) == 0

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "LatticeVector":
        if not isinstance(k, int):
            return NotImplemented
        return LatticeVector(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def to_json(self) -> list[str]:
        """Decimal strings, index 0 = e_0 coefficient."""
        return [str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "LatticeVector":
        return cls(tuple(int(s) for s in data))

    def __repr__(self) -> str:
        return f"LatticeVector({self.coords})"


def vector(*coords: int) -> LatticeVector:
    """Shorthand constructor used all over the tests."""
    return LatticeVector(tuple(coords))


def basis_vector(i: int, n: int) -> LatticeVector:
    """e_i inside Z^{1,n} (0 <= i <= n)."""
    if not 0 <= i <= n:
        raise ValueError(f"index {i} outside 0..{n}")
    return LatticeVector(tuple(1 if j == i else 0 for j in range(n + 1)))


def canonical_vector(n: int) -> LatticeVector:
    """-3*e_0 + e_1 + ... + e_n, the anticanonical's negative on n points.

    Its self-intersection is 9 - n.
    """
    if n < 3:
        raise ValueError("need n >= 3 for the root system to exist")
    return LatticeVector((-3,) + (1,) * n)


def simple_roots(n: int) -> tuple[LatticeVector, ...]:
    """The n simple roots spanning the orthogonal complement of canonical_vector(n).

    alpha_0 = e_0 - e_1 - e_2 - e_3 and alpha_i = e_i - e_{i+1} for
    1 <= i <= n-1.  Their intersection graph is the T-shaped tree with
    alpha_0 hanging off alpha_3.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    roots = []
    a0 = [1, -1, -1, -1] + [0] * (n - 3)
    roots.append(LatticeVector(tuple(a0)))
    for i in range(1, n):
        c = [0] * (n + 1)
        c[i] = 1
        c[i + 1] = -1
        roots.append(LatticeVector(tuple(c)))
    return tuple(roots)


def gram_matrix(vectors: Iterable[LatticeVector]) -> tuple[tuple[int, ...], ...]:
    vs = list(vectors)
    return tuple(tuple(inner(u, v) for v in vs) for u in vs)


class HyperbolicLattice:
    """Z^{1,n} bundled with its geometric basis and canonical vector."""

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("need n >= 3")
        self.n = n
        self.dim = n + 1
        self.canonical = canonical_vector(n)
        self.simple_roots = simple_roots(n)

    def e(self, i: int) -> LatticeVector:
        return basis_vector(i, self.n)

    def zero(self) -> LatticeVector:
        return LatticeVector((0,) * self.dim)

    def gram(self) -> tuple[tuple[int, ...], ...]:
        """Gram matrix of the simple roots: -2 on the diagonal, 1 for edges
        of the T-shaped intersection tree, 0 otherwise."""
        return gram_matrix(self.simple_roots)

    def signature_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple((1 if i == 0 else -1) if i == j else 0 for j in range(self.dim))
            for i in range(self.dim)
        )

    def __repr__(self) -> str:
        return f"HyperbolicLattice(n={self.n})"


# ---------------------------------------------------------------------------
# small integer-matrix helpers shared with the Weyl-group module


def mat_identity(dim: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


def mat_mul(a, b) -> tuple[tuple[int, ...], ...]:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_transpose(a) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*a))


@dataclass(frozen=True)
class LatticeIsometry:
    """Integer matrix preserving the (1, n) form, acting on column vectors.

    Validation happens on construction: rows must satisfy G^t J G = J where
    J is the signature matrix.  Inverses are exact and integral because
    G^{-1} = J G^t J for any such G.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        dim = len(self.rows)
        if any(len(r) != dim for r in self.rows):
            raise ValueError("matrix not square")
        j = _sig(dim)
        if mat_mul(mat_mul(mat_transpose(self.rows), j), self.rows) != j:
            raise ValueError("matrix does not preserve the (1,n) form")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    def apply(self, v: LatticeVector) -> LatticeVector:
        if len(v.coords) != self.dim:
            raise ValueError("dimension mismatch")
        return LatticeVector(mat_vec(self.rows, v.coords))

    def __matmul__(self, other: "LatticeIsometry") -> "LatticeIsometry":
        """(a @ b).apply(v) == a.apply(b.apply(v))."""
        return LatticeIsometry(mat_mul(self.rows, other.rows))

    def inverse(self) -> "LatticeIsometry":
        j = _sig(self.dim)
        return LatticeIsometry(mat_mul(mat_mul(j, mat_transpose(self.rows)), j))

    def fixes(self, v: LatticeVector) -> bool:
        return self.apply(v) == v

    def is_identity(self) -> bool:
        return self.rows == mat_identity(self.dim)

    @classmethod
    def identity(cls, n: int) -> "LatticeIsometry":
        return cls(mat_identity(n + 1))

    def __repr__(self) -> str:
        return f"LatticeIsometry(n={self.n})"


def _sig(dim: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(dim))
        for i in range(dim)
    )
