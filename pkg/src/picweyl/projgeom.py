"""Projective plane over an exact field: points, 3x3 transforms, ternary
forms, and generic Gaussian elimination.

Points normalize their last nonzero coordinate to 1, so equality of
projective points is plain tuple equality.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import Field, FieldElement


class ProjectivePoint:
    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: Sequence):
        cs = [field(c) for c in coords]
        if len(cs) != 3:
            raise ValueError("points live in the projective plane")
        last = None
        for i in (2, 1, 0):
            if cs[i]:
                last = i
                break
        if last is None:
            raise ValueError("(0:0:0) is not a projective point")
        inv = cs[last].inverse()
        self.field = field
        self.coords = tuple(c * inv for c in cs)

    def __eq__(self, other):
        return (
            isinstance(other, ProjectivePoint)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def __getitem__(self, i: int) -> FieldElement:
        return self.coords[i]

    def __repr__(self):
        return "(" + " : ".join(repr(c.raw) for c in self.coords) + ")"

    def to_json(self):
        return [c.to_json() for c in self.coords]

    @classmethod
    def from_json(cls, field: Field, data) -> "ProjectivePoint":
        return cls(field, [field.element_from_json(c) for c in data])


# ---------------------------------------------------------------------------
# 3x3 matrices as row tuples of FieldElement

Mat3 = tuple


def mat3(field: Field, rows) -> Mat3:
    return tuple(tuple(field(x) for x in row) for row in rows)


def mat3_identity(field: Field) -> Mat3:
    o, z = field.one(), field.zero()
    return ((o, z, z), (z, o, z), (z, z, o))


def mat3_from_columns(cols) -> Mat3:
    return tuple(zip(*cols))


def mat3_mul(a: Mat3, b: Mat3) -> Mat3:
    bt = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), row[0].field.zero()) for col in bt)
        for row in a
    )


def mat3_apply(m: Mat3, p: ProjectivePoint) -> ProjectivePoint:
    coords = tuple(
        sum((x * c for x, c in zip(row, p.coords)), row[0].field.zero()) for row in m
    )
    return ProjectivePoint(p.field, coords)


def mat3_apply_coords(m: Mat3, coords):
    field = m[0][0].field
    return tuple(sum((x * c for x, c in zip(row, coords)), field.zero()) for row in m)


def mat3_det(m: Mat3) -> FieldElement:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def mat3_inverse(m: Mat3) -> Mat3:
    d = mat3_det(m)
    if not d:
        raise ZeroDivisionError("matrix is singular")
    dinv = d.inverse()
    c = [
        [
            (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
             - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]) * dinv
            for i in range(3)
        ]
        for j in range(3)
    ]
    return tuple(tuple(row) for row in c)


def frame_transform(
    p1: ProjectivePoint, p2: ProjectivePoint, p3: ProjectivePoint, p4: ProjectivePoint
) -> Mat3:
    """The transform sending the standard frame e1, e2, e3, (1:1:1) to the
    four given points.  Exists iff no three of them are collinear."""
    field = p1.field
    a = [list(p1.coords), list(p2.coords), list(p3.coords)]
    cols = list(zip(*a))  # matrix [p1 p2 p3] by columns of the linear system
    lam = linear_solve([list(r) for r in cols], list(p4.coords))
    if lam is None or any(not l for l in lam):
        raise ValueError("points are not in general position")
    return mat3_from_columns(
        [tuple(l * c for c in p.coords) for l, p in zip(lam, (p1, p2, p3))]
    )


# ---------------------------------------------------------------------------
# generic exact Gaussian elimination


def row_reduce(rows: list[list[FieldElement]]) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    m = [row[:] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def matrix_rank(rows: list[list[FieldElement]]) -> int:
    return len(row_reduce(rows)[1])


def kernel_basis(rows: list[list[FieldElement]], field: Field) -> list[tuple]:
    """Basis of the right kernel.  rows may be empty, then ncols must be
    recoverable from rows[0]; callers always pass nonempty systems here."""
    if not rows:
        raise ValueError("cannot infer the number of columns")
    ncols = len(rows[0])
    red, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def linear_solve(rows: list[list[FieldElement]], rhs: list[FieldElement]):
    """One solution of rows @ x = rhs, or None."""
    field = rhs[0].field
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    red, pivots = row_reduce(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [field.zero()] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


# ---------------------------------------------------------------------------
# ternary forms


class Poly3:
    """Polynomial in three variables as a sparse exponent map.

    Keys are (a, b, c) exponent triples; values are nonzero field elements.
    The geometry code only ever feeds homogeneous forms to the projective
    routines, but the representation does not insist on it.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        self.terms = {}
        if terms:
            for k, v in terms.items():
                v = field(v)
                if v:
                    self.terms[tuple(k)] = v

    @classmethod
    def zero(cls, field: Field) -> "Poly3":
        return cls(field)

    @classmethod
    def monomial(cls, field: Field, key, coeff=1) -> "Poly3":
        return cls(field, {tuple(key): coeff})

    @classmethod
    def linear_form(cls, field: Field, coeffs) -> "Poly3":
        return cls(field, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(k) for k in self.terms}
        return len(degs) <= 1

    def coefficient(self, key) -> FieldElement:
        return self.terms.get(tuple(key), self.field.zero())

    def __add__(self, other: "Poly3") -> "Poly3":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, self.field.zero()) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly3(self.field, out)

    def __sub__(self, other: "Poly3") -> "Poly3":
        return self + other.scaled(self.field(-1))

    def scaled(self, c) -> "Poly3":
        c = self.field(c)
        return Poly3(self.field, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "Poly3") -> "Poly3":
        out: dict = {}
        zero = self.field.zero()
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                s = out.get(k, zero) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Poly3(self.field, out)

    def power(self, n: int) -> "Poly3":
        result = Poly3.monomial(self.field, (0, 0, 0), 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, coords) -> FieldElement:
        cs = [self.field(c) for c in coords]
        acc = self.field.zero()
        for (a, b, c), v in self.terms.items():
            acc = acc + v * cs[0] ** a * cs[1] ** b * cs[2] ** c
        return acc

    def evaluate_point(self, p: ProjectivePoint) -> FieldElement:
        return self.evaluate(p.coords)

    def partial(self, i: int) -> "Poly3":
        out: dict = {}
        for k, v in self.terms.items():
            if k[i]:
                nk = list(k)
                nk[i] -= 1
                c = v * k[i]
                if c:
                    out[tuple(nk)] = c
        return Poly3(self.field, out)

    def compose_linear(self, m: Mat3) -> "Poly3":
        """F(M x): substitute each variable by the linear form from M's rows."""
        forms = [Poly3.linear_form(self.field, row) for row in m]
        # cache powers of each form up to its maximal exponent
        max_exp = [0, 0, 0]
        for k in self.terms:
            for i in range(3):
                max_exp[i] = max(max_exp[i], k[i])
        powers = []
        for i in range(3):
            cache = [Poly3.monomial(self.field, (0, 0, 0), 1)]
            for _ in range(max_exp[i]):
                cache.append(cache[-1] * forms[i])
            powers.append(cache)
        out = Poly3.zero(self.field)
        for (a, b, c), v in self.terms.items():
            out = out + (powers[0][a] * powers[1][b] * powers[2][c]).scaled(v)
        return out

    def to_coeff_map(self) -> dict:
        out = {}
        for k in sorted(self.terms, reverse=True):
            out["".join(str(d) for d in k)] = self.terms[k].to_json()
        return out

    @classmethod
    def from_coeff_map(cls, field: Field, data: dict) -> "Poly3":
        terms = {}
        for key, val in data.items():
            k = tuple(int(ch) for ch in key)
            if len(k) != 3:
                raise ValueError(f"bad monomial key {key!r}")
            if isinstance(val, (int, FieldElement)):
                terms[k] = field(val)
            else:
                terms[k] = field.element_from_json(val)
        return cls(field, terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly3)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "Poly3(0)"
        bits = []
        for k in sorted(self.terms, reverse=True):
            bits.append(f"{self.terms[k].raw!r}*x^{k[0]}y^{k[1]}z^{k[2]}")
        return "Poly3(" + " + ".join(bits) + ")"


def monomial_exponents(d: int) -> list[tuple[int, int, int]]:
    """All (a, b, c) with a+b+c = d, lexicographically descending."""
    out = [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]
    return out


def restrict_to_line(f: Poly3, p: ProjectivePoint, q: ProjectivePoint) -> list[FieldElement]:
    """Coefficients [s^d, s^(d-1)u, ..., u^d] of F(s p + u q)."""
    field = f.field
    d = f.degree()
    # binary polynomials as dicts {exponent of s: coeff}, homogeneous of known degree
    coeffs = [field.zero()] * (d + 1)
    for key, v in f.terms.items():
        term = {0: field.one()}  # degree-0 binary form
        deg = 0
        for i in range(3):
            for _ in range(key[i]):
                new: dict[int, FieldElement] = {}
                for e, c in term.items():
                    a = c * p.coords[i]
                    if a:
                        new[e + 1] = new.get(e + 1, field.zero()) + a
                    b = c * q.coords[i]
                    if b:
                        new[e] = new.get(e, field.zero()) + b
                term = {e: c for e, c in new.items() if c}
                deg += 1
        for e, c in term.items():
            coeffs[d - e] = coeffs[d - e] + v * c
    return coeffs
