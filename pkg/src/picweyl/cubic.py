"""Plane cubics: classification, canonical singular models, the
chord-tangent group law, and lattice-class restriction to the curve.

The classification finds rational singular points by exact resultant
elimination.  That census is decisive for everything this module supports:
an irreducible cubic has at most one singular point, and a unique singular
point is fixed by Galois, hence rational.  Configurations that would need
factorization over proper extensions (conjugate singular points, non-split
nodes, tangent lines hiding curve components) raise explicit errors instead
of being guessed at; the tangent-cone divisibility tests below make those
cases detectable from rational data alone.

Canonical models and parameters:

* cuspidal: y^2 z = x^3, cusp (0:0:1), inflection origin (0:1:0),
  parameter t = x/y, three points collinear iff the parameters sum to 0;
* split nodal: y^2 z = x^3 + x^2 z, node (0:0:1), inflection origin
  (0:1:0), parameter t = (y+x)/(y-x) in K^*, collinear iff the product is 1;
* smooth: chord-tangent law with an inflection origin when one is rational,
  otherwise the first rational point in a deterministic scan
  (relaxed_origin=True).  The line class is represented by the third
  intersection of the tangent at the origin, which keeps the restriction
  map a homomorphism for any origin.
"""

from __future__ import annotations

import math

from . import polys
from .errors import (
    BudgetError,
    CurveError,
    DomainError,
    ReducibleCurveError,
    UnsupportedCurveError,
)
from .fields import Field, FieldElement, PrimeField, RationalField
from .lattice import LatticeVector, canonical_vector, simple_roots
from .polys import Poly, roots_in_field
from .projgeom import (
    Mat3,
    Poly3,
    ProjectivePoint,
    kernel_basis,
    mat3_apply,
    mat3_from_columns,
    mat3_inverse,
    matrix_rank,
    restrict_to_line,
)

_SCAN_LIMIT = 4096
_ORDER_CAP = 10**6
_POINT_COUNT_LIMIT = 256
_SUBGROUP_CAP = 10_000
_CATALOG_BOUND = 4


class SmoothPoint:
    """A point on the smooth locus, with its parameter when the curve is
    singular (parameters live in K for cusps, K^* for split nodes)."""

    __slots__ = ("point", "param")

    def __init__(self, point: ProjectivePoint, param: FieldElement | None = None):
        self.point = point
        self.param = param

    def __eq__(self, other):
        if isinstance(other, SmoothPoint):
            return self.point == other.point
        if isinstance(other, ProjectivePoint):
            return self.point == other
        return NotImplemented

    def __hash__(self):
        return hash(self.point)

    def __repr__(self):
        return f"SmoothPoint({self.point})"


class CubicCurveModel:
    """A classified cubic.  kind is one of smooth, nodal, cuspidal; the
    smooth locus carries an elliptic, multiplicative or additive group law
    respectively."""

    def __init__(
        self,
        poly: Poly3,
        kind: str,
        origin: ProjectivePoint,
        singular_point: ProjectivePoint | None = None,
        from_canonical: Mat3 | None = None,
        relaxed_origin: bool = False,
    ):
        self.field = poly.field
        self.poly = poly
        self.kind = kind
        self.origin = origin
        self.singular_point = singular_point
        self.from_canonical = from_canonical
        self.to_canonical = mat3_inverse(from_canonical) if from_canonical else None
        self.relaxed_origin = relaxed_origin
        self._gradient = [poly.partial(i) for i in range(3)]

    @property
    def group(self) -> str:
        return {"smooth": "elliptic", "nodal": "multiplicative", "cuspidal": "additive"}[
            self.kind
        ]

    # -- point predicates ----------------------------------------------------

    def contains(self, p: ProjectivePoint) -> bool:
        return not self.poly.evaluate_point(p)

    def is_smooth_point(self, p: ProjectivePoint) -> bool:
        if not self.contains(p):
            return False
        return any(g.evaluate_point(p) for g in self._gradient)

    def smooth_point(self, p) -> SmoothPoint:
        if isinstance(p, SmoothPoint):
            return p
        if not self.contains(p):
            raise DomainError(f"{p} is not on the curve")
        if not self.is_smooth_point(p):
            raise DomainError(f"{p} is a singular point of the curve")
        if self.kind == "smooth":
            return SmoothPoint(p)
        return SmoothPoint(p, self.parameter(p))

    # -- parameters on singular curves ----------------------------------------

    def parameter(self, p: ProjectivePoint) -> FieldElement:
        if self.kind == "smooth":
            raise DomainError("smooth cubics are not rational: no parameter")
        q = mat3_apply(self.to_canonical, p)
        x, y, _ = q.coords
        if self.kind == "cuspidal":
            if not y:
                raise DomainError("the cusp has no parameter")
            return x / y
        den = y - x
        if not den:
            raise DomainError("the node has no parameter")
        t = (y + x) / den
        if not t:
            raise DomainError("the node has no parameter")
        return t

    def point_from_parameter(self, t) -> SmoothPoint:
        field = self.field
        t = field(t)
        if self.kind == "cuspidal":
            q = ProjectivePoint(field, (t, field.one(), t**3))
        elif self.kind == "nodal":
            if not t:
                raise DomainError("0 is not a parameter value on a split node")
            if t == field.one():
                q = ProjectivePoint(field, (0, 1, 0))
            else:
                s = (t + 1) / (t - 1)
                x = s * s - 1
                q = ProjectivePoint(field, (x, s * x, field.one()))
        else:
            raise DomainError("smooth cubics are not parametrized")
        return SmoothPoint(mat3_apply(self.from_canonical, q), t)

    # -- chord-tangent geometry ------------------------------------------------

    def third_intersection(
        self, a: ProjectivePoint, b: ProjectivePoint
    ) -> ProjectivePoint:
        """Residual intersection of the line through a and b (the tangent
        when a == b) with the curve.  Both inputs must be smooth points on
        the curve; a chord of smooth points never meets the singular point,
        so the result is smooth as well."""
        field = self.field
        if a == b:
            grad = [g.evaluate_point(a) for g in self._gradient]
            q = _second_point_on_line(field, grad, a)
            c = restrict_to_line(self.poly, a, q)
            if c[0] or c[1]:
                raise DomainError("tangent construction requires a smooth curve point")
            s, u = -c[3], c[2]
            if not s and not u:
                raise ReducibleCurveError("a line lies on the cubic")
            return ProjectivePoint(
                field, tuple(s * ca + u * cb for ca, cb in zip(a.coords, q.coords))
            )
        c = restrict_to_line(self.poly, a, b)
        if c[0] or c[3]:
            raise DomainError("chord endpoints must lie on the curve")
        s, u = -c[2], c[1]
        if not s and not u:
            raise ReducibleCurveError("a line lies on the cubic")
        return ProjectivePoint(
            field, tuple(s * ca + u * cb for ca, cb in zip(a.coords, b.coords))
        )

    # -- group law ---------------------------------------------------------------

    def zero(self) -> SmoothPoint:
        if self.kind == "smooth":
            return SmoothPoint(self.origin)
        return SmoothPoint(
            self.origin,
            self.field.zero() if self.kind == "cuspidal" else self.field.one(),
        )

    def add(self, a: SmoothPoint, b: SmoothPoint) -> SmoothPoint:
        if self.kind == "cuspidal":
            return self.point_from_parameter(a.param + b.param)
        if self.kind == "nodal":
            return self.point_from_parameter(a.param * b.param)
        chord = self.third_intersection(a.point, b.point)
        return SmoothPoint(self.third_intersection(self.origin, chord))

    def negate(self, a: SmoothPoint) -> SmoothPoint:
        if self.kind == "cuspidal":
            return self.point_from_parameter(-a.param)
        if self.kind == "nodal":
            return self.point_from_parameter(a.param.inverse())
        oo = self.third_intersection(self.origin, self.origin)
        return SmoothPoint(self.third_intersection(oo, a.point))

    def scalar(self, n: int, a: SmoothPoint) -> SmoothPoint:
        if n < 0:
            return self.scalar(-n, self.negate(a))
        acc = self.zero()
        base = a
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def chord_add(self, a: SmoothPoint, b: SmoothPoint) -> SmoothPoint:
        """Group law evaluated geometrically, bypassing parameters; used to
        cross-check the parametric law on singular curves."""
        chord = self.third_intersection(a.point, b.point)
        pt = self.third_intersection(self.origin, chord)
        return self.smooth_point(pt)

    def __repr__(self):
        return f"CubicCurveModel({self.kind} over {self.field})"


# ---------------------------------------------------------------------------
# classification


def classify_cubic(f: Poly3, seed: int = 0) -> CubicCurveModel:
    """Classify a reduced, geometrically irreducible plane cubic and build
    its group model.  Raises ReducibleCurveError or UnsupportedCurveError
    when the input is outside that scope (see the module docstring)."""
    if f.is_zero() or not f.is_homogeneous() or f.degree() != 3:
        raise CurveError("input must be a nonzero homogeneous cubic")

    shortcut = _recognize_canonical(f)
    if shortcut is not None:
        return shortcut

    grad = [f.partial(i) for i in range(3)]
    system = [g for g in grad if not g.is_zero()]
    system.append(f)
    sing, certified_empty = _common_rational_points(system, seed)
    sing = [p for p in sing if all(not g.evaluate_point(p) for g in grad)]

    if len(sing) >= 2:
        raise ReducibleCurveError(
            f"{len(sing)} singular points found; a cubic with more than one is reducible"
        )
    if len(sing) == 1:
        return _classify_singular(f, sing[0], seed)
    if not certified_empty:
        raise UnsupportedCurveError(
            "no rational singular point, but smoothness could not be certified "
            "(possible singularities over an extension field)"
        )
    return _build_smooth_model(f, seed)


def _recognize_canonical(f: Poly3) -> CubicCurveModel | None:
    """Accept the two canonical singular shapes verbatim, in any
    characteristic.  This keeps the canonical models usable over
    characteristics 2 and 3, where the general normalization machinery
    bows out."""
    field = f.field
    keys = set(f.terms)
    o = ProjectivePoint(field, (0, 1, 0))
    s = ProjectivePoint(field, (0, 0, 1))
    id3 = mat3_from_columns(
        [
            (field.one(), field.zero(), field.zero()),
            (field.zero(), field.one(), field.zero()),
            (field.zero(), field.zero(), field.one()),
        ]
    )
    if keys == {(0, 2, 1), (3, 0, 0)} and f.coefficient((3, 0, 0)) == -f.coefficient(
        (0, 2, 1)
    ):
        return CubicCurveModel(f, "cuspidal", o, s, id3)
    if (
        keys == {(0, 2, 1), (3, 0, 0), (2, 0, 1)}
        and f.coefficient((3, 0, 0)) == -f.coefficient((0, 2, 1))
        and f.coefficient((2, 0, 1)) == -f.coefficient((0, 2, 1))
    ):
        if field.char == 2:
            raise UnsupportedCurveError(
                "the split-node model degenerates in characteristic 2"
            )
        return CubicCurveModel(f, "nodal", o, s, id3)
    return None


def _classify_singular(f: Poly3, s: ProjectivePoint, seed: int) -> CubicCurveModel:
    field = f.field
    frame = _frame_through(s)
    g = f.compose_linear(frame)  # the singular point is now (0:0:1)
    if g.coefficient((0, 0, 3)) or g.coefficient((1, 0, 2)) or g.coefficient((0, 1, 2)):
        raise AssertionError("frame change lost the singularity")
    qa = g.coefficient((2, 0, 1))
    qb = g.coefficient((1, 1, 1))
    qc = g.coefficient((0, 2, 1))
    if not (qa or qb or qc):
        raise ReducibleCurveError("triple point: the cubic is three concurrent lines")
    split = _binary_quadratic_split(qa, qb, qc)
    if split[0] == "nonsplit":
        raise UnsupportedCurveError(
            "node with conjugate tangents (non-split torus) is not supported"
        )

    if split[0] == "double":
        line = split[1]
        cubic_part = {
            k: g.coefficient(k) for k in ((3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0))
        }
        if _direction_divides_cubic(cubic_part, line):
            raise ReducibleCurveError(
                "the tangent line is a component (line plus tangent conic)"
            )
        if field.char == 2:
            raise UnsupportedCurveError(
                "cuspidal normalization is unavailable in characteristic 2 unless "
                "the curve is already in canonical form"
            )
        tangent_pt = mat3_apply(frame, _direction_point(field, line))
        return _build_cuspidal_model(f, s, tangent_pt, seed)

    line1, line2 = split[1], split[2]
    dirs = sorted(
        (
            mat3_apply(frame, _direction_point(field, line1)),
            mat3_apply(frame, _direction_point(field, line2)),
        ),
        key=_point_key,
    )
    for direction in dirs:
        if all(not c for c in restrict_to_line(f, s, direction)):
            raise ReducibleCurveError("a nodal tangent line is a component of the cubic")
    if field.char == 2:
        raise UnsupportedCurveError(
            "split-node normalization is unavailable in characteristic 2"
        )
    return _build_nodal_model(f, s, dirs[0], dirs[1], seed)


def _binary_quadratic_split(qa, qb, qc):
    """Factor A x^2 + B xy + C y^2 over the coefficient field.

    Returns ('double', (alpha, beta)), ('split', L1, L2) with L = (alpha,
    beta) meaning alpha*x + beta*y, or ('nonsplit',).  Uniform over every
    characteristic: the distinct roots of the dehomogenized quadratic
    decide, one distinct root meaning a repeated factor.
    """
    field = qa.field
    one, zero = field.one(), field.zero()
    if not qa:
        if not qb:
            return ("double", (zero, one))  # C y^2
        return ("split", (zero, one), (qb, qc))  # y (B x + C y)
    rts = roots_in_field([qc, qb, qa])
    if len(rts) == 0:
        return ("nonsplit",)
    if len(rts) == 1:
        return ("double", (one, -rts[0]))
    return ("split", (one, -rts[0]), (one, -rts[1]))


def _direction_point(field: Field, line) -> ProjectivePoint:
    """The point at infinity of the singular chart cut out by the
    tangent-cone factor alpha*x + beta*y."""
    alpha, beta = line
    return ProjectivePoint(field, (-beta, alpha, field.zero()))


def _direction_divides_cubic(cubic_part: dict, line) -> bool:
    """Does alpha*x + beta*y divide the cubic part of the local expansion?
    A binary form is divisible by a linear form iff it vanishes at the
    root direction (-beta, alpha)."""
    alpha, beta = line
    field = alpha.field
    x0, y0 = -beta, alpha
    total = field.zero()
    for (a, b, _), v in cubic_part.items():
        total = total + v * x0**a * y0**b
    return not total


def _build_cuspidal_model(
    f: Poly3, cusp: ProjectivePoint, tangent_pt: ProjectivePoint, seed: int
) -> CubicCurveModel:
    field = f.field
    inflections = _rational_inflections(f, exclude=cusp, seed=seed)
    if not inflections:
        raise UnsupportedCurveError(
            "no rational inflection found; a cuspidal cubic has exactly one and "
            "it must be rational, so this input is outside the supported scope"
        )
    o = inflections[0]
    cusp_tangent = _line_through(cusp, tangent_pt)
    o_tangent = _tangent_line_coeffs(f, o)
    v1 = _line_intersection(field, cusp_tangent, o_tangent)
    m = mat3_from_columns([v1.coords, o.coords, cusp.coords])
    g = f.compose_linear(m)
    c = g.coefficient((0, 2, 1))
    kappa = g.coefficient((3, 0, 0))
    extra = set(g.terms) - {(0, 2, 1), (3, 0, 0)}
    if extra or not c or not kappa:
        raise AssertionError(f"cusp frame failed, leftover terms {sorted(extra)}")
    t = -kappa / c
    cols = [v1.coords, o.coords, tuple(x * t for x in cusp.coords)]
    return CubicCurveModel(f, "cuspidal", o, cusp, mat3_from_columns(cols))


def _build_nodal_model(
    f: Poly3,
    node: ProjectivePoint,
    dir1: ProjectivePoint,
    dir2: ProjectivePoint,
    seed: int,
) -> CubicCurveModel:
    field = f.field
    inflections = _rational_inflections(f, exclude=node, seed=seed)
    if not inflections:
        raise UnsupportedCurveError(
            "no rational inflection found on a split nodal cubic; with a split "
            "node at least one inflection is rational, so this input is outside scope"
        )
    o = inflections[0]
    t1 = _line_through(node, dir1)
    t2 = _line_through(node, dir2)
    to = _tangent_line_coeffs(f, o)
    v1 = _line_intersection(field, t1, to)
    v2 = _line_intersection(field, t2, to)
    # columns: c1 + c2 ~ v1, c1 - c2 ~ v2, c2 ~ o, c3 = node
    rows = [[v1.coords[i], -v2.coords[i], field(-2) * o.coords[i]] for i in range(3)]
    ker = kernel_basis(rows, field)
    if len(ker) != 1:
        raise AssertionError("nodal frame solve degenerated")
    lam1, lam2, mu = ker[0]
    if not (lam1 and lam2 and mu):
        raise AssertionError("nodal frame solve hit a zero scale")
    half = field(2).inverse()
    c1 = tuple((lam1 * a + lam2 * b) * half for a, b in zip(v1.coords, v2.coords))
    c2 = tuple((lam1 * a - lam2 * b) * half for a, b in zip(v1.coords, v2.coords))
    m = mat3_from_columns([c1, c2, node.coords])
    g = f.compose_linear(m)
    qa = g.coefficient((0, 2, 1))
    kappa = g.coefficient((3, 0, 0))
    extra = set(g.terms) - {(0, 2, 1), (2, 0, 1), (3, 0, 0)}
    if extra or not qa or not kappa or g.coefficient((2, 0, 1)) != -qa:
        raise AssertionError(f"node frame failed, leftover terms {sorted(extra)}")
    lam = -qa / kappa
    mu_y = qa / kappa
    cols = [
        tuple(x * lam for x in c1),
        tuple(x * mu_y for x in c2),
        node.coords,
    ]
    return CubicCurveModel(f, "nodal", o, node, mat3_from_columns(cols))


def _build_smooth_model(f: Poly3, seed: int) -> CubicCurveModel:
    inflections = _rational_inflections(f, exclude=None, seed=seed)
    if inflections:
        return CubicCurveModel(f, "smooth", inflections[0])
    p = _first_rational_point(f)
    if p is None:
        raise UnsupportedCurveError(
            "no rational point found in the deterministic scan; the group model "
            "needs an origin"
        )
    return CubicCurveModel(f, "smooth", p, relaxed_origin=True)


# ---------------------------------------------------------------------------
# rational common zeros of form systems, by resultant elimination


def _common_rational_points(
    system: list[Poly3], seed: int
) -> tuple[list[ProjectivePoint], bool]:
    """Rational common zeros of the given forms, plus a certificate flag:
    True means the forms provably have no common zero at all, even over
    the algebraic closure, so an empty list is conclusive."""
    field = system[0].field
    points: set[ProjectivePoint] = set()

    affine_complete = _affine_zeros(system, field, seed, points)
    inf_complete = _infinity_zeros(system, field, seed, points)

    certified_empty = affine_complete and inf_complete and not points
    return sorted(points, key=_point_key), certified_empty


def _affine_zeros(system, field, seed, points) -> bool:
    """Collect common zeros in the chart z = 1.  Returns True when the
    census there is provably complete over the closure."""
    chart = [c for c in (_poly3_chart(g) for g in system) if c]
    if not chart:
        return False  # the system is identically zero on the chart
    with_y = [c for c in chart if len(c) > 1]
    constants_in_y = [c[0] for c in chart if len(c) == 1]

    if not with_y:
        g = _poly_list_gcd(constants_in_y)
        return polys.degree(g) == 0  # else a common vertical line: uncertified

    res_list = []
    pool = with_y + [[u] for u in constants_in_y]
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            if len(pool[i]) == 1 and len(pool[j]) == 1:
                continue  # the resultant of two y-constants is 1 and carries nothing
            r = _resultant_y(pool[i], pool[j], field)
            if r:
                res_list.append(r)
    if not res_list:
        return False  # every pair shares a factor: cannot isolate the locus
    g = _poly_list_gcd(res_list)
    if polys.degree(g) == 0:
        return True

    rts = roots_in_field(g, seed)
    complete = _splits_rationally(g, rts, field)
    for x0 in rts:
        fibers = [u for u in (_evaluate_chart_at_x(c, x0, field) for c in chart) if u]
        if not fibers:
            complete = False  # the whole vertical line lies in the locus
            continue
        h = _poly_list_gcd(fibers)
        if polys.degree(h) == 0:
            continue
        yrts = roots_in_field(h, seed)
        if not _splits_rationally(h, yrts, field):
            complete = False
        for y0 in yrts:
            pt = ProjectivePoint(field, (x0, y0, field.one()))
            if all(not gg.evaluate_point(pt) for gg in system):
                points.add(pt)
    return complete


def _infinity_zeros(system, field, seed, points) -> bool:
    """Collect common zeros on the line z = 0.  Returns True when that part
    of the census is provably complete over the closure."""
    restricted = []
    for g in system:
        acc: dict[int, FieldElement] = {}
        for (a, _, c), v in g.terms.items():
            if c == 0:
                acc[a] = acc.get(a, field.zero()) + v
        deg = max(acc) if acc else -1
        restricted.append(polys.trim([acc.get(i, field.zero()) for i in range(deg + 1)]))

    # A form restricting to the zero polynomial vanishes everywhere on the
    # line, so it cuts nothing out; only the remaining restrictions matter.
    # If every restriction dies the whole line sits inside the locus and the
    # census cannot be finite.
    nonzero = [u for u in restricted if u]
    complete = bool(nonzero)
    if nonzero:
        h = _poly_list_gcd(nonzero)
        if polys.degree(h) >= 1:
            rts = roots_in_field(h, seed)
            if not _splits_rationally(h, rts, field):
                complete = False
            for t0 in rts:
                pt = ProjectivePoint(field, (t0, field.one(), field.zero()))
                if all(not g.evaluate_point(pt) for g in system):
                    points.add(pt)
    e100 = ProjectivePoint(field, (field.one(), field.zero(), field.zero()))
    if all(not g.evaluate_point(e100) for g in system):
        points.add(e100)
    return complete


def _poly_list_gcd(ps: list[Poly]) -> Poly:
    g: Poly = []
    for u in ps:
        if not u:
            continue
        g = polys.gcd(g, u) if g else polys.monic(u[:])
        if polys.degree(g) == 0:
            break
    return g


def _splits_rationally(g: Poly, rts: list[FieldElement], field: Field) -> bool:
    """Does g factor completely into the given rational roots, counted with
    multiplicity?  Divides each root out as often as it goes."""
    h = g[:]
    for r in rts:
        lin = [-r, field.one()]
        while True:
            q, rem = polys.divmod_poly(h, lin)
            if rem:
                break
            h = q
    return polys.degree(h) == 0


def _evaluate_chart_at_x(chart: list[Poly], x0: FieldElement, field: Field) -> Poly:
    return polys.trim([polys.evaluate(cy, x0) if cy else field.zero() for cy in chart])


def _poly3_chart(g: Poly3) -> list[Poly]:
    """Chart z = 1 as a polynomial in y whose coefficients are polynomials
    in x: a list indexed by y-degree, trailing zero entries trimmed."""
    field = g.field
    by_y: dict[int, dict[int, FieldElement]] = {}
    for (a, b, _), v in g.terms.items():
        by_y.setdefault(b, {})[a] = v
    if not by_y:
        return []
    out = []
    for j in range(max(by_y) + 1):
        coeffs = by_y.get(j, {})
        deg = max(coeffs) if coeffs else -1
        out.append(polys.trim([coeffs.get(i, field.zero()) for i in range(deg + 1)]))
    while out and not out[-1]:
        out.pop()
    return out


def _resultant_y(ca: list[Poly], cb: list[Poly], field: Field) -> Poly:
    """Resultant in y of two chart polynomials (coefficients in K[x]),
    via the Sylvester determinant expanded over K[x].  Sizes here stay at
    most 6x6, so cofactor expansion is exact and cheap."""
    m = len(ca) - 1
    n = len(cb) - 1
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [field.one()]
    if m == 0:
        out = [field.one()]
        for _ in range(n):
            out = polys.mul(out, ca[0])
        return out
    if n == 0:
        out = [field.one()]
        for _ in range(m):
            out = polys.mul(out, cb[0])
        return out
    size = m + n
    zero: Poly = []
    arev = list(reversed(ca))
    brev = list(reversed(cb))
    rows: list[list[Poly]] = []
    for i in range(n):
        rows.append([zero] * i + [c[:] for c in arev] + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + [c[:] for c in brev] + [zero] * (size - i - n - 1))
    return _poly_det(rows)


def _poly_det(rows: list[list[Poly]]) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return polys.sub(
            polys.mul(rows[0][0], rows[1][1]), polys.mul(rows[0][1], rows[1][0])
        )
    det: Poly = []
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = polys.mul(rows[0][j], _poly_det(minor))
        det = polys.add(det, term) if j % 2 == 0 else polys.sub(det, term)
    return det


# ---------------------------------------------------------------------------
# inflections, tangents, deterministic scans


def _rational_inflections(
    f: Poly3, exclude: ProjectivePoint | None, seed: int
) -> list[ProjectivePoint]:
    """Rational smooth points of f where the Hessian vanishes, sorted
    deterministically.  Empty when the Hessian route is unavailable
    (characteristic 2, or an identically vanishing Hessian)."""
    field = f.field
    if field.char == 2:
        return []
    h = _hessian(f)
    if h.is_zero():
        return []
    pts, _ = _common_rational_points([f, h], seed)
    grad = [f.partial(i) for i in range(3)]
    out = []
    for p in pts:
        if exclude is not None and p == exclude:
            continue
        if any(g.evaluate_point(p) for g in grad):
            out.append(p)
    return out


def _hessian(f: Poly3) -> Poly3:
    m = [[f.partial(i).partial(j) for j in range(3)] for i in range(3)]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _tangent_line_coeffs(f: Poly3, p: ProjectivePoint):
    grad = tuple(f.partial(i).evaluate_point(p) for i in range(3))
    if not any(grad):
        raise DomainError("tangent line requested at a singular point")
    return grad


def _line_through(p: ProjectivePoint, q: ProjectivePoint):
    return _cross(p.coords, q.coords)


def _line_intersection(field: Field, l1, l2) -> ProjectivePoint:
    return ProjectivePoint(field, _cross(l1, l2))


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _second_point_on_line(field: Field, line, avoid: ProjectivePoint) -> ProjectivePoint:
    one, zero = field.one(), field.zero()
    for e in ((one, zero, zero), (zero, one, zero), (zero, zero, one)):
        c = _cross(line, e)
        if any(c):
            pt = ProjectivePoint(field, c)
            if pt != avoid:
                return pt
    raise AssertionError("a projective line always has two points")


def _point_key(p: ProjectivePoint):
    out = []
    for c in p.coords:
        raw = c.raw
        out.append(raw if isinstance(raw, tuple) else (raw,))
    return tuple(out)


def _field_scan(field: Field, limit: int):
    """A deterministic enumeration of field elements: integers 0, 1, 2, ...
    for prime fields, base-p digit codes for extensions, small fractions
    ordered by denominator then numerator over Q."""
    if isinstance(field, RationalField):
        from fractions import Fraction

        count = 0
        for den in range(1, 13):
            for num in range(-24, 25):
                yield field.element(Fraction(num, den))
                count += 1
                if count >= limit:
                    return
        return
    if isinstance(field, PrimeField):
        for i in range(min(field.p, limit)):
            yield field.element(i)
        return
    p, e = field.p, field.e
    for code in range(min(field.order, limit)):
        digits = []
        c = code
        for _ in range(e):
            digits.append(c % p)
            c //= p
        yield field.element(digits)


def _first_rational_point(f: Poly3) -> ProjectivePoint | None:
    field = f.field
    for x0 in _field_scan(field, _SCAN_LIMIT):
        u = _univariate_in_y(f, x0)
        if not u:
            continue
        rts = roots_in_field(u)
        if rts:
            return ProjectivePoint(field, (x0, rts[0], field.one()))
    acc: dict[int, FieldElement] = {}
    for (a, _, c), v in f.terms.items():
        if c == 0:
            acc[a] = acc.get(a, field.zero()) + v
    deg = max(acc) if acc else -1
    u = polys.trim([acc.get(i, field.zero()) for i in range(deg + 1)])
    if u:
        rts = roots_in_field(u)
        if rts:
            return ProjectivePoint(field, (rts[0], field.one(), field.zero()))
    p100 = ProjectivePoint(field, (field.one(), field.zero(), field.zero()))
    if not f.evaluate_point(p100):
        return p100
    return None


def _univariate_in_y(f: Poly3, x0: FieldElement) -> Poly:
    """f(x0, y, 1) as a univariate polynomial in y."""
    field = f.field
    acc: dict[int, FieldElement] = {}
    for (a, b, _), v in f.terms.items():
        acc[b] = acc.get(b, field.zero()) + v * x0**a
    deg = max(acc) if acc else -1
    return polys.trim([acc.get(i, field.zero()) for i in range(deg + 1)])


def _frame_through(p: ProjectivePoint) -> Mat3:
    field = p.field
    o, z = field.one(), field.zero()
    e = [(o, z, z), (z, o, z), (z, z, o)]
    if p.coords[2]:
        cols = [e[0], e[1], p.coords]
    elif p.coords[1]:
        cols = [e[0], e[2], p.coords]
    else:
        cols = [e[1], e[2], p.coords]
    return mat3_from_columns(cols)


# ---------------------------------------------------------------------------
# restriction of lattice classes to the curve


class RestrictionImage:
    """Image of a lattice class in the curve's smooth-locus group.

    Additive and multiplicative images are field elements (in K and K^*
    respectively); elliptic images are group points.
    """

    __slots__ = ("curve", "value")

    def __init__(self, curve: CubicCurveModel, value):
        self.curve = curve
        self.value = value

    @property
    def kind(self) -> str:
        return self.curve.group

    def is_zero(self) -> bool:
        if self.kind == "additive":
            return not self.value
        if self.kind == "multiplicative":
            return self.value == self.curve.field.one()
        return self.value.point == self.curve.origin

    def add(self, other: "RestrictionImage") -> "RestrictionImage":
        if self.curve is not other.curve:
            raise ValueError("images live on different curves")
        if self.kind == "additive":
            return RestrictionImage(self.curve, self.value + other.value)
        if self.kind == "multiplicative":
            return RestrictionImage(self.curve, self.value * other.value)
        return RestrictionImage(self.curve, self.curve.add(self.value, other.value))

    def neg(self) -> "RestrictionImage":
        if self.kind == "additive":
            return RestrictionImage(self.curve, -self.value)
        if self.kind == "multiplicative":
            return RestrictionImage(self.curve, self.value.inverse())
        return RestrictionImage(self.curve, self.curve.negate(self.value))

    def scalar(self, n: int) -> "RestrictionImage":
        if self.kind == "additive":
            return RestrictionImage(self.curve, self.value * n)
        if n < 0:
            return self.neg().scalar(-n)
        if self.kind == "multiplicative":
            return RestrictionImage(self.curve, self.value**n)
        return RestrictionImage(self.curve, self.curve.scalar(n, self.value))

    def __eq__(self, other):
        if not isinstance(other, RestrictionImage):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __repr__(self):
        return f"RestrictionImage({self.kind}, {self.value!r})"


def _as_point_list(points) -> list[ProjectivePoint]:
    return list(getattr(points, "points", points))


def restriction_hom(model: CubicCurveModel, points, cls: LatticeVector) -> RestrictionImage:
    """Restrict the class d e_0 - sum m_i e_i to the curve: d times the
    line-section class minus the weighted sum of the marked points, as an
    element of the smooth-locus group.

    With an inflection origin the line-section class is zero (line sections
    have parameter sum 0 and parameter product 1 on the singular models);
    with a relaxed origin it is the third intersection of the tangent at
    the origin, which keeps the map a homomorphism in every case.
    """
    pts = _as_point_list(points)
    if cls.n != len(pts):
        raise ValueError(f"class indexes {cls.n} points, {len(pts)} given")
    sm = [model.smooth_point(p) for p in pts]
    return _restrict(model, sm, cls)


def _restrict(
    model: CubicCurveModel, sm: list[SmoothPoint], cls: LatticeVector
) -> RestrictionImage:
    d = cls.degree
    mults = cls.multiplicities
    if model.kind == "cuspidal":
        acc = model.field.zero()
        for m, s in zip(mults, sm):
            if m:
                acc = acc - m * s.param
        return RestrictionImage(model, acc)
    if model.kind == "nodal":
        acc = model.field.one()
        for m, s in zip(mults, sm):
            if m:
                acc = acc * s.param ** (-m)
        return RestrictionImage(model, acc)
    line_rep = SmoothPoint(model.third_intersection(model.origin, model.origin))
    acc = model.scalar(d, line_rep)
    for m, s in zip(mults, sm):
        if m:
            acc = model.add(acc, model.scalar(-m, s))
    return RestrictionImage(model, acc)


def generator_images(model: CubicCurveModel, points) -> list[RestrictionImage]:
    """Images of the simple roots under class restriction."""
    pts = _as_point_list(points)
    sm = [model.smooth_point(p) for p in pts]
    return [_restrict(model, sm, a) for a in simple_roots(len(pts))]


def image_order(img: RestrictionImage, cap: int = _ORDER_CAP) -> int | None:
    """Exact order of the image in the smooth-locus group; None for a
    non-torsion element (possible only in characteristic 0)."""
    model = img.curve
    field = model.field
    if img.is_zero():
        return 1
    if model.kind == "cuspidal":
        return field.char if field.char else None
    if model.kind == "nodal":
        if field.order is not None:
            return _multiplicative_order(img.value, field.order - 1)
        return 2 if img.value == field(-1) else None
    if field.order is None:
        return _rational_point_order(model, img.value)
    if field.order <= _POINT_COUNT_LIMIT:
        return _order_from_group_order(model, img.value, _count_points(model))
    acc = img.value
    for k in range(1, cap + 1):
        if acc.point == model.origin:
            return k
        acc = model.add(acc, img.value)
    raise BudgetError(f"point order exceeds the cap {cap}")


def _multiplicative_order(x: FieldElement, group_order: int) -> int:
    from sympy import factorint

    n = group_order
    for p, e in factorint(group_order).items():
        for _ in range(e):
            if x ** (n // p) == x.field.one():
                n //= p
            else:
                break
    return n


def _order_from_group_order(model, pt: SmoothPoint, n: int) -> int:
    from sympy import factorint

    order = n
    for p, e in factorint(n).items():
        for _ in range(e):
            cand = order // p
            if model.scalar(cand, pt).point == model.origin:
                order = cand
            else:
                break
    return order


def _count_points(model: CubicCurveModel) -> int:
    field = model.field
    one, zero = field.one(), field.zero()
    count = 0
    for x0 in field.elements():
        for y0 in field.elements():
            if not model.poly.evaluate((x0, y0, one)):
                count += 1
    for t in field.elements():
        if not model.poly.evaluate((t, one, zero)):
            count += 1
    if not model.poly.evaluate((one, zero, zero)):
        count += 1
    return count


def _rational_point_order(model: CubicCurveModel, pt: SmoothPoint) -> int | None:
    """Over Q a torsion point of a plane cubic has order at most 12, so a
    short multiple scan decides torsion against infinite order."""
    acc = pt
    for k in range(1, 13):
        if acc.point == model.origin:
            return k
        acc = model.add(acc, pt)
    return None


# ---------------------------------------------------------------------------
# pencil index, torsion and kernel verdicts


def halphen_index_check(model: CubicCurveModel, points, m: int) -> bool:
    """Does the anticanonical class restrict to an element of exact order m
    on these nine points?"""
    from sympy import factorint

    pts = _as_point_list(points)
    if len(pts) != 9:
        raise DomainError("the pencil-index check takes nine points")
    if m < 1:
        raise ValueError("the index must be positive")
    eps = restriction_hom(model, pts, -canonical_vector(9))
    if not eps.scalar(m).is_zero():
        return False
    for p in factorint(m):
        if eps.scalar(m // p).is_zero():
            return False
    return True


def torsion_set_check(model: CubicCurveModel, points) -> tuple[bool, int | None]:
    """(all generator images torsion, least exponent killing all of them)."""
    m = 1
    for img in generator_images(model, points):
        o = image_order(img)
        if o is None:
            return False, None
        m = math.lcm(m, o)
    return True, m


def harbourne_check(model: CubicCurveModel, points) -> tuple[bool, dict]:
    """For a cuspidal curve over GF(p^e): the restriction kernel equals p
    times the canonical complement iff the generator images, viewed as
    vectors over F_p, have full rank.

    Returns (verdict, description); on failure the description carries
    F_p-kernel generators in simple-root coordinates.
    """
    if model.kind != "cuspidal" or model.field.char == 0:
        raise DomainError("this kernel test applies to cuspidal curves over finite fields")
    pts = _as_point_list(points)
    n = len(pts)
    imgs = generator_images(model, pts)
    p = model.field.char
    fp = PrimeField(p)
    cols = []
    for img in imgs:
        raw = img.value.raw
        cols.append([fp(c) for c in (raw if isinstance(raw, tuple) else (raw,))])
    e = len(cols[0])
    rows = [[cols[j][i] for j in range(n)] for i in range(e)]
    rank = matrix_rank([r[:] for r in rows])
    if rank == n:
        return True, {"kernel": f"{p} * (canonical complement)", "rank": rank}
    kb = kernel_basis(rows, fp)
    gens = [[int(c.raw) for c in v] for v in kb]
    return False, {
        "kernel": "strictly larger",
        "rank": rank,
        "kernel_generators_mod_p": gens,
    }


def kernel_submodule_generators(
    model: CubicCurveModel, points, m: int
) -> list[tuple[int, ...]]:
    """Generators, in simple-root coordinates mod m, of the residues of the
    restriction kernel: all x with sum of x_i times image(alpha_i) zero in
    the group.  The implicit m * (everything) is not listed."""
    pts = _as_point_list(points)
    imgs = generator_images(model, pts)
    n = len(imgs)
    if model.kind == "cuspidal":
        p = model.field.char
        if m != p:
            raise DomainError("additive images have exponent p")
        fp = PrimeField(p)
        cols = []
        for img in imgs:
            raw = img.value.raw
            cols.append([fp(c) for c in (raw if isinstance(raw, tuple) else (raw,))])
        e = len(cols[0])
        rows = [[cols[j][i] for j in range(n)] for i in range(e)]
        kb = kernel_basis(rows, fp)
        return [tuple(int(c.raw) % m for c in v) for v in kb]
    if model.kind == "nodal":
        zeta = _element_of_order(imgs, m)
        logs = [_discrete_log(img.value, zeta, m) for img in imgs]
        return _row_kernel_mod(logs, m)
    return _elliptic_kernel_generators(model, imgs, m)


def _element_of_order(imgs: list[RestrictionImage], m: int) -> FieldElement:
    """An element of exact order m in the cyclic group generated by the
    multiplicative images."""
    acc_val = imgs[0].curve.field.one()
    acc_ord = 1
    for img in imgs:
        o = image_order(img)
        if o == 1:
            continue
        acc_val, acc_ord = _cyclic_merge(acc_val, acc_ord, img.value, o)
    if acc_ord != m:
        raise AssertionError("generator orders do not reach the stated exponent")
    return acc_val


def _cyclic_merge(a: FieldElement, oa: int, b: FieldElement, ob: int):
    """An element of order lcm(oa, ob) inside the cyclic group containing
    a and b: combine components of coprime prime-power order."""
    from sympy import factorint

    target = math.lcm(oa, ob)
    fa = factorint(oa)
    x = a.field.one()
    for p, e in factorint(target).items():
        if fa.get(p, 0) >= e:
            x = x * a ** (oa // p**e)
        else:
            x = x * b ** (ob // p**e)
    return x, target


def _discrete_log(x: FieldElement, zeta: FieldElement, m: int) -> int:
    acc = x.field.one()
    for k in range(m):
        if acc == x:
            return k
        acc = acc * zeta
    raise AssertionError("element not in the cyclic subgroup")


def _row_kernel_mod(coeffs: list[int], m: int) -> list[tuple[int, ...]]:
    """Generators of the solutions of sum coeffs_i x_i = 0 mod m."""
    from .smith import integer_kernel

    n = len(coeffs)
    aug = [list(coeffs) + [m]]
    kb = integer_kernel(aug)
    return [tuple(v[i] % m for i in range(n)) for v in kb]


def _elliptic_kernel_generators(
    model: CubicCurveModel, imgs: list[RestrictionImage], m: int
) -> list[tuple[int, ...]]:
    """Kernel residues when the images live on a smooth cubic: enumerate
    the (small) subgroup they generate, split it into at most two cyclic
    factors, and solve the resulting congruences."""
    from .smith import integer_kernel

    pts = [img.value for img in imgs]
    seen = {model.origin}
    queue = [model.zero()]
    members = [model.zero()]
    while queue:
        cur = queue.pop()
        for g in pts:
            nxt = model.add(cur, g)
            if nxt.point not in seen:
                seen.add(nxt.point)
                queue.append(nxt)
                members.append(nxt)
                if len(seen) > _SUBGROUP_CAP:
                    raise BudgetError("image subgroup exceeds the enumeration cap")
    order_h = len(members)
    orders = {s.point: _order_in_subgroup(model, s, order_h) for s in members}
    h1 = max(members, key=lambda s: (orders[s.point], _point_key(s.point)))
    d1 = orders[h1.point]
    d2 = order_h // d1
    table: dict[ProjectivePoint, tuple[int, int]] = {}
    if d2 == 1:
        acc = model.zero()
        for i in range(d1):
            table[acc.point] = (i, 0)
            acc = model.add(acc, h1)
    else:
        found = False
        for cand in sorted(members, key=lambda s: _point_key(s.point)):
            tbl: dict[ProjectivePoint, tuple[int, int]] = {}
            acc_i = model.zero()
            ok = True
            for i in range(d1):
                acc_j = acc_i
                for j in range(d2):
                    if acc_j.point in tbl:
                        ok = False
                        break
                    tbl[acc_j.point] = (i, j)
                    acc_j = model.add(acc_j, cand)
                if not ok:
                    break
                acc_i = model.add(acc_i, h1)
            if ok and len(tbl) == order_h:
                table = tbl
                found = True
                break
        if not found:
            raise AssertionError("failed to split the image subgroup")
    coords = [table[p.point] for p in pts]
    n = len(imgs)
    aug = [
        [c[0] for c in coords] + [d1, 0],
        [c[1] for c in coords] + [0, d2],
    ]
    kb = integer_kernel(aug)
    return [tuple(v[i] % m for i in range(n)) for v in kb]


def _order_in_subgroup(model, s: SmoothPoint, bound: int) -> int:
    acc = s
    for k in range(1, bound + 1):
        if acc.point == model.origin:
            return k
        acc = model.add(acc, s)
    raise AssertionError("order not found within the subgroup bound")


def unnodal_by_kernel(
    model: CubicCurveModel, points
) -> tuple[bool, LatticeVector | None, dict]:
    """No root class restricts to zero, decided as far as the certificates
    reach.  Trivial kernel residues give a complete proof (a root congruent
    to 0 mod m would make m^2 divide -2); mod-2 exclusion is also complete.
    Otherwise a bounded catalog search runs, and the certificate records
    its bound and incompleteness.

    Returns (verdict, witness_root, certificate).
    """
    from .catalog import enumerate_roots, q2_value

    pts = _as_point_list(points)
    n = len(pts)
    is_torsion, m = torsion_set_check(model, pts)
    if not is_torsion:
        raise DomainError("generator images are not torsion; no kernel modulus exists")
    if m == 1:
        witness = simple_roots(n)[1]
        return False, witness, {"certificate": "all-classes-degenerate", "modulus": 1}
    gens = kernel_submodule_generators(model, pts, m)
    nontrivial = [g for g in gens if any(c % m for c in g)]
    if not nontrivial:
        return True, None, {"certificate": "kernel-trivial", "modulus": m, "complete": True}

    sm = [model.smooth_point(p) for p in pts]
    for root in enumerate_roots(n, _CATALOG_BOUND):
        if _restrict(model, sm, root).is_zero():
            return False, root, {
                "certificate": "catalog-root",
                "modulus": m,
                "bound": _CATALOG_BOUND,
            }

    if m % 2 == 0:
        span = _mod2_span(nontrivial, n)
        if all(q2_value(v, n) == 0 for v in span):
            return True, None, {
                "certificate": "mod-2-exclusion",
                "modulus": m,
                "complete": True,
            }

    return True, None, {
        "certificate": "bounded-search",
        "modulus": m,
        "bound": _CATALOG_BOUND,
        "complete": False,
    }


def _mod2_span(gens: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """The F_2-span of the given residue generators, fully enumerated."""
    span = {tuple([0] * n)}
    for g in gens:
        v = tuple(c % 2 for c in g)
        if v in span:
            continue
        span |= {tuple((a + b) % 2 for a, b in zip(v, w)) for w in span}
    return sorted(span)
