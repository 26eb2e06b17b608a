"""Ordered point configurations in the plane and the Cremona action.

Point indices are 1-based throughout this module, matching the lattice
convention that e_i is the class over the i-th point.  Configurations are
immutable; every operation returns a new one.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .catalog import halphen_prohibited_classes
from .errors import DomainError
from .fields import Field, field_from_descriptor
from .lattice import LatticeVector
from .projgeom import (
    Mat3,
    Poly3,
    ProjectivePoint,
    frame_transform,
    kernel_basis,
    mat3_apply,
    mat3_det,
    mat3_from_columns,
    mat3_inverse,
    mat3_mul,
    monomial_exponents,
)


class PointConfiguration:
    """Ordered tuple of pairwise distinct plane points over one field."""

    __slots__ = ("field", "points")

    def __init__(self, field: Field, points: Sequence[ProjectivePoint]):
        pts = tuple(points)
        for p in pts:
            if p.field != field:
                raise ValueError("point field does not match the configuration field")
        if len(set(pts)) != len(pts):
            raise DomainError("configuration points must be pairwise distinct")
        self.field = field
        self.points = pts

    def __len__(self) -> int:
        return len(self.points)

    def point(self, i: int) -> ProjectivePoint:
        """1-based access."""
        if not 1 <= i <= len(self.points):
            raise IndexError(f"point index {i} outside 1..{len(self.points)}")
        return self.points[i - 1]

    def replace_point(self, i: int, p: ProjectivePoint) -> "PointConfiguration":
        pts = list(self.points)
        pts[i - 1] = p
        return PointConfiguration(self.field, pts)

    def __eq__(self, other):
        return (
            isinstance(other, PointConfiguration)
            and self.field == other.field
            and self.points == other.points
        )

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "points": [p.to_json() for p in self.points],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PointConfiguration":
        field = field_from_descriptor(data["field"])
        pts = [ProjectivePoint.from_json(field, c) for c in data["points"]]
        return cls(field, pts)

    def __repr__(self):
        return f"PointConfiguration({self.field}, {len(self.points)} points)"


def configuration(field: Field, coords) -> PointConfiguration:
    return PointConfiguration(field, [ProjectivePoint(field, c) for c in coords])


# ---------------------------------------------------------------------------
# interpolation


def peel_negative_multiplicities(cls: LatticeVector) -> LatticeVector:
    """Zero out negative multiplicities.  Harmless for dimension counts: a
    curve meets the exceptional class over p_s in m_s < 0 only by containing
    it as a fixed component, so the linear system does not move there."""
    coords = [cls.degree] + [min(c, 0) for c in cls.coords[1:]]
    return LatticeVector(tuple(coords))


def effectivity_test(cfg: PointConfiguration, cls: LatticeVector) -> tuple[bool, int]:
    """Does the class move on this configuration, and how much.

    Counts degree-d plane curves with multiplicity >= m_i at p_i by exact
    elimination over the configuration's field.  Returns (effective,
    projective dimension); dimension is -1 when the system is empty.
    Negative multiplicities are peeled first.

    Each point is moved to (0:0:1) by a frame change and the conditions are
    read off as vanishing coefficients of all monomials x^a y^b z^(d-a-b)
    with a + b < m_i; over any characteristic these are exactly the Hasse
    derivative conditions, no division by factorials involved.
    """
    if cls.n != len(cfg):
        raise ValueError(
            f"class on {cls.n} points against a configuration of {len(cfg)}"
        )
    cls = peel_negative_multiplicities(cls)
    d = cls.degree
    if d < 0:
        return False, -1
    field = cfg.field
    ncols = len(monomial_exponents(d))
    rows = _condition_rows(cfg, cls, d)
    if not rows:
        return True, ncols - 1
    kernel = kernel_basis(rows, field)
    dim = len(kernel) - 1
    return dim >= 0, dim


def _condition_rows(cfg: PointConfiguration, cls: LatticeVector, d: int) -> list[list]:
    rows: list[list] = []
    for p, m in zip(cfg.points, cls.multiplicities):
        if m <= 0:
            continue
        transformed = _transformed_monomials(p, d)
        for a in range(m):
            for b in range(m - a):
                rows.append([t.coefficient((a, b, d - a - b)) for t in transformed])
    return rows


_TRANSFORMED_CACHE: dict = {}


def _transformed_monomials(p: ProjectivePoint, d: int) -> list[Poly3]:
    """Basis monomials of degree d composed with the frame moving p to
    (0:0:1).  Cached per (point, degree): verdict routines hit the same
    points with hundreds of classes."""
    key = (p, d)
    hit = _TRANSFORMED_CACHE.get(key)
    if hit is not None:
        return hit
    field = p.field
    frame = _frame_with_last_column(p)
    forms = [Poly3.linear_form(field, row) for row in frame]
    powers = []
    for f in forms:
        cache = [Poly3.monomial(field, (0, 0, 0), 1)]
        for _ in range(d):
            cache.append(cache[-1] * f)
        powers.append(cache)
    hit = [powers[0][a] * powers[1][b] * powers[2][c] for a, b, c in monomial_exponents(d)]
    if len(_TRANSFORMED_CACHE) > 4096:
        _TRANSFORMED_CACHE.clear()
    _TRANSFORMED_CACHE[key] = hit
    return hit


def effective_curves_basis(cfg: PointConfiguration, cls: LatticeVector) -> list[Poly3]:
    """Basis of the linear system from effectivity_test, as ternary forms."""
    cls = peel_negative_multiplicities(cls)
    d = cls.degree
    field = cfg.field
    monos = monomial_exponents(d)
    rows = _condition_rows(cfg, cls, d)
    if not rows:
        vecs = [
            tuple(field.one() if i == j else field.zero() for j in range(len(monos)))
            for i in range(len(monos))
        ]
    else:
        vecs = kernel_basis(rows, field)
    return [
        Poly3(field, {key: c for key, c in zip(monos, v) if c}) for v in vecs
    ]


def _frame_with_last_column(p: ProjectivePoint) -> Mat3:
    """Invertible matrix whose last column is p; the first two columns are
    standard basis vectors chosen off p's support."""
    field = p.field
    o, z = field.one(), field.zero()
    e = [(o, z, z), (z, o, z), (z, z, o)]
    if p.coords[2]:
        cols = [e[0], e[1], p.coords]
    elif p.coords[1]:
        cols = [e[0], e[2], p.coords]
    else:
        cols = [e[1], e[2], p.coords]
    m = mat3_from_columns(cols)
    assert mat3_det(m)
    return m


# ---------------------------------------------------------------------------
# pencil / unnodality verdicts by interpolation


def is_unnodal_halphen(cfg: PointConfiguration, m: int) -> tuple[bool, LatticeVector | None]:
    """No prohibited class of index m is effective on these nine points.

    Returns (verdict, witness): witness is the first effective prohibited
    class when the verdict is False.
    """
    if len(cfg) != 9:
        raise DomainError("index-m pencil checks need exactly nine points")
    for cls in halphen_prohibited_classes(m):
        effective, _ = effectivity_test(cfg, cls)
        if effective:
            return False, cls
    return True, None


def is_coble_set(cfg: PointConfiguration) -> tuple[bool, dict]:
    """Ten points: a unique sextic with ten double points must exist, and no
    integral representative of the 496 nodal conditions may be effective.

    The report lists the sextic's dimension and every violated condition.
    """
    from .catalog import coble_conditions

    if len(cfg) != 10:
        raise DomainError("this verdict is for ten-point configurations")
    sextic = LatticeVector((6,) + (-2,) * 10)
    sextic_eff, sextic_dim = effectivity_test(cfg, sextic)
    violations: list[dict] = []
    for fam in coble_conditions():
        for rep in fam.representatives:
            effective, dim = effectivity_test(cfg, rep)
            if effective:
                violations.append(
                    {
                        "label": fam.label,
                        "index_set": list(fam.index_set),
                        "class": rep.to_json(),
                        "dimension": dim,
                    }
                )
    ok = sextic_eff and sextic_dim == 0 and not violations
    report = {
        "sextic_effective": sextic_eff,
        "sextic_dimension": sextic_dim,
        "violations": violations,
    }
    return ok, report


# ---------------------------------------------------------------------------
# Cremona action


def cremona_quadratic(cfg: PointConfiguration, i: int, j: int, k: int) -> PointConfiguration:
    """Standard quadratic transformation based at points i, j, k (1-based).

    The base triple moves to the coordinate triangle; every other point must
    avoid the three lines through the base pairs and gets (x:y:z) |->
    (yz:xz:xy) applied after the frame change.
    """
    n = len(cfg)
    if len({i, j, k}) != 3 or not all(1 <= t <= n for t in (i, j, k)):
        raise DomainError(f"base indices ({i},{j},{k}) invalid for {n} points")
    field = cfg.field
    base = (cfg.point(i), cfg.point(j), cfg.point(k))
    m = mat3_from_columns([p.coords for p in base])
    if not mat3_det(m):
        raise DomainError("base points are collinear")
    t = mat3_inverse(m)
    new_points: list[ProjectivePoint] = []
    for idx0, p in enumerate(cfg.points, start=1):
        if idx0 in (i, j, k):
            new_points.append(mat3_apply(t, p))  # a coordinate-triangle vertex
            continue
        q = mat3_apply(t, p)
        x, y, z = q.coords
        if not (x and y and z):
            raise DomainError(
                f"point {idx0} lies on a line through two base points"
            )
        new_points.append(ProjectivePoint(field, (y * z, x * z, x * y)))
    return PointConfiguration(field, new_points)


def act_by_word(cfg: PointConfiguration, word: Sequence[int]) -> PointConfiguration:
    """Apply a Weyl word to the configuration, first letter first.

    Letter 0 is the quadratic transformation based at points 1, 2, 3; letter
    l >= 1 swaps points l and l+1.  Domain violations carry the failing step.
    """
    out = cfg
    for step, letter in enumerate(word):
        if letter == 0:
            try:
                out = cremona_quadratic(out, 1, 2, 3)
            except DomainError as err:
                raise DomainError(f"step {step}: {err}") from None
        elif 1 <= letter < len(out):
            pts = list(out.points)
            pts[letter - 1], pts[letter] = pts[letter], pts[letter - 1]
            out = PointConfiguration(out.field, pts)
        else:
            raise DomainError(f"step {step}: letter {letter} out of range")
    return out


def projectively_equivalent(
    a: PointConfiguration, b: PointConfiguration
) -> tuple[bool, Mat3 | None]:
    """Index-preserving projective equivalence.

    Builds the candidate transform from the first four points of `a` in
    general position and checks it on everything.  Raises DomainError when
    `a` has no such four points (the notion is then not decided by a frame).
    """
    if a.field != b.field or len(a) != len(b):
        return False, None
    frame_idx = None
    for quad in combinations(range(len(a)), 4):
        if _general_position([a.points[t] for t in quad]):
            frame_idx = quad
            break
    if frame_idx is None:
        raise DomainError("no four points of the source are in general position")
    if not _general_position([b.points[t] for t in frame_idx]):
        return False, None
    ta = frame_transform(*[a.points[t] for t in frame_idx])
    tb = frame_transform(*[b.points[t] for t in frame_idx])
    m = mat3_mul(tb, mat3_inverse(ta))
    for pa, pb in zip(a.points, b.points):
        if mat3_apply(m, pa) != pb:
            return False, None
    return True, m


def _general_position(pts: list[ProjectivePoint]) -> bool:
    for triple in combinations(pts, 3):
        if not mat3_det(mat3_from_columns([p.coords for p in triple])):
            return False
    return True
