"""Projective points, 3x3 transforms, ternary forms, univariate helpers."""

import pytest

from picweyl import ExtensionField, Poly3, PrimeField, ProjectivePoint, RationalField
from picweyl.projgeom import (
    frame_transform,
    kernel_basis,
    linear_solve,
    mat3,
    mat3_apply,
    mat3_det,
    mat3_identity,
    mat3_inverse,
    mat3_mul,
    matrix_rank,
    monomial_exponents,
    restrict_to_line,
)
from picweyl import polys

F = PrimeField(101)


def pt(*coords, field=F):
    return ProjectivePoint(field, coords)


class TestProjectivePoint:
    def test_normalization(self):
        assert pt(2, 4, 6) == pt(1, 2, 3)
        assert pt(0, 5, 10) == pt(0, 1, 2)
        assert pt(3, 0, 0) == pt(1, 0, 0)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            pt(0, 0, 0)

    def test_hash_respects_scaling(self):
        assert len({pt(1, 2, 3), pt(2, 4, 6), pt(1, 2, 4)}) == 2

    def test_json_round_trip(self):
        p = pt(17, 0, 99)
        assert ProjectivePoint.from_json(F, p.to_json()) == p


class TestMat3:
    def test_mul_apply_consistency(self):
        m = mat3(F, [[1, 2, 0], [0, 1, 0], [3, 0, 1]])
        n = mat3(F, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        p = pt(5, 7, 1)
        assert mat3_apply(mat3_mul(m, n), p) == mat3_apply(m, mat3_apply(n, p))

    def test_inverse(self):
        m = mat3(F, [[2, 1, 0], [1, 1, 0], [0, 5, 3]])
        assert mat3_mul(m, mat3_inverse(m)) == mat3_identity(F)
        assert mat3_det(mat3_identity(F)) == F.one()

    def test_singular_has_no_inverse(self):
        m = mat3(F, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
        assert not mat3_det(m)
        with pytest.raises((ValueError, ZeroDivisionError)):
            mat3_inverse(m)

    def test_frame_transform(self):
        ps = [pt(1, 2, 3), pt(1, 1, 0), pt(0, 1, 1), pt(2, 1, 1)]
        m = frame_transform(*ps)
        frame = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)]
        for src, dst in zip(frame, ps):
            assert mat3_apply(m, src) == dst

    def test_frame_transform_needs_general_position(self):
        with pytest.raises(ValueError):
            frame_transform(pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(1, 1, 1))


class TestLinearAlgebra:
    def test_rank_and_kernel(self):
        rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(0)]]
        assert matrix_rank([r[:] for r in rows]) == 2
        ker = kernel_basis([r[:] for r in rows], F)
        assert len(ker) == 1
        v = ker[0]
        for r in rows:
            assert sum((c * x for c, x in zip(r, v)), F.zero()) == F.zero()

    def test_linear_solve(self):
        rows = [[F(1), F(1)], [F(1), F(100)]]
        sol = linear_solve([r[:] for r in rows], [F(3), F(1)])
        assert sol is not None
        assert rows[0][0] * sol[0] + rows[0][1] * sol[1] == F(3)
        # inconsistent system
        bad = linear_solve([[F(1), F(1)], [F(2), F(2)]], [F(0), F(1)])
        assert bad is None


class TestPoly3:
    def test_coeff_map_round_trip(self):
        data = {"021": 1, "300": -1, "201": 1, "102": -1, "003": 6}
        f = Poly3.from_coeff_map(F, data)
        assert f.degree() == 3
        assert f.is_homogeneous()
        back = f.to_coeff_map()
        assert Poly3.from_coeff_map(F, back) == f

    def test_evaluate_and_partials(self):
        f = Poly3.from_coeff_map(F, {"021": 1, "300": -1})  # y^2 z - x^3
        assert f.evaluate([F(0), F(1), F(0)]) == F.zero()
        assert f.evaluate([F(1), F(1), F(1)]) == F.zero()
        assert f.evaluate([F(1), F(2), F(1)]) == F(3)
        # euler relation: sum x_i dF/dx_i = deg * F in odd characteristic
        gx, gy, gz = (f.partial(i) for i in range(3))
        p = [F(4), F(9), F(2)]
        lhs = p[0] * gx.evaluate(p) + p[1] * gy.evaluate(p) + p[2] * gz.evaluate(p)
        assert lhs == F(3) * f.evaluate(p)

    def test_product_degree_and_values(self):
        l1 = Poly3.linear_form(F, [1, 0, -1])
        l2 = Poly3.linear_form(F, [0, 1, -1])
        g = l1 * l2
        assert g.degree() == 2
        p = [F(7), F(8), F(9)]
        assert g.evaluate(p) == l1.evaluate(p) * l2.evaluate(p)

    def test_compose_linear_is_substitution(self):
        f = Poly3.from_coeff_map(F, {"300": 1, "021": 2})
        m = mat3(F, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])  # swap x, y
        g = f.compose_linear(m)
        for coords in [(1, 2, 3), (4, 0, 1), (9, 9, 1)]:
            p = [F(c) for c in coords]
            q = [p[1], p[0], p[2]]
            assert g.evaluate(p) == f.evaluate(q)

    def test_monomial_exponents_count(self):
        assert len(monomial_exponents(3)) == 10
        assert len(monomial_exponents(6)) == 28
        assert all(sum(e) == 4 for e in monomial_exponents(4))

    def test_restrict_to_line(self):
        f = Poly3.from_coeff_map(F, {"021": 1, "300": -1, "003": 6})
        p, q = pt(0, 1, 0), pt(1, 5, 1)
        coeffs = restrict_to_line(f, p, q)
        assert len(coeffs) == 4
        # value at s=1, u=3 must match direct evaluation at p + 3q
        s, u = F(1), F(3)
        direct = f.evaluate([s * a + u * b for a, b in zip(p.coords, q.coords)])
        horner = sum(
            (c * s ** (3 - i) * u ** i for i, c in enumerate(coeffs)), F.zero()
        )
        assert horner == direct


class TestUnivariate:
    def test_divmod_and_gcd(self):
        f = polys.from_ints(F, [2, 0, 1])  # x^2 + 2
        g = polys.from_ints(F, [1, 1])  # x + 1
        q, r = polys.divmod_poly(f, g)
        assert polys.add(polys.mul(q, g), r) == f
        assert polys.degree(r) < polys.degree(g)
        h = polys.mul(f, g)
        assert polys.monic(polys.gcd(h, g)) == polys.monic(g)

    def test_roots_in_prime_field(self):
        # (x - 3)(x - 5)(x^2 + 1) over F_101; x^2 + 1 has roots since
        # 101 = 1 mod 4, so expect four roots in total
        f = polys.mul(
            polys.mul(polys.from_ints(F, [-3, 1]), polys.from_ints(F, [-5, 1])),
            polys.from_ints(F, [1, 0, 1]),
        )
        rs = polys.roots_in_field(f, seed=5)
        assert F(3) in rs and F(5) in rs and len(rs) == 4
        for r in rs:
            assert polys.evaluate(f, r) == F.zero()

    def test_roots_in_extension_field(self):
        K = ExtensionField(5, 2)
        # x^2 - 2: 2 is a non-square in F_5, so the roots live upstairs
        f = polys.from_ints(K, [-2, 0, 1])
        rs = polys.roots_in_field(f, seed=0)
        assert len(rs) == 2
        assert all(r * r == K.from_int(2) for r in rs)

    def test_rational_roots(self):
        Q = RationalField()
        f = polys.from_ints(Q, [-6, 1, 1])  # (x+3)(x-2)
        rs = polys.roots_in_field(f)
        assert {r.raw for r in rs} == {-3, 2}

    def test_square_roots(self):
        a = F(4)
        rs = polys.square_roots(a)
        assert sorted(r.raw for r in rs) == [2, 99]
        assert polys.square_roots(F(2)) == []  # 2 is not a QR mod 101
