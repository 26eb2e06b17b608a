"""Root census and mod-2 condition catalog.

Expected counts were frozen from brute-force scans done with standalone
scripts (plain integer arithmetic, no package imports): the census from a
box scan over multiplicity tuples, the 528/496 split from all 1024 residue
classes against the diagram Gram matrix, and the family sizes from the
binomials C(10,2), C(10,3), C(10,6), C(10,7) plus the single quartic class.
"""

from collections import Counter
from itertools import combinations

import pytest

from picweyl import (
    ClassFamily,
    canonical_vector,
    catalog_to_csv,
    coble_conditions,
    enumerate_roots,
    halphen_prohibited_classes,
    inner,
    q2_value,
    residue_counts_mod2,
    residue_mod2,
    root_basis_coordinates,
    simple_roots,
    vector,
)

CENSUS_N10 = {0: 45, 1: 120, 2: 210, 3: 360, 4: 850}


def test_census_n10_frozen():
    roots = enumerate_roots(10, 4)
    got = Counter(r.degree for r in roots)
    assert dict(got) == CENSUS_N10


def test_census_small_degrees_match_combinatorics():
    # degree 0: one representative per pair, degree 1: lines through three
    # points, degree 2: conics through six
    from math import comb

    assert CENSUS_N10[0] == comb(10, 2)
    assert CENSUS_N10[1] == comb(10, 3)
    assert CENSUS_N10[2] == comb(10, 6)
    # degree 3: eight points, one doubled: 10 * C(9, 7)
    assert CENSUS_N10[3] == 10 * comb(9, 7)


def test_enumerated_roots_are_roots_and_sorted():
    k = canonical_vector(10)
    roots = enumerate_roots(10, 3)
    assert all(r.is_root(k) for r in roots)
    assert list(roots) == sorted(roots, key=lambda r: r.coords)
    assert len(set(roots)) == len(roots)


def test_degree_zero_normalization():
    roots = [r for r in enumerate_roots(10, 0)]
    assert len(roots) == 45
    for r in roots:
        nz = [c for c in r.coords if c]
        assert nz[0] > 0  # first nonzero coordinate positive


def test_enumerate_roots_small_n():
    # n = 3: only the pairs and the single line class
    roots = enumerate_roots(3, 1)
    assert Counter(r.degree for r in roots) == {0: 3, 1: 1}


def test_residue_counts_frozen():
    assert residue_counts_mod2() == (528, 496)


def test_q2_even_and_odd_samples():
    # zero class is isotropic; a single simple root has q = 1
    assert q2_value((0,) * 10) == 0
    one = tuple(1 if i == 0 else 0 for i in range(10))
    assert q2_value(one) == 1


def test_residue_of_root_has_q_one():
    for r in enumerate_roots(10, 2):
        assert q2_value(residue_mod2(r)) == 1


def test_root_basis_coordinates_round_trip():
    rs = simple_roots(10)
    v = vector(3, -2, -1, -1, -1, -1, -1, -1, -1, 0, 0)
    c = root_basis_coordinates(v)
    back = sum((rs[i] * c[i] for i in range(10)), vector(*[0] * 11))
    assert back == v


def test_root_basis_coordinates_rejects_outside_span():
    with pytest.raises(ValueError):
        root_basis_coordinates(vector(1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0))


def test_coble_conditions_frozen_shape():
    fams = coble_conditions()
    assert len(fams) == 496
    by_label = Counter(f.label for f in fams)
    assert by_label == {
        "coincident_pair": 45,
        "collinear_triple": 120,
        "conic_six": 210,
        "singular_cubic_eight": 120,
        "triple_point_quartic": 1,
    }


def test_coble_conditions_exhaust_norm_one():
    fams = coble_conditions()
    residues = {f.residue for f in fams}
    assert len(residues) == 496  # pairwise distinct
    assert all(q2_value(r) == 1 for r in residues)
    # together with the isotropic count this exhausts q^{-1}(1)
    assert residue_counts_mod2()[1] == len(residues)


def test_coble_family_internals():
    fams = coble_conditions()
    k = canonical_vector(10)
    for f in fams[:50] + fams[-50:]:
        assert isinstance(f, ClassFamily)
        assert f.representative.is_root(k)
        assert residue_mod2(f.representative) == f.residue
        assert f.representative in f.representatives
        for r in f.representatives:
            assert residue_mod2(r) == f.residue
    collapsed = [f for f in fams if f.label == "singular_cubic_eight"]
    assert all(len(f.representatives) == 3 for f in collapsed)
    quartic = [f for f in fams if f.label == "triple_point_quartic"]
    assert len(quartic[0].representatives) == 10


def test_catalog_csv_header_and_size():
    fams = coble_conditions()
    text = catalog_to_csv(fams)
    lines = text.strip().splitlines()
    assert len(lines) == 497
    assert lines[0].split(",")[0] == "label"


@pytest.mark.parametrize("m,count", [(1, 156), (2, 312), (3, 396)])
def test_halphen_prohibited_class_counts(m, count):
    classes = halphen_prohibited_classes(m)
    assert len(classes) == count
    k = canonical_vector(9)
    assert all(inner(r, k) == 0 and inner(r, r) == -2 for r in classes)


def test_halphen_prohibited_rejects_bad_index():
    with pytest.raises(ValueError):
        halphen_prohibited_classes(0)
