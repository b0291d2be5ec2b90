import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy import GF
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.matrices import DomainMatrix

from cubecat.complex import complex_for
from cubecat.corpus import bundled, bundled_corpus
from cubecat.diagram import LinkDiagram, crossings_from, parse_pd
from cubecat.homology import (LaurentPoly, graded_euler_characteristic, homology_table,
                              invariant_factors, kauffman_bracket_oracle, parse_coefficients,
                              rank_mod_p, smith_normal_form)

SMALL = [(n, d) for n, d in bundled_corpus() if d.c <= 6]


def _sparse(rows):
    return {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v}


def _sympy_factors(rows):
    m = sympy.Matrix(rows)
    if m.is_zero_matrix:
        return ()
    d = sympy_snf(m, domain=sympy.ZZ)
    return tuple(sorted(abs(int(d[k, k])) for k in range(min(d.shape)) if d[k, k]))


def test_snf_small_example():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert invariant_factors(_sparse([[2, 4], [6, 8]])) == (2, 4)


def test_snf_identity_and_zero():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == ()
    assert invariant_factors({}) == ()


def test_snf_transforms_diagonalize():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    res = smith_normal_form(m, transforms=True)
    left, right = sympy.Matrix(res.left), sympy.Matrix(res.right)
    d = left * sympy.Matrix(m) * right
    assert abs(left.det()) == 1 and abs(right.det()) == 1
    assert [d[k, k] for k in range(3)] == list(res.diagonal)
    assert all(d[r, c] == 0 for r in range(3) for c in range(3) if r != c)


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_invariant_factors_match_sympy(rows):
    expected = _sympy_factors(rows)
    assert invariant_factors(_sparse(rows)) == expected
    assert smith_normal_form(rows).diagonal == expected


@settings(max_examples=60, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5]))
def test_rank_mod_p_matches_sympy(rows, p):
    dm = DomainMatrix.from_list_sympy(len(rows), len(rows[0]), rows).convert_to(GF(p))
    assert rank_mod_p(_sparse(rows), p) == dm.rank()


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_transforms_are_unimodular(rows):
    res = smith_normal_form(rows, transforms=True)
    left, right = sympy.Matrix(res.left), sympy.Matrix(res.right)
    assert abs(left.det()) == 1 and abs(right.det()) == 1
    d = left * sympy.Matrix(rows) * right
    diag = [d[k, k] for k in range(min(d.shape)) if d[k, k]]
    assert tuple(abs(int(x)) for x in diag) == res.diagonal


def test_right_trefoil_khovanov_table():
    cx = complex_for(bundled("trefoil_right_3"), "khovanov").complex
    t = homology_table(cx)
    assert t.betti() == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}
    assert t.torsion() == {(3, 7): (2,)}


def test_right_trefoil_jones():
    cx = complex_for(bundled("trefoil_right_3"), "khovanov").complex
    expected = LaurentPoly({1: 1, 3: 1, 5: 1, 9: -1})
    assert graded_euler_characteristic(cx) == expected
    assert homology_table(cx).euler() == expected


def test_odd_trefoil_is_free():
    t = homology_table(complex_for(bundled("trefoil_right_3"), "odd").complex)
    assert t.torsion() == {} and t.total_rank() == 6


def test_unknot_and_unlink_euler():
    unknot = graded_euler_characteristic(complex_for(LinkDiagram.unknot(), "khovanov").complex)
    assert unknot == LaurentPoly({1: 1, -1: 1})
    two = graded_euler_characteristic(complex_for(LinkDiagram.unlink(2), "khovanov").complex)
    assert two == unknot * unknot


def test_hopf_euler_matches_oracle():
    d = parse_pd("X[1,4,2,3];X[3,2,4,1]")
    cx = complex_for(d, "khovanov").complex
    assert graded_euler_characteristic(cx) == kauffman_bracket_oracle(d)


@pytest.mark.parametrize("name, d", SMALL, ids=[n for n, _ in SMALL])
def test_coefficient_changes_are_consistent(name, d):
    cx = complex_for(d, "khovanov").complex
    z, q, f2 = (homology_table(cx, c) for c in ("Z", "Q", "F2"))
    assert q.betti() == z.betti()
    assert q.torsion() == {}
    for k, r in z.betti().items():
        assert f2.betti().get(k, 0) >= r
    # universal coefficients: every Z/2^a summand adds one in two adjacent degrees
    assert f2.total_rank() == z.total_rank() + 2 * sum(
        sum(1 for x in t if x % 2 == 0) for t in z.torsion().values())


def test_parse_coefficients():
    assert parse_coefficients("Z") == 0
    assert parse_coefficients("q") == -1
    assert parse_coefficients("F_3") == 3
    for bad in ("F4", "R", "F1"):
        with pytest.raises(ValueError):
            parse_coefficients(bad)


def test_laurent_arithmetic():
    a = LaurentPoly({1: 1, -1: 1})
    assert a ** 2 == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert a - a == LaurentPoly()
    assert str(LaurentPoly()) == "0"
    assert str(LaurentPoly({1: 1, 3: 1, 5: 1, 9: -1})) == "-q^9 + q^5 + q^3 + q"
    assert str(LaurentPoly({-2: -3, 0: 1})) == "1 - 3q^-2"


def test_table_json_schema():
    t = homology_table(complex_for(bundled("trefoil_right_3"), "khovanov").complex,
                       diagram="3_1")
    data = t.to_json()
    assert set(data) == {"theory", "coefficients", "diagram", "entries", "euler"}
    assert data["entries"][0] == {"i": 0, "j": 1, "rank": 1, "torsion": []}


def test_oracle_is_invariant_under_relabeling():
    d = bundled("figure_eight")
    perm = list(range(1, d.n_edges + 1))
    random.Random(3).shuffle(perm)
    relabel = dict(zip(range(1, d.n_edges + 1), perm))
    e = crossings_from([tuple(relabel[x] for x in c.edges) for c in d.crossings], orient=True)
    assert kauffman_bracket_oracle(e) == kauffman_bracket_oracle(d)
