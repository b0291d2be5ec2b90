import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from cubecat.complex import (ANTICOMMUTES, COMMUTES, CubeError, FaceCocycle, SignAssignment,
                             assemble_complex, build_hypercube, check_sign_assignment,
                             complex_for, face_cocycle, face_sign, faces, is_t1_face,
                             ladybug_type, solve_sign_assignment, standard_sign_assignment,
                             three_cubes)
from cubecat.corpus import bundled, bundled_corpus
from cubecat.diagram import LinkDiagram, parse_pd, trefoil_pd
from cubecat.frobenius import builtin_system

HOPF = parse_pd("X[1,4,2,3];X[3,2,4,1]")
KH, NESTED, ODD = (builtin_system(k) for k in ("khovanov", "nested", "odd"))
SMALL = [(n, d) for n, d in bundled_corpus() if d.c <= 6]


def test_trefoil_cube_shape():
    cube = build_hypercube(trefoil_pd(), KH)
    assert cube.n_vertices == 8
    assert cube.n_edges == 12
    assert [cube.ranks[v] for v in (0, 7)] == [8, 4]


def test_unknot_cube_is_a_point():
    cube = build_hypercube(LinkDiagram.unknot(), KH)
    assert cube.n_vertices == 1 and cube.ranks == [2] and cube.n_edges == 0


def test_hopf_cube_shape():
    cube = build_hypercube(HOPF, KH)
    assert (cube.n_vertices, cube.n_edges) == (4, 4)


def test_face_and_three_cube_counts():
    # a d-cube has C(d,2) 2^(d-2) squares and C(d,3) 2^(d-3) 3-cubes
    assert len(list(faces(4))) == 6 * 4
    assert len(list(three_cubes(4))) == 4 * 2
    assert list(faces(1)) == []


@pytest.mark.parametrize("name, d", SMALL, ids=[n for n, _ in SMALL])
def test_khovanov_faces_all_commute(name, d):
    psi = face_cocycle(build_hypercube(d, KH))
    assert psi.anticommutative() == []
    assert check_sign_assignment(psi, standard_sign_assignment(d.c)) == []


def test_one_crossing_sign_assignment_is_trivial():
    d = parse_pd("X[1,1,2,2]")
    pipe = complex_for(d, NESTED)
    assert set(pipe.eps.epsilon.values()) == {1}


def test_standard_rule_anticommutes_every_face():
    eps = standard_sign_assignment(4)
    for v, i, j in faces(4):
        prod = eps[(v, i)] * eps[(v | 1 << i, j)] * eps[(v, j)] * eps[(v | 1 << j, i)]
        assert prod == -1


@pytest.mark.parametrize("name, d", SMALL, ids=[n for n, _ in SMALL])
def test_nested_psi_matches_t1_faces(name, d):
    pipe = complex_for(d, NESTED)
    t1 = sorted(f for f in pipe.psi.psi if is_t1_face(pipe.cube, *f))
    assert pipe.psi.anticommutative() == t1
    assert check_sign_assignment(pipe.psi, pipe.eps) == []


@pytest.mark.parametrize("theory", ["khovanov", "nested", "odd"])
@pytest.mark.parametrize("name, d", SMALL, ids=[n for n, _ in SMALL])
def test_differential_squares_to_zero(theory, name, d):
    cx = complex_for(d, theory).complex
    assert cx.d_squared_violations() == []


def test_unknot_complex():
    cx = complex_for(LinkDiagram.unknot(), KH).complex
    assert {b: cx.rank(b) for b in cx.bidegrees()} == {(0, -1): 1, (0, 1): 1}


def test_unlink_complex_ranks():
    cx = complex_for(LinkDiagram.unlink(2), KH).complex
    assert {b: cx.rank(b) for b in cx.bidegrees()} == {(0, -2): 1, (0, 0): 2, (0, 2): 1}


def test_generator_count_matches_cube():
    for name, d in SMALL:
        pipe = complex_for(d, KH)
        assert sum(pipe.complex.rank(b) for b in pipe.complex.bidegrees()) == sum(pipe.cube.ranks)


def test_assemble_rejects_bad_signs():
    pipe = complex_for(trefoil_pd(), KH)
    flipped = dict(pipe.eps.epsilon)
    flipped[(0, 0)] *= -1
    with pytest.raises(CubeError, match="d o d"):
        assemble_complex(pipe.cube, SignAssignment(3, flipped))


def test_solver_rejects_non_cocycle():
    psi = {f: COMMUTES for f in faces(3)}
    psi[(0, 0, 1)] = ANTICOMMUTES
    with pytest.raises(CubeError, match="cocycle"):
        solve_sign_assignment(FaceCocycle(3, psi))


def test_odd_three_cube_detected():
    psi = {f: COMMUTES for f in faces(3)}
    psi[(0, 0, 1)] = ANTICOMMUTES
    assert FaceCocycle(3, psi).odd_three_cubes() == [(0, 0, 1, 2)]
    psi[(4, 0, 1)] = ANTICOMMUTES
    assert FaceCocycle(3, psi).odd_three_cubes() == []


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from([KH, NESTED, ODD]), st.integers(0, 2**32))
def test_random_free_choices_give_valid_assignments(item, system, seed):
    _, d = item
    psi = face_cocycle(build_hypercube(d, system))
    eps = solve_sign_assignment(psi, random.Random(seed))
    assert check_sign_assignment(psi, eps) == []


@pytest.mark.parametrize("theory", ["nested", "odd"])
def test_three_cube_parity_on_corpus(theory):
    for name, d in SMALL:
        assert face_cocycle(build_hypercube(d, builtin_system(theory))).odd_three_cubes() == []


def test_nested_anticommutes_exactly_on_t1_faces_of_8_19():
    cube = build_hypercube(bundled("knot_8_19"), NESTED)
    psi = face_cocycle(cube)
    t1 = sorted(f for f in psi.psi if is_t1_face(cube, *f))
    assert t1 and psi.anticommutative() == t1


def test_odd_ladybug_faces_vanish_both_ways():
    cube = build_hypercube(bundled("knot_8_19"), ODD)
    zero = [f for f in faces(cube.dim) if face_sign(cube, *f) is None]
    assert zero
    for v, i, j in zero:
        assert ladybug_type(cube.states[v], i, j) in ("same", "opposite")
        assert cube.states[v | 1 << i].n_circles == cube.states[v].n_circles + 1


@pytest.mark.parametrize("name, d", SMALL, ids=[n for n, _ in SMALL])
def test_quantum_grading_preserved(name, d):
    # assemble_complex raises if an edge changes j; check a direct count too
    cube = build_hypercube(d, NESTED.at_t0())
    for (v, i), cols in cube.maps.items():
        for b, col in enumerate(cols):
            for row, _, tp in col:
                assert tp == 0
                assert cube.degrees[v | 1 << i][row] + 1 == cube.degrees[v][b]


def test_cube_json_dump():
    pipe = complex_for(trefoil_pd(), NESTED)
    data = json.loads(json.dumps(pipe.cube.to_json(pipe.psi, pipe.eps)))
    assert data["dim"] == 3
    assert len(data["vertices"]) == 8 and len(data["edges"]) == 12
    assert len(data["faces"]) == 6
    assert {e["kind"] for e in data["edges"]} <= {"merge", "split", "nested merge", "nested split"}
