import random

import pytest

from cubecat.complex import (CubeError, SignAssignment, build_hypercube, complex_for,
                             face_cocycle, solve_sign_assignment, standard_sign_assignment)
from cubecat.corpus import bundled, bundled_corpus
from cubecat.diagram import LinkDiagram, parse_pd, trefoil_pd
from cubecat.equivalence import (Certificate, build_phi, classify_system, compare_mod2,
                                 enumerate_sign_systems, identity_map,
                                 verify_outer_face_invariance, verify_sign_equivalence,
                                 verify_theorem1)
from cubecat.frobenius import ONE, X, all_sign_params, builtin_system, parametrized_system

HOPF = parse_pd("X[1,4,2,3];X[3,2,4,1]")
KH, NESTED = builtin_system("khovanov"), builtin_system("nested")
SMALL = [(n, d) for n, d in bundled_corpus() if d.c <= 6]


def test_phi_on_a_depth_one_circle():
    # figure-eight at 0011 has circles at depths 0, 1, 2
    d = bundled("figure_eight")
    phi = build_phi(build_hypercube(d, NESTED), build_hypercube(d, KH))
    v = 0b1100
    state = build_hypercube(d, KH).states[v]
    diag = phi.diagonals[v]
    for b, s in enumerate(diag):
        expected = 1
        for k, dep in enumerate(state.depths):
            if b >> k & 1:
                expected *= (-1) ** dep
        assert s == expected
    assert phi.is_invertible()


def test_phi_is_identity_without_nesting():
    phi = build_phi(build_hypercube(LinkDiagram.unlink(2), NESTED),
                    build_hypercube(LinkDiagram.unlink(2), KH))
    assert phi.diagonals == ((1, 1, 1, 1),)


def test_phi_rejects_mismatched_cubes():
    with pytest.raises(ValueError):
        build_phi(build_hypercube(trefoil_pd(), NESTED), build_hypercube(HOPF, KH))


@pytest.mark.parametrize("d", [LinkDiagram.unknot(), trefoil_pd(), HOPF],
                         ids=["unknot", "trefoil", "hopf"])
def test_theorem1_small(d):
    cert = verify_theorem1(d, "x")
    assert cert.ok, cert.checks
    assert set(cert.checks) >= {"cone parity", "chain map", "bijective", "homology equal"}


def test_theorem1_on_8_19_with_torus_faces():
    cert = verify_theorem1(bundled("knot_8_19"), "8_19")
    assert cert.ok
    assert cert.details["torus faces"] > 0


@pytest.mark.parametrize("name, d", SMALL, ids=[n for n, _ in SMALL])
def test_phi_intertwines_on_every_saddle_type(name, d):
    # the cone chain map check covers merges, splits, nested or not
    nested = build_hypercube(d, NESTED)
    kinds = {nested.edge_kind(v, i) for v, i in nested.maps}
    cert = verify_theorem1(d, name)
    assert cert.checks["chain map"], kinds


def test_equal_signs_give_trivial_eta():
    pipe = complex_for(trefoil_pd(), NESTED)
    eta, ok = verify_sign_equivalence(pipe.cube, pipe.eps, pipe.eps)
    assert ok and set(v for d in eta.diagonals for v in d) == {1}


def test_standard_rule_vs_solver_on_khovanov():
    for name, d in SMALL:
        pipe = complex_for(d, KH)
        _, ok = verify_sign_equivalence(pipe.cube, pipe.eps, standard_sign_assignment(d.c))
        assert ok, name


@pytest.mark.parametrize("name, d", SMALL, ids=[n for n, _ in SMALL])
def test_random_pairs_are_equivalent(name, d):
    rng = random.Random(name)
    cube = build_hypercube(d, NESTED)
    psi = face_cocycle(cube)
    for _ in range(10):
        e1, e2 = solve_sign_assignment(psi, rng), solve_sign_assignment(psi, rng)
        _, ok = verify_sign_equivalence(cube, e1, e2)
        assert ok


def test_non_coboundary_is_rejected():
    pipe = complex_for(trefoil_pd(), KH)
    bad = dict(pipe.eps.epsilon)
    bad[(0, 0)] *= -1
    with pytest.raises(CubeError):
        verify_sign_equivalence(pipe.cube, pipe.eps, SignAssignment(3, bad))


def test_32_valid_systems():
    report = enumerate_sign_systems([("trefoil", trefoil_pd())])
    assert report["tuples"] == 1024 and report["valid"] == 32
    assert report["ok"]
    bases = {s["class"]["base"] for s in report["systems"]}
    assert bases <= {"khovanov", "nested"}


def test_all_plus_system_is_khovanov():
    cls = classify_system(parametrized_system((1,) * 10).system)
    assert cls["base"] == "khovanov"
    assert set(cls["signs"].values()) == {1}


def test_flipped_m0_system_is_certified():
    flipped = [e for e in all_sign_params()
               if parametrized_system(e).valid
               and classify_system(parametrized_system(e).system)["signs"]["m0"] == -1]
    assert flipped
    report = enumerate_sign_systems([("trefoil", trefoil_pd()), ("hopf", HOPF)])
    by_e = {tuple(s["e"]): s for s in report["systems"]}
    assert all(by_e[tuple(e.e)]["ok"] for e in flipped)


def test_parametrized_unit_and_counit_are_standard():
    ps = parametrized_system((1,) * 10)
    assert dict((lab, c) for lab, c, _ in ps.system.unit) == {ONE: 1}
    assert ps.system.counit[X] == 1


@pytest.mark.parametrize("d", [LinkDiagram.unknot(), HOPF, trefoil_pd()],
                         ids=["unknot", "hopf", "trefoil"])
def test_mod2_agreement_small(d):
    assert compare_mod2(d, "x").ok


def test_outer_faces_of_unknot_and_trefoil():
    cert = verify_outer_face_invariance(LinkDiagram.unknot(), "unknot")
    assert cert.ok and cert.details["faces"] == 2
    cert = verify_outer_face_invariance(trefoil_pd(), "trefoil")
    assert cert.ok and cert.details["faces"] == 5
    assert verify_outer_face_invariance(HOPF, "hopf").ok


def test_certificate_json():
    cert = Certificate("k", "d", {"b": True, "a": False})
    assert not cert.ok
    assert list(cert.to_json()["checks"]) == ["a", "b"]


def test_identity_map_shape():
    cube = build_hypercube(HOPF, KH)
    assert [len(x) for x in identity_map(cube).diagonals] == cube.ranks
