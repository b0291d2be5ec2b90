import pytest
from hypothesis import given, settings, strategies as st

from cubecat.corpus import bundled_corpus, parse_pd_file
from cubecat.diagram import LinkDiagram, PDError, crossings_from, parse_pd, trefoil_pd
from cubecat.resolution import resolve, trace_faces

HOPF = "X[1,4,2,3];X[3,2,4,1]"
CORPUS = [d for _, d in bundled_corpus() if d.c]


def test_hopf_link_counts():
    d = parse_pd(HOPF)
    assert d.c == 2
    assert d.components == 2
    assert d.c_plus + d.c_minus == 2
    # linking number is +-1, so both crossings share a sign
    assert len(set(d.signs)) == 1


def test_empty_diagram_rejected():
    with pytest.raises(PDError, match="empty"):
        parse_pd("")


def test_open_edges_rejected():
    with pytest.raises(PDError, match="exactly twice"):
        parse_pd("X[1,4,2,3]")


def test_malformed_token_rejected():
    with pytest.raises(PDError, match="malformed"):
        parse_pd("X[1,4,2];X[3,2,4,1]")


def test_edge_labels_must_be_contiguous():
    with pytest.raises(PDError, match="1..4"):
        parse_pd("X[1,5,2,3];X[3,2,5,1]")


def test_pd_wrapper_and_separators():
    a = parse_pd(HOPF)
    b = parse_pd("PD[X[1,4,2,3], X[3,2,4,1]]")
    c = parse_pd("X[1, 4, 2, 3]\nX[3, 2, 4, 1]")
    assert a == b == c


def test_component_never_under_needs_orient_flag():
    code = "X[1,2,3,4];X[3,2,1,4]"
    with pytest.raises(PDError, match="ambiguous"):
        parse_pd(code)
    d = parse_pd(code, orient=True)
    assert d.components == 2
    assert sorted(d.signs) == [-1, 1]


def test_inconsistent_orientation_rejected():
    # the under-strand of the second crossing runs against the first
    with pytest.raises(PDError):
        parse_pd("X[1,4,2,3];X[1,3,2,4]")


def test_trefoil_bundle():
    d = trefoil_pd()
    assert d.c == 3
    assert d.c_plus + d.c_minus == 3
    assert 2 ** d.c == 8
    assert resolve(d, "000").n_circles == 3


def test_trefoil_sign_and_mirror():
    d = trefoil_pd()
    assert d.signs == (-1, -1, -1)
    assert d.mirror().signs == (1, 1, 1)


def test_one_crossing_unknot_is_positive_or_negative():
    assert parse_pd("X[1,1,2,2]").signs == (1,)
    assert parse_pd("X[2,1,1,2]").signs == (-1,)


def test_unlink_has_no_crossings():
    d = LinkDiagram.unlink(2)
    assert d.c == 0 and d.components == 2
    with pytest.raises(PDError):
        LinkDiagram.unlink(0)


def test_pd_file_with_free_loops():
    d = parse_pd_file("# unknot\n# free-loops: 1\n")
    assert d.c == 0 and d.components == 1
    d = parse_pd_file("# free-loops: 1\nX[1,1,2,2]\n")
    assert d.components == 2
    with pytest.raises(PDError):
        parse_pd_file("# nothing here\n")


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.serialize())
def test_serialize_round_trip(d):
    again = parse_pd(d.serialize())
    assert again == d
    assert again.signs == d.signs


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.serialize())
def test_euler_formula(d):
    faces, _ = trace_faces(d)
    # corpus projections are connected
    assert d.c - 2 * d.c + len(faces) == 2


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.serialize())
def test_reversal_keeps_crossing_signs(d):
    r = d.reverse()
    assert (r.c_plus, r.c_minus) == (d.c_plus, d.c_minus)
    assert r.signs == d.signs


def test_nonplanar_rotation_rejected():
    # swapping the last two slots of one trefoil crossing gives a torus map
    with pytest.raises(PDError, match="non-planar"):
        parse_pd("X[1,4,5,2];X[3,6,4,1];X[5,2,6,3]")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_relabeling_edges_keeps_signs(d, rnd):
    perm = list(range(1, d.n_edges + 1))
    rnd.shuffle(perm)
    relabel = dict(zip(range(1, d.n_edges + 1), perm))
    e = crossings_from([tuple(relabel[x] for x in c.edges) for c in d.crossings], orient=True)
    assert e.signs == d.signs
    assert e.components == d.components
