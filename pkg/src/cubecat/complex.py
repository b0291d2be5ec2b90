"""The hypercube of resolutions, its face cocycle, sign assignments, and the
bigraded chain complex.

Vertices are integers whose bit ``i`` is the smoothing of crossing ``i``.
The basis of a vertex module is indexed by integers too: bit ``k`` of a basis
index is the label of circle ``k`` (``0`` for ``1``, ``1`` for ``X``), so a
vertex with ``n`` circles has rank ``2**n``.

Edge maps are stored by column: ``maps[(v, i)][col]`` lists the
``(row, coeff, t_power)`` entries of the image of tail generator ``col``.
The face cocycle follows the convention ``psi = +1`` on anticommutative
faces and ``psi = -1`` on commutative ones, so a sign assignment ``eps``
must satisfy ``eps(e1) eps(e2) eps(e3) eps(e4) = psi`` on every face.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .diagram import LinkDiagram
from .frobenius import FrobeniusSystem, degree, edge_map_on_basis
from .resolution import ResolvedState, SaddleData, resolve, saddle_between

__all__ = [
    "CubeError",
    "Hypercube",
    "FaceCocycle",
    "SignAssignment",
    "ChainComplex",
    "build_hypercube",
    "face_cocycle",
    "face_sign",
    "COMMUTES",
    "ANTICOMMUTES",
    "is_t1_face",
    "ladybug_type",
    "solve_sign_assignment",
    "standard_sign_assignment",
    "check_sign_assignment",
    "assemble_complex",
    "faces",
    "three_cubes",
    "Pipeline",
    "complex_for",
]

COMMUTES, ANTICOMMUTES = -1, 1

# Which ladybug configuration commutes in the odd theory. Both composites of
# a ladybug face vanish, so its sign is a convention; the two arrow patterns
# must be assigned opposite values for psi to be a cocycle.
ODD_COMMUTING_LADYBUG = "opposite"


class CubeError(RuntimeError):
    """An internal certification failure: the cube is not a valid complex."""


def _labels(b: int, n: int) -> tuple[int, ...]:
    return tuple((b >> k) & 1 for k in range(n))


def _index(labels) -> int:
    return sum(l << k for k, l in enumerate(labels))


def faces(dim: int):
    """All squares ``(v, i, j)`` with ``i < j`` and bits ``i, j`` of ``v`` clear."""
    for i, j in itertools.combinations(range(dim), 2):
        mask = (1 << i) | (1 << j)
        for v in range(1 << dim):
            if not v & mask:
                yield v, i, j


def three_cubes(dim: int):
    for i, j, k in itertools.combinations(range(dim), 3):
        mask = (1 << i) | (1 << j) | (1 << k)
        for v in range(1 << dim):
            if not v & mask:
                yield v, i, j, k


def _cube_faces(v, i, j, k):
    bi, bj, bk = 1 << i, 1 << j, 1 << k
    return [(v, i, j), (v, i, k), (v, j, k), (v | bk, i, j), (v | bj, i, k), (v | bi, j, k)]


@dataclass
class Hypercube:
    """Vertex ranks and exact edge maps of a cube of dimension ``dim``.

    Diagram cubes also carry the resolved states, the saddle of each edge and
    the quantum degree of each basis vector before grading shifts.
    """

    dim: int
    ranks: list[int]
    maps: dict
    degrees: list[list[int]] = field(default_factory=list)
    states: Optional[list[ResolvedState]] = None
    saddles: Optional[dict] = None
    diagram: Optional[LinkDiagram] = None
    system: Optional[FrobeniusSystem] = None
    outer_face: Optional[int] = None
    zero_face: Optional[Callable] = None  # psi for faces whose composites both vanish

    @property
    def n_vertices(self) -> int:
        return 1 << self.dim

    @property
    def n_edges(self) -> int:
        return len(self.maps)

    def edge_kind(self, v: int, i: int) -> str:
        s = self.saddles[(v, i)]
        return ("nested " if s.nested else "") + s.kind

    def to_json(self, psi: Optional["FaceCocycle"] = None,
                eps: Optional["SignAssignment"] = None) -> dict:
        out = {
            "dim": self.dim,
            "vertices": [{"word": _word(v, self.dim), "rank": self.ranks[v],
                          **({"depths": list(self.states[v].depths)} if self.states else {})}
                         for v in range(self.n_vertices)],
            "edges": [{"tail": _word(v, self.dim), "crossing": i,
                       **({"kind": self.edge_kind(v, i)} if self.saddles else {}),
                       **({"eps": eps.epsilon[(v, i)]} if eps else {})}
                      for v, i in sorted(self.maps)],
        }
        if psi is not None:
            out["faces"] = [{"tail": _word(v, self.dim), "directions": [i, j], "psi": s}
                            for (v, i, j), s in sorted(psi.psi.items())]
        return out


def _word(v: int, dim: int) -> str:
    return "".join(str((v >> i) & 1) for i in range(dim))


def build_hypercube(diagram: LinkDiagram, system: FrobeniusSystem,
                    outer_face: Optional[int] = None) -> Hypercube:
    """Resolve every vertex and materialize every edge map."""
    c = diagram.c
    states = [resolve(diagram, _labels(v, c), outer_face) for v in range(1 << c)]
    ranks = [1 << s.n_circles for s in states]
    degrees = [[degree(_labels(b, s.n_circles)) for b in range(1 << s.n_circles)] for s in states]
    maps, saddles = {}, {}
    for v in range(1 << c):
        for i in range(c):
            if v >> i & 1:
                continue
            h = v | (1 << i)
            sad = saddle_between(diagram, states[v], states[h], i)
            saddles[(v, i)] = sad
            n_tail, n_head = states[v].n_circles, states[h].n_circles
            cols = []
            for b in range(ranks[v]):
                rows = edge_map_on_basis(system, sad, _labels(b, n_tail), n_head)
                cols.append([(_index(w), k, tp) for w, k, tp in rows])
            maps[(v, i)] = cols
    cube = Hypercube(dim=c, ranks=ranks, maps=maps, degrees=degrees, states=states,
                     saddles=saddles, diagram=diagram, system=system, outer_face=outer_face)
    if system.odd:
        cube.zero_face = lambda v, i, j: _odd_zero_face(cube, v, i, j)
    return cube


# ---------------------------------------------------------------------------
# faces


def _compose(first, second) -> list[dict]:
    out = []
    for col in first:
        acc: dict = {}
        for mid, k1, t1 in col:
            for row, k2, t2 in second[mid]:
                key = (row, t1 + t2)
                v = acc.get(key, 0) + k1 * k2
                if v:
                    acc[key] = v
                else:
                    del acc[key]
        out.append(acc)
    return out


def _face_paths(cube: Hypercube, v: int, i: int, j: int):
    bi, bj = 1 << i, 1 << j
    via_i = _compose(cube.maps[(v, i)], cube.maps[(v | bi, j)])
    via_j = _compose(cube.maps[(v, j)], cube.maps[(v | bj, i)])
    return via_i, via_j


def face_sign(cube: Hypercube, v: int, i: int, j: int) -> Optional[int]:
    """``COMMUTES``, ``ANTICOMMUTES``, or ``None`` when both paths vanish."""
    a, b = _face_paths(cube, v, i, j)
    if not any(a) and not any(b):
        return None
    if a == b:
        return COMMUTES
    if all(x == {k: -val for k, val in y.items()} for x, y in zip(a, b)):
        return ANTICOMMUTES
    raise CubeError(f"face at {_word(v, cube.dim)} in directions {i},{j} "
                    "neither commutes nor anticommutes")


def is_t1_face(cube: Hypercube, v: int, i: int, j: int) -> bool:
    """A circle splits and re-merges both ways, nested along exactly one way.

    Other circles of the state are carried along and do not matter.
    """
    bi, bj = 1 << i, 1 << j
    n = [cube.states[w].n_circles for w in (v, v | bi, v | bj, v | bi | bj)]
    if n[1:] != [n[0] + 1, n[0] + 1, n[0]]:
        return False
    return cube.saddles[(v, i)].nested != cube.saddles[(v, j)].nested


def ladybug_type(state: ResolvedState, i: int, j: int) -> str:
    """Arrow pattern of two chords that each split the same circle.

    The circle is oriented as the boundary of the side holding chord ``i``;
    each chord points from its ``a-b`` arc to its ``c-d`` arc. Walking from
    the tail of chord ``i``, the pattern is ``"same"`` if the tail of chord
    ``j`` comes before its head, ``"opposite"`` otherwise.
    """
    for route in state.routes:
        pos = {}
        for idx, (_, y, t_in, t_out) in enumerate(route):
            if y in (i, j):
                pos[(y, {t_in, t_out} == {0, 1})] = (idx, t_in)
        if len(pos) == 4:
            break
    else:
        raise CubeError(f"crossings {i} and {j} do not lie on one circle")
    length = len(route)
    forward = pos[(i, True)][1] == 0  # chord i lies left of an a->b pass
    sgn = 1 if forward else -1
    start = pos[(i, True)][0]

    def dist(p):
        return (sgn * (p - start)) % length

    return "same" if dist(pos[(j, True)][0]) < dist(pos[(j, False)][0]) else "opposite"


def _odd_zero_face(cube: Hypercube, v: int, i: int, j: int) -> int:
    bi, bj = 1 << i, 1 << j
    n = [cube.states[w].n_circles for w in (v, v | bi, v | bj, v | bi | bj)]
    if n[1:] != [n[0] + 1, n[0] + 1, n[0]]:
        raise CubeError(f"vanishing face at {_word(v, cube.dim)} is not a ladybug")
    kind = ladybug_type(cube.states[v], i, j)
    return COMMUTES if kind == ODD_COMMUTING_LADYBUG else ANTICOMMUTES


@dataclass(frozen=True)
class FaceCocycle:
    """``psi`` on every face ``(v, i, j)``; ``+1`` marks anticommutative faces."""

    dim: int
    psi: dict

    def anticommutative(self) -> list:
        return sorted(f for f, s in self.psi.items() if s == ANTICOMMUTES)

    def odd_three_cubes(self) -> list:
        """3-cubes with an odd number of anticommutative faces (should be none)."""
        bad = []
        for cube in three_cubes(self.dim):
            prod = 1
            for f in _cube_faces(*cube):
                prod *= self.psi[f]
            if prod != 1:
                bad.append(cube)
        return bad


def face_cocycle(cube: Hypercube, check: bool = True) -> FaceCocycle:
    """Compare the two paths around every face and record ``psi``.

    Raises
    ------
    CubeError
        If a face neither commutes nor anticommutes, if both of its paths
        vanish and the cube has no rule for that, or (with ``check``) if some
        3-cube has an odd number of anticommutative faces.
    """
    psi = {}
    for v, i, j in faces(cube.dim):
        s = face_sign(cube, v, i, j)
        if s is None:
            if cube.zero_face is None:
                # both composites vanish identically; either sign is consistent
                s = COMMUTES
            else:
                s = cube.zero_face(v, i, j)
        psi[(v, i, j)] = s
    cocycle = FaceCocycle(cube.dim, psi)
    if check:
        bad = cocycle.odd_three_cubes()
        if bad:
            v, i, j, k = bad[0]
            raise CubeError(f"{len(bad)} 3-cubes have odd anticommutative parity, e.g. at "
                            f"{_word(v, cube.dim)} in directions {i},{j},{k}")
    return cocycle


# ---------------------------------------------------------------------------
# sign assignments


@dataclass(frozen=True)
class SignAssignment:
    dim: int
    epsilon: dict

    def __getitem__(self, edge) -> int:
        return self.epsilon[edge]


def _face_edges(v, i, j):
    return ((v, i), (v | (1 << i), j), (v, j), (v | (1 << j), i))


def check_sign_assignment(psi: FaceCocycle, eps: SignAssignment) -> list:
    """Faces where the product of the four edge signs differs from ``psi``."""
    bad = []
    for f, s in psi.psi.items():
        prod = 1
        for e in _face_edges(*f):
            prod *= eps.epsilon[e]
        if prod != s:
            bad.append(f)
    return bad


def solve_sign_assignment(psi: FaceCocycle, rng: Optional[random.Random] = None
                          ) -> SignAssignment:
    """Solve ``eps(e1) eps(e2) eps(e3) eps(e4) = psi`` over F2.

    Edges are processed in order of direction, then tail. An edge ``(w, j)``
    whose tail has no set bit below ``j`` is free; it is set to ``+1`` (or
    drawn from ``rng``). Every other edge is the only undetermined edge of
    the face spanned with the lowest set bit of its tail, which fixes it.
    The result is checked against every face.

    Raises
    ------
    CubeError
        If ``psi`` is not a cocycle, so no assignment exists.
    """
    dim = psi.dim
    eps: dict = {}
    for j in range(dim):
        bj = 1 << j
        for w in range(1 << dim):
            if w & bj:
                continue
            low = w & (bj - 1)
            if not low:
                eps[(w, j)] = rng.choice((1, -1)) if rng else 1
                continue
            i = (low & -low).bit_length() - 1
            u = w ^ (1 << i)
            # face (u, i, j): edges (u,i), (w,j), (u,j), (u|bj, i)
            eps[(w, j)] = psi.psi[(u, i, j)] * eps[(u, i)] * eps[(u, j)] * eps[(u | bj, i)]
    out = SignAssignment(dim, eps)
    bad = check_sign_assignment(psi, out)
    if bad:
        v, i, j = bad[0]
        raise CubeError(f"no sign assignment: face {_word(v, dim)} ({i},{j}) is violated; "
                        "psi is not a cocycle")
    return out


def standard_sign_assignment(dim: int) -> SignAssignment:
    """``-1`` on edges whose changed letter has an odd number of 1s before it."""
    eps = {}
    for w in range(1 << dim):
        for i in range(dim):
            if not w >> i & 1:
                eps[(w, i)] = -1 if bin(w & ((1 << i) - 1)).count("1") % 2 else 1
    return SignAssignment(dim, eps)


# ---------------------------------------------------------------------------
# chain complex


@dataclass
class ChainComplex:
    """Bigraded free complex at ``t = 0``.

    ``generators[(i, j)]`` lists ``(vertex, basis_index)`` pairs;
    ``differential[(i, j)]`` is the sparse matrix ``{(row, col): value}``
    from bidegree ``(i, j)`` to ``(i + 1, j)``, rows and columns indexing the
    generator lists.
    """

    generators: dict
    differential: dict
    c_plus: int = 0
    c_minus: int = 0
    name: str = ""

    def rank(self, bideg) -> int:
        return len(self.generators.get(bideg, ()))

    def bidegrees(self) -> list:
        return sorted(self.generators)

    def matrix(self, bideg):
        """``(n_rows, n_cols, entries)`` of the differential leaving ``bideg``."""
        i, j = bideg
        return (self.rank((i + 1, j)), self.rank(bideg), self.differential.get(bideg, {}))

    def d_squared_violations(self) -> list:
        """Bidegrees where ``d o d`` is nonzero."""
        bad = []
        for (i, j), first in self.differential.items():
            second = self.differential.get((i + 1, j))
            if not first or not second:
                continue
            if _sparse_product(second, first):
                bad.append((i, j))
        return bad


def _sparse_product(a: dict, b: dict) -> dict:
    """``a @ b`` for ``{(row, col): value}`` matrices."""
    by_row: dict = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, m), v in a.items():
        for c, w in by_row.get(m, ()):
            key = (r, c)
            s = out.get(key, 0) + v * w
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def assemble_complex(cube: Hypercube, eps: SignAssignment, *, c_plus: Optional[int] = None,
                     c_minus: Optional[int] = None, certify: bool = True) -> ChainComplex:
    """Signed sum of the edge maps at ``t = 0`` with bigrading shifts.

    A generator at a vertex of height ``k`` with degree ``deg`` sits at
    ``i = k - c_minus`` and ``j = deg + k + c_plus - 2 c_minus``.

    Raises
    ------
    CubeError
        If ``d o d != 0`` in some bidegree, or if an edge map breaks the
        quantum grading.
    """
    if c_plus is None:
        c_plus = cube.diagram.c_plus if cube.diagram else 0
    if c_minus is None:
        c_minus = cube.diagram.c_minus if cube.diagram else 0
    gens: dict = {}
    where: dict = {}
    for v in range(cube.n_vertices):
        k = bin(v).count("1")
        for b in range(cube.ranks[v]):
            bideg = (k - c_minus, cube.degrees[v][b] + k + c_plus - 2 * c_minus)
            lst = gens.setdefault(bideg, [])
            where[(v, b)] = (bideg, len(lst))
            lst.append((v, b))
    diff: dict = {}
    for (v, i), cols in cube.maps.items():
        s = eps.epsilon[(v, i)]
        h = v | (1 << i)
        for b, col in enumerate(cols):
            src, ci = where[(v, b)]
            for row, k, tp in col:
                if tp:
                    continue
                dst, ri = where[(h, row)]
                if dst != (src[0] + 1, src[1]):
                    raise CubeError(f"edge ({_word(v, cube.dim)}, {i}) breaks the quantum grading")
                m = diff.setdefault(src, {})
                val = m.get((ri, ci), 0) + s * k
                if val:
                    m[(ri, ci)] = val
                else:
                    del m[(ri, ci)]
    cx = ChainComplex(gens, diff, c_plus, c_minus,
                      name=cube.system.name if cube.system else "")
    if certify:
        bad = cx.d_squared_violations()
        if bad:
            raise CubeError(f"d o d != 0 in bidegrees {bad}")
    return cx


@dataclass
class Pipeline:
    """Everything built on the way from a diagram to its chain complex."""

    cube: Hypercube
    psi: FaceCocycle
    eps: SignAssignment
    complex: ChainComplex


def complex_for(diagram: LinkDiagram, system, outer_face: Optional[int] = None,
                rng: Optional[random.Random] = None) -> Pipeline:
    """Build the cube, its cocycle, a sign assignment and the signed complex.

    ``system`` is a :class:`FrobeniusSystem` or a built-in name.
    """
    if isinstance(system, str):
        from .frobenius import builtin_system
        system = builtin_system(system)
    cube = build_hypercube(diagram, system, outer_face)
    psi = face_cocycle(cube)
    eps = solve_sign_assignment(psi, rng)
    return Pipeline(cube, psi, eps, assemble_complex(cube, eps))
