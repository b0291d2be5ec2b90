"""Full smoothings of a diagram, circle nesting, and saddle classification.

Smoothing convention for ``X[a,b,c,d]``: the 0-smoothing joins ``a-b`` and
``c-d``, the 1-smoothing joins ``a-d`` and ``b-c``.

Everything here is combinatorial. The projection's faces are traced from the
rotation system; a smoothing glues faces across each crossing, and the
regions of the resulting circle configuration are the glued classes. Circles
and regions form a tree (disjoint circles on the sphere), which rooted at
the outer region gives each circle's nesting depth.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .diagram import LinkDiagram

__all__ = [
    "ResolutionError",
    "SmoothingWord",
    "ResolvedState",
    "SaddleData",
    "trace_faces",
    "face_count",
    "resolve",
    "nesting_depths",
    "classify_saddle",
    "saddle_between",
]

# slot pairs joined by each smoothing
_PAIRS = ({0: 1, 1: 0, 2: 3, 3: 2}, {0: 3, 3: 0, 1: 2, 2: 1})


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class SmoothingWord:
    """A vertex label: one bit per crossing, in crossing order."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ResolutionError(f"smoothing bits must be 0/1, got {self.bits}")

    @property
    def height(self) -> int:
        return sum(self.bits)

    @classmethod
    def parse(cls, text: str) -> "SmoothingWord":
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_int(cls, value: int, c: int) -> "SmoothingWord":
        return cls(tuple((value >> i) & 1 for i in range(c)))

    def to_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def __str__(self):
        return "".join(map(str, self.bits))


@dataclass(frozen=True)
class ResolvedState:
    """Circles of one full smoothing, in canonical order (depth, smallest arc).

    ``sides[k]`` holds the two regions bordering circle ``k``; regions are
    integer labels local to this state. ``routes[k]`` is the traversal of
    circle ``k`` as ``(edge, crossing, slot_in, slot_out)`` steps, where the
    edge arrives at ``crossing`` through ``slot_in`` and the circle leaves
    through ``slot_out``. Free loops have empty routes.
    """

    word: tuple[int, ...]
    circles: tuple[tuple[int, ...], ...]
    sides: tuple[tuple[int, int], ...]
    outer_region: int
    depths: tuple[int, ...]
    parents: tuple[Optional[int], ...]
    routes: tuple[tuple[tuple[int, int, int, int], ...], ...] = ()
    left_sides: tuple[int, ...] = ()
    arc_circle: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    def contains(self, outer: int, inner: int) -> bool:
        """True if circle ``outer`` strictly contains circle ``inner``."""
        p = self.parents[inner]
        while p is not None:
            if p == outer:
                return True
            p = self.parents[p]
        return False

    def to_json(self) -> dict:
        return {
            "word": "".join(map(str, self.word)),
            "circles": [list(c) for c in self.circles],
            "depths": list(self.depths),
        }


@dataclass(frozen=True)
class SaddleData:
    """The saddle along one hypercube edge.

    ``ordered`` lists the two circles on the two-circle side (tail for a
    merge, head for a split) with the inner circle first when nested, and in
    canonical order otherwise. ``arrowed`` lists the same two circles in the
    crossing's fixed orientation: the circle through slot 1 before the one
    through slot 0 for a split; slot 0 before slot 2 for a merge.
    ``correspondence`` maps each uninvolved tail circle to its head circle.
    """

    kind: str
    nested: bool
    crossing: int
    source_circles: tuple[int, ...]
    target_circles: tuple[int, ...]
    ordered: tuple[int, int]
    arrowed: tuple[int, int]
    correspondence: tuple[tuple[int, int], ...]

    @property
    def is_merge(self) -> bool:
        return self.kind == "merge"


@lru_cache(maxsize=256)
def trace_faces(diagram: LinkDiagram):
    """Trace the faces of the projection.

    Returns ``(faces, face_of)``: the faces as lists of corners and a map
    from corner ``(crossing, s)`` -- the angle between slots ``s`` and
    ``s+1`` -- to its face index. Face indices follow first discovery in
    ``(crossing, slot)`` order.
    """
    ends = diagram.edge_ends()
    face_of: dict[tuple[int, int], int] = {}
    faces: list[list[tuple[int, int]]] = []
    for i in range(diagram.c):
        for s in range(4):
            if (i, s) in face_of:
                continue
            fid = len(faces)
            cyc = []
            corner = (i, s)
            while corner not in face_of:
                face_of[corner] = fid
                cyc.append(corner)
                y, t = corner
                out = (y, (t + 1) % 4)
                corner = _other_end(ends, diagram.slot_edge(*out), out)
            if corner != (i, s):
                raise ResolutionError("face tracing did not close; rotation system is inconsistent")
            faces.append(cyc)
    return faces, face_of


def _other_end(ends, e, inc):
    a, b = ends[e]
    return b if inc == a else a


def _left_corner_face(face_of, arrive):
    y, t = arrive
    return face_of[(y, (t - 1) % 4)]


@lru_cache(maxsize=256)
def _layout(diagram: LinkDiagram):
    """Fixed embedding data shared by every smoothing of ``diagram``.

    Returns ``(n_faces, background, loop_faces, glue)``: the total number of
    face labels, the face taken as the default outer face, the interior face
    of each free loop, and pairs of faces identified in every state (other
    pieces of a split projection sit in the background face).
    """
    faces, face_of = trace_faces(diagram)
    n = len(faces)
    glue = []
    if diagram.c:
        ends = diagram.edge_ends()
        background = _left_corner_face(face_of, diagram.heads[1])
        # one default outer face per connected piece of the projection
        parent = list(range(diagram.c))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (i, _), (j, _) in ends.values():
            parent[find(i)] = find(j)
        first_edge: dict[int, int] = {}
        for e in sorted(ends):
            first_edge.setdefault(find(ends[e][0][0]), e)
        for root, e in first_edge.items():
            f = _left_corner_face(face_of, diagram.heads[e])
            if f != background and root != find(diagram.heads[1][0]):
                glue.append((f, background))
    else:
        background = 0
        n = 1
    loop_faces = tuple(range(n, n + diagram.free_loops))
    return n + diagram.free_loops, background, loop_faces, tuple(glue)


def face_count(diagram: LinkDiagram) -> int:
    """Number of admissible outer-face choices."""
    return _layout(diagram)[0]


def resolve(diagram: LinkDiagram, word, outer_face: Optional[int] = None) -> ResolvedState:
    """Smooth every crossing according to ``word`` and trace the circles.

    ``outer_face`` selects the face containing the point at infinity; by
    default it is the face on the left of edge 1.
    """
    bits = _bits(word)
    if len(bits) != diagram.c:
        raise ResolutionError(f"word has length {len(bits)}, diagram has {diagram.c} crossings")
    n_faces, background, loop_faces, glue = _layout(diagram)
    if outer_face is None:
        outer_face = background
    if not 0 <= outer_face < n_faces:
        raise ResolutionError(f"outer face {outer_face} out of range 0..{n_faces - 1}")

    parent = list(range(n_faces))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for a, b in glue:
        union(a, b)
    circles: list[tuple[int, ...]] = []
    routes: list[tuple] = []
    lefts: list[int] = []
    rights: list[int] = []
    if diagram.c:
        faces, face_of = trace_faces(diagram)
        for i, b in enumerate(bits):
            # the smoothing opens the two corners it does not hug
            if b == 0:
                union(face_of[(i, 1)], face_of[(i, 3)])
            else:
                union(face_of[(i, 0)], face_of[(i, 2)])
        ends = diagram.edge_ends()
        seen: set[int] = set()
        for start in range(1, diagram.n_edges + 1):
            if start in seen:
                continue
            steps = []
            e, arrive = start, ends[start][1]
            while True:
                seen.add(e)
                y, t = arrive
                t_out = _PAIRS[bits[y]][t]
                steps.append((e, y, t, t_out))
                e = diagram.slot_edge(y, t_out)
                arrive = _other_end(ends, e, (y, t_out))
                if e == start:
                    break
            left = {find(face_of[(y, (t - 1) % 4)]) for _, y, t, _ in steps}
            right = {find(face_of[(y, t)]) for _, y, t, _ in steps}
            if len(left) != 1 or len(right) != 1 or left == right:
                raise ResolutionError(f"circle through edge {start} does not separate two regions")
            circles.append(tuple(s[0] for s in steps))
            routes.append(tuple(steps))
            lefts.append(left.pop())
            rights.append(right.pop())
    for k, f in enumerate(loop_faces):
        circles.append((diagram.n_edges + k + 1,))
        routes.append(())
        lefts.append(find(f))
        rights.append(find(background))

    sides = [(l, r) for l, r in zip(lefts, rights)]
    outer = find(outer_face)
    depths, parents = _tree(sides, outer)

    order = sorted(range(len(circles)), key=lambda k: (depths[k], min(circles[k])))
    pos = {k: n for n, k in enumerate(order)}
    arc_circle = {a: pos[k] for k in order for a in circles[k]}
    return ResolvedState(
        word=bits,
        circles=tuple(circles[k] for k in order),
        sides=tuple(sides[k] for k in order),
        outer_region=outer,
        depths=tuple(depths[k] for k in order),
        parents=tuple(None if parents[k] is None else pos[parents[k]] for k in order),
        routes=tuple(routes[k] for k in order),
        left_sides=tuple(lefts[k] for k in order),
        arc_circle=arc_circle,
    )


def _bits(word) -> tuple[int, ...]:
    if isinstance(word, SmoothingWord):
        return word.bits
    if isinstance(word, str):
        return SmoothingWord.parse(word).bits
    return tuple(int(b) for b in word)


def _tree(sides: Sequence[tuple[int, int]], outer: int):
    """Depth and containing circle of each circle, from the region/circle tree."""
    by_region: dict[int, list[int]] = {}
    for k, (a, b) in enumerate(sides):
        by_region.setdefault(a, []).append(k)
        by_region.setdefault(b, []).append(k)
    depths: list[Optional[int]] = [None] * len(sides)
    parents: list[Optional[int]] = [None] * len(sides)
    region_owner: dict[int, Optional[int]] = {outer: None}
    region_depth = {outer: 0}
    queue = deque([outer])
    while queue:
        r = queue.popleft()
        for k in by_region.get(r, ()):
            if depths[k] is not None:
                continue
            depths[k] = region_depth[r]
            parents[k] = region_owner[r]
            a, b = sides[k]
            inner = b if a == r else a
            if inner in region_depth:
                raise ResolutionError("circle/region graph is not a tree")
            region_depth[inner] = region_depth[r] + 1
            region_owner[inner] = k
            queue.append(inner)
    if any(d is None for d in depths):
        raise ResolutionError("circle/region graph is disconnected")
    return depths, parents


def nesting_depths(state: ResolvedState) -> dict[int, int]:
    """Map each circle to the number of circles strictly containing it."""
    depths, _ = _tree(state.sides, state.outer_region)
    return dict(enumerate(depths))


def saddle_between(diagram: LinkDiagram, tail: ResolvedState, head: ResolvedState,
                   crossing: int) -> SaddleData:
    """Classify the saddle from ``tail`` to ``head`` changing ``crossing``."""
    if tail.word[crossing] != 0 or head.word[crossing] != 1:
        raise ResolutionError("the edge must change its letter from 0 to 1")
    edges = diagram.crossings[crossing].edges
    src = sorted({tail.arc_circle[e] for e in edges})
    tgt = sorted({head.arc_circle[e] for e in edges})
    if (len(src), len(tgt)) not in ((2, 1), (1, 2)):
        raise ResolutionError(f"saddle at crossing {crossing} changes {len(src)} circles into {len(tgt)}")
    if head.n_circles - tail.n_circles != len(tgt) - len(src):
        raise ResolutionError(f"circle counts disagree across crossing {crossing}")
    merge = len(src) == 2
    pair_state, pair = (tail, src) if merge else (head, tgt)
    a, b = pair
    if pair_state.contains(a, b):
        nested, ordered = True, (b, a)
    elif pair_state.contains(b, a):
        nested, ordered = True, (a, b)
    else:
        nested, ordered = False, (a, b)
    if merge:
        arrowed = (tail.arc_circle[edges[0]], tail.arc_circle[edges[2]])
    else:
        arrowed = (head.arc_circle[edges[1]], head.arc_circle[edges[0]])
    head_of = {frozenset(c): k for k, c in enumerate(head.circles)}
    corr = []
    for k, c in enumerate(tail.circles):
        if k in src:
            continue
        try:
            corr.append((k, head_of[frozenset(c)]))
        except KeyError:
            raise ResolutionError(f"uninvolved circle {c} not found in head state") from None
    return SaddleData(
        kind="merge" if merge else "split",
        nested=nested,
        crossing=crossing,
        source_circles=tuple(src),
        target_circles=tuple(tgt),
        ordered=ordered,
        arrowed=arrowed,
        correspondence=tuple(corr),
    )


def classify_saddle(diagram: LinkDiagram, word, crossing_index: int,
                    outer_face: Optional[int] = None) -> SaddleData:
    """Classify the hypercube edge leaving ``word`` in direction ``crossing_index``."""
    bits = list(_bits(word))
    if bits[crossing_index] != 0:
        raise ResolutionError("the tail word must have a 0 at the changed crossing")
    tail = resolve(diagram, bits, outer_face)
    bits[crossing_index] = 1
    head = resolve(diagram, bits, outer_face)
    return saddle_between(diagram, tail, head, crossing_index)
