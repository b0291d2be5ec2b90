"""Planar diagram (PD) codes of oriented links.

A crossing ``X[a,b,c,d]`` lists its four incident edges counterclockwise,
starting at the incoming under-strand. Slot 0 (``a``) therefore enters the
crossing and slot 2 (``c``) leaves it; the over-strand occupies slots 1 and 3
and its direction is inferred by walking the link components.

The counterclockwise slot order is the rotation system of the underlying
4-valent planar map; faces of the projection are traced from it downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "PDError",
    "Crossing",
    "LinkDiagram",
    "parse_pd",
    "trefoil_pd",
]

_TOKEN = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_WRAPPER = re.compile(r"^\s*PD\s*\[(.*)\]\s*$", re.DOTALL)


class PDError(ValueError):
    """Raised for malformed, non-closed, non-orientable or non-planar PD data."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: edges in counterclockwise order from the incoming under-strand."""

    edges: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise PDError(f"crossing sign must be +1 or -1, got {self.sign}")

    def __str__(self):
        return "X[{},{},{},{}]".format(*self.edges)


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    Attributes
    ----------
    crossings : tuple of Crossing
    n_edges : int
        Edges are labelled ``1..n_edges``.
    components : int
        Number of link components, free loops included.
    free_loops : int
        Crossingless unknotted circles, placed side by side in the outer
        region. A PD code cannot express these; they make the 0-crossing
        unknot and unlinks representable.
    heads : dict
        ``edge -> (crossing, slot)`` where the oriented edge enters.
    """

    crossings: tuple[Crossing, ...]
    n_edges: int
    components: int
    free_loops: int = 0
    heads: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def c(self) -> int:
        return len(self.crossings)

    @property
    def c_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def c_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(x.sign for x in self.crossings)

    def slot_edge(self, crossing: int, slot: int) -> int:
        return self.crossings[crossing].edges[slot]

    def edge_ends(self) -> dict[int, list[tuple[int, int]]]:
        """Map each edge to its two ``(crossing, slot)`` incidences."""
        ends: dict[int, list[tuple[int, int]]] = {}
        for i, x in enumerate(self.crossings):
            for s, e in enumerate(x.edges):
                ends.setdefault(e, []).append((i, s))
        return ends

    def serialize(self) -> str:
        body = ", ".join(str(x) for x in self.crossings)
        return f"PD[{body}]"

    def mirror(self) -> "LinkDiagram":
        """The mirror image: every crossing switched, orientation kept."""
        out = []
        for x in self.crossings:
            a, b, c, d = x.edges
            # the old over-strand becomes the under-strand; start at its incoming slot
            if x.sign > 0:  # over-strand runs d -> b
                out.append((d, a, b, c))
            else:
                out.append((b, c, d, a))
        if not out:
            return self
        return _build(out, orient=True, free_loops=self.free_loops)

    def reverse(self) -> "LinkDiagram":
        """Reverse the orientation of every component."""
        out = [(c, d, a, b) for a, b, c, d in (x.edges for x in self.crossings)]
        if not out:
            return self
        return _build(out, orient=True, free_loops=self.free_loops)

    @classmethod
    def unlink(cls, n: int = 1) -> "LinkDiagram":
        """The crossingless diagram of ``n`` disjoint circles."""
        if n < 1:
            raise PDError("an unlink needs at least one component")
        return cls(crossings=(), n_edges=0, components=n, free_loops=n)

    @classmethod
    def unknot(cls) -> "LinkDiagram":
        return cls.unlink(1)


def parse_pd(text: str, *, orient: bool = False, free_loops: int = 0) -> LinkDiagram:
    """Parse and validate a PD code.

    Parameters
    ----------
    text : str
        ``X[a,b,c,d]`` tokens separated by ``;``, ``,`` or whitespace, with an
        optional ``PD[...]`` wrapper.
    orient : bool
        Components that never pass under anything have no inferable
        direction. By default this is an error; with ``orient=True`` such a
        component is oriented so that its smallest edge leaves its
        first-listed incidence.
    free_loops : int
        Extra crossingless circles to add.

    Raises
    ------
    PDError
        On malformed tokens, an empty diagram, edges not appearing exactly
        twice, inconsistent or ambiguous orientation, or a non-planar map.
    """
    m = _WRAPPER.match(text)
    body = m.group(1) if m else text
    tuples = [tuple(int(v) for v in t) for t in _TOKEN.findall(body)]
    leftover = _TOKEN.sub("", body)
    if leftover.strip(" \t\r\n;,"):
        raise PDError(f"malformed PD token near {leftover.strip()[:20]!r}")
    if not tuples:
        raise PDError("empty diagram")
    return _build(tuples, orient=orient, free_loops=free_loops)


def _build(tuples: Sequence[tuple[int, ...]], *, orient: bool = False,
           free_loops: int = 0) -> LinkDiagram:
    counts: dict[int, int] = {}
    for t in tuples:
        for e in t:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, k in counts.items() if k != 2)
    if bad:
        raise PDError("edges must appear exactly twice; offending: "
                      + ", ".join(map(str, bad)))
    n_edges = len(counts)
    if set(counts) != set(range(1, n_edges + 1)):
        raise PDError(f"edge labels must be 1..{n_edges}")

    heads, n_components = _orient(tuples, orient)
    crossings = []
    for i, t in enumerate(tuples):
        # over-strand enters at slot 3 and leaves at slot 1  =>  positive
        sign = 1 if heads[t[3]] == (i, 3) else -1
        crossings.append(Crossing(edges=tuple(t), sign=sign))
    diagram = LinkDiagram(crossings=tuple(crossings), n_edges=n_edges,
                          components=n_components + free_loops,
                          free_loops=free_loops, heads=heads)
    _check_planar(diagram)
    return diagram


def _strand_partner(slot: int) -> int:
    return (slot + 2) % 4


def _orient(tuples, allow_ambiguous):
    """Walk strands; return ``edge -> head incidence`` and component count."""
    ends: dict[int, list[tuple[int, int]]] = {}
    for i, t in enumerate(tuples):
        for s, e in enumerate(t):
            ends.setdefault(e, []).append((i, s))

    def other(e, inc):
        a, b = ends[e]
        return b if inc == a else a

    heads: dict[int, tuple[int, int]] = {}
    seen: set[int] = set()
    n_components = 0
    for start in sorted(ends):
        if start in seen:
            continue
        n_components += 1
        # walk the component, recording each edge with a tentative head
        walk = []
        e, head = start, ends[start][1]
        while True:
            walk.append((e, head))
            seen.add(e)
            i, s = head
            out_inc = (i, _strand_partner(s))
            e = tuples[i][out_inc[1]]
            head = other(e, out_inc)
            if (e, head) == walk[0]:
                break
            if e == walk[0][0]:
                # revisiting the start edge in the other direction cannot happen on a closed strand
                raise PDError(f"inconsistent strand structure at edge {e}")
        votes = set()
        for e, (i, s) in walk:
            if s == 0:
                votes.add(True)
            elif s == 2:
                votes.add(False)
            tail = other(e, (i, s))
            if tail[1] == 2:
                votes.add(True)
            elif tail[1] == 0:
                votes.add(False)
        if len(votes) == 2:
            raise PDError(f"inconsistent orientation on the component through edge {start}")
        if not votes:
            if not allow_ambiguous:
                raise PDError(f"component through edge {start} never passes under; "
                              "its orientation is ambiguous (use orient=True)")
            forward = True
        else:
            forward = votes.pop()
        for e, head in walk:
            heads[e] = head if forward else other(e, head)
    return heads, n_components


def _check_planar(diagram: LinkDiagram) -> None:
    """Euler-formula check, V - E + F = 2, on every connected piece of the projection."""
    from .resolution import trace_faces  # local import: resolution depends on this module

    faces, face_of = trace_faces(diagram)
    parent = list(range(diagram.c))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e, ((i, _), (j, _)) in diagram.edge_ends().items():
        parent[find(i)] = find(j)
    pieces: dict[int, list[int]] = {}
    for i in range(diagram.c):
        pieces.setdefault(find(i), []).append(i)
    for root, members in pieces.items():
        v = len(members)
        f = len({face_of[(i, s)] for i in members for s in range(4)})
        if v - 2 * v + f != 2:
            raise PDError(f"non-planar diagram: V - E + F = {v - 2 * v + f} on a piece "
                          f"with {v} crossings")


# Standard trefoil code; its three crossings share one sign.
_TREFOIL = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"


def trefoil_pd() -> LinkDiagram:
    """The bundled 3-crossing trefoil."""
    return parse_pd(_TREFOIL)


def crossings_from(tuples: Iterable[Sequence[int]], **kw) -> LinkDiagram:
    """Build a diagram from crossing 4-tuples directly."""
    tuples = [tuple(t) for t in tuples]
    if not tuples:
        raise PDError("empty diagram")
    return _build(tuples, **kw)
