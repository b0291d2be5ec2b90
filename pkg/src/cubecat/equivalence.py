"""Certificates that different theories and sign choices give isomorphic
complexes.

The central tool is the cone: two cubes of dimension ``d`` with the same
vertex modules, joined by a diagonal vertex map, form a cube of dimension
``d + 1`` (new direction ``d``; bit ``d`` clear on the source, set on the
target). If every 3-cube of the cone has an even number of anticommutative
faces, a sign assignment exists; restricted to the two ends it signs both
complexes, and on the vertical edges it turns the vertex map into a chain
map ``f_w = (-1)^{|w|} eps(w, d) Phi_w``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .complex import (ChainComplex, CubeError, Hypercube, SignAssignment,
                      assemble_complex, build_hypercube, complex_for, face_cocycle,
                      is_t1_face, solve_sign_assignment)
from .diagram import LinkDiagram
from .frobenius import FrobeniusSystem, all_sign_params, builtin_system, parametrized_system
from .homology import homology_table
from .resolution import face_count

__all__ = [
    "VertexMap",
    "build_phi",
    "build_cone",
    "cone_chain_map",
    "verify_theorem1",
    "verify_sign_equivalence",
    "classify_system",
    "enumerate_sign_systems",
    "compare_mod2",
    "verify_outer_face_invariance",
    "Certificate",
]


@dataclass(frozen=True)
class VertexMap:
    """A diagonal ``+-1`` matrix per vertex, stored as its diagonal."""

    diagonals: tuple[tuple[int, ...], ...]

    def is_invertible(self) -> bool:
        return all(v in (1, -1) for d in self.diagonals for v in d)


@dataclass
class Certificate:
    """Outcome of one certification; ``checks`` maps a check name to a bool."""

    kind: str
    diagram: str
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"kind": self.kind, "diagram": self.diagram, "ok": self.ok,
                "checks": dict(sorted(self.checks.items())),
                "details": self.details}


# ---------------------------------------------------------------------------
# vertex maps and cones


def build_phi(nested_cube: Hypercube, khovanov_cube: Hypercube) -> VertexMap:
    """``Phi_w`` sends ``X`` on a circle of depth ``n`` to ``(-1)^n X`` and fixes ``1``.

    Raises
    ------
    ValueError
        If the two cubes do not share vertex bases.
    """
    if nested_cube.dim != khovanov_cube.dim or nested_cube.ranks != khovanov_cube.ranks:
        raise ValueError("cubes have different vertex modules")
    diags = []
    for s, t in zip(nested_cube.states, khovanov_cube.states):
        if s.circles != t.circles:
            raise ValueError(f"vertex {s.word}: circle bases differ")
        signs = [(-1) ** d for d in s.depths]
        row = []
        for b in range(1 << s.n_circles):
            v = 1
            for k, sg in enumerate(signs):
                if b >> k & 1:
                    v *= sg
            row.append(v)
        diags.append(tuple(row))
    return VertexMap(tuple(diags))


def identity_map(cube: Hypercube) -> VertexMap:
    return VertexMap(tuple((1,) * r for r in cube.ranks))


def build_cone(source: Hypercube, target: Hypercube, vmap: VertexMap) -> Hypercube:
    """The ``(d+1)``-cube joining ``source`` to ``target`` along ``vmap``."""
    d = source.dim
    top = 1 << d
    maps = {}
    for (v, i), cols in source.maps.items():
        maps[(v, i)] = cols
    for (v, i), cols in target.maps.items():
        maps[(v | top, i)] = cols
    for v in range(top):
        maps[(v, d)] = [[(b, s, 0)] for b, s in enumerate(vmap.diagonals[v])]
    ranks = list(source.ranks) + list(target.ranks)
    cone = Hypercube(dim=d + 1, ranks=ranks, maps=maps)

    def zero_face(v, i, j):
        cube = target if v & top else source
        if cube.zero_face is None or j == d:
            raise CubeError("vertical face with vanishing composites")
        return cube.zero_face(v & (top - 1), i, j)

    if source.zero_face or target.zero_face:
        cone.zero_face = zero_face
    return cone


def _restrict(eps: SignAssignment, d: int, upper: bool) -> SignAssignment:
    top = 1 << d
    out = {}
    for (v, i), s in eps.epsilon.items():
        if i == d:
            continue
        if bool(v & top) == upper:
            out[(v & (top - 1), i)] = s
    return SignAssignment(d, out)


def cone_chain_map(cone_eps: SignAssignment, vmap: VertexMap, d: int) -> VertexMap:
    """``f_w = (-1)^{|w|} eps(w, d) Phi_w`` from a cone sign assignment."""
    diags = []
    for v, diag in enumerate(vmap.diagonals):
        s = (-1) ** bin(v).count("1") * cone_eps.epsilon[(v, d)]
        diags.append(tuple(s * x for x in diag))
    return VertexMap(tuple(diags))


def _intertwines(fmap: VertexMap, src: ChainComplex, tgt: ChainComplex) -> bool:
    """``f d_src = d_tgt f`` for a diagonal ``f`` on identically indexed complexes."""
    if src.generators != tgt.generators:
        return False
    scale = {}
    for bideg, gens in src.generators.items():
        scale[bideg] = [fmap.diagonals[v][b] for v, b in gens]
    for bideg in set(src.differential) | set(tgt.differential):
        i, j = bideg
        a = src.differential.get(bideg, {})
        b = tgt.differential.get(bideg, {})
        if set(a) != set(b):
            return False
        rows, cols = scale[(i + 1, j)], scale[bideg]
        for (r, c), val in a.items():
            if rows[r] * val != b[(r, c)] * cols[c]:
                return False
    return True


def _certify_cone(name: str, diagram: LinkDiagram, source: Hypercube, target: Hypercube,
                  vmap: VertexMap, kind: str, compare_homology: bool = True) -> Certificate:
    cert = Certificate(kind, name)
    cone = build_cone(source, target, vmap)
    psi = face_cocycle(cone, check=False)
    bad = psi.odd_three_cubes()
    cert.checks["cone parity"] = not bad
    cert.details["cone anticommutative faces"] = len(psi.anticommutative())
    if bad:
        return cert
    eps = solve_sign_assignment(psi)
    d = source.dim
    cx_src = assemble_complex(source, _restrict(eps, d, False))
    cx_tgt = assemble_complex(target, _restrict(eps, d, True))
    f = cone_chain_map(eps, vmap, d)
    cert.checks["chain map"] = _intertwines(f, cx_src, cx_tgt)
    cert.checks["bijective"] = f.is_invertible()
    if compare_homology:
        h_src = homology_table(cx_src, diagram=name)
        h_tgt = homology_table(cx_tgt, diagram=name)
        cert.checks["homology equal"] = h_src.same_groups(h_tgt)
        q_src = homology_table(cx_src, "Q")
        q_tgt = homology_table(cx_tgt, "Q")
        cert.checks["rational homology equal"] = q_src.same_groups(q_tgt)
        cert.details["homology"] = h_tgt.to_json()["entries"]
    return cert


# ---------------------------------------------------------------------------
# nested vs Khovanov


def verify_theorem1(diagram: LinkDiagram, name: str = "", outer_face: Optional[int] = None
                    ) -> Certificate:
    """Certify that the nested and Khovanov complexes of ``diagram`` are isomorphic.

    Checks cone parity, that the signed ``Phi`` is a bijective chain map,
    and that integral and rational homology agree per bidegree. Also
    records whether the nested cocycle is supported exactly on torus faces.
    """
    nested = build_hypercube(diagram, builtin_system("nested"), outer_face)
    kh = build_hypercube(diagram, builtin_system("khovanov"), outer_face)
    phi = build_phi(nested, kh)
    cert = _certify_cone(name, diagram, nested, kh, phi, "theorem1")
    psi = face_cocycle(nested)
    t1 = {f for f in psi.psi if is_t1_face(nested, *f)}
    cert.checks["anticommutative exactly on torus faces"] = set(psi.anticommutative()) == t1
    cert.details["torus faces"] = len(t1)
    return cert


# ---------------------------------------------------------------------------
# equivalence of sign assignments


def verify_sign_equivalence(cube: Hypercube, eps1: SignAssignment, eps2: SignAssignment
                            ) -> tuple[VertexMap, bool]:
    """The vertex signs ``eta`` with ``eta(head) = eta(tail) eps1(e) eps2(e)``.

    Propagates along a breadth-first spanning tree from vertex 0, then
    checks every edge and that ``eta`` intertwines the two differentials.

    Raises
    ------
    CubeError
        If propagation is inconsistent, i.e. ``eps1 eps2`` is not a coboundary.
    """
    eta = {0: 1}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i in range(cube.dim):
            bit = 1 << i
            if v & bit:
                w, e = v ^ bit, (v ^ bit, i)
            else:
                w, e = v | bit, (v, i)
            if w not in eta:
                eta[w] = eta[v] * eps1.epsilon[e] * eps2.epsilon[e]
                queue.append(w)
    for (v, i) in cube.maps:
        if eta[v | (1 << i)] != eta[v] * eps1.epsilon[(v, i)] * eps2.epsilon[(v, i)]:
            raise CubeError(f"inconsistent propagation on edge ({v}, {i})")
    vmap = VertexMap(tuple((eta[v],) * cube.ranks[v] for v in range(cube.n_vertices)))
    c1 = assemble_complex(cube, eps1, certify=False)
    c2 = assemble_complex(cube, eps2, certify=False)
    return vmap, _intertwines(vmap, c1, c2)


# ---------------------------------------------------------------------------
# the parametrized family


def _match(table, ref) -> int:
    """``s`` if ``table == s * ref`` on every input, else 0."""
    sign = None
    for key in set(table) | set(ref):
        a = sorted((o, c) for o, c, p in table.get(key, ()) if p == 0)
        b = sorted((o, c) for o, c, p in ref.get(key, ()) if p == 0)
        if a == b and not a:
            continue
        for s in (1, -1):
            if a == sorted((o, s * c) for o, c in b):
                break
        else:
            return 0
        if sign is None:
            sign = s
        elif sign != s:
            return 0
    return sign or 1


def classify_system(system: FrobeniusSystem) -> Optional[dict]:
    """Express a system at ``t = 0`` as a signed copy of Khovanov or nested.

    Returns ``{"base": name, "signs": {op: +-1}}`` or ``None``.
    """
    for base in ("khovanov", "nested"):
        ref = builtin_system(base)
        signs = {}
        for kind, tab, rtab in (("m0", system.merge[False], ref.merge[False]),
                                ("m1", system.merge[True], ref.merge[True]),
                                ("d0", system.split[False], ref.split[False]),
                                ("d1", system.split[True], ref.split[True])):
            s = _match(tab, rtab)
            if not s:
                break
            signs[kind] = s
        else:
            return {"base": base, "signs": signs}
    return None


def enumerate_sign_systems(diagrams: Sequence[tuple[str, LinkDiagram]] = (),
                           compare_homology: bool = True) -> dict:
    """Classify all ``2^10`` sign tuples and certify the valid ones on ``diagrams``.

    Each valid system is a signed copy of the Khovanov or nested system.
    The vertex map to Khovanov is the identity or ``Phi`` accordingly; the
    per-operation signs are absorbed by the cone's sign assignment.
    """
    valid = []
    for params in all_sign_params():
        ps = parametrized_system(params)
        if ps.valid:
            valid.append(ps)
    report = {"tuples": 1024, "valid": len(valid), "systems": []}
    kh0 = builtin_system("khovanov").at_t0()  # the family lives at t = 0
    kh_cubes = {name: build_hypercube(d, kh0) for name, d in diagrams}
    for ps in valid:
        cls = classify_system(ps.system)
        entry = {"e": list(ps.params.e), "class": cls, "diagrams": {}}
        for name, d in diagrams:
            cube = build_hypercube(d, ps.system)
            kh = kh_cubes[name]
            vmap = build_phi(cube, kh) if cls and cls["base"] == "nested" else identity_map(kh)
            cert = _certify_cone(name, d, cube, kh, vmap, "theorem2", compare_homology)
            entry["diagrams"][name] = cert.ok
        entry["ok"] = cls is not None and all(entry["diagrams"].values())
        report["systems"].append(entry)
    report["ok"] = report["valid"] == 32 and all(s["ok"] for s in report["systems"])
    return report


# ---------------------------------------------------------------------------
# odd vs even, outer faces


def compare_mod2(diagram: LinkDiagram, name: str = "") -> Certificate:
    """Odd and even Khovanov homology over F2, compared per bidegree."""
    even = homology_table(complex_for(diagram, "khovanov").complex, "F2", diagram=name)
    odd = homology_table(complex_for(diagram, "odd").complex, "F2", diagram=name)
    cert = Certificate("mod2", name)
    cert.checks["F2 Betti numbers equal"] = even.same_groups(odd)
    cert.details["khovanov"] = even.to_json()["entries"]
    cert.details["odd"] = odd.to_json()["entries"]
    return cert


def verify_outer_face_invariance(diagram: LinkDiagram, name: str = "") -> Certificate:
    """Nested homology for every admissible outer face, compared to the default."""
    ref = homology_table(complex_for(diagram, "nested").complex)
    cert = Certificate("outerface", name)
    n = face_count(diagram)
    for f in range(n):
        h = homology_table(complex_for(diagram, "nested", outer_face=f).complex)
        cert.checks[f"outer face {f}"] = h.same_groups(ref)
    cert.details["faces"] = n
    return cert
