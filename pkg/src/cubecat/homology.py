"""Exact homology of bigraded integer complexes.

Integer homology comes from Smith normal form: at each bidegree the free
rank is ``dim C - rank(d_out) - rank(d_in)`` and the torsion is the list of
invariant factors greater than one of the incoming differential. Field
coefficients use rank arithmetic (over F_p by elimination mod p).

The Kauffman-bracket state sum at the bottom shares no code with the cube
pipeline; it is the oracle for the grading conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .complex import ChainComplex
from .diagram import LinkDiagram

__all__ = [
    "SNFResult",
    "HomologyTable",
    "LaurentPoly",
    "smith_normal_form",
    "invariant_factors",
    "rank_mod_p",
    "homology_table",
    "graded_euler_characteristic",
    "kauffman_bracket_oracle",
    "parse_coefficients",
]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors ``d1 | d2 | ...`` and, optionally, the transforms.

    When retained, ``left @ matrix @ right`` is the diagonal matrix with the
    invariant factors, and both transforms are unimodular.
    """

    diagonal: tuple[int, ...]
    left: Optional[list[list[int]]] = None
    right: Optional[list[list[int]]] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _normalize_chain(values: Iterable[int]) -> tuple[int, ...]:
    """Turn any diagonal into the divisibility chain with the same cokernel."""
    d = sorted(abs(v) for v in values if v)
    changed = True
    while changed:
        changed = False
        for a in range(len(d)):
            for b in range(a + 1, len(d)):
                if d[b] % d[a]:
                    g = math.gcd(d[a], d[b])
                    d[a], d[b] = g, d[a] * d[b] // g
                    changed = True
        d.sort()
    return tuple(d)


def invariant_factors(entries: Mapping[tuple[int, int], int]) -> tuple[int, ...]:
    """Nonzero invariant factors of a sparse integer matrix ``{(row, col): v}``.

    Sparse elimination; each pivot is an entry of minimal absolute value
    (a unit whenever one exists), which keeps intermediate entries small.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
    diag = []
    while rows:
        # pivot: minimal |value|, first unit found wins
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                if best is None or abs(v) < abs(best[2]):
                    best = (r, c, v)
                    if abs(v) == 1:
                        break
            if best is not None and abs(best[2]) == 1:
                break
        r, c, p = best
        # clear column c with row operations
        dirty = False
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            q = rows[r2][c] // p
            _row_axpy(rows, cols, r2, r, -q)
            if c in rows.get(r2, {}):
                dirty = True
        # clear row r with column operations
        for c2 in list(rows[r]):
            if c2 == c:
                continue
            q = rows[r][c2] // p
            if q:
                _col_axpy(rows, cols, c2, c, -q)
            if c2 in rows[r]:
                dirty = True
        if dirty:
            continue  # a smaller remainder now exists; pick a new pivot
        diag.append(p)
        del rows[r]
        cols[c].discard(r)
        if not cols[c]:
            del cols[c]
    return _normalize_chain(diag)


def _row_axpy(rows, cols, target, source, q):
    """``row[target] += q * row[source]``."""
    if not q:
        return
    tr = rows[target]
    for c, v in rows[source].items():
        nv = tr.get(c, 0) + q * v
        if nv:
            if c not in tr:
                cols[c].add(target)
            tr[c] = nv
        else:
            tr.pop(c, None)
            cols[c].discard(target)
    if not tr:
        del rows[target]


def _col_axpy(rows, cols, target, source, q):
    """``col[target] += q * col[source]``."""
    for r in list(cols.get(source, ())):
        row = rows[r]
        nv = row.get(target, 0) + q * row[source]
        if nv:
            if target not in row:
                cols.setdefault(target, set()).add(r)
            row[target] = nv
        else:
            row.pop(target, None)
            cols[target].discard(r)
    if target in cols and not cols[target]:
        del cols[target]


def smith_normal_form(matrix: Sequence[Sequence[int]], transforms: bool = False) -> SNFResult:
    """Smith normal form of a dense integer matrix.

    Parameters
    ----------
    matrix : list of rows
    transforms : bool
        Also return unimodular ``left`` and ``right`` with
        ``left @ matrix @ right`` diagonal.
    """
    if not transforms:
        entries = {(r, c): v for r, row in enumerate(matrix) for c, v in enumerate(row) if v}
        return SNFResult(invariant_factors(entries))
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    left = [[int(i == j) for j in range(m)] for i in range(m)]
    right = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(t, s, q):  # row t += q row s
        a[t] = [x + q * y for x, y in zip(a[t], a[s])]
        left[t] = [x + q * y for x, y in zip(left[t], left[s])]

    def add_col(t, s, q):  # col t += q col s
        for row in a:
            row[t] += q * row[s]
        for row in right:
            row[t] += q * row[s]

    k = 0
    while k < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(k, m) for j in range(k, n) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(k, i)
        swap_cols(k, j)
        done = False
        while not done:
            done = True
            for i in range(k + 1, m):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // a[k][k]))
                    if a[i][k]:
                        swap_rows(k, i)
                        done = False
            for j in range(k + 1, n):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // a[k][k]))
                    if a[k][j]:
                        swap_cols(k, j)
                        done = False
            if done:
                # divisibility: fold in any entry the pivot does not divide
                bad = [(i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                       if a[i][j] % a[k][k]]
                if bad:
                    add_row(k, bad[0][0], 1)
                    done = False
        if a[k][k] < 0:
            left[k] = [-x for x in left[k]]
            a[k] = [-x for x in a[k]]
        k += 1
    diag = tuple(a[i][i] for i in range(min(m, n)) if a[i][i])
    return SNFResult(diag, left, right)


def rank_mod_p(entries: Mapping[tuple[int, int], int], p: int) -> int:
    """Rank of a sparse integer matrix over F_p."""
    rows: dict[int, dict[int, int]] = {}
    for (r, c), v in entries.items():
        v %= p
        if v:
            rows.setdefault(r, {})[c] = v
    pivots: dict[int, dict[int, int]] = {}  # leading column -> normalized row
    for row in rows.values():
        row = dict(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in row.items()}
                break
            f = row[lead]
            for c, v in piv.items():
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Integer Laurent polynomial in ``q`` with finite support."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        self.terms = {int(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def q(cls, exp: int = 1, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self.terms.items()))})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            body = (str(abs(c)) if abs(c) != 1 or not mono else "") + mono
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self) -> dict:
        return {str(e): c for e, c in sorted(self.terms.items())}


# ---------------------------------------------------------------------------
# homology


def parse_coefficients(coeff) -> int:
    """``"Z"`` -> 0, ``"Q"`` -> -1, ``"F2"``/``"F_p"``/``p`` -> p."""
    if isinstance(coeff, int):
        return coeff
    s = str(coeff).strip().upper().replace("_", "")
    if s == "Z":
        return 0
    if s == "Q":
        return -1
    if s.startswith("F") and s[1:].isdigit():
        p = int(s[1:])
        if p > 1 and all(p % d for d in range(2, int(p ** 0.5) + 1)):
            return p
    raise ValueError(f"unknown coefficients {coeff!r}; expected Z, Q or F_p")


def _coeff_name(p: int) -> str:
    return {0: "Z", -1: "Q"}.get(p, f"F{p}")


@dataclass
class HomologyTable:
    """``entries[(i, j)] = (rank, torsion)`` with ``torsion`` the factors > 1."""

    entries: dict
    theory: str = ""
    coefficients: str = "Z"
    diagram: str = ""

    def total_rank(self) -> int:
        return sum(r for r, _ in self.entries.values())

    def torsion(self) -> dict:
        return {k: t for k, (_, t) in self.entries.items() if t}

    def betti(self) -> dict:
        return {k: r for k, (r, _) in self.entries.items() if r}

    def euler(self) -> LaurentPoly:
        out = LaurentPoly()
        for (i, j), (r, _) in self.entries.items():
            out = out + LaurentPoly.q(j, (-1) ** i * r)
        return out

    def same_groups(self, other: "HomologyTable") -> bool:
        return self.entries == other.entries

    def to_json(self) -> dict:
        return {
            "theory": self.theory,
            "coefficients": self.coefficients,
            "diagram": self.diagram,
            "entries": [{"i": i, "j": j, "rank": r, "torsion": list(t)}
                        for (i, j), (r, t) in sorted(self.entries.items())],
            "euler": self.euler().to_json(),
        }


def homology_table(complex_: ChainComplex, coefficients="Z", *, diagram: str = "",
                   certify: bool = True) -> HomologyTable:
    """Bigraded homology over Z, Q or F_p.

    Raises
    ------
    ValueError
        If ``certify`` is set and ``d o d`` is nonzero somewhere.
    """
    p = parse_coefficients(coefficients)
    if certify and complex_.d_squared_violations():
        raise ValueError("complex is not certified: d o d != 0")
    info = {}
    for bideg, m in complex_.differential.items():
        if p > 0:
            info[bideg] = (rank_mod_p(m, p), ())
        else:
            f = invariant_factors(m)
            info[bideg] = (len(f), tuple(x for x in f if x > 1))
    entries = {}
    for (i, j) in complex_.bidegrees():
        dim = complex_.rank((i, j))
        r_out = info.get((i, j), (0, ()))[0]
        r_in, tors = info.get((i - 1, j), (0, ()))
        free = dim - r_out - r_in
        torsion = tors if p == 0 else ()
        if free or torsion:
            entries[(i, j)] = (free, tuple(torsion))
    return HomologyTable(entries, theory=complex_.name, coefficients=_coeff_name(p),
                         diagram=diagram)


def graded_euler_characteristic(complex_: ChainComplex) -> LaurentPoly:
    """``sum (-1)^i rank C^{i,j} q^j``."""
    out: dict[int, int] = {}
    for (i, j), gens in complex_.generators.items():
        out[j] = out.get(j, 0) + (-1) ** i * len(gens)
    return LaurentPoly(out)


def kauffman_bracket_oracle(diagram: LinkDiagram) -> LaurentPoly:
    """Unnormalized Jones polynomial by a direct state sum.

    ``(-1)^{c-} q^{c+ - 2c-} sum_s (-1)^{k(s)} q^{k(s)} (q + 1/q)^{#circles(s)}``
    """
    edges = [x.edges for x in diagram.crossings]
    labels = sorted({e for t in edges for e in t})
    circle = LaurentPoly({1: 1, -1: 1})
    total = LaurentPoly()
    for state in range(1 << len(edges)):
        parent = {e: e for e in labels}

        def root(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for n, (a, b, c, d) in enumerate(edges):
            pairs = ((a, d), (b, c)) if state >> n & 1 else ((a, b), (c, d))
            for u, w in pairs:
                parent[root(u)] = root(w)
        loops = len({root(e) for e in labels}) + diagram.free_loops
        k = bin(state).count("1")
        total = total + LaurentPoly.q(k, (-1) ** k) * circle ** loops
    cp = sum(1 for x in diagram.crossings if x.sign > 0)
    cm = len(edges) - cp
    return LaurentPoly.q(cp - 2 * cm, (-1) ** cm) * total
