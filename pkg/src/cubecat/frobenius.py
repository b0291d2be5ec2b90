"""Rank-two algebra systems over Z[t] and the maps they assign to saddles.

A circle carries the free module on ``1`` and ``X``; labels are encoded as
``0`` for ``1`` and ``1`` for ``X``. Elements of a tensor power are dicts
``{(labels, t_power): coefficient}``.

Four kinds of system live here:

* ``khovanov``: one multiplication and one comultiplication for every saddle.
* ``nested``: the unnested maps ``m0``/``Delta0`` plus signed variants
  ``m1``/``Delta1`` used when one circle sits inside the other. In a nested
  pair the inner circle is the first tensor factor.
* ``parametrized``: the sign-decorated family at ``t = 0`` indexed by ten
  signs ``e1..e10``.
* ``odd``: the odd theory over Z. Splits and deaths have odd parity, and a
  state module is modelled as the exterior algebra on its circles (``X`` on
  circle ``c`` is the odd generator ``x_c``), so Koszul signs come from
  reordering wedge products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .resolution import SaddleData

__all__ = [
    "AlgebraElement",
    "FrobeniusSystem",
    "SignParams",
    "ParametrizedSystem",
    "builtin_system",
    "parametrized_system",
    "all_sign_params",
    "apply_edge_map",
    "edge_map_on_basis",
    "check_relations",
    "RelationResult",
    "degree",
]

ONE, X = 0, 1
LETTER = {ONE: "1", X: "X"}

# (labels..., coeff, t_power) rows
Table = Mapping


def degree(labels: Sequence[int], tpow: int = 0) -> int:
    """Quantum degree: deg(1) = 1, deg(X) = -1, deg(t) = -4."""
    return len(labels) - 2 * sum(labels) - 4 * tpow


class AlgebraElement(dict):
    """Sparse element ``{(labels, t_power): int}`` of a tensor power."""

    @classmethod
    def basis(cls, labels, tpow: int = 0, coeff: int = 1) -> "AlgebraElement":
        return cls({(tuple(labels), tpow): coeff})

    def add(self, key, coeff):
        v = self.get(key, 0) + coeff
        if v:
            self[key] = v
        else:
            self.pop(key, None)

    def __add__(self, other):
        out = AlgebraElement(self)
        for k, v in other.items():
            out.add(k, v)
        return out

    def __neg__(self):
        return AlgebraElement({k: -v for k, v in self.items()})

    def scaled(self, s: int) -> "AlgebraElement":
        return AlgebraElement({k: s * v for k, v in self.items()}) if s else AlgebraElement()

    def at_t0(self) -> "AlgebraElement":
        return AlgebraElement({k: v for k, v in self.items() if k[1] == 0})

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for (labels, p), v in sorted(self.items()):
            word = "⊗".join(LETTER[l] for l in labels) or "1"
            tt = "" if p == 0 else ("t" if p == 1 else f"t^{p}")
            parts.append(f"{v:+d}{tt}{'·' if tt else ''}{word}")
        return " ".join(parts)


@dataclass(frozen=True)
class FrobeniusSystem:
    """Explicit tables for one theory.

    ``merge[nested][(x, y)]`` and ``split[nested][x]`` are tuples of
    ``(output, coeff, t_power)`` rows; for a nested saddle the first factor
    is the inner circle. ``counit`` maps a label to an integer. ``odd``
    switches on exterior-algebra (Koszul) sign handling.
    """

    name: str
    merge: Mapping
    split: Mapping
    unit: tuple = ((ONE, 1, 0),)
    counit: Mapping = field(default_factory=lambda: {ONE: 0, X: 1})
    odd: bool = False
    sd: Mapping = field(default_factory=lambda: {"merge": 0, "split": 1, "birth": 0, "death": 1})

    def merge_table(self, nested: bool):
        return self.merge[bool(nested)]

    def split_table(self, nested: bool):
        return self.split[bool(nested)]

    def at_t0(self) -> "FrobeniusSystem":
        def strip(tab):
            return {k: tuple(r for r in rows if r[2] == 0) for k, rows in tab.items()}

        return FrobeniusSystem(
            name=self.name,
            merge={n: strip(t) for n, t in self.merge.items()},
            split={n: strip(t) for n, t in self.split.items()},
            unit=self.unit, counit=self.counit, odd=self.odd, sd=self.sd,
        )

    def tables_json(self) -> dict:
        def fmt(tab, arity_in):
            out = {}
            for k in sorted(tab):
                key = "⊗".join(LETTER[l] for l in (k if arity_in == 2 else (k,)))
                out[key] = [["⊗".join(LETTER[l] for l in (o if isinstance(o, tuple) else (o,))), c, p]
                            for o, c, p in tab[k]]
            return out

        return {
            "name": self.name,
            "odd": self.odd,
            "merge": {str(int(n)): fmt(t, 2) for n, t in self.merge.items()},
            "split": {str(int(n)): fmt(t, 1) for n, t in self.split.items()},
        }


def _m(eps: int):
    s = -1 if eps else 1
    return {
        (ONE, ONE): ((ONE, 1, 0),),
        (ONE, X): ((X, 1, 0),),
        (X, ONE): ((X, s, 0),),
        (X, X): ((ONE, s, 1),),
    }


def _delta(eps: int):
    s = -1 if eps else 1
    return {
        ONE: (((X, ONE), 1, 0), ((ONE, X), s, 0)),
        X: (((X, X), 1, 0), ((ONE, ONE), s, 1)),
    }


_ODD_M = {
    (ONE, ONE): ((ONE, 1, 0),),
    (ONE, X): ((X, 1, 0),),
    (X, ONE): ((X, 1, 0),),
    (X, X): (),
}
_ODD_DELTA = {
    ONE: (((X, ONE), 1, 0), ((ONE, X), -1, 0)),
    X: (((X, X), 1, 0),),
}


def builtin_system(kind: str) -> FrobeniusSystem:
    """Return the ``khovanov``, ``nested`` or ``odd`` system (aliases ``kh``)."""
    kind = {"kh": "khovanov"}.get(kind, kind)
    if kind == "khovanov":
        return FrobeniusSystem("khovanov", merge={False: _m(0), True: _m(0)},
                               split={False: _delta(0), True: _delta(0)})
    if kind == "nested":
        return FrobeniusSystem("nested", merge={False: _m(0), True: _m(1)},
                               split={False: _delta(0), True: _delta(1)})
    if kind == "odd":
        return FrobeniusSystem("odd", merge={False: _ODD_M, True: _ODD_M},
                               split={False: _ODD_DELTA, True: _ODD_DELTA}, odd=True)
    raise ValueError(f"unknown system {kind!r}; expected khovanov, nested or odd")


@dataclass(frozen=True)
class SignParams:
    """Ten signs ``e1..e10``, stored 0-based."""

    e: tuple[int, ...]

    def __post_init__(self):
        if len(self.e) != 10 or any(v not in (1, -1) for v in self.e):
            raise ValueError(f"expected ten entries in {{+1, -1}}, got {self.e}")

    def __getitem__(self, i: int) -> int:
        """1-based access, ``params[1]`` is ``e1``."""
        return self.e[i - 1]


@dataclass(frozen=True)
class ParametrizedSystem:
    params: SignParams
    system: FrobeniusSystem
    constraints: dict

    @property
    def valid(self) -> bool:
        return all(self.constraints.values())


def parametrized_system(e) -> ParametrizedSystem:
    """Sign-decorated tables at ``t = 0`` and the constraints they meet.

    ``m0`` carries ``e1`` (on 1⊗1) and ``e2``; ``Delta0`` carries ``e3``
    (on 1) and ``e4``; ``m1`` carries ``e5, e6, e7`` on ``1⊗1, 1⊗X, X⊗1``
    with the inner circle first. ``Delta1`` sends ``1`` to
    ``e8 X_out 1_in + e9 1_out X_in`` and ``X`` to ``e10 X⊗X``: its two
    sign slots are read with the outer circle first.
    """
    p = e if isinstance(e, SignParams) else SignParams(tuple(e))
    m0 = {(ONE, ONE): ((ONE, p[1], 0),), (ONE, X): ((X, p[2], 0),),
          (X, ONE): ((X, p[2], 0),), (X, X): ()}
    d0 = {ONE: (((X, ONE), p[3], 0), ((ONE, X), p[3], 0)), X: (((X, X), p[4], 0),)}
    m1 = {(ONE, ONE): ((ONE, p[5], 0),), (ONE, X): ((X, p[6], 0),),
          (X, ONE): ((X, p[7], 0),), (X, X): ()}
    # inner-first storage: (inner, outer)
    d1 = {ONE: (((ONE, X), p[8], 0), ((X, ONE), p[9], 0)), X: (((X, X), p[10], 0),)}
    system = FrobeniusSystem("parametrized" + "".join("+" if v > 0 else "-" for v in p.e),
                             merge={False: m0, True: m1}, split={False: d0, True: d1})
    constraints = {
        "e6=e5": p[6] == p[5],
        "e9=e10": p[9] == p[10],
        "e7e8=e5e9": p[7] * p[8] == p[5] * p[9],
        "e1=e2": p[1] == p[2],
        "e3=e4": p[3] == p[4],
    }
    return ParametrizedSystem(p, system, constraints)


def all_sign_params() -> Iterable[SignParams]:
    for e in itertools.product((1, -1), repeat=10):
        yield SignParams(e)


# ---------------------------------------------------------------------------
# edge maps


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct keys)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def edge_map_on_basis(system: FrobeniusSystem, saddle: SaddleData, labels: Sequence[int],
                      n_head: int) -> list[tuple[tuple[int, ...], int, int]]:
    """Image of one tail basis word: a list of ``(head_labels, coeff, t_power)``."""
    out = []
    odd = system.odd
    others = saddle.correspondence
    if saddle.is_merge:
        a, b = saddle.arrowed if odd else saddle.ordered
        target = saddle.target_circles[0]
        table = system.merge_table(saddle.nested and not odd)
        rows = table[(labels[a], labels[b])]
        if not rows:
            return out
        sign0 = 1
        if odd:
            front = [k for k in (a, b) if labels[k]]
            rest = [k for k, _ in others if labels[k]]
            sign0 = _perm_sign(front + rest)
        for lab, coeff, tp in rows:
            word = [0] * n_head
            word[target] = lab
            for j, h in others:
                word[h] = labels[j]
            sign = sign0
            if odd:
                seq = ([target] if lab else []) + [h for j, h in others if labels[j]]
                sign *= _perm_sign(seq)
            out.append((tuple(word), sign * coeff, tp))
    else:
        a = saddle.source_circles[0]
        p, q = saddle.arrowed if odd else saddle.ordered
        table = system.split_table(saddle.nested and not odd)
        sign0 = 1
        if odd:
            front = [a] if labels[a] else []
            rest = [k for k, _ in others if labels[k]]
            sign0 = _perm_sign(front + rest)
        for (l1, l2), coeff, tp in table[labels[a]]:
            word = [0] * n_head
            word[p], word[q] = l1, l2
            for j, h in others:
                word[h] = labels[j]
            sign = sign0
            if odd:
                seq = [k for k, l in ((p, l1), (q, l2)) if l] + [h for j, h in others if labels[j]]
                sign *= _perm_sign(seq)
            out.append((tuple(word), sign * coeff, tp))
    return out


def apply_edge_map(system: FrobeniusSystem, saddle: SaddleData, element: Mapping,
                   n_tail: int | None = None, n_head: int | None = None) -> AlgebraElement:
    """Apply the saddle's map to an element living on the tail state.

    ``saddle.ordered`` (even systems) or ``saddle.arrowed`` (odd system)
    fixes which circle plays the first tensor factor. Circles not touched by
    the saddle are carried along by ``saddle.correspondence``.
    """
    n_src = len(saddle.source_circles) + len(saddle.correspondence)
    n_tgt = len(saddle.target_circles) + len(saddle.correspondence)
    if n_tail is not None and n_tail != n_src:
        raise IndexError(f"saddle expects {n_src} tail circles, got {n_tail}")
    n_head = n_tgt if n_head is None else n_head
    out = AlgebraElement()
    for (labels, tpow), coeff in element.items():
        if len(labels) != n_src:
            raise IndexError(f"element has {len(labels)} factors, tail state has {n_src} circles")
        for word, c, tp in edge_map_on_basis(system, saddle, labels, n_head):
            out.add((word, tpow + tp), coeff * c)
    return out


# ---------------------------------------------------------------------------
# relation audit


@dataclass(frozen=True)
class RelationResult:
    name: str
    family: str
    sign: int  # +1, -1, or 0 when the two sides are not related by a sign
    expected: int

    @property
    def ok(self) -> bool:
        return self.sign == self.expected


class _Op:
    """A linear map between tensor powers, given on basis words."""

    def __init__(self, n_in: int, n_out: int, fn: Callable, parity: int = 0):
        self.n_in, self.n_out, self.fn, self.parity = n_in, n_out, fn, parity

    def __call__(self, labels):
        return self.fn(labels)


def _gen_ops(system: FrobeniusSystem, nested: bool = False) -> dict[str, _Op]:
    m = system.merge_table(nested)
    d = system.split_table(nested)
    sd = system.sd if system.odd else {k: 0 for k in system.sd}

    def merge(w):
        return [((lab,), c, p) for lab, c, p in m[(w[0], w[1])]]

    def split(w):
        return [(pair, c, p) for pair, c, p in d[w[0]]]

    def unit(w):
        return [((lab,), c, p) for lab, c, p in system.unit]

    def counit(w):
        c = system.counit[w[0]]
        return [((), c, 0)] if c else []

    def perm(w):
        s = -1 if (system.odd and w[0] and w[1]) else 1
        return [((w[1], w[0]), s, 0)]

    return {
        "m": _Op(2, 1, merge, sd["merge"]),
        "d": _Op(1, 2, split, sd["split"]),
        "u": _Op(0, 1, unit, sd["birth"]),
        "e": _Op(1, 0, counit, sd["death"]),
        "P": _Op(2, 2, perm, 0),
    }


def _place(op: _Op, pos: int, n: int, odd: bool) -> _Op:
    """``id^pos ⊠ op ⊠ id^rest`` on an ``n``-factor input, with Koszul signs."""

    def full(w):
        before, after = w[:pos], w[pos + op.n_in:]
        s = -1 if (odd and op.parity and sum(before) % 2) else 1
        return [(tuple(before) + tuple(o) + tuple(after), s * c, p)
                for o, c, p in op(w[pos:pos + op.n_in])]

    return _Op(n, n - op.n_in + op.n_out, full, op.parity)


def _compose(ops: Sequence[_Op]) -> Callable:
    """Apply ``ops`` left to right to a basis word."""

    def run(w):
        cur = AlgebraElement.basis(w)
        for op in ops:
            nxt = AlgebraElement()
            for (labels, p), c in cur.items():
                for o, c2, p2 in op(labels):
                    nxt.add((tuple(o), p + p2), c * c2)
            cur = nxt
        return cur

    return run


def _compare(lhs: Callable, rhs: Callable, n_in: int) -> int:
    sign = None
    for w in itertools.product((ONE, X), repeat=n_in):
        a, b = lhs(w), rhs(w)
        if a == b and a == (-b):
            continue  # both zero on this word
        if a == b:
            s = 1
        elif a == -b:
            s = -1
        else:
            return 0
        if sign is None:
            sign = s
        elif sign != s:
            return 0
    return 1 if sign is None else sign


def _cob_relations(system: FrobeniusSystem):
    """Relations of the plain cobordism category, evaluated with ⊠."""
    g = _gen_ops(system)
    odd = system.odd
    P = lambda op, pos, n: _place(g[op], pos, n, odd)  # noqa: E731
    rels = [
        ("commutativity", "commutativity", 2, [P("P", 0, 2), P("m", 0, 2)], [P("m", 0, 2)]),
        ("cocommutativity", "commutativity", 1, [P("d", 0, 1), P("P", 0, 2)], [P("d", 0, 1)]),
        ("associativity", "associativity", 3, [P("m", 0, 3), P("m", 0, 2)],
         [P("m", 1, 3), P("m", 0, 2)]),
        ("coassociativity", "associativity", 1, [P("d", 0, 1), P("d", 0, 2)],
         [P("d", 0, 1), P("d", 1, 2)]),
        ("frobenius (left)", "frobenius", 2, [P("m", 0, 2), P("d", 0, 1)],
         [P("d", 1, 2), P("m", 0, 3)]),
        ("frobenius (right)", "frobenius", 2, [P("m", 0, 2), P("d", 0, 1)],
         [P("d", 0, 2), P("m", 1, 3)]),
        ("unit", "unit/counit", 1, [P("u", 0, 1), P("m", 0, 2)], []),
        ("counit", "unit/counit", 1, [P("d", 0, 1), P("e", 0, 2)], []),
        ("permutation involution", "permutation", 2, [P("P", 0, 2), P("P", 0, 2)], []),
        ("permutation braid", "permutation", 3,
         [P("P", 0, 3), P("P", 1, 3), P("P", 0, 3)], [P("P", 1, 3), P("P", 0, 3), P("P", 1, 3)]),
        ("unit-permutation", "unit/counit-permutation", 1,
         [P("u", 0, 1), P("P", 0, 2)], [P("u", 1, 1)]),
        ("counit-permutation", "unit/counit-permutation", 2,
         [P("P", 0, 2), P("e", 0, 2)], [P("e", 1, 2)]),
        ("merge-permutation", "merge/split-permutation", 3,
         [P("m", 0, 3), P("P", 0, 2)], [P("P", 1, 3), P("P", 0, 3), P("m", 1, 3)]),
        ("split-permutation", "merge/split-permutation", 2,
         [P("d", 0, 2), P("P", 1, 3), P("P", 0, 3)], [P("P", 0, 2), P("d", 1, 2)]),
    ]
    names = {"m": "merge", "d": "split", "u": "unit", "e": "counit"}
    for f, gg in itertools.product("mdue", repeat=2):
        fi, fo = g[f].n_in, g[f].n_out
        gi, go = g[gg].n_in, g[gg].n_out
        n = fi + gi
        # f ⊠ g := (f ⊠ id)(id ⊠ g) -- g first; compared with f first
        lhs = [P(gg, fi, n), P(f, 0, fi + go)]
        rhs = [P(f, 0, n), P(gg, fo, fo + gi)]
        rels.append((f"commutation {names[f]}-{names[gg]}", "commutation", n, lhs, rhs))
    return rels


def _expected_cob(system: FrobeniusSystem, name: str) -> int:
    if not system.odd:
        return 1
    if name in ("cocommutativity", "coassociativity"):
        return -1
    if name.startswith("commutation "):
        a, b = name.split(" ", 1)[1].split("-")
        odd_ops = {"split", "counit"}
        return -1 if (a in odd_ops and b in odd_ops) else 1
    return 1


# Named-circle relations for nested saddles. Each step is
# ("m", nested, first, second, result), ("d", nested, source, first, second),
# ("u", circle) or ("e", circle); for nested steps "first" is the inner circle.
_NESTED_RELATIONS = [
    ("commutativity (unnested)", "frobenius type", ["a", "b"],
     [("m", 0, "a", "b", "r")], [("m", 0, "b", "a", "r")]),
    ("cocommutativity (unnested)", "frobenius type", ["r"],
     [("d", 0, "r", "a", "b")], [("d", 0, "r", "b", "a")]),
    ("frobenius: side by side", "frobenius type", ["a", "b"],
     [("m", 0, "a", "b", "c"), ("d", 0, "c", "a1", "d")],
     [("d", 0, "a", "a1", "a2"), ("m", 0, "a2", "b", "d")]),
    ("frobenius: inner circle split", "frobenius type", ["a", "b"],
     [("m", 1, "a", "b", "c"), ("d", 1, "c", "a2", "d")],
     [("d", 0, "a", "a1", "a2"), ("m", 1, "a1", "b", "d")]),
    ("frobenius: outer circle split", "frobenius type", ["a", "b"],
     [("m", 1, "a", "b", "c"), ("d", 0, "c", "d", "b2")],
     [("d", 0, "b", "b1", "b2"), ("m", 1, "a", "b1", "d")]),
    ("frobenius: nested split, inner merge", "frobenius type", ["a2", "d"],
     [("m", 1, "a2", "d", "c"), ("d", 1, "c", "a", "b")],
     [("d", 1, "d", "a1", "b"), ("m", 0, "a1", "a2", "a")]),
    ("frobenius: nested split, outer merge", "frobenius type", ["d", "b2"],
     [("m", 0, "d", "b2", "c"), ("d", 1, "c", "a", "b")],
     [("d", 1, "d", "a", "b1"), ("m", 0, "b1", "b2", "b")]),
    ("associativity: side by side", "associativity type", ["a", "b", "c"],
     [("m", 0, "a", "b", "d"), ("m", 0, "d", "c", "r")],
     [("m", 0, "b", "c", "e"), ("m", 0, "a", "e", "r")]),
    ("associativity: inner pair beside a third", "associativity type", ["a", "b", "c"],
     [("m", 1, "a", "b", "d"), ("m", 0, "d", "c", "r")],
     [("m", 0, "b", "c", "e"), ("m", 1, "a", "e", "r")]),
    ("associativity: two inside a third", "associativity type", ["a", "b", "c"],
     [("m", 0, "a", "b", "d"), ("m", 1, "d", "c", "r")],
     [("m", 1, "b", "c", "e"), ("m", 1, "a", "e", "r")]),
    ("associativity: chain of three", "associativity type", ["a", "b", "c"],
     [("m", 1, "a", "b", "d"), ("m", 1, "d", "c", "r")],
     [("m", 1, "b", "c", "e"), ("m", 0, "a", "e", "r")]),
    ("coassociativity: side by side", "coassociativity type", ["r"],
     [("d", 0, "r", "d", "c"), ("d", 0, "d", "a", "b")],
     [("d", 0, "r", "a", "e"), ("d", 0, "e", "b", "c")]),
    ("coassociativity: inner pair beside a third", "coassociativity type", ["r"],
     [("d", 0, "r", "d", "c"), ("d", 1, "d", "a", "b")],
     [("d", 1, "r", "a", "e"), ("d", 0, "e", "b", "c")]),
    ("coassociativity: two inside a third", "coassociativity type", ["r"],
     [("d", 1, "r", "d", "c"), ("d", 0, "d", "a", "b")],
     [("d", 1, "r", "a", "e"), ("d", 1, "e", "b", "c")]),
    ("coassociativity: chain of three", "coassociativity type", ["r"],
     [("d", 1, "r", "d", "c"), ("d", 1, "d", "a", "b")],
     [("d", 0, "r", "a", "e"), ("d", 1, "e", "b", "c")]),
    ("cancellation: nested unit", "cancellation", ["x"],
     [("u", "a"), ("m", 1, "a", "x", "r")], [("rename", "x", "r")]),
    ("cancellation: nested counit", "cancellation", ["x"],
     [("d", 1, "x", "a", "r"), ("e", "a")], [("rename", "x", "r")]),
    ("torus", "torus", ["x"],
     [("d", 1, "x", "a", "b"), ("m", 1, "a", "b", "r")],
     [("d", 0, "x", "a", "b"), ("m", 0, "a", "b", "r")]),
]


def _run_named(system: FrobeniusSystem, steps, names: Sequence[str]) -> Callable:
    def run(word):
        cur = {(frozenset(zip(names, word)), 0): 1}
        for step in steps:
            nxt: dict = {}

            def emit(state, p, c):
                key = (frozenset(state.items()), p)
                v = nxt.get(key, 0) + c
                if v:
                    nxt[key] = v
                else:
                    nxt.pop(key, None)

            for (fs, p), c in cur.items():
                st = dict(fs)
                kind = step[0]
                if kind == "m":
                    _, nested, a, b, r = step
                    x, y = st.pop(a), st.pop(b)
                    for lab, k, dp in system.merge_table(nested)[(x, y)]:
                        emit({**st, r: lab}, p + dp, c * k)
                elif kind == "d":
                    _, nested, s, a, b = step
                    x = st.pop(s)
                    for (l1, l2), k, dp in system.split_table(nested)[x]:
                        emit({**st, a: l1, b: l2}, p + dp, c * k)
                elif kind == "u":
                    for lab, k, dp in system.unit:
                        emit({**st, step[1]: lab}, p + dp, c * k)
                elif kind == "e":
                    k = system.counit[st.pop(step[1])]
                    if k:
                        emit(st, p, c * k)
                elif kind == "rename":
                    st[step[2]] = st.pop(step[1])
                    emit(st, p, c)
            cur = nxt
        return AlgebraElement(cur)

    return run


def check_relations(system: FrobeniusSystem) -> list[RelationResult]:
    """Evaluate every relation on the full basis and report its sign.

    Plain-cobordism relations (commutativity through the commutation
    relations, with ⊠ for the odd system) are checked for every system;
    nested relations are checked for even systems. ``expected`` records the
    sign pattern each built-in theory should satisfy.
    """
    results = []
    for name, family, n, lhs, rhs in _cob_relations(system):
        sign = _compare(_compose(lhs), _compose(rhs), n)
        results.append(RelationResult(name, family, sign, _expected_cob(system, name)))
    if not system.odd:
        for name, family, names, lhs, rhs in _NESTED_RELATIONS:
            sign = _compare(_run_named(system, lhs, names), _run_named(system, rhs, names),
                            len(names))
            expected = -1 if (name == "torus" and system.name == "nested") else 1
            results.append(RelationResult(name, family, sign, expected))
    return results
