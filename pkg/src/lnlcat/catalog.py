"""Small named categories used throughout the tests and the CLI."""

from __future__ import annotations

import itertools

from .fincat import FinCat, Functor, identity_name


def poset(elements, leq, name: str = "poset") -> FinCat:
    """Thin category of a finite partial order; ``leq(a, b)`` decides ``a ≤ b``."""
    els = [str(e) for e in elements]
    arrows = [(f"{a}<{b}", a, b) for a in els for b in els if a != b and leq(a, b)]
    names = {(s, t): n for n, s, t in arrows}
    table = {}
    for n1, a, b in arrows:
        for n2, b2, c in arrows:
            if b == b2:
                table[(n1, n2)] = names.get((a, c), identity_name(a))
    return FinCat(els, arrows, table, name=name)


def poset_arrow(cat: FinCat, a, b):
    """The unique morphism ``a -> b`` of a thin category."""
    if a == b:
        return identity_name(a)
    hs = cat.hom(a, b)
    if len(hs) != 1:
        raise ValueError(f"{cat.name}: {a} ≤ {b} does not hold")
    return hs[0]


def is_thin(cat) -> bool:
    return all(len(cat.hom(x, y)) <= 1 for x in cat.objects() for y in cat.objects())


ONE = FinCat(["•"], [], name="ONE")
TWO = FinCat(["0", "1"], [], name="TWO")
ARROW = FinCat(["0", "1"], [("u", "0", "1")], name="ARROW")
PARALLEL = FinCat(["0", "1"], [("p", "0", "1"), ("q", "0", "1")], name="PARALLEL")
SPAN = FinCat(["l", "m", "r"], [("a", "m", "l"), ("b", "m", "r")], name="SPAN")


def chain(n: int) -> FinCat:
    return poset(range(n), lambda a, b: int(a) <= int(b), name=f"Chain{n}")


CHAIN3 = chain(3)

# four-element Boolean lattice ⊥ ≤ a, b ≤ ⊤
_DIAMOND_LEQ = {("bot", x) for x in ("bot", "a", "b", "top")} | {("a", "a"), ("b", "b"), ("a", "top"), ("b", "top"), ("top", "top")}
DIAMOND = poset(["bot", "a", "b", "top"], lambda x, y: (x, y) in _DIAMOND_LEQ, name="Diamond")


def cyclic_groupoid() -> FinCat:
    """Three objects, two parallel isomorphisms between every pair.

    Morphism ``i>j:k`` goes ``i -> j`` and carries a parity ``k``; composing
    adds parities mod 2.  Used to exercise the associativity sweep.
    """
    objs = ["0", "1", "2"]
    arrows = []
    for i, j, k in itertools.product(objs, objs, (0, 1)):
        if i == j and k == 0:
            continue
        arrows.append((f"{i}>{j}:{k}", i, j))

    def name(i, j, k):
        return identity_name(i) if i == j and k == 0 else f"{i}>{j}:{k}"

    table = {}
    for n1, i, j in arrows:
        k1 = int(n1[-1])
        for n2, j2, l in arrows:
            if j2 == j:
                table[(n1, n2)] = name(i, l, (k1 + int(n2[-1])) % 2)
    return FinCat(objs, arrows, table, name="Cyclic3")


def terminal_functor(cat) -> Functor:
    """The unique functor to ONE."""
    return Functor(cat, ONE, lambda x: "•", lambda m: identity_name("•"), name="!")


TEST_SET = [ONE, TWO, ARROW, PARALLEL, SPAN, CHAIN3]

BY_NAME = {c.name.lower(): c for c in TEST_SET + [DIAMOND]}
