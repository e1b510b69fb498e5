"""Named algebras and structure objects shared by the tests and the CLI."""

from __future__ import annotations

from .catalog import CHAIN3, DIAMOND, ONE
from .colax import cplus_algebra_from_lsa
from .fincat import FinCat, Functor, NatTransform, compose_functors, enumerate_transforms, identity_functor
from .lnlmonad import Q, build_structure_maps, c_structure
from .semialg import LeftSemiAlgebra, free_lsa, from_strict, lsa_from_comonad
from .seqmonads import C, S, Algebra
from .structure import StructureObject, thin_structure


def _key(x):
    return int(x)


def chain3_structure() -> StructureObject:
    """Chain3 with ``⊗ = min``, ``I = 2`` and ``f = (0↦0, 1↦0, 2↦2)``."""
    f = {"0": "0", "1": "0", "2": "2"}
    return thin_structure(CHAIN3, lambda a, b: min(a, b, key=_key), "2", f.__getitem__, name="Chain3")


def chain3_bad_structure() -> StructureObject:
    """Chain3 with ``f = (0↦0, 1↦1, 2↦1)``: the unit is not fixed."""
    f = {"0": "0", "1": "1", "2": "1"}
    return thin_structure(CHAIN3, lambda a, b: min(a, b, key=_key), "2", f.__getitem__, name="Chain3-bad-f")


def chain3_meet_structure() -> StructureObject:
    return thin_structure(CHAIN3, lambda a, b: min(a, b, key=_key), "2", lambda x: x, name="Chain3-meet")


_MEET = {("a", "b"): "bot", ("b", "a"): "bot"}


def diamond_meet(x, y):
    if x == y or y == "top":
        return x
    if x == "top":
        return y
    if "bot" in (x, y):
        return "bot"
    return _MEET[(x, y)]


def diamond_structure() -> StructureObject:
    return thin_structure(DIAMOND, diamond_meet, "top", lambda x: x, name="Diamond-meet")


STRUCTURES = {
    "chain3": chain3_structure,
    "chain3-meet": chain3_meet_structure,
    "diamond": diamond_structure,
    "chain3-bad": chain3_bad_structure,
}


def thin_functor(source, target, obj, name: str = "p") -> Functor:
    """A monotone map between thin categories, as a functor."""
    def mor(m):
        hs = target.hom(obj(source.dom(m)), obj(source.cod(m)))
        if len(hs) != 1:
            raise ValueError(f"{name} is not monotone at {m!r}")
        return hs[0]

    return Functor(source, target, obj, mor, name=name)


# --------------------------------------------------------------------------
# strict algebras and left-semi algebras


def min_algebra(monad=S) -> Algebra:
    """The ``S``- (or ``C``-) algebra ``min`` on Chain3, with top ``2`` as unit."""
    SX = monad.apply(CHAIN3)

    def obj(x):
        return min(x, key=_key) if x else "2"

    return Algebra(monad, CHAIN3, thin_functor(SX, CHAIN3, obj, name="min"), name=f"Chain3 min ({monad.name})")


def chain3_deflation():
    f = {"0": "0", "1": "0", "2": "2"}
    fun = thin_functor(CHAIN3, CHAIN3, f.__getitem__, name="f")
    eps = NatTransform(fun, identity_functor(CHAIN3), lambda x: CHAIN3.hom(f[x], x)[0], name="ε")
    return fun, eps


def chain3_mutated_deflation():
    f = {"0": "0", "1": "0", "2": "1"}
    fun = thin_functor(CHAIN3, CHAIN3, f.__getitem__, name="f'")
    eps = NatTransform(fun, identity_functor(CHAIN3), lambda x: CHAIN3.hom(f[x], x)[0], name="ε'")
    return fun, eps


def chain3_lsa(monad=C) -> LeftSemiAlgebra:
    """Chain3 deflated by ``f``: ``z⟨x..⟩ = f(min x)`` with ``ε`` the order witness."""
    f, eps = chain3_deflation()
    return lsa_from_comonad(min_algebra(monad), f, eps)


def q_lsa(base=ONE) -> LeftSemiAlgebra:
    """``Q base`` as a left-semi ``C``-algebra with counit ``α``."""
    maps = build_structure_maps(base)
    QA = Q.apply(base)
    z = c_structure(base)
    alpha = maps.alpha

    counit = NatTransform(compose_functors(z, C.unit(QA)), identity_functor(QA), alpha.at, name="α")
    return LeftSemiAlgebra(C, QA, z, counit, name=f"Q({base.name})")


def strict_lsa() -> LeftSemiAlgebra:
    return from_strict(min_algebra(S))


def free_c_lsa(base=ONE) -> LeftSemiAlgebra:
    return free_lsa(C, base)


def chain3_cplus_algebra() -> Algebra:
    return cplus_algebra_from_lsa(chain3_lsa(C))


# --------------------------------------------------------------------------
# a natural transformation that breaks the algebra condition


def z2_carrier() -> FinCat:
    """Objects 0, 1; ``hom(1, 1) = {id, s}`` with ``s∘s = id``; nothing else.

    Tensor is ``max`` on objects and adds in ``Z/2`` on morphisms.
    """
    arrows = [("s", "1", "1")]
    table = {("s", "s"): "id_1"}
    return FinCat(["0", "1"], arrows, table, name="Z2")


Z2 = z2_carrier()

_PARITY = {"id_0": 0, "id_1": 0, "s": 1}
_BY = {("1", "1", 0): "id_1", ("1", "1", 1): "s"}


def _z2_mor(a, b, parity):
    if a == "0" and b == "0":
        return "id_0"
    return _BY[(a, b, parity % 2)]


def z2_algebra() -> Algebra:
    SX = S.apply(Z2)

    def obj(x):
        return max(x, default="0")

    def mor(m):
        return _z2_mor(obj(m.src), obj(m.tgt), sum(_PARITY[c] for c in m.components))

    return Algebra(S, Z2, Functor(SX, Z2, obj, mor, name="max"), name="Z2 max")


def z2_lsa() -> LeftSemiAlgebra:
    return from_strict(z2_algebra())


def z2_twist() -> NatTransform:
    """``γ: id ⇒ id`` with ``γ_1 = s``: natural, yet not an algebra 2-cell.

    On ``⟨1, 1⟩`` the structure sends ``T(γ)`` to ``s + s = id`` while
    ``γ_{max(1, 1)} = s``.
    """
    ident = identity_functor(Z2)
    return NatTransform(ident, ident, lambda x: "s" if x == "1" else "id_0", name="γ")


def z2_candidate_twists():
    """Every natural ``id ⇒ id`` on the Z2 carrier (brute force)."""
    ident = identity_functor(Z2)
    return list(enumerate_transforms(ident, ident))

