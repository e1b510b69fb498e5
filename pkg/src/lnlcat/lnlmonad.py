"""The linear-non-linear monad ``Q`` and its structure maps.

An object of ``Q A`` is a tuple of ``(a, tag)`` entries.  A morphism is a
:class:`~lnlcat.seqmonads.SeqMorphism` whose reindexing ``φ`` satisfies the
linearity condition: target positions reaching a linear source position are
themselves linear, and ``φ`` restricted to them is a bijection onto the
linear source positions.  Non-linear entries may be duplicated or dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .fincat import (
    DEFAULT_HOM_LIMIT,
    CategoryView,
    Functor,
    NatTransform,
    check_functors_equal,
    check_transforms_equal,
    compose_functors,
    identity_functor,
    is_identity_transform,
    iter_morphisms,
    validate_functor,
    validate_nat_transform,
)
from .report import CheckReport
from .seqmonads import LAMBDA, C, MonadMap, S, SeqMonad, SeqMorphism, SequenceCategory


class Tag(str, Enum):
    LIN = "L"
    NONLIN = "N"

    def __repr__(self) -> str:
        return self.value


LIN, NONLIN = Tag.LIN, Tag.NONLIN


def tag_and(*tags: Tag) -> Tag:
    """Linear exactly when every tag along the nesting path is linear."""
    return LIN if all(t is LIN for t in tags) else NONLIN


def linear_positions(x) -> list[int]:
    return [i for i, (_, t) in enumerate(x) if t is LIN]


def satisfies_linearity(phi, src_tags, tgt_tags) -> bool:
    lin_src = {i for i, t in enumerate(src_tags) if t is LIN}
    hit = [j for j, i in enumerate(phi) if i in lin_src]
    if any(tgt_tags[j] is not LIN for j in hit):
        return False
    return sorted(phi[j] for j in hit) == sorted(lin_src)


class QCategory(SequenceCategory):
    flavor = "Q"

    def __init__(self, base: CategoryView):
        self.base = base
        self.name = f"Q({base.name})"
        self._homs: dict = {}

    def entry_object(self, e):
        return e[0]

    def unit_entry(self, a):
        return (a, LIN)

    def relabel(self, e, a):
        return (a, e[1])

    def merge_entry(self, outer, inner):
        return (inner[0], tag_and(inner[1], outer[1]))

    def entry_choices(self, a) -> list:
        return [(a, LIN), (a, NONLIN)]

    def _is_entry(self, e) -> bool:
        return (isinstance(e, tuple) and len(e) == 2 and isinstance(e[1], Tag)
                and self.base.is_object(e[0]))

    def reindexings(self, x, y):
        lin_src = linear_positions(x)
        non_src = [i for i, (_, t) in enumerate(x) if t is NONLIN]
        lin_tgt = linear_positions(y)
        m = len(y)
        # linear sources are hit exactly once, from linear targets; every
        # other target position draws on a non-linear source
        for chosen in itertools.permutations(lin_tgt, len(lin_src)):
            rest = [j for j in range(m) if j not in chosen]
            for vals in itertools.product(non_src, repeat=len(rest)):
                phi = [0] * m
                for i, j in zip(lin_src, chosen):
                    phi[j] = i
                for j, i in zip(rest, vals):
                    phi[j] = i
                yield tuple(phi)

    def is_admissible(self, m) -> bool:
        n = len(m.src)
        if len(m.reindex) != len(m.tgt) or any(not 0 <= i < n for i in m.reindex):
            return False
        return satisfies_linearity(m.reindex, [t for _, t in m.src], [t for _, t in m.tgt])

    def render_object(self, x):
        return [f"{self.base.render_object(a)}^{t.value}" for a, t in x]


class QMonad(SeqMonad):
    def __init__(self):
        super().__init__("Q")

    def make_category(self, base):
        return QCategory(base)


Q = QMonad()


def q_category(base: CategoryView) -> QCategory:
    return Q.apply(base)


def q_unit(base: CategoryView, a):
    return Q.unit(base).obj(a)


def q_mult(base: CategoryView, x):
    mu = Q.mult(base)
    return mu.mor(x) if isinstance(x, SeqMorphism) else mu.obj(x)


def tagged(entries, tag: Tag) -> tuple:
    return tuple((a, tag) for a in entries)


def untag(x) -> tuple:
    return tuple(a for a, _ in x)


# --------------------------------------------------------------------------
# κ, c, h, β, α


def _retag(cat_to, tag):
    def obj(x):
        return tagged(x, tag)

    def mor(m):
        return SeqMorphism(obj(m.src), obj(m.tgt), m.reindex, m.components)

    return obj, mor


@dataclass
class QStructureMaps:
    base: CategoryView
    kappa: Functor   # S A -> Q A, all linear
    ccol: Functor    # C A -> Q A, all non-linear
    ret: Functor     # h: Q A -> C A, forget tags
    beta: NatTransform   # c∘λ ⇒ κ
    alpha: NatTransform  # e ⇒ id
    comonad: Functor     # e = c∘h
    lam: Functor


_MAPS: dict = {}


def build_structure_maps(base: CategoryView) -> QStructureMaps:
    hit = _MAPS.get(id(base))
    if hit is not None:
        return hit[1]
    SA, CA, QA = S.apply(base), C.apply(base), Q.apply(base)
    kappa = Functor(SA, QA, *_retag(QA, LIN), name="κ")
    ccol = Functor(CA, QA, *_retag(QA, NONLIN), name="c")

    def forget_mor(m):
        return SeqMorphism(untag(m.src), untag(m.tgt), m.reindex, m.components)

    ret = Functor(QA, CA, untag, forget_mor, name="h")
    lam = LAMBDA.component(base)
    comonad = compose_functors(ccol, ret)
    comonad.name = "e"

    def identity_underneath(src, tgt):
        return SeqMorphism(src, tgt, tuple(range(len(tgt))), tuple(base.identity(a) for a, _ in tgt))

    beta = NatTransform(compose_functors(ccol, lam), kappa,
                        lambda s: identity_underneath(tagged(s, NONLIN), tagged(s, LIN)), name="β")
    alpha = NatTransform(comonad, identity_functor(QA),
                         lambda x: identity_underneath(tagged(untag(x), NONLIN), x), name="α")
    maps = QStructureMaps(base, kappa, ccol, ret, beta, alpha, comonad, lam)
    _MAPS[id(base)] = (base, maps)
    return maps


def s_structure(base: CategoryView) -> Functor:
    """The ``S``-algebra structure of ``Q A``: concatenation ``S(Q A) -> Q A``."""
    QA = Q.apply(base)
    return compose_functors(Q.mult(base), build_structure_maps(QA).kappa)


def c_structure(base: CategoryView) -> Functor:
    """Left-semi ``C``-structure ``c ∘ μ_C ∘ C(h): C(Q A) -> Q A`` (counit α)."""
    m = build_structure_maps(base)
    return compose_functors(m.ccol, C.mult(base), C.lift(m.ret))


def _gamma(X):
    maps = build_structure_maps(X)
    cunit = C.unit(X)
    return NatTransform(compose_functors(maps.ccol, cunit), Q.unit(X), lambda a: maps.beta.at((a,)), name="γ")


KAPPA = MonadMap(S, Q, lambda X: build_structure_maps(X).kappa, name="κ")
CCOL = MonadMap(C, Q, lambda X: build_structure_maps(X).ccol, unit_cell=_gamma, name="c")


def check_colimit_equations(base: CategoryView, max_len: int, limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    rep = CheckReport(name=f"colimit-equations({base.name}, max_len={max_len})")
    rep.meta.update(base=base.name, max_len=max_len)
    m = build_structure_maps(base)
    SA, CA, QA = S.apply(base), C.apply(base), Q.apply(base)
    s_objs, c_objs, q_objs = SA.objects_up_to(max_len), CA.objects_up_to(max_len), QA.objects_up_to(max_len)

    for F, objs in ((m.kappa, s_objs), (m.ccol, c_objs), (m.ret, q_objs)):
        rep.merge(validate_functor(F, objs, limit=limit), f"{F.name}:")
    rep.merge(validate_nat_transform(m.beta, s_objs, limit=limit), "β-naturality:")
    rep.merge(validate_nat_transform(m.alpha, q_objs, limit=limit), "α-naturality:")

    check_functors_equal(compose_functors(m.ret, m.kappa), m.lam, s_objs, rep, "h∘κ=λ", limit)
    check_functors_equal(compose_functors(m.ret, m.ccol), identity_functor(CA), c_objs, rep, "h∘c=id", limit)
    is_identity_transform(m.beta.postcompose(m.ret), s_objs, rep, "h·β=id")
    is_identity_transform(m.alpha.precompose(m.ccol), c_objs, rep, "α·c=id")
    check_transforms_equal(m.alpha.precompose(m.kappa), m.beta, s_objs, rep, "α·κ=β")
    is_identity_transform(m.alpha.postcompose(m.ret), q_objs, rep, "h·α=id")
    check_functors_equal(m.comonad, compose_functors(m.comonad, m.comonad), q_objs, rep, "e=e∘e", limit)
    is_identity_transform(m.alpha.precompose(m.comonad), q_objs, rep, "α·e=id")
    is_identity_transform(m.alpha.postcompose(m.comonad), q_objs, rep, "e·α=id")

    # the two left-semi S-structures on Q A coincide
    sq_objs = S.apply(QA).objects_up_to(max_len)
    first = compose_functors(m.ccol, m.ret, s_structure(base))
    second = compose_functors(c_structure(base), LAMBDA.component(QA))
    check_functors_equal(first, second, sq_objs, rep, "left-semi-S-coincidence", limit)
    return rep


def all_lin_is_kappa_image(base: CategoryView, max_len: int) -> bool:
    """Morphisms between all-linear objects are exactly the κ-images."""
    m = build_structure_maps(base)
    SA, QA = S.apply(base), Q.apply(base)
    objs = SA.objects_up_to(max_len)
    for x in objs:
        for y in objs:
            imgs = {m.kappa.mor(f) for f in SA.hom(x, y)}
            if imgs != set(QA.hom(tagged(x, LIN), tagged(y, LIN))):
                return False
    return True


def all_nonlin_is_c_image(base: CategoryView, max_len: int) -> bool:
    m = build_structure_maps(base)
    CA, QA = C.apply(base), Q.apply(base)
    objs = CA.objects_up_to(max_len)
    for x in objs:
        for y in objs:
            imgs = {m.ccol.mor(f) for f in CA.hom(x, y)}
            if imgs != set(QA.hom(tagged(x, NONLIN), tagged(y, NONLIN))):
                return False
    return True


def alpha_is_unique(base: CategoryView, max_len: int) -> bool:
    """``α_x`` is the only identity-reindex, identity-component map ``e(x) -> x``."""
    m = build_structure_maps(base)
    QA = Q.apply(base)
    for x in QA.objects_up_to(max_len):
        cands = [f for f in QA.hom(m.comonad.obj(x), x)
                 if f.reindex == tuple(range(len(x))) and all(c == base.identity(a) for c, (a, _) in zip(f.components, x))]
        if cands != [m.alpha.at(x)]:
            return False
    return True


def morphisms_up_to(cat, max_len: int, limit: int | None = None) -> list:
    return list(iter_morphisms(cat, cat.objects_up_to(max_len), limit))
