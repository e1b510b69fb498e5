"""Left-semi algebras: strict in the multiplication, colax in the unit.

A left-semi ``T``-algebra on ``X`` is a functor ``z: T X -> X`` with a
2-cell ``ε: z∘η ⇒ id`` such that

* ``z∘μ = z∘T(z)``;
* ``ε·z = id_z`` and ``z·T(ε) = id_z`` (the colax unit conditions).

Precomposing the unit conditions with ``η`` gives ``f·ε = id_f = ε·f`` for
``f = z∘η``, and with the first law ``f = f∘f``; both consequences are also
checked so a report pinpoints which form broke.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    DEFAULT_HOM_LIMIT,
    CategoryView,
    Functor,
    NatTransform,
    check_functors_equal,
    compose_functors,
    identity_functor,
    identity_transform,
    is_identity_transform,
    validate_functor,
    validate_nat_transform,
)
from .report import CheckReport, LawViolation
from .seqmonads import Algebra, MonadMap, check_monad_map


@dataclass
class LeftSemiAlgebra:
    monad: object
    carrier: CategoryView
    structure: Functor      # z: T X -> X
    counit: NatTransform    # ε: z∘η ⇒ id_X
    name: str = "lsa"

    @property
    def deflation(self) -> Functor:
        f = compose_functors(self.structure, self.monad.unit(self.carrier))
        f.name = "f"
        return f


def from_strict(alg: Algebra) -> LeftSemiAlgebra:
    """A strict algebra is left-semi with identity counit."""
    X = alg.carrier
    f = compose_functors(alg.structure, alg.monad.unit(X))
    ident = identity_functor(X)
    eps = NatTransform(f, ident, lambda x: X.identity(x), name="id")
    return LeftSemiAlgebra(alg.monad, X, alg.structure, eps, name=alg.name)


def _sweeps(T, X, max_len):
    TX = T.apply(X)
    return X.objects_up_to(max_len), TX.objects_up_to(max_len), T.apply(TX).objects_up_to(max_len)


def check_left_semi_algebra(a: LeftSemiAlgebra, max_len: int = 2, limit: int | None = DEFAULT_HOM_LIMIT,
                            compositions: int | None = None) -> CheckReport:
    T, X, z, eps = a.monad, a.carrier, a.structure, a.counit
    rep = CheckReport(name=f"left-semi({a.name}, {T.name})")
    TX = T.apply(X)
    if z.source is not TX or z.target is not X:
        rep.error("structure-boundary", f"{z.name}: {z.source.name} -> {z.target.name}")
        return rep
    x_objs, t_objs, tt_objs = _sweeps(T, X, max_len)
    rep.merge(validate_functor(z, t_objs, compositions=False, limit=limit), "z:")
    cb = max_len if compositions is None else compositions
    rep.merge(validate_functor(z, TX.objects_up_to(cb), limit=limit), "z:")
    rep.merge(validate_nat_transform(eps, x_objs, limit=limit), "ε:")
    if rep.errors:
        return rep
    f = a.deflation
    for x in x_objs:
        if eps.source.obj(x) != f.obj(x):
            rep.error("counit-boundary", x)
    if rep.errors:
        return rep
    check_functors_equal(compose_functors(z, T.mult(X)), compose_functors(z, T.lift(z)), tt_objs, rep,
                         "(A) z∘μ=z∘T(z)", limit)
    is_identity_transform(eps.precompose(z), t_objs, rep, "(B) ε·z=id")
    Teps = T.lift_transform(eps)
    for t in t_objs:
        rep.expect(z.mor(Teps.at(t)) == X.identity(z.obj(t)), "(B) z·T(ε)=id", ("at", t))
    check_functors_equal(f, compose_functors(f, f), x_objs, rep, "f=f²", limit)
    is_identity_transform(eps.postcompose(f), x_objs, rep, "f·ε=id")
    is_identity_transform(eps.precompose(f), x_objs, rep, "ε·f=id")
    return rep


def check_strict_lsa_map(p: Functor, a: LeftSemiAlgebra, b: LeftSemiAlgebra, max_len: int = 2,
                         limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    T = a.monad
    rep = CheckReport(name=f"strict-map({p.name})")
    if p.source is not a.carrier or p.target is not b.carrier:
        rep.error("map-boundary", p.name)
        return rep
    x_objs, t_objs, _ = _sweeps(T, a.carrier, max_len)
    rep.merge(validate_functor(p, x_objs, limit=limit), "p:")
    if rep.errors:
        return rep
    check_functors_equal(compose_functors(p, a.structure), compose_functors(b.structure, T.lift(p)), t_objs, rep,
                         "p∘z=z'∘T(p)", limit)
    for x in x_objs:
        rep.expect(p.mor(a.counit.at(x)) == b.counit.at(p.obj(x)), "p·ε=ε'·p", x)
    return rep


def check_lsa_2cell(gamma: NatTransform, p: Functor, q: Functor, a: LeftSemiAlgebra, b: LeftSemiAlgebra,
                    max_len: int = 2, limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    T = a.monad
    rep = CheckReport(name=f"lsa-2cell({gamma.name})")
    x_objs, t_objs, _ = _sweeps(T, a.carrier, max_len)
    for x in x_objs:
        c = gamma.at(x)
        Y = b.carrier
        if (Y.dom(c), Y.cod(c)) != (p.obj(x), q.obj(x)):
            rep.error("component-boundary", (x, c))
    if rep.errors:
        return rep
    rep.merge(validate_nat_transform(gamma, x_objs, limit=limit), "γ:")
    Tg = T.lift_transform(gamma)
    for t in t_objs:
        rep.expect(gamma.at(a.structure.obj(t)) == b.structure.mor(Tg.at(t)), "γ·z=z'·T(γ)", ("at", t))
    return rep


def comonad_from_lsa(a: LeftSemiAlgebra, max_len: int = 2) -> tuple[Functor, NatTransform]:
    """The strictly idempotent comonad ``(f, ε)`` carried by a left-semi algebra."""
    rep = check_left_semi_algebra(a, max_len)
    if not rep.ok:
        raise LawViolation(f"not left-semi: {rep.findings[0]}", rep)
    f = a.deflation
    eps = NatTransform(f, identity_functor(a.carrier), a.counit.at, name="ε")
    return f, eps


def check_idempotent_comonad_in_algs(alg: Algebra, f: Functor, eps: NatTransform, max_len: int = 2,
                                     limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    T, X, x = alg.monad, alg.carrier, alg.structure
    rep = CheckReport(name="idempotent-comonad")
    x_objs, t_objs, _ = _sweeps(T, X, max_len)
    rep.merge(validate_functor(f, x_objs, limit=limit), "f:")
    rep.merge(validate_nat_transform(eps, x_objs, limit=limit), "ε:")
    if rep.errors:
        return rep
    check_functors_equal(compose_functors(f, x), compose_functors(x, T.lift(f)), t_objs, rep,
                         "f strict endomap", limit)
    check_functors_equal(f, compose_functors(f, f), x_objs, rep, "f=f²", limit)
    Te = T.lift_transform(eps)
    for t in t_objs:
        rep.expect(eps.at(x.obj(t)) == x.mor(Te.at(t)), "ε algebra 2-cell", ("at", t))
    is_identity_transform(eps.precompose(f), x_objs, rep, "ε·f=id")
    is_identity_transform(eps.postcompose(f), x_objs, rep, "f·ε=id")
    return rep


def lsa_from_comonad(alg: Algebra, f: Functor, eps: NatTransform, max_len: int = 2) -> LeftSemiAlgebra:
    """``(f∘x, ε)`` for a strictly idempotent comonad ``(f, ε)`` on a strict algebra."""
    pre = check_idempotent_comonad_in_algs(alg, f, eps, max_len)
    if not pre.ok:
        raise LawViolation(f"not an idempotent comonad of algebras: {pre.findings[0]}", pre)
    T, X = alg.monad, alg.carrier
    z = compose_functors(f, alg.structure)
    z.name = "f∘x"
    counit = NatTransform(compose_functors(z, T.unit(X)), identity_functor(X), eps.at, name="ε")
    out = LeftSemiAlgebra(T, X, z, counit, name=f"{alg.name} deflated")
    rep = check_left_semi_algebra(out, max_len)
    if not rep.ok:
        raise LawViolation(f"result is not left-semi: {rep.findings[0]}", rep)
    return out


def compose_lsa_along(m: MonadMap, a: LeftSemiAlgebra) -> LeftSemiAlgebra:
    """``(z∘λ_X, ε ∘ z·γ)`` as a left-semi algebra for the source monad."""
    X = a.carrier
    lam = m.component(X)
    gamma = m.unit_cell(X)
    z = compose_functors(a.structure, lam)
    src = compose_functors(z, m.source.unit(X))

    def comp(x):
        return X.compose(a.counit.at(x), a.structure.mor(gamma.at(x)))

    counit = NatTransform(src, identity_functor(X), comp, name="ε∘z·γ")
    return LeftSemiAlgebra(m.source, X, z, counit, name=f"{m.name}*{a.name}")


def check_ls_monad_map(m: MonadMap, base: CategoryView, max_len: int = 2,
                       limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    rep = CheckReport(name=f"left-semi monad map({m.name}, {base.name})")
    rep.merge(check_monad_map(m, base, max_len, limit, strict_unit=False), "(M) ")
    gamma = m.unit_cell(base)
    rep.merge(validate_nat_transform(gamma, base.objects_up_to(max_len), limit=limit), "γ:")
    free = LeftSemiAlgebra(m.target, m.target.apply(base), m.target.mult(base),
                           identity_transform(compose_functors(m.target.mult(base), m.target.unit(m.target.apply(base)))),
                           name=f"free {m.target.name}")
    free.counit = NatTransform(free.counit.source, identity_functor(free.carrier),
                               free.carrier.identity, name="id")
    rep.merge(check_left_semi_algebra(compose_lsa_along(m, free), max_len, limit, compositions=1), "(U) ")
    return rep


def free_lsa(T, base: CategoryView) -> LeftSemiAlgebra:
    TX = T.apply(base)
    mu = T.mult(base)
    f = compose_functors(mu, T.unit(TX))
    return LeftSemiAlgebra(T, TX, mu, NatTransform(f, identity_functor(TX), TX.identity, name="id"),
                           name=f"free {T.name}({base.name})")
