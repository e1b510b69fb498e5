"""Colax colimits of a functor in Cat and the ``C⁺`` monad built from them.

For ``F: A -> B`` the carrier has a copy of ``A`` and a copy of ``B`` plus,
for every ``a``, a new map ``β_a: F a -> a``.  A mixed morphism ``b -> a`` is
stored as its ``B``-side witness ``v: b -> F a`` (it stands for ``β_a ∘ v``);
there are no morphisms from the ``A`` copy to the ``B`` copy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import (
    DEFAULT_HOM_LIMIT,
    CategoryView,
    FinCat,
    Functor,
    NatTransform,
    check_functors_equal,
    check_transforms_equal,
    compose_functors,
    enumerate_transforms,
    identity_functor,
    sweep_objects,
    validate_functor,
    validate_nat_transform,
)
from .report import CheckReport, LawViolation
from .seqmonads import C, Algebra


@dataclass(frozen=True)
class Copy:
    side: str  # "A" or "B"
    obj: object

    def __repr__(self) -> str:
        return f"{self.obj!r}_{self.side}"


@dataclass(frozen=True)
class Inj:
    side: str
    mor: object

    def __repr__(self) -> str:
        return f"{self.side}:{self.mor!r}"


@dataclass(frozen=True)
class Mixed:
    v: object  # B-morphism b -> F a
    a: object

    def __repr__(self) -> str:
        return f"β_{self.a!r}∘{self.v!r}"


class ColaxCarrier(CategoryView):
    def __init__(self, F: Functor, name: str | None = None):
        self.functor = F
        self.A = F.source
        self.B = F.target
        self.name = name or f"Colax({F.name})"

    def side(self, s) -> CategoryView:
        return self.A if s == "A" else self.B

    @property
    def is_finite(self) -> bool:
        return self.A.is_finite and self.B.is_finite

    def objects(self) -> list:
        return [Copy("A", a) for a in self.A.objects()] + [Copy("B", b) for b in self.B.objects()]

    def objects_up_to(self, bound: int) -> list:
        return ([Copy("A", a) for a in self.A.objects_up_to(bound)]
                + [Copy("B", b) for b in self.B.objects_up_to(bound)])

    def size(self, x) -> int:
        return self.side(x.side).size(x.obj)

    def is_object(self, x) -> bool:
        return isinstance(x, Copy) and x.side in ("A", "B") and self.side(x.side).is_object(x.obj)

    def hom(self, x, y) -> list:
        if x.side == y.side:
            return [Inj(x.side, m) for m in self.side(x.side).hom(x.obj, y.obj)]
        if x.side == "B":
            return [Mixed(v, y.obj) for v in self.B.hom(x.obj, self.functor.obj(y.obj))]
        return []

    def identity(self, x):
        return Inj(x.side, self.side(x.side).identity(x.obj))

    def dom(self, m):
        if isinstance(m, Mixed):
            return Copy("B", self.B.dom(m.v))
        return Copy(m.side, self.side(m.side).dom(m.mor))

    def cod(self, m):
        if isinstance(m, Mixed):
            return Copy("A", m.a)
        return Copy(m.side, self.side(m.side).cod(m.mor))

    def compose(self, g, f):
        if isinstance(f, Inj) and isinstance(g, Inj):
            if f.side != g.side:
                raise ValueError(f"{self.name}: cannot compose {f} then {g}")
            return Inj(f.side, self.side(f.side).compose(g.mor, f.mor))
        if isinstance(f, Mixed) and isinstance(g, Inj) and g.side == "A":
            # m ∘ β_a ∘ v = β_a' ∘ F(m) ∘ v by naturality of β
            return Mixed(self.B.compose(self.functor.mor(g.mor), f.v), self.A.cod(g.mor))
        if isinstance(f, Inj) and f.side == "B" and isinstance(g, Mixed):
            return Mixed(self.B.compose(g.v, f.mor), g.a)
        raise ValueError(f"{self.name}: cannot compose {f} then {g}")

    # the isomorphism C(b, a) ≅ B(b, F a)
    def mixed_to_witness(self, m: Mixed):
        return m.v

    def witness_to_mixed(self, v, a) -> Mixed:
        return Mixed(v, a)

    def render_object(self, x):
        return f"{x.side}:{self.side(x.side).render_object(x.obj)}"

    def render_morphism(self, m):
        if isinstance(m, Mixed):
            return {"beta": self.A.render_object(m.a), "via": self.B.render_morphism(m.v)}
        return f"{m.side}:{self.side(m.side).render_morphism(m.mor)}"


@dataclass
class ColaxColimit:
    functor: Functor
    carrier: ColaxCarrier
    iota_a: Functor
    iota_b: Functor
    beta: NatTransform  # ι_B ∘ F ⇒ ι_A


@dataclass
class ColaxCocone:
    f: Functor          # A -> D
    g: Functor          # B -> D
    phi: NatTransform   # g ∘ F ⇒ f


def build_colimit(F: Functor, name: str | None = None) -> ColaxColimit:
    K = ColaxCarrier(F, name)
    iota_a = Functor(F.source, K, lambda a: Copy("A", a), lambda m: Inj("A", m), name="ι_A")
    iota_b = Functor(F.target, K, lambda b: Copy("B", b), lambda m: Inj("B", m), name="ι_B")
    beta = NatTransform(compose_functors(iota_b, F), iota_a,
                        lambda a: Mixed(F.target.identity(F.obj(a)), a), name="β")
    return ColaxColimit(F, K, iota_a, iota_b, beta)


def validate_cocone(col: ColaxColimit, cc: ColaxCocone, bound: int = 2) -> CheckReport:
    rep = CheckReport(name="cocone")
    F = col.functor
    if cc.f.source is not F.source or cc.g.source is not F.target:
        rep.error("cocone-legs", "legs do not start at the functor's source and target")
    if cc.f.target is not cc.g.target:
        rep.error("cocone-apex", "legs land in different categories")
    if rep.errors:
        return rep
    a_objs = sweep_objects(F.source, None, bound)
    for a in a_objs:
        c = cc.phi.at(a)
        D = cc.f.target
        if (D.dom(c), D.cod(c)) != (cc.g.obj(F.obj(a)), cc.f.obj(a)):
            rep.error("phi-boundary", (a, c))
    if rep.errors:
        return rep
    rep.merge(validate_nat_transform(cc.phi, a_objs), "phi:")
    return rep


def mediate_cocone(col: ColaxColimit, cc: ColaxCocone, bound: int = 2, check: bool = True) -> Functor:
    """The unique ``r`` with ``r∘ι_A = f``, ``r∘ι_B = g`` and ``r·β = φ``."""
    if check:
        rep = validate_cocone(col, cc, bound)
        if not rep.ok:
            raise LawViolation(f"invalid cocone: {rep.findings[0]}", rep)
    D = cc.f.target

    def obj(x):
        return cc.f.obj(x.obj) if x.side == "A" else cc.g.obj(x.obj)

    def mor(m):
        if isinstance(m, Mixed):
            return D.compose(cc.phi.at(m.a), cc.g.mor(m.v))
        return cc.f.mor(m.mor) if m.side == "A" else cc.g.mor(m.mor)

    return Functor(col.carrier, D, obj, mor, name="r")


def check_mediator(col: ColaxColimit, cc: ColaxCocone, r: Functor, bound: int = 2,
                   limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    rep = CheckReport(name="mediator")
    K = col.carrier
    objs = sweep_objects(K, None, bound)
    rep.merge(validate_functor(r, objs, limit=limit), "functor:")
    if rep.errors:
        return rep
    a_objs = sweep_objects(col.functor.source, None, bound)
    b_objs = sweep_objects(col.functor.target, None, bound)
    check_functors_equal(compose_functors(r, col.iota_a), cc.f, a_objs, rep, "r∘ι_A=f", limit)
    check_functors_equal(compose_functors(r, col.iota_b), cc.g, b_objs, rep, "r∘ι_B=g", limit)
    check_transforms_equal(col.beta.postcompose(r), cc.phi, a_objs, rep, "r·β=φ")
    return rep


def find_mediators(col: ColaxColimit, cc: ColaxCocone) -> list[Functor]:
    """All functors out of a finite carrier satisfying the three equations.

    Exhaustive: the first two equations fix the object map and the images of
    the copies of ``A`` and ``B``; every boundary-correct choice of image for
    each mixed morphism is tried and filtered by functoriality and ``r·β = φ``.
    """
    K = col.carrier
    D = cc.f.target
    objs = K.objects()

    def obj(x):
        return cc.f.obj(x.obj) if x.side == "A" else cc.g.obj(x.obj)

    fixed = {}
    mixed = []
    for x in objs:
        for y in objs:
            for m in K.hom(x, y):
                if isinstance(m, Mixed):
                    mixed.append(m)
                else:
                    fixed[m] = cc.f.mor(m.mor) if m.side == "A" else cc.g.mor(m.mor)
    order = {m: i for i, m in enumerate(mixed)}
    # composable pairs with a mixed composite, keyed by the last mixed morphism they mention
    constraints: dict = {i: [] for i in range(len(mixed))}
    for x in objs:
        for y in objs:
            for f in K.hom(x, y):
                for z in objs:
                    for g in K.hom(y, z):
                        h = K.compose(g, f)
                        involved = [order[k] for k in (f, g, h) if k in order]
                        if involved:
                            constraints[max(involved)].append((f, g, h))
    beta_at = {col.beta.at(a): cc.phi.at(a) for a in col.functor.source.objects()}
    choices = [D.hom(obj(K.dom(m)), obj(K.cod(m))) for m in mixed]
    found = []
    assign = dict(fixed)

    def search(i):
        if i == len(mixed):
            img = dict(assign)
            found.append(Functor(K, D, obj, lambda m, img=img: img[m], name="r'"))
            return
        m = mixed[i]
        for cand in choices[i]:
            if m in beta_at and cand != beta_at[m]:
                continue
            assign[m] = cand
            if all(D.compose(assign[g], assign[f]) == assign[h] for f, g, h in constraints[i]):
                search(i + 1)
            del assign[m]

    search(0)
    return found


def mediate_2cell(col: ColaxColimit, cc: ColaxCocone, cc2: ColaxCocone, rho: NatTransform, sigma: NatTransform,
                  bound: int = 2, check: bool = True) -> NatTransform:
    """The unique ``τ: r ⇒ r'`` with ``τ·ι_A = ρ`` and ``τ·ι_B = σ``."""
    F = col.functor
    D = cc.f.target
    for a in sweep_objects(F.source, None, bound):
        left = D.compose(rho.at(a), cc.phi.at(a))
        right = D.compose(cc2.phi.at(a), sigma.at(F.obj(a)))
        if left != right:
            raise LawViolation(f"incompatible 2-cells at {a!r}: ρ∘φ = {left!r} but φ'∘σF = {right!r}")
    r = mediate_cocone(col, cc, bound, check)
    r2 = mediate_cocone(col, cc2, bound, check)
    return NatTransform(r, r2, lambda x: rho.at(x.obj) if x.side == "A" else sigma.at(x.obj), name="τ")


def check_2cell_mediator(col: ColaxColimit, tau: NatTransform, rho: NatTransform, sigma: NatTransform,
                         bound: int = 2) -> CheckReport:
    rep = CheckReport(name="2-cell mediator")
    rep.merge(validate_nat_transform(tau, sweep_objects(col.carrier, None, bound)), "τ:")
    check_transforms_equal(tau.precompose(col.iota_a), rho, sweep_objects(col.functor.source, None, bound), rep,
                           "τ·ι_A=ρ")
    check_transforms_equal(tau.precompose(col.iota_b), sigma, sweep_objects(col.functor.target, None, bound), rep,
                           "τ·ι_B=σ")
    return rep


def find_2cell_mediators(col: ColaxColimit, r: Functor, r2: Functor, rho: NatTransform,
                         sigma: NatTransform) -> list[NatTransform]:
    """Every natural ``τ: r ⇒ r'`` whose whiskerings are ``ρ`` and ``σ``.

    Exhaustive over component families: each carrier object contributes
    the components of ``D(r x, r' x)`` meeting its whiskering equation, and
    every combination is then tested for naturality.
    """
    K = col.carrier
    D = r.target
    objs = K.objects()

    def required(x):
        return rho.at(x.obj) if x.side == "A" else sigma.at(x.obj)

    choices = [[c for c in D.hom(r.obj(x), r2.obj(x)) if c == required(x)] for x in objs]
    out = []
    for combo in itertools.product(*choices):
        table = dict(zip(objs, combo))
        tau = NatTransform(r, r2, table.__getitem__, name="τ'")
        if validate_nat_transform(tau, objs).ok:
            out.append(tau)
    return out


def compatible(cc: ColaxCocone, cc2: ColaxCocone, rho: NatTransform, sigma: NatTransform, F: Functor) -> bool:
    D = cc.f.target
    return all(D.compose(rho.at(a), cc.phi.at(a)) == D.compose(cc2.phi.at(a), sigma.at(F.obj(a)))
               for a in F.source.objects())


def enumerate_cocones(F: Functor, D: FinCat):
    """Every colax cocone under ``F`` with apex ``D`` (finite inputs)."""
    from .fincat import enumerate_functors

    gs = list(enumerate_functors(F.target, D))
    for f in enumerate_functors(F.source, D):
        for g in gs:
            for phi in enumerate_transforms(compose_functors(g, F), f):
                yield ColaxCocone(f, g, phi)


def colimit_to_fincat(col: ColaxColimit) -> tuple[FinCat, dict]:
    """Export a finite carrier as a :class:`FinCat` plus naming tables."""
    K = col.carrier
    if not K.is_finite:
        raise ValueError("carrier is infinite")
    objs = K.objects()
    oname = {x: f"{x.side}:{x.obj}" for x in objs}
    mname = {}
    arrows = []
    for x in objs:
        mname[K.identity(x)] = f"id_{oname[x]}"
    for x in objs:
        for y in objs:
            for m in K.hom(x, y):
                if m == K.identity(x):
                    continue
                n = f"{m.side}:{m.mor}" if isinstance(m, Inj) else f"β_{m.a}∘{m.v}"
                mname[m] = n
                arrows.append((n, oname[x], oname[y]))
    table = {}
    nonid = [m for m in mname if not mname[m].startswith("id_")]
    for f in nonid:
        for g in nonid:
            if K.cod(f) == K.dom(g):
                table[(mname[f], mname[g])] = mname[K.compose(g, f)]
    cat = FinCat([oname[x] for x in objs], arrows, table, name=K.name)
    return cat, {"objects": oname, "morphisms": mname}


# --------------------------------------------------------------------------
# C⁺: the construction applied to the unit Id -> C


class CPlusMonad:
    name = "Cplus"

    def __init__(self):
        self._cache: dict = {}

    def __repr__(self) -> str:
        return "<CPlusMonad>"

    def _colimit(self, X) -> ColaxColimit:
        hit = self._cache.get(("col", id(X)))
        if hit is None:
            col = build_colimit(C.unit(X), name=f"C+({X.name})")
            hit = (X, col)
            self._cache[("col", id(X))] = hit
        return hit[1]

    def colimit(self, X) -> ColaxColimit:
        return self._colimit(X)

    def apply(self, X) -> ColaxCarrier:
        return self._colimit(X).carrier

    def unit(self, X) -> Functor:
        return self._colimit(X).iota_a

    def retraction(self, X) -> Functor:
        """``h: C⁺X -> C X`` from the identity cocone."""
        col = self._colimit(X)
        eta = C.unit(X)
        CX = C.apply(X)
        ident = identity_functor(CX)
        phi = NatTransform(eta, eta, lambda a: CX.identity(eta.obj(a)), name="id")
        return mediate_cocone(col, ColaxCocone(eta, ident, phi), check=False)

    def counit(self, X) -> NatTransform:
        """``α: c∘h ⇒ id`` on ``C⁺X``."""
        col = self._colimit(X)
        K = col.carrier
        h = self.retraction(X)
        e = compose_functors(col.iota_b, h)

        def comp(y):
            if y.side == "A":
                return col.beta.at(y.obj)
            return K.identity(y)

        return NatTransform(e, identity_functor(K), comp, name="α")

    def c_structure(self, X) -> Functor:
        """Left-semi ``C``-structure ``c∘μ_C∘C(h): C(C⁺X) -> C⁺X``."""
        col = self._colimit(X)
        return compose_functors(col.iota_b, C.mult(X), C.lift(self.retraction(X)))

    def mult(self, X) -> Functor:
        hit = self._cache.get(("mult", id(X)))
        if hit is not None:
            return hit[1]
        K = self.apply(X)
        outer = self._colimit(K)
        cc = ColaxCocone(identity_functor(K), self.c_structure(X), self.counit(X))
        mu = mediate_cocone(outer, cc, check=False)
        mu.name = "μ+"
        self._cache[("mult", id(X))] = (X, mu)
        return mu

    def lift(self, G: Functor) -> Functor:
        src, tgt = self._colimit(G.source).carrier, self._colimit(G.target).carrier
        CG = C.lift(G)

        def obj(x):
            return Copy("A", G.obj(x.obj)) if x.side == "A" else Copy("B", CG.obj(x.obj))

        def mor(m):
            if isinstance(m, Mixed):
                return Mixed(CG.mor(m.v), G.obj(m.a))
            return Inj("A", G.mor(m.mor)) if m.side == "A" else Inj("B", CG.mor(m.mor))

        return Functor(src, tgt, obj, mor, name=f"C+({G.name})")


CPLUS = CPlusMonad()


def cplus_monad(base=None) -> CPlusMonad:
    return CPLUS


def cplus_algebra_from_lsa(lsa) -> Algebra:
    """The ``C⁺``-algebra induced by a left-semi ``C``-algebra ``(z, ε)``."""
    X = lsa.carrier
    col = CPLUS.colimit(X)
    cc = ColaxCocone(identity_functor(X), lsa.structure, lsa.counit)
    x = mediate_cocone(col, cc, check=False)
    return Algebra(CPLUS, X, x, name=f"C+ from {lsa.name}")


def lsa_from_cplus_algebra(alg: Algebra):
    """Recover ``(x∘ι_B, x·β)`` from a ``C⁺``-algebra."""
    from .semialg import LeftSemiAlgebra

    X = alg.carrier
    col = CPLUS.colimit(X)
    z = compose_functors(alg.structure, col.iota_b)
    eps = NatTransform(compose_functors(z, C.unit(X)), identity_functor(X),
                       lambda a: alg.structure.mor(col.beta.at(a)), name="ε")
    return LeftSemiAlgebra(C, X, z, eps, name=f"from {alg.name}")


def all_cocone_cases(categories, max_apex_objects: int = 6, max_objects: int = 3):
    """(F, D) pairs over a test set of categories."""
    from .fincat import enumerate_functors

    small = [c for c in categories if len(c.objects()) <= max_objects]
    apexes = [c for c in categories if len(c.objects()) <= max_apex_objects]
    for A, B in itertools.product(small, small):
        for F in enumerate_functors(A, B):
            for D in apexes:
                yield F, D


def universality_sweep(categories, max_apex_objects: int = 6, max_objects: int = 3,
                       two_cells: bool = True) -> CheckReport:
    """Mediate every cocone and every compatible 2-cell pair, checking uniqueness by search."""
    from .fincat import enumerate_functors

    rep = CheckReport(name="colax-universality")
    counts = dict(functors=0, cocones=0, two_cells=0)
    small = [c for c in categories if len(c.objects()) <= max_objects]
    apexes = [c for c in categories if len(c.objects()) <= max_apex_objects]
    for A, B in itertools.product(small, small):
        for F in enumerate_functors(A, B):
            counts["functors"] += 1
            col = build_colimit(F)
            for D in apexes:
                fs = list(enumerate_functors(A, D))
                gs = list(enumerate_functors(B, D))
                cocones = []
                for i, f in enumerate(fs):
                    for j, g in enumerate(gs):
                        for phi in enumerate_transforms(compose_functors(g, F), f):
                            cocones.append((i, j, ColaxCocone(f, g, phi)))
                mediators = []
                for _, _, cc in cocones:
                    counts["cocones"] += 1
                    r = mediate_cocone(col, cc)
                    rep.merge(check_mediator(col, cc, r))
                    found = find_mediators(col, cc)
                    rep.expect(len(found) == 1, "unique mediator", (F.name, D.name, len(found)))
                    rep.expect(all(_agree(col, r, other) for other in found), "search finds r", (F.name, D.name))
                    mediators.append(r)
                if not two_cells:
                    continue
                nat_f = {}
                nat_g = {}
                for (i, j, cc), r in zip(cocones, mediators):
                    for (i2, j2, cc2), r2 in zip(cocones, mediators):
                        if (i, i2) not in nat_f:
                            nat_f[(i, i2)] = list(enumerate_transforms(fs[i], fs[i2]))
                        if (j, j2) not in nat_g:
                            nat_g[(j, j2)] = list(enumerate_transforms(gs[j], gs[j2]))
                        rhos, sigmas = nat_f[(i, i2)], nat_g[(j, j2)]
                        for rho in rhos:
                            for sigma in sigmas:
                                if not compatible(cc, cc2, rho, sigma, F):
                                    continue
                                counts["two_cells"] += 1
                                tau = mediate_2cell(col, cc, cc2, rho, sigma, check=False)
                                rep.merge(check_2cell_mediator(col, tau, rho, sigma))
                                others = find_2cell_mediators(col, r, r2, rho, sigma)
                                rep.expect(len(others) == 1, "unique 2-cell mediator", (F.name, D.name))
    rep.meta.update(counts)
    return rep


def _agree(col: ColaxColimit, r: Functor, other: Functor) -> bool:
    K = col.carrier
    objs = K.objects()
    return all(r.mor(m) == other.mor(m) for x in objs for y in objs for m in K.hom(x, y))
