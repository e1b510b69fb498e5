"""The free symmetric strict monoidal monad ``S`` and the free strict
finite-products monad ``C``.

Objects of ``S A`` and ``C A`` are tuples of objects of ``A``.  A morphism
``⟨a_0..a_{n-1}⟩ -> ⟨b_0..b_{m-1}⟩`` is a :class:`SeqMorphism`: a reindexing
``φ: [m] -> [n]`` read from target positions to source positions, plus for
each target position ``j`` a base morphism ``a_{φ(j)} -> b_j``.  ``S`` only
admits bijective ``φ``; ``C`` admits every function.  Positions are 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .fincat import (
    DEFAULT_HOM_LIMIT,
    CategoryView,
    Functor,
    NatTransform,
    check_functors_equal,
    compose_functors,
    identity_functor,
    iter_morphisms,
    validate_functor,
)
from .report import CheckReport, LawViolation


@dataclass(frozen=True)
class SeqMorphism:
    src: tuple
    tgt: tuple
    reindex: tuple
    components: tuple

    def __repr__(self) -> str:
        return f"SeqMorphism({list(self.reindex)}, {list(self.components)}: {self.src} -> {self.tgt})"


class SequenceCategory(CategoryView):
    """``T A`` for a sequence monad ``T``, computed lazily over ``base``."""

    flavor = "C"

    def __init__(self, base: CategoryView, flavor: str = "C"):
        if flavor not in ("S", "C"):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.base = base
        self.flavor = flavor
        self.name = f"{flavor}({base.name})"
        self._homs: dict = {}

    # entry hooks, overridden by the tagged variant
    def entry_object(self, e):
        return e

    def unit_entry(self, a):
        return a

    def relabel(self, e, a):
        """Entry like ``e`` but carrying base object ``a``."""
        return a

    def merge_entry(self, outer, inner):
        """Entry of the flattened sequence for ``inner`` sitting in block ``outer``."""
        return inner

    def entry_choices(self, a) -> list:
        return [a]

    # --- category structure
    def is_object(self, x) -> bool:
        return isinstance(x, tuple) and all(self._is_entry(e) for e in x)

    def _is_entry(self, e) -> bool:
        return self.base.is_object(e)

    def reindexings(self, x, y) -> Iterator[tuple]:
        n, m = len(x), len(y)
        if self.flavor == "S":
            if n == m:
                # φ is read target -> source
                yield from itertools.permutations(range(n))
            return
        yield from itertools.product(range(n), repeat=m)

    def hom(self, x, y) -> list:
        key = (x, y)
        hit = self._homs.get(key)
        if hit is not None:
            return hit
        base = self.base
        out = []
        for phi in self.reindexings(x, y):
            choices = [base.hom(self.entry_object(x[phi[j]]), self.entry_object(y[j])) for j in range(len(y))]
            for comps in itertools.product(*choices):
                out.append(SeqMorphism(x, y, tuple(phi), comps))
        self._homs[key] = out
        return out

    def identity(self, x):
        return SeqMorphism(x, x, tuple(range(len(x))), tuple(self.base.identity(self.entry_object(e)) for e in x))

    def dom(self, m):
        return m.src

    def cod(self, m):
        return m.tgt

    def compose(self, g, f):
        if f.tgt != g.src:
            raise ValueError(f"{self.name}: cannot compose {f} then {g}")
        base = self.base
        phi = tuple(f.reindex[k] for k in g.reindex)
        comps = tuple(base.compose(g.components[j], f.components[k]) for j, k in enumerate(g.reindex))
        return SeqMorphism(f.src, g.tgt, phi, comps)

    def is_admissible(self, m) -> bool:
        n, k = len(m.src), len(m.tgt)
        if len(m.reindex) != k or any(not 0 <= i < n for i in m.reindex):
            return False
        if self.flavor == "S" and sorted(m.reindex) != list(range(n)):
            return False
        return True

    def check_morphism(self, m) -> bool:
        """Boundary and admissibility check of a hand-built morphism."""
        if not (self.is_object(m.src) and self.is_object(m.tgt) and self.is_admissible(m)):
            return False
        base = self.base
        for j, c in enumerate(m.components):
            a = self.entry_object(m.src[m.reindex[j]])
            b = self.entry_object(m.tgt[j])
            if (base.dom(c), base.cod(c)) != (a, b):
                return False
        return len(m.components) == len(m.tgt)

    # --- bounded enumeration
    def size(self, x) -> int:
        return max(1, sum(self.base.size(self.entry_object(e)) for e in x))

    def objects_up_to(self, bound: int) -> list:
        """Sequences of length ≤ bound whose size is ≤ bound.

        Size counts base entries recursively, with every empty sequence
        weighing one, so nested empties stay finite.
        """
        atoms = []
        for a in self.base.objects_up_to(bound):
            s = self.base.size(a)
            if s <= bound:
                for e in self.entry_choices(a):
                    atoms.append((e, s))
        out = [()]

        def grow(prefix, weight):
            if len(prefix) == bound:
                return
            for e, s in atoms:
                if weight + s <= bound:
                    seq = prefix + (e,)
                    out.append(seq)
                    grow(seq, weight + s)

        grow((), 0)
        return out

    def render_object(self, x):
        return [self.base.render_object(e) for e in x]

    def render_morphism(self, m):
        return {"reindex": list(m.reindex), "components": [self.base.render_morphism(c) for c in m.components]}


class SeqMonad:
    """A sequence 2-monad presented by its action, unit and multiplication."""

    def __init__(self, flavor: str):
        self.flavor = flavor
        self.name = flavor
        self._cats: dict = {}
        self._units: dict = {}
        self._mults: dict = {}

    def __repr__(self) -> str:
        return f"<SeqMonad {self.name}>"

    def make_category(self, base):
        return SequenceCategory(base, self.flavor)

    def apply(self, base: CategoryView) -> SequenceCategory:
        hit = self._cats.get(id(base))
        if hit is None:
            hit = (base, self.make_category(base))
            self._cats[id(base)] = hit
        return hit[1]

    def unit(self, base: CategoryView) -> Functor:
        hit = self._units.get(id(base))
        if hit is not None:
            return hit[1]
        T = self.apply(base)

        def obj(a):
            return (T.unit_entry(a),)

        def mor(m):
            return SeqMorphism(obj(base.dom(m)), obj(base.cod(m)), (0,), (m,))

        F = Functor(base, T, obj, mor, name=f"η{self.name}")
        self._units[id(base)] = (base, F)
        return F

    def mult(self, base: CategoryView) -> Functor:
        hit = self._mults.get(id(base))
        if hit is not None:
            return hit[1]
        T = self.apply(base)
        TT = self.apply(T)

        def obj(X):
            return tuple(TT.merge_entry(E, e) for E in X for e in TT.entry_object(E))

        def mor(F):
            offsets = []
            acc = 0
            for E in F.src:
                offsets.append(acc)
                acc += len(TT.entry_object(E))
            phi, comps = [], []
            for j, inner in enumerate(F.components):
                off = offsets[F.reindex[j]]
                phi.extend(off + k for k in inner.reindex)
                comps.extend(inner.components)
            return SeqMorphism(obj(F.src), obj(F.tgt), tuple(phi), tuple(comps))

        G = Functor(TT, T, obj, mor, name=f"μ{self.name}")
        self._mults[id(base)] = (base, G)
        return G

    def lift(self, F: Functor) -> Functor:
        """``T(F): T A -> T B``."""
        TA = self.apply(F.source)
        TB = self.apply(F.target)

        def obj(x):
            return tuple(TB.relabel(e, F.obj(TA.entry_object(e))) for e in x)

        def mor(m):
            return SeqMorphism(obj(m.src), obj(m.tgt), m.reindex, tuple(F.mor(c) for c in m.components))

        return Functor(TA, TB, obj, mor, name=f"{self.name}({F.name})")

    def lift_transform(self, t: NatTransform) -> NatTransform:
        TF, TG = self.lift(t.source), self.lift(t.target)
        TA = TF.source

        def comp(x):
            return SeqMorphism(TF.obj(x), TG.obj(x), tuple(range(len(x))),
                               tuple(t.at(TA.entry_object(e)) for e in x))

        return NatTransform(TF, TG, comp, name=f"{self.name}({t.name})")


S = SeqMonad("S")
C = SeqMonad("C")


def free_category(base: CategoryView, flavor: str) -> SequenceCategory:
    return monad_for(flavor).apply(base)


def monad_for(flavor: str):
    if flavor == "S":
        return S
    if flavor == "C":
        return C
    if flavor == "Q":
        from .lnlmonad import Q
        return Q
    if flavor in ("Cplus", "C+"):
        from .colax import CPLUS
        return CPLUS
    raise ValueError(f"unknown monad {flavor!r}")


def unit_component(flavor: str, base: CategoryView, a):
    return monad_for(flavor).unit(base).obj(a)


def mult_component(flavor: str, base: CategoryView, x):
    """Flatten an object or morphism of ``T(T base)``."""
    mu = monad_for(flavor).mult(base)
    return mu.mor(x) if isinstance(x, SeqMorphism) else mu.obj(x)


# --------------------------------------------------------------------------
# law sweeps


def check_monad_laws(monad, base: CategoryView, max_len: int, functors=(), limit: int | None = DEFAULT_HOM_LIMIT,
                     composition_bound: int | None = None) -> CheckReport:
    """Unit, associativity and 2-naturality of a sequence monad on a sweep.

    ``functors`` are extra functors ``base -> B`` for the naturality checks.
    """
    if isinstance(monad, str):
        monad = monad_for(monad)
    rep = CheckReport(name=f"monad-laws({monad.name}, {base.name}, max_len={max_len})")
    rep.meta.update(monad=monad.name, base=base.name, max_len=max_len, hom_limit=limit)
    T1 = monad.apply(base)
    T2 = monad.apply(T1)
    T3 = monad.apply(T2)
    base_objs = base.objects_up_to(max_len)
    objs1 = T1.objects_up_to(max_len)
    objs2 = T2.objects_up_to(max_len)
    objs3 = T3.objects_up_to(max_len)
    rep.meta.update(objects=[len(objs1), len(objs2), len(objs3)])

    eta, mu = monad.unit(base), monad.mult(base)
    eta_T, mu_T = monad.unit(T1), monad.mult(T1)
    ident = identity_functor(T1)

    rep.merge(validate_functor(eta, base_objs, limit=limit), "eta:")
    cb = composition_bound if composition_bound is not None else max(0, max_len - 1)
    rep.merge(validate_functor(mu, objs2, compositions=False, limit=limit), "mu:")
    rep.merge(validate_functor(mu, T2.objects_up_to(cb), limit=limit), "mu:")

    check_functors_equal(compose_functors(mu, eta_T), ident, objs1, rep, "left-unit", limit)
    check_functors_equal(compose_functors(mu, monad.lift(eta)), ident, objs1, rep, "right-unit", limit)
    check_functors_equal(compose_functors(mu, mu_T), compose_functors(mu, monad.lift(mu)), objs3, rep,
                         "associativity", limit)

    for F in functors:
        TF = monad.lift(F)
        check_functors_equal(compose_functors(TF, eta), compose_functors(monad.unit(F.target), F),
                             base_objs, rep, f"eta-naturality[{F.name}]", limit)
        check_functors_equal(compose_functors(monad.mult(F.target), monad.lift(TF)), compose_functors(TF, mu),
                             objs2, rep, f"mu-naturality[{F.name}]", limit)
    return rep


# --------------------------------------------------------------------------
# monad maps and algebras


class MonadMap:
    """A family of functors ``λ_X: T' X -> T X`` natural in ``X``.

    ``unit_cell(X)`` gives the 2-cell ``λ_X ∘ η'_X ⇒ η_X`` of a left-semi
    monad map; ``None`` means the strict equality.
    """

    def __init__(self, source, target, component: Callable, unit_cell: Callable | None = None, name: str = "λ"):
        self.source = source
        self.target = target
        self._component = component
        self._unit_cell = unit_cell
        self.name = name
        self._cache: dict = {}

    def component(self, X) -> Functor:
        hit = self._cache.get(id(X))
        if hit is None:
            hit = (X, self._component(X))
            self._cache[id(X)] = hit
        return hit[1]

    def unit_cell(self, X) -> NatTransform:
        from .fincat import identity_transform
        if self._unit_cell is None:
            return identity_transform(self.target.unit(X))
        return self._unit_cell(X)

    def double(self, X) -> Functor:
        """``λλ = λ_{T X} ∘ T'(λ_X): T'T' X -> T T X``."""
        lam = self.component(X)
        return compose_functors(self.component(lam.target), self.source.lift(lam))

    def double_alt(self, X) -> Functor:
        """``T(λ_X) ∘ λ_{T' X}``, equal to :meth:`double` by naturality."""
        lam = self.component(X)
        return compose_functors(self.target.lift(lam), self.component(self.source.apply(X)))

    def __repr__(self) -> str:
        return f"<MonadMap {self.name}: {self.source.name} -> {self.target.name}>"


def _inclusion(X):
    SX, CX = S.apply(X), C.apply(X)
    return Functor(SX, CX, lambda x: x, lambda m: m, name="λ")


LAMBDA = MonadMap(S, C, _inclusion, name="λ")


def identity_monad_map(T) -> MonadMap:
    return MonadMap(T, T, lambda X: identity_functor(T.apply(X)), name=f"id[{T.name}]")


def lambda_component(base: CategoryView, x):
    lam = LAMBDA.component(base)
    return lam.mor(x) if isinstance(x, SeqMorphism) else lam.obj(x)


def check_monad_map(m: MonadMap, base: CategoryView, max_len: int, limit: int | None = DEFAULT_HOM_LIMIT,
                    strict_unit: bool = True) -> CheckReport:
    """Strict monad-map equations of ``m`` at ``base`` on a sweep."""
    rep = CheckReport(name=f"monad-map({m.name}, {base.name}, max_len={max_len})")
    lam = m.component(base)
    T1 = m.source.apply(base)
    T2 = m.source.apply(T1)
    objs1 = T1.objects_up_to(max_len)
    objs2 = T2.objects_up_to(max_len)
    rep.merge(validate_functor(lam, objs1, limit=limit), "functor:")
    if strict_unit:
        check_functors_equal(compose_functors(lam, m.source.unit(base)), m.target.unit(base),
                             base.objects_up_to(max_len), rep, "unit", limit)
    lhs = compose_functors(lam, m.source.mult(base))
    check_functors_equal(lhs, compose_functors(m.target.mult(base), m.double(base)), objs2, rep, "mult", limit)
    check_functors_equal(m.double(base), m.double_alt(base), objs2, rep, "naturality", limit)
    return rep


@dataclass
class Algebra:
    """A strict algebra ``structure: T X -> X``."""

    monad: object
    carrier: CategoryView
    structure: Functor
    name: str = "alg"


def check_algebra(alg: Algebra, max_len: int, limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    T = alg.monad
    X = alg.carrier
    rep = CheckReport(name=f"algebra({alg.name}, {T.name})")
    TX = T.apply(X)
    TTX = T.apply(TX)
    x = alg.structure
    objs1 = TX.objects_up_to(max_len)
    objs2 = TTX.objects_up_to(max_len)
    rep.merge(validate_functor(x, objs1, compositions=False, limit=limit), "functor:")
    if rep.errors:
        return rep
    check_functors_equal(compose_functors(x, T.unit(X)), identity_functor(X), X.objects_up_to(max_len), rep,
                         "unit", limit)
    check_functors_equal(compose_functors(x, T.mult(X)), compose_functors(x, T.lift(x)), objs2, rep,
                         "associativity", limit)
    return rep


def restrict_scalars(lam: MonadMap, alg: Algebra, max_len: int = 2) -> Algebra:
    """Precompose a ``T``-algebra with ``λ: T' -> T`` to get a ``T'``-algebra."""
    if alg.monad is not lam.target:
        raise ValueError(f"algebra is over {alg.monad.name}, map lands in {lam.target.name}")
    pre = check_algebra(alg, max_len)
    if not pre.ok:
        raise LawViolation(f"not a {alg.monad.name}-algebra: {pre.findings[0]}", pre)
    comp = compose_functors(alg.structure, lam.component(alg.carrier))
    return Algebra(lam.source, alg.carrier, comp, name=f"{lam.name}*{alg.name}")


def free_algebra(T, base: CategoryView) -> Algebra:
    return Algebra(T, T.apply(base), T.mult(base), name=f"free {T.name}({base.name})")


def hom_count(flavor: str, base: CategoryView, src, tgt) -> int:
    return len(monad_for(flavor).apply(base).hom(tuple(src), tuple(tgt)))


def all_morphisms(cat: CategoryView, objects, limit: int | None = None) -> list:
    return list(iter_morphisms(cat, objects, limit))
