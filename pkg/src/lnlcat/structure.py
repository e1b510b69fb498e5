"""Structure objects and the evaluator of the matching ``Q``-algebra.

A :class:`StructureObject` packages a strict symmetric monoidal structure
(presenting ``w: S X -> X``), a deflation ``f`` with counit ``ε: f ⇒ id``,
and diagonal/deletion witnesses ``δ_x: f x -> f(x⊗x)``, ``t_x: f x -> f I``
from which ``z: C X -> X`` is derived.  Everything is given as callables so
that the same code runs on finite carriers (from tables) and on the bounded
free instances.

:func:`algebra_from_structure` builds the evaluator ``x: Q X -> X``;
:func:`structure_from_algebra` reads a structure object back off any
``Q``-algebra.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable

from .fincat import (
    DEFAULT_HOM_LIMIT,
    CategoryView,
    FinCat,
    Functor,
    NatTransform,
    check_functors_equal,
    compose_functors,
    identity_functor,
    iter_morphisms,
    sweep_objects,
    validate_category,
    validate_functor,
    validate_nat_transform,
)
from .lnlmonad import LIN, NONLIN, Q, build_structure_maps, tagged, untag
from .report import CheckReport, LawViolation
from .semialg import LeftSemiAlgebra, check_left_semi_algebra
from .seqmonads import C, LAMBDA, S, Algebra, SeqMorphism, check_algebra


def thin_arrow(cat: CategoryView, a, b):
    """The unique morphism ``a -> b`` of a thin category, or ``None``."""
    hs = cat.hom(a, b)
    return hs[0] if len(hs) == 1 else None


def _thin_mor(cat: CategoryView, a, b):
    m = thin_arrow(cat, a, b)
    if m is None:
        raise ValueError(f"{cat.name}: no morphism {a} -> {b}")
    return m


@dataclass
class StructureObject:
    carrier: CategoryView
    tensor_obj: Callable   # (x, y) -> x⊗y
    tensor_mor: Callable   # (m, n) -> m⊗n
    unit: object
    deflate_obj: Callable  # f on objects
    deflate_mor: Callable  # f on morphisms
    counit: Callable       # x -> ε_x: f x -> x
    diagonal: Callable     # x -> δ_x: f x -> f(x⊗x)
    deletion: Callable     # x -> t_x: f x -> f I
    symmetry: Callable     # (x, y) -> x⊗y -> y⊗x
    name: str = "structure"
    tables: dict = field(default_factory=dict, repr=False)

    # ---- derived pieces
    def tensor_all(self, objs) -> object:
        objs = list(objs)
        if not objs:
            return self.unit
        acc = objs[0]
        for x in objs[1:]:
            acc = self.tensor_obj(acc, x)
        return acc

    def tensor_all_mor(self, mors) -> object:
        mors = list(mors)
        if not mors:
            return self.carrier.identity(self.unit)
        acc = mors[0]
        for m in mors[1:]:
            acc = self.tensor_mor(acc, m)
        return acc

    def permute(self, values, phi) -> object:
        """``⊗values -> ⊗(values[φ j])`` built from adjacent symmetries."""
        X = self.carrier
        cur = list(values)
        labels = list(range(len(values)))
        out = X.identity(self.tensor_all(cur))
        for j, want in enumerate(phi):
            k = labels.index(want, j)
            while k > j:
                i = k - 1
                step = self.tensor_all_mor([X.identity(v) for v in cur[:i]]
                                           + [self.symmetry(cur[i], cur[i + 1])]
                                           + [X.identity(v) for v in cur[i + 2:]])
                out = X.compose(step, out)
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                labels[i], labels[i + 1] = labels[i + 1], labels[i]
                k = i
        return out

    def copies(self, x, k: int):
        """``d_k: f x -> f(x^{⊗k})`` from the deletion and diagonal witnesses."""
        X = self.carrier
        if k == 0:
            return self.deletion(x)
        if k == 1:
            return X.identity(self.deflate_obj(x))
        rest = self.copies(x, k - 1)
        return X.compose(self.tensor_mor(X.identity(self.deflate_obj(x)), rest), self.diagonal(x))

    def deflation(self) -> Functor:
        return Functor(self.carrier, self.carrier, self.deflate_obj, self.deflate_mor, name="f")

    def counit_transform(self) -> NatTransform:
        return NatTransform(self.deflation(), identity_functor(self.carrier), self.counit, name="ε")

    def monoidal_structure(self) -> Functor:
        """``w: S X -> X``."""
        SX = S.apply(self.carrier)

        def mor(m):
            X = self.carrier
            return X.compose(self.tensor_all_mor(m.components), self.permute(m.src, m.reindex))

        return Functor(SX, self.carrier, self.tensor_all, mor, name="w")

    def cartesian_structure(self) -> Functor:
        """``z: C X -> X``: ``f(⊗g) ∘ f(w(perm)) ∘ (⊗ d_k)``."""
        CX = C.apply(self.carrier)
        w = self.monoidal_structure()

        def obj(x):
            return self.deflate_obj(self.tensor_all(x))

        def mor(m):
            X = self.carrier
            n = len(m.src)
            counts = [0] * n
            for i in m.reindex:
                counts[i] += 1
            grouped = [i for i in range(n) for _ in range(counts[i])]
            start = list(itertools.accumulate([0] + counts))
            seen = [0] * n
            perm = []
            for i in m.reindex:
                perm.append(start[i] + seen[i])
                seen[i] += 1
            gvals = tuple(m.src[i] for i in grouped)
            spread = self.tensor_all_mor([self.copies(m.src[i], counts[i]) for i in range(n)])
            shuffle = self.deflate_mor(w.mor(SeqMorphism(gvals, tuple(gvals[p] for p in perm), tuple(perm),
                                                         tuple(X.identity(v) for v in (gvals[p] for p in perm)))))
            pointwise = self.deflate_mor(self.tensor_all_mor(m.components))
            return X.compose(pointwise, X.compose(shuffle, spread))

        return Functor(CX, self.carrier, obj, mor, name="z")

    def left_semi(self) -> LeftSemiAlgebra:
        z = self.cartesian_structure()
        f = compose_functors(z, C.unit(self.carrier))
        return LeftSemiAlgebra(C, self.carrier, z,
                               NatTransform(f, identity_functor(self.carrier), self.counit, name="ε"),
                               name=f"{self.name} (C)")

    def strict_monoidal(self) -> Algebra:
        return Algebra(S, self.carrier, self.monoidal_structure(), name=f"{self.name} (S)")

    # ---- serialization (finite carriers)
    def to_tables(self) -> dict:
        X = self.carrier
        objs = X.objects()
        mors = [m for x in objs for y in objs for m in X.hom(x, y)]
        return {
            "tensor": {
                "objects": [[x, y, self.tensor_obj(x, y)] for x in objs for y in objs],
                "morphisms": [[m, n, self.tensor_mor(m, n)] for m in mors for n in mors],
            },
            "unit": self.unit,
            "f": {"objects": {x: self.deflate_obj(x) for x in objs},
                  "morphisms": {m: self.deflate_mor(m) for m in mors}},
            "epsilon": [[x, self.counit(x)] for x in objs],
            "diagonal": [[x, self.diagonal(x)] for x in objs],
            "deletion": [[x, self.deletion(x)] for x in objs],
            "symmetry": [[x, y, self.symmetry(x, y)] for x in objs for y in objs],
        }

    def to_json(self) -> dict:
        doc = {"name": self.name, "carrier": self.carrier.to_json()}
        doc.update(self.to_tables())
        return doc


def _pairs(entries) -> dict:
    if isinstance(entries, dict):
        return {str(k): v for k, v in entries.items()}
    return {str(k): v for k, v in entries}


def from_tables(carrier: FinCat, tensor: dict, unit, f: dict, epsilon=None, diagonal=None, deletion=None,
                symmetry=None, tensor_mor: dict | None = None, f_mor: dict | None = None,
                name: str = "structure") -> StructureObject:
    """Structure object from finite tables.

    Morphism tables, counit, witnesses and symmetry may be omitted on a thin
    carrier, where each is the unique arrow with the right boundary.
    """
    X = carrier
    tensor = {(str(a), str(b)): str(c) for (a, b), c in tensor.items()}
    f = {str(k): str(v) for k, v in f.items()}

    def tobj(x, y):
        return tensor[(x, y)]

    def fobj(x):
        return f[x]

    def missing(label):
        def fail(*args):
            raise KeyError(f"{label} table has no entry for {args!r}")
        return fail

    thin = all(len(X.hom(a, b)) <= 1 for a in X.objects() for b in X.objects())

    def thin_or(table, label, derive):
        if table is not None:
            tab = dict(table)
            return lambda *k: tab[k if len(k) > 1 else k[0]]
        return derive if thin else missing(label)

    tmor = thin_or({(a, b): c for (a, b), c in tensor_mor.items()} if tensor_mor else None, "tensor",
                   lambda m, n: _thin_mor(X, tobj(X.dom(m), X.dom(n)), tobj(X.cod(m), X.cod(n))))
    fmor = thin_or(f_mor, "f", lambda m: _thin_mor(X, fobj(X.dom(m)), fobj(X.cod(m))))
    eps = thin_or(_pairs(epsilon) if epsilon is not None else None, "epsilon",
                  lambda x: _thin_mor(X, fobj(x), x))
    delta = thin_or(_pairs(diagonal) if diagonal is not None else None, "diagonal",
                    lambda x: _thin_mor(X, fobj(x), fobj(tobj(x, x))))
    dele = thin_or(_pairs(deletion) if deletion is not None else None, "deletion",
                   lambda x: _thin_mor(X, fobj(x), fobj(str(unit))))
    sym = thin_or(symmetry, "symmetry", lambda x, y: _thin_mor(X, tobj(x, y), tobj(y, x)))
    return StructureObject(X, tobj, tmor, str(unit), fobj, fmor, eps, delta, dele, sym, name=name,
                           tables={"tensor": tensor, "f": f})


def thin_structure(carrier: FinCat, tensor: Callable, unit, deflate: Callable, name: str = "structure"):
    """Structure object on a thin category from its object-level data."""
    objs = carrier.objects()
    return from_tables(carrier, {(x, y): tensor(x, y) for x in objs for y in objs}, unit,
                       {x: deflate(x) for x in objs}, name=name)


def structure_from_json(doc: dict) -> StructureObject:
    carrier = FinCat.from_json(doc["carrier"], name=doc["carrier"].get("name", "carrier"))
    t = doc["tensor"]
    tensor = {(a, b): c for a, b, c in t["objects"]}
    tensor_mor = {(a, b): c for a, b, c in t["morphisms"]} if t.get("morphisms") else None
    f = doc["f"]
    fo = f["objects"] if "objects" in f else f
    fm = f.get("morphisms") if "objects" in f else None
    sym = doc.get("symmetry")
    sym = {(a, b): c for a, b, c in sym} if sym else None
    return from_tables(carrier, tensor, doc["unit"], fo, doc.get("epsilon"), doc.get("diagonal"),
                       doc.get("deletion"), sym, tensor_mor, fm, name=doc.get("name", "structure"))


def load_structure(path: str) -> StructureObject:
    with open(path, encoding="utf-8") as fh:
        return structure_from_json(json.load(fh))


# --------------------------------------------------------------------------
# checking


def _objects(s: StructureObject, bound: int) -> list:
    return sweep_objects(s.carrier, None, bound)


def _morphisms(X: CategoryView, objs, limit=DEFAULT_HOM_LIMIT) -> list:
    return list(iter_morphisms(X, objs, limit))


def check_tables(s: StructureObject, bound: int = 2) -> CheckReport:
    """Totality and boundaries of the given data (structural findings)."""
    X = s.carrier
    rep = CheckReport(name=f"tables({s.name})")
    objs = _objects(s, bound)
    mors = _morphisms(X, objs)

    def guard(law, thunk, want=None, witness=None):
        try:
            got = thunk()
        except Exception as exc:
            rep.error(law, f"{witness!r}: {exc}")
            return None
        if want is not None:
            try:
                bd = (X.dom(got), X.cod(got))
            except Exception:
                rep.error(law, f"{witness!r}: {got!r} is not a morphism")
                return None
            if bd != want:
                rep.error(law + "-boundary", (witness, got))
        return got

    if not X.is_object(s.unit):
        rep.error("unit-object", s.unit)
    tens = {}
    for x in objs:
        for y in objs:
            v = guard("tensor-object", lambda: s.tensor_obj(x, y), witness=(x, y))
            if v is not None and not X.is_object(v):
                rep.error("tensor-object", ((x, y), v))
            tens[(x, y)] = v
        fx = guard("f-object", lambda: s.deflate_obj(x), witness=x)
        if fx is not None and not X.is_object(fx):
            rep.error("f-object", (x, fx))
    if rep.errors:
        return rep
    fo = s.deflate_obj
    for m in mors:
        a, b = X.dom(m), X.cod(m)
        guard("f-morphism", lambda: s.deflate_mor(m), (fo(a), fo(b)), m)
        for n in mors:
            c, d = X.dom(n), X.cod(n)
            if (a, c) in tens and (b, d) in tens:
                guard("tensor-morphism", lambda: s.tensor_mor(m, n), (tens[(a, c)], tens[(b, d)]), (m, n))
    for x in objs:
        guard("epsilon", lambda: s.counit(x), (fo(x), x), x)
        if (x, x) in tens:
            guard("diagonal", lambda: s.diagonal(x), (fo(x), fo(tens[(x, x)])), x)
        guard("deletion", lambda: s.deletion(x), (fo(x), fo(s.unit)), x)
        for y in objs:
            if (x, y) in tens and (y, x) in tens:
                guard("symmetry", lambda: s.symmetry(x, y), (tens[(x, y)], tens[(y, x)]), (x, y))
    return rep


def check_structure_object(s: StructureObject, bound: int = 2, max_len: int = 2,
                           limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    """Every defining clause of a structure object, clause by clause.

    On infinite carriers ``bound`` limits the swept objects; ``max_len``
    bounds the sequence sweeps for ``w`` and ``z``.
    """
    X = s.carrier
    rep = CheckReport(name=f"structure({s.name})")
    rep.meta.update(bound=bound, max_len=max_len)
    if isinstance(X, FinCat):
        rep.merge(validate_category(X), "carrier:")
        if rep.errors:
            return rep
    rep.merge(check_tables(s, bound))
    if rep.errors:
        return rep
    objs = _objects(s, bound)
    mors = _morphisms(X, objs, limit)
    ten, tm, I = s.tensor_obj, s.tensor_mor, s.unit
    fo, fm = s.deflate_obj, s.deflate_mor

    # strict monoidal structure
    for x in objs:
        rep.expect(ten(I, x) == x and ten(x, I) == x, "unit-law", x)
        for y in objs:
            for z in objs:
                rep.expect(ten(ten(x, y), z) == ten(x, ten(y, z)), "associativity", (x, y, z))
    for m in mors:
        idI = X.identity(I)
        rep.expect(tm(idI, m) == m and tm(m, idI) == m, "unit-law-morphisms", m)
    for x in objs:
        for y in objs:
            rep.expect(tm(X.identity(x), X.identity(y)) == X.identity(ten(x, y)), "tensor-identity", (x, y))
            rep.expect(X.compose(s.symmetry(y, x), s.symmetry(x, y)) == X.identity(ten(x, y)),
                       "symmetry-involutive", (x, y))
    pairs = [(f, g) for f in mors for g in mors if X.cod(f) == X.dom(g)]
    for f1, g1 in pairs:
        for f2, g2 in pairs:
            rep.expect(tm(X.compose(g1, f1), X.compose(g2, f2)) == X.compose(tm(g1, g2), tm(f1, f2)),
                       "tensor-interchange", (f1, g1, f2, g2))
    for m in mors:
        for n in mors:
            lhs = X.compose(tm(n, m), s.symmetry(X.dom(m), X.dom(n)))
            rhs = X.compose(s.symmetry(X.cod(m), X.cod(n)), tm(m, n))
            rep.expect(lhs == rhs, "symmetry-natural", (m, n))
    if not rep.ok:
        return rep
    rep.merge(check_algebra(s.strict_monoidal(), max_len, limit), "w:")

    # the deflation
    f = s.deflation()
    rep.merge(validate_functor(f, objs, limit=limit), "f:")
    if rep.errors:
        return rep
    rep.expect(fo(I) == I, "f(I)=I", I)
    for x in objs:
        rep.expect(fo(fo(x)) == fo(x), "f=f²", x)
        for y in objs:
            rep.expect(fo(ten(x, y)) == ten(fo(x), fo(y)), "f-monoidal", (x, y))
            rep.expect(fm(s.symmetry(x, y)) == s.symmetry(fo(x), fo(y)), "f-symmetric", (x, y))
            rep.expect(s.counit(ten(x, y)) == tm(s.counit(x), s.counit(y)), "ε-monoidal", (x, y))
        rep.expect(fm(s.counit(x)) == X.identity(fo(x)), "f·ε=id", x)
        rep.expect(s.counit(fo(x)) == X.identity(fo(x)), "ε·f=id", x)
    rep.expect(s.counit(I) == X.identity(I), "ε_I=id", I)
    for m in mors:
        rep.expect(fm(fm(m)) == fm(m), "f=f²", m)
        for n in mors:
            rep.expect(fm(tm(m, n)) == tm(fm(m), fm(n)), "f-monoidal", (m, n))
    rep.merge(validate_nat_transform(s.counit_transform(), objs, limit=limit), "ε:")
    if not rep.ok:
        return rep

    # the derived cartesian structure
    lsa = s.left_semi()
    z = lsa.structure
    rep.merge(check_left_semi_algebra(lsa, max_len, limit), "z:")
    SX, CX = S.apply(X), C.apply(X)
    w = s.monoidal_structure()
    check_functors_equal(compose_functors(f, w), compose_functors(z, LAMBDA.component(X)),
                         SX.objects_up_to(max_len), rep, "e∘w=z∘λ", limit)
    SCX = S.apply(CX)
    concat = compose_functors(C.mult(X), LAMBDA.component(CX))
    check_functors_equal(compose_functors(z, concat), compose_functors(w, S.lift(z)),
                         SCX.objects_up_to(max_len), rep, "z map of S-algebras", limit)
    rep.merge(check_fixpoint_products(s, bound), "")
    return rep


def projections(s: StructureObject, x, y):
    """``z``-images of the two product projections ``⟨x, y⟩ -> ⟨x⟩, ⟨y⟩``."""
    X = s.carrier
    z = s.cartesian_structure()
    src = (x, y)
    p1 = z.mor(SeqMorphism(src, (x,), (0,), (X.identity(x),)))
    p2 = z.mor(SeqMorphism(src, (y,), (1,), (X.identity(y),)))
    return p1, p2


def check_fixpoint_products(s: StructureObject, bound: int = 2) -> CheckReport:
    """On the ``f``-fixed full subcategory, ``x⊗y`` is a product and ``I`` terminal."""
    X = s.carrier
    rep = CheckReport(name="fixpoint-products")
    objs = _objects(s, bound)
    fixed = [x for x in objs if s.deflate_obj(x) == x]
    for c in fixed:
        rep.expect(len(X.hom(c, s.unit)) == 1, "I terminal among fixpoints", c)
    for x in fixed:
        for y in fixed:
            xy = s.tensor_obj(x, y)
            rep.expect(s.deflate_obj(xy) == xy, "fixpoints closed under ⊗", (x, y))
            p1, p2 = projections(s, x, y)
            for c in fixed:
                for a in X.hom(c, x):
                    for b in X.hom(c, y):
                        pairs = [u for u in X.hom(c, xy) if X.compose(p1, u) == a and X.compose(p2, u) == b]
                        rep.expect(len(pairs) == 1, "product", (c, a, b))
    return rep


# --------------------------------------------------------------------------
# the evaluator Q X -> X


@dataclass
class QAlgebra:
    carrier: CategoryView
    structure: Functor  # x: Q X -> X
    name: str = "Q-algebra"

    def as_algebra(self) -> Algebra:
        return Algebra(Q, self.carrier, self.structure, name=self.name)

    def eval(self, thing):
        return self.structure.mor(thing) if isinstance(thing, SeqMorphism) else self.structure.obj(thing)


def check_q_algebra(q: QAlgebra, max_len: int = 2, limit: int | None = DEFAULT_HOM_LIMIT,
                    compositions: int = 1) -> CheckReport:
    rep = check_algebra(q.as_algebra(), max_len, limit)
    QX = Q.apply(q.carrier)
    rep.merge(validate_functor(q.structure, QX.objects_up_to(compositions), limit=limit), "functor:")
    return rep


def evaluator(s: StructureObject) -> Functor:
    X = s.carrier
    QX = Q.apply(X)
    z = s.cartesian_structure()

    def value(entry):
        a, tag = entry
        return a if tag is LIN else s.deflate_obj(a)

    def obj(x):
        return s.tensor_all(value(e) for e in x)

    def pointwise(src_tag, tgt_tag, a, c):
        if src_tag is LIN:
            return c
        if tgt_tag is NONLIN:
            return s.deflate_mor(c)
        return X.compose(c, s.counit(a))

    def mor(m):
        src, tgt, phi = m.src, m.tgt, m.reindex
        lin_src = [i for i, (_, t) in enumerate(src) if t is LIN]
        non_src = [i for i, (_, t) in enumerate(src) if t is NONLIN]
        mid_tags = [src[i][1] for i in phi]
        mid = tuple((src[i][0], t) for i, t in zip(phi, mid_tags))
        # (1) gather: linear sources first, then the rest, keeping order
        src_vals = [value(e) for e in src]
        order = lin_src + non_src
        gather = s.permute(src_vals, order)
        # (2) the non-linear block is a C-image evaluated by z
        non_pos = {i: k for k, i in enumerate(non_src)}
        lin_mid = sorted((j for j, t in enumerate(mid_tags) if t is LIN), key=lambda j: phi[j])
        non_mid = [j for j, t in enumerate(mid_tags) if t is NONLIN]
        non_objs = tuple(src[i][0] for i in non_src)
        psi = tuple(non_pos[phi[j]] for j in non_mid)
        zpart = z.mor(SeqMorphism(non_objs, tuple(non_objs[k] for k in psi), psi,
                                  tuple(X.identity(non_objs[k]) for k in psi)))
        lin_vals = [src[i][0] for i in lin_src]
        if lin_vals:
            block = s.tensor_mor(X.identity(s.tensor_all(lin_vals)), zpart) if non_src or non_mid else \
                X.identity(s.tensor_all(lin_vals))
        else:
            block = zpart
        # (3) scatter the blocks to their target positions
        arranged = lin_mid + non_mid
        arranged_vals = [value(mid[j]) for j in arranged]
        inverse = [arranged.index(j) for j in range(len(mid))]
        scatter = s.permute(arranged_vals, inverse)
        reindex_part = X.compose(scatter, X.compose(block, gather))
        # (4) pointwise components with retagging
        comps = [pointwise(mt, tt, a, c) for (a, mt), (_, tt), c in zip(mid, tgt, m.components)]
        return X.compose(s.tensor_all_mor(comps), reindex_part)

    return Functor(QX, X, obj, mor, name="x")


def algebra_from_structure(s: StructureObject) -> QAlgebra:
    return QAlgebra(s.carrier, evaluator(s), name=f"Q-algebra of {s.name}")


def structure_from_algebra(q: QAlgebra, name: str | None = None) -> StructureObject:
    X = q.carrier
    x = q.structure

    def L(*objs):
        return tagged(objs, LIN)

    def tensor_mor(m, n):
        return x.mor(SeqMorphism(L(X.dom(m), X.dom(n)), L(X.cod(m), X.cod(n)), (0, 1), (m, n)))

    def fmor(m):
        return x.mor(SeqMorphism(((X.dom(m), NONLIN),), ((X.cod(m), NONLIN),), (0,), (m,)))

    def counit(p):
        return x.mor(SeqMorphism(((p, NONLIN),), ((p, LIN),), (0,), (X.identity(p),)))

    def diagonal(p):
        return x.mor(SeqMorphism(((p, NONLIN),), ((p, NONLIN), (p, NONLIN)), (0, 0),
                                 (X.identity(p), X.identity(p))))

    def deletion(p):
        return x.mor(SeqMorphism(((p, NONLIN),), (), (), ()))

    def symmetry(a, b):
        return x.mor(SeqMorphism(L(a, b), L(b, a), (1, 0), (X.identity(b), X.identity(a))))

    return StructureObject(
        X,
        lambda a, b: x.obj(L(a, b)),
        tensor_mor,
        x.obj(()),
        lambda p: x.obj(((p, NONLIN),)),
        fmor, counit, diagonal, deletion, symmetry,
        name=name or f"structure of {q.name}",
    )


def free_q_algebra(base: CategoryView) -> QAlgebra:
    return QAlgebra(Q.apply(base), Q.mult(base), name=f"free Q({base.name})")


# --------------------------------------------------------------------------
# mediating equations, roundtrips, uniqueness, naturality


def check_mediating_equations(s: StructureObject, q: QAlgebra, max_len: int = 2,
                              limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    """``x∘κ = w``, ``x∘c = z`` and ``x·β = ε·w`` on the sweep."""
    X = s.carrier
    rep = CheckReport(name="mediating-equations")
    maps = build_structure_maps(X)
    SX, CX = S.apply(X), C.apply(X)
    s_objs, c_objs = SX.objects_up_to(max_len), CX.objects_up_to(max_len)
    w = s.monoidal_structure()
    check_functors_equal(compose_functors(q.structure, maps.kappa), w, s_objs, rep, "x∘κ=w", limit)
    check_functors_equal(compose_functors(q.structure, maps.ccol), s.cartesian_structure(), c_objs, rep,
                         "x∘c=z", limit)
    for t in s_objs:
        rep.expect(q.structure.mor(maps.beta.at(t)) == s.counit(w.obj(t)), "x·β=ε·w", ("at", t))
    return rep


def structures_equal(a: StructureObject, b: StructureObject, bound: int = 2) -> CheckReport:
    """Componentwise equality of two structure objects on the same carrier."""
    X = a.carrier
    rep = CheckReport(name="structure-equality")
    objs = _objects(a, bound)
    mors = _morphisms(X, objs)
    rep.expect(a.unit == b.unit, "unit", a.unit)
    for x in objs:
        for label, fa, fb in (("f", a.deflate_obj, b.deflate_obj), ("ε", a.counit, b.counit),
                              ("δ", a.diagonal, b.diagonal), ("t", a.deletion, b.deletion)):
            rep.expect(fa(x) == fb(x), label, x)
        for y in objs:
            rep.expect(a.tensor_obj(x, y) == b.tensor_obj(x, y), "⊗", (x, y))
            rep.expect(a.symmetry(x, y) == b.symmetry(x, y), "symmetry", (x, y))
    for m in mors:
        rep.expect(a.deflate_mor(m) == b.deflate_mor(m), "f", m)
        for n in mors:
            rep.expect(a.tensor_mor(m, n) == b.tensor_mor(m, n), "⊗", (m, n))
    return rep


def roundtrip_structure(s: StructureObject, bound: int = 2) -> CheckReport:
    """structure → algebra → structure returns the input data."""
    back = structure_from_algebra(algebra_from_structure(s))
    rep = structures_equal(s, back, bound)
    rep.name = f"roundtrip({s.name})"
    return rep


def roundtrip_algebra(q: QAlgebra, max_len: int = 3, bound: int = 2,
                      limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    """algebra → structure → algebra agrees with the input evaluator."""
    again = algebra_from_structure(structure_from_algebra(q))
    QX = Q.apply(q.carrier)
    rep = CheckReport(name=f"roundtrip({q.name})")
    objs = QX.objects_up_to(max_len)
    rep.meta.update(objects=len(objs), max_len=max_len)
    check_functors_equal(q.structure, again.structure, objs, rep, "evaluator agreement", limit)
    return rep


def roundtrip_check(thing, max_len: int = 3, bound: int = 2) -> CheckReport:
    if isinstance(thing, StructureObject):
        return roundtrip_structure(thing, bound)
    return roundtrip_algebra(thing, max_len, bound)


def perturbation_survivors(s: StructureObject, max_len: int = 2, limit: int | None = DEFAULT_HOM_LIMIT) -> dict:
    """Change the evaluator on one swept morphism at a time.

    Returns counts of perturbations tried and of those that still satisfy
    functoriality (boundaries and all composites through the changed
    morphism) and the three mediating equations.  Uniqueness means no
    survivors.
    """
    X = s.carrier
    if not X.is_finite:
        raise ValueError("perturbation needs a finite carrier")
    x = evaluator(s)
    QX = Q.apply(X)
    objs = QX.objects_up_to(max_len)
    homs = {(a, b): QX.hom(a, b) for a in objs for b in objs}
    maps = build_structure_maps(X)
    w = s.monoidal_structure()
    z = s.cartesian_structure()
    carrier_mors = [m for a in X.objects() for b in X.objects() for m in X.hom(a, b)]
    tried = survivors = 0
    for (a, b), hs in homs.items():
        for g in hs:
            orig = x.mor(g)
            for alt in carrier_mors:
                if alt == orig:
                    continue
                tried += 1
                if (X.dom(alt), X.cod(alt)) != (x.obj(a), x.obj(b)):
                    continue

                def xm(h, g=g, alt=alt):
                    return alt if h == g else x.mor(h)

                ok = True
                for c in objs:
                    for h in homs.get((b, c), []):
                        if xm(QX.compose(h, g)) != X.compose(xm(h), alt):
                            ok = False
                            break
                    for h in homs.get((c, a), []):
                        if not ok:
                            break
                        if xm(QX.compose(g, h)) != X.compose(alt, xm(h)):
                            ok = False
                            break
                    if not ok:
                        break
                if ok and all(e[1] is LIN for e in a + b):
                    ok = alt == w.mor(_untag_mor(g))
                if ok and all(e[1] is NONLIN for e in a + b):
                    ok = alt == z.mor(_untag_mor(g))
                if ok and all(e[1] is LIN for e in b) and g == maps.beta.at(untag(b)):
                    ok = alt == s.counit(w.obj(untag(b)))
                if ok:
                    survivors += 1
    return {"tried": tried, "survivors": survivors, "morphisms": sum(len(h) for h in homs.values())}


def _untag_mor(g: SeqMorphism) -> SeqMorphism:
    return SeqMorphism(untag(g.src), untag(g.tgt), g.reindex, g.components)


def check_structure_map(p: Functor, s: StructureObject, t: StructureObject, bound: int = 2) -> CheckReport:
    """``p`` preserves ⊗, I, f, ε, δ and t strictly."""
    X = s.carrier
    rep = CheckReport(name=f"structure-map({p.name})")
    objs = _objects(s, bound)
    rep.merge(validate_functor(p, objs), "p:")
    if rep.errors:
        return rep
    rep.expect(p.obj(s.unit) == t.unit, "unit", s.unit)
    for x in objs:
        rep.expect(p.obj(s.deflate_obj(x)) == t.deflate_obj(p.obj(x)), "f", x)
        rep.expect(p.mor(s.counit(x)) == t.counit(p.obj(x)), "ε", x)
        rep.expect(p.mor(s.diagonal(x)) == t.diagonal(p.obj(x)), "δ", x)
        rep.expect(p.mor(s.deletion(x)) == t.deletion(p.obj(x)), "t", x)
        for y in objs:
            rep.expect(p.obj(s.tensor_obj(x, y)) == t.tensor_obj(p.obj(x), p.obj(y)), "⊗", (x, y))
    for m in _morphisms(X, objs):
        rep.expect(p.mor(s.deflate_mor(m)) == t.deflate_mor(p.mor(m)), "f", m)
    return rep


def check_evaluator_natural(p: Functor, s: StructureObject, t: StructureObject, max_len: int = 2,
                            limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    """``p ∘ x_s = x_t ∘ Q(p)`` for a structure map ``p``."""
    rep = CheckReport(name=f"evaluator-naturality({p.name})")
    xs, xt = evaluator(s), evaluator(t)
    QX = Q.apply(s.carrier)
    check_functors_equal(compose_functors(p, xs), compose_functors(xt, Q.lift(p)), QX.objects_up_to(max_len),
                         rep, "p∘x=x'∘Q(p)", limit)
    return rep


def require_structure(s: StructureObject, bound: int = 2, max_len: int = 2) -> None:
    rep = check_structure_object(s, bound, max_len)
    if not rep.ok:
        raise LawViolation(f"not a structure object: {rep.findings[0]}", rep)
