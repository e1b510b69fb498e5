"""Finite categories, functors and natural transformations.

Every category in the package implements :class:`CategoryView`.  Finite ones
are :class:`FinCat` tables; the free constructions (``S A``, ``C A``,
``Q A``, colax colimits) are computed lazily and only expose bounded object
enumeration through :meth:`CategoryView.objects_up_to`.

Composition is written ``compose(g, f)`` for "``f`` then ``g``".
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Sequence

from .report import CheckReport

DEFAULT_HOM_LIMIT = 20000


class CategoryView:
    """Uniform interface over finite and lazily computed categories."""

    name = "?"

    def is_object(self, x) -> bool:
        raise NotImplementedError

    def hom(self, x, y) -> list:
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def dom(self, m):
        raise NotImplementedError

    def cod(self, m):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    def objects(self) -> list:
        raise TypeError(f"{self.name} has infinitely many objects; use objects_up_to")

    def objects_up_to(self, bound: int) -> list:
        return self.objects()

    def size(self, x) -> int:
        """Weight used to bound sweeps over infinite object sets."""
        return 1

    def render_object(self, x):
        return x

    def render_morphism(self, m):
        return m

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def identity_name(x) -> str:
    return f"id_{x}"


class FinCat(CategoryView):
    """A finite category given by tables.

    Identities are implicit and named ``id_<object>``; ``composition`` maps
    ``(first, then)`` pairs of non-identity morphisms to their composite.
    Construction never raises on bad tables so that :func:`validate_category`
    can report every problem.
    """

    def __init__(self, objects: Iterable, morphisms: Iterable[tuple], composition=None, name: str = "FinCat"):
        self.name = name
        self.object_list = [str(o) for o in objects]
        self.arrow_list = [(str(n), str(s), str(t)) for n, s, t in morphisms]
        self.arrows = {n: (s, t) for n, s, t in self.arrow_list}
        table = composition.items() if isinstance(composition, dict) else (composition or ())
        self.table_entries = [((str(a), str(b)), str(c)) for (a, b), c in table]
        self.table = dict(self.table_entries)
        self._objset = set(self.object_list)
        self._ids = {identity_name(o): o for o in self.object_list}
        homs: dict = {}
        for o in self.object_list:
            homs.setdefault((o, o), []).append(identity_name(o))
        for n, s, t in self.arrow_list:
            homs.setdefault((s, t), []).append(n)
        self._homs = homs

    @property
    def is_finite(self) -> bool:
        return True

    def objects(self) -> list:
        return list(self.object_list)

    def morphisms(self) -> list:
        return [identity_name(o) for o in self.object_list] + [n for n, _, _ in self.arrow_list]

    def is_object(self, x) -> bool:
        return x in self._objset

    def is_identity(self, m) -> bool:
        return m in self._ids

    def hom(self, x, y) -> list:
        return list(self._homs.get((x, y), ()))

    def identity(self, x):
        return identity_name(x)

    def dom(self, m):
        if m in self._ids:
            return self._ids[m]
        return self.arrows[m][0]

    def cod(self, m):
        if m in self._ids:
            return self._ids[m]
        return self.arrows[m][1]

    def compose(self, g, f):
        if f in self._ids:
            return g
        if g in self._ids:
            return f
        try:
            return self.table[(f, g)]
        except KeyError:
            raise KeyError(f"{self.name}: no composite for {f};{g}") from None

    def with_table(self, composition) -> "FinCat":
        return FinCat(self.object_list, self.arrow_list, composition, self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "objects": list(self.object_list),
            "morphisms": [{"name": n, "src": s, "tgt": t} for n, s, t in self.arrow_list],
            "composition": [{"first": a, "then": b, "equals": c} for (a, b), c in self.table_entries],
        }

    @classmethod
    def from_json(cls, doc: dict, name: str = "FinCat") -> "FinCat":
        objects = doc.get("objects", [])
        morphisms = [(m["name"], m["src"], m["tgt"]) for m in doc.get("morphisms", [])]
        comp = [((e["first"], e["then"]), e["equals"]) for e in doc.get("composition", [])]
        return cls(objects, morphisms, comp, name=doc.get("name", name))


def validate_category(cat: FinCat) -> CheckReport:
    rep = CheckReport(name=f"validate_category({cat.name})")
    objs = cat.object_list
    if len(set(objs)) != len(objs):
        rep.error("duplicate-object", [o for o in objs if objs.count(o) > 1])
    names = [n for n, _, _ in cat.arrow_list]
    for n in sorted({n for n in names if names.count(n) > 1}):
        rep.error("duplicate-morphism", n)
    for n, s, t in cat.arrow_list:
        if n.startswith("id_") and n[3:] in cat._objset:
            rep.error("reserved-name", n)
        for end in (s, t):
            if end not in cat._objset:
                rep.error("dangling-object", f"{n}: {end}")
    known = set(cat.arrows) | set(cat._ids)
    seen = {}
    for (a, b), c in cat.table_entries:
        if (a, b) in seen:
            rep.error("duplicate-entry", f"{a};{b}")
        seen[(a, b)] = c
        bad = [x for x in (a, b, c) if x not in known]
        if bad:
            rep.error("dangling-morphism", f"{a};{b}={c}: unknown {bad}")
            continue
        if a in cat._ids or b in cat._ids:
            rep.error("identity-entry", f"{a};{b}")
            continue
        if cat.cod(a) != cat.dom(b):
            rep.error("non-composable", f"{a};{b}")
            continue
        if (cat.dom(c), cat.cod(c)) != (cat.dom(a), cat.cod(b)):
            rep.fail("composite-boundary", f"{a};{b}={c}")
    if not rep.ok:
        return rep
    arrows = [n for n, _, _ in cat.arrow_list]
    for a in arrows:
        for b in arrows:
            if cat.cod(a) == cat.dom(b):
                rep.checked += 1
                if (a, b) not in cat.table:
                    rep.error("missing-composite", f"{a};{b}")
    if not rep.ok:
        return rep
    # identities are implicit, so only associativity remains
    for f, g, h in composable_triples(cat):
        left = cat.compose(h, cat.compose(g, f))
        right = cat.compose(cat.compose(h, g), f)
        rep.expect(left == right, "associativity", (f, g, h))
    return rep


def composable_triples(cat: FinCat) -> Iterator[tuple]:
    arrows = [n for n, _, _ in cat.arrow_list]
    out = {}
    for m in arrows:
        out.setdefault(cat.dom(m), []).append(m)
    for f in arrows:
        for g in out.get(cat.cod(f), []):
            for h in out.get(cat.cod(g), []):
                yield f, g, h


# --------------------------------------------------------------------------
# functors and transformations


class Functor:
    def __init__(self, source: CategoryView, target: CategoryView, obj: Callable, mor: Callable, name: str = "F"):
        self.source = source
        self.target = target
        self._obj = obj
        self._mor = mor
        self.name = name

    def obj(self, x):
        return self._obj(x)

    def mor(self, m):
        return self._mor(m)

    def __repr__(self) -> str:
        return f"<Functor {self.name}: {self.source.name} -> {self.target.name}>"

    @classmethod
    def from_tables(cls, source: FinCat, target: CategoryView, objects: dict, morphisms: dict, name: str = "F"):
        objects = dict(objects)
        morphisms = dict(morphisms)

        def on_mor(m):
            if m in morphisms:
                return morphisms[m]
            if source.is_identity(m):
                return target.identity(on_obj(source.dom(m)))
            raise KeyError(f"{name}: no image for morphism {m!r}")

        def on_obj(x):
            try:
                return objects[x]
            except KeyError:
                raise KeyError(f"{name}: no image for object {x!r}") from None

        F = cls(source, target, on_obj, on_mor, name)
        F.object_table = objects
        F.morphism_table = morphisms
        return F

    def tables(self) -> tuple[dict, dict]:
        """Object and non-identity morphism maps of a functor out of a FinCat."""
        src = self.source
        objs = {x: self.obj(x) for x in src.objects()}
        mors = {n: self.mor(n) for n, _, _ in src.arrow_list}
        return objs, mors


def identity_functor(cat: CategoryView) -> Functor:
    return Functor(cat, cat, lambda x: x, lambda m: m, name=f"id[{cat.name}]")


def compose_functors(*fs: Functor) -> Functor:
    """``compose_functors(H, G, F)`` is ``H∘G∘F``."""
    fs = list(fs)
    first = fs[-1]
    last = fs[0]
    rev = fs[::-1]

    def obj(x):
        for F in rev:
            x = F.obj(x)
        return x

    def mor(m):
        for F in rev:
            m = F.mor(m)
        return m

    return Functor(first.source, last.target, obj, mor, name="∘".join(F.name for F in fs))


def constant_functor(source: CategoryView, target: CategoryView, obj) -> Functor:
    ident = target.identity(obj)
    return Functor(source, target, lambda x: obj, lambda m: ident, name=f"const[{obj}]")


class NatTransform:
    """A transformation ``source ⇒ target`` between parallel functors."""

    def __init__(self, source: Functor, target: Functor, component: Callable, name: str = "t"):
        self.source = source
        self.target = target
        self._component = component
        self.name = name

    def at(self, x):
        return self._component(x)

    def __repr__(self) -> str:
        return f"<NatTransform {self.name}: {self.source.name} => {self.target.name}>"

    @classmethod
    def from_table(cls, source: Functor, target: Functor, components: dict, name: str = "t"):
        comps = dict(components)

        def comp(x):
            try:
                return comps[x]
            except KeyError:
                raise KeyError(f"{name}: no component at {x!r}") from None

        t = cls(source, target, comp, name)
        t.component_table = comps
        return t

    def precompose(self, H: Functor) -> "NatTransform":
        """Whisker by ``H`` on the right: components ``t_{H x}``."""
        return NatTransform(compose_functors(self.source, H), compose_functors(self.target, H),
                            lambda x: self.at(H.obj(x)), name=f"{self.name}·{H.name}")

    def postcompose(self, H: Functor) -> "NatTransform":
        """Whisker by ``H`` on the left: components ``H(t_x)``."""
        return NatTransform(compose_functors(H, self.source), compose_functors(H, self.target),
                            lambda x: H.mor(self.at(x)), name=f"{H.name}·{self.name}")


def identity_transform(F: Functor) -> NatTransform:
    return NatTransform(F, F, lambda x: F.target.identity(F.obj(x)), name=f"id[{F.name}]")


def vertical(t2: NatTransform, t1: NatTransform) -> NatTransform:
    """``t1`` followed by ``t2``."""
    cat = t1.source.target
    return NatTransform(t1.source, t2.target, lambda x: cat.compose(t2.at(x), t1.at(x)),
                        name=f"{t2.name}∘{t1.name}")


# --------------------------------------------------------------------------
# sweeps


def sweep_objects(cat: CategoryView, objects=None, bound: int | None = None) -> list:
    if objects is not None:
        return list(objects)
    if cat.is_finite:
        return cat.objects()
    if bound is None:
        raise ValueError(f"{cat.name} is infinite: pass objects or a bound")
    return cat.objects_up_to(bound)


def bounded_hom(cat: CategoryView, x, y, limit: int | None, report: CheckReport | None = None) -> list:
    ms = cat.hom(x, y)
    if limit is not None and len(ms) > limit:
        if report is not None:
            report.truncated = True
        return ms[:limit]
    return ms


def iter_morphisms(cat: CategoryView, objects: Sequence, limit: int | None = DEFAULT_HOM_LIMIT,
                   report: CheckReport | None = None) -> Iterator:
    for x in objects:
        for y in objects:
            yield from bounded_hom(cat, x, y, limit, report)


def validate_functor(F: Functor, objects=None, bound: int | None = None, compositions: bool = True,
                     limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    rep = CheckReport(name=f"validate_functor({F.name})")
    objs = sweep_objects(F.source, objects, bound)
    src, tgt = F.source, F.target
    images = {}
    for x in objs:
        try:
            fx = F.obj(x)
        except Exception as exc:  # a partial table is a structural problem
            rep.error("object-map", f"{x!r}: {exc}")
            continue
        if not tgt.is_object(fx):
            rep.error("object-outside-target", f"{x!r} -> {fx!r}")
            continue
        images[x] = fx
        rep.expect(F.mor(src.identity(x)) == tgt.identity(fx), "identity", x)
    if rep.errors:
        return rep
    homs = {}
    for x in objs:
        for y in objs:
            hs = bounded_hom(src, x, y, limit, rep)
            homs[(x, y)] = hs
            for m in hs:
                try:
                    fm = F.mor(m)
                except Exception as exc:
                    rep.error("morphism-map", f"{m!r}: {exc}")
                    continue
                try:
                    bd = (tgt.dom(fm), tgt.cod(fm))
                except Exception:
                    rep.error("morphism-outside-target", f"{m!r} -> {fm!r}")
                    continue
                rep.expect(bd == (images[x], images[y]), "boundary", (m, fm))
    if not rep.ok or not compositions:
        return rep
    for x in objs:
        for y in objs:
            for f in homs[(x, y)]:
                ff = F.mor(f)
                for z in objs:
                    for g in homs[(y, z)]:
                        rep.expect(F.mor(src.compose(g, f)) == tgt.compose(F.mor(g), ff),
                                   "composition", (f, g))
    return rep


def validate_nat_transform(t: NatTransform, objects=None, bound: int | None = None,
                           limit: int | None = DEFAULT_HOM_LIMIT) -> CheckReport:
    rep = CheckReport(name=f"validate_nat_transform({t.name})")
    F, G = t.source, t.target
    cat = F.target
    objs = sweep_objects(F.source, objects, bound)
    for x in objs:
        c = t.at(x)
        try:
            bd = (cat.dom(c), cat.cod(c))
        except Exception:
            rep.error("component-outside-target", f"{x!r}: {c!r}")
            continue
        if bd != (F.obj(x), G.obj(x)):
            rep.error("component-boundary", f"{x!r}: {c!r}")
    if rep.errors:
        return rep
    for x in objs:
        for y in objs:
            for m in bounded_hom(F.source, x, y, limit, rep):
                left = cat.compose(G.mor(m), t.at(x))
                right = cat.compose(t.at(y), F.mor(m))
                rep.expect(left == right, "naturality", m)
    return rep


def check_functors_equal(F: Functor, G: Functor, objects: Sequence, report: CheckReport, law: str,
                         limit: int | None = DEFAULT_HOM_LIMIT, morphisms: bool = True) -> None:
    for x in objects:
        report.expect(F.obj(x) == G.obj(x), law, ("object", x))
    if not morphisms:
        return
    for m in iter_morphisms(F.source, objects, limit, report):
        report.expect(F.mor(m) == G.mor(m), law, ("morphism", m))


def check_transforms_equal(s: NatTransform, t: NatTransform, objects: Sequence, report: CheckReport, law: str) -> None:
    for x in objects:
        report.expect(s.at(x) == t.at(x), law, ("component at", x))


def is_identity_transform(t: NatTransform, objects: Sequence, report: CheckReport, law: str) -> None:
    cat = t.source.target
    for x in objects:
        report.expect(t.at(x) == cat.identity(t.source.obj(x)), law, ("component at", x))


# --------------------------------------------------------------------------
# brute-force enumeration (used as independent oracles)


def enumerate_functors(A: FinCat, B: CategoryView, objects_b: Sequence | None = None) -> Iterator[Functor]:
    """Every functor ``A -> B`` by exhaustive search over tables."""
    obs_b = list(objects_b) if objects_b is not None else B.objects()
    obs_a = A.objects()
    arrows = [n for n, _, _ in A.arrow_list]
    for images in itertools.product(obs_b, repeat=len(obs_a)):
        omap = dict(zip(obs_a, images))
        choices = [B.hom(omap[A.dom(m)], omap[A.cod(m)]) for m in arrows]
        if any(not c for c in choices):
            continue
        yield from _extend_morphisms(A, B, omap, arrows, choices, {}, 0)


def _extend_morphisms(A, B, omap, arrows, choices, assigned, i):
    if i == len(arrows):
        yield Functor.from_tables(A, B, omap, dict(assigned), name="enum")
        return
    m = arrows[i]
    for cand in choices[i]:
        assigned[m] = cand
        if _consistent(A, B, omap, assigned, m):
            yield from _extend_morphisms(A, B, omap, arrows, choices, assigned, i + 1)
        del assigned[m]


def _image(A, B, omap, assigned, m):
    if A.is_identity(m):
        return B.identity(omap[A.dom(m)])
    return assigned.get(m)


def _consistent(A, B, omap, assigned, new) -> bool:
    for (f, g), h in A.table.items():
        if new not in (f, g, h):
            continue
        imgs = [_image(A, B, omap, assigned, k) for k in (f, g, h)]
        if any(i is None for i in imgs):
            continue
        if B.compose(imgs[1], imgs[0]) != imgs[2]:
            return False
    return True


def enumerate_transforms(F: Functor, G: Functor, objects=None) -> Iterator[NatTransform]:
    """Every natural transformation ``F ⇒ G`` (finite source)."""
    objs = sweep_objects(F.source, objects)
    cat = F.target
    choices = [cat.hom(F.obj(x), G.obj(x)) for x in objs]
    arrows = list(iter_morphisms(F.source, objs, None))
    for combo in itertools.product(*choices):
        comp = dict(zip(objs, combo))
        ok = all(cat.compose(G.mor(m), comp[F.source.dom(m)]) == cat.compose(comp[F.source.cod(m)], F.mor(m))
                 for m in arrows)
        if ok:
            yield NatTransform.from_table(F, G, comp, name="enum")


def all_component_families(F: Functor, G: Functor, objects=None) -> Iterator[dict]:
    """Boundary-correct component families, natural or not."""
    objs = sweep_objects(F.source, objects)
    cat = F.target
    choices = [cat.hom(F.obj(x), G.obj(x)) for x in objs]
    for combo in itertools.product(*choices):
        yield dict(zip(objs, combo))
