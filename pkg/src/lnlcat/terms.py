"""A small linear/non-linear term calculus.

Contexts are split: linear variables on the left of ``;``, non-linear ones
on the right, written ``x^L,w^L;y^N``.  A linear variable must be used
exactly once; a non-linear one any number of times.  Terms are
s-expressions: a bare symbol is a variable, ``(g a b)`` applies ``g`` and
``(c)`` is a constant.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass

from .fincat import FinCat
from .lnlmonad import LIN, NONLIN, Q, Tag
from .report import CheckReport


@dataclass(frozen=True)
class Signature:
    ops: tuple  # ((name, arity), ...)

    def __post_init__(self):
        names = [n for n, _ in self.ops]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate operation symbols in {names}")

    def arity(self, name: str):
        return dict(self.ops).get(name)

    @classmethod
    def from_json(cls, doc: dict) -> "Signature":
        return cls(tuple((op["name"], int(op["arity"])) for op in doc["ops"]))

    def to_json(self) -> dict:
        return {"ops": [{"name": n, "arity": a} for n, a in self.ops]}


DEFAULT_SIGNATURE = Signature((("g", 2), ("k", 1), ("c", 0)))


@dataclass(frozen=True)
class Context:
    linear: tuple = ()
    nonlinear: tuple = ()

    def __post_init__(self):
        names = list(self.linear) + list(self.nonlinear)
        dup = [n for n, k in Counter(names).items() if k > 1]
        if dup:
            raise ValueError(f"variable declared twice: {', '.join(sorted(dup))}")

    @property
    def names(self) -> tuple:
        return self.linear + self.nonlinear

    def entries(self) -> list[tuple[str, Tag]]:
        return [(n, LIN) for n in self.linear] + [(n, NONLIN) for n in self.nonlinear]

    def tag(self, name: str):
        if name in self.linear:
            return LIN
        if name in self.nonlinear:
            return NONLIN
        return None

    def __str__(self) -> str:
        lin = ",".join(f"{n}^L" for n in self.linear)
        non = ",".join(f"{n}^N" for n in self.nonlinear)
        return f"{lin};{non}"


_ENTRY = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_']*)\s*\^\s*([LN])\s*$")


def parse_context(text: str) -> Context:
    """``"x^L,w^L;y^N"``; either side may be empty or ``-``."""
    if ";" in text:
        left, right = text.split(";", 1)
    else:
        left, right = text, ""
    sides = {LIN: [], NONLIN: []}
    for side, want in ((left, LIN), (right, NONLIN)):
        side = side.strip()
        if side in ("", "-"):
            continue
        for chunk in side.split(","):
            m = _ENTRY.match(chunk)
            if not m:
                raise ValueError(f"bad context entry {chunk.strip()!r} in {text!r}")
            tag = Tag(m.group(2))
            if ";" in text and tag is not want:
                raise ValueError(f"{m.group(1)}^{tag.value} on the wrong side of ';' in {text!r}")
            sides[tag].append(m.group(1))
    return Context(tuple(sides[LIN]), tuple(sides[NONLIN]))


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __str__(self) -> str:
        return "(" + " ".join([self.op] + [str(a) for a in self.args]) + ")"


_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def parse_term(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"unexpected character at {pos}: {text[pos:]!r}")
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    i = 0

    def parse():
        nonlocal i
        if i >= len(tokens):
            raise ValueError(f"unexpected end of term {text!r}")
        tok, at = tokens[i]
        i += 1
        if tok == ")":
            raise ValueError(f"unexpected ')' at {at}")
        if tok != "(":
            return Var(tok)
        if i >= len(tokens) or tokens[i][0] in "()":
            raise ValueError(f"expected an operation symbol after '(' at {at}")
        op = tokens[i][0]
        i += 1
        args = []
        while i < len(tokens) and tokens[i][0] != ")":
            args.append(parse())
        if i >= len(tokens):
            raise ValueError(f"unclosed '(' at {at}")
        i += 1
        return App(op, tuple(args))

    out = parse()
    if i != len(tokens):
        raise ValueError(f"trailing input at {tokens[i][1]}: {text[tokens[i][1]:]!r}")
    return out


def occurrences(t) -> Counter:
    if isinstance(t, Var):
        return Counter([t.name])
    out = Counter()
    for a in t.args:
        out.update(occurrences(a))
    return out


def _walk(t, path=()):
    yield path, t
    if isinstance(t, App):
        for k, a in enumerate(t.args):
            yield from _walk(a, path + (k,))


def check_term(ctx: Context, t, sig: Signature = DEFAULT_SIGNATURE) -> CheckReport:
    rep = CheckReport(name=f"check_term({t} in {ctx})")
    for path, node in _walk(t):
        if isinstance(node, App):
            ar = sig.arity(node.op)
            if ar is None:
                rep.error("unknown-op", (node.op, path))
            else:
                rep.expect(ar == len(node.args), "arity", (node.op, path, f"{len(node.args)} args, wants {ar}"))
        elif ctx.tag(node.name) is None:
            rep.fail("undeclared", (node.name, path))
    uses = occurrences(t)
    for v in ctx.linear:
        rep.expect(uses[v] == 1, "linear-use", (v, f"used {uses[v]} times"))
    return rep


def replace(t, name: str, s):
    if isinstance(t, Var):
        return s if t.name == name else t
    return App(t.op, tuple(replace(a, name, s) for a in t.args))


def _disjoint(ctx_t: Context, ctx_s: Context) -> None:
    clash = set(ctx_t.names) & set(ctx_s.names)
    if clash:
        raise ValueError(f"contexts share names: {', '.join(sorted(clash))}")


def subst_linear(t, ctx_t: Context, w: str, s, ctx_s: Context):
    """``t[s/w]`` for a linear ``w``; context ``x,u ; v,y``."""
    if w not in ctx_t.linear:
        raise ValueError(f"{w} is not a linear variable of {ctx_t}")
    _disjoint(ctx_t, ctx_s)
    lin = tuple(x for x in ctx_t.linear if x != w) + ctx_s.linear
    non = ctx_s.nonlinear + ctx_t.nonlinear
    return replace(t, w, s), Context(lin, non)


def subst_nonlinear(t, ctx_t: Context, z: str, s, ctx_s: Context):
    """``t[s/z]`` for a non-linear ``z``; every variable of ``s`` becomes non-linear."""
    if z not in ctx_t.nonlinear:
        raise ValueError(f"{z} is not a non-linear variable of {ctx_t}")
    _disjoint(ctx_t, ctx_s)
    non = tuple(y for y in ctx_t.nonlinear if y != z) + ctx_s.linear + ctx_s.nonlinear
    return replace(t, z, s), Context(ctx_t.linear, non)


def substitute(t, ctx_t: Context, var: str, s, ctx_s: Context):
    """Dispatch on the tag of ``var`` in ``ctx_t``."""
    tag = ctx_t.tag(var)
    if tag is None:
        raise ValueError(f"{var} is not declared in {ctx_t}")
    if tag is LIN:
        return subst_linear(t, ctx_t, var, s, ctx_s)
    return subst_nonlinear(t, ctx_t, var, s, ctx_s)


# --------------------------------------------------------------------------
# randomized checking


def random_term(rng: random.Random, sig: Signature, linear, nonlinear, depth: int = 3):
    """A term using each of ``linear`` exactly once and ``nonlinear`` freely."""
    lin = list(linear)
    ops = list(sig.ops)
    consts = [n for n, a in ops if a == 0]
    binary = [(n, a) for n, a in ops if a >= 2]

    def leaf():
        if nonlinear and (not consts or rng.random() < 0.6):
            return Var(rng.choice(list(nonlinear)))
        return App(rng.choice(consts))

    def build(lin, depth):
        if depth <= 0 or rng.random() < 0.25:
            if len(lin) == 1:
                return Var(lin[0])
            if not lin and (nonlinear or consts):
                return leaf()
        if len(lin) > 1 or depth <= 0:
            if not binary:
                raise ValueError("signature needs an operation of arity ≥ 2")
            name, arity = rng.choice(binary)
        else:
            name, arity = rng.choice([o for o in ops if o[1] > 0] or binary)
        rng.shuffle(lin)
        if depth <= 0:
            # split evenly so the recursion bottoms out
            cuts = [len(lin) * (k + 1) // arity for k in range(arity - 1)]
        else:
            cuts = sorted(rng.randint(0, len(lin)) for _ in range(arity - 1))
        parts = [lin[a:b] for a, b in zip([0] + cuts, cuts + [len(lin)])]
        return App(name, tuple(build(p, depth - 1) for p in parts))

    if not lin and not nonlinear and not consts:
        raise ValueError("cannot build a closed term without constants")
    return build(lin, depth)


def random_context(rng: random.Random, names, max_lin: int = 3, max_non: int = 3) -> Context:
    k = rng.randint(0, max_lin)
    j = rng.randint(0, max_non)
    picked = [next(names) for _ in range(k + j)]
    return Context(tuple(picked[:k]), tuple(picked[k:]))


_NAMES = tuple(f"v{i}" for i in range(24))
_NAME_CAT = FinCat(_NAMES, [], name="Names")


def expected_tags(inner: list[tuple[str, Tag]], outer: Tag) -> dict:
    """Tags after substituting ``inner`` into a slot tagged ``outer``.

    Computed with the flattening of ``Q`` applied to the one-block object
    ``⟨⟨inner⟩^outer⟩``, independently of the substitution code.
    """
    nested = ((tuple(inner), outer),)
    return dict(Q.mult(_NAME_CAT).obj(nested))


def _multiset(ctx: Context) -> Counter:
    return Counter(ctx.entries())


def tag_arithmetic_check(trials: int = 500, seed: int = 0, sig: Signature = DEFAULT_SIGNATURE) -> CheckReport:
    rng = random.Random(seed)
    rep = CheckReport(name=f"tag-arithmetic(trials={trials}, seed={seed})")
    rep.meta.update(trials=trials, seed=seed)
    kinds = Counter()
    for trial in range(trials):
        names = iter(_NAMES)
        ctx_t = random_context(rng, names)
        if not ctx_t.names:
            ctx_t = Context(("v23",), ())
        t = random_term(rng, sig, ctx_t.linear, ctx_t.nonlinear)
        var = rng.choice(ctx_t.names)
        ctx_s = random_context(rng, names)
        s = random_term(rng, sig, ctx_s.linear, ctx_s.nonlinear)
        slot = ctx_t.tag(var)
        out, ctx_out = substitute(t, ctx_t, var, s, ctx_s)
        kinds[(slot.value, "sub")] += 1

        rep.expect(check_term(ctx_out, out, sig).ok, "linearity", (trial, str(out), str(ctx_out)))
        want = expected_tags(ctx_s.entries(), slot)
        for v, tag in want.items():
            rep.expect(ctx_out.tag(v) is tag, "just-when-both", (trial, v, slot, ctx_out))
        for v, tag in ctx_t.entries():
            if v != var:
                rep.expect(ctx_out.tag(v) is tag, "untouched-tags", (trial, v))
        if occurrences(t)[var] == 0:
            rep.expect(out == t, "unused-variable", trial)

        # associativity: t[s/w][r/v] = t[s[r/v]/w] for v from ctx_s
        if ctx_s.names:
            v = rng.choice(ctx_s.names)
            ctx_r = random_context(rng, names)
            r = random_term(rng, sig, ctx_r.linear, ctx_r.nonlinear)
            left, ctx_left = substitute(out, ctx_out, v, r, ctx_r)
            inner, ctx_inner = substitute(s, ctx_s, v, r, ctx_r)
            right, ctx_right = substitute(t, ctx_t, var, inner, ctx_inner)
            rep.expect(left == right and _multiset(ctx_left) == _multiset(ctx_right), "associativity",
                       (trial, str(left), str(right), str(ctx_left), str(ctx_right)))
            rep.expect(check_term(ctx_left, left, sig).ok, "linearity", (trial, str(left), str(ctx_left)))
    rep.meta.update(slots={f"{a}": k for (a, _), k in sorted(kinds.items())})
    return rep
