import json
import os
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lnlcat.lnlmonad import LIN, NONLIN
from lnlcat.terms import (
    DEFAULT_SIGNATURE,
    App,
    Context,
    Signature,
    Var,
    check_term,
    expected_tags,
    occurrences,
    parse_context,
    parse_term,
    random_term,
    subst_linear,
    subst_nonlinear,
    substitute,
    tag_arithmetic_check,
)
from conftest import DATA


def ctx(text):
    return parse_context(text)


def test_parse_context_and_render():
    c = ctx("x^L,w^L;y^N")
    assert c.linear == ("x", "w") and c.nonlinear == ("y",)
    assert str(c) == "x^L,w^L;y^N"
    assert ctx("-;y^N") == Context((), ("y",))
    assert ctx("x^L") == Context(("x",), ())


@pytest.mark.parametrize("text", ["x^L;x^N", "x^Q", "y^N;x^L", "x"])
def test_bad_contexts(text):
    with pytest.raises(ValueError):
        parse_context(text)


def test_parse_term():
    assert parse_term("(g x (k u))") == App("g", (Var("x"), App("k", (Var("u"),))))
    assert parse_term("(c)") == App("c")
    assert str(parse_term(" ( g  x  y ) ")) == "(g x y)"


@pytest.mark.parametrize("text,where", [("(g x", "unclosed '(' at 0"), ("x)", "trailing input at 1"),
                                        ("()", "expected an operation symbol"), ("", "unexpected end")])
def test_parse_errors_carry_positions(text, where):
    with pytest.raises(ValueError, match=r".*" + where.replace("(", r"\(")):
        parse_term(text)


def test_check_term_examples():
    assert check_term(ctx("x^L;"), parse_term("x")).ok
    bad = check_term(ctx("x^L;"), parse_term("(g x x)"))
    assert bad.laws() == {"linear-use"}
    assert check_term(ctx(";y^N"), parse_term("(g y y)")).ok


def test_check_term_other_findings():
    assert check_term(ctx("x^L;"), parse_term("(k x (c))")).laws() == {"arity"}
    assert check_term(ctx("x^L;"), parse_term("(g x q)")).laws() == {"undeclared"}
    assert check_term(ctx("x^L;"), parse_term("(h x)")).laws() == {"unknown-op"}
    assert check_term(ctx("x^L,w^L;"), parse_term("x")).laws() == {"linear-use"}


def test_linear_substitution_example():
    t, c = subst_linear(parse_term("(g x w)"), ctx("x^L,w^L;y^N"), "w", parse_term("(k u)"), ctx("u^L;v^N"))
    assert str(t) == "(g x (k u))"
    assert str(c) == "x^L,u^L;v^N,y^N"


def test_linear_renaming_and_identity():
    t, c = subst_linear(parse_term("(g x w)"), ctx("x^L,w^L;"), "w", Var("u"), ctx("u^L;"))
    assert t == parse_term("(g x u)") and c == ctx("x^L,u^L;")
    t, c = subst_linear(Var("w"), ctx("w^L;"), "w", Var("x"), ctx("x^L;"))
    assert t == Var("x") and c == ctx("x^L;")


def test_nonlinear_substitution_example():
    t, c = subst_nonlinear(parse_term("(g z z)"), ctx(";z^N"), "z", parse_term("(k u)"), ctx("u^L;"))
    assert str(t) == "(g (k u) (k u))"
    assert c == ctx(";u^N")
    assert check_term(c, t).ok


def test_nonlinear_order_and_weakening():
    t, c = subst_nonlinear(parse_term("(g x y)"), ctx("x^L;y^N,z^N"), "z", parse_term("(g u v)"), ctx("u^L;v^N"))
    assert t == parse_term("(g x y)")
    assert str(c) == "x^L;y^N,u^N,v^N"


def test_coercing_linear_to_nonlinear():
    t, c = subst_nonlinear(parse_term("(g z z)"), ctx(";z^N"), "z", Var("x"), ctx("x^L;"))
    assert t == parse_term("(g x x)") and c == ctx(";x^N")


def test_substitution_errors():
    with pytest.raises(ValueError, match="not a linear"):
        subst_linear(Var("y"), ctx(";y^N"), "y", Var("u"), ctx("u^L;"))
    with pytest.raises(ValueError, match="not a non-linear"):
        subst_nonlinear(Var("x"), ctx("x^L;"), "x", Var("u"), ctx("u^L;"))
    with pytest.raises(ValueError, match="share names"):
        substitute(Var("x"), ctx("x^L;"), "x", Var("x"), ctx("x^L;"))
    with pytest.raises(ValueError, match="not declared"):
        substitute(Var("x"), ctx("x^L;"), "q", Var("u"), ctx("u^L;"))


def test_expected_tags_rule():
    inner = [("a", LIN), ("b", NONLIN)]
    assert expected_tags(inner, LIN) == {"a": LIN, "b": NONLIN}
    assert expected_tags(inner, NONLIN) == {"a": NONLIN, "b": NONLIN}


def test_signature_file_and_duplicates():
    with open(os.path.join(DATA, "signature.json"), encoding="utf-8") as fh:
        sig = Signature.from_json(json.load(fh))
    assert Signature.from_json(sig.to_json()) == sig
    with pytest.raises(ValueError):
        Signature((("g", 2), ("g", 1)))


def test_fuzz_is_clean_and_deterministic():
    a = tag_arithmetic_check(200, seed=3)
    b = tag_arithmetic_check(200, seed=3)
    assert a.ok and a.to_json() == b.to_json()


_POOL = [f"n{i}" for i in range(12)]


@st.composite
def substitution_case(draw):
    names = draw(st.permutations(_POOL))
    k, j, k2, j2 = (draw(st.integers(0, 3)) for _ in range(4))
    if k + j == 0:
        k = 1
    ctx_t = Context(tuple(names[:k]), tuple(names[k:k + j]))
    ctx_s = Context(tuple(names[6:6 + k2]), tuple(names[6 + k2:6 + k2 + j2]))
    rng = random.Random(draw(st.integers(0, 10**6)))
    t = random_term(rng, DEFAULT_SIGNATURE, ctx_t.linear, ctx_t.nonlinear)
    s = random_term(rng, DEFAULT_SIGNATURE, ctx_s.linear, ctx_s.nonlinear)
    var = draw(st.sampled_from(ctx_t.names))
    return t, ctx_t, var, s, ctx_s


@given(substitution_case())
@settings(max_examples=300, deadline=None)
def test_substitution_properties(case):
    t, ctx_t, var, s, ctx_s = case
    assert check_term(ctx_t, t).ok and check_term(ctx_s, s).ok
    out, c = substitute(t, ctx_t, var, s, ctx_s)
    assert check_term(c, out).ok
    uses = occurrences(out)
    assert all(uses[v] == 1 for v in c.linear)
    assert Counter(c.names) == Counter([n for n in ctx_t.names if n != var] + list(ctx_s.names))
    if occurrences(t)[var] == 0:
        assert out == t
    if ctx_t.tag(var) is NONLIN:
        assert set(ctx_s.names) <= set(c.nonlinear)
