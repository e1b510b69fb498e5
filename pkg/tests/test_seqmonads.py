import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lnlcat.catalog import ARROW, CHAIN3, ONE, terminal_functor
from lnlcat.fincat import Functor, check_functors_equal, validate_functor
from lnlcat.instances import min_algebra
from lnlcat.report import CheckReport, LawViolation
from lnlcat.seqmonads import (
    LAMBDA,
    Algebra,
    C,
    S,
    SeqMorphism,
    check_algebra,
    check_monad_laws,
    check_monad_map,
    free_algebra,
    free_category,
    hom_count,
    identity_monad_map,
    lambda_component,
    mult_component,
    restrict_scalars,
    unit_component,
)
from oracles import count_bijections, count_functions

DOT = "•"


def test_small_hom_counts():
    assert hom_count("S", ONE, (DOT, DOT), (DOT, DOT)) == 2
    assert hom_count("C", ONE, (DOT,), (DOT, DOT)) == 1
    assert hom_count("S", ARROW, ("0", "1"), ("1", "1")) == 2


def test_s_arrow_components_follow_the_bijection():
    homs = free_category(ARROW, "S").hom(("0", "1"), ("1", "1"))
    for m in homs:
        for j, i in enumerate(m.reindex):
            assert m.components[j] == ("u" if i == 0 else "id_1")


@pytest.mark.parametrize("n", range(5))
def test_s_one_hom_is_factorial(n):
    assert hom_count("S", ONE, (DOT,) * n, (DOT,) * n) == count_bijections(n)


@pytest.mark.parametrize("n,m", list(itertools.product(range(4), repeat=2)))
def test_c_one_hom_counts_functions(n, m):
    assert hom_count("C", ONE, (DOT,) * n, (DOT,) * m) == count_functions(n, m)


def test_s_needs_equal_lengths():
    assert hom_count("S", ONE, (DOT,), (DOT, DOT)) == 0


def test_units():
    assert unit_component("S", ONE, DOT) == (DOT,)
    assert unit_component("C", ARROW, "0") == ("0",)
    m = S.unit(ARROW).mor("u")
    assert m.reindex == (0,) and m.components == ("u",)


def test_flatten_concatenates():
    assert mult_component("S", ARROW, (("0",), ("1", "0"))) == ("0", "1", "0")
    assert mult_component("C", ONE, ()) == ()


def test_flatten_morphism_positionally():
    CO = C.apply(ONE)
    inner = SeqMorphism((DOT,), (DOT, DOT), (0, 0), ("id_•", "id_•"))
    outer = SeqMorphism(((DOT,),), ((DOT, DOT),), (0,), (inner,))
    flat = mult_component("C", ONE, outer)
    assert flat.reindex == (0, 0)
    # outer reindex constant onto one block, inner diagonal: everything lands on source position 0
    outer2 = SeqMorphism(((DOT,),), ((DOT, DOT), (DOT, DOT)), (0, 0), (inner, inner))
    assert mult_component("C", ONE, outer2).reindex == (0, 0, 0, 0)
    assert CO.check_morphism(mult_component("C", ONE, outer2))


@pytest.mark.parametrize("monad,base,n", [(S, ONE, 3), (S, ONE, 0), (C, ARROW, 2), (S, ARROW, 2), (C, ONE, 2)],
                         ids=lambda v: getattr(v, "name", str(v)))
def test_monad_laws(monad, base, n):
    rep = check_monad_laws(monad, base, n, functors=[terminal_functor(base)])
    assert rep.ok, str(rep)


def test_empty_sweep_is_vacuous_but_checks_empty_sequence():
    rep = check_monad_laws(S, ONE, 0)
    assert rep.ok and rep.checked > 0


def test_composition_associative_and_unital_over_arrow():
    T = C.apply(ARROW)
    objs = T.objects_up_to(2)
    for x, y, z in itertools.product(objs, repeat=3):
        for f in T.hom(x, y):
            assert T.compose(f, T.identity(x)) == f == T.compose(T.identity(y), f)
            for g in T.hom(y, z):
                for w in objs:
                    for h in T.hom(z, w):
                        assert T.compose(h, T.compose(g, f)) == T.compose(T.compose(h, g), f)


def test_lambda_inclusion():
    assert lambda_component(ONE, (DOT, DOT)) == (DOT, DOT)
    swap = SeqMorphism((DOT, DOT), (DOT, DOT), (1, 0), ("id_•", "id_•"))
    assert lambda_component(ONE, swap) == swap
    assert check_monad_map(LAMBDA, ONE, 3).ok


def test_lambda_hits_exactly_the_bijective_morphisms():
    SO, CO = S.apply(ONE), C.apply(ONE)
    for n in range(4):
        x = (DOT,) * n
        imgs = [lambda_component(ONE, m) for m in SO.hom(x, x)]
        assert len(set(imgs)) == len(imgs)
        bij = [m for m in CO.hom(x, x) if sorted(m.reindex) == list(range(n))]
        assert set(imgs) == set(bij)


def test_eta_naturality_on_arrow():
    for monad in (S, C):
        eta = monad.unit(ARROW)
        assert validate_functor(eta).ok


def test_restrict_along_identity_is_identity():
    alg = min_algebra(C)
    back = restrict_scalars(identity_monad_map(C), alg)
    rep = CheckReport()
    check_functors_equal(back.structure, alg.structure, C.apply(CHAIN3).objects_up_to(2), rep, "same")
    assert rep.ok


def test_min_c_algebra_restricts_to_min_s_algebra():
    alg = min_algebra(C)
    assert check_algebra(alg, 2).ok
    res = restrict_scalars(LAMBDA, alg)
    assert res.monad is S
    assert check_algebra(res, 2).ok
    assert res.structure.obj(("1", "0", "2")) == "0"
    assert res.structure.obj(()) == "2"


def test_free_c_algebra_restricts():
    res = restrict_scalars(LAMBDA, free_algebra(C, ONE))
    assert check_algebra(res, 2).ok


def test_restrict_rejects_non_algebra():
    CX = C.apply(CHAIN3)
    const = Functor(CX, CHAIN3, lambda x: "0", lambda m: "id_0", name="const0")
    with pytest.raises(LawViolation):
        restrict_scalars(LAMBDA, Algebra(C, CHAIN3, const, name="const"))


@st.composite
def c_arrow_paths(draw):
    """Three composable random morphisms of C(ARROW)."""
    T = C.apply(ARROW)
    objs = T.objects_up_to(2)
    ms = []
    x = draw(st.sampled_from(objs))
    for _ in range(3):
        options = [(y, m) for y in objs for m in T.hom(x, y)]
        y, m = draw(st.sampled_from(options))
        ms.append(m)
        x = y
    return ms


@given(c_arrow_paths())
@settings(max_examples=60, deadline=None)
def test_random_composition_admissible_and_associative(path):
    T = C.apply(ARROW)
    f, g, h = path
    assert T.check_morphism(T.compose(g, f))
    assert T.compose(h, T.compose(g, f)) == T.compose(T.compose(h, g), f)
