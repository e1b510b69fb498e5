import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lnlcat.catalog import ARROW, CHAIN3, DIAMOND, ONE, PARALLEL, SPAN, TEST_SET, TWO, chain, cyclic_groupoid, poset
from lnlcat.fincat import (
    FinCat,
    Functor,
    NatTransform,
    compose_functors,
    constant_functor,
    enumerate_functors,
    enumerate_transforms,
    identity_functor,
    identity_transform,
    validate_category,
    validate_functor,
    validate_nat_transform,
    vertical,
)
from oracles import monotone_maps


@pytest.mark.parametrize("cat", TEST_SET + [DIAMOND, cyclic_groupoid()], ids=lambda c: c.name)
def test_catalog_categories_are_valid(cat):
    assert validate_category(cat).ok


def test_arrow_with_uu_entry_is_structural_error():
    bad = ARROW.with_table({("u", "u"): "u"})
    rep = validate_category(bad)
    assert not rep.ok
    assert "non-composable" in rep.laws()
    assert rep.errors


def test_missing_composite_reported():
    cat = FinCat(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")], {})
    rep = validate_category(cat)
    assert "missing-composite" in rep.laws()


def test_duplicate_and_dangling_names():
    rep = validate_category(FinCat(["a", "a"], [("f", "a", "z")]))
    assert {"duplicate-object", "dangling-object"} <= rep.laws()


def test_broken_associativity_triple_is_the_only_one_reported():
    good = cyclic_groupoid()
    table = dict(good.table)
    # flip the parity of one composite
    key = ("0>1:0", "1>2:0")
    table[key] = "0>2:1"
    bad = good.with_table(table)
    rep = validate_category(bad)
    assert rep.laws() == {"associativity"}
    # brute-force re-check over all composable triples
    failing = set()
    for f in bad.morphisms():
        for g in bad.morphisms():
            if bad.cod(f) != bad.dom(g):
                continue
            for h in bad.morphisms():
                if bad.cod(g) != bad.dom(h):
                    continue
                if bad.compose(h, bad.compose(g, f)) != bad.compose(bad.compose(h, g), f):
                    failing.add((f, g, h))
    assert len(rep.findings) == len(failing) > 0
    assert {f.witness for f in rep.findings} == {repr(t) for t in failing}


def test_small_nonassociative_monoid():
    cat = FinCat(["*"], [("a", "*", "*"), ("b", "*", "*")],
                 {("a", "a"): "b", ("b", "b"): "a", ("a", "b"): "a", ("b", "a"): "a"})
    rep = validate_category(cat)
    assert rep.laws() == {"associativity"}


def test_identity_and_constant_functors_valid():
    assert validate_functor(identity_functor(ARROW)).ok
    assert validate_functor(constant_functor(ARROW, ONE, "•")).ok


def test_boundary_mismatch_reported():
    F = Functor.from_tables(ARROW, ARROW, {"0": "0", "1": "1"}, {"u": "id_0"}, name="bad")
    rep = validate_functor(F)
    assert "boundary" in rep.laws()


def test_poset_components_always_natural():
    F = Functor.from_tables(ARROW, CHAIN3, {"0": "0", "1": "1"}, {"u": "0<1"})
    G = Functor.from_tables(ARROW, CHAIN3, {"0": "1", "1": "2"}, {"u": "1<2"})
    t = NatTransform.from_table(F, G, {"0": "0<1", "1": "1<2"})
    assert validate_nat_transform(t).ok


def test_parallel_pair_square_breaks():
    F = Functor.from_tables(ARROW, PARALLEL, {"0": "0", "1": "1"}, {"u": "p"})
    G = Functor.from_tables(ARROW, PARALLEL, {"0": "0", "1": "1"}, {"u": "q"})
    # brute force: no component family is natural, since p ≠ q
    assert list(enumerate_transforms(F, G)) == []
    t = NatTransform.from_table(F, G, {"0": "id_0", "1": "id_1"})
    rep = validate_nat_transform(t)
    assert rep.laws() == {"naturality"}
    assert "u" in rep.findings[0].witness


def test_identity_transform_valid():
    F = Functor.from_tables(SPAN, CHAIN3, {"m": "0", "l": "1", "r": "2"}, {"a": "0<1", "b": "0<2"})
    assert validate_functor(F).ok
    assert validate_nat_transform(identity_transform(F)).ok


@pytest.mark.parametrize("n,m", [(1, 3), (2, 3), (3, 3), (2, 2)])
def test_functor_enumeration_between_chains(n, m):
    assert len(list(enumerate_functors(chain(n), chain(m)))) == monotone_maps(n, m)


def test_functors_from_one_pick_an_object():
    assert len(list(enumerate_functors(ONE, SPAN))) == 3
    assert len(list(enumerate_functors(TWO, PARALLEL))) == 4


def test_composites_of_valid_functors_are_valid():
    for F in enumerate_functors(ARROW, SPAN):
        for G in enumerate_functors(SPAN, CHAIN3):
            assert validate_functor(compose_functors(G, F)).ok


def test_vertical_composition_of_valid_transforms():
    fs = list(enumerate_functors(ARROW, CHAIN3))
    for F in fs:
        for G in fs:
            for s in enumerate_transforms(F, G):
                for H in fs:
                    for t in enumerate_transforms(G, H):
                        assert validate_nat_transform(vertical(t, s)).ok


def test_json_roundtrip():
    doc = json.loads(json.dumps(SPAN.to_json()))
    back = FinCat.from_json(doc)
    assert back.objects() == SPAN.objects()
    assert back.arrow_list == SPAN.arrow_list
    assert validate_category(back).ok


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 4))
    # a random sub-order of the total order on range(n), closed under transitivity
    pairs = {(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())}
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    return poset(range(n), lambda a, b: a == b or (int(a), int(b)) in pairs, name="P")


@given(random_posets())
@settings(max_examples=40, deadline=None)
def test_random_posets_validate_and_compose_inside_table(cat):
    assert validate_category(cat).ok
    for x in cat.objects():
        for y in cat.objects():
            for f in cat.hom(x, y):
                for z in cat.objects():
                    for g in cat.hom(y, z):
                        assert cat.compose(g, f) in cat.hom(x, z)
