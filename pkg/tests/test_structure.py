import itertools
import json
import os

import pytest

from lnlcat.catalog import CHAIN3, DIAMOND, ONE
from lnlcat.fincat import Functor, check_functors_equal
from lnlcat.instances import STRUCTURES, chain3_bad_structure, chain3_structure, thin_functor
from lnlcat.lnlmonad import LIN, NONLIN, Q, build_structure_maps, tagged
from lnlcat.report import CheckReport, LawViolation
from lnlcat.semialg import check_left_semi_algebra
from lnlcat.seqmonads import C, SeqMorphism
from lnlcat.structure import (
    QAlgebra,
    algebra_from_structure,
    check_evaluator_natural,
    check_fixpoint_products,
    check_mediating_equations,
    check_q_algebra,
    check_structure_map,
    check_structure_object,
    evaluator,
    free_q_algebra,
    load_structure,
    perturbation_survivors,
    require_structure,
    roundtrip_algebra,
    roundtrip_structure,
    structure_from_algebra,
    structure_from_json,
)
from conftest import DATA

GOOD = ["chain3", "chain3-meet", "diamond"]


@pytest.mark.parametrize("key", GOOD)
def test_good_structures_pass(key):
    rep = check_structure_object(STRUCTURES[key]())
    assert rep.ok, str(rep)


def test_bad_deflation_fails_at_unit():
    rep = check_structure_object(chain3_bad_structure())
    assert not rep.ok
    assert "f(I)=I" in rep.laws()
    with pytest.raises(LawViolation):
        require_structure(chain3_bad_structure())


def test_chain3_cartesian_structure_is_deflated_min():
    s = chain3_structure()
    z = s.cartesian_structure()
    for x in C.apply(CHAIN3).objects_up_to(3):
        assert z.obj(x) == s.deflate_obj(min(x, default="2"))
    assert check_left_semi_algebra(s.left_semi(), 2).ok


def test_fixpoint_products():
    assert check_fixpoint_products(chain3_structure()).ok
    assert check_fixpoint_products(STRUCTURES["diamond"]()).ok


def test_evaluator_values():
    x = evaluator(chain3_structure())
    assert x.obj((("1", LIN), ("1", NONLIN))) == "0"
    for a in CHAIN3.objects():
        assert x.obj(((a, LIN),)) == a
    meet = evaluator(STRUCTURES["diamond"]())
    for tags in itertools.product((LIN, NONLIN), repeat=2):
        assert meet.obj((("a", tags[0]), ("b", tags[1]))) == "bot"


@pytest.mark.parametrize("key", GOOD)
def test_q_algebra_and_mediating_equations(key):
    s = STRUCTURES[key]()
    q = algebra_from_structure(s)
    assert check_q_algebra(q, 2).ok
    assert check_mediating_equations(s, q, 2).ok


@pytest.mark.parametrize("key", GOOD)
def test_structure_roundtrip(key):
    rep = roundtrip_structure(STRUCTURES[key]())
    assert rep.ok, str(rep)


def test_chain3_algebra_roundtrip():
    assert roundtrip_algebra(algebra_from_structure(chain3_structure()), 2).ok


def test_free_q_algebra_over_one():
    q = free_q_algebra(ONE)
    s = structure_from_algebra(q)
    QO = Q.apply(ONE)
    maps = build_structure_maps(ONE)
    objs = QO.objects_up_to(2)
    for x, y in itertools.product(objs, repeat=2):
        assert s.tensor_obj(x, y) == x + y
    for x in QO.objects_up_to(3):
        assert s.deflate_obj(x) == maps.comonad.obj(x)
        assert s.counit(x) == maps.alpha.at(x)
    assert roundtrip_algebra(q, 2).ok


def test_terminal_algebra_gives_trivial_structure():
    QO = Q.apply(ONE)
    collapse = Functor(QO, ONE, lambda x: "•", lambda m: "id_•", name="collapse")
    q = QAlgebra(ONE, collapse, name="collapse")
    assert check_q_algebra(q, 2).ok
    s = structure_from_algebra(q)
    assert s.unit == "•" and s.tensor_obj("•", "•") == "•" and s.deflate_obj("•") == "•"
    assert check_structure_object(s).ok


def test_perturbation_has_no_survivors():
    out = perturbation_survivors(chain3_structure(), 2)
    assert out["tried"] > 1000
    assert out["survivors"] == 0


def test_gather_choice_does_not_matter():
    """Precomposing with a tag-preserving permutation changes the gather order but not the value."""
    s = structure_from_algebra(free_q_algebra(ONE))
    x = evaluator(s)
    QO = Q.apply(ONE)
    QQ = Q.apply(QO)
    checked = 0
    for m in itertools.islice((m for a in QQ.objects_up_to(2) for b in QQ.objects_up_to(2) for m in QQ.hom(a, b)),
                              400):
        n = len(m.src)
        for perm in itertools.permutations(range(n)):
            permuted = tuple(m.src[i] for i in perm)
            pi = SeqMorphism(m.src, permuted, perm, tuple(QO.identity(e[0]) for e in permuted))
            inv = tuple(perm.index(i) for i in range(n))
            rest = SeqMorphism(permuted, m.tgt, tuple(inv[i] for i in m.reindex), m.components)
            assert QQ.compose(rest, pi) == m
            assert x.mor(m) == QO.compose(x.mor(rest), x.mor(pi))
            checked += 1
    assert checked > 100


def test_deflation_is_a_structure_map_and_evaluator_is_natural():
    s = chain3_structure()
    f = thin_functor(CHAIN3, CHAIN3, s.deflate_obj, name="f")
    assert check_structure_map(f, s, s).ok
    assert check_evaluator_natural(f, s, s).ok


def test_non_structure_map_detected():
    s = chain3_structure()
    shift = thin_functor(CHAIN3, CHAIN3, {"0": "1", "1": "1", "2": "2"}.__getitem__, name="shift")
    assert not check_structure_map(shift, s, s).ok
    assert not check_evaluator_natural(shift, s, s).ok


def test_meet_identity_into_diamond_structure():
    s = STRUCTURES["diamond"]()
    ident = thin_functor(DIAMOND, DIAMOND, lambda v: v, name="id")
    assert check_structure_map(ident, s, s).ok


def test_load_from_json_matches_builtin():
    loaded = load_structure(os.path.join(DATA, "chain3_structure.json"))
    builtin = chain3_structure()
    x, y = evaluator(loaded), evaluator(builtin)
    rep = CheckReport()
    check_functors_equal(x, y, Q.apply(CHAIN3).objects_up_to(2), rep, "same")
    assert rep.ok


def test_json_roundtrip():
    s = chain3_structure()
    again = structure_from_json(json.loads(json.dumps(s.to_json())))
    assert again.to_tables() == s.to_tables()


def test_alpha_evaluates_to_counit():
    s = chain3_structure()
    x = evaluator(s)
    maps = build_structure_maps(CHAIN3)
    for a in CHAIN3.objects():
        assert x.mor(maps.beta.at((a,))) == s.counit(a)
    assert x.obj(tagged(("1", "2"), NONLIN)) == "0"
