from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import POSET_CASES
from oracles import algebra_table, algebras_by_structure_map, fixed_points, is_closure, monad_extension
from unimonad import fixtures as fx
from unimonad.bridge import phi_on_object
from unimonad.emnd import (
    Algebra,
    check_algebra_morphism,
    emnd_compose_1cells,
    emnd_horizontal,
    emnd_horizontal_other_order,
    emnd_vertical,
    emnd_whisker_back,
    emnd_whisker_forward,
    enumerate_algebras,
    enumerate_emnd_morphisms,
    enumerate_emnd_two_cells,
    identity_emnd_morphism,
    identity_emnd_two_cell,
    identity_monad,
    validate_algebra,
    validate_emnd_two_cell,
    validate_extensive_monad,
)
from unimonad.errors import LawViolation, MalformedSpec, NotAlgebraMorphism, SearchBudgetExceeded, ShapeMismatch


def _closure_of(m):
    return {a: m.s(a) for a in m.base.objects}


def _rel(cat):
    return {(a, b) for a in cat.objects for b in cat.objects if cat.hom(a, b)}


def test_identity_monad_on_chain3_is_valid():
    m = identity_monad(fx.chain3())
    assert validate_extensive_monad("Id", m.base, m.S, m.unit, m.ext) == m


def test_clo2_matches_order_oracle():
    m = fx.clo2()
    c = m.base
    assert is_closure(list(c.objects), _rel(c), fx.CLO2)
    assert dict(m.ext) == monad_extension(list(c.objects), _rel(c), fx.CLO2)
    assert validate_extensive_monad("Clo2", c, m.S, m.unit, m.ext) == m


def test_redirected_extension_breaks_law_b():
    m = fx.clo2()
    ext = dict(m.ext)
    ext[("0", "0", "0→1")] = "0→0"
    with pytest.raises(LawViolation) as info:
        validate_extensive_monad("Bad", m.base, m.S, m.unit, ext)
    assert info.value.law == "b"
    assert info.value.witness == "0→1"


def test_incomplete_monad_is_malformed():
    m = fx.clo2()
    ext = dict(m.ext)
    del ext[("0", "0", "0→1")]
    with pytest.raises(MalformedSpec):
        validate_extensive_monad("Bad", m.base, m.S, m.unit, ext)
    with pytest.raises(MalformedSpec):
        validate_extensive_monad("Bad", m.base, m.S, {"0": "0→1"}, m.ext)


def test_constant_extension_on_group_breaks_laws():
    # the twisted unit is fine; a constant extension table is not
    m = fx.z2_twist_monad()
    ext = {key: "e" for key in m.ext}
    with pytest.raises(LawViolation):
        validate_extensive_monad("Bad", m.base, m.S, m.unit, ext)


@pytest.mark.parametrize("case", POSET_CASES, ids=lambda c: c.name)
def test_phi_of_poset_arrows_matches_closure_oracle(case):
    m = phi_on_object(case.arrow)
    assert dict(m.ext) == monad_extension(case.elements, case.rel, case.left)


def test_algebras_of_identity_monad_on_one():
    em = enumerate_algebras(identity_monad(fx.one()))
    assert list(em.algebras) == ["*#0"]
    assert len(em.category.morphisms) == 1


def test_clo2_algebras_are_fixed_points():
    m = fx.clo2()
    em = enumerate_algebras(m)
    c = m.base
    assert sorted(a.carrier for a in em.algebras.values()) == fixed_points(list(c.objects), fx.CLO2) == ["1", "2"]
    for alg in em.algebras.values():
        assert dict(alg.ext) == algebra_table(list(c.objects), _rel(c), fx.CLO2, alg.carrier)
    assert em.category.hom("1#0", "2#0") == ("1→2:1#0>2#0",)
    assert em.category.hom("2#0", "1#0") == ()
    assert em.algebras[em.free.ob("0")].carrier == "1"


@pytest.mark.parametrize("name", ["Clo2", "Div6Clo", "Z2TwistMnd", "Set12TermMnd"])
def test_algebra_enumeration_matches_structure_map_route(builtin, name):
    m = builtin.monads[name]
    em = enumerate_algebras(m)
    found = sorted((a.carrier, sorted(a.ext.items())) for a in em.algebras.values())
    oracle = sorted((n, sorted(t.items())) for n, t in algebras_by_structure_map(m))
    assert found == oracle


def test_twisted_group_monad_has_one_algebra():
    em = enumerate_algebras(fx.z2_twist_monad())
    (alg,) = em.algebras.values()
    assert dict(alg.ext) == {"e": "s", "s": "e"}


def test_budget_is_enforced():
    with pytest.raises(SearchBudgetExceeded):
        enumerate_algebras(fx.clo2(), budget=1)


def test_algebra_validation_and_morphism_check():
    m = fx.clo2()
    table = {"0→2": "2→2", "1→2": "1→2", "2→2": "2→2"}
    with pytest.raises(LawViolation) as info:
        validate_algebra("bad", m, "2", table)
    assert info.value.law == "i" and info.value.witness == "0→2"
    em = enumerate_algebras(m)
    one, two = em.algebras["1#0"], em.algebras["2#0"]
    check_algebra_morphism(one, two, "1→2")
    with pytest.raises(ShapeMismatch):
        check_algebra_morphism(two, one, "1→2")


def test_morphism_condition_is_checked_against_tables():
    m = identity_monad(fx.z2())
    plain = Algebra("plain", m, "•", {"e": "e", "s": "s"})
    twisted = Algebra("twisted", m, "•", {"e": "s", "s": "e"})
    check_algebra_morphism(plain, plain, "s")
    with pytest.raises(NotAlgebraMorphism):
        check_algebra_morphism(plain, twisted, "e")


# -- 1-cells ------------------------------------------------------------------


def _between(monads):
    for s, t in itertools.product(monads, repeat=2):
        yield s, t, enumerate_emnd_morphisms(s, t)


def _closure_monads():
    return [fx.clo2(), phi_on_object(fx.galois_cr()), fx.closure_monad("Id3", fx.chain3(), {a: a for a in "012"})]


def test_poset_one_cells_have_the_unique_witness_tables():
    for s, t, ms in _between(_closure_monads()):
        d, c_t = t.base, _closure_of(t)
        for m in ms:
            for (a, p), v in m.ext.items():
                assert v == f"{c_t[d.src(p)]}→{m.psa(a)}"


def test_composition_is_unital_and_matches_transport():
    monads = _closure_monads()
    for s, t, ms in _between(monads):
        for m in ms:
            assert emnd_compose_1cells(m, identity_emnd_morphism(s)) == m
            assert emnd_compose_1cells(identity_emnd_morphism(t), m) == m
    clo2, gal, _ = monads
    for w1 in enumerate_emnd_morphisms(clo2, gal):
        for w2 in enumerate_emnd_morphisms(gal, clo2):
            comp = emnd_compose_1cells(w2, w1)
            for (a, p), v in comp.ext.items():
                assert v == f"{fx.CLO2[clo2.base.src(p)]}→{comp.psa(a)}"


def test_composition_is_associative():
    for m in (fx.clo2(), fx.z2_twist_monad(), fx.set12_terminal_monad()):
        ms = enumerate_emnd_morphisms(m, m)[:4]
        for a, b, c in itertools.product(ms, repeat=3):
            assert emnd_compose_1cells(c, emnd_compose_1cells(b, a)) == emnd_compose_1cells(
                emnd_compose_1cells(c, b), a
            )


def test_composition_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        emnd_compose_1cells(identity_emnd_morphism(fx.clo2()), identity_emnd_morphism(fx.z2_twist_monad()))


# -- 2-cells ------------------------------------------------------------------


def _cells(m, limit=5):
    ms = enumerate_emnd_morphisms(m, m)[:limit]
    return ms, [c for a in ms for b in ms for c in enumerate_emnd_two_cells(a, b)]


def test_two_cell_validation_on_group_monad():
    one = identity_emnd_morphism(identity_monad(fx.z2()))
    cell = validate_emnd_two_cell("s", one, one, {"•": "s"})
    assert cell.theta["•"] == "s"


@pytest.mark.parametrize("name", ["Clo2", "Z2TwistMnd", "Set12TermMnd"])
def test_whiskering_identity_and_both_horizontal_orders(builtin, name):
    m = builtin.monads[name]
    ms, cells = _cells(m)
    ident = identity_emnd_morphism(m)
    for c in cells:
        assert emnd_whisker_forward(ident, c) == c
        assert emnd_whisker_back(c, ident) == c
        assert emnd_vertical(c, identity_emnd_two_cell(c.source)) == c
    for c1, c2 in itertools.product(cells[:10], repeat=2):
        assert emnd_horizontal(c2, c1) == emnd_horizontal_other_order(c2, c1)


def test_vertical_composites_stay_algebra_morphisms(builtin):
    m = builtin.monads["Set12TermMnd"]
    _, cells = _cells(m)
    count = 0
    for c1, c2 in itertools.product(cells, repeat=2):
        if c1.target == c2.source:
            v = emnd_vertical(c2, c1)
            validate_emnd_two_cell("v", v.source, v.target, v.theta)
            count += 1
    assert count > 0


def test_vertical_shape_mismatch(builtin):
    m = builtin.monads["Clo2"]
    _, cells = _cells(m)
    c = next(c for c in cells if c.source != c.target)
    with pytest.raises(ShapeMismatch):
        emnd_vertical(c, c)


@given(st.sampled_from(list(fx.RANDOM_SEEDS)))
def test_random_closure_algebras(seed):
    _, m, closure = fx.random_closure_instance(seed)
    em = enumerate_algebras(m)
    c = m.base
    assert sorted(a.carrier for a in em.algebras.values()) == sorted(fixed_points(list(c.objects), closure))
    assert all(dict(a.ext) == algebra_table(list(c.objects), _rel(c), closure, a.carrier)
               for a in em.algebras.values())
