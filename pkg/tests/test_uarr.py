from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import POSET_CASES
from oracles import galois_pairs_agree, transposes
from unimonad import fixtures as fx
from unimonad.errors import AmbiguousWitness, CylinderViolation, NoWitness, NotInvertible, ShapeMismatch
from unimonad.fincat import identity_functor, validate_functor
from unimonad.uarr import (
    compose_uarr_morphisms,
    compute_zeta,
    enumerate_uarr_morphisms,
    enumerate_uarr_two_cells,
    identity_uarr_morphism,
    identity_uarr_two_cell,
    uarr_horizontal,
    uarr_horizontal_other_order,
    uarr_vertical,
    uarr_whisker_back,
    uarr_whisker_forward,
    validate_uarr_morphism,
    validate_uarr_two_cell,
    validate_universal_arrow,
    witness_histogram,
)


def test_galois_transpose_at_one_two():
    u = fx.galois_cr()
    assert compute_zeta(u.right, u.left, u.unit, "1", "2", "1→2") == "2→2"


@pytest.mark.parametrize("case", POSET_CASES[:5], ids=lambda c: c.name)
def test_transpose_tables_match_order_oracle(case):
    u = case.arrow
    assert galois_pairs_agree(case.elements, case.rel, case.left, case.upstairs)
    assert dict(u.zeta) == transposes(case.elements, case.rel, case.left, case.upstairs)


def test_transpose_of_unit_is_identity(builtin):
    for u in builtin.arrows.values():
        for a in u.base.objects:
            la = u.left.ob(a)
            assert u.zeta[(la, u.unit[a])] == u.upstairs.identity(la)


def test_zeta_triangle_holds_everywhere(builtin):
    for u in builtin.arrows.values():
        for (xo, v), w in u.zeta.items():
            a = u.base.src(v)
            assert u.base.compose(u.right.ar(w), u.unit[a]) == v


def test_identity_arrow_on_one():
    u = fx.identity_arrow(fx.one())
    assert dict(u.zeta) == {("*", "*→*"): "*→*"}


def test_constant_right_part_has_no_unit_at_top():
    c, one = fx.two(), fx.one()
    R = validate_functor("R", one, c, {"*": "0"}, {"*→*": "0→0"})
    with pytest.raises(NoWitness) as info:
        validate_universal_arrow("Bad", c, one, R, {"0": "*", "2": "*"}, {"0": "0→0"})
    assert info.value.triple == ("2",)
    assert info.value.candidates == []


def test_constant_right_part_into_chain3_fails_at_first_uncovered_object():
    c, one = fx.chain3(), fx.one()
    R = validate_functor("R", one, c, {"*": "0"}, {"*→*": "0→0"})
    with pytest.raises(NoWitness) as info:
        validate_universal_arrow("Bad", c, one, R, {a: "*" for a in c.objects}, {"0": "0→0"})
    assert info.value.triple[0] in ("1", "2")
    assert info.value.candidates == []


def test_galois_with_wrong_left_value_has_no_witness():
    c, x = fx.chain3(), fx.two()
    incl = fx.monotone_functor("incl", x, c, {"0": "0", "2": "2"})
    unit = {"0": "0→0", "1": "1→2", "2": "2→2"}
    with pytest.raises(NoWitness) as info:
        validate_universal_arrow("Bad", c, x, incl, {"0": "0", "1": "0", "2": "2"}, unit)
    assert info.value.triple == ("1", "2", "1→2")
    assert info.value.candidates == ["0→2"]


def test_collapsing_right_part_is_ambiguous():
    z, one = fx.z2(), fx.one()
    R = validate_functor("R", z, one, {"•": "*"}, {"e": "*→*", "s": "*→*"})
    with pytest.raises(AmbiguousWitness) as info:
        validate_universal_arrow("Amb", one, z, R, {"*": "•"}, {"*": "*→*"})
    assert info.value.candidates == ["e", "s"]


def test_witness_histogram_is_all_ones(with_random):
    for u in with_random.arrows.values():
        hist = witness_histogram(u)
        assert set(hist) == {1}
        assert hist[1] == len(u.zeta)


def test_twisted_arrow_transposes_by_s():
    u = fx.z2_twist()
    assert dict(u.zeta) == {("•", "e"): "s", ("•", "s"): "e"}


# -- 1-cells ------------------------------------------------------------------


def test_rho_must_be_invertible():
    u = fx.identity_arrow(fx.chain3())
    c = u.base
    const = validate_functor("k0", c, c, {a: "0" for a in c.objects}, {f: "0→0" for f in c.morphisms})
    with pytest.raises(NotInvertible):
        validate_uarr_morphism("m", u, u, const, identity_functor(c), {a: f"0→{a}" for a in c.objects})


def test_stored_inverse_is_checked():
    u = fx.z2_arrow()
    ident = identity_functor(u.base)
    with pytest.raises(NotInvertible):
        validate_uarr_morphism("m", u, u, ident, ident, {"•": "s"}, {"•": "e"})


def test_composite_rho_and_inverse():
    swap = fx.z2_swap()
    twice = compose_uarr_morphisms(swap, swap)
    assert twice.rho["•"] == "e"
    assert twice.rho_inv["•"] == "e"


@pytest.mark.parametrize("name", ["GaloisCR", "Z2Id", "Set12Term"])
def test_composition_is_unital_and_associative(builtin, name):
    u = builtin.arrows[name]
    ms = enumerate_uarr_morphisms(u, u, strict=False)
    ident = identity_uarr_morphism(u)
    for m in ms:
        assert compose_uarr_morphisms(m, ident) == m
        assert compose_uarr_morphisms(ident, m) == m
    for a, b, c in itertools.product(ms[:4], repeat=3):
        assert compose_uarr_morphisms(c, compose_uarr_morphisms(b, a)) == compose_uarr_morphisms(
            compose_uarr_morphisms(c, b), a
        )


def test_strict_enumeration_has_identity_rho(builtin):
    u = builtin.arrows["Z2Id"]
    strict = enumerate_uarr_morphisms(u, u, strict=True)
    loose = enumerate_uarr_morphisms(u, u, strict=False)
    assert all(m.is_strict() for m in strict)
    assert len(strict) == 2 and len(loose) == 4


# -- 2-cells ------------------------------------------------------------------


def test_cylinder_violation():
    u = fx.z2_arrow()
    with pytest.raises(CylinderViolation) as info:
        validate_uarr_two_cell("bad", fx.z2_swap(u), identity_uarr_morphism(u), {"•": "e"}, {"•": "e"})
    assert info.value.witness == "•"


def test_swap_cell_is_valid():
    cell = fx.z2_swap_cell()
    assert cell.alpha["•"] == "e" and cell.beta["•"] == "s"


def _all_cells(u, strict=False, limit=5):
    ms = enumerate_uarr_morphisms(u, u, strict=strict)[:limit]
    return ms, [c for a in ms for b in ms for c in enumerate_uarr_two_cells(a, b)]


@pytest.mark.parametrize("name", ["GaloisCR", "Z2Id", "Div6Even"])
def test_vertical_with_identity_and_componentwise(builtin, name):
    u = builtin.arrows[name]
    _, cells = _all_cells(u)
    for c in cells:
        assert uarr_vertical(c, identity_uarr_two_cell(c.source)) == c
        assert uarr_vertical(identity_uarr_two_cell(c.target), c) == c
    for c1, c2 in itertools.product(cells, repeat=2):
        if c1.target == c2.source:
            v = uarr_vertical(c2, c1)
            x2 = u.upstairs
            for xo in x2.objects:
                assert v.beta[xo] == x2.compose(c2.beta[xo], c1.beta[xo])


@pytest.mark.parametrize("name", ["GaloisCR", "Z2Id", "Clo2Fix"])
def test_whiskering_by_identity_and_both_horizontal_orders(builtin, name):
    u = builtin.arrows[name]
    ms, cells = _all_cells(u)
    ident = identity_uarr_morphism(u)
    for c in cells:
        assert uarr_whisker_forward(ident, c) == c
        assert uarr_whisker_back(c, ident) == c
    for c1, c2 in itertools.product(cells[:12], repeat=2):
        assert uarr_horizontal(c2, c1) == uarr_horizontal_other_order(c2, c1)


def test_horizontal_of_identities_is_identity(builtin):
    u = builtin.arrows["GaloisCR"]
    i = identity_uarr_two_cell(identity_uarr_morphism(u))
    h = uarr_horizontal(i, i)
    assert h.alpha.is_identity() and h.beta.is_identity()


def test_vertical_shape_mismatch(builtin):
    u = builtin.arrows["Z2Id"]
    ms, cells = _all_cells(u)
    c1 = next(c for c in cells if c.source != c.target)
    with pytest.raises(ShapeMismatch):
        uarr_vertical(c1, c1)


@given(st.sampled_from(range(len(fx.RANDOM_SEEDS))), st.data())
def test_random_arrow_cells_compose(seed, data):
    u, _, _ = fx.random_closure_instance(seed)
    ms = enumerate_uarr_morphisms(u, u)
    m1, m2 = data.draw(st.sampled_from(ms)), data.draw(st.sampled_from(ms))
    cells = enumerate_uarr_two_cells(m1, m2)
    back = enumerate_uarr_two_cells(m2, m1)
    for c in cells:
        for d in back:
            assert uarr_horizontal(d, c) == uarr_horizontal_other_order(d, c)
