from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import POSET_CASES
from oracles import dual_adjoint, lax_comparison, multiplication
from unimonad import fixtures as fx
from unimonad.bridge import phi_on_object
from unimonad.cli import endo_cells, monad_endo_cells
from unimonad.classical import (
    F_on_morphism,
    F_on_object,
    F_on_two_cell,
    G_on_object,
    H_on_morphism,
    H_on_object,
    H_on_two_cell,
    K_on_morphism,
    K_on_object,
    check_square,
    enumerate_dual_adjoints,
    roundtrip_arrow_side,
    roundtrip_monad_side,
    validate_adj_morphism,
    validate_adjunction,
    validate_classical_monad,
    validate_monad_morphism,
)
from unimonad.emnd import (
    DEFAULT_BUDGET,
    enumerate_emnd_morphisms,
    identity_emnd_morphism,
    identity_monad,
)
from unimonad.errors import LawViolation
from unimonad.fincat import identity_functor
from unimonad.uarr import enumerate_uarr_morphisms, identity_uarr_morphism


def _endo_cells(u, limit=6):
    return endo_cells(u, strict=False, limit=limit, budget=DEFAULT_BUDGET)


def _monad_cells(m, limit=6):
    return monad_endo_cells(m, limit, DEFAULT_BUDGET)


# -- F and G ------------------------------------------------------------------


def test_F_of_identity_arrow_on_one():
    adj = F_on_object(fx.identity_arrow(fx.one()))
    one = fx.one()
    assert adj.L == identity_functor(one) and adj.R == identity_functor(one)
    assert adj.counit["*"] == "*→*"


def test_F_of_galois_arrow():
    adj = F_on_object(fx.galois_cr())
    assert dict(adj.counit.components) == {"0": "0→0", "2": "2→2"}
    assert dict(adj.L.mor_map) == {
        "0→0": "0→0", "0→1": "0→2", "0→2": "0→2", "1→1": "2→2", "1→2": "2→2", "2→2": "2→2",
    }
    c = adj.base
    for f, g in c.composable_pairs():
        assert adj.L.ar(c.compose(f, g)) == adj.upstairs.compose(adj.L.ar(f), adj.L.ar(g))


def test_G_of_F_restores_galois_arrow():
    u = fx.galois_cr()
    back = G_on_object(F_on_object(u))
    assert back == u
    assert dict(back.zeta) == dict(u.zeta)


def test_G_transposes_unit_to_identity(builtin):
    for u in builtin.arrows.values():
        v = G_on_object(F_on_object(u))
        for a in u.base.objects:
            assert v.zeta[(u.left.ob(a), u.unit[a])] == u.upstairs.identity(u.left.ob(a))


def test_adjunction_triangle_failure():
    adj = F_on_object(fx.z2_twist())
    with pytest.raises(LawViolation):
        validate_adjunction("bad", adj.L, adj.R, adj.unit, {"•": "e"})


def test_F_of_identity_one_cell_has_identity_lambda(builtin):
    for u in builtin.arrows.values():
        am = F_on_morphism(identity_uarr_morphism(u))
        assert am.lam.is_identity()


@pytest.mark.parametrize("case", POSET_CASES[:5], ids=lambda c: c.name)
def test_lambda_matches_order_oracle(case):
    u = case.arrow
    for m in enumerate_uarr_morphisms(u, u):
        am = F_on_morphism(m)
        expected = dual_adjoint(case.elements, case.left, dict(m.J.obj_map), dict(m.V.obj_map))
        assert dict(am.lam.components) == expected


@pytest.mark.parametrize("name", ["GaloisCR", "Z2Id", "Z2Twist", "Set12Term"])
def test_dual_adjoint_is_unique(builtin, name):
    u = builtin.arrows[name]
    adj = F_on_object(u)
    for m in enumerate_uarr_morphisms(u, u):
        am = F_on_morphism(m, adj, adj)
        (only,) = enumerate_dual_adjoints(adj, adj, m.J, m.V, m.rho)
        assert dict(only.components) == dict(am.lam.components)


def test_swap_lambda_and_wrong_lambda_rejected():
    swap = fx.z2_swap()
    am = F_on_morphism(swap)
    assert am.lam["•"] == "s"
    with pytest.raises(LawViolation) as info:
        validate_adj_morphism("bad", am.source, am.target, am.J, am.V, am.rho, {"•": "e"})
    assert info.value.law == "dual-adjoint"


def test_mate_equation_on_swap_cell():
    cell = F_on_two_cell(fx.z2_swap_cell())
    assert cell.alpha["•"] == "e" and cell.beta["•"] == "s"


# -- H and K ------------------------------------------------------------------


def test_H_of_identity_monad():
    c = fx.chain3()
    cm = H_on_object(identity_monad(c))
    assert cm.S == identity_functor(c)
    assert cm.mult.is_identity() and cm.unit.is_identity()


@pytest.mark.parametrize("case", POSET_CASES, ids=lambda c: c.name)
def test_multiplication_matches_order_oracle(case):
    cm = H_on_object(phi_on_object(case.arrow))
    assert dict(cm.mult.components) == multiplication(case.elements, case.left)


def test_H_of_clo2():
    cm = H_on_object(fx.clo2())
    assert cm.S.obj_map == fx.CLO2
    assert dict(cm.mult.components) == {"0": "1→1", "1": "1→1", "2": "2→2"}


def test_mult_law_failure():
    cm = H_on_object(fx.z2_twist_monad())
    with pytest.raises(LawViolation):
        validate_classical_monad("bad", cm.S, {"•": "e"}, cm.mult)


def test_K_of_H_is_identity_on_monads(with_random):
    for m in with_random.monads.values():
        assert K_on_object(H_on_object(m)) == m


def test_K_of_identity_classical_monad():
    c = fx.chain3()
    ident = identity_functor(c)
    cm = validate_classical_monad("I", ident, {a: c.identity(a) for a in c.objects},
                                  {a: c.identity(a) for a in c.objects})
    assert K_on_object(cm) == identity_monad(c)


def test_phi_of_identity_one_cell_is_identity():
    m = fx.clo2()
    mm = H_on_morphism(identity_emnd_morphism(m))
    assert mm.phi.is_identity()


def test_lax_comparison_matches_order_oracle():
    m = fx.clo2()
    elements = list(m.base.objects)
    for w in enumerate_emnd_morphisms(m, m):
        mm = H_on_morphism(w)
        assert dict(mm.phi.components) == lax_comparison(elements, fx.CLO2, dict(w.P.obj_map))


def test_monad_morphism_compatibility_failure():
    m = fx.z2_twist_monad()
    cm = H_on_object(m)
    with pytest.raises(LawViolation) as info:
        validate_monad_morphism("bad", cm, cm, identity_functor(m.base), {"•": "s"})
    assert info.value.law == "unit-compatibility"


def test_two_cell_image_satisfies_compatibility():
    m = fx.set12_terminal_monad()
    _, cells = _monad_cells(m)
    for c in cells:
        H_on_two_cell(c)


def test_K_on_H_of_one_cells():
    for m in (fx.clo2(), fx.z2_twist_monad(), fx.set12_terminal_monad()):
        for w in enumerate_emnd_morphisms(m, m):
            assert K_on_morphism(H_on_morphism(w)) == w


# -- round trips and square ---------------------------------------------------


@pytest.mark.parametrize("name", ["IdOne", "IdChain3", "GaloisCR", "Clo2Fix", "Div6Even", "Z2Id", "Z2Twist",
                                  "Set12Term"])
def test_arrow_round_trips(builtin, name):
    u = builtin.arrows[name]
    ms, cells = _endo_cells(u)
    for r in roundtrip_arrow_side(u, ms, cells):
        assert r.passed, r.check


@pytest.mark.parametrize("name", ["Clo2", "Div6Clo", "Z2TwistMnd", "Set12TermMnd"])
def test_monad_round_trips(builtin, name):
    m = builtin.monads[name]
    ws, cells = _monad_cells(m)
    results = roundtrip_monad_side(m, ws, cells)
    assert len(results) == 2 + 2 * len(ws) + 2 * len(cells)
    for r in results:
        assert r.passed, r.check


def test_square_on_builtin_fixtures(builtin):
    results = check_square(
        arrows=builtin.arrows.values(),
        monads=builtin.monads.values(),
        umorphisms=list(builtin.umorphisms.values()) + _endo_cells(builtin.arrows["GaloisCR"])[0],
        ucells=list(builtin.ucells.values()) + _endo_cells(builtin.arrows["Z2Id"])[1],
        emorphisms=_monad_cells(builtin.monads["Clo2"])[0],
        ecells=_monad_cells(builtin.monads["Set12TermMnd"])[1],
    )
    failed = [r.check for r in results if not r.passed]
    assert not failed
    labels = {r.check.split()[0] for r in results}
    assert labels == {"H.phi=phiE.F", "phi.G=K.phiE", "F.psi=psiE.H", "psi.K=G.psiE"}


@given(st.sampled_from(list(fx.RANDOM_SEEDS)))
def test_random_round_trips_and_square(seed):
    u, m, _ = fx.random_closure_instance(seed)
    ms, cells = _endo_cells(u, limit=3)
    ws, ecells = _monad_cells(m, limit=3)
    results = (
        roundtrip_arrow_side(u, ms, cells)
        + roundtrip_monad_side(m, ws, ecells)
        + check_square([u], [m], ms, cells, ws, ecells)
    )
    assert all(r.passed for r in results)


def test_composite_pairs_cover_each_direction():
    u = fx.galois_cr()
    results = check_square(arrows=[u], monads=[phi_on_object(u)])
    assert [r.check.split()[0] for r in results] == [
        "H.phi=phiE.F", "phi.G=K.phiE", "F.psi=psiE.H", "psi.K=G.psiE",
    ]
    assert all(r.passed for r in results)
