from __future__ import annotations

from pathlib import Path

import pytest

from unimonad import bridge, classical as cl, fixtures as fx
from unimonad.cli import DERIVATIONS, UsageError, cmd_derive, derive, fixture_text
from unimonad.emnd import enumerate_algebras, enumerate_emnd_morphisms, enumerate_emnd_two_cells
from unimonad.errors import LawViolation, MalformedSpec, ParseError, UnknownEntity
from unimonad.specfile import DependencyFailed, Workspace, kind_of, split_blocks, write_entities

ROOT = Path(__file__).resolve().parents[1]
SHIPPED = ROOT / "fixtures"


def _reparsed(entity):
    ws = Workspace.from_text(write_entities([entity]))
    kind = kind_of(entity)
    return [o for o in ws.entries[kind].values() if o == entity]


def _sample_entities():
    u = fx.galois_cr()
    m = fx.clo2()
    w = enumerate_emnd_morphisms(m, m)[1]
    ecell = next(c for a in enumerate_emnd_morphisms(m, m) for b in enumerate_emnd_morphisms(m, m)
                 for c in enumerate_emnd_two_cells(a, b) if a != b)
    swap, swap_cell = fx.z2_swap(), fx.z2_swap_cell()
    alg = next(iter(enumerate_algebras(m).algebras.values()))
    return {
        "category": fx.div6(),
        "functor": u.right,
        "nat": cl.F_on_object(u).counit,
        "uarrow": u,
        "emonad": m,
        "algebra": alg,
        "cmonad": cl.H_on_object(m),
        "adjunction": cl.F_on_object(u),
        "umorphism": swap,
        "emorphism": w,
        "cmorphism": cl.H_on_morphism(w),
        "amorphism": cl.F_on_morphism(swap),
        "ucell": swap_cell,
        "ecell": ecell,
        "ccell": cl.H_on_two_cell(ecell),
        "acell": cl.F_on_two_cell(swap_cell),
    }


SAMPLES = _sample_entities()


@pytest.mark.parametrize("kind", sorted(SAMPLES))
def test_write_then_parse_is_extensionally_equal(kind):
    entity = SAMPLES[kind]
    assert kind_of(entity) == kind
    assert _reparsed(entity)


def test_written_text_is_deterministic():
    entities = list(SAMPLES.values())
    assert write_entities(entities) == write_entities(entities)


def test_shared_dependencies_are_written_once():
    text = write_entities([fx.galois_cr(), fx.clo2()])
    assert text.count("category Chain3\n") == 1


def test_hand_written_file_matches_constructed_entities():
    ws = Workspace.from_files([SHIPPED / "bool_closure.spec"])
    cat = fx.chain("Bool", ["f", "t"])
    closure = {"f": "t", "t": "t"}
    assert ws.lookup("category", "Bool") == cat
    assert ws.lookup("emonad", "ToTop") == fx.closure_monad("ToTop", cat, closure)
    assert ws.lookup("uarrow", "Reflect") == fx.closure_arrow("Reflect", cat, closure)
    assert ws.lookup("algebra", "OnTop").carrier == "t"


@pytest.mark.parametrize("name,builtin", [("builtin.spec", True), ("random.spec", False)])
def test_shipped_fixture_files_are_current(name, builtin):
    seeds = () if builtin else fx.RANDOM_SEEDS
    assert (SHIPPED / name).read_text(encoding="utf-8") == fixture_text(seeds, builtin=builtin)


def test_shipped_files_load_to_the_fixture_entities(builtin):
    ws = Workspace.from_files([SHIPPED / "builtin.spec"])
    for name, u in builtin.arrows.items():
        assert ws.lookup("uarrow", name) == u
    for name, m in builtin.monads.items():
        assert ws.lookup("emonad", name) == m


def test_hash_inside_identifiers_is_not_a_comment():
    text = "category P  # trailing comment\n  object 1#0\n  morphism f#1 : 1#0 -> 1#0\n  identity 1#0 = f#1\n" \
           "  compose f#1 . f#1 = f#1\n"
    c = Workspace.from_text(text).lookup("category", "P")
    assert c.objects == ("1#0",)
    assert c.identity("1#0") == "f#1"


# -- errors -------------------------------------------------------------------


def test_bad_header_reports_line():
    with pytest.raises(ParseError) as info:
        Workspace.from_text("\n\nuarrow U : C\n")
    assert info.value.line == 3


def test_body_before_header():
    with pytest.raises(ParseError):
        split_blocks("  object a\n")


def test_unknown_header_keyword():
    with pytest.raises(ParseError):
        split_blocks("categroy C\n")


def test_unknown_reference_is_parse_error():
    with pytest.raises(ParseError) as info:
        Workspace.from_text("functor F : Nope -> Nope\n")
    assert "Nope" in str(info.value)


def test_duplicate_definition():
    text = write_entities([fx.one()])
    with pytest.raises(ParseError):
        Workspace.from_text(text + "\n" + text)


def test_unexpected_directive():
    with pytest.raises(ParseError):
        Workspace.from_text(write_entities([fx.clo2()]).replace("  unit 0", "  unti 0", 1))


def test_lookup_of_missing_entity():
    ws = Workspace.from_text(write_entities([fx.one()]))
    with pytest.raises(UnknownEntity):
        ws.lookup("emonad", "Missing")
    with pytest.raises(UnknownEntity):
        ws.find("Missing")


def test_law_failure_raises_in_strict_mode_and_is_recorded_leniently():
    text = write_entities([fx.clo2()])
    text = text.replace("ext 0,0,0→1 => 1→1", "ext 0,0,0→1 => 0→0")
    text += "\nalgebra A of Clo2 on 2\n  ext 0→2 => 2→2\n  ext 1→2 => 1→2\n  ext 2→2 => 2→2\n"
    with pytest.raises(LawViolation):
        Workspace.from_text(text)
    outcomes = []
    Workspace().load_blocks(split_blocks(text), outcomes)
    status = {b.name: exc for b, exc in outcomes}
    assert isinstance(status["Clo2"], LawViolation)
    assert isinstance(status["A"], DependencyFailed)
    assert status["Chain3"] is None


def test_missing_required_directive():
    with pytest.raises(MalformedSpec):
        Workspace.from_text(write_entities([fx.one()]) + "\nuarrow U : One | One\n  left * => *\n")


# -- derive output ------------------------------------------------------------


def _derivable(ws):
    for functor, table in sorted(DERIVATIONS.items()):
        for kind in table:
            for name, _ in ws.items(kind):
                yield functor, kind, name


def test_derive_output_reparses_to_the_derived_entity():
    base = fixture_text()
    ws = Workspace.from_text(base)
    extra = write_entities([cl.F_on_object(fx.galois_cr()), cl.H_on_object(fx.clo2()),
                            cl.F_on_morphism(fx.z2_swap()), cl.F_on_two_cell(fx.z2_swap_cell())], known=ws)
    ws.load_text(extra)
    checked = 0
    for functor, kind, name in _derivable(ws):
        derived = derive(ws, name, functor)
        text = cmd_derive(ws, name, functor)
        again = Workspace.from_text(base + "\n" + extra)
        again.load_text(text)
        target_kind = kind_of(derived)
        assert any(o == derived for o in again.entries[target_kind].values()), (functor, name)
        checked += 1
    assert checked >= 20


def test_derive_kind_mismatch():
    ws = Workspace.from_text(fixture_text())
    with pytest.raises(UsageError):
        derive(ws, "Clo2", "phi")


def test_derived_monad_is_written_even_when_equal_to_a_known_one():
    ws = Workspace.from_files([SHIPPED / "bool_closure.spec"])
    text = cmd_derive(ws, "Reflect", "phi")
    assert text.startswith("emonad Phi(Reflect) on Bool")
    assert bridge.phi_on_object(ws.lookup("uarrow", "Reflect")) == ws.lookup("emonad", "ToTop")
