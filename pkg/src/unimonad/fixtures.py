"""Built-in desk-scale instances.

Poset fixtures use morphism ids ``a→b``. ``Z2`` is the one-object group
``{e, s}``; ``Set12`` is finite sets of size 1 and 2 with all functions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from unimonad.emnd import ExtensiveMonad, validate_extensive_monad
from unimonad.fincat import (
    FinCategory,
    Functor,
    identity_functor,
    poset_category,
    validate_category,
    validate_functor,
)
from unimonad.uarr import (
    UArrMorphism,
    UArrTwoCell,
    UniversalArrow,
    identity_uarr_morphism,
    validate_uarr_morphism,
    validate_uarr_two_cell,
    validate_universal_arrow,
)


def arrow_name(a, b) -> str:
    return f"{a}→{b}"


def chain(name: str, elements) -> FinCategory:
    elements = list(elements)
    return poset_category(name, elements, lambda a, b: elements.index(a) <= elements.index(b))


def monotone_functor(name, source: FinCategory, target: FinCategory, obj_map) -> Functor:
    """The unique functor between posets extending ``obj_map``."""
    mor = {}
    for f in source.morphisms:
        a, b = source.ends(f)
        mor[f] = arrow_name(obj_map[a], obj_map[b])
    return validate_functor(name, source, target, obj_map, mor)


def one() -> FinCategory:
    return poset_category("One", ["*"], lambda a, b: True)


def two() -> FinCategory:
    return chain("Two", ["0", "2"])


def chain3() -> FinCategory:
    return chain("Chain3", ["0", "1", "2"])


def div6() -> FinCategory:
    return poset_category("Div6", ["1", "2", "3", "6"], lambda a, b: int(b) % int(a) == 0)


def subposet(name, cat: FinCategory, keep) -> FinCategory:
    keep = [a for a in cat.objects if a in set(keep)]
    return poset_category(name, keep, lambda a, b: cat.hom(a, b) != ())


def closure_arrow(name, cat: FinCategory, closure: dict, upstairs_name=None) -> UniversalArrow:
    """Inclusion of the closed elements with the closure as left part."""
    closed = sorted(set(closure.values()), key=cat.objects.index)
    up = subposet(upstairs_name or f"Fix[{name}]", cat, closed)
    incl = monotone_functor(f"incl[{name}]", up, cat, {x: x for x in up.objects})
    unit = {a: arrow_name(a, closure[a]) for a in cat.objects}
    return validate_universal_arrow(name, cat, up, incl, closure, unit)


def closure_monad(name, cat: FinCategory, closure: dict) -> ExtensiveMonad:
    """``S = c`` with the unique comparison arrows as unit and extension."""
    unit = {a: arrow_name(a, closure[a]) for a in cat.objects}
    ext = {}
    for a in cat.objects:
        for b in cat.objects:
            for h in cat.hom(a, closure[b]):
                ext[(a, b, h)] = arrow_name(closure[a], closure[b])
    return validate_extensive_monad(name, cat, closure, unit, ext)


def identity_arrow(cat: FinCategory, name=None) -> UniversalArrow:
    return validate_universal_arrow(
        name or f"Id[{cat.name}]", cat, cat, identity_functor(cat), {a: a for a in cat.objects},
        {a: cat.identity(a) for a in cat.objects},
    )


# -- the galois connection and its closure -----------------------------------

GALOIS_LEFT = {"0": "0", "1": "2", "2": "2"}
CLO2 = {"0": "1", "1": "1", "2": "2"}
DIV6_CLOSURE = {"1": "2", "2": "2", "3": "6", "6": "6"}


def galois_cr() -> UniversalArrow:
    c, x = chain3(), two()
    incl = monotone_functor("incl", x, c, {"0": "0", "2": "2"})
    unit = {a: arrow_name(a, GALOIS_LEFT[a]) for a in c.objects}
    return validate_universal_arrow("GaloisCR", c, x, incl, GALOIS_LEFT, unit)


def clo2() -> ExtensiveMonad:
    return closure_monad("Clo2", chain3(), CLO2)


def clo2_arrow() -> UniversalArrow:
    return closure_arrow("Clo2Fix", chain3(), CLO2)


def div6_arrow() -> UniversalArrow:
    return closure_arrow("Div6Even", div6(), DIV6_CLOSURE)


def div6_monad() -> ExtensiveMonad:
    return closure_monad("Div6Clo", div6(), DIV6_CLOSURE)


# -- the two-element group ----------------------------------------------------


def z2() -> FinCategory:
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    return validate_category("Z2", ["•"], {"e": ("•", "•"), "s": ("•", "•")}, {"•": "e"}, table)


def z2_arrow() -> UniversalArrow:
    return identity_arrow(z2(), "Z2Id")


def z2_twist() -> UniversalArrow:
    c = z2()
    return validate_universal_arrow("Z2Twist", c, c, identity_functor(c), {"•": "•"}, {"•": "s"})


def z2_twist_monad() -> ExtensiveMonad:
    c = z2()
    ext = {("•", "•", h): c.compose(h, "s") for h in c.morphisms}
    return validate_extensive_monad("Z2TwistMnd", c, {"•": "•"}, {"•": "s"}, ext)


def z2_swap(u: UniversalArrow | None = None) -> UArrMorphism:
    """Endo 1-cell with identity functors and ``rho = s``."""
    u = u or z2_arrow()
    return validate_uarr_morphism("Z2Swap", u, u, identity_functor(u.base), identity_functor(u.upstairs),
                                  {"•": "s"}, {"•": "s"})


def z2_swap_cell(u: UniversalArrow | None = None) -> UArrTwoCell:
    """``(alpha, beta) = (e, s)`` from the swap to the identity 1-cell."""
    u = u or z2_arrow()
    return validate_uarr_two_cell("Z2SwapCell", z2_swap(u), identity_uarr_morphism(u), {"•": "e"}, {"•": "s"})


# -- finite sets of size one and two -----------------------------------------


def function_id(n: int, m: int, images) -> str:
    return f"{n}to{m}_" + "".join(str(i) for i in images)


def set12() -> FinCategory:
    sizes = (1, 2)
    ends, maps = {}, {}
    for n, m in itertools.product(sizes, repeat=2):
        for images in itertools.product(range(m), repeat=n):
            f = function_id(n, m, images)
            ends[f] = (str(n), str(m))
            maps[f] = images
    identity = {str(n): function_id(n, n, range(n)) for n in sizes}
    compose = {}
    for g, f in itertools.product(ends, repeat=2):
        if ends[f][1] == ends[g][0]:
            n, m = int(ends[f][0]), int(ends[g][1])
            compose[(g, f)] = function_id(n, m, [maps[g][i] for i in maps[f]])
    return validate_category("Set12", ["1", "2"], ends, identity, compose)


def set12_reflection() -> UniversalArrow:
    c = set12()
    x = validate_category("Set1", ["1"], {"1to1_0": ("1", "1")}, {"1": "1to1_0"}, {("1to1_0", "1to1_0"): "1to1_0"})
    incl = validate_functor("incl1", x, c, {"1": "1"}, {"1to1_0": "1to1_0"})
    unit = {a: function_id(int(a), 1, [0] * int(a)) for a in c.objects}
    return validate_universal_arrow("Set12Term", c, x, incl, {"1": "1", "2": "1"}, unit)


def set12_terminal_monad() -> ExtensiveMonad:
    c = set12()
    unit = {a: function_id(int(a), 1, [0] * int(a)) for a in c.objects}
    ext = {(a, b, h): "1to1_0" for a in c.objects for b in c.objects for h in c.hom(a, "1")}
    return validate_extensive_monad("Set12TermMnd", c, {"1": "1", "2": "1"}, unit, ext)


# -- random closure systems ---------------------------------------------------


def random_closure_instance(seed: int, max_size: int = 5):
    """A random poset with a top element and a random closure on it.

    Returns ``(arrow, monad, closure)``; the closed set is random but always
    contains the top, so least closed upper bounds may fail to exist only
    when the draw is rejected and redrawn.
    """
    rng = random.Random(seed)
    while True:
        n = rng.randint(2, max_size)
        elements = [f"p{i}" for i in range(n)]
        pairs = [(elements[i], elements[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        pairs += [(e, elements[-1]) for e in elements]
        cat = poset_category(f"Rand{seed}", elements, pairs)
        closed = [e for e in elements[:-1] if rng.random() < 0.5] + [elements[-1]]
        closure = {}
        for a in elements:
            above = [k for k in closed if cat.hom(a, k)]
            least = [k for k in above if all(cat.hom(k, j) for j in above)]
            if len(least) != 1:
                break
            closure[a] = least[0]
        else:
            arrow = closure_arrow(f"RandArrow{seed}", cat, closure)
            monad = closure_monad(f"RandClo{seed}", cat, closure)
            return arrow, monad, closure


RANDOM_SEEDS = tuple(range(20))


@dataclass
class FixtureSet:
    arrows: dict = field(default_factory=dict)
    monads: dict = field(default_factory=dict)
    categories: dict = field(default_factory=dict)
    umorphisms: dict = field(default_factory=dict)
    ucells: dict = field(default_factory=dict)
    closures: dict = field(default_factory=dict)
    strict_pairs: list = field(default_factory=list)


def builtin_fixtures(random_seeds=()) -> FixtureSet:
    fx = FixtureSet()
    for cat in (one(), two(), chain3(), div6(), z2(), set12()):
        fx.categories[cat.name] = cat
    for u in (identity_arrow(one(), "IdOne"), identity_arrow(chain3(), "IdChain3"), galois_cr(), clo2_arrow(),
              div6_arrow(), z2_arrow(), z2_twist(), set12_reflection()):
        fx.arrows[u.name] = u
    for m in (clo2(), div6_monad(), z2_twist_monad(), set12_terminal_monad()):
        fx.monads[m.name] = m
    swap = z2_swap(fx.arrows["Z2Id"])
    fx.umorphisms[swap.name] = swap
    cell = z2_swap_cell(fx.arrows["Z2Id"])
    fx.ucells[cell.name] = cell
    fx.closures.update({"GaloisCR": GALOIS_LEFT, "Clo2": CLO2, "Clo2Fix": CLO2, "Div6Even": DIV6_CLOSURE,
                        "Div6Clo": DIV6_CLOSURE})
    fx.strict_pairs = [("IdOne", None), ("GaloisCR", "Clo2"), ("Clo2Fix", "Clo2"), ("Div6Even", "Div6Clo"),
                       ("Z2Twist", "Z2TwistMnd"), ("Set12Term", "Set12TermMnd")]
    for seed in random_seeds:
        arrow, monad, closure = random_closure_instance(seed)
        fx.arrows[arrow.name] = arrow
        fx.monads[monad.name] = monad
        fx.closures[arrow.name] = closure
        fx.closures[monad.name] = closure
    return fx
