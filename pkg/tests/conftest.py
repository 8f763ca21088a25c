from __future__ import annotations

import os
import sys
from dataclasses import dataclass

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from unimonad import fixtures as fx  # noqa: E402

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@dataclass
class PosetCase:
    """An order plus a closure, described without the library's category code."""

    name: str
    elements: list
    rel: set
    left: dict
    upstairs: list
    arrow: object


def _chain_rel(elements):
    return {(a, b) for a in elements for b in elements if elements.index(a) <= elements.index(b)}


def poset_cases(random_seeds=fx.RANDOM_SEEDS) -> list[PosetCase]:
    chain = ["0", "1", "2"]
    div = ["1", "2", "3", "6"]
    div_rel = {(a, b) for a in div for b in div if int(b) % int(a) == 0}
    cases = [
        PosetCase("IdOne", ["*"], {("*", "*")}, {"*": "*"}, ["*"], fx.identity_arrow(fx.one(), "IdOne")),
        PosetCase("IdChain3", chain, _chain_rel(chain), {a: a for a in chain}, chain,
                  fx.identity_arrow(fx.chain3(), "IdChain3")),
        PosetCase("GaloisCR", chain, _chain_rel(chain), {"0": "0", "1": "2", "2": "2"}, ["0", "2"], fx.galois_cr()),
        PosetCase("Clo2Fix", chain, _chain_rel(chain), {"0": "1", "1": "1", "2": "2"}, ["1", "2"], fx.clo2_arrow()),
        PosetCase("Div6Even", div, div_rel, {"1": "2", "2": "2", "3": "6", "6": "6"}, ["2", "6"], fx.div6_arrow()),
    ]
    for seed in random_seeds:
        arrow, _, closure = fx.random_closure_instance(seed)
        cat = arrow.base
        rel = {(a, b) for a in cat.objects for b in cat.objects if cat.hom(a, b)}
        cases.append(PosetCase(arrow.name, list(cat.objects), rel, dict(closure),
                               sorted(set(closure.values()), key=list(cat.objects).index), arrow))
    return cases


POSET_CASES = poset_cases()


@pytest.fixture(scope="session")
def builtin():
    return fx.builtin_fixtures()


@pytest.fixture(scope="session")
def with_random():
    return fx.builtin_fixtures(fx.RANDOM_SEEDS)
