"""The 2-functors between universal arrows and extension-form monads.

``phi_*`` sends a universal arrow to its induced monad, ``psi_*`` sends a
monad to the universal arrow of its algebra category. The unit compares an
arrow with ``psi(phi(U))`` and the counit is the identity on ``phi(psi(M))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from unimonad.emnd import (
    DEFAULT_BUDGET,
    AlgebraCategory,
    EMndMorphism,
    EMndTwoCell,
    ExtensiveMonad,
    emnd_compose_1cells,
    enumerate_algebras,
    enumerate_emnd_morphisms,
    identity_emnd_morphism,
    validate_emnd_morphism,
    validate_emnd_two_cell,
    validate_extensive_monad,
)
from unimonad.errors import InternalConsistencyError, MissingImageAlgebra
from unimonad.fincat import (
    Functor,
    NatTrans,
    ObjectFunction,
    identity_functor,
    validate_functor,
)
from unimonad.uarr import (
    UArrMorphism,
    UArrTwoCell,
    UniversalArrow,
    compose_uarr_morphisms,
    enumerate_uarr_morphisms,
    enumerate_uarr_two_cells,
    identity_uarr_morphism,
    uarr_whisker_back,
    uarr_whisker_forward,
    validate_uarr_morphism,
    validate_uarr_two_cell,
    validate_universal_arrow,
)


@dataclass
class CheckResult:
    check: str
    passed: bool
    witness: str = ""


# Enumerated algebra categories, keyed by monad identity. The monad is kept
# alongside so its id cannot be recycled while the entry lives.
_algebra_cache: dict[int, tuple[ExtensiveMonad, int, AlgebraCategory]] = {}


def algebra_category(m: ExtensiveMonad, budget: int = DEFAULT_BUDGET) -> AlgebraCategory:
    hit = _algebra_cache.get(id(m))
    if hit is not None and hit[0] is m and hit[1] >= budget:
        return hit[2]
    em = enumerate_algebras(m, budget)
    _algebra_cache[id(m)] = (m, budget, em)
    return em


# -- phi ----------------------------------------------------------------------


def phi_on_object(u: UniversalArrow, name=None) -> ExtensiveMonad:
    c, r = u.base, u.right
    ext = {}
    for a in c.objects:
        for b in c.objects:
            lb = u.left.ob(b)
            for h in c.hom(a, r.ob(lb)):
                ext[(a, b, h)] = r.ar(u.zeta[(lb, h)])
    rl = {a: u.rl(a) for a in c.objects}
    return validate_extensive_monad(name or f"Phi({u.name})", c, ObjectFunction(f"RL[{u.name}]", c, c, rl),
                                    u.unit, ext)


def phi_on_morphism(m: UArrMorphism, source: ExtensiveMonad | None = None,
                    target: ExtensiveMonad | None = None, name=None) -> EMndMorphism:
    """``p^JRLA = rho_inv_LA . R'zeta'(rho_LA . p)``."""
    u, u2 = m.source, m.target
    source = source or phi_on_object(u)
    target = target or phi_on_object(u2)
    c, d = u.base, u2.base
    ext = {}
    for a in c.objects:
        la = u.left.ob(a)
        vla = m.V.ob(la)
        for dd in d.objects:
            for p in d.hom(dd, m.J.ob(u.rl(a))):
                w = u2.zeta[(vla, d.compose(m.rho[la], p))]
                ext[(a, p)] = d.compose(m.rho_inv[la], u2.right.ar(w))
    return validate_emnd_morphism(name or f"Phi({m.name})", source, target, m.J, ext)


def phi_on_two_cell(cell: UArrTwoCell, source: EMndMorphism | None = None,
                    target: EMndMorphism | None = None, name=None) -> EMndTwoCell:
    source = source or phi_on_morphism(cell.source)
    target = target or phi_on_morphism(cell.target, source.source, source.target)
    return validate_emnd_two_cell(name or f"Phi({cell.name})", source, target, cell.alpha.components)


# -- psi ----------------------------------------------------------------------


@dataclass
class EMConstructionResult:
    algebra_category: object
    forgetful: Functor
    free: ObjectFunction
    unit: Mapping
    zeta: Mapping
    algebras: AlgebraCategory = field(repr=False)


def em_construction(m: ExtensiveMonad, budget: int = DEFAULT_BUDGET) -> EMConstructionResult:
    em = algebra_category(m, budget)
    c = m.base
    zeta = {}
    for a in c.objects:
        fa = em.free.ob(a)
        for ni, alg in em.algebras.items():
            for v in c.hom(a, alg.carrier):
                w = em.arrow(fa, ni, alg.ext[v])
                if w is None:
                    raise InternalConsistencyError(f"{alg.ext[v]} is not an algebra morphism out of {fa}")
                zeta[(ni, v)] = w
    return EMConstructionResult(em.category, em.forgetful, em.free, dict(m.unit), zeta, em)


def psi_on_object(m: ExtensiveMonad, budget: int = DEFAULT_BUDGET, name=None) -> UniversalArrow:
    """Universal arrow into the algebra category; the transpose is ``v -> v^N``.

    The transpose is recomputed by witness search and must agree with the
    algebra tables.
    """
    res = em_construction(m, budget)
    u = validate_universal_arrow(name or f"Psi({m.name})", m.base, res.algebra_category, res.forgetful,
                                 res.free, m.unit)
    if dict(u.zeta) != res.zeta:
        raise InternalConsistencyError(f"transpose of {u.name} disagrees with algebra extension")
    return u


def _lift_algebra(m: EMndMorphism, table: Mapping, carrier) -> dict:
    """``q^PN = P(1_N^N) . (P eta_N . q)^PSN`` for every ``q: D -> PN``."""
    S, T = m.source, m.target
    c, d = S.base, T.base
    mult = m.P.ar(table[c.identity(carrier)])
    p_eta = m.P.ar(S.unit[carrier])
    out = {}
    for dd in d.objects:
        for q in d.hom(dd, m.P.ob(carrier)):
            out[q] = d.compose(mult, m.ext[(carrier, d.compose(p_eta, q))])
    return out


def lifted_functor(m: EMndMorphism, budget: int = DEFAULT_BUDGET) -> Functor:
    src = algebra_category(m.source, budget)
    tgt = algebra_category(m.target, budget)
    obj_map = {}
    for ni, alg in src.algebras.items():
        table = _lift_algebra(m, alg.ext, alg.carrier)
        found = tgt.find(m.P.ob(alg.carrier), table)
        if found is None:
            raise MissingImageAlgebra(f"image of {ni} under {m.name} is not among the enumerated algebras")
        obj_map[ni] = found
    mor_map = {}
    for f in src.category.morphisms:
        a, b = src.category.ends(f)
        g = tgt.arrow(obj_map[a], obj_map[b], m.P.ar(src.underlying(f)))
        if g is None:
            raise InternalConsistencyError(f"{m.name} does not lift {f} to an algebra morphism")
        mor_map[f] = g
    return validate_functor(f"Lift({m.name})", src.category, tgt.category, obj_map, mor_map)


def psi_on_morphism(m: EMndMorphism, source: UniversalArrow | None = None, target: UniversalArrow | None = None,
                    budget: int = DEFAULT_BUDGET, name=None) -> UArrMorphism:
    source = source or psi_on_object(m.source, budget)
    target = target or psi_on_object(m.target, budget)
    lift = lifted_functor(m, budget)
    rho = {n: m.target.base.identity(m.P.ob(source.right.ob(n))) for n in source.upstairs.objects}
    return validate_uarr_morphism(name or f"Psi({m.name})", source, target, m.P, lift, rho, rho)


def psi_on_two_cell(cell: EMndTwoCell, source: UArrMorphism | None = None, target: UArrMorphism | None = None,
                    budget: int = DEFAULT_BUDGET, name=None) -> UArrTwoCell:
    source = source or psi_on_morphism(cell.source, budget=budget)
    target = target or psi_on_morphism(cell.target, source.source, source.target, budget)
    tgt_em = algebra_category(cell.source.target, budget)
    beta = {}
    for n in source.source.upstairs.objects:
        carrier = source.source.right.ob(n)
        w = tgt_em.arrow(source.V.ob(n), target.V.ob(n), cell.theta[carrier])
        if w is None:
            raise InternalConsistencyError(f"{cell.name} at {n} is not an algebra morphism")
        beta[n] = w
    return validate_uarr_two_cell(name or f"Psi({cell.name})", source, target, cell.theta.components, beta)


# -- unit and counit ---------------------------------------------------------


@dataclass
class UnitComponent:
    first: Functor
    comparison: Functor
    rho: NatTrans
    morphism: UArrMorphism


@dataclass
class CounitComponent:
    morphism: EMndMorphism


def comparison_functor(u: UniversalArrow, monad: ExtensiveMonad, budget: int = DEFAULT_BUDGET) -> Functor:
    """``X -> (RX, a -> R zeta(X, a))`` and ``w -> Rw``."""
    em = algebra_category(monad, budget)
    c, r = u.base, u.right
    obj_map = {}
    for x in u.upstairs.objects:
        rx = r.ob(x)
        table = {a: r.ar(u.zeta[(x, a)]) for b in c.objects for a in c.hom(b, rx)}
        found = em.find(rx, table)
        if found is None:
            raise InternalConsistencyError(f"comparison image of {x} is not an algebra")
        obj_map[x] = found
    mor_map = {}
    for w in u.upstairs.morphisms:
        x, y = u.upstairs.ends(w)
        g = em.arrow(obj_map[x], obj_map[y], r.ar(w))
        if g is None:
            raise InternalConsistencyError(f"comparison image of {w} is not an algebra morphism")
        mor_map[w] = g
    return validate_functor(f"Cmp({u.name})", u.upstairs, em.category, obj_map, mor_map)


def unit_component(u: UniversalArrow, budget: int = DEFAULT_BUDGET, images=None) -> UnitComponent:
    monad, psi_phi = images or _phi_psi_images(u, budget)
    k = comparison_functor(u, monad, budget)
    rho = {x: u.base.identity(u.right.ob(x)) for x in u.upstairs.objects}
    m = validate_uarr_morphism(f"unit({u.name})", u, psi_phi, identity_functor(u.base), k, rho, rho)
    return UnitComponent(m.J, k, m.rho, m)


def _phi_psi_images(u: UniversalArrow, budget: int):
    monad = phi_on_object(u)
    return monad, psi_on_object(monad, budget)


def counit_component(m: ExtensiveMonad, budget: int = DEFAULT_BUDGET) -> CounitComponent:
    round_trip = phi_on_object(psi_on_object(m, budget))
    if round_trip != m:
        raise InternalConsistencyError(f"phi(psi({m.name})) differs from {m.name}")
    ident = identity_emnd_morphism(m)
    return CounitComponent(EMndMorphism(f"counit({m.name})", round_trip, m, ident.P, ident.ext))


# -- adjunction checks ---------------------------------------------------------


def check_triangle_on_arrow(u: UniversalArrow, budget: int = DEFAULT_BUDGET) -> CheckResult:
    """``counit_phi(U) . phi(unit_U) = 1_phi(U)``."""
    monad, psi_phi = _phi_psi_images(u, budget)
    unit = unit_component(u, budget, (monad, psi_phi)).morphism
    phi_unit = phi_on_morphism(unit, monad, phi_on_object(psi_phi))
    counit = counit_component(monad, budget).morphism
    composite = emnd_compose_1cells(counit, phi_unit)
    ident = identity_emnd_morphism(monad)
    if composite == ident:
        return CheckResult(f"triangle-phi {u.name}", True)
    return CheckResult(f"triangle-phi {u.name}", False, _emnd_difference(composite, ident))


def check_triangle_on_monad(m: ExtensiveMonad, budget: int = DEFAULT_BUDGET) -> CheckResult:
    """``psi(counit_M) . unit_psi(M) = 1_psi(M)``."""
    psi_m = psi_on_object(m, budget)
    unit = unit_component(psi_m, budget).morphism
    counit = counit_component(m, budget).morphism
    psi_counit = psi_on_morphism(counit, unit.target, psi_m, budget)
    composite = compose_uarr_morphisms(psi_counit, unit)
    ident = identity_uarr_morphism(psi_m)
    if composite == ident:
        return CheckResult(f"triangle-psi {m.name}", True)
    return CheckResult(f"triangle-psi {m.name}", False, _uarr_difference(composite, ident))


def check_triangular_identities(entity, budget: int = DEFAULT_BUDGET) -> list[CheckResult]:
    if isinstance(entity, UniversalArrow):
        return [check_triangle_on_arrow(entity, budget)]
    return [check_triangle_on_monad(entity, budget)]


def _emnd_difference(a: EMndMorphism, b: EMndMorphism) -> str:
    if a.P != b.P:
        return "functors differ"
    for key in sorted(set(a.ext) | set(b.ext)):
        if a.ext.get(key) != b.ext.get(key):
            return f"ext at {key}: {a.ext.get(key)} vs {b.ext.get(key)}"
    return "source or target differs"


def _uarr_difference(a: UArrMorphism, b: UArrMorphism) -> str:
    for label, f, g in (("J", a.J, b.J), ("V", a.V, b.V)):
        for x in f.source.objects:
            if f.ob(x) != g.ob(x):
                return f"{label} at {x}: {f.ob(x)} vs {g.ob(x)}"
        for x in f.source.morphisms:
            if f.ar(x) != g.ar(x):
                return f"{label} at {x}: {f.ar(x)} vs {g.ar(x)}"
    for x in a.rho.dom.objects:
        if a.rho[x] != b.rho[x]:
            return f"rho at {x}: {a.rho[x]} vs {b.rho[x]}"
    return "source or target differs"


@dataclass
class NaturalityVerdict:
    holds: bool
    witness: object = None
    cross_check_agrees: bool = True

    @property
    def label(self) -> str:
        return "Holds" if self.holds else "Fails"


def check_unit_2naturality(cell: UArrTwoCell, budget: int = DEFAULT_BUDGET) -> NaturalityVerdict:
    """Compare ``alpha_RX`` with ``R'beta_X`` at every ``X``.

    The cross-check rebuilds the two whiskered cells ``unit . cell`` and
    ``psi(phi(cell)) . unit`` and compares the underlying morphisms of their
    upstairs components, which must fail at the same objects.
    """
    u, u2 = cell.source.source, cell.source.target
    r, r2 = u.right, u2.right
    literal = [x for x in u.upstairs.objects if cell.alpha[r.ob(x)] != r2.ar(cell.beta[x])]

    unit_src = unit_component(u, budget).morphism
    unit_tgt = unit_component(u2, budget).morphism
    after = uarr_whisker_forward(unit_tgt, cell)
    image = psi_on_two_cell(phi_on_two_cell(cell), budget=budget)
    image = _retarget(image, unit_src.target, unit_tgt.target)
    before = uarr_whisker_back(image, unit_src)
    em_forget = unit_tgt.target.right
    crossed = [
        x for x in u.upstairs.objects
        if em_forget.ar(after.beta[x]) != em_forget.ar(before.beta[x])
    ]
    return NaturalityVerdict(not literal, literal[0] if literal else None, crossed == literal)


def _retarget(cell: UArrTwoCell, src_arrow: UniversalArrow, tgt_arrow: UniversalArrow) -> UArrTwoCell:
    """Rebuild ``cell`` between identical copies of its end arrows."""
    def move(m: UArrMorphism) -> UArrMorphism:
        return UArrMorphism(m.name, src_arrow, tgt_arrow, m.J, m.V, m.rho, m.rho_inv)

    return UArrTwoCell(cell.name, move(cell.source), move(cell.target), cell.alpha, cell.beta)


def naturality_suite(u: UniversalArrow, strict: bool, budget: int = DEFAULT_BUDGET,
                     cells=()) -> list[tuple[UArrTwoCell, NaturalityVerdict]]:
    """Verdicts for every 2-cell between enumerated endo 1-cells of ``u``, plus ``cells``.

    With ``strict`` only cells whose 1-cells have identity ``rho`` take part.
    """
    ms = enumerate_uarr_morphisms(u, u, strict=strict, budget=budget)
    pool = list(cells)
    for m1 in ms:
        for m2 in ms:
            pool.extend(enumerate_uarr_two_cells(m1, m2))
    if strict:
        pool = [c for c in pool if c.source.is_strict() and c.target.is_strict()]
    return [(c, check_unit_2naturality(c, budget)) for c in pool]


@dataclass
class HomBijection:
    emnd_side: int
    uarr_side: int
    injective: bool
    surjective: bool
    inverse_agrees: bool

    @property
    def passed(self) -> bool:
        return self.emnd_side == self.uarr_side and self.injective and self.surjective and self.inverse_agrees


def check_hom_bijection(u: UniversalArrow, m: ExtensiveMonad, budget: int = DEFAULT_BUDGET) -> HomBijection:
    """``Hom(phi U, M) -> Hom_strict(U, psi M)`` given by ``g -> psi(g) . unit_U``."""
    monad, psi_phi = _phi_psi_images(u, budget)
    psi_m = psi_on_object(m, budget)
    unit = unit_component(u, budget, (monad, psi_phi)).morphism
    counit = counit_component(m, budget).morphism
    lhs = enumerate_emnd_morphisms(monad, m, budget, algebra_category(m, budget))
    rhs = enumerate_uarr_morphisms(u, psi_m, strict=True, budget=budget)
    images = [compose_uarr_morphisms(psi_on_morphism(g, psi_phi, psi_m, budget), unit) for g in lhs]
    injective = all(images[i] != images[j] for i in range(len(images)) for j in range(i))
    surjective = all(any(h == img for img in images) for h in rhs) and all(any(img == h for h in rhs) for img in images)
    phi_psi_m = counit.source
    back = [emnd_compose_1cells(counit, phi_on_morphism(h, monad, phi_psi_m)) for h in rhs]
    inverse_agrees = all(any(b == g for g in lhs) for b in back) and all(
        compose_uarr_morphisms(psi_on_morphism(b, psi_phi, psi_m, budget), unit) == h for b, h in zip(back, rhs)
    )
    return HomBijection(len(lhs), len(rhs), injective, surjective, inverse_agrees)
