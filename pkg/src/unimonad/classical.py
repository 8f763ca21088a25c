"""Classical adjunctions and monads, and the isomorphisms relating them to
universal arrows and extension-form monads.

``F``/``G`` translate universal arrows to adjunctions and back; ``H``/``K``
translate extension-form monads to monads with multiplication and back.
"""

from __future__ import annotations

from typing import Mapping

from unimonad.bridge import (
    CheckResult,
    phi_on_morphism,
    phi_on_object,
    phi_on_two_cell,
    psi_on_morphism,
    psi_on_object,
    psi_on_two_cell,
)
from unimonad.emnd import (
    DEFAULT_BUDGET,
    EMndMorphism,
    EMndTwoCell,
    ExtensiveMonad,
    validate_emnd_morphism,
    validate_emnd_two_cell,
    validate_extensive_monad,
)
from unimonad.errors import InternalConsistencyError, LawViolation, NotNatural, ShapeMismatch
from unimonad.fincat import (
    Functor,
    NatTrans,
    compose_functors,
    enumerate_nat_trans,
    identity_functor,
    validate_functor,
    validate_nat_trans,
)
from unimonad.uarr import (
    UArrMorphism,
    UArrTwoCell,
    UniversalArrow,
    validate_uarr_morphism,
    validate_uarr_two_cell,
    validate_universal_arrow,
)


def _same_functor(f: Functor, g: Functor) -> bool:
    return f.obj_map == g.obj_map and f.mor_map == g.mor_map


def _same_nat(s: NatTrans, t: NatTrans) -> bool:
    return dict(s.components) == dict(t.components)


# -- adjunctions --------------------------------------------------------------


class Adjunction:
    __slots__ = ("name", "base", "upstairs", "L", "R", "unit", "counit")

    def __init__(self, name, L: Functor, R: Functor, unit: NatTrans, counit: NatTrans):
        self.name = name
        self.base = L.source
        self.upstairs = L.target
        self.L = L
        self.R = R
        self.unit = unit
        self.counit = counit

    def __eq__(self, other):
        if not isinstance(other, Adjunction):
            return NotImplemented
        return (
            self.L == other.L
            and self.R == other.R
            and _same_nat(self.unit, other.unit)
            and _same_nat(self.counit, other.counit)
        )

    def __repr__(self):
        return f"Adjunction({self.name!r}: {self.base.name} -> {self.upstairs.name})"


def validate_adjunction(name, L: Functor, R: Functor, unit: Mapping, counit: Mapping) -> Adjunction:
    c, x = L.source, L.target
    if R.source != x or R.target != c:
        raise ShapeMismatch(f"{name}: right part must run {x.name} -> {c.name}")
    unit = validate_nat_trans(f"unit[{name}]", identity_functor(c), compose_functors(R, L), _comps(unit))
    counit = validate_nat_trans(f"counit[{name}]", compose_functors(L, R), identity_functor(x), _comps(counit))
    for xo in x.objects:
        if c.compose(R.ar(counit[xo]), unit[R.ob(xo)]) != c.identity(R.ob(xo)):
            raise LawViolation(name, "triangle-R", xo)
    for a in c.objects:
        if x.compose(counit[L.ob(a)], L.ar(unit[a])) != x.identity(L.ob(a)):
            raise LawViolation(name, "triangle-L", a)
    return Adjunction(name, L, R, unit, counit)


def _comps(t):
    return t.components if isinstance(t, NatTrans) else t


class AdjMorphism:
    __slots__ = ("name", "source", "target", "J", "V", "rho", "rho_inv", "lam")

    def __init__(self, name, source: Adjunction, target: Adjunction, J: Functor, V: Functor, rho: NatTrans,
                 rho_inv: NatTrans, lam: NatTrans):
        self.name = name
        self.source = source
        self.target = target
        self.J = J
        self.V = V
        self.rho = rho
        self.rho_inv = rho_inv
        self.lam = lam

    def __eq__(self, other):
        if not isinstance(other, AdjMorphism):
            return NotImplemented
        return (
            self.J == other.J
            and self.V == other.V
            and _same_nat(self.rho, other.rho)
            and _same_nat(self.lam, other.lam)
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self):
        return f"AdjMorphism({self.name!r}: {self.source.name} -> {self.target.name})"


def dual_adjoint_defect(source: Adjunction, target: Adjunction, J: Functor, V: Functor, rho: NatTrans,
                        lam: NatTrans):
    """First ``X`` where ``rho_X = R'V eps_X . R' lam_RX . eta'_JRX`` fails."""
    d = target.base
    r2 = target.R
    for xo in source.upstairs.objects:
        rx = source.R.ob(xo)
        rhs = d.path(
            r2.ar(V.ar(source.counit[xo])),
            r2.ar(lam[rx]),
            target.unit[J.ob(rx)],
        )
        if rhs != rho[xo]:
            return xo
    return None


def enumerate_dual_adjoints(source: Adjunction, target: Adjunction, J: Functor, V: Functor,
                            rho: NatTrans) -> list[NatTrans]:
    """Every ``lam: L'J => VL`` satisfying the dual-adjoint equation."""
    lj = compose_functors(target.L, J)
    vl = compose_functors(V, source.L)
    return [t for t in enumerate_nat_trans(lj, vl) if dual_adjoint_defect(source, target, J, V, rho, t) is None]


class AdjTwoCell:
    __slots__ = ("name", "source", "target", "alpha", "beta")

    def __init__(self, name, source: AdjMorphism, target: AdjMorphism, alpha: NatTrans, beta: NatTrans):
        self.name = name
        self.source = source
        self.target = target
        self.alpha = alpha
        self.beta = beta

    def __eq__(self, other):
        if not isinstance(other, AdjTwoCell):
            return NotImplemented
        return (
            _same_nat(self.alpha, other.alpha)
            and _same_nat(self.beta, other.beta)
            and self.source == other.source
            and self.target == other.target
        )


def mate_defect(source: AdjMorphism, target: AdjMorphism, alpha: NatTrans, beta: NatTrans):
    """First ``A`` where ``lam_KW . L'alpha = beta L . lam_JV`` fails."""
    x2 = source.target.upstairs
    l2, l1 = source.target.L, source.source.L
    for a in source.source.base.objects:
        lhs = x2.compose(target.lam[a], l2.ar(alpha[a]))
        rhs = x2.compose(beta[l1.ob(a)], source.lam[a])
        if lhs != rhs:
            return a
    return None


def validate_adj_morphism(name, source: Adjunction, target: Adjunction, J: Functor, V: Functor, rho,
                          lam) -> AdjMorphism:
    if J.source != source.base or J.target != target.base:
        raise ShapeMismatch(f"{name}: J must run {source.base.name} -> {target.base.name}")
    if V.source != source.upstairs or V.target != target.upstairs:
        raise ShapeMismatch(f"{name}: V must run {source.upstairs.name} -> {target.upstairs.name}")
    # rho and its inverse are checked through the universal-arrow view
    m = validate_uarr_morphism(name, G_on_object(source), G_on_object(target), J, V, _comps(rho))
    lam = validate_nat_trans(f"lam[{name}]", compose_functors(target.L, J), compose_functors(V, source.L),
                             _comps(lam))
    bad = dual_adjoint_defect(source, target, J, V, m.rho, lam)
    if bad is not None:
        raise LawViolation(name, "dual-adjoint", bad)
    return AdjMorphism(name, source, target, J, V, m.rho, m.rho_inv, lam)


def validate_adj_two_cell(name, source: AdjMorphism, target: AdjMorphism, alpha, beta) -> AdjTwoCell:
    if source.source != target.source or source.target != target.target:
        raise ShapeMismatch(f"{name}: {source.name} and {target.name} are not parallel")
    cell = validate_uarr_two_cell(name, G_on_morphism(source), G_on_morphism(target), _comps(alpha), _comps(beta))
    bad = mate_defect(source, target, cell.alpha, cell.beta)
    if bad is not None:
        raise LawViolation(name, "mate", bad)
    return AdjTwoCell(name, source, target, cell.alpha, cell.beta)


def F_on_object(u: UniversalArrow, name=None) -> Adjunction:
    """``Lf = zeta(eta_B . f)``, ``eps_X = zeta(1_RX)``."""
    c, x, r = u.base, u.upstairs, u.right
    mor = {}
    for f in c.morphisms:
        a, b = c.ends(f)
        mor[f] = u.zeta[(u.left.ob(b), c.compose(u.unit[b], f))]
    L = validate_functor(f"L[{u.name}]", c, x, dict(u.left.obj_map), mor)
    counit = {xo: u.zeta[(xo, c.identity(r.ob(xo)))] for xo in x.objects}
    return validate_adjunction(name or f"F({u.name})", L, r, dict(u.unit), counit)


def F_on_morphism(m: UArrMorphism, source: Adjunction | None = None, target: Adjunction | None = None,
                  name=None) -> AdjMorphism:
    """``lam_A = zeta'(rho_LA . J eta_A)``."""
    source = source or F_on_object(m.source)
    target = target or F_on_object(m.target)
    u, u2 = m.source, m.target
    d = u2.base
    comps = {}
    for a in u.base.objects:
        la = u.left.ob(a)
        comps[a] = u2.zeta[(m.V.ob(la), d.compose(m.rho[la], m.J.ar(u.unit[a])))]
    lam = validate_nat_trans(f"lam[{m.name}]", compose_functors(target.L, m.J), compose_functors(m.V, source.L),
                             comps)
    bad = dual_adjoint_defect(source, target, m.J, m.V, m.rho, lam)
    if bad is not None:
        raise InternalConsistencyError(f"{m.name}: constructed lam is not the dual adjoint at {bad}")
    return AdjMorphism(name or f"F({m.name})", source, target, m.J, m.V, m.rho, m.rho_inv, lam)


def F_on_two_cell(cell: UArrTwoCell, source: AdjMorphism | None = None, target: AdjMorphism | None = None,
                  name=None) -> AdjTwoCell:
    source = source or F_on_morphism(cell.source)
    target = target or F_on_morphism(cell.target, source.source, source.target)
    bad = mate_defect(source, target, cell.alpha, cell.beta)
    if bad is not None:
        raise InternalConsistencyError(f"{cell.name}: mate equation fails at {bad}")
    return AdjTwoCell(name or f"F({cell.name})", source, target, cell.alpha, cell.beta)


def G_on_object(adj: Adjunction, name=None) -> UniversalArrow:
    """``zeta(X, v) = eps_X . Lv``, cross-checked against witness search."""
    c = adj.base
    u = validate_universal_arrow(name or f"G({adj.name})", c, adj.upstairs, adj.R, adj.L.object_function(),
                                 dict(adj.unit.components))
    for (xo, v), w in u.zeta.items():
        if adj.upstairs.compose(adj.counit[xo], adj.L.ar(v)) != w:
            raise InternalConsistencyError(f"{u.name}: transpose of {v} disagrees with eps . Lv")
    return u


def G_on_morphism(am: AdjMorphism, source: UniversalArrow | None = None, target: UniversalArrow | None = None,
                  name=None) -> UArrMorphism:
    source = source or G_on_object(am.source)
    target = target or G_on_object(am.target)
    return validate_uarr_morphism(name or f"G({am.name})", source, target, am.J, am.V, am.rho.components,
                                  am.rho_inv.components)


def G_on_two_cell(cell: AdjTwoCell, source: UArrMorphism | None = None, target: UArrMorphism | None = None,
                  name=None) -> UArrTwoCell:
    source = source or G_on_morphism(cell.source)
    target = target or G_on_morphism(cell.target, source.source, source.target)
    return validate_uarr_two_cell(name or f"G({cell.name})", source, target, cell.alpha, cell.beta)


# -- monads with multiplication -----------------------------------------------


class ClassicalMonad:
    __slots__ = ("name", "base", "S", "unit", "mult")

    def __init__(self, name, S: Functor, unit: NatTrans, mult: NatTrans):
        self.name = name
        self.base = S.source
        self.S = S
        self.unit = unit
        self.mult = mult

    def __eq__(self, other):
        if not isinstance(other, ClassicalMonad):
            return NotImplemented
        return self.S == other.S and _same_nat(self.unit, other.unit) and _same_nat(self.mult, other.mult)

    def __repr__(self):
        return f"ClassicalMonad({self.name!r} on {self.base.name})"


def validate_classical_monad(name, S: Functor, unit: Mapping, mult: Mapping) -> ClassicalMonad:
    c = S.source
    if S.target != c:
        raise ShapeMismatch(f"{name}: endofunctor expected")
    ss = compose_functors(S, S)
    unit = validate_nat_trans(f"unit[{name}]", identity_functor(c), S, _comps(unit))
    mult = validate_nat_trans(f"mult[{name}]", ss, S, _comps(mult))
    for a in c.objects:
        ida = c.identity(S.ob(a))
        if c.compose(mult[a], unit[S.ob(a)]) != ida:
            raise LawViolation(name, "left-unit", a)
        if c.compose(mult[a], S.ar(unit[a])) != ida:
            raise LawViolation(name, "right-unit", a)
        if c.compose(mult[a], mult[S.ob(a)]) != c.compose(mult[a], S.ar(mult[a])):
            raise LawViolation(name, "associativity", a)
    return ClassicalMonad(name, S, unit, mult)


class MonadMorphism:
    """``(P, phi: TP => PS)``."""

    __slots__ = ("name", "source", "target", "P", "phi")

    def __init__(self, name, source: ClassicalMonad, target: ClassicalMonad, P: Functor, phi: NatTrans):
        self.name = name
        self.source = source
        self.target = target
        self.P = P
        self.phi = phi

    def __eq__(self, other):
        if not isinstance(other, MonadMorphism):
            return NotImplemented
        return (
            self.P == other.P
            and _same_nat(self.phi, other.phi)
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self):
        return f"MonadMorphism({self.name!r}: {self.source.name} -> {self.target.name})"


def validate_monad_morphism(name, source: ClassicalMonad, target: ClassicalMonad, P: Functor,
                            phi: Mapping) -> MonadMorphism:
    S, T = source.S, target.S
    d = target.base
    phi = validate_nat_trans(f"phi[{name}]", compose_functors(T, P), compose_functors(P, S), _comps(phi))
    for a in source.base.objects:
        pa = P.ob(a)
        if d.compose(phi[a], target.unit[pa]) != P.ar(source.unit[a]):
            raise LawViolation(name, "unit-compatibility", a)
        lhs = d.compose(phi[a], target.mult[pa])
        rhs = d.path(P.ar(source.mult[a]), phi[S.ob(a)], T.ar(phi[a]))
        if lhs != rhs:
            raise LawViolation(name, "mult-compatibility", a)
    return MonadMorphism(name, source, target, P, phi)


class MonadTwoCell:
    __slots__ = ("name", "source", "target", "theta")

    def __init__(self, name, source: MonadMorphism, target: MonadMorphism, theta: NatTrans):
        self.name = name
        self.source = source
        self.target = target
        self.theta = theta

    def __eq__(self, other):
        if not isinstance(other, MonadTwoCell):
            return NotImplemented
        return _same_nat(self.theta, other.theta) and self.source == other.source and self.target == other.target


def validate_monad_two_cell(name, source: MonadMorphism, target: MonadMorphism, theta) -> MonadTwoCell:
    """``psi . T theta = theta S . phi``."""
    theta = validate_nat_trans(f"theta[{name}]", source.P, target.P, _comps(theta))
    d = source.target.base
    S, T = source.source.S, source.target.S
    for a in source.source.base.objects:
        if d.compose(target.phi[a], T.ar(theta[a])) != d.compose(theta[S.ob(a)], source.phi[a]):
            raise NotNatural(name, a, "theta does not commute with the monad morphisms")
    return MonadTwoCell(name, source, target, theta)


def H_on_object(m: ExtensiveMonad, name=None) -> ClassicalMonad:
    """``Sf = (eta_B . f)^SB``, ``mu_A = (1_SA)^SA``."""
    c = m.base
    mor = {}
    for f in c.morphisms:
        a, b = c.ends(f)
        mor[f] = m.ext[(a, b, c.compose(m.unit[b], f))]
    S = validate_functor(f"S[{m.name}]", c, c, dict(m.S.obj_map), mor)
    mult = {a: m.ext[(m.s(a), a, c.identity(m.s(a)))] for a in c.objects}
    return validate_classical_monad(name or f"H({m.name})", S, dict(m.unit), mult)


def H_on_morphism(w: EMndMorphism, source: ClassicalMonad | None = None, target: ClassicalMonad | None = None,
                  name=None) -> MonadMorphism:
    """``phi_A = (P eta_A)^PSA``."""
    source = source or H_on_object(w.source)
    target = target or H_on_object(w.target)
    phi = {a: w.ext[(a, w.P.ar(w.source.unit[a]))] for a in w.source.base.objects}
    return validate_monad_morphism(name or f"H({w.name})", source, target, w.P, phi)


def H_on_two_cell(cell: EMndTwoCell, source: MonadMorphism | None = None, target: MonadMorphism | None = None,
                  name=None) -> MonadTwoCell:
    source = source or H_on_morphism(cell.source)
    target = target or H_on_morphism(cell.target, source.source, source.target)
    return validate_monad_two_cell(name or f"H({cell.name})", source, target, cell.theta)


def K_on_object(cm: ClassicalMonad, name=None) -> ExtensiveMonad:
    """``h^SB = mu_B . Sh``."""
    c, S = cm.base, cm.S
    ext = {}
    for a in c.objects:
        for b in c.objects:
            for h in c.hom(a, S.ob(b)):
                ext[(a, b, h)] = c.compose(cm.mult[b], S.ar(h))
    return validate_extensive_monad(name or f"K({cm.name})", c, S.object_function(), dict(cm.unit.components), ext)


def K_on_morphism(mm: MonadMorphism, source: ExtensiveMonad | None = None, target: ExtensiveMonad | None = None,
                  name=None) -> EMndMorphism:
    """``r^PSA = P mu_A . phi_SA . T r``."""
    source = source or K_on_object(mm.source)
    target = target or K_on_object(mm.target)
    c, d = source.base, target.base
    S, T, P = mm.source.S, mm.target.S, mm.P
    ext = {}
    for a in c.objects:
        psa = P.ob(S.ob(a))
        head = d.compose(P.ar(mm.source.mult[a]), mm.phi[S.ob(a)])
        for dd in d.objects:
            for r in d.hom(dd, psa):
                ext[(a, r)] = d.compose(head, T.ar(r))
    return validate_emnd_morphism(name or f"K({mm.name})", source, target, P, ext)


def K_on_two_cell(cell: MonadTwoCell, source: EMndMorphism | None = None, target: EMndMorphism | None = None,
                  name=None) -> EMndTwoCell:
    source = source or K_on_morphism(cell.source)
    target = target or K_on_morphism(cell.target, source.source, source.target)
    return validate_emnd_two_cell(name or f"K({cell.name})", source, target, cell.theta)


# -- conjugated left and right sides of the square ----------------------------


def phi_classical_on_object(adj: Adjunction) -> ClassicalMonad:
    return H_on_object(phi_on_object(G_on_object(adj)))


def psi_classical_on_object(cm: ClassicalMonad, budget: int = DEFAULT_BUDGET) -> Adjunction:
    return F_on_object(psi_on_object(K_on_object(cm), budget))


def phi_classical_on_morphism(am: AdjMorphism) -> MonadMorphism:
    return H_on_morphism(phi_on_morphism(G_on_morphism(am)))


def psi_classical_on_morphism(mm: MonadMorphism, budget: int = DEFAULT_BUDGET) -> AdjMorphism:
    return F_on_morphism(psi_on_morphism(K_on_morphism(mm), budget=budget))


def phi_classical_on_two_cell(cell: AdjTwoCell) -> MonadTwoCell:
    return H_on_two_cell(phi_on_two_cell(G_on_two_cell(cell)))


def psi_classical_on_two_cell(cell: MonadTwoCell, budget: int = DEFAULT_BUDGET) -> AdjTwoCell:
    return F_on_two_cell(psi_on_two_cell(K_on_two_cell(cell), budget=budget))


# -- round trips and the square -----------------------------------------------


def _result(check: str, ok: bool, witness: str = "") -> CheckResult:
    return CheckResult(check, ok, "" if ok else witness)


def roundtrip_arrow_side(u: UniversalArrow, morphisms=(), cells=()) -> list[CheckResult]:
    """``GF = 1`` and ``FG = 1`` at all three levels."""
    adj = F_on_object(u)
    out = [
        _result(f"GF {u.name}", G_on_object(adj) == u, "zeta, unit or parts differ"),
        _result(f"FG F({u.name})", F_on_object(G_on_object(adj)) == adj, "L, unit or counit differ"),
    ]
    for m in morphisms:
        am = F_on_morphism(m)
        out.append(_result(f"GF {m.name}", G_on_morphism(am) == m, "J, V or rho differ"))
        out.append(_result(f"FG F({m.name})", F_on_morphism(G_on_morphism(am)) == am, "lam differs"))
    for c in cells:
        ac = F_on_two_cell(c)
        out.append(_result(f"GF {c.name}", G_on_two_cell(ac) == c, "alpha or beta differ"))
        out.append(_result(f"FG F({c.name})", F_on_two_cell(G_on_two_cell(ac)) == ac, "alpha or beta differ"))
    return out


def roundtrip_monad_side(m: ExtensiveMonad, morphisms=(), cells=()) -> list[CheckResult]:
    """``KH = 1`` and ``HK = 1`` at all three levels."""
    cm = H_on_object(m)
    out = [
        _result(f"KH {m.name}", K_on_object(cm) == m, "extension differs"),
        _result(f"HK H({m.name})", H_on_object(K_on_object(cm)) == cm, "functor, unit or mult differ"),
    ]
    for w in morphisms:
        mm = H_on_morphism(w)
        out.append(_result(f"KH {w.name}", K_on_morphism(mm) == w, "extension differs"))
        out.append(_result(f"HK H({w.name})", H_on_morphism(K_on_morphism(mm)) == mm, "phi differs"))
    for c in cells:
        mc = H_on_two_cell(c)
        out.append(_result(f"KH {c.name}", K_on_two_cell(mc) == c, "theta differs"))
        out.append(_result(f"HK H({c.name})", H_on_two_cell(K_on_two_cell(mc)) == mc, "theta differs"))
    return out


def check_square(arrows=(), monads=(), umorphisms=(), ucells=(), emorphisms=(), ecells=(),
                 budget: int = DEFAULT_BUDGET) -> list[CheckResult]:
    """Serial commutation of the square at objects, 1-cells and 2-cells.

    Checked composites, for cells on the universal-arrow side:
    ``H.phi = phi_E.F`` and ``phi.G = K.phi_E`` (after ``F``);
    on the monad side: ``F.psi = psi_E.H`` and ``psi.K = G.psi_E`` (after ``H``).
    """
    out = []
    for u in arrows:
        adj = F_on_object(u)
        out.append(_result(f"H.phi=phiE.F {u.name}", H_on_object(phi_on_object(u)) == phi_classical_on_object(adj)))
        out.append(_result(f"phi.G=K.phiE {u.name}",
                           phi_on_object(G_on_object(adj)) == K_on_object(phi_classical_on_object(adj))))
    for m in umorphisms:
        am = F_on_morphism(m)
        out.append(_result(f"H.phi=phiE.F {m.name}",
                           H_on_morphism(phi_on_morphism(m)) == phi_classical_on_morphism(am)))
        out.append(_result(f"phi.G=K.phiE {m.name}",
                           phi_on_morphism(G_on_morphism(am)) == K_on_morphism(phi_classical_on_morphism(am))))
    for c in ucells:
        ac = F_on_two_cell(c)
        out.append(_result(f"H.phi=phiE.F {c.name}",
                           H_on_two_cell(phi_on_two_cell(c)) == phi_classical_on_two_cell(ac)))
        out.append(_result(f"phi.G=K.phiE {c.name}",
                           phi_on_two_cell(G_on_two_cell(ac)) == K_on_two_cell(phi_classical_on_two_cell(ac))))
    for m in monads:
        cm = H_on_object(m)
        out.append(_result(f"F.psi=psiE.H {m.name}",
                           F_on_object(psi_on_object(m, budget)) == psi_classical_on_object(cm, budget)))
        out.append(_result(f"psi.K=G.psiE {m.name}",
                           psi_on_object(K_on_object(cm), budget) == G_on_object(psi_classical_on_object(cm, budget))))
    for w in emorphisms:
        mm = H_on_morphism(w)
        out.append(_result(f"F.psi=psiE.H {w.name}",
                           F_on_morphism(psi_on_morphism(w, budget=budget)) == psi_classical_on_morphism(mm, budget)))
        out.append(_result(f"psi.K=G.psiE {w.name}",
                           psi_on_morphism(K_on_morphism(mm), budget=budget)
                           == G_on_morphism(psi_classical_on_morphism(mm, budget))))
    for c in ecells:
        mc = H_on_two_cell(c)
        out.append(_result(f"F.psi=psiE.H {c.name}",
                           F_on_two_cell(psi_on_two_cell(c, budget=budget)) == psi_classical_on_two_cell(mc, budget)))
        out.append(_result(f"psi.K=G.psiE {c.name}",
                           psi_on_two_cell(K_on_two_cell(mc), budget=budget)
                           == G_on_two_cell(psi_classical_on_two_cell(mc, budget))))
    return out
