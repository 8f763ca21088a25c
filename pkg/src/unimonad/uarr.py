"""Universal arrows and the 2-category they form.

A universal arrow from each object ``A`` of the base ``C`` to a functor
``R: X -> C`` is stored with its transpose table ``zeta``, keyed by
``(Xo, v)`` for ``v: A -> R Xo``. The table is always computed by exhaustive
search for the unique factorisation; it is never read from input.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from unimonad.errors import (
    AmbiguousWitness,
    CylinderViolation,
    InternalConsistencyError,
    MalformedSpec,
    NoWitness,
    NotInvertible,
    SearchBudgetExceeded,
    ShapeMismatch,
)
from unimonad.fincat import (
    FinCategory,
    Functor,
    NatTrans,
    ObjectFunction,
    compose_functors,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    identity_nat,
    invert_nat_iso,
    is_inverse_pair,
    validate_nat_trans,
    validate_object_function,
    vertical,
    whisker_left,
    one_cell_label,
    whisker_right,
    _frozen,
)


class UniversalArrow:
    __slots__ = ("name", "base", "upstairs", "right", "left", "unit", "zeta")

    def __init__(self, name, base: FinCategory, upstairs: FinCategory, right: Functor,
                 left: ObjectFunction, unit: Mapping, zeta: Mapping):
        self.name = name
        self.base = base
        self.upstairs = upstairs
        self.right = right
        self.left = left
        self.unit = _frozen(unit)
        self.zeta = _frozen(zeta)

    def transpose(self, xo, v):
        """``zeta(A, Xo)(v)`` with ``A`` the source of ``v``."""
        return self.zeta[(xo, v)]

    def rl(self, a):
        return self.right.ob(self.left.ob(a))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, UniversalArrow):
            return NotImplemented
        return (
            self.unit == other.unit
            and self.zeta == other.zeta
            and self.left.obj_map == other.left.obj_map
            and self.right == other.right
        )

    def __repr__(self):
        return f"UniversalArrow({self.name!r}: {self.base.name} | {self.upstairs.name})"


def universal_witnesses(right: Functor, left, unit: Mapping, a, xo, v) -> list:
    """All ``w: LA -> Xo`` with ``R w . unit[A] = v``, in lexicographic order."""
    base, up = right.target, right.source
    la = left.ob(a) if isinstance(left, ObjectFunction) else left[a]
    eta = unit.get(a)
    out = []
    if eta is None or not base.has_morphism(eta):
        return out
    for w in up.hom(la, xo):
        if base.try_compose(right.ar(w), eta) == v:
            out.append(w)
    return out


def compute_zeta(right: Functor, left, unit: Mapping, a, xo, v):
    """The unique factorisation of ``v`` through the unit at ``a``."""
    found = universal_witnesses(right, left, unit, a, xo, v)
    if not found:
        la = left.ob(a) if isinstance(left, ObjectFunction) else left[a]
        raise NoWitness((a, xo, v), right.source.hom(la, xo))
    if len(found) > 1:
        raise AmbiguousWitness((a, xo, v), found)
    return found[0]


def validate_universal_arrow(name, base: FinCategory, upstairs: FinCategory, right: Functor,
                             left, unit: Mapping) -> UniversalArrow:
    if right.source != upstairs or right.target != base:
        raise ShapeMismatch(f"{name}: right functor must run {upstairs.name} -> {base.name}")
    obj_map = left.obj_map if isinstance(left, ObjectFunction) else left
    left = validate_object_function(f"L[{name}]", base, upstairs, obj_map)
    zeta = {}
    for a in base.objects:
        for xo in upstairs.objects:
            for v in base.hom(a, right.ob(xo)):
                zeta[(xo, v)] = compute_zeta(right, left, unit, a, xo, v)
    for a in base.objects:
        la = left.ob(a)
        if unit.get(a) not in base.hom(a, right.ob(la)):
            raise NoWitness((a,), base.hom(a, right.ob(la)))
    extra = set(unit) - set(base.objects)
    if extra:
        raise MalformedSpec(f"{name}: unit given at unknown objects {sorted(extra)}")
    # zeta restricted to each (A, Xo) must be a bijection Hom(A, R Xo) -> Hom(LA, Xo)
    for a in base.objects:
        for xo in upstairs.objects:
            image = [zeta[(xo, v)] for v in base.hom(a, right.ob(xo))]
            if sorted(image) != sorted(upstairs.hom(left.ob(a), xo)):
                raise InternalConsistencyError(f"{name}: transpose at ({a}, {xo}) is not a bijection")
    return UniversalArrow(name, base, upstairs, right, left, unit, zeta)


def witness_histogram(u: UniversalArrow) -> dict[int, int]:
    """How many triples ``(A, Xo, v)`` have exactly k universal witnesses."""
    hist: dict[int, int] = {}
    for a in u.base.objects:
        for xo in u.upstairs.objects:
            for v in u.base.hom(a, u.right.ob(xo)):
                k = len(universal_witnesses(u.right, u.left, u.unit, a, xo, v))
                hist[k] = hist.get(k, 0) + 1
    return hist


# -- 1-cells ------------------------------------------------------------------


class UArrMorphism:
    """``(J, V, rho)`` with ``rho: JR => R'V`` invertible, inverse stored as ``rho_inv``."""

    __slots__ = ("name", "source", "target", "J", "V", "rho", "rho_inv")

    def __init__(self, name, source: UniversalArrow, target: UniversalArrow, J: Functor, V: Functor,
                 rho: NatTrans, rho_inv: NatTrans):
        self.name = name
        self.source = source
        self.target = target
        self.J = J
        self.V = V
        self.rho = rho
        self.rho_inv = rho_inv

    def is_strict(self) -> bool:
        return self.rho.is_identity()

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, UArrMorphism):
            return NotImplemented
        return (
            self.J == other.J
            and self.V == other.V
            and self.rho == other.rho
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self):
        return f"UArrMorphism({self.name!r}: {self.source.name} -> {self.target.name})"


def validate_uarr_morphism(name, source: UniversalArrow, target: UniversalArrow, J: Functor, V: Functor,
                           rho: Mapping | NatTrans, rho_inv: Mapping | NatTrans | None = None) -> UArrMorphism:
    if J.source != source.base or J.target != target.base:
        raise ShapeMismatch(f"{name}: J must run {source.base.name} -> {target.base.name}")
    if V.source != source.upstairs or V.target != target.upstairs:
        raise ShapeMismatch(f"{name}: V must run {source.upstairs.name} -> {target.upstairs.name}")
    jr = compose_functors(J, source.right)
    rv = compose_functors(target.right, V)
    comps = rho.components if isinstance(rho, NatTrans) else rho
    rho = validate_nat_trans(f"rho[{name}]", jr, rv, comps)
    if rho_inv is None:
        rho_inv = invert_nat_iso(rho, name=f"rho_inv[{name}]")
    else:
        comps = rho_inv.components if isinstance(rho_inv, NatTrans) else rho_inv
        rho_inv = validate_nat_trans(f"rho_inv[{name}]", rv, jr, comps)
        if not is_inverse_pair(rho, rho_inv):
            bad = next(
                x for x in rho.dom.objects
                if rho.cod.compose(rho_inv[x], rho[x]) != rho.cod.identity(jr.ob(x))
                or rho.cod.compose(rho[x], rho_inv[x]) != rho.cod.identity(rv.ob(x))
            )
            raise NotInvertible(f"rho[{name}]", bad)
    return UArrMorphism(name, source, target, J, V, rho, rho_inv)


def identity_uarr_morphism(u: UniversalArrow) -> UArrMorphism:
    rho = identity_nat(u.right, name=f"1_{u.right.name}")
    return UArrMorphism(f"1_{u.name}", u, u, identity_functor(u.base), identity_functor(u.upstairs), rho, rho)


def compose_uarr_morphisms(m2: UArrMorphism, m1: UArrMorphism, name=None) -> UArrMorphism:
    """``(F, G, rho2) . (J, V, rho1) = (FJ, GV, rho2 V . F rho1)``."""
    if m1.target != m2.source:
        raise ShapeMismatch(f"cannot compose {m2.name} after {m1.name}")
    J = compose_functors(m2.J, m1.J)
    V = compose_functors(m2.V, m1.V)
    jr = compose_functors(J, m1.source.right)
    rv = compose_functors(m2.target.right, V)
    rho = vertical(whisker_right(m2.rho, m1.V), whisker_left(m2.J, m1.rho))
    rho_inv = vertical(whisker_left(m2.J, m1.rho_inv), whisker_right(m2.rho_inv, m1.V))
    nm = name or f"{m2.name}.{m1.name}"
    return UArrMorphism(
        nm, m1.source, m2.target, J, V,
        NatTrans(f"rho[{nm}]", jr, rv, rho.components),
        NatTrans(f"rho_inv[{nm}]", rv, jr, rho_inv.components),
    )


# -- 2-cells ------------------------------------------------------------------


class UArrTwoCell:
    __slots__ = ("name", "source", "target", "alpha", "beta")

    def __init__(self, name, source: UArrMorphism, target: UArrMorphism, alpha: NatTrans, beta: NatTrans):
        self.name = name
        self.source = source
        self.target = target
        self.alpha = alpha
        self.beta = beta

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, UArrTwoCell):
            return NotImplemented
        return (
            self.alpha == other.alpha
            and self.beta == other.beta
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self):
        return f"UArrTwoCell({self.name!r}: {self.source.name} => {self.target.name})"


def cylinder_defect(src: UArrMorphism, tgt: UArrMorphism, alpha: NatTrans, beta: NatTrans):
    """First object of ``X`` where ``R'beta . rho_src = rho_tgt . alpha R`` fails, else ``None``."""
    right = src.source.right
    right2 = src.target.right
    d = src.target.base
    for x in src.source.upstairs.objects:
        left_side = d.compose(right2.ar(beta[x]), src.rho[x])
        right_side = d.compose(tgt.rho[x], alpha[right.ob(x)])
        if left_side != right_side:
            return x
    return None


def validate_uarr_two_cell(name, source: UArrMorphism, target: UArrMorphism, alpha, beta) -> UArrTwoCell:
    if source.source != target.source or source.target != target.target:
        raise ShapeMismatch(f"{name}: 1-cells {source.name} and {target.name} are not parallel")
    a_comps = alpha.components if isinstance(alpha, NatTrans) else alpha
    b_comps = beta.components if isinstance(beta, NatTrans) else beta
    alpha = validate_nat_trans(f"alpha[{name}]", source.J, target.J, a_comps)
    beta = validate_nat_trans(f"beta[{name}]", source.V, target.V, b_comps)
    bad = cylinder_defect(source, target, alpha, beta)
    if bad is not None:
        raise CylinderViolation(name, bad)
    return UArrTwoCell(name, source, target, alpha, beta)


def _recheck(cell: UArrTwoCell) -> UArrTwoCell:
    bad = cylinder_defect(cell.source, cell.target, cell.alpha, cell.beta)
    if bad is not None:
        raise InternalConsistencyError(f"composite {cell.name} breaks the cylinder condition at {bad}")
    return cell


def identity_uarr_two_cell(m: UArrMorphism) -> UArrTwoCell:
    return UArrTwoCell(f"1_{m.name}", m, m, identity_nat(m.J), identity_nat(m.V))


def uarr_vertical(c2: UArrTwoCell, c1: UArrTwoCell, name=None) -> UArrTwoCell:
    if c1.target != c2.source:
        raise ShapeMismatch(f"vertical: {c1.name} does not end where {c2.name} starts")
    return _recheck(UArrTwoCell(
        name or f"{c2.name}.{c1.name}", c1.source, c2.target,
        vertical(c2.alpha, c1.alpha), vertical(c2.beta, c1.beta),
    ))


def uarr_whisker_forward(m: UArrMorphism, c: UArrTwoCell, name=None) -> UArrTwoCell:
    """``(F alpha, G beta)`` for ``m = (F, G, rho)`` applied after ``c``."""
    if c.source.target != m.source:
        raise ShapeMismatch(f"whisker: {m.name} does not start where {c.name} ends")
    src = compose_uarr_morphisms(m, c.source)
    tgt = compose_uarr_morphisms(m, c.target)
    alpha = whisker_left(m.J, c.alpha)
    beta = whisker_left(m.V, c.beta)
    return _recheck(UArrTwoCell(
        name or f"{m.name}{c.name}", src, tgt,
        NatTrans(alpha.name, src.J, tgt.J, alpha.components),
        NatTrans(beta.name, src.V, tgt.V, beta.components),
    ))


def uarr_whisker_back(c: UArrTwoCell, m: UArrMorphism, name=None) -> UArrTwoCell:
    """``(alpha J, beta V)`` for ``m = (J, V, rho)`` applied before ``c``."""
    if m.target != c.source.source:
        raise ShapeMismatch(f"whisker: {c.name} does not start where {m.name} ends")
    src = compose_uarr_morphisms(c.source, m)
    tgt = compose_uarr_morphisms(c.target, m)
    alpha = whisker_right(c.alpha, m.J)
    beta = whisker_right(c.beta, m.V)
    return _recheck(UArrTwoCell(
        name or f"{c.name}{m.name}", src, tgt,
        NatTrans(alpha.name, src.J, tgt.J, alpha.components),
        NatTrans(beta.name, src.V, tgt.V, beta.components),
    ))


def uarr_horizontal(c2: UArrTwoCell, c1: UArrTwoCell, name=None) -> UArrTwoCell:
    """``(gamma K . F alpha, delta W . G beta)``: whisker forward, then whisker back."""
    first = uarr_whisker_forward(c2.source, c1)
    second = uarr_whisker_back(c2, c1.target)
    out = uarr_vertical(second, first)
    out.name = name or f"{c2.name}*{c1.name}"
    return out


def uarr_horizontal_other_order(c2: UArrTwoCell, c1: UArrTwoCell) -> UArrTwoCell:
    """``(M alpha . gamma J, N beta . delta V)``."""
    first = uarr_whisker_back(c2, c1.source)
    second = uarr_whisker_forward(c2.target, c1)
    return uarr_vertical(second, first)


# -- enumeration of hom-categories ------------------------------------------


def enumerate_uarr_morphisms(source: UniversalArrow, target: UniversalArrow, strict=True,
                             budget: int | None = None) -> list[UArrMorphism]:
    """All 1-cells ``source -> target``; with ``strict`` only identity ``rho``."""
    out = []
    js = enumerate_functors(source.base, target.base, budget)
    vs = enumerate_functors(source.upstairs, target.upstairs, budget)
    for J, V in itertools.product(js, vs):
        jr = compose_functors(J, source.right)
        rv = compose_functors(target.right, V)
        if strict:
            if jr.obj_map != rv.obj_map or jr.mor_map != rv.mor_map:
                continue
            rhos = [identity_nat(jr)]
        else:
            if jr.source != rv.source:
                continue
            rhos = [t for t in enumerate_nat_trans(jr, rv) if _invertible(t)]
        for rho in rhos:
            nm = one_cell_label(source.name, target.name, len(out))
            out.append(validate_uarr_morphism(nm, source, target, J, V, rho.components))
            if budget is not None and len(out) > budget:
                raise SearchBudgetExceeded(f"1-cells {source.name} -> {target.name}", budget)
    return out


def _invertible(t: NatTrans) -> bool:
    return all(t.cod.inverse(t[x]) is not None for x in t.dom.objects)


def enumerate_uarr_two_cells(source: UArrMorphism, target: UArrMorphism) -> list[UArrTwoCell]:
    out = []
    for alpha in enumerate_nat_trans(source.J, target.J):
        for beta in enumerate_nat_trans(source.V, target.V):
            if cylinder_defect(source, target, alpha, beta) is None:
                out.append(UArrTwoCell(f"{source.name}=>{target.name}@{len(out)}", source, target, alpha, beta))
    return out
