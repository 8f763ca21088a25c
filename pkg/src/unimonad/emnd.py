"""Monads in extension form, their algebras, and the 2-category they form.

Tables:

* monad extension: ``(A, B, h) -> h^SB`` for every ``h: A -> SB``;
* algebra on ``N``: ``a -> a^N`` for every ``a: A -> N`` (``A`` is read off ``a``);
* 1-cell ``(P, ext)``: ``(A, p) -> p^PSA`` for every ``p: D -> PSA``.

Law checks run law b (resp. i) first: it pins down the source and target of
every entry, so later laws can compose without separate type checks.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from unimonad.errors import (
    InternalConsistencyError,
    LawViolation,
    MalformedSpec,
    NotAlgebraMorphism,
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
    validate_category,
    validate_nat_trans,
    validate_object_function,
    vertical,
    whisker_left,
    one_cell_label,
    whisker_right,
    _frozen,
)

DEFAULT_BUDGET = 10**6


class ExtensiveMonad:
    __slots__ = ("name", "base", "S", "unit", "ext")

    def __init__(self, name, base: FinCategory, S: ObjectFunction, unit: Mapping, ext: Mapping):
        self.name = name
        self.base = base
        self.S = S
        self.unit = _frozen(unit)
        self.ext = _frozen(ext)

    def s(self, a):
        return self.S.ob(a)

    def extend(self, h, b):
        """``h^SB`` for ``h: A -> SB``."""
        return self.ext[(self.base.src(h), b, h)]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ExtensiveMonad):
            return NotImplemented
        return (
            self.S.obj_map == other.S.obj_map
            and self.unit == other.unit
            and self.ext == other.ext
            and self.base == other.base
        )

    def __repr__(self):
        return f"ExtensiveMonad({self.name!r} on {self.base.name})"


def monad_law_defect(m: ExtensiveMonad):
    """``(law, witness)`` for the first failing law, or ``None``."""
    c = m.base
    for a in c.objects:
        for b in c.objects:
            for h in c.hom(a, m.s(b)):
                if c.try_compose(m.ext[(a, b, h)], m.unit[a]) != h:
                    return "b", h
    for a in c.objects:
        if m.ext[(a, a, m.unit[a])] != c.identity(m.s(a)):
            return "a", a
    for a in c.objects:
        for b in c.objects:
            for h in c.hom(a, m.s(b)):
                hb = m.ext[(a, b, h)]
                for cc in c.objects:
                    for k in c.hom(b, m.s(cc)):
                        kc = m.ext[(b, cc, k)]
                        if m.ext[(a, cc, c.compose(kc, h))] != c.compose(kc, hb):
                            return "c", (h, k)
    return None


def validate_extensive_monad(name, base: FinCategory, S, unit: Mapping, ext: Mapping) -> ExtensiveMonad:
    obj_map = S.obj_map if isinstance(S, ObjectFunction) else S
    S = validate_object_function(f"S[{name}]", base, base, obj_map)
    for a in base.objects:
        if a not in unit:
            raise MalformedSpec(f"{name}: no unit at {a}")
        if unit[a] not in base.hom(a, S.ob(a)):
            raise MalformedSpec(f"{name}: unit at {a} does not run {a} -> {S.ob(a)}")
    expected = {(a, b, h) for a in base.objects for b in base.objects for h in base.hom(a, S.ob(b))}
    missing = expected - set(ext)
    if missing:
        raise MalformedSpec(f"{name}: extension missing at {sorted(missing)[0]}")
    extra = set(ext) - expected
    if extra:
        raise MalformedSpec(f"{name}: extension given at ill-typed keys, e.g. {sorted(extra)[0]}")
    for key, v in ext.items():
        if not base.has_morphism(v):
            raise MalformedSpec(f"{name}: extension at {key} is not a morphism")
    m = ExtensiveMonad(name, base, S, unit, ext)
    bad = monad_law_defect(m)
    if bad is not None:
        raise LawViolation(name, *bad)
    return m


def identity_monad(c: FinCategory, name=None) -> ExtensiveMonad:
    ext = {(a, b, h): h for a in c.objects for b in c.objects for h in c.hom(a, b)}
    return ExtensiveMonad(
        name or f"Id[{c.name}]", c, ObjectFunction(f"1_{c.name}", c, c, {a: a for a in c.objects}),
        {a: c.identity(a) for a in c.objects}, ext,
    )


# -- algebras -----------------------------------------------------------------


class Algebra:
    """An algebra ``(N, a -> a^N)``; equality is carrier plus full table."""

    __slots__ = ("name", "monad", "carrier", "ext")

    def __init__(self, name, monad: ExtensiveMonad, carrier, ext: Mapping):
        self.name = name
        self.monad = monad
        self.carrier = carrier
        self.ext = _frozen(ext)

    def key(self):
        return self.carrier, tuple(sorted(self.ext.items()))

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.carrier == other.carrier and self.ext == other.ext and self.monad == other.monad

    def __repr__(self):
        return f"Algebra({self.name!r} on {self.carrier})"


def algebra_law_defect(monad: ExtensiveMonad, carrier, ext: Mapping):
    c = monad.base
    for a in c.objects:
        for x in c.hom(a, carrier):
            if c.try_compose(ext[x], monad.unit[a]) != x:
                return "i", x
    for b in c.objects:
        for y in c.hom(b, carrier):
            yn = ext[y]
            for a in c.objects:
                for h in c.hom(a, monad.s(b)):
                    if ext[c.compose(yn, h)] != c.compose(yn, monad.ext[(a, b, h)]):
                        return "ii", (y, h)
    return None


def validate_algebra(name, monad: ExtensiveMonad, carrier, ext: Mapping) -> Algebra:
    c = monad.base
    if not c.has_object(carrier):
        raise MalformedSpec(f"{name}: carrier {carrier} is not an object of {c.name}")
    expected = {x for a in c.objects for x in c.hom(a, carrier)}
    if set(ext) != expected:
        raise MalformedSpec(f"{name}: algebra table must cover exactly the morphisms into {carrier}")
    bad = algebra_law_defect(monad, carrier, ext)
    if bad is not None:
        raise LawViolation(name, *bad)
    return Algebra(name, monad, carrier, ext)


def algebra_morphism_defect(monad: ExtensiveMonad, src_ext: Mapping, tgt_ext: Mapping, q):
    """First ``a: A -> M`` where ``(q . a)^N = q . a^M`` fails, else ``None``."""
    c = monad.base
    for a in src_ext:
        if tgt_ext[c.compose(q, a)] != c.compose(q, src_ext[a]):
            return a
    return None


def check_algebra_morphism(src: Algebra, tgt: Algebra, q):
    c = src.monad.base
    if c.ends(q) != (src.carrier, tgt.carrier):
        raise ShapeMismatch(f"{q} does not run {src.carrier} -> {tgt.carrier}")
    bad = algebra_morphism_defect(src.monad, src.ext, tgt.ext, q)
    if bad is not None:
        raise NotAlgebraMorphism(q, bad)


def _algebras_on(monad: ExtensiveMonad, carrier, budget: int) -> list[dict]:
    c = monad.base
    entries = [x for a in c.objects for x in c.hom(a, carrier)]
    # law i fixes each entry up to the candidates below
    choices = {
        x: [y for y in c.hom(monad.s(c.src(x)), carrier) if c.compose(y, monad.unit[c.src(x)]) == x]
        for x in entries
    }
    constraints = [
        (y, h, b)
        for b in c.objects
        for y in c.hom(b, carrier)
        for a in c.objects
        for h in c.hom(a, monad.s(b))
    ]
    found: list[dict] = []
    asg: dict = {}
    visited = 0

    def ok(latest):
        for y, h, b in constraints:
            if y not in asg:
                continue
            yh = c.compose(asg[y], h)
            if yh not in asg or (latest != y and latest != yh):
                continue
            if asg[yh] != c.compose(asg[y], monad.ext[(c.src(h), b, h)]):
                return False
        return True

    def search(i):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise SearchBudgetExceeded(f"algebras of {monad.name} on {carrier}", budget)
        if i == len(entries):
            found.append(dict(asg))
            return
        x = entries[i]
        for y in choices[x]:
            asg[x] = y
            if ok(x):
                search(i + 1)
            del asg[x]

    search(0)
    return found


class AlgebraCategory:
    """The category of all algebras of a monad, with forgetful and free parts."""

    def __init__(self, monad: ExtensiveMonad, category: FinCategory, algebras: dict, forgetful: Functor,
                 free: ObjectFunction, arrows: dict):
        self.monad = monad
        self.category = category
        self.algebras = algebras
        self.forgetful = forgetful
        self.free = free
        self._arrows = arrows
        self._by_key = {alg.key(): name for name, alg in algebras.items()}

    def find(self, carrier, ext: Mapping):
        """Identifier of the algebra with this carrier and table, or ``None``."""
        return self._by_key.get((carrier, tuple(sorted(ext.items()))))

    def arrow(self, src_id, tgt_id, q):
        """Identifier of the algebra morphism ``q: src -> tgt`` or ``None``."""
        return self._arrows.get((src_id, tgt_id, q))

    def underlying(self, f):
        return self.forgetful.ar(f)


def arrow_id(q, src_id, tgt_id) -> str:
    return f"{q}:{src_id}>{tgt_id}"


def enumerate_algebras(monad: ExtensiveMonad, budget: int = DEFAULT_BUDGET) -> AlgebraCategory:
    """Build the category of algebras by exhaustive search over extension tables."""
    c = monad.base
    algebras = {}
    for n in c.objects:
        for k, table in enumerate(_algebras_on(monad, n, budget)):
            name = f"{n}#{k}"
            algebras[name] = Algebra(name, monad, n, table)
    ends, arrows = {}, {}
    for (mi, ma), (ni, na) in itertools.product(algebras.items(), repeat=2):
        for q in c.hom(ma.carrier, na.carrier):
            if algebra_morphism_defect(monad, ma.ext, na.ext, q) is None:
                f = arrow_id(q, mi, ni)
                ends[f] = (mi, ni)
                arrows[(mi, ni, q)] = f
    identity = {ni: arrows[(ni, ni, c.identity(na.carrier))] for ni, na in algebras.items()}
    compose = {}
    for (mi, ni, q), f in arrows.items():
        for (ni2, pi, r), g in arrows.items():
            if ni2 == ni:
                compose[(g, f)] = arrows[(mi, pi, c.compose(r, q))]
    cat = validate_category(f"{monad.name}^alg", list(algebras), ends, identity, compose)
    forgetful = Functor(
        f"U[{monad.name}]", cat, c,
        {ni: na.carrier for ni, na in algebras.items()},
        {f: q for (_, _, q), f in arrows.items()},
    )
    by_key = {alg.key(): name for name, alg in algebras.items()}
    free = {}
    for a in c.objects:
        sa = monad.s(a)
        table = {x: monad.ext[(b, a, x)] for b in c.objects for x in c.hom(b, sa)}
        key = (sa, tuple(sorted(table.items())))
        if key not in by_key:
            raise InternalConsistencyError(f"free algebra on {a} missing from the enumeration")
        free[a] = by_key[key]
    return AlgebraCategory(monad, cat, algebras, forgetful, ObjectFunction(f"F[{monad.name}]", c, cat, free), arrows)


# -- 1-cells ------------------------------------------------------------------


class EMndMorphism:
    """``(P, ext)`` where ``ext[(A, p)] = p^PSA`` for ``p: D -> PSA``."""

    __slots__ = ("name", "source", "target", "P", "ext")

    def __init__(self, name, source: ExtensiveMonad, target: ExtensiveMonad, P: Functor, ext: Mapping):
        self.name = name
        self.source = source
        self.target = target
        self.P = P
        self.ext = _frozen(ext)

    def psa(self, a):
        return self.P.ob(self.source.s(a))

    def algebra_table(self, a) -> dict:
        """The target-algebra structure carried by ``PSA``."""
        return {p: v for (b, p), v in self.ext.items() if b == a}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, EMndMorphism):
            return NotImplemented
        return (
            self.P == other.P
            and self.ext == other.ext
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self):
        return f"EMndMorphism({self.name!r}: {self.source.name} -> {self.target.name})"


def emnd_morphism_defect(m: EMndMorphism):
    S, T = m.source, m.target
    c = S.base
    tables = {a: m.algebra_table(a) for a in c.objects}
    for a in c.objects:
        bad = algebra_law_defect(T, m.psa(a), tables[a])
        if bad is not None:
            return "i", (a, bad)
    for a in c.objects:
        for b in c.objects:
            for h in c.hom(a, S.s(b)):
                ph = m.P.ar(S.ext[(a, b, h)])
                bad = algebra_morphism_defect(T, tables[a], tables[b], ph)
                if bad is not None:
                    return "ii", (h, bad)
    return None


def validate_emnd_morphism(name, source: ExtensiveMonad, target: ExtensiveMonad, P: Functor,
                           ext: Mapping) -> EMndMorphism:
    c, d = source.base, target.base
    if P.source != c or P.target != d:
        raise ShapeMismatch(f"{name}: functor must run {c.name} -> {d.name}")
    expected = {
        (a, p) for a in c.objects for dd in d.objects for p in d.hom(dd, P.ob(source.s(a)))
    }
    if set(ext) != expected:
        missing = expected - set(ext)
        raise MalformedSpec(
            f"{name}: extension table must cover exactly (A, p: D -> PSA)"
            + (f"; missing {sorted(missing)[0]}" if missing else "")
        )
    m = EMndMorphism(name, source, target, P, ext)
    bad = emnd_morphism_defect(m)
    if bad is not None:
        raise LawViolation(name, *bad)
    return m


def identity_emnd_morphism(m: ExtensiveMonad) -> EMndMorphism:
    c = m.base
    ext = {(a, p): m.ext[(dd, a, p)] for a in c.objects for dd in c.objects for p in c.hom(dd, m.s(a))}
    return EMndMorphism(f"1_{m.name}", m, m, identity_functor(c), ext)


def emnd_compose_1cells(w2: EMndMorphism, w1: EMndMorphism, name=None) -> EMndMorphism:
    """``(W, ~WT) . (P, ~PS)`` with
    ``w^WPSA = W(1_PSA^PSA) . [W eta^T_PSA . w]^WTPSA``."""
    if w1.target != w2.source:
        raise ShapeMismatch(f"cannot compose {w2.name} after {w1.name}")
    S, T, U = w1.source, w1.target, w2.target
    c, d, x = S.base, T.base, U.base
    W, P = w2.P, w1.P
    ext = {}
    for a in c.objects:
        psa = P.ob(S.s(a))
        mult = W.ar(w1.ext[(a, d.identity(psa))])
        w_eta = W.ar(T.unit[psa])
        for xo in x.objects:
            for w in x.hom(xo, W.ob(psa)):
                ext[(a, w)] = x.compose(mult, w2.ext[(psa, x.compose(w_eta, w))])
    nm = name or f"{w2.name}.{w1.name}"
    out = EMndMorphism(nm, S, U, compose_functors(W, P), ext)
    bad = emnd_morphism_defect(out)
    if bad is not None:
        raise InternalConsistencyError(f"composite {nm} breaks law {bad[0]} at {bad[1]}")
    return out


# -- 2-cells ------------------------------------------------------------------


class EMndTwoCell:
    __slots__ = ("name", "source", "target", "theta")

    def __init__(self, name, source: EMndMorphism, target: EMndMorphism, theta: NatTrans):
        self.name = name
        self.source = source
        self.target = target
        self.theta = theta

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, EMndTwoCell):
            return NotImplemented
        return self.theta == other.theta and self.source == other.source and self.target == other.target

    def __repr__(self):
        return f"EMndTwoCell({self.name!r}: {self.source.name} => {self.target.name})"


def emnd_two_cell_defect(src: EMndMorphism, tgt: EMndMorphism, theta: NatTrans):
    """First ``(A, p)`` where ``theta_SA`` fails to be an algebra morphism."""
    S = src.source
    for a in S.base.objects:
        q = theta[S.s(a)]
        bad = algebra_morphism_defect(src.target, src.algebra_table(a), tgt.algebra_table(a), q)
        if bad is not None:
            return a, bad
    return None


def validate_emnd_two_cell(name, source: EMndMorphism, target: EMndMorphism, theta) -> EMndTwoCell:
    if source.source != target.source or source.target != target.target:
        raise ShapeMismatch(f"{name}: {source.name} and {target.name} are not parallel")
    comps = theta.components if isinstance(theta, NatTrans) else theta
    theta = validate_nat_trans(f"theta[{name}]", source.P, target.P, comps)
    bad = emnd_two_cell_defect(source, target, theta)
    if bad is not None:
        raise NotAlgebraMorphism(f"{name} at S{bad[0]}", bad[1])
    return EMndTwoCell(name, source, target, theta)


def _recheck(cell: EMndTwoCell) -> EMndTwoCell:
    bad = emnd_two_cell_defect(cell.source, cell.target, cell.theta)
    if bad is not None:
        raise InternalConsistencyError(f"composite {cell.name} is not an algebra morphism at S{bad[0]}")
    return cell


def identity_emnd_two_cell(m: EMndMorphism) -> EMndTwoCell:
    return EMndTwoCell(f"1_{m.name}", m, m, identity_nat(m.P))


def emnd_vertical(c2: EMndTwoCell, c1: EMndTwoCell, name=None) -> EMndTwoCell:
    if c1.target != c2.source:
        raise ShapeMismatch(f"vertical: {c1.name} does not end where {c2.name} starts")
    return _recheck(EMndTwoCell(name or f"{c2.name}.{c1.name}", c1.source, c2.target, vertical(c2.theta, c1.theta)))


def emnd_whisker_forward(w: EMndMorphism, c: EMndTwoCell, name=None) -> EMndTwoCell:
    """``W theta``."""
    if c.source.target != w.source:
        raise ShapeMismatch(f"whisker: {w.name} does not start where {c.name} ends")
    src = emnd_compose_1cells(w, c.source)
    tgt = emnd_compose_1cells(w, c.target)
    t = whisker_left(w.P, c.theta)
    return _recheck(EMndTwoCell(name or f"{w.name}{c.name}", src, tgt, NatTrans(t.name, src.P, tgt.P, t.components)))


def emnd_whisker_back(c: EMndTwoCell, w: EMndMorphism, name=None) -> EMndTwoCell:
    """``xi Q``."""
    if w.target != c.source.source:
        raise ShapeMismatch(f"whisker: {c.name} does not start where {w.name} ends")
    src = emnd_compose_1cells(c.source, w)
    tgt = emnd_compose_1cells(c.target, w)
    t = whisker_right(c.theta, w.P)
    return _recheck(EMndTwoCell(name or f"{c.name}{w.name}", src, tgt, NatTrans(t.name, src.P, tgt.P, t.components)))


def emnd_horizontal(c2: EMndTwoCell, c1: EMndTwoCell, name=None) -> EMndTwoCell:
    """``xi * theta = xi Q . W theta``."""
    out = emnd_vertical(emnd_whisker_back(c2, c1.target), emnd_whisker_forward(c2.source, c1))
    out.name = name or f"{c2.name}*{c1.name}"
    return out


def emnd_horizontal_other_order(c2: EMndTwoCell, c1: EMndTwoCell) -> EMndTwoCell:
    """``K theta . xi P``."""
    return emnd_vertical(emnd_whisker_forward(c2.target, c1), emnd_whisker_back(c2, c1.source))


# -- enumeration of hom-categories ------------------------------------------


def enumerate_emnd_morphisms(source: ExtensiveMonad, target: ExtensiveMonad, budget: int = DEFAULT_BUDGET,
                             target_algebras: AlgebraCategory | None = None) -> list[EMndMorphism]:
    """All 1-cells ``source -> target``.

    For each functor ``P`` the structure on every ``PSA`` is drawn from the
    complete list of target algebras, then condition ii filters.
    """
    em = target_algebras or enumerate_algebras(target, budget)
    c, d = source.base, target.base
    by_carrier: dict = {}
    for alg in em.algebras.values():
        by_carrier.setdefault(alg.carrier, []).append(alg)
    out = []
    for P in enumerate_functors(c, d, budget):
        options = [by_carrier.get(P.ob(source.s(a)), []) for a in c.objects]
        for pick in itertools.product(*options):
            ext = {}
            for a, alg in zip(c.objects, pick):
                for p, v in alg.ext.items():
                    ext[(a, p)] = v
            m = EMndMorphism(one_cell_label(source.name, target.name, len(out)), source, target, P, ext)
            if emnd_morphism_defect(m) is None:
                out.append(m)
                if len(out) > budget:
                    raise SearchBudgetExceeded(f"1-cells {source.name} -> {target.name}", budget)
    return out


def enumerate_emnd_two_cells(source: EMndMorphism, target: EMndMorphism) -> list[EMndTwoCell]:
    out = []
    for theta in enumerate_nat_trans(source.P, target.P):
        if emnd_two_cell_defect(source, target, theta) is None:
            out.append(EMndTwoCell(f"{source.name}=>{target.name}@{len(out)}", source, target, theta))
    return out
