"""Finite categories, functors and natural transformations.

Everything is stored as fully materialised lookup tables keyed by string
identifiers. Values are immutable once validated; all operations are pure.
Composition is written right-to-left throughout: ``compose(g, f)`` is ``g . f``.
"""

from __future__ import annotations

import itertools
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from unimonad.errors import (
    BadIdentity,
    MalformedSpec,
    MissingComposite,
    NonAssociative,
    NotFunctorial,
    NotInvertible,
    NotNatural,
    SearchBudgetExceeded,
    ShapeMismatch,
)


def _frozen(mapping) -> Mapping:
    return MappingProxyType(dict(mapping))


class FinCategory:
    """A category with finitely many objects and morphisms.

    Use :func:`validate_category` to build one from untrusted tables; the
    constructor itself performs no law checks.
    """

    __slots__ = ("name", "objects", "morphisms", "_ends", "_identity", "_compose", "_hom")

    def __init__(self, name: str, objects: Iterable[str], ends: Mapping, identity: Mapping, compose: Mapping):
        self.name = name
        self.objects = tuple(sorted(objects))
        self.morphisms = tuple(sorted(ends))
        self._ends = _frozen(ends)
        self._identity = _frozen(identity)
        self._compose = _frozen(compose)
        hom: dict[tuple[str, str], list[str]] = {(a, b): [] for a in self.objects for b in self.objects}
        for f in self.morphisms:
            hom[self._ends[f]].append(f)
        self._hom = {k: tuple(v) for k, v in hom.items()}

    def __repr__(self):
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self._ends == other._ends
            and self._identity == other._identity
            and self._compose == other._compose
        )

    def __hash__(self):
        return hash((self.objects, self.morphisms))

    # -- lookups -----------------------------------------------------------

    def src(self, f: str) -> str:
        return self._ends[f][0]

    def tgt(self, f: str) -> str:
        return self._ends[f][1]

    def ends(self, f: str) -> tuple[str, str]:
        return self._ends[f]

    def has_object(self, a) -> bool:
        return a in self._identity

    def has_morphism(self, f) -> bool:
        return f in self._ends

    def identity(self, a: str) -> str:
        return self._identity[a]

    def is_identity(self, f: str) -> bool:
        s, t = self._ends[f]
        return s == t and self._identity[s] == f

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        """Morphisms a -> b in lexicographic order."""
        return self._hom[(a, b)]

    def composable(self, g: str, f: str) -> bool:
        return self._ends[f][1] == self._ends[g][0]

    def compose(self, g: str, f: str) -> str:
        try:
            return self._compose[(g, f)]
        except KeyError:
            raise ShapeMismatch(f"{self.name}: {g} . {f} is not composable") from None

    def try_compose(self, g: str, f: str):
        """``g . f`` or ``None`` when the pair is not composable."""
        return self._compose.get((g, f))

    def path(self, *ms: str) -> str:
        """Compose a path written right-to-left: ``path(h, g, f) = h . g . f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for f in self.morphisms:
            for g in self.hom_from(self.tgt(f)):
                yield g, f

    def hom_from(self, a: str) -> tuple[str, ...]:
        return tuple(itertools.chain.from_iterable(self._hom[(a, b)] for b in self.objects))

    def inverse(self, f: str):
        """The two-sided inverse of ``f`` or ``None``."""
        s, t = self._ends[f]
        for g in self.hom(t, s):
            if self._compose[(g, f)] == self._identity[s] and self._compose[(f, g)] == self._identity[t]:
                return g
        return None

    # -- serialisable view -------------------------------------------------

    def tables(self):
        return dict(self._ends), dict(self._identity), dict(self._compose)


def validate_category(name: str, objects, morphisms: Mapping, identity: Mapping, compose: Mapping) -> FinCategory:
    """Check totality, unit laws and associativity, then freeze.

    ``morphisms`` maps id -> (source, target); ``compose`` maps (g, f) -> g . f.
    """
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise MalformedSpec(f"{name}: duplicate object identifiers")
    objs = set(objects)
    for f, (s, t) in morphisms.items():
        if s not in objs or t not in objs:
            raise MalformedSpec(f"{name}: morphism {f} : {s} -> {t} mentions an unknown object")
    for a in sorted(objs):
        if a not in identity:
            raise BadIdentity(a, "no identity declared")
        i = identity[a]
        if i not in morphisms:
            raise BadIdentity(a, f"{i} is not a morphism")
        if tuple(morphisms[i]) != (a, a):
            raise BadIdentity(a, f"{i} is not an endomorphism of {a}")
    for a in identity:
        if a not in objs:
            raise MalformedSpec(f"{name}: identity declared for unknown object {a}")
    for (g, f), h in compose.items():
        if g not in morphisms or f not in morphisms or h not in morphisms:
            raise MalformedSpec(f"{name}: composite {g} . {f} = {h} mentions an unknown morphism")
        if morphisms[f][1] != morphisms[g][0]:
            raise MalformedSpec(f"{name}: {g} . {f} recorded but not composable")
        if tuple(morphisms[h]) != (morphisms[f][0], morphisms[g][1]):
            raise MalformedSpec(f"{name}: {g} . {f} = {h} has the wrong source or target")
    cat = FinCategory(name, objects, {f: tuple(e) for f, e in morphisms.items()}, identity, compose)
    for f in cat.morphisms:
        for g in cat.hom_from(cat.tgt(f)):
            if (g, f) not in compose:
                raise MissingComposite(g, f)
    for f in cat.morphisms:
        s, t = cat.ends(f)
        if cat.compose(cat.identity(t), f) != f:
            raise BadIdentity(t, f"{cat.identity(t)} . {f} != {f}")
        if cat.compose(f, cat.identity(s)) != f:
            raise BadIdentity(s, f"{f} . {cat.identity(s)} != {f}")
    for f in cat.morphisms:
        for g in cat.hom_from(cat.tgt(f)):
            gf = cat.compose(g, f)
            for h in cat.hom_from(cat.tgt(g)):
                left = cat.compose(h, gf)
                right = cat.compose(cat.compose(h, g), f)
                if left != right:
                    raise NonAssociative(h, g, f, left, right)
    return cat


def poset_category(name: str, elements: Iterable[str], leq) -> FinCategory:
    """Thin category of a finite preorder; the arrow a <= b is named ``a→b``.

    ``leq`` is either a predicate ``leq(a, b)`` or an iterable of pairs, in
    which case its reflexive-transitive closure is taken.
    """
    elements = list(elements)
    if callable(leq):
        rel = {(a, b) for a in elements for b in elements if leq(a, b)}
    else:
        rel = set(map(tuple, leq)) | {(a, a) for a in elements}
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in list(itertools.product(rel, rel)):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    ends = {f"{a}→{b}": (a, b) for a, b in rel}
    identity = {a: f"{a}→{a}" for a in elements}
    compose = {}
    for a, b in rel:
        for c in elements:
            if (b, c) in rel:
                compose[(f"{b}→{c}", f"{a}→{b}")] = f"{a}→{c}"
    return validate_category(name, elements, ends, identity, compose)


class ObjectFunction:
    """A bare function on objects, with no action on morphisms."""

    __slots__ = ("name", "source", "target", "obj_map")

    def __init__(self, name: str, source: FinCategory, target: FinCategory, obj_map: Mapping):
        self.name = name
        self.source = source
        self.target = target
        self.obj_map = _frozen(obj_map)

    def ob(self, a):
        return self.obj_map[a]

    def __eq__(self, other):
        if not isinstance(other, ObjectFunction):
            return NotImplemented
        return self.obj_map == other.obj_map and self.source == other.source and self.target == other.target

    def __repr__(self):
        return f"ObjectFunction({self.name!r}: {self.source.name} -> {self.target.name})"


def validate_object_function(name, source: FinCategory, target: FinCategory, obj_map: Mapping) -> ObjectFunction:
    for a in source.objects:
        if a not in obj_map:
            raise MalformedSpec(f"{name}: no image for object {a}")
        if not target.has_object(obj_map[a]):
            raise MalformedSpec(f"{name}: image {obj_map[a]} of {a} is not an object of {target.name}")
    extra = set(obj_map) - set(source.objects)
    if extra:
        raise MalformedSpec(f"{name}: images given for unknown objects {sorted(extra)}")
    return ObjectFunction(name, source, target, obj_map)


class Functor:
    __slots__ = ("name", "source", "target", "obj_map", "mor_map")

    def __init__(self, name: str, source: FinCategory, target: FinCategory, obj_map: Mapping, mor_map: Mapping):
        self.name = name
        self.source = source
        self.target = target
        self.obj_map = _frozen(obj_map)
        self.mor_map = _frozen(mor_map)

    def ob(self, a):
        return self.obj_map[a]

    def ar(self, f):
        return self.mor_map[f]

    def object_function(self) -> ObjectFunction:
        return ObjectFunction(self.name, self.source, self.target, self.obj_map)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self):
        return f"Functor({self.name!r}: {self.source.name} -> {self.target.name})"


def validate_functor(name, source: FinCategory, target: FinCategory, obj_map: Mapping, mor_map: Mapping) -> Functor:
    validate_object_function(name, source, target, obj_map)
    for f in source.morphisms:
        if f not in mor_map:
            raise NotFunctorial(name, f, "no image")
        g = mor_map[f]
        if not target.has_morphism(g):
            raise NotFunctorial(name, f, f"image {g} is not a morphism of {target.name}")
        s, t = source.ends(f)
        if target.ends(g) != (obj_map[s], obj_map[t]):
            raise NotFunctorial(name, f, f"image {g} does not run {obj_map[s]} -> {obj_map[t]}")
    for a in source.objects:
        if mor_map[source.identity(a)] != target.identity(obj_map[a]):
            raise NotFunctorial(name, source.identity(a), "identity not preserved")
    for g, f in source.composable_pairs():
        if mor_map[source.compose(g, f)] != target.compose(mor_map[g], mor_map[f]):
            raise NotFunctorial(name, (g, f), "composition not preserved")
    return Functor(name, source, target, obj_map, mor_map)


def identity_functor(cat: FinCategory) -> Functor:
    return Functor(f"1_{cat.name}", cat, cat, {a: a for a in cat.objects}, {f: f for f in cat.morphisms})


def compose_functors(g: Functor, f: Functor, name=None) -> Functor:
    """``g . f``; laws are preserved so no re-validation happens."""
    if f.target != g.source:
        raise ShapeMismatch(f"cannot compose {g.name} after {f.name}: {f.target.name} != {g.source.name}")
    return Functor(
        name or f"{g.name}{f.name}",
        f.source,
        g.target,
        {a: g.obj_map[b] for a, b in f.obj_map.items()},
        {m: g.mor_map[n] for m, n in f.mor_map.items()},
    )


class NatTrans:
    """A transformation ``source => target`` between parallel functors."""

    __slots__ = ("name", "source", "target", "components")

    def __init__(self, name: str, source: Functor, target: Functor, components: Mapping):
        self.name = name
        self.source = source
        self.target = target
        self.components = _frozen(components)

    def __getitem__(self, a):
        return self.components[a]

    @property
    def dom(self) -> FinCategory:
        return self.source.source

    @property
    def cod(self) -> FinCategory:
        return self.source.target

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.components == other.components and self.source == other.source and self.target == other.target

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            self.cod.identity(self.source.ob(a)) == m for a, m in self.components.items()
        )

    def __repr__(self):
        return f"NatTrans({self.name!r}: {self.source.name} => {self.target.name})"


def _check_parallel(name, f: Functor, g: Functor):
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch(f"{name}: {f.name} and {g.name} are not parallel")


def validate_nat_trans(name, source: Functor, target: Functor, components: Mapping) -> NatTrans:
    _check_parallel(name, source, target)
    dom, cod = source.source, source.target
    for a in dom.objects:
        if a not in components:
            raise NotNatural(name, a, "no component")
        m = components[a]
        if not cod.has_morphism(m) or cod.ends(m) != (source.ob(a), target.ob(a)):
            raise NotNatural(name, a, f"component {m} does not run {source.ob(a)} -> {target.ob(a)}")
    for f in dom.morphisms:
        s, t = dom.ends(f)
        if cod.compose(target.ar(f), components[s]) != cod.compose(components[t], source.ar(f)):
            raise NotNatural(name, f, "naturality square does not commute")
    return NatTrans(name, source, target, components)


def identity_nat(f: Functor, name=None) -> NatTrans:
    return NatTrans(name or f"1_{f.name}", f, f, {a: f.target.identity(f.ob(a)) for a in f.source.objects})


def vertical(b: NatTrans, a: NatTrans, name=None) -> NatTrans:
    """``b . a`` for ``a: F => G`` and ``b: G => H``."""
    if a.target != b.source:
        raise ShapeMismatch(f"vertical: target of {a.name} is not the source of {b.name}")
    cod = a.cod
    return NatTrans(
        name or f"{b.name}.{a.name}",
        a.source,
        b.target,
        {x: cod.compose(b[x], a[x]) for x in a.dom.objects},
    )


def whisker_left(h: Functor, a: NatTrans, name=None) -> NatTrans:
    """``H a``: post-compose the transformation with a functor."""
    if a.cod != h.source:
        raise ShapeMismatch(f"whisker: {h.name} cannot follow {a.name}")
    return NatTrans(
        name or f"{h.name}{a.name}",
        compose_functors(h, a.source),
        compose_functors(h, a.target),
        {x: h.ar(m) for x, m in a.components.items()},
    )


def whisker_right(a: NatTrans, h: Functor, name=None) -> NatTrans:
    """``a H``: pre-compose the transformation with a functor."""
    if h.target != a.dom:
        raise ShapeMismatch(f"whisker: {a.name} cannot follow {h.name}")
    return NatTrans(
        name or f"{a.name}{h.name}",
        compose_functors(a.source, h),
        compose_functors(a.target, h),
        {x: a[h.ob(x)] for x in h.source.objects},
    )


def horizontal(c: NatTrans, a: NatTrans, name=None) -> NatTrans:
    """``c * a = cG . Ha`` for ``a: F => G`` and ``c: H => K``."""
    return vertical(whisker_right(c, a.target), whisker_left(c.source, a), name=name or f"{c.name}*{a.name}")


def horizontal_other_order(c: NatTrans, a: NatTrans) -> NatTrans:
    """``Ka . cF``, which the interchange law says equals :func:`horizontal`."""
    return vertical(whisker_left(c.target, a), whisker_right(c, a.source))


def interchange_holds(c: NatTrans, a: NatTrans) -> bool:
    return horizontal(c, a) == horizontal_other_order(c, a)


def invert_nat_iso(t: NatTrans, name=None) -> NatTrans:
    comps = {}
    for a in t.dom.objects:
        inv = t.cod.inverse(t[a])
        if inv is None:
            raise NotInvertible(t.name, a)
        comps[a] = inv
    return NatTrans(name or f"{t.name}^-1", t.target, t.source, comps)


def is_inverse_pair(t: NatTrans, u: NatTrans) -> bool:
    return vertical(u, t).is_identity() and vertical(t, u).is_identity()


# -- enumeration --------------------------------------------------------------


def enumerate_functors(source: FinCategory, target: FinCategory, budget: int | None = None) -> list[Functor]:
    """Every functor ``source -> target`` in deterministic order."""
    found = []
    visited = 0
    morphs = [f for f in source.morphisms if not source.is_identity(f)]
    pairs = [(g, f) for g, f in source.composable_pairs()]

    for images in itertools.product(target.objects, repeat=len(source.objects)):
        obj_map = dict(zip(source.objects, images))
        mor_map = {source.identity(a): target.identity(obj_map[a]) for a in source.objects}
        choices = [target.hom(obj_map[source.src(f)], obj_map[source.tgt(f)]) for f in morphs]
        if any(not c for c in choices):
            continue

        def consistent(mm):
            for g, f in pairs:
                h = source.compose(g, f)
                if g in mm and f in mm and h in mm:
                    if target.compose(mm[g], mm[f]) != mm[h]:
                        return False
            return True

        def search(i):
            nonlocal visited
            visited += 1
            if budget is not None and visited > budget:
                raise SearchBudgetExceeded(f"functors {source.name} -> {target.name}", budget)
            if i == len(morphs):
                found.append(
                    Functor(f"F{len(found)}", source, target, obj_map, dict(mor_map))
                )
                return
            f = morphs[i]
            for g in choices[i]:
                mor_map[f] = g
                if consistent(mor_map):
                    search(i + 1)
                del mor_map[f]

        search(0)
    return found


def enumerate_nat_trans(source: Functor, target: Functor) -> list[NatTrans]:
    """Every natural transformation ``source => target``."""
    _check_parallel("enumerate_nat_trans", source, target)
    dom, cod = source.source, source.target
    choices = [cod.hom(source.ob(a), target.ob(a)) for a in dom.objects]
    out = []
    for comps in itertools.product(*choices):
        table = dict(zip(dom.objects, comps))
        ok = all(
            cod.compose(target.ar(f), table[dom.src(f)]) == cod.compose(table[dom.tgt(f)], source.ar(f))
            for f in dom.morphisms
        )
        if ok:
            out.append(NatTrans(f"t{len(out)}", source, target, table))
    return out


def one_cell_label(source: str, target: str, index: int) -> str:
    """Name for the ``index``-th enumerated 1-cell between two named objects."""
    return f"{source}#{index}" if source == target else f"{source}>{target}#{index}"
