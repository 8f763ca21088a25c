"""Line-oriented spec files: parsing into a :class:`Workspace` and writing back.

A block starts with a header line whose first word is a kind keyword; the
following non-header lines are its body. Blocks may appear in any order and
across several files. ``#`` at the start of a word begins a comment.
Identifiers are single words without commas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from unimonad import classical as cl
from unimonad.emnd import (
    Algebra,
    EMndMorphism,
    EMndTwoCell,
    ExtensiveMonad,
    validate_algebra,
    validate_emnd_morphism,
    validate_emnd_two_cell,
    validate_extensive_monad,
)
from unimonad.errors import CategoryError, MalformedSpec, ParseError, UnknownEntity
from unimonad.fincat import FinCategory, Functor, NatTrans, validate_category, validate_functor, validate_nat_trans
from unimonad.uarr import (
    UArrMorphism,
    UArrTwoCell,
    UniversalArrow,
    validate_uarr_morphism,
    validate_uarr_two_cell,
    validate_universal_arrow,
)

# Build order: every kind only refers to kinds listed before it.
KINDS = (
    "category", "functor", "nat", "uarrow", "emonad", "algebra", "cmonad", "adjunction",
    "umorphism", "emorphism", "cmorphism", "amorphism", "ucell", "ecell", "ccell", "acell",
)

HEADER_SHAPES = {
    "category": (),
    "functor": (":", None, "->", None),
    "nat": (":", None, "=>", None),
    "uarrow": (":", None, "|", None),
    "emonad": ("on", None),
    "algebra": ("of", None, "on", None),
    "cmonad": ("on", None),
    "adjunction": (":", None, "->", None),
    "umorphism": (":", None, "->", None),
    "emorphism": (":", None, "->", None),
    "cmorphism": (":", None, "->", None),
    "amorphism": (":", None, "->", None),
    "ucell": (":", None, "=>", None),
    "ecell": (":", None, "=>", None),
    "ccell": (":", None, "=>", None),
    "acell": (":", None, "=>", None),
}

KIND_OF_TYPE = {
    FinCategory: "category",
    Functor: "functor",
    NatTrans: "nat",
    UniversalArrow: "uarrow",
    ExtensiveMonad: "emonad",
    Algebra: "algebra",
    cl.ClassicalMonad: "cmonad",
    cl.Adjunction: "adjunction",
    UArrMorphism: "umorphism",
    EMndMorphism: "emorphism",
    cl.MonadMorphism: "cmorphism",
    cl.AdjMorphism: "amorphism",
    UArrTwoCell: "ucell",
    EMndTwoCell: "ecell",
    cl.MonadTwoCell: "ccell",
    cl.AdjTwoCell: "acell",
}


class DependencyFailed(CategoryError):
    """A block refers to an entity that failed validation."""


def kind_of(obj) -> str:
    try:
        return KIND_OF_TYPE[type(obj)]
    except KeyError:
        raise TypeError(f"no spec kind for {type(obj).__name__}") from None


@dataclass
class Block:
    kind: str
    name: str
    refs: tuple
    line: int
    source: str
    body: list = field(default_factory=list)

    def fail(self, message, line=None):
        raise ParseError(f"{self.kind} {self.name}: {message}", line or self.line, self.source)


def _strip_comment(line: str) -> list[str]:
    out = []
    for word in line.split():
        if word.startswith("#"):
            break
        out.append(word)
    return out


def split_blocks(text: str, source: str = "<input>") -> list[Block]:
    blocks: list[Block] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = _strip_comment(raw)
        if not words:
            continue
        head = words[0]
        if head in HEADER_SHAPES:
            if len(words) < 2:
                raise ParseError(f"{head} header needs a name", lineno, source)
            shape = HEADER_SHAPES[head]
            rest = words[2:]
            if len(rest) != len(shape) or any(s is not None and s != w for s, w in zip(shape, rest)):
                expected = " ".join(s or "<name>" for s in shape)
                raise ParseError(f"{head} header must read '{head} <name> {expected}'".rstrip(), lineno, source)
            refs = tuple(w for s, w in zip(shape, rest) if s is None)
            blocks.append(Block(head, words[1], refs, lineno, source))
        elif not blocks:
            raise ParseError(f"directive {head!r} outside any block", lineno, source)
        else:
            blocks[-1].body.append((lineno, words))
    return blocks


def _mapping(block: Block, key: str, words, line, arity: int = 1):
    """``key <a>[,<b>...] => <m>``."""
    if len(words) != 4 or words[2] != "=>":
        block.fail(f"expected '{key} <args> => <value>'", line)
    args = words[1].split(",")
    if len(args) != arity or not all(args):
        block.fail(f"{key} expects {arity} comma-separated argument(s)", line)
    return (args[0] if arity == 1 else tuple(args)), words[3]


def _single(block: Block, words, line):
    if len(words) != 2:
        block.fail(f"expected '{words[0]} <name>'", line)
    return words[1]


class Workspace:
    """Named registry of parsed or constructed entities, one namespace per kind."""

    def __init__(self):
        self.entries: dict[str, dict] = {k: {} for k in KINDS}
        self.failed: set = set()

    # -- registry --

    def add(self, kind: str, name: str, obj):
        table = self.entries[kind]
        if name in table:
            raise MalformedSpec(f"duplicate {kind} {name!r}")
        table[name] = obj
        return obj

    def add_entity(self, obj, name=None):
        return self.add(kind_of(obj), name or obj.name, obj)

    def lookup(self, kind: str, name: str):
        try:
            return self.entries[kind][name]
        except KeyError:
            raise UnknownEntity(name, kind) from None

    def find(self, name: str):
        """``(kind, entity)`` for a name that is unique across kinds."""
        hits = [(k, t[name]) for k, t in self.entries.items() if name in t]
        if not hits:
            raise UnknownEntity(name)
        if len(hits) > 1:
            raise MalformedSpec(f"{name!r} names several entities: {[k for k, _ in hits]}")
        return hits[0]

    def items(self, kind: str):
        return list(self.entries[kind].items())

    def __iter__(self):
        for kind in KINDS:
            yield from ((kind, n, o) for n, o in self.entries[kind].items())

    # -- loading --

    @classmethod
    def from_text(cls, text: str, source: str = "<input>") -> "Workspace":
        ws = cls()
        ws.load_blocks(split_blocks(text, source))
        return ws

    @classmethod
    def from_files(cls, paths) -> "Workspace":
        ws = cls()
        blocks = []
        for p in paths:
            blocks.extend(split_blocks(Path(p).read_text(encoding="utf-8"), str(p)))
        ws.load_blocks(blocks)
        return ws

    def load_text(self, text: str, source: str = "<input>"):
        self.load_blocks(split_blocks(text, source))

    def load_blocks(self, blocks: list[Block], outcomes: list | None = None):
        """Build every block in dependency order.

        With ``outcomes`` given, a block failing validation is recorded as
        ``(block, exception)`` instead of raised, and blocks depending on it
        are recorded with :class:`DependencyFailed`. Syntax errors and
        unknown references always raise.
        """
        seen = set()
        for b in blocks:
            if (b.kind, b.name) in seen or b.name in self.entries[b.kind]:
                b.fail("duplicate definition")
            seen.add((b.kind, b.name))
        for kind in KINDS:
            for b in blocks:
                if b.kind != kind:
                    continue
                if outcomes is None:
                    self.add(kind, b.name, getattr(self, f"_build_{kind}")(b))
                    continue
                try:
                    self.add(kind, b.name, getattr(self, f"_build_{kind}")(b))
                except ParseError:
                    raise
                except CategoryError as exc:
                    self.failed.add((kind, b.name))
                    outcomes.append((b, exc))
                else:
                    outcomes.append((b, None))

    def _ref(self, block: Block, kind: str, name: str):
        if (kind, name) in self.failed:
            raise DependencyFailed(f"{block.kind} {block.name}: depends on invalid {kind} {name!r}")
        if name not in self.entries[kind]:
            block.fail(f"unknown {kind} {name!r}")
        return self.entries[kind][name]

    def _body(self, block: Block, allowed: dict):
        """Collect directives; ``allowed`` maps keyword to arity (0 = single value)."""
        single, tables = {}, {k: {} for k, n in allowed.items() if n}
        for line, words in block.body:
            key = words[0]
            if key not in allowed:
                block.fail(f"unexpected directive {key!r}", line)
            if allowed[key] == 0:
                if key in single:
                    block.fail(f"duplicate {key}", line)
                single[key] = _single(block, words, line)
            else:
                k, v = _mapping(block, key, words, line, allowed[key])
                if k in tables[key]:
                    block.fail(f"duplicate {key} at {k}", line)
                tables[key][k] = v
        return single, tables

    def _need(self, block, single, key):
        if key not in single:
            block.fail(f"missing '{key}' directive")
        return single[key]

    # -- builders, one per kind --

    def _build_category(self, b: Block):
        objects, ends, identity, compose = [], {}, {}, {}
        for line, w in b.body:
            key = w[0]
            if key == "object":
                if len(w) < 2:
                    b.fail("object needs at least one id", line)
                for o in w[1:]:
                    if o in objects:
                        b.fail(f"duplicate object {o}", line)
                    objects.append(o)
            elif key == "morphism":
                if len(w) != 6 or w[2] != ":" or w[4] != "->":
                    b.fail("expected 'morphism <id> : <src> -> <tgt>'", line)
                if w[1] in ends:
                    b.fail(f"duplicate morphism {w[1]}", line)
                ends[w[1]] = (w[3], w[5])
            elif key == "identity":
                if len(w) != 4 or w[2] != "=":
                    b.fail("expected 'identity <obj> = <id>'", line)
                if w[1] in identity:
                    b.fail(f"duplicate identity at {w[1]}", line)
                identity[w[1]] = w[3]
            elif key == "compose":
                if len(w) != 6 or w[2] != "." or w[4] != "=":
                    b.fail("expected 'compose <g> . <f> = <h>'", line)
                if (w[1], w[3]) in compose:
                    b.fail(f"duplicate composite {w[1]} . {w[3]}", line)
                compose[(w[1], w[3])] = w[5]
            else:
                b.fail(f"unexpected directive {key!r}", line)
        return validate_category(b.name, objects, ends, identity, compose)

    def _build_functor(self, b: Block):
        c = self._ref(b, "category", b.refs[0])
        d = self._ref(b, "category", b.refs[1])
        _, t = self._body(b, {"on-object": 1, "on-morphism": 1})
        return validate_functor(b.name, c, d, t["on-object"], t["on-morphism"])

    def _build_nat(self, b: Block):
        f = self._ref(b, "functor", b.refs[0])
        g = self._ref(b, "functor", b.refs[1])
        _, t = self._body(b, {"at": 1})
        return validate_nat_trans(b.name, f, g, t["at"])

    def _build_uarrow(self, b: Block):
        c = self._ref(b, "category", b.refs[0])
        x = self._ref(b, "category", b.refs[1])
        s, t = self._body(b, {"right": 0, "left": 1, "unit": 1})
        r = self._ref(b, "functor", self._need(b, s, "right"))
        return validate_universal_arrow(b.name, c, x, r, t["left"], t["unit"])

    def _build_emonad(self, b: Block):
        c = self._ref(b, "category", b.refs[0])
        _, t = self._body(b, {"S": 1, "unit": 1, "ext": 3})
        return validate_extensive_monad(b.name, c, t["S"], t["unit"], t["ext"])

    def _build_algebra(self, b: Block):
        m = self._ref(b, "emonad", b.refs[0])
        _, t = self._body(b, {"ext": 1})
        return validate_algebra(b.name, m, b.refs[1], t["ext"])

    def _build_cmonad(self, b: Block):
        c = self._ref(b, "category", b.refs[0])
        s, t = self._body(b, {"endo": 0, "unit": 1, "mult": 1})
        endo = self._ref(b, "functor", self._need(b, s, "endo"))
        if endo.source != c:
            b.fail(f"endofunctor {endo.name} is not on {c.name}")
        return cl.validate_classical_monad(b.name, endo, t["unit"], t["mult"])

    def _build_adjunction(self, b: Block):
        s, t = self._body(b, {"left": 0, "right": 0, "unit": 1, "counit": 1})
        L = self._ref(b, "functor", self._need(b, s, "left"))
        R = self._ref(b, "functor", self._need(b, s, "right"))
        c = self._ref(b, "category", b.refs[0])
        x = self._ref(b, "category", b.refs[1])
        if L.source != c or L.target != x:
            b.fail(f"left functor {L.name} must run {c.name} -> {x.name}")
        return cl.validate_adjunction(b.name, L, R, t["unit"], t["counit"])

    def _build_umorphism(self, b: Block):
        u = self._ref(b, "uarrow", b.refs[0])
        u2 = self._ref(b, "uarrow", b.refs[1])
        s, t = self._body(b, {"J": 0, "V": 0, "rho": 1})
        J = self._ref(b, "functor", self._need(b, s, "J"))
        V = self._ref(b, "functor", self._need(b, s, "V"))
        return validate_uarr_morphism(b.name, u, u2, J, V, t["rho"])

    def _build_emorphism(self, b: Block):
        m = self._ref(b, "emonad", b.refs[0])
        n = self._ref(b, "emonad", b.refs[1])
        s, t = self._body(b, {"P": 0, "ext": 2})
        P = self._ref(b, "functor", self._need(b, s, "P"))
        return validate_emnd_morphism(b.name, m, n, P, t["ext"])

    def _build_cmorphism(self, b: Block):
        m = self._ref(b, "cmonad", b.refs[0])
        n = self._ref(b, "cmonad", b.refs[1])
        s, t = self._body(b, {"P": 0, "phi": 1})
        P = self._ref(b, "functor", self._need(b, s, "P"))
        return cl.validate_monad_morphism(b.name, m, n, P, t["phi"])

    def _build_amorphism(self, b: Block):
        a = self._ref(b, "adjunction", b.refs[0])
        a2 = self._ref(b, "adjunction", b.refs[1])
        s, t = self._body(b, {"J": 0, "V": 0, "rho": 1, "lambda": 1})
        J = self._ref(b, "functor", self._need(b, s, "J"))
        V = self._ref(b, "functor", self._need(b, s, "V"))
        return cl.validate_adj_morphism(b.name, a, a2, J, V, t["rho"], t["lambda"])

    def _build_ucell(self, b: Block):
        m1 = self._ref(b, "umorphism", b.refs[0])
        m2 = self._ref(b, "umorphism", b.refs[1])
        _, t = self._body(b, {"alpha": 1, "beta": 1})
        return validate_uarr_two_cell(b.name, m1, m2, t["alpha"], t["beta"])

    def _build_ecell(self, b: Block):
        w1 = self._ref(b, "emorphism", b.refs[0])
        w2 = self._ref(b, "emorphism", b.refs[1])
        _, t = self._body(b, {"theta": 1})
        return validate_emnd_two_cell(b.name, w1, w2, t["theta"])

    def _build_ccell(self, b: Block):
        m1 = self._ref(b, "cmorphism", b.refs[0])
        m2 = self._ref(b, "cmorphism", b.refs[1])
        _, t = self._body(b, {"theta": 1})
        return cl.validate_monad_two_cell(b.name, m1, m2, t["theta"])

    def _build_acell(self, b: Block):
        a1 = self._ref(b, "amorphism", b.refs[0])
        a2 = self._ref(b, "amorphism", b.refs[1])
        _, t = self._body(b, {"alpha": 1, "beta": 1})
        return cl.validate_adj_two_cell(b.name, a1, a2, t["alpha"], t["beta"])


# -- writing ------------------------------------------------------------------


def _token(name: str) -> str:
    return "".join("_" if ch.isspace() or ch == "," else ch for ch in str(name))


class SpecWriter:
    """Emit entities with their dependencies; entities already present in
    ``known`` are referenced by their registered name and not re-emitted."""

    def __init__(self, known: Workspace | None = None):
        self.known = known
        self.chunks: list[str] = []
        self._emitted: dict[str, list] = {k: [] for k in KINDS}
        self._used: dict[str, set] = {k: set() for k in KINDS}
        if known is not None:
            for kind in KINDS:
                self._used[kind].update(known.entries[kind])

    def text(self) -> str:
        return "\n".join(self.chunks)

    def name_of(self, obj, fresh: bool = False) -> str:
        """Name under which ``obj`` can be referenced, emitting it if needed.

        With ``fresh`` the object is written out under its own name even when
        an equal entity is already known or emitted; its dependencies may
        still be shared.
        """
        kind = kind_of(obj)
        if self.known is not None and not fresh:
            for n, o in self.known.entries[kind].items():
                if o is obj or _same(o, obj):
                    return n
        for n, o in self._emitted[kind]:
            if o is obj or (not fresh and _same(o, obj)):
                return n
        base = _token(obj.name)
        name, k = base, 1
        while name in self._used[kind]:
            k += 1
            name = f"{base}~{k}"
        self._used[kind].add(name)
        self._emitted[kind].append((name, obj))
        self.chunks.append(getattr(self, f"_write_{kind}")(obj, name))
        return name

    # Each writer resolves dependencies before its own chunk is appended, so
    # the nested name_of calls happen first and emit earlier chunks.

    def _write_category(self, c: FinCategory, name):
        lines = [f"category {name}", "  object " + " ".join(c.objects)]
        for f in c.morphisms:
            s, t = c.ends(f)
            lines.append(f"  morphism {f} : {s} -> {t}")
        for a in c.objects:
            lines.append(f"  identity {a} = {c.identity(a)}")
        for g, f in c.composable_pairs():
            lines.append(f"  compose {g} . {f} = {c.compose(g, f)}")
        return "\n".join(lines) + "\n"

    def _write_functor(self, f: Functor, name):
        src, tgt = self.name_of(f.source), self.name_of(f.target)
        lines = [f"functor {name} : {src} -> {tgt}"]
        lines += [f"  on-object {a} => {f.ob(a)}" for a in f.source.objects]
        lines += [f"  on-morphism {m} => {f.ar(m)}" for m in f.source.morphisms]
        return "\n".join(lines) + "\n"

    def _write_nat(self, t: NatTrans, name):
        src, tgt = self.name_of(t.source), self.name_of(t.target)
        lines = [f"nat {name} : {src} => {tgt}"]
        lines += [f"  at {a} => {t[a]}" for a in t.dom.objects]
        return "\n".join(lines) + "\n"

    def _write_uarrow(self, u: UniversalArrow, name):
        c, x, r = self.name_of(u.base), self.name_of(u.upstairs), self.name_of(u.right)
        lines = [f"uarrow {name} : {c} | {x}", f"  right {r}"]
        lines += [f"  left {a} => {u.left.ob(a)}" for a in u.base.objects]
        lines += [f"  unit {a} => {u.unit[a]}" for a in u.base.objects]
        return "\n".join(lines) + "\n"

    def _write_emonad(self, m: ExtensiveMonad, name):
        c = self.name_of(m.base)
        lines = [f"emonad {name} on {c}"]
        lines += [f"  S {a} => {m.s(a)}" for a in m.base.objects]
        lines += [f"  unit {a} => {m.unit[a]}" for a in m.base.objects]
        lines += [f"  ext {a},{b},{h} => {v}" for (a, b, h), v in sorted(m.ext.items())]
        return "\n".join(lines) + "\n"

    def _write_algebra(self, alg: Algebra, name):
        m = self.name_of(alg.monad)
        lines = [f"algebra {name} of {m} on {alg.carrier}"]
        lines += [f"  ext {a} => {v}" for a, v in sorted(alg.ext.items())]
        return "\n".join(lines) + "\n"

    def _write_cmonad(self, cm, name):
        c, s = self.name_of(cm.base), self.name_of(cm.S)
        lines = [f"cmonad {name} on {c}", f"  endo {s}"]
        lines += [f"  unit {a} => {cm.unit[a]}" for a in cm.base.objects]
        lines += [f"  mult {a} => {cm.mult[a]}" for a in cm.base.objects]
        return "\n".join(lines) + "\n"

    def _write_adjunction(self, adj, name):
        c, x = self.name_of(adj.base), self.name_of(adj.upstairs)
        left, right = self.name_of(adj.L), self.name_of(adj.R)
        lines = [f"adjunction {name} : {c} -> {x}", f"  left {left}", f"  right {right}"]
        lines += [f"  unit {a} => {adj.unit[a]}" for a in adj.base.objects]
        lines += [f"  counit {x_} => {adj.counit[x_]}" for x_ in adj.upstairs.objects]
        return "\n".join(lines) + "\n"

    def _write_umorphism(self, m: UArrMorphism, name):
        s, t = self.name_of(m.source), self.name_of(m.target)
        J, V = self.name_of(m.J), self.name_of(m.V)
        lines = [f"umorphism {name} : {s} -> {t}", f"  J {J}", f"  V {V}"]
        lines += [f"  rho {x} => {m.rho[x]}" for x in m.source.upstairs.objects]
        return "\n".join(lines) + "\n"

    def _write_emorphism(self, w: EMndMorphism, name):
        s, t, P = self.name_of(w.source), self.name_of(w.target), self.name_of(w.P)
        lines = [f"emorphism {name} : {s} -> {t}", f"  P {P}"]
        lines += [f"  ext {a},{p} => {v}" for (a, p), v in sorted(w.ext.items())]
        return "\n".join(lines) + "\n"

    def _write_cmorphism(self, mm, name):
        s, t, P = self.name_of(mm.source), self.name_of(mm.target), self.name_of(mm.P)
        lines = [f"cmorphism {name} : {s} -> {t}", f"  P {P}"]
        lines += [f"  phi {a} => {mm.phi[a]}" for a in mm.source.base.objects]
        return "\n".join(lines) + "\n"

    def _write_amorphism(self, am, name):
        s, t = self.name_of(am.source), self.name_of(am.target)
        J, V = self.name_of(am.J), self.name_of(am.V)
        lines = [f"amorphism {name} : {s} -> {t}", f"  J {J}", f"  V {V}"]
        lines += [f"  rho {x} => {am.rho[x]}" for x in am.source.upstairs.objects]
        lines += [f"  lambda {a} => {am.lam[a]}" for a in am.source.base.objects]
        return "\n".join(lines) + "\n"

    def _write_ucell(self, c: UArrTwoCell, name):
        s, t = self.name_of(c.source), self.name_of(c.target)
        lines = [f"ucell {name} : {s} => {t}"]
        lines += [f"  alpha {a} => {c.alpha[a]}" for a in c.alpha.dom.objects]
        lines += [f"  beta {x} => {c.beta[x]}" for x in c.beta.dom.objects]
        return "\n".join(lines) + "\n"

    def _write_ecell(self, c: EMndTwoCell, name):
        s, t = self.name_of(c.source), self.name_of(c.target)
        lines = [f"ecell {name} : {s} => {t}"]
        lines += [f"  theta {a} => {c.theta[a]}" for a in c.theta.dom.objects]
        return "\n".join(lines) + "\n"

    def _write_ccell(self, c, name):
        s, t = self.name_of(c.source), self.name_of(c.target)
        lines = [f"ccell {name} : {s} => {t}"]
        lines += [f"  theta {a} => {c.theta[a]}" for a in c.theta.dom.objects]
        return "\n".join(lines) + "\n"

    def _write_acell(self, c, name):
        s, t = self.name_of(c.source), self.name_of(c.target)
        lines = [f"acell {name} : {s} => {t}"]
        lines += [f"  alpha {a} => {c.alpha[a]}" for a in c.alpha.dom.objects]
        lines += [f"  beta {x} => {c.beta[x]}" for x in c.beta.dom.objects]
        return "\n".join(lines) + "\n"


def _same(a, b) -> bool:
    return type(a) is type(b) and a == b


def write_entities(entities, known: Workspace | None = None) -> str:
    w = SpecWriter(known)
    for e in entities:
        w.name_of(e, fresh=True)
    return w.text()
