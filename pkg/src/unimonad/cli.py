"""Command-line entry point.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import sys

from unimonad import bridge, classical as cl, fixtures
from unimonad.emnd import DEFAULT_BUDGET, enumerate_emnd_morphisms, enumerate_emnd_two_cells
from unimonad.errors import CategoryError, MalformedSpec, SearchBudgetExceeded
from unimonad.report import Report
from unimonad.specfile import DependencyFailed, Workspace, split_blocks, write_entities
from unimonad.uarr import enumerate_uarr_morphisms, enumerate_uarr_two_cells

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- workspaces ---------------------------------------------------------------


def fixture_text(random_seeds=(), builtin: bool = True) -> str:
    """Spec text for the built-in fixtures and/or the seeded random closures."""
    fx = fixtures.builtin_fixtures(random_seeds)
    entities = [*fx.arrows.values(), *fx.monads.values(), *fx.umorphisms.values(), *fx.ucells.values()]
    if not builtin:
        entities = [e for e in entities if e.name.startswith(("RandArrow", "RandClo"))]
    return write_entities(entities)


def load_workspace(files, with_fixtures: bool, outcomes=None) -> Workspace:
    blocks = []
    if with_fixtures:
        blocks.extend(split_blocks(fixture_text(), "<fixtures>"))
    for path in files:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        blocks.extend(split_blocks(text, path))
    ws = Workspace()
    ws.load_blocks(blocks, outcomes)
    return ws


def _spread(items: list, limit: int | None) -> list:
    """At most ``limit`` items, evenly spaced and in their original order."""
    if limit is None or len(items) <= limit:
        return list(items)
    if limit <= 0:
        return []
    step = (len(items) - 1) / max(limit - 1, 1)
    return [items[round(i * step)] for i in range(limit)]


def endo_cells(u, strict: bool, limit: int | None, budget: int):
    ms = _spread(enumerate_uarr_morphisms(u, u, strict=strict, budget=budget), limit)
    cells = [c for m1 in ms for m2 in ms for c in enumerate_uarr_two_cells(m1, m2)]
    return ms, _spread(cells, limit)


def monad_endo_cells(m, limit: int | None, budget: int):
    ws = _spread(enumerate_emnd_morphisms(m, m, budget), limit)
    cells = [c for w1 in ws for w2 in ws for c in enumerate_emnd_two_cells(w1, w2)]
    return ws, _spread(cells, limit)


# -- commands -------------------------------------------------------------------


def cmd_validate(files, with_fixtures: bool, budget: int = DEFAULT_BUDGET) -> Report:
    outcomes: list = []
    ws = load_workspace(files, with_fixtures, outcomes)
    report = Report("validate")
    for block, exc in outcomes:
        label = f"{block.kind} {block.name}"
        if exc is None:
            report.add(label, "pass")
        elif isinstance(exc, DependencyFailed):
            report.add(label, "error", exc)
        else:
            report.add(label, "fail", f"{type(exc).__name__}: {exc}")
    for name, m in ws.items("emonad"):
        try:
            em = bridge.algebra_category(m, budget)
            report.add(f"algebras {name}", "pass", f"count={len(em.algebras)}")
        except SearchBudgetExceeded as exc:
            report.add(f"algebras {name}", "error", exc)
    return report


DERIVATIONS = {
    "phi": {"uarrow": bridge.phi_on_object, "umorphism": bridge.phi_on_morphism, "ucell": bridge.phi_on_two_cell},
    "psi": {"emonad": bridge.psi_on_object, "emorphism": bridge.psi_on_morphism, "ecell": bridge.psi_on_two_cell},
    "F": {"uarrow": cl.F_on_object, "umorphism": cl.F_on_morphism, "ucell": cl.F_on_two_cell},
    "G": {"adjunction": cl.G_on_object, "amorphism": cl.G_on_morphism, "acell": cl.G_on_two_cell},
    "H": {"emonad": cl.H_on_object, "emorphism": cl.H_on_morphism, "ecell": cl.H_on_two_cell},
    "K": {"cmonad": cl.K_on_object, "cmorphism": cl.K_on_morphism, "ccell": cl.K_on_two_cell},
}


def derive(ws: Workspace, entity: str, functor: str):
    kind, obj = ws.find(entity)
    table = DERIVATIONS[functor]
    if kind not in table:
        raise UsageError(f"{functor} does not apply to {kind} {entity}; it takes {', '.join(table)}")
    return table[kind](obj)


def cmd_derive(ws: Workspace, entity: str, functor: str) -> str:
    return write_entities([derive(ws, entity, functor)], known=ws)


def cmd_adjunction(ws: Workspace, arrow: str, monad: str | None, strict: bool,
                   budget: int = DEFAULT_BUDGET, limit: int | None = None) -> Report:
    u = ws.lookup("uarrow", arrow)
    m = ws.lookup("emonad", monad) if monad else bridge.phi_on_object(u)
    label = f"adjunction {arrow} {monad or f'Phi({arrow})'}" + (" --strict" if strict else "")
    report = Report(label)
    report.extend(bridge.check_triangular_identities(u, budget))
    report.extend(bridge.check_triangular_identities(m, budget))
    hb = bridge.check_hom_bijection(u, m, budget)
    report.add(f"hom-bijection {arrow} {m.name}", hb.passed,
               f"|Hom(phi U, M)|={hb.emnd_side} |Hom(U, psi M)|={hb.uarr_side} injective={hb.injective} "
               f"surjective={hb.surjective} inverse={hb.inverse_agrees}")
    declared = [c for _, c in ws.items("ucell") if c.source.source == u and c.source.target == u]
    _, enumerated = endo_cells(u, strict, limit, budget)
    cells = declared + enumerated
    if strict:
        cells = [c for c in cells if c.source.is_strict() and c.target.is_strict()]
    for c in cells:
        v = bridge.check_unit_2naturality(c, budget)
        report.add(f"unit-2-naturality {c.name}", v.holds, "" if v.holds else f"X={v.witness}")
        if not v.cross_check_agrees:
            report.add(f"unit-2-naturality-cross-check {c.name}", "error", "whiskered cells disagree")
    return report


def cmd_roundtrip(ws: Workspace, entity: str, budget: int = DEFAULT_BUDGET, limit: int | None = None) -> Report:
    kind, obj = ws.find(entity)
    report = Report(f"roundtrip {entity}")
    if kind == "uarrow":
        ms, cells = endo_cells(obj, False, limit, budget)
        report.extend(cl.roundtrip_arrow_side(obj, ms, cells))
    elif kind == "adjunction":
        u = cl.G_on_object(obj)
        ms, cells = endo_cells(u, False, limit, budget)
        report.extend(cl.roundtrip_arrow_side(u, ms, cells))
    elif kind == "emonad":
        ms, cells = monad_endo_cells(obj, limit, budget)
        report.extend(cl.roundtrip_monad_side(obj, ms, cells))
    elif kind == "cmonad":
        m = cl.K_on_object(obj)
        ms, cells = monad_endo_cells(m, limit, budget)
        report.extend(cl.roundtrip_monad_side(m, ms, cells))
    elif kind == "umorphism":
        report.extend(cl.roundtrip_arrow_side(obj.source, [obj]))
    elif kind == "ucell":
        report.extend(cl.roundtrip_arrow_side(obj.source.source, [obj.source, obj.target], [obj]))
    elif kind == "emorphism":
        report.extend(cl.roundtrip_monad_side(obj.source, [obj]))
    elif kind == "ecell":
        report.extend(cl.roundtrip_monad_side(obj.source.source, [obj.source, obj.target], [obj]))
    else:
        raise UsageError(f"roundtrip does not apply to {kind} {entity}")
    return report


SQUARE_GROUPS = ("builtin", "random", "all", "workspace")


def square_inputs(ws: Workspace, group: str):
    arrows, monads, ums, ucs = [], [], [], []
    if group in ("builtin", "all"):
        fx = fixtures.builtin_fixtures()
        arrows += fx.arrows.values()
        monads += fx.monads.values()
        ums += fx.umorphisms.values()
        ucs += fx.ucells.values()
    if group in ("random", "all"):
        fx = fixtures.builtin_fixtures(fixtures.RANDOM_SEEDS)
        arrows += [u for n, u in fx.arrows.items() if n.startswith("RandArrow")]
        monads += [m for n, m in fx.monads.items() if n.startswith("RandClo")]
    if group == "workspace":
        arrows += [u for _, u in ws.items("uarrow")]
        monads += [m for _, m in ws.items("emonad")]
        ums += [m for _, m in ws.items("umorphism")]
        ucs += [c for _, c in ws.items("ucell")]
    return arrows, monads, ums, ucs


def cmd_square(ws: Workspace, group: str, budget: int = DEFAULT_BUDGET, limit: int | None = 6) -> Report:
    if group not in SQUARE_GROUPS:
        raise UsageError(f"unknown fixture group {group!r}; choose from {', '.join(SQUARE_GROUPS)}")
    arrows, monads, ums, ucs = square_inputs(ws, group)
    report = Report(f"square {group}")
    for u in arrows:
        ms, cells = endo_cells(u, False, limit, budget)
        report.extend(cl.check_square(arrows=[u], umorphisms=ms, ucells=cells, budget=budget))
    for m in monads:
        ms, cells = monad_endo_cells(m, limit, budget)
        report.extend(cl.check_square(monads=[m], emorphisms=ms, ecells=cells, budget=budget))
    report.extend(cl.check_square(umorphisms=ums, ucells=ucs, budget=budget))
    return report


# -- argument parsing -----------------------------------------------------------


def _common(p: argparse.ArgumentParser, files=True):
    if files:
        p.add_argument("files", nargs="*", metavar="FILE", help="spec files to load")
    p.add_argument("--fixtures", action="store_true", help="also load the built-in fixture set")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="N",
                   help="cap on candidate tables per algebra carrier (default %(default)s)")
    p.add_argument("--report", metavar="PATH", help="write a key=value sidecar of every check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unimonad",
        description="Check universal arrows, extension-form monads and the 2-adjunction between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate every entity")
    _common(p)

    p = sub.add_parser("derive", help="print the image of an entity in spec format")
    p.add_argument("entity")
    p.add_argument("functor", choices=sorted(DERIVATIONS))
    _common(p)
    p.add_argument("--output", metavar="PATH", help="write the derived spec here instead of stdout")

    p = sub.add_parser("adjunction", help="triangular identities, hom-bijection and unit 2-naturality")
    p.add_argument("arrow")
    p.add_argument("monad", nargs="?", help="monad name (default: the monad induced by ARROW)")
    p.add_argument("--file", "-f", dest="files", action="append", default=[], metavar="FILE")
    _common(p, files=False)
    p.add_argument("--strict", action="store_true", help="only cells between identity-rho 1-cells")
    p.add_argument("--cells", type=int, default=None, metavar="N", help="cap on enumerated 2-cells")

    p = sub.add_parser("roundtrip", help="GF, FG, HK, KH identity checks")
    p.add_argument("entity")
    _common(p)
    p.add_argument("--cells", type=int, default=6, metavar="N", help="cap on enumerated cells (default 6)")

    p = sub.add_parser("square", help="serial commutation of the square")
    p.add_argument("group", nargs="?", default="builtin", choices=SQUARE_GROUPS)
    _common(p)
    p.add_argument("--cells", type=int, default=6, metavar="N", help="cap on enumerated cells (default 6)")
    return parser


def _finish(report: Report, args) -> int:
    sys.stdout.write(report.text())
    if args.report:
        report.write_sidecar(args.report)
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _finish(cmd_validate(args.files, args.fixtures, args.budget), args)
        ws = load_workspace(args.files, args.fixtures)
        if args.command == "derive":
            text = cmd_derive(ws, args.entity, args.functor)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "adjunction":
            return _finish(cmd_adjunction(ws, args.arrow, args.monad, args.strict, args.budget, args.cells), args)
        if args.command == "roundtrip":
            return _finish(cmd_roundtrip(ws, args.entity, args.budget, args.cells), args)
        return _finish(cmd_square(ws, args.group, args.budget, args.cells), args)
    except (UsageError, MalformedSpec) as exc:
        print(f"unimonad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CategoryError as exc:
        print(f"unimonad: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
