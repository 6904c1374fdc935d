"""Command-line front end: roots, exponents, invariants, monoid, verify."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional

from .bgg import InconsistencyError, invariant_degrees
from .rootsys import CartanError, RootSystem
from .zhelobenko import check_invariant, solve_generators

FORMATS = ("text", "json", "dot")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_roots(rs: RootSystem, args) -> tuple:
    data = {
        "type": rs.tag,
        "cartan": [list(r) for r in rs.cartan],
        "symmetrizer": list(rs.datum.symmetrizer),
        "positive_coroots": [list(g) for g in rs.positive_coroots],
        "level_counts": rs.level_counts(),
        "highest_coroot": list(rs.highest_coroot),
    }
    if args.format == "json":
        return _dump(data), True
    lines = [f"type {rs.tag}", "cartan matrix:"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in rs.cartan]
    for r, n in enumerate(rs.level_counts(), start=1):
        cor = " ".join("".join(str(c) for c in g) for g in rs.coroots_of_height(r))
        lines.append(f"height {r} ({n}): {cor}")
    return "\n".join(lines) + "\n", True


def cmd_exponents(rs: RootSystem, args) -> tuple:
    exps = rs.exponents()
    degs = invariant_degrees(rs)
    ok = sorted(d - 1 for d in degs) == exps
    data = {"type": rs.tag, "exponents": exps, "invariant_degrees": degs, "consistent": ok}
    if args.format == "json":
        return _dump(data), ok
    text = (f"type {rs.tag}\nexponents (dual partition of heights): {exps}\n"
            f"basic invariant degrees: {degs}\nconsistent: {'yes' if ok else 'NO'}\n")
    return text, ok


def cmd_invariants(rs: RootSystem, args) -> tuple:
    gens = solve_generators(rs)
    if args.max_degree is not None:
        gens = [g for g in gens if g.m <= args.max_degree]
    ok = all(check_invariant(rs, g.q).invariant for g in gens)
    if args.format == "json":
        return _dump({"type": rs.tag, "generators": [g.to_json() for g in gens], "invariant": ok}), ok
    lines = [f"type {rs.tag}"]
    for g in gens:
        lines.append(f"generator of degree {g.m}:")
        lines += [f"  q{i + 1} = {x.to_text()}" for i, x in enumerate(g.q)]
    lines.append(f"xi-invariance: {'pass' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", ok


def cmd_monoid(rs: RootSystem, args) -> tuple:
    from .monoid import census_json, enumerate_monoid, export_dot
    g = enumerate_monoid(rs)
    if args.format == "json":
        return census_json(g) + "\n", True
    if args.format == "dot":
        return export_dot(g), True
    image = set(g.image.values())
    lines = [f"type {rs.tag}", f"levels: {g.level_counts()} (total {len(g.elements)})"]
    for length, elems in g.levels().items():
        words = ", ".join(e.witness + ("" if e.index in image or not g.image else "*") for e in elems)
        lines.append(f"length {length}: {words}")
    if g.image:
        lines.append("* = outside the image of the coroot map")
    return "\n".join(lines) + "\n", True


def cmd_verify(rs: RootSystem, args) -> tuple:
    from .verify import verification_report
    rep = verification_report(rs)
    if args.format == "json":
        return _dump(rep), rep["ok"]
    lines = [f"type {rs.tag}: {'pass' if rep['ok'] else 'FAIL'}",
             f"  exponents {rep['exponent_check']['exponents']}: "
             f"{'pass' if rep['exponent_check']['pass'] else 'FAIL'}"]
    for s in rep["symmetric"]:
        lines.append(f"  gradient vector m={s['m']}: {'pass' if s['pass'] else 'FAIL'}, power {s['minimal_power']}")
    for e in rep["generators"]:
        descent = "n/a" if e["ratio_descent"] is None else e["ratio_descent"]
        lines.append(f"  invariant m={e['m']}: nilpotency {e['nilpotency']}, power {e['minimal_power']}, "
                     f"ratio descent {descent}")
    lines.append(f"  generator counting: {'pass' if rep['generator_counting'] else 'FAIL'}")
    lines.append(f"  monoid census: {rep['monoid_census']}")
    return "\n".join(lines) + "\n", rep["ok"]


COMMANDS: Dict[str, Callable] = {
    "roots": cmd_roots,
    "exponents": cmd_exponents,
    "invariants": cmd_invariants,
    "monoid": cmd_monoid,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zhelokit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--type", dest="types", action="append", required=True,
                       help="Cartan type such as A3, B4, F4 (repeatable)")
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--max-degree", type=int, default=None,
                       help="invariants: only generators of degree at most this")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "dot" and args.command != "monoid":
        parser.error("--format dot is only available for the monoid command")
    systems = []
    for tag in args.types:
        try:
            systems.append(RootSystem.from_tag(tag))
        except CartanError as exc:
            parser.error(str(exc))
    chunks = []
    ok = True
    for rs in systems:
        try:
            text, good = COMMANDS[args.command](rs, args)
        except (InconsistencyError, CartanError) as exc:
            text, good = f"{rs.tag}: error: {exc}\n", False
        chunks.append(text)
        ok = ok and good
    out = "".join(chunks)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
