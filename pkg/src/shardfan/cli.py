"""Command-line interface: ``shardfan <command> ...``.

Exit codes: 0 all checks pass, 1 input error, 2 a theorem check failed.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import builders, errors
from .fan import validate_fan
from .fanio import dumps_fan, export_dot, load_fan, save_fan
from .intersections import core_label_set, enumerate_shard_intersections
from .lattice import canonical_join_rep_oracle, join_irreducibles, orient_hasse
from .shards import ShardSystem, canonical_join_via_shards
from .verify import SUITES, run_verify_suite

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _load(path: str):
    doc = load_fan(path)
    fan = validate_fan(doc)
    return doc, fan


def cmd_validate(args) -> int:
    _, fan = _load(args.fan)
    _dump({"valid": True, "dim": fan.dim, "chambers": len(fan.chambers),
           "faces": len(fan.faces), "walls": len(fan.walls)})
    return EXIT_OK


def cmd_poset(args) -> int:
    _, fan = _load(args.fan)
    poset = orient_hasse(fan)
    if args.dot:
        sys.stdout.write(export_dot(poset))
        return EXIT_OK
    _dump({
        "chambers": [list(c) for c in fan.chambers],
        "arrows": [[a.upper, a.lower] for a in poset.arrows],
        "top": poset.top,
        "bottom": poset.bottom,
        "join_irreducibles": sorted(join_irreducibles(poset)),
    })
    return EXIT_OK


def cmd_shards(args) -> int:
    _, fan = _load(args.fan)
    system = ShardSystem(fan, orient_hasse(fan))
    rows = []
    for s in system.shards:
        rows.append({
            "id": s.id,
            "normal": list(s.normal),
            "walls": [list(fan.walls[w].face.rays) for w in s.walls],
            "upper": sorted(system.up(s.id)),
            "lower": sorted(system.lo(s.id)),
            "J": system.J[s.id],
        })
    if args.json:
        _dump({"plates": len(system.plates), "shards": rows})
    else:
        for r in rows:
            print(f"shard {r['id']}: normal {r['normal']} walls {r['walls']} J={r['J']}")
    return EXIT_OK


def cmd_cjr(args) -> int:
    _, fan = _load(args.fan)
    poset = orient_hasse(fan)
    system = ShardSystem(fan, poset)
    chambers = [args.chamber] if args.chamber is not None else range(poset.size)
    status = EXIT_OK
    out = []
    for c in chambers:
        if not 0 <= c < poset.size:
            raise errors.SchemaError(f"chamber id {c} out of range", field="chamber")
        via = canonical_join_via_shards(system, c)
        oracle = canonical_join_rep_oracle(poset, c)
        if via != oracle:
            status = EXIT_VIOLATION
        out.append({"chamber": c, "rays": list(fan.chambers[c]),
                    "canonical_join": sorted(via), "oracle": sorted(oracle)})
    _dump(out)
    return status


def cmd_shardint(args) -> int:
    _, fan = _load(args.fan)
    poset = orient_hasse(fan)
    system = ShardSystem(fan, poset)
    lat = enumerate_shard_intersections(system)
    if args.dot:
        sys.stdout.write(export_dot(lat))
        return EXIT_OK if lat.ok else EXIT_VIOLATION
    if args.order == "si":
        relation = [[a, b] for a, b in lat.covers]
    else:
        labels = [core_label_set(poset, c) for c in range(poset.size)]
        relation = [[a, b] for a in range(poset.size) for b in range(poset.size)
                    if a != b and labels[a] < labels[b]]
    _dump({
        "order": args.order,
        "elements": [{"chamber": c, "generators": list(el.generators),
                      "dim": el.dim(fan), "faces": len(el.faces)}
                     for c, el in enumerate(lat.elements)],
        "relation": relation,
        "violations": [list(map(str, v)) for v in lat.violations],
    })
    return EXIT_OK if lat.ok else EXIT_VIOLATION


def cmd_verify(args) -> int:
    doc = load_fan(args.fan)
    report = run_verify_suite(doc, args.suite, workers=args.workers)
    if args.json:
        sys.stdout.write(report.to_json(timing=args.timing))
    else:
        for c in report.checks:
            print(f"{c['status'].upper():4}  {c['name']}")
        print("counts: " + ", ".join(f"{k}={v}" for k, v in sorted(report.counts.items())))
    return EXIT_OK if report.ok else EXIT_VIOLATION


GEN_ARITY = {"orthant": 1, "crown": 2, "coxeterA": 1, "papera2": 0}


def cmd_gen(args) -> int:
    family, params = args.family, args.params
    if family not in GEN_ARITY:
        raise errors.SchemaError(f"unknown family {family!r}", field="family")
    if len(params) != GEN_ARITY[family]:
        raise errors.SchemaError(f"{family} takes {GEN_ARITY[family]} integer argument(s)",
                                 field="params")
    try:
        nums = [int(p) for p in params]
    except ValueError:
        raise errors.SchemaError("generator arguments must be integers", field="params") from None
    try:
        doc = {
            "orthant": lambda: builders.gen_orthant(*nums),
            "crown": lambda: builders.gen_crown(*nums),
            "coxeterA": lambda: builders.gen_coxeter_A(*nums),
            "papera2": builders.path_a2,
        }[family]()
    except ValueError as exc:
        raise errors.SchemaError(str(exc), field="params") from None
    if args.output:
        save_fan(doc, args.output)
    else:
        sys.stdout.write(dumps_fan(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shardfan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the fan axioms")
    p.add_argument("fan")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("poset", help="chamber poset")
    p.add_argument("fan")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("shards", help="list shards")
    p.add_argument("fan")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_shards)

    p = sub.add_parser("cjr", help="canonical join representations")
    p.add_argument("fan")
    p.add_argument("--chamber", type=int)
    p.set_defaults(func=cmd_cjr)

    p = sub.add_parser("shardint", help="shard intersection lattice")
    p.add_argument("fan")
    p.add_argument("--order", choices=("si", "clo"), default="si")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_shardint)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("fan")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include timings in JSON output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a bundled fan document")
    p.add_argument("family", help="orthant N | crown P Q | coxeterA N | papera2")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except errors.FanError as exc:
        _dump(exc.as_dict())
        return EXIT_INPUT
    except (errors.ParseError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except errors.ShardfanError as exc:
        sys.stderr.write(f"theorem check failed: {exc}\n")
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
