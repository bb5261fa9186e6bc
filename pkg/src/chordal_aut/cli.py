"""Command-line front end.

Subcommands: ``aut`` (automorphism group of a chordal graph), ``iso``
(isomorphism test for two chordal graphs), ``gen`` (random corpus
generation) and ``verify`` (oracle cross-check sweep over a corpus).

Exit codes: 0 success, 1 non-isomorphic, 2 non-chordal input,
3 parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .errors import NotChordalError, ParseError
from .graphs import Coloring, Graph, is_automorphism
from .graph_io import (
    parse_coloring,
    parse_graph_auto,
    write_coloring,
    write_edge_list,
)
from .pipeline import aut_with_threshold_used, iso
from .testkit import GeneratorConfig, brute_aut, gen_chordal

EXIT_OK = 0
EXIT_NON_ISO = 1
EXIT_NOT_CHORDAL = 2
EXIT_PARSE = 3


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
        return parse_graph_auto(text)
    except (OSError, ParseError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _load_coloring(path: str, n: int) -> Coloring:
    try:
        return parse_coloring(Path(path).read_text(), n)
    except (OSError, ParseError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _digest(g: Graph) -> str:
    payload = write_edge_list(g).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def cmd_aut(args) -> int:
    g = _load_graph(args.graph)
    coloring = _load_coloring(args.coloring, g.n) if args.coloring else None
    start = time.perf_counter()
    try:
        group, used = aut_with_threshold_used(g, coloring,
                                              args.leafage_bound)
    except NotChordalError:
        print("error: input graph is not chordal", file=sys.stderr)
        return EXIT_NOT_CHORDAL
    elapsed = time.perf_counter() - start
    generators = [list(p.images) for p in group.generators()]
    verified = all(is_automorphism(g, p, coloring)
                   for p in group.generators())
    if not verified:
        print("error: generator verification failed", file=sys.stderr)
        return EXIT_NOT_CHORDAL
    order = group.order()
    if (order > 1) != bool(generators):
        print("error: generator list inconsistent with order",
              file=sys.stderr)
        return EXIT_NOT_CHORDAL
    if args.json:
        print(json.dumps({
            "order": str(order),
            "generators": generators,
            "leafage_bound": used,
            "n": g.n,
        }))
    else:
        print(f"graph {args.graph} digest {_digest(g)}")
        print(f"n = {g.n}, m = {g.edge_count()}")
        print(f"automorphism group order = {order}")
        print(f"generators ({len(generators)}):")
        for p in group.generators():
            print(f"  {p.cycle_string()}")
        print(f"leafage bound used: {used}")
        print(f"time: {elapsed:.3f}s, generators verified: {verified}")
    return EXIT_OK


def cmd_iso(args) -> int:
    g = _load_graph(args.graph_a)
    h = _load_graph(args.graph_b)
    try:
        mapping = iso(g, h)
    except NotChordalError:
        print("error: input graph is not chordal", file=sys.stderr)
        return EXIT_NOT_CHORDAL
    if mapping is None:
        if args.json:
            print(json.dumps({"isomorphic": False}))
        else:
            print("non-isomorphic")
        return EXIT_NON_ISO
    if args.json:
        print(json.dumps({"isomorphic": True,
                          "mapping": list(mapping.images)}))
    else:
        print(" ".join(str(x) for x in mapping.images))
    return EXIT_OK


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for idx in range(args.count):
        cfg = GeneratorConfig(n=args.n, leaf_bound=args.leaves,
                              seed=args.seed + idx,
                              colored=args.colored)
        _, g, coloring = gen_chordal(cfg)
        name = f"g{idx:04d}"
        (out / f"{name}.edges").write_text(write_edge_list(g))
        entry = {"n": g.n, "leaf_bound": args.leaves,
                 "seed": args.seed + idx}
        if coloring is not None:
            (out / f"{name}.colors").write_text(write_coloring(coloring))
        if g.n <= 12:
            entry["order"] = str(brute_aut(g, coloring).order())
        manifest[name] = entry
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2,
                                                  sort_keys=True) + "\n")
    print(f"wrote {args.count} instances to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    root = Path(args.corpus)
    manifest_path = root / "manifest.json"
    if not manifest_path.exists():
        print("error: corpus manifest missing", file=sys.stderr)
        return EXIT_PARSE
    manifest = json.loads(manifest_path.read_text())
    failures = 0
    for name in sorted(manifest):
        graph_path = root / f"{name}.edges"
        g = _load_graph(str(graph_path))
        colors_path = root / f"{name}.colors"
        coloring = (_load_coloring(str(colors_path), g.n)
                    if colors_path.exists() else None)
        group, used = aut_with_threshold_used(g, coloring)
        order = group.order()
        problems = []
        for p in group.generators():
            if not is_automorphism(g, p, coloring):
                problems.append("generator fails verification")
        if g.n <= 12:
            expected = brute_aut(g, coloring).order()
            if order != expected:
                problems.append(
                    f"order {order} != brute-force {expected}")
        recorded = manifest[name].get("order")
        if recorded is not None and str(order) != recorded:
            problems.append(f"order {order} != recorded {recorded}")
        status = "ok" if not problems else "FAIL: " + "; ".join(problems)
        print(f"{name}: order={order} L={used} {status}")
        if problems:
            failures += 1
    if failures:
        print(f"{failures} instance(s) failed", file=sys.stderr)
        return 1
    print("all instances verified")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordal-aut",
        description="Automorphism groups and isomorphism testing for "
                    "chordal graphs of bounded leafage.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_aut = sub.add_parser("aut", help="automorphism group of a graph")
    p_aut.add_argument("graph", help="graph file (graph6 or edge list)")
    p_aut.add_argument("--coloring", help="optional 'v c' coloring file")
    p_aut.add_argument("--leafage-bound", type=int, default=None,
                       help="leafage threshold; omitted means iterative "
                            "deepening 2, 4, 8, ...")
    p_aut.add_argument("--json", action="store_true")
    p_aut.set_defaults(func=cmd_aut)

    p_iso = sub.add_parser("iso", help="test two graphs for isomorphism")
    p_iso.add_argument("graph_a")
    p_iso.add_argument("graph_b")
    p_iso.add_argument("--json", action="store_true")
    p_iso.set_defaults(func=cmd_iso)

    p_gen = sub.add_parser("gen", help="generate a random chordal corpus")
    p_gen.add_argument("n", type=int)
    p_gen.add_argument("leaves", type=int)
    p_gen.add_argument("seed", type=int)
    p_gen.add_argument("out")
    p_gen.add_argument("--count", type=int, default=10)
    p_gen.add_argument("--colored", action="store_true")
    p_gen.set_defaults(func=cmd_gen)

    p_ver = sub.add_parser("verify", help="cross-check a corpus against "
                                          "the brute-force oracles")
    p_ver.add_argument("corpus")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
