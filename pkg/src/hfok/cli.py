"""Command-line interface: ``hfok <command> ...``.

Exit status is 0 on success or acceptance, 1 on rejection or a negative
answer, and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import floorplan as fp
from .anneal import SaConfig, anneal_restarts, load_modules
from .count import count_table
from .gentree import MAX_CATALOG_LENGTH, bp2fp, build_catalog
from .perm import Permutation, enumerate_class, inverse, is_baxter, reverse
from .recognize import is_hfo_k, min_k
from .render import render_placement_svg, render_svg

MAX_ENUMERATE_N = 10


class InputError(Exception):
    pass


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise InputError(f"invalid permutation: {exc}") from None


def _baxter_perm(text: str) -> Permutation:
    p = _perm(text)
    if not is_baxter(p):
        raise InputError(f"invalid input: {p} is not a Baxter permutation")
    return p


def _read_floorplan(path: str) -> fp.MosaicFloorplan:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return fp.MosaicFloorplan.from_json(text)
    except fp.FloorplanError as exc:
        raise InputError(f"invalid floorplan: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_baxter(args) -> int:
    ok = is_baxter(_perm(args.perm))
    print("yes" if ok else "no")
    return 0 if ok else 1


def cmd_recognize(args) -> int:
    if args.k < 2:
        raise InputError("k must be >= 2")
    ok = is_hfo_k(_perm(args.perm), args.k)
    print("accept" if ok else "reject")
    return 0 if ok else 1


def cmd_min_k(args) -> int:
    k = min_k(_perm(args.perm))
    if k is None:
        print("reject: not Baxter")
        return 1
    print(k)
    return 0


def _class_members(n: int, cls: str) -> list[Permutation]:
    if cls == "baxter":
        return list(enumerate_class(n, "baxter"))
    if cls == "simple-baxter":
        return list(enumerate_class(n, "simple_and_baxter"))
    k = {"slicing": 2, "hfo5": 5}[cls]
    return [p for p in enumerate_class(n, "baxter") if is_hfo_k(p, k)]


def cmd_count(args) -> int:
    if args.n < 1 or args.k < 2:
        raise InputError("need n >= 1 and k >= 2")
    if args.method == "dp":
        if args.k > MAX_CATALOG_LENGTH:
            raise InputError(f"k must be <= {MAX_CATALOG_LENGTH} for the dp method")
        values = list(count_table(args.k, args.n).t)
    else:
        if args.n > MAX_ENUMERATE_N:
            raise InputError(f"n must be <= {MAX_ENUMERATE_N} for the enumerate method")
        values = [sum(1 for p in enumerate_class(n, "baxter") if is_hfo_k(p, args.k)) for n in range(1, args.n + 1)]
    for v in values:
        print(v)
    return 0


def cmd_enumerate(args) -> int:
    if not 1 <= args.n <= MAX_ENUMERATE_N:
        raise InputError(f"n must be in 1..{MAX_ENUMERATE_N}")
    if args.cls == "mosaic":
        for f in fp.enumerate_mosaic(args.n):
            print(f.to_json())
    else:
        for p in _class_members(args.n, args.cls):
            print(p)
    return 0


def cmd_fp2bp(args) -> int:
    print(fp.fp2bp(_read_floorplan(args.floorplan)))
    return 0


def cmd_bp2fp(args) -> int:
    p = _baxter_perm(args.perm)
    try:
        f = bp2fp(p)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None
    _emit(f.to_json(), args.output)
    return 0


# inverse: mirror across the horizontal axis; reverse: that mirror, then a clockwise quarter turn
_GEOMETRIC = {
    "mirror-h": [fp.mirror_h],
    "mirror-v": [fp.mirror_v],
    "rotate-cw": [fp.rotate_cw],
    "inverse": [fp.mirror_h],
    "reverse": [fp.mirror_h, fp.rotate_cw],
}


def cmd_transform(args) -> int:
    ops = _GEOMETRIC[args.op]
    if os.path.isfile(args.input):
        f = _read_floorplan(args.input)
        for op in ops:
            f = op(f)
        _emit(fp.compact(f).to_json(), args.output)
        return 0
    p = _perm(args.input)
    if args.op == "inverse":
        out = inverse(p)
    elif args.op == "reverse":
        out = reverse(p)
    else:
        if not is_baxter(p):
            raise InputError(f"invalid input: {p} is not a Baxter permutation")
        f = bp2fp(p)
        for op in ops:
            f = op(f)
        out = fp.fp2bp(f)
    _emit(str(out), args.output)
    return 0


def cmd_catalog(args) -> int:
    if not 2 <= args.max_l <= MAX_CATALOG_LENGTH:
        raise InputError(f"max-l must be in 2..{MAX_CATALOG_LENGTH}")
    cat = build_catalog(args.max_l)
    for l in range(2, args.max_l + 1):
        print(f"{l}: " + " ".join(s.compact() for s, _ in cat.at(l)))
    return 0


def cmd_anneal(args) -> int:
    try:
        doc = json.loads(Path(args.modules).read_text())
        modules = load_modules(doc)
    except OSError as exc:
        raise InputError(f"cannot read {args.modules}: {exc.strerror}") from None
    except (json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"invalid modules file: {exc}") from None
    if not 2 <= args.k <= MAX_CATALOG_LENGTH:
        raise InputError(f"k must be in 2..{MAX_CATALOG_LENGTH}")
    try:
        config = SaConfig(seed=args.seed, moves_per_temperature=args.moves_per_temperature)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    res = anneal_restarts(modules, args.k, config, restarts=args.restarts, workers=args.workers)
    print(res.best)
    print(f"area: {res.area:g}")
    width = max(p.x + p.w for p in res.placement)
    height = max(p.y + p.h for p in res.placement)
    if args.svg:
        Path(args.svg).write_text(render_placement_svg(res.placement, width, height))
    if args.placement:
        doc = [{"id": p.id, "x": p.x, "y": p.y, "w": p.w, "h": p.h} for p in res.placement]
        Path(args.placement).write_text(json.dumps(doc, indent=1) + "\n")
    if args.trace:
        Path(args.trace).write_text(res.trace_json() + "\n")
    return 0


def cmd_render(args) -> int:
    _emit(render_svg(_read_floorplan(args.floorplan)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hfok", description="Hierarchical floorplans of order k.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("baxter", help="is the permutation Baxter?")
    p.add_argument("perm", help='e.g. "4 1 3 5 2"')
    p.set_defaults(func=cmd_baxter)

    p = sub.add_parser("recognize", help="is the permutation HFO_k?")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("perm")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("min-k", help="smallest k for which the permutation is HFO_k")
    p.add_argument("perm")
    p.set_defaults(func=cmd_min_k)

    p = sub.add_parser("count", help="number of HFO_k floorplans with 1..N rooms")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("dp", "enumerate"), default="dp")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list every member of a class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True,
                   choices=("mosaic", "baxter", "slicing", "hfo5", "simple-baxter"))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fp2bp", help="Abe-label of a floorplan file")
    p.add_argument("floorplan")
    p.set_defaults(func=cmd_fp2bp)

    p = sub.add_parser("bp2fp", help="floorplan for a Baxter permutation")
    p.add_argument("perm")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bp2fp)

    p = sub.add_parser("transform", help="apply a symmetry to a permutation or floorplan file")
    p.add_argument("--op", required=True, choices=tuple(_GEOMETRIC))
    p.add_argument("input", help="floorplan JSON path or permutation text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("catalog", help="simple Baxter permutations by length")
    p.add_argument("--max-l", type=int, default=5)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("anneal", help="simulated annealing floorplanner")
    p.add_argument("--modules", required=True, help='JSON list of {"id", "w", "h"}')
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--moves-per-temperature", type=int)
    p.add_argument("--svg")
    p.add_argument("--placement", help="write the placement as JSON")
    p.add_argument("--trace", help="write the annealing trace as JSON")
    p.set_defaults(func=cmd_anneal)

    p = sub.add_parser("render", help="draw a floorplan file as SVG")
    p.add_argument("floorplan")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
