"""``tilewave`` command line.

Exit codes: 0 verified, 1 refuted (with witness) or certification refused,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import IrrationalData, ShiftCollision, TilewaveError
from .exponentials import (
    CAVEAT,
    det_criterion,
    gram,
    generate_lambda,
    riesz_bounds,
    symbol_bounds,
)
from .geometry import Lattice2, Polygon, Region, as_rational, parse_rational, rational_pair
from .groups import ShearletParams, SimilitudeParams
from .render import render
from .serialize import atomic_write, write_json
from .tiles import shearlet_lattice_candidates, shearlet_tile, similitude_lattice, similitude_tile
from .tiling import (
    quasi_lattice_check,
    sample_covering,
    verify_k_tiling,
    verify_multiplicative_shearlet,
    verify_multiplicative_similitude,
)

DET_THRESHOLD = 1e-9


class UsageError(Exception):
    pass


def _rational(text) -> Fraction:
    try:
        return parse_rational(str(text))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _points(text: str) -> list:
    """``"x,y;x,y;..."`` into a list of pairs (strings kept for the caller)."""
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        xy = [s.strip() for s in chunk.split(",")]
        if len(xy) != 2:
            raise UsageError(f"malformed point {chunk!r}; expected x,y")
        pts.append(xy)
    return pts


# ---------------------------------------------------------------------------
# tile input

def tile_document(tile) -> dict:
    doc = tile.region.to_json()
    doc["metadata"] = tile.metadata()
    doc["partition"] = {lab: reg.to_json() for lab, reg in tile.partition}
    return doc


def _load_tile(path: str) -> tuple:
    """``(Region, metadata)`` from a tile or region JSON file."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"tile file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"tile file {path} is not valid JSON: {exc}") from exc
    return Region.from_json(data), data.get("metadata", {"kind": "polygon"})


def _tile_from_args(args) -> tuple:
    if getattr(args, "tile", None):
        return _load_tile(args.tile)
    if args.group == "similitude":
        t = similitude_tile(SimilitudeParams(int(args.a or 2), int(args.n)))
    else:
        t = shearlet_tile(ShearletParams(args.a or 2, args.b, args.c))
    return t.region, t.metadata()


def _params_from_meta(meta: dict):
    kind = meta.get("kind")
    if kind == "shearlet":
        return ShearletParams.from_json(meta["params"])
    if kind == "similitude":
        return SimilitudeParams.from_json(meta["params"])
    return None


def _default_lattice(region: Region, meta: dict) -> tuple:
    """Lattice and k implied by a known tile kind."""
    params = _params_from_meta(meta)
    if isinstance(params, SimilitudeParams):
        pred = similitude_lattice(params)
        return pred.lattice, pred.k_predicted
    if isinstance(params, ShearletParams):
        for pred in shearlet_lattice_candidates(params, certify=True, first_only=True):
            if pred.source == "area-forced":
                return pred.lattice, pred.k_predicted
        raise UsageError("no small-denominator lattice certifies a k-tiling; pass --lattice and --k")
    raise UsageError("--lattice is required for a plain polygon tile")


def _lattice_and_k(args, region, meta) -> tuple:
    if args.lattice:
        try:
            lat = Lattice2.parse(args.lattice)
        except (ValueError, TypeError, TilewaveError) as exc:
            raise UsageError(f"malformed lattice spec {args.lattice!r}: {exc}") from exc
        k = args.k
        if k is None:
            ratio = region.area / lat.covolume
            if ratio.denominator != 1:
                raise UsageError("area/covolume is not an integer; pass --k")
            k = int(ratio)
        return lat, k
    lat, k = _default_lattice(region, meta)
    return lat, args.k if args.k is not None else k


def _report(command: str, verdict: bool, **fields) -> dict:
    out = {"schema": "tilewave.report", "version": 1, "command": command,
           "verdict": "pass" if verdict else "fail", "k": None, "witness_cells": [],
           "discard_count": 0, "seed": None, "params": {}}
    out.update(fields)
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_tile(args) -> int:
    if args.kind == "shearlet":
        t = shearlet_tile(ShearletParams(args.a, args.b, args.c))
        doc = tile_document(t)
    elif args.kind == "similitude":
        t = similitude_tile(SimilitudeParams(int(args.a), int(args.n)))
        doc = tile_document(t)
    else:
        parts = [Polygon(tuple((as_rational(x), as_rational(y)) for x, y in _points(spec)))
                 for spec in args.vertices]
        doc = Region(tuple(parts)).to_json()
        doc["metadata"] = {"kind": "polygon", "coordinates": "natural"}
    write_json(args.output, doc)
    print(f"wrote {args.output} (area {doc['area'][0]}/{doc['area'][1]})")
    return 0


def cmd_verify(args) -> int:
    if args.mode == "translational":
        region, meta = _tile_from_args(args)
        lat, k = _lattice_and_k(args, region, meta)
        v = verify_k_tiling(region, lat, k)
        body = v.to_json()
        details = {"coverage": body["coverage"], "necessary_condition": v.necessary_condition,
                   "area": rational_pair(region.area), "covolume": rational_pair(lat.covolume)}
        if args.samples:
            hist = sample_covering(region, lat, args.samples, args.seed)
            details["sampled"] = hist.to_json()
        rep = _report("verify translational", v.passed, k=k, witness_cells=body["witness_cells"],
                      seed=args.seed if args.samples else None,
                      params={"lattice": lat.to_json(), "tile": meta}, details=details)
        ok = v.passed
    else:
        region, meta = (None, {}) if not getattr(args, "tile", None) else _load_tile(args.tile)
        params = _params_from_meta(meta) if meta else None
        if params is None:
            if args.group == "similitude":
                params = SimilitudeParams(int(args.a or 2), int(args.n))
            else:
                params = ShearletParams(args.a or 2, args.b, args.c)
        if isinstance(params, SimilitudeParams):
            r = verify_multiplicative_similitude(params, levels=args.levels, samples=args.samples, seed=args.seed)
        else:
            r = verify_multiplicative_shearlet(params, samples=args.samples, seed=args.seed)
        body = r.to_json()
        details = {"violations": body["violations"], "violation_count": body["violation_count"],
                   "samples": r.samples, **r.details}
        if isinstance(params, ShearletParams) and args.quasi_lattice:
            q = quasi_lattice_check(params, samples=args.samples, seed=args.seed)
            details["quasi_lattice"] = q.to_json()
            r.verdict = r.verdict and q.verdict
        rep = _report("verify multiplicative", r.verdict, discard_count=r.discard_count, seed=args.seed,
                      params=body["params"], details=details)
        ok = r.verdict
    write_json(args.output, rep)
    print(f"{rep['command']}: {rep['verdict']} -> {args.output}")
    return 0 if ok else 1


def cmd_certify(args) -> int:
    region, meta = _tile_from_args(args)
    lat, k = _lattice_and_k(args, region, meta)
    tiling = verify_k_tiling(region, lat, k)
    rep = {"schema": "tilewave.report", "version": 1, "command": "certify", "seed": args.seed, "k": k,
           "params": {"lattice": lat.to_json(), "tile": meta, "radius": args.radius}, "caveat": CAVEAT,
           "discard_count": 0, "witness_cells": tiling.to_json()["witness_cells"]}
    if not tiling.passed:
        rep.update(verdict="fail", reason="region does not k-tile with this lattice")
        write_json(args.output, rep)
        print("certify: refused, tile is not a k-tiling for this lattice")
        return 1
    try:
        if args.shifts:
            shifts = [(float(x), float(y)) for x, y in _points(args.shifts)]
            ts = generate_lambda(lat, k, shifts=shifts, validate=False)
        else:
            ts = generate_lambda(lat, k, seed=args.seed)
    except ShiftCollision as exc:
        rep.update(verdict="fail", reason=f"{exc}")
        write_json(args.output, rep)
        print(f"certify: {exc} (try another --seed)")
        return 1
    det = det_criterion(region, lat, ts, samples=args.det_samples, seed=args.seed)
    rep["discard_count"] = det.discarded
    rep["shifts"] = [list(s) for s in ts.shifts]
    rep["min_det"] = round(det.min_abs_det, 12)
    rep["det_histogram"] = det.histogram
    if not det.min_abs_det > DET_THRESHOLD:
        rep.update(verdict="fail", reason="shift choice inadmissible: min |det| is numerically zero")
        write_json(args.output, rep)
        print(f"certify: refused, min |det| = {det.min_abs_det:.3e}; choose other shifts or seed")
        return 1
    G = gram(region, ts, args.radius)
    b = riesz_bounds(G, method=args.method)
    rep.update(verdict="pass" if b.lambda_min > 0 else "fail", lambda_min=b.lambda_min, lambda_max=b.lambda_max,
               bounds=b.to_json(), symbol_bounds=symbol_bounds(region, lat, ts).to_json())
    if args.gram_out:
        atomic_write(args.gram_out, G.to_bytes())
    if args.gram_csv:
        atomic_write(args.gram_csv, G.to_csv())
    write_json(args.output, rep)
    print(f"certify: lambda_min={b.lambda_min:.6f} lambda_max={b.lambda_max:.6f} "
          f"(N={G.dimension}, min|det|={det.min_abs_det:.6f}) -> {args.output}")
    return 0 if b.lambda_min > 0 else 1


def cmd_render(args) -> int:
    svg = render(args.figure, a=args.a, b=args.b, c=args.c, n=args.n)
    atomic_write(args.output, svg)
    print(f"wrote {args.output}")
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_group_flags(p, with_group: bool = True):
    if with_group:
        p.add_argument("--group", choices=["shearlet", "similitude"], default="shearlet")
    p.add_argument("--a", type=_rational, default=None, help="scaling parameter (p/q)")
    p.add_argument("--b", type=_rational, default=Fraction(1), help="shearing parameter (p/q)")
    p.add_argument("--c", type=_rational, default=Fraction(1, 2), help="anisotropy parameter (p/q)")
    p.add_argument("--n", type=int, default=6, help="number of sectors (similitude)")


def build_parser() -> tuple:
    parser = argparse.ArgumentParser(prog="tilewave", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tilewave {__version__}")
    parser.add_argument("--config", help="JSON file with default flag values (flags win)")
    sub = parser.add_subparsers(dest="command", required=True)
    leaves = {}

    tile = sub.add_parser("tile", help="construct a tile and write its region JSON")
    tsub = tile.add_subparsers(dest="kind", required=True)
    for kind in ("shearlet", "similitude", "polygon"):
        p = tsub.add_parser(kind)
        if kind == "polygon":
            p.add_argument("--vertices", action="append", required=True,
                           help='one part as "x,y;x,y;..." with p/q coordinates (repeatable)')
        else:
            _add_group_flags(p, with_group=False)
            p.set_defaults(a=Fraction(2))
        p.add_argument("-o", "--output", default=f"{kind}.json")
        p.set_defaults(func=cmd_tile)
        leaves[("tile", kind)] = p

    verify = sub.add_parser("verify", help="verify a tiling property")
    vsub = verify.add_subparsers(dest="mode", required=True)
    p = vsub.add_parser("translational")
    p.add_argument("--tile", help="tile or region JSON (default: build from --group flags)")
    _add_group_flags(p)
    p.add_argument("--lattice", help='basis "a11,a12,a21,a22" (row-major, columns generate)')
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--samples", type=int, default=0, help="optional sampled cross-check")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("-o", "--output", default="report.json")
    p.set_defaults(func=cmd_verify)
    leaves[("verify", "translational")] = p
    p = vsub.add_parser("multiplicative")
    p.add_argument("--tile", help="tile JSON whose metadata names the group")
    _add_group_flags(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--quasi-lattice", action="store_true", help="also run the group-coordinate check")
    p.add_argument("-o", "--output", default="report.json")
    p.set_defaults(func=cmd_verify)
    leaves[("verify", "multiplicative")] = p

    p = sub.add_parser("certify", help="translation set, admissibility and Riesz bounds")
    p.add_argument("--tile")
    _add_group_flags(p)
    p.add_argument("--lattice")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--shifts", help='explicit shifts "x,y;x,y" (collisions allowed, then refused)')
    p.add_argument("--radius", type=float, default=10.0)
    p.add_argument("--det-samples", type=int, default=10_000)
    p.add_argument("--method", choices=["auto", "jacobi", "lapack"], default="auto")
    p.add_argument("--gram-out", help="binary Gram container")
    p.add_argument("--gram-csv", help="Gram entries as CSV")
    p.add_argument("-o", "--output", default="certificate.json")
    p.set_defaults(func=cmd_certify)
    leaves[("certify", None)] = p

    p = sub.add_parser("render", help="write one figure as SVG")
    p.add_argument("--figure", type=int, choices=[1, 2, 3], required=True)
    _add_group_flags(p, with_group=False)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_render)
    leaves[("render", None)] = p
    return parser, leaves


def _apply_config(parser, leaves, argv) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    key = (args.command, getattr(args, "kind", None) or getattr(args, "mode", None))
    leaf = leaves[key]
    known = {a.dest: a for a in leaf._actions}
    defaults = {}
    for name, value in cfg.items():
        dest = name.replace("-", "_")
        if dest not in known or dest in ("help", "func"):
            raise UsageError(f"unknown config key {name!r} for {' '.join(k for k in key if k)}")
        action = known[dest]
        if action.type is not None and value is not None and not isinstance(value, list):
            value = action.type(str(value)) if action.type is not _rational else _rational(value)
        defaults[dest] = value
    leaf.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser, leaves = build_parser()
    try:
        args = _apply_config(parser, leaves, argv)
        if args.command == "render" and args.output is None:
            args.output = f"figure{args.figure}.svg"
        return args.func(args)
    except UsageError as exc:
        print(f"tilewave: error: {exc}", file=sys.stderr)
        return 2
    except argparse.ArgumentTypeError as exc:
        print(f"tilewave: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IrrationalData) as exc:
        # invalid parameters (a <= 1, odd n, floats on exact paths, ...)
        print(f"tilewave: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
