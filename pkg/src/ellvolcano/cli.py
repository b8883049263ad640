"""Command-line front end.

Subcommands wrap the volcano module: structure, level, directions, crater,
endo, oracle and bench.  Every command takes a fixed default seed so runs
are byte-identical; exit codes are 0 success, 2 input error, 3 violated
mathematical precondition, 4 exhausted resource budget.
"""

import argparse
import json
import random
import sys

from . import volcano as vo
from .bench import DEFAULT_GRID, render_table, run_bench
from .curve import (base_change, cardinality_small, curve_from_j, curve_new,
                    j_invariant, short_weierstrass_from_general)
from .errors import (InputError, MathError, ParseError, ResourceError,
                     VolcanoError)
from .field import make_field
from .isogeny import bundled_levels, bundled_modpoly, load_modpoly
from .volcano import all_order_ell_kernels, oracle_direction

_EXT_GATE = 16  # extensions beyond this degree require --slow


def build_parser():
    p = argparse.ArgumentParser(
        prog="ellvolcano",
        description="Sylow structure, pairing-guided isogeny directions, "
                    "crater walks and endomorphism valuations on "
                    "ell-isogeny volcanoes.")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="prime characteristic")
    common.add_argument("--ext", type=int, default=1,
                        help="base-change the curve to this extension degree")
    common.add_argument("--a", type=int, help="short Weierstrass A")
    common.add_argument("--b", type=int, help="short Weierstrass B")
    common.add_argument("--a1", type=int, default=0)
    common.add_argument("--a2", type=int, help="general Weierstrass x^2 term")
    common.add_argument("--a3", type=int, default=0)
    common.add_argument("--a4", type=int, help="general Weierstrass x term")
    common.add_argument("--a6", type=int, help="general Weierstrass constant")
    common.add_argument("--j", type=int, help="j-invariant (needs --trace)")
    common.add_argument("--trace", type=int,
                        help="Frobenius trace; required when q >= 2^32")
    common.add_argument("--curve", metavar="FILE",
                        help="curve file: 'p r A B t' or "
                             "'p r a1 a2 a3 a4 a6 t'")
    common.add_argument("--ell", type=int, required=True, help="prime ell")
    common.add_argument("--modpoly", metavar="PATH",
                        help="modular polynomial file for this ell")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--slow", action="store_true",
                        help="allow large extension-field computations")
    common.add_argument("--json", metavar="PATH", dest="json_path",
                        help="also write the JSON report to this file")
    for name, text in (
            ("structure", "ell-Sylow shape and generators"),
            ("level", "level invariant of the curve in its volcano"),
            ("directions", "ascending/horizontal kernels via pairings"),
            ("crater", "walk the crater cycle"),
            ("endo", "ell-adic endomorphism-ring valuation"),
            ("oracle", "classical trial classification of every kernel")):
        sub.add_parser(name, parents=[common], help=text)
    bench = sub.add_parser("bench", help="operation-count comparison of "
                                         "pairing vs classical stepping")
    bench.add_argument("--grid", default=None,
                       help="semicolon-separated ell,h,r triples "
                            "(default: %s)" % ";".join(
                                ",".join(map(str, g)) for g in DEFAULT_GRID))
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--json", metavar="PATH", dest="json_path")
    return p


def _parse_curve_file(path):
    try:
        with open(path, "r", encoding="ascii") as fh:
            tokens = fh.read().split()
    except OSError as ex:
        raise InputError("cannot read %s: %s" % (path, ex)) from None
    if len(tokens) == 5:
        p, r, A, B, t = (int(v) for v in tokens)
        return p, r, ("short", A, B), t
    if len(tokens) == 8:
        vals = [int(v) for v in tokens]
        return vals[0], vals[1], ("general", *vals[2:7]), vals[7]
    raise ParseError("curve file must have 5 or 8 whitespace-separated "
                     "fields, got %d" % len(tokens))


def _load_curve(args, rng):
    """Build the requested curve, normalizing general models and handling
    optional base change; the trace is computed by exhaustive count when it
    is omitted and the field is small enough."""
    if args.curve:
        p, r, coeffs, t = _parse_curve_file(args.curve)
        ctx = make_field(p, r)
        if coeffs[0] == "short":
            A, B = ctx.decode(coeffs[1]), ctx.decode(coeffs[2])
        else:
            A, B = short_weierstrass_from_general(
                ctx, *[ctx.decode(v) for v in coeffs[1:]])
        E = curve_new(ctx, A, B, t, rng)
        ext = args.ext
    else:
        if args.p is None:
            raise InputError("--p is required without --curve")
        ctx = make_field(args.p)
        t = args.trace
        if args.j is not None:
            if t is None:
                raise InputError("--j needs --trace (twists are ambiguous)")
            E = curve_from_j(ctx, args.j, t, rng)
        else:
            if args.a is not None and args.b is not None:
                A, B = ctx.elem(args.a), ctx.elem(args.b)
            elif args.a4 is not None and args.a6 is not None:
                A, B = short_weierstrass_from_general(
                    ctx, args.a1, args.a2 or 0, args.a3, args.a4, args.a6)
            else:
                raise InputError("give --a/--b, --a2/--a4/--a6, --j or --curve")
            if t is None:
                if ctx.q >= 1 << 32:
                    raise InputError("--trace is required when q >= 2^32")
                probe = curve_new(ctx, A, B, 1, rng, check=False)
                t = ctx.q + 1 - cardinality_small(probe)
            E = curve_new(ctx, A, B, t, rng)
        ext = args.ext
    if ext > 1:
        _gate_extension(ext, args)
        E = base_change(E, ext)
    return E


def _gate_extension(r, args):
    if r > _EXT_GATE and not args.slow:
        raise ResourceError(
            "extension degree %d exceeds %d; rerun with --slow" % (r, _EXT_GATE))


def _modpoly_for(args, ctx):
    if args.modpoly:
        return load_modpoly(args.modpoly, args.ell, ctx)
    if args.ell in bundled_levels():
        return bundled_modpoly(args.ell, ctx)
    return None


def _emit(doc, args):
    text = json.dumps(doc, sort_keys=True, indent=2)
    print(text)
    if args.json_path:
        with open(args.json_path, "w", encoding="ascii") as fh:
            fh.write(text + "\n")


def _prepare_gated(E, ell, args, rng):
    from .curve import torsion_extension_degree
    if (ell == 2 or E.ctx.q % ell == 1) and E.order % ell == 0:
        return vo.prepare(E, ell, rng)
    r, _ = torsion_extension_degree(E, ell)
    _gate_extension(r * E.ctx.r, args)
    return vo.prepare(E, ell, rng)


def _field_doc(E, r, twisted):
    return {"p": E.ctx.p, "r": E.ctx.r, "twisted": twisted,
            "extension": r}


def cmd_structure(args, rng):
    E = _load_curve(args, rng)
    Ew, s, r, twisted = _prepare_gated(E, args.ell, args, rng)
    doc = s.to_json()
    doc["ell"] = args.ell
    doc["field"] = _field_doc(Ew, r, twisted)
    return doc


def cmd_level(args, rng):
    E = _load_curve(args, rng)
    return {"ell": args.ell, "level_invariant": vo.level_invariant(
        E, args.ell, rng)}


def cmd_directions(args, rng):
    E = _load_curve(args, rng)
    Ew, s, r, twisted = _prepare_gated(E, args.ell, args, rng)
    rep = vo.find_directions(Ew, s, args.ell, rng)
    doc = rep.to_json()
    doc["ell"] = args.ell
    doc["field"] = _field_doc(Ew, r, twisted)
    if rep.profile is not None:
        doc["profile"] = rep.profile.to_json()
    return doc


def cmd_crater(args, rng):
    E = _load_curve(args, rng)
    Ew, s, r, twisted = _prepare_gated(E, args.ell, args, rng)
    start = vo.ascend_to_crater(Ew, args.ell, rng)
    js = vo.crater_walk(start, args.ell, rng,
                        on_vertex=lambda j: print("j %d" % j.encode(),
                                                  flush=True))
    return {"ell": args.ell, "size": len(js),
            "crater": [j.encode() for j in js],
            "field": _field_doc(Ew, r, twisted)}


def cmd_endo(args, rng):
    E = _load_curve(args, rng)
    mp = _modpoly_for(args, E.ctx)
    rep = vo.endo_valuation(E, args.ell, mp=mp, rng=rng)
    return rep.to_json()


def cmd_oracle(args, rng):
    E = _load_curve(args, rng)
    mp = _modpoly_for(args, E.ctx)
    if mp is None:
        raise MathError("oracle needs a modular polynomial for ell=%d; "
                        "pass --modpoly" % args.ell)
    Ew, s, r, twisted = _prepare_gated(E, args.ell, args, rng)
    if Ew.ctx.key != E.ctx.key:
        raise InputError("oracle classification runs over the base field "
                         "only; this curve needs an extension")
    out = []
    for K in all_order_ell_kernels(Ew, s, args.ell):
        label = oracle_direction(Ew, K, args.ell, mp, rng)
        out.append({"kernel": [K[0].encode(), K[1].encode()],
                    "direction": label})
    return {"ell": args.ell, "classifications": out,
            "field": _field_doc(Ew, r, twisted)}


def cmd_bench(args, rng):
    if args.grid:
        try:
            grid = [tuple(int(v) for v in part.split(","))
                    for part in args.grid.split(";") if part]
        except ValueError:
            raise InputError("bad --grid; expected 'ell,h,r;ell,h,r'")
        if any(len(g) != 3 for g in grid):
            raise InputError("each grid row needs exactly ell,h,r")
    else:
        grid = DEFAULT_GRID
    rows = run_bench(grid, seed=args.seed)
    print(render_table(rows))
    return {"rows": [r.to_json() for r in rows]}


_COMMANDS = {
    "structure": cmd_structure,
    "level": cmd_level,
    "directions": cmd_directions,
    "crater": cmd_crater,
    "endo": cmd_endo,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    rng = random.Random(args.seed)
    try:
        doc = _COMMANDS[args.command](args, rng)
    except InputError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 2
    except MathError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 3
    except ResourceError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 4
    except VolcanoError as ex:  # pragma: no cover - catch-all safety net
        print("error: %s" % ex, file=sys.stderr)
        return 3
    _emit(doc, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
