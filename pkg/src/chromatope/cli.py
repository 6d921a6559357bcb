"""Command-line surface.

Exit codes: 0 success, 1 theorem-witness absence or tie (flagged as a probable
bug, CI-friendly), 2 usage or hypothesis errors.  All results are JSON on
stdout (or --out); errors go to stderr as a one-line JSON envelope.  All
randomness flows from --seed.  Set CHROMATOPE_LOG to adjust logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import builders
from .coloring import Coloring, chromatic_number, find_coloring, joswig_colorable
from .characteristic import (
    CharacteristicError,
    canonical_characteristic,
    special_characteristic,
)
from .covers import (
    CoverError,
    HypothesisViolation,
    check_colorful_kkm,
    check_colorful_lebesgue,
    check_general_polytope,
    check_karasev,
    multiplicity,
)
from .fuzz import PROFILES, fuzz_covers
from .polytopes import PolytopeError, enumerate_faces, validate_simple
from .ring import (
    CohomologyRing,
    RingError,
    display_names,
    parse_class_expression,
    variable_names,
)
from .serialization import (
    canonical_json,
    cover_from_dict,
    polytope_to_dict,
    resolve_polytope,
)

log = logging.getLogger("chromatope")


class UsageError(Exception):
    pass


def _emit(args, payload) -> None:
    text = canonical_json(payload)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_polytope(args):
    if getattr(args, "builder", None):
        return builders.build(args.builder)
    if getattr(args, "infile", None):
        return resolve_polytope(args.infile)
    raise UsageError("provide --builder or --in")


def _coloring_for(P, args, colors=None):
    want = colors if colors is not None else P.dim
    if getattr(args, "coloring", None):
        values = [int(x) for x in args.coloring.split(",")]
        return Coloring(tuple(values), max(values))
    h = find_coloring(P, want)
    if h is None:
        raise UsageError(f"{P.name} admits no {want}-coloring; pass --coloring")
    return h


# -- polytope group ---------------------------------------------------------------


def cmd_polytope_build(args):
    P = _load_polytope(args)
    _emit(args, polytope_to_dict(P))
    return 0


def cmd_polytope_validate(args):
    P = _load_polytope(args)
    problems = validate_simple(P)
    geo_problems = P.geometry.validate(P.vertex_facets) if P.geometry else []
    _emit(args, {
        "name": P.name,
        "simple": not problems,
        "problems": problems,
        "geometry_problems": geo_problems,
    })
    return 0 if not problems and not geo_problems else 1


def cmd_polytope_color(args):
    P = _load_polytope(args)
    k = args.colors if args.colors is not None else P.dim
    h = find_coloring(P, k)
    payload = {
        "name": P.name,
        "colors": k,
        "coloring": list(h.assignment) if h else None,
        "chromatic_number": chromatic_number(P) if args.chromatic else None,
    }
    if args.joswig:
        ok, offending = joswig_colorable(P)
        payload["joswig_colorable"] = ok
        payload["odd_two_faces"] = [sorted(f.vertex_set) for f in offending]
    _emit(args, payload)
    return 0


def cmd_polytope_faces(args):
    P = _load_polytope(args)
    faces = enumerate_faces(P, args.dim)
    _emit(args, {
        "name": P.name,
        "face_dim": args.dim,
        "count": len(faces),
        "faces": [
            {"facets": sorted(f.facet_set), "vertices": sorted(f.vertex_set)}
            for f in faces
        ],
    })
    return 0


# -- ring group --------------------------------------------------------------------


def _ring_for(args):
    P = _load_polytope(args)
    n = P.dim
    if args.special:
        h = _coloring_for(P, args, colors=n + 1)
        lam = special_characteristic(P, h)
    else:
        h = _coloring_for(P, args, colors=n)
        lam = canonical_characteristic(P, h)
    return P, h, lam, CohomologyRing(P, lam)


def cmd_ring_normal_form(args):
    P, h, lam, ring = _ring_for(args)
    x = parse_class_expression(args.cls, variable_names(P, h))
    nf = ring.normal_form(x)
    _emit(args, {
        "polytope": P.name,
        "input": args.cls,
        "normal_form": nf.pretty(display_names(P, h)),
        "is_zero": nf.is_zero(),
    })
    return 0


def cmd_ring_integrate(args):
    P, h, lam, ring = _ring_for(args)
    x = parse_class_expression(args.cls, variable_names(P, h))
    value = ring.integrate(x, args.ref_vertex)
    _emit(args, {
        "polytope": P.name,
        "input": args.cls,
        "ref_vertex": args.ref_vertex,
        "integral": value,
    })
    return 0


def cmd_ring_check_identities(args):
    from .identities import run_identity_suite

    P, h, lam, ring = _ring_for(args)
    results = run_identity_suite(P, h, ring)
    _emit(args, {"polytope": P.name, "identities": results})
    return 0 if all(r["holds"] for r in results) else 1


# -- cover group ----------------------------------------------------------------


def cmd_cover_verify(args):
    with open(args.cover) as fh:
        data = json.load(fh)
    cover = cover_from_dict(data)
    P = cover.complex.polytope
    mult = multiplicity(cover)
    witness = None
    if args.checker == "lebesgue":
        h = _coloring_for(P, args)
        witness = check_colorful_lebesgue(P, h, cover)
    elif args.checker == "kkm":
        h = _coloring_for(P, args, colors=P.dim + 1)
        witness = check_colorful_kkm(P, h, cover)
    elif args.checker == "karasev":
        witness = check_karasev(P, cover)
    elif args.checker == "general":
        witness = check_general_polytope(P, cover)
    else:
        raise UsageError(f"unknown checker {args.checker}")
    payload = {
        "polytope": P.name,
        "multiplicity": mult,
        "checker": args.checker,
        "witness": None if witness is None else _witness_dict(witness),
    }
    _emit(args, payload)
    return 0 if witness is not None else 1


def _witness_dict(w) -> dict:
    out = {"kind": type(w).__name__}
    for key, value in w.__dict__.items():
        if isinstance(value, (tuple, frozenset)):
            out[key] = sorted(value) if isinstance(value, frozenset) else list(value)
        else:
            out[key] = value
    return out


def cmd_cover_fuzz(args):
    P = _load_polytope(args)
    h = None
    if args.checker == "lebesgue":
        h = _coloring_for(P, args)
    elif args.checker == "kkm":
        h = _coloring_for(P, args, colors=P.dim + 1)
    report = fuzz_covers(
        P, h, args.profile, args.seed, args.trials,
        checker=args.checker, resolution=args.grid, out_dir=args.failures_dir,
    )
    _emit(args, report)
    return 0 if not report["absences"] else 1


# -- hex group --------------------------------------------------------------------


def _board_for(args):
    from .hexgame import build_board, random_sites

    P = _load_polytope(args)
    h = _coloring_for(P, args)
    sites = random_sites(P, args.sites, args.seed)
    return build_board(P, h, args.base_vertex, sites)


def cmd_hex_simulate(args):
    from .hexgame import random_playout

    board = _board_for(args)
    final = random_playout(board, args.seed)
    _emit(args, {
        "polytope": board.polytope.name,
        "cells": board.num_cells,
        "status": final.status,
        "winner": final.winner,
        "moves": [[m.player, m.cell] for m in final.history],
        "winning_component": list(final.winning_component),
        "winning_pair": list(final.winning_pair) if final.winning_pair else None,
    })
    return 0 if final.status == "won" else 1


def cmd_hex_no_tie(args):
    from .hexgame import no_tie_check

    board = _board_for(args)
    report = no_tie_check(board, args.trials, args.seed, out_dir=args.failures_dir)
    report["polytope"] = board.polytope.name
    _emit(args, report)
    return 0 if report["ties"] == 0 else 1


def cmd_hex_serve(args):
    from .service import serve

    serve(port=args.port, host=args.host)
    return 0


# -- parser ----------------------------------------------------------------------


def _add_polytope_source(sp):
    sp.add_argument("--builder", help="builder descriptor, e.g. cube:3")
    sp.add_argument("--in", dest="infile", help="polytope JSON file")


def _add_common(sp):
    sp.add_argument("--out", help="write JSON result to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chromatope", description=__doc__)
    sub = parser.add_subparsers(dest="group", required=True)

    poly = sub.add_parser("polytope").add_subparsers(dest="cmd", required=True)
    p = poly.add_parser("build")
    _add_polytope_source(p); _add_common(p)
    p.set_defaults(func=cmd_polytope_build)
    p = poly.add_parser("validate")
    _add_polytope_source(p); _add_common(p)
    p.set_defaults(func=cmd_polytope_validate)
    p = poly.add_parser("color")
    _add_polytope_source(p); _add_common(p)
    p.add_argument("--colors", type=int, default=None)
    p.add_argument("--chromatic", action="store_true")
    p.add_argument("--joswig", action="store_true")
    p.set_defaults(func=cmd_polytope_color)
    p = poly.add_parser("faces")
    _add_polytope_source(p); _add_common(p)
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_polytope_faces)

    ring = sub.add_parser("ring").add_subparsers(dest="cmd", required=True)
    for name, func in [("normal-form", cmd_ring_normal_form),
                       ("integrate", cmd_ring_integrate),
                       ("check-identities", cmd_ring_check_identities)]:
        p = ring.add_parser(name)
        _add_polytope_source(p); _add_common(p)
        p.add_argument("--coloring", help="comma-separated colors per facet")
        p.add_argument("--special", action="store_true",
                       help="use the (n+1)-coloring sign-vector matrix")
        if name != "check-identities":
            p.add_argument("--class", dest="cls", required=True,
                           help='ring element literal, e.g. "(v1+v2+v3)^3"')
        if name == "integrate":
            p.add_argument("--ref-vertex", type=int, default=0)
        p.set_defaults(func=func)

    cover = sub.add_parser("cover").add_subparsers(dest="cmd", required=True)
    p = cover.add_parser("verify")
    _add_common(p)
    p.add_argument("--cover", required=True, help="cover JSON file")
    p.add_argument("--checker", default="lebesgue",
                   choices=["lebesgue", "kkm", "karasev", "general"])
    p.add_argument("--coloring", help="comma-separated colors per facet")
    p.set_defaults(func=cmd_cover_verify)
    p = cover.add_parser("fuzz")
    _add_polytope_source(p); _add_common(p)
    p.add_argument("--profile", default="voronoi-merge", choices=list(PROFILES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--checker", default="lebesgue",
                   choices=["lebesgue", "kkm", "karasev", "general"])
    p.add_argument("--coloring", help="comma-separated colors per facet")
    p.add_argument("--failures-dir", default="fuzz-failures")
    p.set_defaults(func=cmd_cover_fuzz)

    hexgrp = sub.add_parser("hex").add_subparsers(dest="cmd", required=True)
    for name, func in [("simulate", cmd_hex_simulate), ("no-tie", cmd_hex_no_tie)]:
        p = hexgrp.add_parser(name)
        _add_polytope_source(p); _add_common(p)
        p.add_argument("--coloring", help="comma-separated colors per facet")
        p.add_argument("--sites", type=int, default=20)
        p.add_argument("--base-vertex", type=int, default=0)
        p.add_argument("--seed", type=int, default=0)
        if name == "no-tie":
            p.add_argument("--trials", type=int, default=100)
            p.add_argument("--failures-dir", default="fuzz-failures")
        p.set_defaults(func=func)
    p = hexgrp.add_parser("serve")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_hex_serve)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("CHROMATOPE_LOG", "WARNING"))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, HypothesisViolation, PolytopeError, CoverError,
            RingError, CharacteristicError, ValueError, OSError) as exc:
        sys.stderr.write(canonical_json({
            "error": {"type": type(exc).__name__, "message": str(exc)}
        }))
        return 2


if __name__ == "__main__":
    sys.exit(main())
