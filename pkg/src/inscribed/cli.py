"""Command-line front end: read JSON documents, run one analysis, print canonical JSON.

Exit codes: 0 on success, 2 when an input fails validation, 3 when ``--strict``
is given and the answer is negative (not inscribable, empty cone, ...).
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys

from .errors import InscribedError
from .exact import EXACT, ScalarMode
from .fan import normal_fan, validate
from .io import (
    ParseError, building_doc, dumps, fan_doc, lambda_doc, loads, parse_building_set, parse_config, parse_fan,
    parse_lambda, parse_polytope, parse_profile, parse_routing, polytope_doc, profile_doc,
)

EXIT_OK, EXIT_INVALID, EXIT_NEGATIVE = 0, 2, 3


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as e:
        raise ParseError("", f"cannot read {path}: {e.strerror}") from None


def _mode(args):
    return EXACT if args.float is None else ScalarMode.float(args.float)


def _fan_input(args):
    """``(fan, polytope or None)`` from ``--fan`` or ``--polytope``."""
    if getattr(args, "fan", None):
        F = parse_fan(_read(args.fan), _mode(args))
        validate(F)
        return F, None
    if getattr(args, "polytope", None):
        P = parse_polytope(_read(args.polytope), _mode(args))
        return normal_fan(P), P
    raise ParseError("", "give --fan or --polytope")


def _base_region(args, F):
    R = args.base_region
    if R is None:
        return F.base_region
    for candidate in F.regions:
        if str(candidate) == R:
            return candidate
    raise ParseError("", f"--base-region {R} is not a region")


def _csv(rows, header):
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _scalar_text(x):
    return dumps(x).strip('"')


def _lambda_csv(F, values):
    return _csv([(f"{R}-{S}", _scalar_text(x)) for (R, S), x in zip(F.edges(), values)], ("wall", "weight"))


# --- commands ------------------------------------------------------------------------

def cmd_fan(args):
    F, _ = _fan_input(args)
    validate(F)
    return {"fan": fan_doc(F), "regions": len(F.regions), "walls": len(F.edges()),
            "lineality_dim": len(F.lineality)}, True


def cmd_inscribe(args):
    from .inscribe import based_inscribed_space, inscribable, lambda_inscribed_space, reconstruct, vector_of_lambda
    F, _ = _fan_input(args)
    R0 = _base_region(args, F)
    based = based_inscribed_space(F, R0)
    lam_space = lambda_inscribed_space(F)
    lam = inscribable(F)
    out = {"inscribable": lam is not None, "dim_inspc": based.dim, "dim_lambda": lam_space.dim,
           "lambda": None, "witness_polytope": None}
    if lam is not None:
        v = vector_of_lambda(F, lam, R0)
        W = reconstruct(F, R0, v)
        out["lambda"] = lambda_doc(F, lam, (R0, v))
        out["witness_polytope"] = polytope_doc(W)
        if args.csv:
            return _lambda_csv(F, lam), True
    elif args.csv:
        return _csv([], ("wall", "weight")), False
    return out, lam is not None


def cmd_typecone(args):
    from .typecone import LambdaWeights, is_strictly_convex, typecone_contains, typecone_dim, typecone_interior_point
    F, _ = _fan_input(args)
    out = {"typecone_dim": typecone_dim(F)}
    point = typecone_interior_point(F)
    out["interior_point"] = None if point is None else lambda_doc(F, point.values)
    ok = point is not None
    shown = None if point is None else point.values
    if args.weights:
        values, anchor = parse_lambda(_read(args.weights), F)
        out["contains"] = typecone_contains(F, values)
        try:
            out["strictly_convex"] = is_strictly_convex(LambdaWeights(F, values))
            out["in_type_space"] = True
        except InscribedError:
            out["strictly_convex"], out["in_type_space"] = False, False
        ok = out["contains"]
        shown = values
    if args.csv:
        return (_lambda_csv(F, shown) if shown is not None else _csv([], ("wall", "weight"))), ok
    return out, ok


def cmd_planar(args):
    from .planar import (
        alphas_from_profile, even_inscribable_by_angles, inscribable_profile, profile_of_fan,
        virtually_inscribable_profile,
    )
    if args.profile:
        beta = parse_profile(_read(args.profile))
    else:
        F, _ = _fan_input(args)
        beta = profile_of_fan(F)
    virtual, dim = virtually_inscribable_profile(beta)
    ok = inscribable_profile(beta)
    if args.csv:
        return _csv([(k, _scalar_text(a)) for k, a in enumerate(beta.angles)],
                    ("region", "pi_multiple" if beta.exact else "radians")), ok
    out = {"profile": profile_doc(beta), "virtually_inscribable": virtual, "dim_inspc": dim, "inscribable": ok}
    if beta.n % 2:
        out["central_angles"] = list(alphas_from_profile(beta))
    if args.oracle:
        if beta.n % 2:
            direct = all(beta._positive(a) for a in alphas_from_profile(beta))
        else:
            direct = even_inscribable_by_angles(beta)
        out["oracle_inscribable"] = direct
        out["oracle_agrees"] = direct == ok
    return out, ok


def cmd_nestohedron(args):
    from .nestohedra import is_delta_closed, validate as validate_building, violation
    B = parse_building_set(_read(args.building))
    validate_building(B)
    bad = violation(B, oracle=args.oracle)
    out = {"building_set": building_doc(B), "inscribed": bad is None, "delta_closed": is_delta_closed(B),
           "violation": None if bad is None else {"J": bad[0], "triple": list(bad[1])}}
    return out, bad is None


def cmd_trajectory(args):
    from .trajectory import direction_corank, hom_group, scheme_of_fan, trajectory_space, trajectory_space_gram
    if args.routing:
        S = parse_routing(_read(args.routing), _mode(args))
    else:
        F, _ = _fan_input(args)
        S = scheme_of_fan(F)
    base = S.base
    if args.base_region is not None:
        match = [u for u in S.nodes if str(u) == args.base_region]
        if not match:
            raise ParseError("", f"--base-region {args.base_region} is not a node")
        base = match[0]
    space = trajectory_space(S, base)
    G = hom_group(S, base, max_order=args.max_order)
    out = {"dim_trajectory": space.dim, "hom_group_order": None if G is None else G.order,
           "generator_kinds": None if G is None else list(G.kinds)}
    if args.oracle:
        gram = trajectory_space_gram(S)
        out["dim_gram"] = gram.dim
        out["direction_corank"] = direction_corank(S)
        out["oracle_agrees"] = gram.dim == space.dim - out["direction_corank"]
    return out, space.dim > 0


def cmd_delaunay(args):
    from .delaunay import delaunay_normally_equivalent, delaunay_subdivision
    U = parse_config(_read(args.config))
    D = delaunay_subdivision(U)

    def listed(sets):
        return sorted((sorted(s, key=str) for s in sets), key=lambda s: (len(s), [str(x) for x in s]))
    out = {"cells": listed(D.cells), "hidden_edges": listed(D.hidden_edges), "edges": listed(D.graph)}
    ok = True
    if args.compare:
        U2 = parse_config(_read(args.compare), "")
        ok = delaunay_normally_equivalent(U, U2)
        out["normally_equivalent"] = ok
    return out, ok


COMMANDS = {
    "fan": cmd_fan, "inscribe": cmd_inscribe, "typecone": cmd_typecone, "planar": cmd_planar,
    "nestohedron": cmd_nestohedron, "trajectory": cmd_trajectory, "delaunay": cmd_delaunay,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    num = common.add_mutually_exclusive_group()
    num.add_argument("--exact", action="store_true", help="exact rational arithmetic (default)")
    num.add_argument("--float", type=float, metavar="EPS", help="floating point with tolerance EPS")
    common.add_argument("--base-region", metavar="ID", help="base region (or routing node)")
    common.add_argument("--strict", action="store_true", help="exit 3 when the answer is negative")
    common.add_argument("--oracle", action="store_true", help="also run the brute-force cross-checks")
    common.add_argument("--csv", action="store_true", help="emit the table form where one exists")

    parser = argparse.ArgumentParser(prog="inscribed", description="Inscribed polytopes and fans.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_fan(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--fan", metavar="FILE", help="fan document")
        g.add_argument("--polytope", metavar="FILE", help="polytope document (its normal fan is used)")
        return p

    with_fan(sub.add_parser("fan", parents=[common], help="normalize and validate a fan"))
    with_fan(sub.add_parser("inscribe", parents=[common], help="inscribed space and a witness"))
    p = with_fan(sub.add_parser("typecone", parents=[common], help="type cone dimension and membership"))
    p.add_argument("--lambda", dest="weights", metavar="FILE", help="weights to test")
    p = with_fan(sub.add_parser("planar", parents=[common], help="profile of a 2D fan"))
    p.add_argument("--profile", metavar="FILE", help="profile document")
    p = sub.add_parser("nestohedron", parents=[common], help="inscribability of a nestohedron")
    p.add_argument("--building", metavar="FILE", required=True, help="building set document")
    p = with_fan(sub.add_parser("trajectory", parents=[common], help="trajectory space and hom group"))
    p.add_argument("--routing", metavar="FILE", help="routing scheme document")
    p.add_argument("--max-order", type=int, default=20160, help="give up on groups larger than this")
    p = sub.add_parser("delaunay", parents=[common], help="Delaunay subdivision of a configuration")
    p.add_argument("--config", metavar="FILE", required=True, help="labelled point configuration")
    p.add_argument("--compare", metavar="FILE", help="second configuration for normal equivalence")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INVALID
    try:
        result, positive = COMMANDS[args.command](args)
    except ParseError as e:
        stderr.write(dumps({"error": "parse", "pointer": e.pointer, "message": str(e)}) + "\n")
        return EXIT_INVALID
    except InscribedError as e:
        stderr.write(dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return EXIT_INVALID
    stdout.write(result if isinstance(result, str) else dumps(result) + "\n")
    return EXIT_NEGATIVE if args.strict and not positive else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
