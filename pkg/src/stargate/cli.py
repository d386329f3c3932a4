"""Command line front end.

Every command builds a JSON-serialisable report; ``--format text`` renders
the same object line by line.  Exit status: 0 after a successful evaluation
whatever the verdict, 2 for unreadable or invalid input, 3 when an internal
consistency check fails, 4 when a bounded search finds nothing.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import descriptors as ds
from . import gseries as gs
from . import symplectic as sp
from .errors import (ArgumentError, DegenerateInputError, InvariantError, NotFoundError,
                     PreconditionError)
from .example import ALTERNATIVE_PROFILE, EXAMPLE_BETA, example_point
from .fieldforge import forge
from .filtration import MAX_TORUS_SIZE, NilpotentOperator, torus_bound_check, weight_filtration
from .starcheck import DEFAULT_PRIME_BOUND, proximity_exclusion, sigma_membership, verdict_to_json

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_NOT_FOUND = 4


class InputError(Exception):
    def __init__(self, lines):
        super().__init__("\n".join(lines))
        self.lines = lines


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError([f"{path}: {exc.strerror}"]) from exc
    except json.JSONDecodeError as exc:
        raise InputError([f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from exc


def _parse(model, data):
    try:
        return ds.parse(model, data)
    except ds.ValidationError as exc:
        raise InputError(ds.format_validation_error(exc)) from exc


def _fr(x):
    return str(Fraction(x))


# ---------------------------------------------------------------- commands

def cmd_star_check(args):
    point = _point(_load(args.input))
    verdict = sigma_membership(point, args.prime_bound)
    out = verdict_to_json(verdict)
    if args.proximity is not None:
        prox = proximity_exclusion(point, args.proximity, args.prime_bound, report=verdict.report)
        out["proximity"] = {"p": prox.p, "excluded": prox.excluded,
                            "via": {str(k): list(v) for k, v in prox.via.items()}}
    return out


def _point(data):
    try:
        return ds.point_from_model(_parse(ds.PointModel, data))
    except ds.DescriptorError as exc:
        raise InputError([str(exc)]) from exc


def cmd_filtration(args):
    m = _parse(ds.FiltrationInput, _load(args.input))
    op = NilpotentOperator(tuple(tuple(r) for r in m.matrix))
    wf = weight_filtration(op, m.n)
    prof = wf.profile
    out = {
        "profile": prof.to_json(),
        "block_counts": {str(k): v for k, v in prof.block_counts().items()},
        "jordan_type": list(op.jordan_type()),
        "rank": op.rank,
        "h": prof.h,
        "h_max": prof.h_max,
        "subspaces": [[[_fr(x) for x in v] for v in w] for w in wf.subspaces],
    }
    if op.size <= MAX_TORUS_SIZE:
        tb = torus_bound_check(op)
        out["torus"] = {"bound": tb.bound, "centralizer_torus_dim": tb.centralizer_torus_dim,
                        "centralizer_dim": tb.centralizer_dim, "ok": tb.ok}
    return out


def cmd_symplectic(args):
    m = _parse(ds.SymplecticInput, _load(args.input))
    if m.task == "extend_isotropic":
        basis = sp.extend_isotropic([list(v) for v in m.vectors], m.mu)
        return {"task": m.task, "basis": [[_fr(x) for x in v] for v in basis],
                "symplectic": sp.is_symplectic_basis(basis)}
    if m.task == "riemann_check":
        mat = sp.ScalarMatrix.from_rational([list(r) for r in m.matrix])
        scalar = sp.riemann_scalar(mat, m.mu)
        return {"task": m.task, "power": m.power, "holds": sp.riemann_check(mat, m.mu, m.power),
                "scalar": None if scalar is None else {str(e): _fr(c) for e, c in sorted(scalar.items())}}
    rel = sp.QuadraticRelation.from_json([{"vars": t.vars, "coeff": t.coeff} for t in m.relation])
    gens = sp.trivial_ideal_generators(m.mu, m.h)
    return {"task": m.task, "trivial": sp.is_trivial_relation(rel, m.mu, m.h),
            "generators": [{"i": g.i, "j": g.j, "relation": g.relation.to_json()} for g in gens]}


def cmd_gseries(args):
    m = _parse(ds.SeriesInput, _load(args.input))
    coeffs = list(m.coeffs)
    if args.order is not None:
        if args.order + 1 > len(coeffs):
            raise InputError([f"--order {args.order} exceeds the {len(coeffs) - 1} supplied terms"])
        coeffs = coeffs[:args.order + 1]
    y = gs.TruncatedSeries(tuple(coeffs))
    diag = gs.g_series_candidate(y, args.cap)
    out = {
        "order": y.order,
        "cap": _fr(diag.cap),
        "accepted": diag.accepted,
        "first_failure": diag.first_failure,
        "d_seq": list(diag.d_seq),
        "c_estimate": diag.c_estimate.to_json(),
        "radius_estimates": [{"place": r.place, "value": r.value, "certified": r.certified}
                             for r in gs.radius_estimates(y, m.primes)],
    }
    if m.operator is not None:
        residual = gs.ode_residual(y, [list(p) for p in m.operator])
        out["ode_residual_zero"] = all(c == 0 for c in residual)
    if m.height is not None:
        h = m.height
        inp = gs.HeightBoundInput(delta=h.delta, m=h.m, c1=h.c1, c2=h.c2)
        bound = gs.hasse_height_bound(inp, strong=args.strong)
        out["height_bound"] = {"variant": "strong" if args.strong else "standard",
                               "lo": str(bound.lo), "hi": str(bound.hi),
                               "approx": float((bound.lo + bound.hi) / 2)}
        if h.mu is not None:
            db = gs.degree_inflation_bound(h.mu)
            out["degree_bound"] = {"mu": db.mu, "log10": db.log10,
                                   "value": None if db.value is None else str(db.value)}
    return out


def cmd_forge(args):
    recipe = forge(args.beta, l_bound=args.l_bound, q_bound=args.q_bound)
    out = recipe.to_json()
    out["summand_fragment"] = {"type": "IV", "center": recipe.field.to_json(),
                               "cm_conjugation": [str(c) for c in recipe.sigma]}
    return out


def cmd_example(args):
    point = example_point()
    out = {"descriptor": ds.point_to_json(point),
           "verdict": verdict_to_json(sigma_membership(point, args.prime_bound))}
    alt = example_point(ALTERNATIVE_PROFILE)
    out["alternative"] = {"profile": list(ALTERNATIVE_PROFILE),
                          "verdict": verdict_to_json(sigma_membership(alt, args.prime_bound))}
    if args.write:
        with open(args.write, "w", encoding="utf-8") as fh:
            json.dump(out["descriptor"], fh, indent=2)
            fh.write("\n")
    return out


# ------------------------------------------------------------------ output

def render_text(obj, prefix=""):
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                lines.extend(render_text(v, key))
            else:
                lines.append(f"{key}: {_scalar(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines.extend(render_text(v, f"{prefix}[{i}]") if isinstance(v, (dict, list)) and v
                         and not _is_flat_list(v) else [f"{prefix}[{i}]: {_scalar(v)}"])
    else:
        lines.append(f"{prefix}: {_scalar(obj)}")
    return lines


def _is_flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, dict):
        return "{}"
    return str(v)


# ------------------------------------------------------------------ parser

def _bound(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("prime bound must be at least 2")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _rational(text):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError("cap must be positive")
    return v


def build_parser():
    parser = argparse.ArgumentParser(prog="stargate", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star-check", parents=[common], help="condition report and membership verdict")
    p.add_argument("input")
    p.add_argument("--prime-bound", type=_bound, default=DEFAULT_PRIME_BOUND)
    p.add_argument("--proximity", type=int, metavar="P", help="also report exclusion at a place above P")
    p.set_defaults(func=cmd_star_check)

    p = sub.add_parser("filtration", parents=[common], help="weight filtration of a nilpotent matrix")
    p.add_argument("input")
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("symplectic", parents=[common], help="symplectic basis and relation checks")
    p.add_argument("input")
    p.set_defaults(func=cmd_symplectic)

    p = sub.add_parser("gseries-check", parents=[common], help="growth diagnostics for a truncated series")
    p.add_argument("input")
    p.add_argument("--cap", type=_rational, required=True)
    p.add_argument("--order", type=_positive_int)
    p.add_argument("--strong", action="store_true", help="use the strong height-bound variant")
    p.set_defaults(func=cmd_gseries)

    p = sub.add_parser("forge", parents=[common], help="build the CM field recipe for a given beta")
    p.add_argument("--beta", type=_positive_int, default=EXAMPLE_BETA)
    p.add_argument("--l-bound", type=_bound, default=200)
    p.add_argument("--q-bound", type=_bound, default=2000)
    p.set_defaults(func=cmd_forge)

    p = sub.add_parser("example", parents=[common], help="rebuild the mu = 16 example and its verdict")
    p.add_argument("--prime-bound", type=_bound, default=DEFAULT_PRIME_BOUND)
    p.add_argument("--write", metavar="PATH", help="also write the descriptor to PATH")
    p.set_defaults(func=cmd_example)
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except InputError as exc:
        for line in exc.lines:
            print(f"error: {line}", file=stderr)
        return EXIT_INPUT
    except (ArgumentError, PreconditionError, DegenerateInputError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"internal check failed: {exc}", file=stderr)
        return EXIT_INVARIANT
    except NotFoundError as exc:
        print(f"not found: {exc}", file=stderr)
        return EXIT_NOT_FOUND
    if args.format == "json":
        stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        stdout.write("\n".join(render_text(out)) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
