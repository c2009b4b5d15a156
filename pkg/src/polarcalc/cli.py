"""Command-line front end.

Every command builds one JSON-ready report (schema version 1); text output
is a flat rendering of the same report, so both formats carry identical
values. Exit codes: 0 success, 2 bad input, 3 certification failure,
4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import CertificationError, PolarcalcError
from .invariants import (
    BOTH,
    ell_of_arc,
    gradient_exponent_complex,
    gradient_exponent_real,
    intersection_multiplicity,
    numeric_exponent_estimate,
    polar_quotients,
)
from .newton import RelativeForm, relative_diagram
from .numbers import INF, approx_field
from .parser import format_arc, format_coeff, format_poly, parse_arc, parse_poly
from .puiseux import GenericSampler, expand_roots, mini_regularize
from .series import PuiseuxSeries

SCHEMA_VERSION = 1
COMMANDS = ("roots", "polygon", "quotients", "lojasiewicz", "bounds", "imult", "estimate")

_RAT = {"type": "string", "pattern": r"^(-?\d+(/\d+)?|inf)$"}
_RAT_OR_NULL = {"anyOf": [_RAT, {"type": "null"}]}

JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "schema", "command", "input", "field", "seed", "shear", "m", "d",
        "quotients", "L", "L_plus", "L_minus", "bounds", "certificates",
    ],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"enum": list(COMMANDS)},
        "input": {"type": "array", "items": {"type": "string"}},
        "field": {"enum": ["complex", "real"]},
        "seed": {"type": "integer"},
        "shear": {"anyOf": [{"type": "string"}, {"type": "null"}]},
        "m": {"anyOf": [{"type": "integer"}, {"type": "null"}]},
        "d": {"anyOf": [{"type": "integer"}, {"type": "null"}]},
        "quotients": {
            "anyOf": [
                {"type": "null"},
                {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["value", "witness"],
                        "properties": {"value": _RAT},
                    },
                },
            ]
        },
        "L": _RAT_OR_NULL,
        "L_plus": _RAT_OR_NULL,
        "L_minus": _RAT_OR_NULL,
        "bounds": {
            "anyOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["gradient", "classical", "classical_via_L"],
                    "properties": {"gradient": _RAT, "classical": _RAT, "classical_via_L": _RAT_OR_NULL},
                },
            ]
        },
        "certificates": {"type": "array", "items": {"type": "string"}},
    },
}


def _q(v):
    if v is None:
        return None
    return "inf" if v is INF else str(Fraction(v))


def _base(cmd, inputs, args):
    return {
        "schema": SCHEMA_VERSION,
        "command": cmd,
        "input": list(inputs),
        "field": args.field,
        "seed": args.seed,
        "shear": None,
        "m": None,
        "d": None,
        "quotients": None,
        "L": None,
        "L_plus": None,
        "L_minus": None,
        "bounds": None,
        "certificates": [],
    }


def _field_of(args):
    return approx_field(args.precision_bits, args.tolerance)


def _parse_depth(text):
    if text is None or text == "auto":
        return None
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"depth must be a positive rational p/q, got {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError("depth must be positive")
    return v


def _parse_tolerance(text):
    t = text.replace(" ", "")
    for prefix in ("10^-", "1e-", "1E-"):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            return int(t[len(prefix):])
    if t.isdigit():
        return int(t)
    raise argparse.ArgumentTypeError(f"tolerance must look like 10^-k, got {text!r}")


def _report_fields(out, rep):
    out["shear"] = format_coeff(rep.shear.value)
    out["m"] = rep.m
    out["d"] = rep.d
    out["quotients"] = rep.quotients.to_json()
    out["L"] = _q(rep.L)
    out["L_plus"] = _q(rep.L_plus)
    out["L_minus"] = _q(rep.L_minus)
    out["bounds"] = {
        "gradient": _q(rep.bound_gradient),
        "classical": _q(rep.bound_classical),
        "classical_via_L": _q(rep.bound_classical_via_L),
    }
    out["witness"] = rep.witness
    out["ell"] = [{"arc": w, "value": _q(v)} for w, v in rep.ell_values]
    out["certificates"] = list(rep.certificates)


def _invariant_report(f, args):
    field = _field_of(args)
    if args.field == "real":
        return gradient_exponent_real(f, args.seed, field)
    return gradient_exponent_complex(f, args.seed, field)


# ---------------------------------------------------------------- commands
def cmd_roots(args, out):
    f = parse_poly(args.exprs[0])
    sampler = GenericSampler(args.seed)
    fs, c, m = mini_regularize(f, sampler)
    bs = expand_roots(fs, args.depth, _field_of(args), shear=c)
    out["shear"] = format_coeff(c.value)
    out["m"] = m
    out["d"] = f.degree()
    out["sheared"] = format_poly(fs)
    out.update({k: v for k, v in bs.to_json().items() if k in ("branches", "contact")})
    out["certificates"] = ["root multiplicities from exact squarefree decomposition", "all root pairs separated"]
    return fs, None


def cmd_polygon(args, out):
    f = parse_poly(args.exprs[0])
    if args.arc is None:
        raise UsageError("polygon needs --arc")
    phi = parse_arc(args.arc)
    out["input"].append(format_arc(phi))
    diag = relative_diagram(f, phi)
    out["d"] = f.degree()
    out["m"] = f.order()
    out.update(diag.to_json())
    he = diag.highest_edge
    out["highest_edge"] = None if he is None else {"tan_theta": _q(he.tan_theta), "poly": format_poly_z(he.edge_poly)}
    out["certificates"] = ["relative polygon certified"] if diag.certified else []
    return f, phi


def format_poly_z(coeffs):
    """Edge polynomial as text in ``z``."""
    from .poly import BivarPoly

    text = format_poly(BivarPoly({(i, 0): c for i, c in enumerate(coeffs)}))
    return text.replace("x", "z")


def cmd_quotients(args, out):
    f = parse_poly(args.exprs[0])
    sampler = GenericSampler(args.seed)
    fs, c, m = mini_regularize(f, sampler)
    qs = polar_quotients(f, BOTH, args.seed, _field_of(args))
    out["shear"] = format_coeff(c.value)
    out["m"] = m
    out["d"] = f.degree()
    out["quotients"] = qs.to_json()
    out["certificates"] = ["polar quotients agree along polar branches and root pairs"]
    return fs, None


def cmd_lojasiewicz(args, out):
    f = parse_poly(args.exprs[0])
    rep = _invariant_report(f, args)
    _report_fields(out, rep)
    return f, None


def cmd_bounds(args, out):
    f = parse_poly(args.exprs[0])
    rep = _invariant_report(f, args)
    _report_fields(out, rep)
    out["satisfied"] = rep.L <= rep.bound_gradient and rep.bound_classical_via_L <= rep.bound_classical
    return f, None


def cmd_imult(args, out):
    if len(args.exprs) < 2:
        raise UsageError("imult needs two polynomials")
    f, g = parse_poly(args.exprs[0]), parse_poly(args.exprs[1])
    v = intersection_multiplicity(f, g, args.seed, _field_of(args))
    out["d"] = f.degree()
    out["m"] = f.order()
    out["imult"] = _q(v) if v is INF else str(v)
    out["certificates"] = ["orders along roots certified by a frozen relative polygon"]
    return f, None


def cmd_estimate(args, out):
    f = parse_poly(args.exprs[0])
    if args.arc is None:
        raise UsageError("estimate needs --arc")
    phi = parse_arc(args.arc)
    out["input"].append(format_arc(phi))
    est = numeric_exponent_estimate(f, phi, args.t_min, args.t_max, args.samples)
    out["d"] = f.degree()
    out["m"] = f.order()
    out["estimate"] = f"{est:.6f}"
    try:
        out["ell"] = _q(ell_of_arc(f, phi))
    except PolarcalcError as e:
        out["ell"] = None
        out["ell_error"] = str(e)
    return f, phi


_DISPATCH = {
    "roots": cmd_roots,
    "polygon": cmd_polygon,
    "quotients": cmd_quotients,
    "lojasiewicz": cmd_lojasiewicz,
    "bounds": cmd_bounds,
    "imult": cmd_imult,
    "estimate": cmd_estimate,
}


class UsageError(PolarcalcError, ValueError):
    pass


# ---------------------------------------------------------------- output
def render_text(report) -> str:
    lines = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, w in v.items():
                walk(f"{prefix}.{k}" if prefix else k, w)
        elif isinstance(v, list):
            if not v:
                lines.append(f"{prefix}: []")
            for n, w in enumerate(v):
                walk(f"{prefix}[{n}]", w)
        elif v is None or isinstance(v, bool):
            lines.append(f"{prefix}: {json.dumps(v)}")
        else:
            lines.append(f"{prefix}: {v}")

    walk("", report)
    return "\n".join(lines) + "\n"


def render_json(report) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def emit_diagram(path, f, phi):
    form = RelativeForm.build(f, phi if phi is not None else PuiseuxSeries.zero())
    diag = form.diagram()
    lines = ["# newton dots: i h"]
    lines += [f"{d.i} {d.h}" for d in diag.dots]
    lines.append("# edges: i_left h_left i_right h_right tan_theta")
    lines += [f"{e.left.i} {e.left.h} {e.right.i} {e.right.h} {e.tan_theta}" for e in diag.edges]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def build_parser():
    p = argparse.ArgumentParser(prog="polarcalc", description="Invariants of plane curve singularities at the origin.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("exprs", nargs="+", metavar="EXPR", help="polynomial(s) in x, y")
    p.add_argument("--arc", help='arc "x = <series in y>" (polygon, estimate)')
    p.add_argument("--field", choices=("complex", "real"), default="complex")
    p.add_argument("--depth", type=_parse_depth, default=None, help="expansion depth p/q (default: auto)")
    p.add_argument("--precision-bits", type=int, default=256, dest="precision_bits")
    p.add_argument("--tolerance", type=_parse_tolerance, default=None, help="zero tolerance 10^-k")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--emit-diagram", dest="emit_diagram", metavar="FILE")
    p.add_argument("--t-min", type=float, default=1e-6, dest="t_min")
    p.add_argument("--t-max", type=float, default=1e-3, dest="t_max")
    p.add_argument("--samples", type=int, default=64)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if args.precision_bits < 16:
        print("error: --precision-bits must be at least 16", file=stderr)
        return 2
    out = _base(args.command, args.exprs, args)
    try:
        f, phi = _DISPATCH[args.command](args, out)
        if args.emit_diagram:
            emit_diagram(args.emit_diagram, f, phi)
    except CertificationError as e:
        print(f"certification failed ({type(e).__name__}): {e}", file=stderr)
        return 3
    except (PolarcalcError, ValueError) as e:
        print(f"error ({type(e).__name__}): {e}", file=stderr)
        return 2
    except Exception as e:  # pragma: no cover - reported, not expected
        print(f"internal error ({type(e).__name__}): {e}", file=stderr)
        return 4
    stdout.write(render_json(out) if args.format == "json" else render_text(out))
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
