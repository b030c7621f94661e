"""Command-line interface: ``kinalg <command> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 divergent limit or invalid Inonu-Wigner split.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import sympy as sp

from . import verify as vf
from .algebra import (BRACKET_FAMILIES, FAMILIES, LABELS, NAMES, build_algebra, format_brackets, from_json, join_label,
                      to_json)
from .coeff import DYNAMICAL, KINEMATICAL, Coefficient
from .contraction import bracket_scalars, contract_limit, contraction_graph, identify, iw_contract, to_dot, to_text
from .dynamics import DynParams, PhaseState, integrate
from .errors import Divergence, KinalgError, NotSubalgebra, UnknownFamily
from .poisson import POISSON_COLUMNS, PoissonStructure, PolyFunction, format_poly, motion_equations, var
from .quantities import quantity_formulas
from .realization import (MATRIX_LABELS, build_matrix_generators, commutator_table, compare_tables, expected_table,
                          format_matrix, format_table, operator_table)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
LIMITS = {"m": {"m"}, "C": {"C"}, "E0": {"E0"}, "c,r": {"c", "r"}, "c,tau": {"c", "tau"}, "r,tau": {"r", "tau"}}


class UsageError(Exception):
    pass


# -- table rendering ------------------------------------------------------------

def _signed(prefix_sign: int, body: str) -> str:
    """Attach the family sign as ± or ∓."""
    if body.startswith("-"):
        return ("∓" if prefix_sign else "-") + body[1:]
    return ("±" if prefix_sign else "") + body


def _scalar_text(c: Coefficient) -> str:
    plain = Coefficient(c.scale, c.exponents)
    num = [p if e == 1 else f"{p}^{e}" for p, e in plain.exponents if e > 0]
    den = [p if e == -1 else f"{p}^{-e}" for p, e in plain.exponents if e < 0]
    scale = abs(plain.scale)
    text = "*".join(([str(scale)] if scale != 1 or not num else []) + num)
    if den:
        text = f"{text}/{den[0] if len(den) == 1 else '(' + '*'.join(den) + ')'}"
    return ("-" if plain.scale < 0 else "") + text


_BRACKET_GEN = {"[B,H]": "P_i", "[B,B]": "J_k eps^k_ij", "[B,P]": "H delta_ij", "[P,P]": "J_k eps^k_ij",
                "[P,H]": "{B}_i"}


def _cell(c: Coefficient, template: str, boost: str) -> str:
    if c.is_zero:
        return "0"
    gen = template.format(B=boost)
    body = _scalar_text(c)
    if body in ("1", "-1"):
        body = body[:-1]
    else:
        body += " "
    return _signed(c.sign_power, body + gen)


def _header_name(bf: str, boost: str) -> str:
    return bf.replace("B", boost)


def algebra_rows(basis: str) -> tuple[list[str], list[list[str]]]:
    boost = "K" if basis == KINEMATICAL else "Q"
    header = ["symbol", "name"] + [_header_name(b, boost) for b in BRACKET_FAMILIES]
    rows = []
    for fam in FAMILIES:
        alg = build_algebra(join_label(fam, 1) if fam.endswith("±") else fam, basis)
        rows.append([fam, NAMES[fam]] + [_cell(c, _BRACKET_GEN[b], boost)
                                         for c, b in zip(bracket_scalars(alg), BRACKET_FAMILIES)])
    return header, rows


def _poly_text(f: PolyFunction, tau_view: bool = True) -> str:
    if not f:
        return "0"
    pieces = []
    for powers, c in f.coefficient_list():
        plain = PolyFunction.monomial(powers, Coefficient(c.scale, c.exponents))
        pieces.append(_signed(c.sign_power, format_poly(plain, tau_view=tau_view)))
    return " + ".join(pieces).replace("+ -", "- ")


def poisson_rows() -> tuple[list[str], list[list[str]]]:
    header = ["symbol", "name"] + [f"{{{a},{b}}}" for a, b in POISSON_COLUMNS]
    rows = []
    for fam in FAMILIES:
        ps = PoissonStructure(build_algebra(join_label(fam, 1) if fam.endswith("±") else fam))
        rows.append([fam, NAMES[fam]] + [_poly_text(ps.bracket(var(a), var(b))) for a, b in POISSON_COLUMNS])
    return header, rows


MOTION_GROUPS = (("dS±", "NH±"), ("P", "G"), ("P±", "G±"), ("C", "S"))


def motion_rows() -> tuple[list[str], list[list[str]]]:
    header = ["algebras", "dq1/dt", "dp1/dt"]
    rows = []
    for a, b in MOTION_GROUPS:
        la, lb = (join_label(f, 1) if f.endswith("±") else f for f in (a, b))
        ea, eb = motion_equations(build_algebra(la)), motion_equations(build_algebra(lb))
        if ea != eb:
            raise AssertionError(f"{a} and {b} have different motion equations")
        rows.append([f"{a} and {b}", _poly_text(ea["q1"]), _poly_text(ea["p1"])])
    return header, rows


def quantity_rows() -> tuple[list[str], list[list[str]]]:
    header = ["symbol", "angular momentum[1]", "position[1]", "linear momentum[1]", "energy"]
    rows = []
    for fam in FAMILIES:
        f = quantity_formulas(fam)
        rows.append([fam] + [sp.sstr(x) for x in (f.angular_momentum[0], f.position[0], f.momentum[0], f.energy)])
    return header, rows


TABLES = {
    "table1": lambda: algebra_rows(KINEMATICAL),
    "table2": lambda: algebra_rows(DYNAMICAL),
    "poisson": poisson_rows,
    "motion": motion_rows,
    "quantities": quantity_rows,
}


def render(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2, ensure_ascii=False) + "\n"
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    lines += [" | ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


# -- commands ------------------------------------------------------------------

def cmd_tables(args, out) -> int:
    header, rows = TABLES[args.which]()
    out.write(render(header, rows, args.format))
    return EXIT_OK


def _label(text: str) -> str:
    if text not in LABELS:
        raise UsageError(f"unknown algebra {text!r}; expected one of {', '.join(LABELS)}")
    return text


def cmd_contract(args, out) -> int:
    label = _label(args.algebra)
    if args.limit and args.iw:
        raise UsageError("--limit and --iw are mutually exclusive")
    if args.limit:
        div = LIMITS[args.limit]
        basis = KINEMATICAL if div <= {"c", "r", "tau"} else DYNAMICAL
        alg = build_algebra(label, basis, constrained=False)
        result = contract_limit(alg, div)
    elif args.iw:
        alg = build_algebra(label, args.basis, constrained=False)
        result = iw_contract(alg, [n.strip() for n in args.iw.split(",") if n.strip()])
    else:
        result = build_algebra(label, args.basis)
    name = identify(result)
    result = result.replace(label=name)
    if args.format == "json":
        out.write(to_json(result))
    else:
        out.write(format_brackets(result) + "\n")
        out.write(f"identified: {name}\n")
    return EXIT_OK


def cmd_graph(args, out) -> int:
    graph = contraction_graph(args.basis)
    if args.format == "dot":
        out.write(to_dot(graph))
    else:
        sign = {"+": 1, "-": -1}.get(args.sign)
        out.write(to_text(graph, sign))
    return EXIT_OK


def cmd_identify(args, out) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    try:
        alg = from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"not an algebra JSON document: {exc}") from None
    out.write(identify(alg) + "\n")
    return EXIT_OK


def cmd_realize(args, out) -> int:
    sign = 1 if args.sign in ("+", "1", "+1") else -1
    gens = build_matrix_generators(sign)
    for name in MATRIX_LABELS:
        out.write(f"{name} =\n{format_matrix(gens[name])}\n\n")
    table = commutator_table(gens)
    out.write(format_table(table) + "\n")
    diffs = compare_tables(table, expected_table(sign))
    out.write(("PASS" if not diffs else "FAIL") + " matrix commutators match the O(5) relations\n")
    if args.operators:
        out.write("\ndifferential operators:\n" + format_table(operator_table(sign)) + "\n")
    return EXIT_OK if not diffs else EXIT_FAIL


def _vector(text: str) -> tuple[float, float, float]:
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad vector {text!r}") from None
    if len(parts) != 3:
        raise UsageError(f"vector {text!r} needs three components")
    return tuple(parts)


def cmd_simulate(args, out) -> int:
    sign = {"+": 1, "-": -1, None: None}[args.sign]
    params = DynParams(args.m, args.C, args.E0, sign=sign, family=args.family)
    s0 = PhaseState(q=_vector(args.q0), p=_vector(args.p0), E=args.E)
    traj = integrate(params, s0, args.h, args.T, method=args.method)
    text = traj.to_csv()
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def default_seed() -> int:
    env = os.environ.get("KINALG_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"KINALG_SEED must be an integer, got {env!r}") from None


def cmd_verify(args, out) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    out.write(f"seed {seed}\n")
    checks = vf.run(args.scope, seed=seed)
    for c in checks:
        out.write(c.line() + "\n")
    out.write(vf.summary(checks) + "\n")
    return EXIT_FAIL if any(c.status == "FAIL" for c in checks) else EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kinalg", description="Kinematical Lie algebras and their contractions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="generated tables of brackets, Poisson brackets, motion and quantities")
    p.add_argument("--which", choices=sorted(TABLES), default="table1")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("contract", help="contract an algebra and identify the result")
    p.add_argument("--algebra", required=True)
    p.add_argument("--limit", choices=tuple(LIMITS))
    p.add_argument("--iw", metavar="GENS", help="unscaled generators for an Inonu-Wigner contraction, e.g. J,H")
    p.add_argument("--basis", choices=(DYNAMICAL, KINEMATICAL), default=DYNAMICAL)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("graph", help="the contraction cube")
    p.add_argument("--format", choices=("dot", "text"), default="text")
    p.add_argument("--basis", choices=(DYNAMICAL, KINEMATICAL), default=DYNAMICAL)
    p.add_argument("--sign", choices=("+", "-"))
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("identify", help="name the algebra in a JSON file")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("realize", help="5x5 matrix realization of O(5) and its commutators")
    p.add_argument("--sign", choices=("+", "-", "1", "-1", "+1"), default="+")
    p.add_argument("--operators", action="store_true", help="also print the differential-operator table")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("simulate", help="integrate the motion equations and emit CSV")
    p.add_argument("--family", required=True, help="family or label, e.g. NH- or NH± with --sign")
    p.add_argument("--sign", choices=("+", "-"))
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--E0", type=float, default=1.0)
    p.add_argument("--q0", default="1,0,0")
    p.add_argument("--p0", default="0,0,0")
    p.add_argument("--E", type=float, default=0.0)
    p.add_argument("--h", type=float, default=0.01)
    p.add_argument("--T", type=float, default=10.0)
    p.add_argument("--method", choices=("rk4", "exact"), default="rk4")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--scope", choices=("all",) + vf.SCOPES, default="all")
    p.add_argument("--seed", type=int, help="seed for randomized checks (default: $KINALG_SEED or 0)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (Divergence, NotSubalgebra) as exc:
        print(f"kinalg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, UnknownFamily, ValueError, OSError) as exc:
        print(f"kinalg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KinalgError as exc:
        print(f"kinalg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
