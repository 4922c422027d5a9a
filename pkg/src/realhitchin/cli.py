"""Command-line front end.

Every subcommand prints one JSON document (sorted keys, ``"schema": 1``) or
writes it under ``--out``. Exit status is 0 on success, 1 on invalid input
and 2 when an oracle disagrees with a closed formula.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .census import Budget, census
from .counting import (
    RealityTypeQuery,
    count_gl,
    count_gl2,
    count_sl2,
    real_or_quaternionic,
    torus_d,
)
from .curve import InvolutionKind, build_curve
from .errors import NotApplicable
from .homology import build_presentation, sl2_exponent, theta_kernel_dim
from .klein import classify_hyperelliptic
from .monodromy import oracle_traces, track_fixed_circles
from .realpoly import RealPolynomial, parse_polynomial
from .spectral import QuadDifferential, analyze, fibre_dim, fixed_degree, ovals, spectral_genus

SCHEMA = 1

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# inputs


def read_config(path: Optional[str]) -> dict:
    """``key = value`` lines; ``#`` starts a comment. Values are kept as strings."""
    if not path:
        return {}
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line without '=': {raw!r}")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = value.strip("\"'")
    return out


def _curve_from_source(source):
    if isinstance(source, str):
        return build_curve(source)
    if isinstance(source, list):
        return build_curve(source)
    if isinstance(source, dict):
        if "roots" in source:
            return build_curve(source["roots"], leading=Fraction(str(source.get("leading", 1))))
        if "coefficients" in source:
            return build_curve(RealPolynomial(tuple(Fraction(str(c)) for c in source["coefficients"])))
        if "text" in source:
            return build_curve(parse_polynomial(source["text"]))
    raise UsageError("curve must be a polynomial string, a root list, or an object with roots/coefficients/text")


def _load_input(args) -> dict:
    data = {}
    if getattr(args, "input", None):
        data = json.loads(Path(args.input).read_text())
    for key in ("p", "a1", "a2", "sign", "kind"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    if getattr(args, "zeros", None):
        data["zeros"] = args.zeros.split(",")
    if "p" not in data and "roots" in data:
        data["p"] = {"roots": data["roots"], "leading": data.get("leading", 1)}
    if "p" not in data:
        raise UsageError("no curve given (use --p or --input)")
    return data


def _differential(data: dict, curve) -> QuadDifferential:
    zeros = data.get("zeros")
    if zeros is None:
        if "a1" not in data or "a2" not in data:
            raise UsageError("need --a1 and --a2 (or --zeros)")
        zeros = [data["a1"], data["a2"]]
    return QuadDifferential(curve, tuple(str(z) for z in zeros), int(data.get("sign", 1)), data.get("kind", "ConjF"))


# ---------------------------------------------------------------------------
# reports


def _counts(sp, g: int) -> dict:
    out = {
        "GL(2)": count_gl2(sp.n_plus, sp.u).to_dict(),
        "GL(n)": count_gl(sp.n_S, spectral_genus(2, g)).to_dict(),
    }
    try:
        out["SL(2)"] = count_sl2(sp.n_zero, sp.u).to_dict()
    except NotApplicable as exc:
        out["SL(2)"] = {"group": "SL(2)", "status": "NotApplicable", "reason": str(exc)}
    return out


def analysis_report(data: dict, with_oracle: bool, rho_mu=None) -> dict:
    curve = _curve_from_source(data["p"])
    q = _differential(data, curve)
    klein = classify_hyperelliptic(curve, q.kind)
    sp = analyze(q)
    counts = _counts(sp, curve.g)
    reality = real_or_quaternionic(RealityTypeQuery(sp.u, klein.n > 0, rho_mu))
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "seed": None,
        "curve": curve.to_dict(),
        "q": q.to_dict(),
        "klein": dict(klein.to_dict(), method=klein.method),
        "spectral": sp.to_dict(),
        "tuple": [klein.n, klein.a, sp.n_plus, sp.u_half],
        "counts": counts,
        "reality": reality.value,
    }
    mismatch = counts["GL(2)"]["d"] != counts["GL(n)"]["d"]
    if with_oracle:
        block = oracle_block(q, klein, sp)
        report["oracle"] = block
        mismatch = mismatch or not block["agrees"]
    if mismatch:
        report["mismatch"] = True
    return report


def oracle_block(q, klein, sp) -> dict:
    g = q.curve.g
    per_oval = []
    agrees = True
    for ov, count, sign in zip(ovals(q.curve, q.kind), sp.oval_zero_counts, sp.oval_signs):
        circles = track_fixed_circles(q, ov)
        # 2k zeros on a circle give k fixed circles; a zero-free circle gives 2 or 0
        expected = count // 2 if count else (0 if sign < 0 else 2)
        agrees = agrees and circles == expected
        per_oval.append({"oval": ov.describe(q.curve), "circles": circles, "expected": expected})
    traces = [t.to_dict() for t in oracle_traces(q)]
    n_S = sum(t["circles"] for t in traces)
    agrees = agrees and n_S == sp.n_S
    block = {"n_S": n_S, "per_oval": per_oval, "traces": traces}
    if sp.u > 0 and not q.kind.is_antipodal:
        assignment = [i for i, c in enumerate(sp.oval_zero_counts) for _ in range(c)]
        pres = build_presentation(g, klein.n, klein.a, (4 * g - 4 - sp.u) // 2, sp.u, assignment)
        kd, d = theta_kernel_dim(pres), sl2_exponent(pres)
        block["homology"] = {"case": pres.case, "dim": pres.dim, "theta_kernel_dim": kd, "sl2_exponent": d}
        agrees = agrees and kd == 3 * g - 3 + sp.n_zero + sp.u_half and d == count_sl2(sp.n_zero, sp.u).d
    block["agrees"] = agrees
    return block


# ---------------------------------------------------------------------------
# diagram


_COLOURS = {1: "#2a9d3f", -1: "#c0392b", 0: "#888888"}


def sign_diagram_svg(q, size: int = 360) -> str:
    """RP^1 drawn as a circle (z = 0 at the top, infinity at the bottom), one ring per sheet."""
    c = size / 2
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<circle cx="{c}" cy="{c}" r="{0.38 * size:.2f}" fill="none" stroke="#bbbbbb" stroke-width="1"/>',
    ]

    def point(phi, radius):
        ang = 2 * phi
        return c + radius * math.sin(ang), c - radius * math.cos(ang)

    def arc(phi0, phi1, radius, colour):
        steps = max(4, int(abs(phi1 - phi0) * 60))
        pts = [point(phi0 + (phi1 - phi0) * i / steps, radius) for i in range(steps + 1)]
        d = " ".join(f"{'M' if i == 0 else 'L'}{x:.2f},{y:.2f}" for i, (x, y) in enumerate(pts))
        return f'<path d="{d}" fill="none" stroke="{colour}" stroke-width="4"/>'

    for trace in oracle_traces(q):
        for seg in trace.segments:
            second = seg["t0"] >= math.pi - 1e-12 or trace.label.endswith("-")
            radius = size * (0.42 if second else 0.34)
            lines.append(arc(seg["phi0"], seg["phi1"], radius, _COLOURS[seg["sign"]]))
    for r in q.curve.roots.real_roots:
        x, y = point(math.atan(r.approx) % math.pi, 0.38 * size)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#000000"/>')
    for z in q.zeros:
        if z.is_real:
            phi = math.pi / 2 if z.is_infinite else math.atan(float(z.re)) % math.pi
            x, y = point(phi, 0.38 * size)
            lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="5" fill="none" stroke="#1f4e9c" stroke-width="2"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# command handlers


def cmd_classify(args, cfg) -> dict:
    data = _load_input(args)
    curve = _curve_from_source(data["p"])
    kinds = [data["kind"]] if data.get("kind") else [InvolutionKind.CONJ_F, InvolutionKind.CONJ_SIGMA_F]
    results = []
    for kind in kinds:
        inv = classify_hyperelliptic(curve, kind)
        results.append(dict(inv.to_dict(), method=inv.method))
    return {"schema": SCHEMA, "curve": curve.to_dict(), "involutions": results}


def cmd_analyze(args, cfg) -> dict:
    return analysis_report(_load_input(args), args.oracle, args.rho_mu)


def cmd_oracle(args, cfg) -> dict:
    return analysis_report(_load_input(args), True, args.rho_mu)


def cmd_census(args, cfg) -> dict:
    budget = Budget(
        random=int(args.budget if args.budget is not None else cfg.get("budget", Budget.random)),
        grid_cap=int(cfg.get("grid_cap", Budget.grid_cap)),
    )
    seed = int(args.seed if args.seed is not None else cfg.get("seed", 0))
    return census(int(args.g), budget, seed)


def cmd_formulas(args, cfg) -> dict:
    name = args.formula
    if name == "spectral-genus":
        value = {"value": spectral_genus(args.n, args.g)}
    elif name == "fixed-degree":
        value = {"value": fixed_degree(args.n, args.g)}
    elif name == "fibre-dim":
        value = {"value": fibre_dim(args.group, args.n, args.g)}
    elif name == "count-gl":
        value = count_gl(args.ns, args.gs).to_dict()
    elif name == "count-gl2":
        value = count_gl2(args.nplus, args.u).to_dict()
    elif name == "count-sl2":
        value = count_sl2(args.nzero, args.u).to_dict()
    elif name == "torus-d":
        value = {"d": torus_d(args.m, args.fixed)}
    elif name == "reality":
        value = {"reality": real_or_quaternionic(RealityTypeQuery(args.u, not args.no_fixed_points, args.rho_mu)).value}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(name)
    return dict(value, schema=SCHEMA, formula=name)


def cmd_diagram(args, cfg):
    data = _load_input(args)
    curve = _curve_from_source(data["p"])
    q = _differential(data, curve)
    if args.format == "json":
        return {"schema": SCHEMA, "q": q.to_dict(), "traces": [t.to_dict() for t in oracle_traces(q)]}
    return sign_diagram_svg(q)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realhitchin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="key=value file with defaults (flags win)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def curve_args(p, with_q=True):
        p.add_argument("--p", help="polynomial text, e.g. '(z^2-1)(z^2-4)(z^2-9)'")
        p.add_argument("--input", help="JSON input file")
        p.add_argument("--kind", help="ConjF, ConjSigmaF, AntipodalH or AntipodalSigmaH")
        if with_q:
            p.add_argument("--a1")
            p.add_argument("--a2")
            p.add_argument("--zeros", help="comma separated zeros (genus > 2)")
            p.add_argument("--sign", type=int, choices=(1, -1))
            p.add_argument("--rho-mu", dest="rho_mu", type=int, choices=(1, -1))
        p.add_argument("--out", help="directory to write the report into")

    p = sub.add_parser("classify", help="Klein invariants of the real structures")
    curve_args(p, with_q=False)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("analyze", help="spectral invariants and component counts")
    curve_args(p)
    p.add_argument("--oracle", action="store_true", help="add monodromy and homology cross-checks")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("oracle", help="analyze with all oracle cross-checks")
    curve_args(p)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("census", help="realizability search for invariant tuples")
    p.add_argument("--g", type=int, default=2)
    p.add_argument("--budget", type=int, help="number of random configurations")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_census)

    p = sub.add_parser("formulas", help="evaluate a closed formula")
    p.add_argument(
        "formula",
        choices=["spectral-genus", "fixed-degree", "fibre-dim", "count-gl", "count-gl2", "count-sl2", "torus-d", "reality"],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--group", default="GL")
    p.add_argument("--ns", type=int)
    p.add_argument("--gs", type=int)
    p.add_argument("--nplus", type=int)
    p.add_argument("--nzero", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--fixed", type=int)
    p.add_argument("--rho-mu", dest="rho_mu", type=int, choices=(1, -1))
    p.add_argument("--no-fixed-points", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_formulas)

    p = sub.add_parser("diagram", help="sign diagram of q over the fixed circles")
    curve_args(p)
    p.add_argument("--format", choices=("svg", "json"), default="svg")
    p.set_defaults(handler=cmd_diagram)
    return parser


def _emit(result, args) -> None:
    text = result if isinstance(result, str) else json.dumps(result, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        ext = "svg" if isinstance(result, str) else "json"
        target = Path(out)
        target.mkdir(parents=True, exist_ok=True)
        (target / f"{args.command}.{ext}").write_text(text)
    else:
        sys.stdout.write(text)


def _fail(exc: BaseException, code: int) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n")
    return code


_VALUE_FLAGS = ("--p", "--a1", "--a2", "--zeros")


def _join_negative_values(argv: list) -> list:
    """Let ``--a2 -3/2`` through: argparse would read ``-3/2`` as an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        cfg = read_config(args.config)
        if args.command == "formulas":
            _check_formula_args(args)
        result = args.handler(args, cfg)
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        return _fail(exc, EXIT_INVALID)
    _emit(result, args)
    if isinstance(result, dict) and result.get("mismatch"):
        return EXIT_MISMATCH
    return EXIT_OK


_FORMULA_ARGS = {
    "spectral-genus": ("n", "g"),
    "fixed-degree": ("n", "g"),
    "fibre-dim": ("n", "g"),
    "count-gl": ("ns", "gs"),
    "count-gl2": ("nplus", "u"),
    "count-sl2": ("nzero", "u"),
    "torus-d": ("m", "fixed"),
    "reality": ("u",),
}


def _check_formula_args(args) -> None:
    missing = [f"--{a}" for a in _FORMULA_ARGS[args.formula] if getattr(args, a) is None]
    if missing:
        raise UsageError(f"{args.formula} needs {' '.join(missing)}")


def main() -> None:
    sys.exit(run())
