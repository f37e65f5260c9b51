"""Command-line interface: ``tordep <command> [options]``.

Exit codes: 0 success, 1 numeric verification failed, 2 bad input (curve
file, function list, options), 3 singular curve, 4 search budget exhausted
for at least one point.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .betti import DEFAULT_TOLERANCE, periods, torsion_betti_row, verify_relation_logs
from .effective import (
    ParseError,
    dependent_torsion_search,
    exponent_box,
    height_budget,
    parse_functions,
    resolve_eps,
)
from .effective.search import decimal_str
from .elliptic import EllipticCurve, SingularCurveError, torsion_catalog
from .multdep import DEFAULT_BUDGET

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_SINGULAR = 3
EXIT_INCONCLUSIVE = 4


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    precision_bits: int = 128
    n_max: int = 20
    eps: Fraction | None = None
    eta_override: Fraction | None = None
    search_budget: int = DEFAULT_BUDGET
    tolerance: float = DEFAULT_TOLERANCE
    output_path: str | None = None

    def __post_init__(self):
        for name in ("precision_bits", "n_max", "search_budget"):
            if getattr(self, name) <= 0:
                raise InputError(f"{name} must be positive")
        if self.tolerance <= 0:
            raise InputError("tolerance must be positive")


def default_precision() -> int:
    env = os.environ.get("TORDEP_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"TORDEP_PRECISION is not an integer: {env!r}") from None
    return 128


# -- inputs --


def load_curve(path: str) -> EllipticCurve:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read curve file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"curve file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("curve file must hold a JSON object")
    try:
        return EllipticCurve.from_json(data)
    except SingularCurveError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad curve description: {exc}") from None


def load_functions(arg: str | None):
    if arg is None:
        raise InputError("--functions is required")
    text = arg
    if arg.startswith("@"):
        try:
            text = Path(arg[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read function file: {exc}") from None
        # one function per line or comma-separated, '#' starts a comment
        lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
        text = ",".join(ln for ln in lines if ln.strip())
    return parse_functions(text)


def _eps(cfg: RunConfig) -> Fraction:
    if cfg.eps is None:
        raise InputError("--eps is required for this command")
    return cfg.eps


def emit(payload: dict, cfg: RunConfig) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands --


def cmd_torsion(args, cfg: RunConfig) -> int:
    E = load_curve(args.curve)
    cat = torsion_catalog(E, cfg.n_max) if cfg.n_max >= 2 else []
    emit({"curve": E.to_json(), "N_max": cfg.n_max, "points": [T.to_json() for T in cat]}, cfg)
    return EXIT_OK


def cmd_depsearch(args, cfg: RunConfig) -> int:
    E = load_curve(args.curve)
    fs = load_functions(args.functions)
    report = dependent_torsion_search(E, fs, _eps(cfg), cfg.n_max, budget=cfg.search_budget)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    emit(report.to_json(), cfg)
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK


def cmd_bounds(args, cfg: RunConfig) -> int:
    E = load_curve(args.curve)
    fs = load_functions(args.functions)
    eps = _eps(cfg)
    hx, hy, per, B = height_budget(E, fs)
    M = exponent_box(len(fs), B, eps)
    emit(
        {
            "curve": E.to_json(),
            "functions": [f.text for f in fs],
            "hx": decimal_str(hx),
            "hy": decimal_str(hy),
            "B_i": [decimal_str(b) for b in per],
            "B": decimal_str(B),
            "eps": decimal_str(eps),
            "M": M,
        },
        cfg,
    )
    return EXIT_OK


def betti_point_rows(E: EllipticCurve, catalog, precision: int, tolerance: float) -> list[dict]:
    lattice = periods(E, precision=precision)
    rows = []
    for T in catalog:
        r = torsion_betti_row(E, lattice, T.point, T.order)
        ok = r["frac_ap"] < tolerance and r["frac_aq"] < tolerance
        rows.append(
            {
                "point": T.point.to_json(),
                "order": T.order,
                "p": float(r["p"]),
                "q": float(r["q"]),
                "frac_ap": float(r["frac_ap"]),
                "frac_aq": float(r["frac_aq"]),
                "pass": bool(ok),
            }
        )
    return rows


def cmd_betti_verify(args, cfg: RunConfig) -> int:
    E = load_curve(args.curve)
    cat = torsion_catalog(E, cfg.n_max) if cfg.n_max >= 2 else []
    prec = cfg.precision_bits
    rows = betti_point_rows(E, cat, prec, cfg.tolerance)
    if not all(r["pass"] for r in rows):
        # one automatic doubling before a failure is reported
        prec *= 2
        rows = betti_point_rows(E, cat, prec, cfg.tolerance)
    relations = []
    if args.functions is not None:
        fs = load_functions(args.functions)
        report = dependent_torsion_search(E, fs, _eps(cfg), cfg.n_max, budget=cfg.search_budget)
        for h in report.hits:
            c = h.certificate
            scaled = [c.zeta_order * a for a in c.vector]
            res = verify_relation_logs(list(h.values), scaled, cfg.tolerance, cfg.precision_bits)
            for e in res["embeddings"]:
                relations.append(
                    {
                        "point": h.point.point.to_json(),
                        "vector": list(c.vector),
                        "zeta_order": c.zeta_order,
                        "embedding_index": e["embedding_index"],
                        "r_residual": e["r_residual"],
                        "s_sum": e["s_sum"],
                        "g": e["g"],
                        "pass": e["pass"],
                    }
                )
    ok = all(r["pass"] for r in rows) and all(r["pass"] for r in relations)
    emit(
        {
            "curve": E.to_json(),
            "N_max": cfg.n_max,
            "precision": prec,
            "tolerance": cfg.tolerance,
            "points": rows,
            "relations": relations,
            "pass": ok,
        },
        cfg,
    )
    return EXIT_OK if ok else EXIT_VERIFY


def format_report(data: dict) -> str:
    """Human-readable summary of a stored depsearch report."""
    out = []
    fs = ", ".join(data.get("functions", []))
    out.append(f"functions: {fs}")
    out.append(f"B = {data.get('B')}   eps = {data.get('eps')}   M = {data.get('M')}   N_max = {data.get('N_max')}")
    for w in data.get("warnings", []):
        out.append(f"warning: {w}")
    hits = data.get("hits", [])
    out.append(f"hits ({len(hits)}):")
    for h in hits:
        c = h["certificate"]
        out.append(f"  order {h['order']:>3}  {_point_str(h['point'])}  vector {c['vector']}  m = {c['zeta_order']}")
    exc = data.get("excluded", [])
    out.append(f"excluded ({len(exc)}):")
    for e in exc:
        reasons = e.get("reasons") or [e["reason"]]
        why = ", ".join(f"f{r['f_index']} {r['kind']}" for r in reasons)
        out.append(f"  order {e['order']:>3}  {_point_str(e['point'])}  {why}")
    inc = data.get("inconclusive", [])
    if inc:
        out.append(f"inconclusive ({len(inc)}):")
        for e in inc:
            out.append(f"  order {e['order']:>3}  {_point_str(e['point'])}  bound {e['certificate']['bound']}")
    return "\n".join(out) + "\n"


def _point_str(p) -> str:
    if p == "infinity":
        return "O"

    def num(v):
        if isinstance(v, str):
            return v
        re, im = v.get("center", ["?", "?"])
        sign = "-" if str(im).startswith("-") else "+"
        return f"~{_short(re)}{sign}{_short(str(im).lstrip('-'))}i"

    return f"({num(p['x'])}, {num(p['y'])})"


def _short(v) -> str:
    try:
        return f"{float(Fraction(v)):.6g}"
    except (TypeError, ValueError):
        return str(v)


def cmd_report(args, cfg: RunConfig) -> int:
    try:
        data = json.loads(Path(args.report).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read report: {exc}") from None
    text = format_report(data)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser --


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal or fraction: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tordep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, functions=False, eps=False):
        sp.add_argument("--curve", required=True, help="curve JSON file")
        sp.add_argument("--nmax", type=int, default=20, help="largest torsion order (default 20)")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--precision", type=int, default=None, help="working precision in bits")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max exponent vectors per search")
        if functions:
            sp.add_argument("--functions", help="comma-separated functions of X, Y, or @file")
        if eps:
            sp.add_argument("--eps", help="Bogomolov constant (decimal, fraction or preset name)")
            sp.add_argument("--eta", type=_fraction, default=None, help="override for the Dobrowolski constant")
        sp.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)

    common(sub.add_parser("torsion", help="enumerate torsion points"))
    common(sub.add_parser("depsearch", help="search for dependent torsion values"), True, True)
    common(sub.add_parser("bounds", help="certified height budget and exponent box"), True, True)
    common(sub.add_parser("betti-verify", help="numeric Betti-coordinate check"), True, True)
    rp = sub.add_parser("report", help="pretty-print a stored depsearch report")
    rp.add_argument("report", help="report JSON file")
    rp.add_argument("--out")
    return p


def _config(args) -> RunConfig:
    precision = getattr(args, "precision", None) or default_precision()
    eps = None
    if getattr(args, "eps", None) is not None:
        try:
            eps = resolve_eps(args.eps)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad --eps: {exc}") from None
    return RunConfig(
        precision_bits=precision,
        n_max=getattr(args, "nmax", 20),
        eps=eps,
        eta_override=getattr(args, "eta", None),
        search_budget=getattr(args, "budget", DEFAULT_BUDGET),
        tolerance=getattr(args, "tolerance", DEFAULT_TOLERANCE),
        output_path=args.out,
    )


COMMANDS = {
    "torsion": cmd_torsion,
    "depsearch": cmd_depsearch,
    "bounds": cmd_bounds,
    "betti-verify": cmd_betti_verify,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except SingularCurveError as exc:
        print(f"error: singular curve: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
