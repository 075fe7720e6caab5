"""Command-line interface.

Examples
--------
::

    volterra-spectra classify banach --symbol "6z^2 - z" --alpha 3 --p 2
    volterra-spectra resolvent --symbol z --lambda 2-i --h "1 + z^3"
    volterra-spectra matrix --symbol "z^2" --size 8 --format csv
    volterra-spectra verify TGammaBound --n 2 --gammas "0,0.3,0.6+0.2i"

Shared flags (``--degree``, ``--out``, ``--format``, ``--seed``,
``--config``) go after the subcommand.  A config file is a flat list of
``key = value`` lines using the long flag names; flags on the command line
win.  ``VOLTERRA_OUT_DIR`` redirects written files into that directory.

Exit status: 0 when everything passed, 1 on a failed case or a result
that could not be produced, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .harness import KINDS, SPACES, ExperimentSpec, emit_report, run_experiment
from .operators import (
    InvalidSymbolError,
    ResolventUndefinedError,
    apply_mult,
    apply_volterra,
    finite_section,
    resolvent_apply,
    s_operator_apply,
    t_gamma_apply,
)
from .parsing import SymbolSyntaxError, format_symbol, parse_complex, parse_polynomial, parse_symbol
from .series import TruncatedSeries, exp_series
from .spectra import (
    BanachSpace,
    EntireFunctions,
    HormanderAlgebra,
    OperatorNotBoundedError,
    classify,
    classify_boundedness_Hv,
)
from .weights import (
    GrowthCondition,
    InsufficientDataError,
    PowerWeight,
    membership_A0p,
    membership_Ap,
    order_type,
)

OUT_DIR_ENV = "VOLTERRA_OUT_DIR"
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


# -- argument types ---------------------------------------------------------------

def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except SymbolSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _list_arg(conv):
    def parse(text: str) -> tuple:
        items = [t for t in text.replace(";", ",").split(",") if t.strip()]
        if not items:
            raise argparse.ArgumentTypeError("expected a nonempty comma-separated list")
        try:
            return tuple(conv(t) for t in items)
        except (ValueError, SymbolSyntaxError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    return parse


def _bool_value(text) -> bool:
    if isinstance(text, bool):
        return text
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


# -- parser -------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("shared options")
    g.add_argument("--degree", type=int, default=64, help="working truncation degree N (default 64)")
    g.add_argument("--out", help="write output to this file instead of stdout")
    g.add_argument("--format", choices=FORMATS, default="json")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--config", help="flat key = value file mirroring the long flags")
    return p


def _weight_flags(p: argparse.ArgumentParser):
    p.add_argument("--alpha", type=float, default=1.0, help="weight exp(-alpha r^p)")
    p.add_argument("--p", type=float, default=None, help="weight exponent (default: deg g)")
    p.add_argument("--a", type=float, default=2.0, help="growth p(r) = scale r^a")
    p.add_argument("--scale", type=float, default=1.0)


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(
        prog="volterra-spectra",
        description="Spectra of Volterra operators on weighted spaces of entire functions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    subs = {}

    p = sub.add_parser("classify", parents=[common], help="exact spectrum of V_g on a space")
    p.add_argument("target", choices=("banach", "hormander", "entire"))
    p.add_argument("--symbol", required=True)
    _weight_flags(p)
    p.add_argument("--vanishing", action="store_true", help="banach: use H0_v instead of H_v")
    p.add_argument("--zero", action="store_true", help="hormander: use A0_p instead of A_p")
    subs["classify"] = p

    p = sub.add_parser("resolvent", parents=[common], help="solve f - V_g f / lambda = h")
    p.add_argument("--symbol", required=True)
    p.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    p.add_argument("--h", default="1", help="right-hand side polynomial (default 1)")
    subs["resolvent"] = p

    p = sub.add_parser("apply", parents=[common], help="apply one operator to a polynomial")
    p.add_argument("operator", choices=("volterra", "mult", "s", "tgamma"))
    p.add_argument("--f", required=True, help="input polynomial")
    p.add_argument("--symbol", default="z", help="symbol g (volterra, s) or multiplier h (mult)")
    p.add_argument("--lambda", dest="lam", type=_complex_arg, default=1.0)
    p.add_argument("--gamma", type=_complex_arg, default=0.0)
    p.add_argument("--n", type=int, default=1)
    subs["apply"] = p

    p = sub.add_parser("matrix", parents=[common], help="finite section of V_g")
    p.add_argument("--symbol", required=True)
    p.add_argument("--size", type=int, default=8)
    subs["matrix"] = p

    p = sub.add_parser("ordertype", parents=[common], help="order and type from Taylor coefficients")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--f", help="polynomial")
    src.add_argument("--exp", help="use exp(q) for this polynomial q")
    src.add_argument("--series", help='JSON file {"coeffs": [[re, im], ...]}')
    p.add_argument("--window", type=_list_arg(int), default=None, help="lo,hi coefficient indices")
    p.add_argument("--a", type=float, default=None, help="also report A_p / A0_p membership for r^a")
    p.add_argument("--scale", type=float, default=1.0)
    subs["ordertype"] = p

    p = sub.add_parser("verify", parents=[common], help="run an experiment and report pass/fail")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--symbol", default=None, help='symbol, or "random" (ResolventIdentity)')
    _weight_flags(p)
    p.add_argument("--space", choices=SPACES, default=None)
    p.add_argument("--lambdas", type=_list_arg(parse_complex), default=None)
    p.add_argument("--gammas", type=_list_arg(parse_complex), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--radii", type=_list_arg(float), default=None)
    p.add_argument("--sizes", type=_list_arg(int), default=None)
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--n-points", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--perturbation", type=float, default=None)
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    subs["verify"] = p
    return parser, subs


# -- config --------------------------------------------------------------------

def read_config(path: str) -> dict:
    """Parse a flat ``key = value`` file; section headers are not needed."""
    text = Path(path).read_text()
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"bad config file {path}: {exc}") from None
    return {k.replace("-", "_"): v for k, v in cp["config"].items()}


def apply_config(sub: argparse.ArgumentParser, cfg: dict):
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in cfg.items():
        if key == "config":
            continue
        act = actions.get(key)
        if act is None:
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(act, argparse._StoreTrueAction):
            value = _bool_value(value)
        defaults[key] = value
    sub.set_defaults(**defaults)


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser, subs = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        cmd = next((a for a in argv if a in subs), None)
        if cmd is not None:
            # string defaults go through each argument's type converter
            apply_config(subs[cmd], read_config(known.config))
    return parser.parse_args(argv)


# -- output --------------------------------------------------------------------

def _cplx(c) -> list:
    c = complex(c)
    return [c.real, c.imag]


def series_payload(f: TruncatedSeries) -> dict:
    doc = f.to_json()
    doc["exact_degree"] = f.exact_prefix
    return doc


def render(doc, fmt: str) -> bytes:
    """Render a plain result document (dict or list of row dicts)."""
    if fmt == "json":
        return (json.dumps(doc, indent=2) + "\n").encode()
    rows = doc if isinstance(doc, list) else [doc]
    if fmt == "csv":
        buf = io.StringIO()
        keys = list(dict.fromkeys(k for r in rows for k in r))
        w = csv.DictWriter(buf, keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue().encode()
    lines = []
    for r in rows:
        lines.extend(f"{k}: {v}" for k, v in r.items())
    return ("\n".join(lines) + "\n").encode()


def render_series(f: TruncatedSeries, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(series_payload(f)) + "\n").encode()
    rows = [{"k": k, "re": c.real, "im": c.imag} for k, c in enumerate(f.coeffs)]
    if fmt == "csv":
        return render(rows, fmt)
    return ("".join(f"{r['k']:4d}  {r['re']!r:>24}  {r['im']!r:>24}\n" for r in rows)).encode()


def output_path(out: str | None, default_name: str) -> Path | None:
    env = os.environ.get(OUT_DIR_ENV)
    if env:
        return Path(env) / (Path(out).name if out else default_name)
    return Path(out) if out else None


def write_output(data: bytes, args, default_name: str):
    path = output_path(args.out, default_name)
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    print(f"wrote {path}", file=sys.stderr)


# -- commands ------------------------------------------------------------------

def cmd_classify(args) -> tuple[dict, int]:
    g = parse_symbol(args.symbol)
    if args.target == "banach":
        p = float(g.degree) if args.p is None else args.p
        w = PowerWeight(args.alpha, p)
        space = BanachSpace(w, args.vanishing)
        bv = classify_boundedness_Hv(g, w)
        doc = {"symbol": format_symbol(g), "alpha": args.alpha, "p": p, "bounded": bv.bounded, "compact": bv.compact}
        if not bv.bounded:
            doc["error"] = "operator not bounded on this space"
            return doc, 1
    elif args.target == "hormander":
        space = HormanderAlgebra(GrowthCondition(args.scale, args.a), args.zero)
        doc = {"symbol": format_symbol(g), "a": args.a, "scale": args.scale}
    else:
        space = EntireFunctions()
        doc = {"symbol": format_symbol(g)}
    doc.update(classify(g, space).to_json())
    return doc, 0


def cmd_resolvent(args) -> tuple[TruncatedSeries, int]:
    g = parse_symbol(args.symbol)
    h = parse_polynomial(args.h)
    return resolvent_apply(g, args.lam, h, args.degree), 0


def cmd_apply(args) -> tuple[TruncatedSeries, int]:
    f = parse_polynomial(args.f)
    if args.operator == "mult":
        return apply_mult(parse_polynomial(args.symbol), f, args.degree), 0
    if args.operator == "tgamma":
        return t_gamma_apply(args.n, args.gamma, f, args.degree), 0
    g = parse_symbol(args.symbol)
    if args.operator == "volterra":
        return apply_volterra(g, f, args.degree), 0
    return s_operator_apply(g, args.lam, f, args.degree), 0


def cmd_matrix(args) -> bytes:
    m = finite_section(parse_symbol(args.symbol), args.size)
    if args.format == "csv":
        return m.to_csv().encode()
    if args.format == "json":
        return (m.to_json() + "\n").encode()
    return (np.array2string(m.entries, max_line_width=160, precision=4) + "\n").encode()


def cmd_ordertype(args) -> tuple[dict, int]:
    if args.series:
        f = TruncatedSeries.from_json(json.loads(Path(args.series).read_text()))
    elif args.exp:
        f = exp_series(parse_polynomial(args.exp), args.degree)
    else:
        f = parse_polynomial(args.f)
    window = None
    if args.window is not None:
        if len(args.window) != 2:
            raise UsageError("--window needs two indices lo,hi")
        window = tuple(args.window)
    est = order_type(f, window)
    doc = {
        "order": est.order,
        "type": None if est.type_infinite else est.type_val,
        "type_infinite": est.type_infinite,
        "window": list(est.window),
    }
    if args.a is not None:
        gc = GrowthCondition(args.scale, args.a)
        doc["Ap"] = membership_Ap(f, gc, window).value
        doc["A0p"] = membership_A0p(f, gc, window).value
    return doc, 0


_VERIFY_FIELDS = (
    "symbol", "alpha", "p", "a", "scale", "space", "lambdas", "gammas", "n",
    "radii", "sizes", "cases", "tolerance", "perturbation", "n_points",
)


def cmd_verify(args):
    kw = {k: getattr(args, k) for k in _VERIFY_FIELDS if getattr(args, k) is not None}
    spec = ExperimentSpec(kind=args.kind, degree=args.degree, seed=args.seed, **kw)
    report = run_experiment(spec)
    data = emit_report(report, args.format, include_timing=args.timing)
    return data, 0 if report.ok else 1


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(f"volterra-spectra: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    except OSError as exc:
        print(f"volterra-spectra: error: {exc}", file=sys.stderr)
        return 2

    ext = args.format if args.format != "text" else "txt"
    name = f"{args.command}.{ext}"
    try:
        if args.command == "verify":
            data, code = cmd_verify(args)
            name = f"verify_{args.kind}.{ext}"
        elif args.command == "matrix":
            data, code = cmd_matrix(args), 0
        elif args.command in ("resolvent", "apply"):
            f, code = (cmd_resolvent if args.command == "resolvent" else cmd_apply)(args)
            data = render_series(f, args.format)
        else:
            doc, code = (cmd_classify if args.command == "classify" else cmd_ordertype)(args)
            data = render(doc, args.format)
    except (UsageError, SymbolSyntaxError, InvalidSymbolError, ResolventUndefinedError) as exc:
        print(f"volterra-spectra: error: {exc}", file=sys.stderr)
        return 2
    except (OperatorNotBoundedError, InsufficientDataError, ValueError, OSError) as exc:
        print(f"volterra-spectra: error: {exc}", file=sys.stderr)
        return 1
    write_output(data, args, name)
    return code


if __name__ == "__main__":
    sys.exit(main())
