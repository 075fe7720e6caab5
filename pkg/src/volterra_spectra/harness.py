"""Experiment runner and report emission.

Each experiment kind sweeps a parameter grid through one of the library's
checks and records a pass/fail line per case.  Pass/fail depends only on
the tolerances carried by :class:`ExperimentSpec`; ``perturbation`` injects
a deliberate error so every kind has a known-fail fixture.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import __version__
from .operators import (
    PolynomialSymbol,
    apply_volterra,
    finite_section,
    resolvent_apply,
    t_gamma_apply,
)
from .parsing import format_symbol, parse_symbol
from .series import TruncatedSeries, exp_series
from .spectra import (
    BanachSpace,
    EntireFunctions,
    HormanderAlgebra,
    OperatorNotBoundedError,
    Shape,
    SpectrumResult,
    classify,
    exp_membership,
    spectrum_cross_check,
)
from .weights import GrowthCondition, PowerWeight, caratheodory_check, weighted_norm

KINDS = (
    "ResolventIdentity",
    "TGammaBound",
    "MembershipDivergence",
    "Caratheodory",
    "NilpotentSections",
    "SpectrumCrossCheck",
)

DEFAULT_TOLERANCE = {
    "ResolventIdentity": 1e-10,
    "TGammaBound": 0.05,
    "MembershipDivergence": 0.02,
    "Caratheodory": 1e-9,
    "NilpotentSections": 0.0,
    "SpectrumCrossCheck": 0.0,
}

SPACES = ("Hv", "H0v", "Ap", "A0p", "entire")


@dataclass
class ExperimentSpec:
    """Parameters of one experiment run.

    ``symbol`` is a polynomial string, or ``"random"`` for a fresh symbol of
    degree <= 3 per case.  Unused fields are ignored by a given kind.
    """

    kind: str
    symbol: str = "z"
    alpha: float = 1.0
    p: float | None = None
    a: float = 2.0
    scale: float = 1.0
    space: str = "Hv"
    lambdas: tuple = (1, -1, 1j, 2 - 1j, 0.1)
    gammas: tuple = (0, 0.3, 0.6 + 0.2j)
    n: int = 2
    radii: tuple = ()
    sizes: tuple = (8, 32, 128)
    degree: int = 64
    cases: int = 20
    seed: int = 0
    tolerance: float | None = None
    perturbation: float = 0.0
    n_points: int = 1000

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.space not in SPACES:
            raise ValueError(f"unknown space {self.space!r}")
        self.lambdas = tuple(complex(x) for x in self.lambdas)
        self.gammas = tuple(complex(x) for x in self.gammas)
        self.radii = tuple(float(x) for x in self.radii)
        self.sizes = tuple(int(x) for x in self.sizes)
        if self.tolerance is None:
            self.tolerance = DEFAULT_TOLERANCE[self.kind]
        grids = {"ResolventIdentity": self.lambdas, "TGammaBound": self.gammas, "NilpotentSections": self.sizes}
        if self.kind in grids and not grids[self.kind]:
            raise ValueError("parameter grid must be nonempty")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def echo(self) -> dict:
        return {f.name: _jsonable(getattr(self, f.name)) for f in fields(self)}


@dataclass
class CaseRecord:
    index: int
    status: str
    inputs: dict
    measured: dict
    note: str = ""


@dataclass
class Report:
    experiment: dict
    cases: list = field(default_factory=list)
    tool_version: str = __version__
    wall_time: float = 0.0

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.cases:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


# -- random inputs --------------------------------------------------------------

def random_polynomial(rng: np.random.Generator, max_degree: int, min_degree: int = 0) -> TruncatedSeries:
    """Coefficients uniform on the complex unit square ``[0,1) + i[0,1)``."""
    d = int(rng.integers(min_degree, max_degree + 1))
    return TruncatedSeries(rng.random(d + 1) + 1j * rng.random(d + 1))


def random_symbol(rng: np.random.Generator, max_degree: int = 3) -> PolynomialSymbol:
    d = int(rng.integers(1, max_degree + 1))
    return PolynomialSymbol(tuple(rng.random(d) + 1j * rng.random(d)))


def t_gamma_battery(rng: np.random.Generator, count: int, n: int, alpha: float) -> list:
    """Test functions in ``H^inf_v``: monomials, random polynomials and
    truncated exponentials ``exp(c z^n)`` with ``|c| < alpha``."""
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            out.append(TruncatedSeries.monomial(i % 11))
        elif kind == 1:
            out.append(random_polynomial(rng, 20))
        else:
            c = alpha * 0.9 * rng.random() * np.exp(2j * np.pi * rng.random())
            out.append(exp_series(TruncatedSeries.monomial(n, c), 40))
    return out


# -- individual checks ------------------------------------------------------------

def resolvent_residual(g: PolynomialSymbol, lam: complex, h: TruncatedSeries, degree: int, perturbation: float = 0.0):
    """Max over degrees ``0..degree`` of ``|f - V_g f / lam - h|`` for ``f = R h``."""
    f = resolvent_apply(g, lam, h, degree)
    if perturbation:
        f = f + perturbation
    lhs = f - apply_volterra(g, f, degree) * (1.0 / lam)
    return float(np.max(np.abs(lhs.padded(degree) - h.padded(degree)))), f


def _run_resolvent(spec: ExperimentSpec, rng):
    for i in range(spec.cases):
        g = random_symbol(rng) if spec.symbol == "random" else parse_symbol(spec.symbol)
        h = random_polynomial(rng, 20)
        for lam in spec.lambdas:
            res, f = resolvent_residual(g, lam, h, spec.degree, spec.perturbation)
            yield (
                res < spec.tolerance,
                {"symbol": format_symbol(g), "lambda": lam, "h_degree": h.trunc_degree},
                {"residual": res, "max_coeff": float(np.max(np.abs(f.coeffs)))},
                "",
            )


def _run_tgamma(spec: ExperimentSpec, rng):
    n, alpha = spec.n, spec.alpha
    w = PowerWeight(alpha, n)
    battery = t_gamma_battery(rng, spec.cases, n, alpha)
    norms = [weighted_norm(h, w).value for h in battery]
    for gamma in spec.gammas:
        inputs = {"n": n, "alpha": alpha, "gamma": gamma}
        if abs(gamma) >= alpha:
            yield False, inputs, {}, "hypothesis |gamma| < alpha violated"
            continue
        bound = 1.0 / (n * (alpha - abs(gamma)))
        worst, worst_i = 0.0, -1
        for i, (h, hn) in enumerate(zip(battery, norms)):
            ratio = weighted_norm(t_gamma_apply(n, gamma, h, spec.degree), w).value / hn
            if ratio > worst:
                worst, worst_i = ratio, i
        worst *= 1.0 + spec.perturbation
        limit = bound * (1.0 + spec.tolerance)
        yield worst <= limit, inputs, {"max_ratio": worst, "bound": bound, "worst_case": worst_i}, ""


def _run_membership(spec: ExperimentSpec, rng):
    g = parse_symbol(spec.symbol)
    n = g.degree
    p = float(n if spec.p is None else spec.p)
    w = PowerWeight(spec.alpha, p)
    space = BanachSpace(w)
    radius = abs(g.leading) / spec.alpha
    monomial = not any(g.coeffs[:-1])
    degree = max(spec.degree, 128 * n)
    for m in spec.radii or (0.5, 0.9, 1.0, 1.1, 2.0):
        lam = m * radius * np.exp(0.7j)
        f = exp_series(g.series() * (1.0 / lam), degree)
        est = weighted_norm(f, w)
        exact = exp_membership(g, lam * (1.0 + spec.perturbation), space)
        ok = est.bounded == exact
        note = ""
        if monomial and math.isclose(m, 1.0):
            ok = ok and abs(est.value - 1.0) <= spec.tolerance
            note = "boundary"
        yield (
            ok,
            {"symbol": format_symbol(g), "alpha": spec.alpha, "p": p, "lambda": complex(lam), "radius_factor": m},
            {"verdict": est.verdict.value, "norm": est.value, "attained_r": est.attained_r, "exact_member": exact},
            note,
        )


def _run_caratheodory(spec: ExperimentSpec, rng):
    radii = spec.radii or (0.5, 1.0, 2.0, 5.0)
    for i in range(spec.cases):
        h = random_polynomial(rng, 6)
        for r in radii:
            chk = caratheodory_check(h, r, tol=spec.tolerance)
            lhs = chk.lhs + spec.perturbation
            yield (
                lhs <= chk.rhs + spec.tolerance,
                {"case": i, "degree": h.trunc_degree, "r": r},
                {"lhs": lhs, "rhs": chk.rhs},
                "",
            )


def _run_sections(spec: ExperimentSpec, rng):
    g = parse_symbol(spec.symbol)
    for size in spec.sizes:
        a = finite_section(g, size).entries.copy()
        if spec.perturbation:
            a[np.diag_indices(size)] += spec.perturbation
        expected = np.zeros_like(a)
        for m, b in enumerate(g.coeffs, start=1):
            j = np.arange(max(size - m, 0))
            expected[j + m, j] = m * b / (j + m)
        strict = not np.any(np.triu(a))
        nil = not np.any(np.linalg.matrix_power(a, size))
        eig = np.diag(a)
        yield (
            strict and nil and not np.any(eig) and np.array_equal(a, expected),
            {"symbol": format_symbol(g), "size": size},
            {"strictly_lower": strict, "power_is_zero": nil, "max_abs_eigenvalue": float(np.max(np.abs(eig)))},
            "",
        )


def make_space(spec: ExperimentSpec, g: PolynomialSymbol):
    if spec.space in ("Hv", "H0v"):
        p = float(g.degree if spec.p is None else spec.p)
        return BanachSpace(PowerWeight(spec.alpha, p), spec.space == "H0v")
    if spec.space in ("Ap", "A0p"):
        return HormanderAlgebra(GrowthCondition(spec.scale, spec.a), spec.space == "A0p")
    return EntireFunctions()


def perturb_result(res: SpectrumResult, scale: float, delta: float) -> SpectrumResult:
    if not delta:
        return res
    if res.shape is Shape.DISK:
        radius = res.radius * (1 + delta)
    elif res.shape is Shape.ZERO:
        radius = delta * scale
    else:
        radius = scale / delta
    return SpectrumResult(Shape.DISK, res.space, radius, "perturbed")


def _run_crosscheck(spec: ExperimentSpec, rng):
    g = parse_symbol(spec.symbol)
    space = make_space(spec, g)
    inputs = {"symbol": format_symbol(g), "space": space.tag}
    try:
        res = classify(g, space)
    except OperatorNotBoundedError as exc:
        yield None, inputs, {}, str(exc)
        return
    scale = res.radius if res.shape is Shape.DISK else 1.0
    res = perturb_result(res, scale, spec.perturbation)
    rep = spectrum_cross_check(res, g, space, spec.n_points)
    yield (
        rep.passed,
        inputs,
        {"shape": res.shape.value, "radius": res.radius, "points": rep.n_points, "mismatches": len(rep.mismatches)},
        res.witness,
    )


_RUNNERS = {
    "ResolventIdentity": _run_resolvent,
    "TGammaBound": _run_tgamma,
    "MembershipDivergence": _run_membership,
    "Caratheodory": _run_caratheodory,
    "NilpotentSections": _run_sections,
    "SpectrumCrossCheck": _run_crosscheck,
}


def run_experiment(spec: ExperimentSpec) -> Report:
    """Run every case of ``spec``; output order follows case index."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(spec.seed)
    report = Report(spec.echo())
    for i, (ok, inputs, measured, note) in enumerate(_RUNNERS[spec.kind](spec, rng)):
        status = "skip" if ok is None else ("pass" if ok else "fail")
        report.cases.append(CaseRecord(i, status, _jsonable(inputs), _jsonable(measured), note))
    report.wall_time = time.perf_counter() - t0
    return report


# -- emission ------------------------------------------------------------------

FORMATS = ("json", "csv", "text")


def report_document(r: Report, include_timing: bool = False) -> dict:
    doc = {
        "tool": "volterra_spectra",
        "tool_version": r.tool_version,
        "experiment": r.experiment,
        "summary": r.summary,
        "cases": [asdict(c) for c in r.cases],
    }
    if include_timing:
        doc["wall_time"] = r.wall_time
    return doc


def emit_report(r: Report, fmt: str = "json", include_timing: bool = False) -> bytes:
    """Serialise a report.

    Wall time is left out unless ``include_timing`` is set, so a fixed
    spec and seed give byte-identical output.
    """
    if fmt == "json":
        return (json.dumps(report_document(r, include_timing), indent=2) + "\n").encode()
    if fmt == "csv":
        return _emit_csv(r).encode()
    if fmt == "text":
        return _emit_text(r, include_timing).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _flat(prefix: str, d: dict) -> dict:
    return {f"{prefix}.{k}": (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in d.items()}


def _emit_csv(r: Report) -> str:
    rows = [{"index": c.index, "status": c.status, "note": c.note, **_flat("in", c.inputs), **_flat("out", c.measured)} for c in r.cases]
    extra = sorted({k for row in rows for k in row} - {"index", "status", "note"})
    buf = io.StringIO()
    w = csv.DictWriter(buf, ["index", "status", "note"] + extra, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _emit_text(r: Report, include_timing: bool) -> str:
    lines = [f"{r.experiment['kind']} (volterra_spectra {r.tool_version})"]
    for c in r.cases:
        vals = ", ".join(f"{k}={v}" for k, v in c.measured.items())
        note = f"  [{c.note}]" if c.note else ""
        lines.append(f"  case {c.index:4d} {c.status.upper():4s} {vals}{note}")
    s = r.summary
    lines.append(f"summary: pass={s['pass']} fail={s['fail']} skip={s['skip']}")
    if include_timing:
        lines.append(f"wall time: {r.wall_time:.3f}s")
    return "\n".join(lines) + "\n"
