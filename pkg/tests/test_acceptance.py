"""Acceptance suite: one test and one printed PASS/FAIL line per criterion."""
import time

import numpy as np
import pytest

from volterra_spectra.harness import ExperimentSpec, run_experiment
from volterra_spectra.operators import PolynomialSymbol, finite_section
from volterra_spectra.parsing import format_symbol
from volterra_spectra.series import TruncatedSeries, exp_series
from volterra_spectra.spectra import (
    BanachSpace,
    HormanderAlgebra,
    Shape,
    classify_boundedness_Hv,
    classify_spectrum_A0p,
    classify_spectrum_Ap,
    classify_spectrum_Hv,
    spectrum_cross_check,
)
from volterra_spectra.weights import GrowthCondition, PowerWeight, order_type

SEED = 20240601
_start = time.perf_counter()
_classified = []  # (result, symbol, space) from criteria 2 and 6, reused by 10


@pytest.fixture
def emit(capsys):
    def _emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance] criterion {label}: {'PASS' if ok else 'FAIL'} - {detail}")

    return _emit


def test_c01_resolvent_identity(emit):
    lambdas = (1, -1, 1j, 2 - 1j, 0.1)
    parts, ok, worst = [], True, {}
    for lam in lambdas:
        spec = ExperimentSpec("ResolventIdentity", symbol="random", lambdas=(lam,), cases=200, seed=SEED, degree=64)
        rep = run_experiment(spec)
        n_pass = rep.summary["pass"]
        worst[lam] = max(c.measured["residual"] for c in rep.cases)
        parts.append(f"lambda={lam}: {n_pass}/200 (max residual {worst[lam]:.1e})")
        ok &= rep.ok
    emit(1, ok, "; ".join(parts))
    assert ok, worst


BETAS = (1, 6, 2j)


def test_c02_spectral_disk_formula(emit):
    bad = []
    for alpha in (1, 2, 3):
        for n in (1, 2, 3):
            for beta in BETAS:
                g = PolynomialSymbol.monomial(n, beta)
                w = PowerWeight(alpha, n)
                disk = classify_spectrum_Hv(g, w)
                if disk.shape is not Shape.DISK or disk.radius != abs(beta) / alpha:
                    bad.append((alpha, n, beta, disk.shape, disk.radius))
                w_up = PowerWeight(alpha, n + 0.5)
                zero = classify_spectrum_Hv(g, w_up)
                if zero.shape is not Shape.ZERO:
                    bad.append((alpha, n + 0.5, beta, zero.shape))
                _classified.append((disk, g, BanachSpace(w)))
                _classified.append((zero, g, BanachSpace(w_up)))
    emit(2, not bad, f"54 classifications, {len(bad)} mismatches")
    assert not bad


def test_c03_membership_dichotomy(emit):
    bad, boundary = [], []
    for n in (1, 2, 3):
        for alpha in (1.0, 2.0):
            for beta in BETAS:
                g = PolynomialSymbol.monomial(n, beta)
                spec = ExperimentSpec(
                    "MembershipDivergence", symbol=format_symbol(g), alpha=alpha, p=float(n),
                    radii=(0.5, 0.9, 1.0, 1.1, 2.0), tolerance=0.02,
                )
                rep = run_experiment(spec)
                for c in rep.cases:
                    expect = "DivergenceSuspected" if c.inputs["radius_factor"] < 1 else "Bounded"
                    if c.measured["verdict"] != expect or c.status != "pass":
                        bad.append((n, alpha, beta, c.inputs["radius_factor"], c.measured))
                    if c.inputs["radius_factor"] == 1.0:
                        boundary.append(c.measured["norm"])
    dev = max(abs(v - 1) for v in boundary)
    emit(3, not bad, f"90 radii over 18 symbols/weights, {len(bad)} mismatches, boundary norm max |dev| {dev:.1e}")
    assert not bad


def _gammas(rng, count=20, limit=0.8):
    mags = np.concatenate([[0.0, limit], limit * np.sqrt(rng.random(count - 2))])
    return tuple(complex(m * np.exp(2j * np.pi * rng.random())) for m in mags)


def test_c04_t_gamma_bound(emit):
    rng = np.random.default_rng(SEED)
    gammas = _gammas(rng)
    worst, ok = 0.0, True
    for n in (1, 2, 3):
        spec = ExperimentSpec("TGammaBound", n=n, alpha=1.0, gammas=gammas, cases=30, seed=SEED + n, tolerance=0.05)
        rep = run_experiment(spec)
        ok &= rep.ok
        worst = max([worst] + [c.measured["max_ratio"] / c.measured["bound"] for c in rep.cases])
    emit(4, ok, f"3 n x 20 gamma x 30 functions; worst ratio/bound {worst:.3f} (limit 1.05)")
    assert ok


def test_c05_boundedness_table(emit):
    # (deg, p) -> (floor(p), floor(p - 1)) worked out by hand
    floors = {1: (1, 0), 2: (2, 1), 2.5: (2, 1), 3: (3, 2)}
    quadrants, bad = set(), []
    for n in (1, 2, 3):
        for p, (fp, fp1) in floors.items():
            v = classify_boundedness_Hv(PolynomialSymbol.monomial(n), PowerWeight(1.0, p))
            want = (n <= fp, n <= fp1)
            quadrants.add(want)
            if (v.bounded, v.compact) != want:
                bad.append((n, p, v))
    # compact implies bounded, so three of the four combinations occur
    emit(5, not bad, f"12 cells, verdict kinds seen {sorted(quadrants)}, {len(bad)} mismatches")
    assert not bad and quadrants == {(True, True), (True, False), (False, False)}


def test_c06_hormander_dichotomies(emit):
    expected_ap = {  # deg <= a, plane whenever a < 1
        0.5: (False, False, False), 1: (True, False, False), 2: (True, True, False), 3: (True, True, True),
    }
    expected_a0p = {  # deg < a, plane whenever a <= 1
        0.5: (False, False, False), 1: (False, False, False), 2: (True, False, False), 3: (True, True, False),
    }
    bad = []
    for a in (0.5, 1, 2, 3):
        gc = GrowthCondition(1.0, a)
        for i, n in enumerate((1, 2, 3)):
            g = PolynomialSymbol.monomial(n, 1 + 1j)
            ap, a0p = classify_spectrum_Ap(g, gc), classify_spectrum_A0p(g, gc)
            if (ap.shape is Shape.ZERO) != expected_ap[a][i]:
                bad.append(("Ap", n, a, ap.shape))
            if (a0p.shape is Shape.ZERO) != expected_a0p[a][i]:
                bad.append(("A0p", n, a, a0p.shape))
            _classified.append((ap, g, HormanderAlgebra(gc)))
            _classified.append((a0p, g, HormanderAlgebra(gc, zero=True)))
    emit(6, not bad, f"24 classifications incl. forced-plane a=0.5 and a=1, {len(bad)} mismatches")
    assert not bad


def test_c07_nilpotent_sections(emit):
    symbols = [PolynomialSymbol.monomial(1), PolynomialSymbol((-1, 6)), PolynomialSymbol((1, 0, 1 + 2j))]
    bad = []
    for g in symbols:
        for size in (8, 32, 128):
            m = finite_section(g, size)
            a = m.entries
            upper = [(i, j) for i in range(size) for j in range(i, size) if a[i, j] != 0]
            power_zero = not np.any(np.linalg.matrix_power(a, size))
            eig = m.eigenvalues()
            if upper or not power_zero or np.any(eig != 0):
                bad.append((format_symbol(g), size))
    emit(7, not bad, f"9 sections up to N=128: entrywise strictly lower, A^N = 0, eigenvalues exactly 0; {len(bad)} failures")
    assert not bad


def test_c08_caratheodory(emit):
    spec = ExperimentSpec("Caratheodory", cases=10_000, radii=(0.5, 1.0, 2.0, 5.0), seed=SEED, tolerance=1e-9)
    rep = run_experiment(spec)
    s = rep.summary
    emit(8, rep.ok, f"{s['pass']}/{len(rep.cases)} checks hold at tolerance 1e-9")
    assert rep.ok


def test_c09_order_type(emit):
    bad, worst = [], 0.0
    for n in (1, 2):
        for beta in (0.5, 1.0, 2.0):
            est = order_type(exp_series(TruncatedSeries.monomial(n, beta), 200))
            e_ord, e_typ = abs(est.order / n - 1), abs(est.type_val / beta - 1)
            worst = max(worst, e_ord, e_typ)
            if e_ord > 0.10 or e_typ > 0.10:
                bad.append((n, beta, est))
    emit(9, not bad, f"6 functions, worst relative error {worst:.2e} (limit 0.10)")
    assert not bad


def test_c10_cross_check(emit):
    if len(_classified) != 54 + 24:
        pytest.fail("criteria 2 and 6 must run first to supply classifier outputs")
    failed = [(r.shape, r.space, format_symbol(g)) for r, g, sp in _classified if not spectrum_cross_check(r, g, sp, 1000).passed]
    emit(10, not failed, f"{len(_classified)} classifier outputs x 1000 lambda samples, {len(failed)} disagreements")
    assert not failed


def test_runtime_budget(emit):
    elapsed = time.perf_counter() - _start
    emit("runtime", elapsed < 60, f"acceptance module took {elapsed:.1f}s (budget 60s)")
    assert elapsed < 60
