"""Radial weights, growth conditions and numerical membership tests.

Weights are ``v(r) = exp(-alpha r^p)``; growth conditions are
``p(r) = scale * r^a``.  The numerical routines here only ever give
lower bounds or heuristic verdicts; exact decisions for ``exp(g / lambda)``
with polynomial ``g`` live in :mod:`volterra_spectra.spectra`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .series import TruncatedSeries, log_max_modulus, max_modulus, max_real_part

INTEGER_TOL = 1e-9
NORM_GRID = 512
NORM_R_MIN = 1e-3
REFINE_POINTS = 65
GOLDEN_ITERS = 40
WEIGHT_LOG_FLOOR = 50.0
# relative rise of the running max over the last decade that counts as growth
DIVERGENCE_RISE = 1e-3
ORDER_RTOL = 0.10
TYPE_ATOL = 0.05
TYPE_CAP = 1e6


class Verdict(str, Enum):
    IN = "in"
    OUT = "out"
    INCONCLUSIVE = "inconclusive"


class NormVerdict(str, Enum):
    BOUNDED = "Bounded"
    DIVERGENCE = "DivergenceSuspected"


def integer_part(x: float) -> int:
    """``floor(x)``, treating values within 1e-9 of an integer as that integer."""
    r = round(x)
    return int(r) if abs(x - r) < INTEGER_TOL else math.floor(x)


def is_integral(x: float) -> bool:
    return abs(x - round(x)) < INTEGER_TOL


def less_than(n: float, x: float) -> bool:
    """Strict ``n < x`` with the integer tolerance applied to ties."""
    return n < x - INTEGER_TOL


@dataclass(frozen=True)
class PowerWeight:
    """The weight ``v(r) = exp(-alpha * r**p_exp)``."""

    alpha: float
    p_exp: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.p_exp > 0):
            raise ValueError("weight needs alpha > 0 and p > 0")

    def __call__(self, r):
        return np.exp(self.log(r))

    def log(self, r):
        return -self.alpha * np.power(r, self.p_exp)

    @property
    def default_r_max(self) -> float:
        """Radius where the weight has dropped to ``exp(-50)``."""
        return (WEIGHT_LOG_FLOOR / self.alpha) ** (1.0 / self.p_exp)


@dataclass(frozen=True)
class GrowthCondition:
    """Power growth ``p(r) = scale * r**a_exp``."""

    scale: float
    a_exp: float

    def __post_init__(self):
        if not (self.scale > 0 and self.a_exp > 0):
            raise ValueError("growth condition needs scale > 0 and a > 0")

    def __call__(self, r):
        return self.scale * np.power(r, self.a_exp)

    def doubling_ratio(self) -> float:
        """``p(2r) / p(r)``, constant for power growth."""
        return 2.0 ** self.a_exp

    def polynomial_bound(self) -> tuple[float, float]:
        """``(M, s)`` with ``p(r) <= M r^s + M`` for all ``r >= 0``."""
        return self.scale, self.a_exp

    def check_axioms(self, log10_r_max: float = 300.0, points: int = 200) -> dict:
        """Sample the growth-condition axioms on a geometric grid.

        Works with ``log r`` throughout so huge radii do not overflow.
        """
        logr = np.linspace(0.0, log10_r_max * math.log(10), points)
        # log(1 + r^2) = 2 log r + log1p(r^-2)
        log_num = np.log(2 * logr + np.log1p(np.exp(-2 * logr)))
        log_ratio = log_num - math.log(self.scale) - self.a_exp * logr
        tail = log_ratio[points // 2:]
        doubling = [float(self(2 * r) / self(r)) for r in (1.0, 10.0, 1e3, 1e6)]
        m, s = self.polynomial_bound()
        rr = np.geomspace(1e-6, 1e6, 97)
        return {
            "log_growth_negligible": bool(np.all(np.diff(tail) < 0) and tail[-1] < math.log(1e-2)),
            "doubling_bounded": bool(np.allclose(doubling, self.doubling_ratio())),
            "polynomial_bound": bool(np.all(self(rr) <= m * rr ** s + m)),
        }


@dataclass(frozen=True)
class NormEstimate:
    value: float
    attained_r: float
    verdict: NormVerdict
    r_max: float
    grid_points: int
    log_value: float = field(default=0.0, repr=False)

    @property
    def bounded(self) -> bool:
        return self.verdict is NormVerdict.BOUNDED


@dataclass(frozen=True)
class OrderTypeEstimate:
    order: float
    type_val: float
    type_infinite: bool
    window: tuple[int, int]


@dataclass(frozen=True)
class Membership:
    """Numerical membership verdict for ``H^inf_v``.

    ``vanishing`` reports whether the weighted profile decays at the edge
    of the grid, i.e. the ``H^0_v`` sub-verdict (``None`` when ``verdict``
    is not ``IN``).
    """

    verdict: Verdict
    vanishing: bool | None
    estimates: tuple[NormEstimate, ...]


@dataclass(frozen=True)
class CaratheodoryCheck:
    lhs: float
    rhs: float
    holds: bool


def weight_value(w: PowerWeight, r: float) -> float:
    if r < 0:
        raise ValueError("radius must be >= 0")
    return math.exp(-w.alpha * r ** w.p_exp)


def _profile(f: TruncatedSeries, w: PowerWeight, r_max: float, grid: int, samples):
    radii = np.geomspace(min(NORM_R_MIN, r_max / 10), r_max, grid)
    logp = log_max_modulus(f, radii, samples) + w.log(radii)
    return radii, logp


def _golden_max(fn, lo: float, hi: float, iters: int = GOLDEN_ITERS) -> tuple[float, float]:
    """Golden-section search for the maximum of ``fn`` on ``[lo, hi]``."""
    inv = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - inv * (b - a), a + inv * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = fn(d)
    return (fc, c) if fc >= fd else (fd, d)


def weighted_norm(
    f: TruncatedSeries,
    w: PowerWeight,
    r_max: float | None = None,
    grid: int = NORM_GRID,
    samples: int | None = None,
) -> NormEstimate:
    """Estimate ``sup_z v(|z|) |f(z)|`` on a geometric radial grid.

    The origin is included as an extra sample.  The verdict is
    ``DivergenceSuspected`` when the maximum sits at the outer end of the
    grid and the running maximum still rose by more than
    ``DIVERGENCE_RISE`` (relative) across the last decade ``[r_max/10,
    r_max]``.  This is a heuristic: a lower bound on a truncated function
    cannot prove divergence.
    """
    if r_max is None:
        r_max = w.default_r_max
    if r_max <= 0:
        raise ValueError("r_max must be > 0")
    if grid < 16:
        raise ValueError("grid needs at least 16 points")
    radii, logp = _profile(f, w, r_max, grid, samples)
    with np.errstate(divide="ignore"):
        log0 = math.log(abs(f.coeffs[0])) if f.coeffs[0] != 0 else -math.inf
    idx = int(np.argmax(logp))
    # refine between the grid neighbours of the maximiser
    fine = np.linspace(radii[max(idx - 1, 0)], radii[min(idx + 1, grid - 1)], REFINE_POINTS)
    fine_logp = log_max_modulus(f, fine, samples) + w.log(fine)
    j = int(np.argmax(fine_logp))
    peak, peak_r = _golden_max(
        lambda r: float(log_max_modulus(f, np.array([r]), samples)[0] + w.log(r)),
        float(fine[max(j - 1, 0)]),
        float(fine[min(j + 1, REFINE_POINTS - 1)]),
    )
    for cand, cand_r in ((fine_logp[j], fine[j]), (logp[idx], radii[idx])):
        if cand > peak:
            peak, peak_r = float(cand), float(cand_r)
    if log0 >= peak:
        best, at = log0, 0.0
    else:
        best, at = peak, peak_r

    last = radii >= r_max / 10
    before = max(log0, float(np.max(logp[~last]))) if np.any(~last) else log0
    tail = max(2, grid // 100)
    rising = float(np.max(logp[last])) > before + math.log1p(DIVERGENCE_RISE)
    diverging = at > 0 and idx >= grid - tail and rising
    verdict = NormVerdict.DIVERGENCE if diverging else NormVerdict.BOUNDED
    value = math.exp(best) if best < 709 else math.inf
    return NormEstimate(value, at, verdict, float(r_max), grid, best)


def membership_Hv(
    f: TruncatedSeries,
    w: PowerWeight,
    r_max: float | None = None,
    grid: int = NORM_GRID,
    stable_rtol: float = 1e-3,
) -> Membership:
    """Numerical verdict on ``f in H^inf_v`` from two nested grids.

    ``IN`` needs a bounded verdict at ``r_max`` and ``2 r_max`` with values
    agreeing to ``stable_rtol``; ``OUT`` needs divergence at both.
    """
    r_max = w.default_r_max if r_max is None else r_max
    a = weighted_norm(f, w, r_max, grid)
    b = weighted_norm(f, w, 2 * r_max, grid)
    if a.bounded and b.bounded and math.isclose(a.value, b.value, rel_tol=stable_rtol):
        verdict = Verdict.IN
    elif not a.bounded and not b.bounded:
        verdict = Verdict.OUT
    else:
        verdict = Verdict.INCONCLUSIVE
    vanishing = None
    if verdict is Verdict.IN:
        radii, logp = _profile(f, w, 2 * r_max, grid, None)
        vanishing = bool(logp[-1] < b.log_value + math.log(1e-6))
    return Membership(verdict, vanishing, (a, b))


def bigO_growth(g, gc: GrowthCondition) -> bool:
    """``M(g, r) = O(p(r))`` for a polynomial symbol: ``deg g <= a``."""
    return not less_than(gc.a_exp, g.degree)


def littleo_growth(g, gc: GrowthCondition) -> bool:
    """``M(g, r) = o(p(r))`` for a polynomial symbol: ``deg g < a``."""
    return less_than(g.degree, gc.a_exp)


class InsufficientDataError(ValueError):
    pass


def order_type(f: TruncatedSeries, window: tuple[int, int] | None = None) -> OrderTypeEstimate:
    """Estimate order and type of an entire function from its coefficients.

    Fits the asymptotic form of the coefficients of a function of order
    ``rho`` and type ``tau``,

    .. math::

        -\\log|c_k| \\approx \\frac{k \\log k}{\\rho}
            - \\frac{k}{\\rho}\\log(e \\rho \\tau) + a \\log k + b,

    by least squares over the indices in ``window`` with ``|c_k|`` in
    ``(tiny, 1)``.  The ``log k`` and constant columns absorb the
    sub-exponential prefactor, which otherwise biases the classical
    pointwise limsup formulas badly at moderate ``k``.  A window of zeros
    on a nonzero series (a polynomial) gives order 0 and type 0.
    """
    n = f.trunc_degree
    lo, hi = window if window is not None else (max(2, n // 2), n)
    lo, hi = max(2, int(lo)), min(n, int(hi))
    if hi < lo:
        raise InsufficientDataError("insufficient coefficient data")
    k = np.arange(lo, hi + 1)
    mags = np.abs(f.coeffs[lo:hi + 1])
    if not np.any(mags):
        if np.any(f.coeffs):
            return OrderTypeEstimate(0.0, 0.0, False, (lo, hi))
        raise InsufficientDataError("insufficient coefficient data")
    use = (mags > np.finfo(float).tiny) & (mags < 1.0)
    k, mags = k[use].astype(float), mags[use]
    y = -np.log(mags)
    if k.size >= 6:
        cols = [k * np.log(k), k, np.log(k), np.ones_like(k)]
    elif k.size >= 2:
        cols = [k * np.log(k), k]
    else:
        raise InsufficientDataError("insufficient coefficient data")
    sol = np.linalg.lstsq(np.column_stack(cols), y, rcond=None)[0]
    if sol[0] <= 0:
        return OrderTypeEstimate(math.inf, math.inf, True, (lo, hi))
    order = 1.0 / sol[0]
    log_type = -sol[1] * order - 1.0 - math.log(order)
    tau = math.exp(log_type) if log_type < 700 else math.inf
    return OrderTypeEstimate(order, tau, not math.isfinite(tau) or tau > TYPE_CAP, (lo, hi))


def _order_band(est: OrderTypeEstimate, a: float, rtol: float) -> str:
    ratio = est.order / a
    if ratio < 1 - rtol:
        return "below"
    if ratio <= 1 + rtol:
        return "equal"
    if ratio <= 1 + 2 * rtol:
        return "ambiguous"
    return "above"


def membership_Ap(
    f: TruncatedSeries,
    gc: GrowthCondition,
    window: tuple[int, int] | None = None,
    rtol: float = ORDER_RTOL,
) -> Verdict:
    """``f in A_p`` for ``p(r) = r^a``: order < a, or order a with finite type."""
    est = order_type(f, window)
    band = _order_band(est, gc.a_exp, rtol)
    if band == "below":
        return Verdict.IN
    if band == "equal":
        return Verdict.OUT if est.type_infinite else Verdict.IN
    return Verdict.INCONCLUSIVE if band == "ambiguous" else Verdict.OUT


def membership_A0p(
    f: TruncatedSeries,
    gc: GrowthCondition,
    window: tuple[int, int] | None = None,
    rtol: float = ORDER_RTOL,
    type_atol: float = TYPE_ATOL,
) -> Verdict:
    """``f in A^0_p`` for ``p(r) = r^a``: order < a, or order a and type 0."""
    est = order_type(f, window)
    band = _order_band(est, gc.a_exp, rtol)
    if band == "below":
        return Verdict.IN
    if band == "equal":
        t = est.type_val
        if t <= type_atol:
            return Verdict.IN
        return Verdict.INCONCLUSIVE if t <= 4 * type_atol else Verdict.OUT
    return Verdict.INCONCLUSIVE if band == "ambiguous" else Verdict.OUT


def caratheodory_check(
    h: TruncatedSeries, r: float, samples: int | None = None, tol: float = 1e-9
) -> CaratheodoryCheck:
    """Check ``M(h, r) <= 2 (A(h, 2r) - Re h(0)) + |h(0)|`` on sampled maxima."""
    if r <= 0:
        raise ValueError("radius must be > 0")
    h0 = complex(h.coeffs[0])
    lhs = max_modulus(h, r, samples)
    rhs = 2.0 * (max_real_part(h, 2 * r, samples) - h0.real) + abs(h0)
    return CaratheodoryCheck(lhs, rhs, lhs <= rhs + tol)
