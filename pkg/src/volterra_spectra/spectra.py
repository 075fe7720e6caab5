"""Exact spectrum and boundedness classifiers for Volterra operators.

Decisions are comparisons on ``(deg g, p, alpha, |beta|, a)``.  A real
exponent ``p`` counts as the integer ``n`` when ``|p - n| < 1e-9``.

Spaces are described by small value objects: :class:`BanachSpace` for
``H^inf_v`` (``vanishing=True`` for ``H^0_v``), :class:`HormanderAlgebra`
for ``A_p`` (``zero=True`` for ``A^0_p``) and :class:`EntireFunctions`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .operators import InvalidSymbolError, PolynomialSymbol, ResolventUndefinedError, TranscendentalSymbol, as_symbol
from .weights import (
    GrowthCondition,
    PowerWeight,
    bigO_growth,
    integer_part,
    is_integral,
    less_than,
    littleo_growth,
)

BOUNDARY_RTOL = 1e-12


class OperatorNotBoundedError(ValueError):
    pass


class Shape(str, Enum):
    ZERO = "zero"
    DISK = "disk"
    PLANE = "plane"


@dataclass(frozen=True)
class BanachSpace:
    weight: PowerWeight
    vanishing: bool = False

    @property
    def tag(self) -> str:
        return "H0v" if self.vanishing else "Hv"


@dataclass(frozen=True)
class HormanderAlgebra:
    growth: GrowthCondition
    zero: bool = False

    @property
    def tag(self) -> str:
        return "A0p" if self.zero else "Ap"


@dataclass(frozen=True)
class EntireFunctions:
    tag: str = "H(C)"


Space = BanachSpace | HormanderAlgebra | EntireFunctions


@dataclass(frozen=True)
class BoundednessVerdict:
    bounded: bool
    compact: bool

    def __post_init__(self):
        if self.compact and not self.bounded:
            raise ValueError("compact operators are bounded")


@dataclass(frozen=True)
class SpectrumResult:
    shape: Shape
    space: str
    radius: float | None = None
    witness: str = ""
    point_spectrum_empty: bool = field(default=True, init=False)

    def contains(self, lam: complex) -> bool:
        if self.shape is Shape.PLANE:
            return True
        if self.shape is Shape.ZERO:
            return lam == 0
        return abs(lam) <= self.radius * (1 + BOUNDARY_RTOL)

    def to_json(self) -> dict:
        return {
            "shape": self.shape.value,
            "radius": self.radius,
            "point_spectrum": "empty",
            "space": self.space,
            "witness": self.witness,
        }


def _polynomial(g) -> PolynomialSymbol:
    g = as_symbol(g)
    if not isinstance(g, PolynomialSymbol):
        raise InvalidSymbolError("invalid symbol: a polynomial is required here")
    return g


def classify_boundedness_Hv(g, w: PowerWeight) -> BoundednessVerdict:
    """Bounded iff ``deg g <= [p]``; compact iff ``deg g <= [p - 1]``."""
    g = as_symbol(g)
    if isinstance(g, TranscendentalSymbol):
        return BoundednessVerdict(False, False)
    n = g.degree
    return BoundednessVerdict(n <= integer_part(w.p_exp), n <= integer_part(w.p_exp - 1))


def classify_spectrum_Hv(g, w: PowerWeight, vanishing: bool = False) -> SpectrumResult:
    """Spectrum of ``V_g`` on ``H^inf_v`` (or ``H^0_v``, which has the same spectrum)."""
    tag = "H0v" if vanishing else "Hv"
    if not classify_boundedness_Hv(g, w).bounded:
        raise OperatorNotBoundedError("operator not bounded on this space")
    g = _polynomial(g)
    n, p = g.degree, w.p_exp
    if less_than(n, p):
        compact = n <= integer_part(p - 1)
        why = "compact, no eigenvalues" if compact else "p - 1 < n < p, resolvent via T_gamma"
        return SpectrumResult(Shape.ZERO, tag, witness=f"deg g = {n} < p = {p:g}: {{0}} ({why})")
    radius = abs(g.leading) / w.alpha
    return SpectrumResult(
        Shape.DISK,
        tag,
        radius,
        f"p = n = {n}: closed disk |lambda| <= |beta|/alpha = {radius:g}; "
        "the boundary circle enters through the closure of the exp-failure set",
    )


def classify_spectrum_H0v(g, w: PowerWeight) -> SpectrumResult:
    return classify_spectrum_Hv(g, w, vanishing=True)


def classify_spectrum_entire(g) -> SpectrumResult:
    _polynomial(g)
    return SpectrumResult(Shape.ZERO, "H(C)", witness="V_g - lambda is invertible on H(C) for lambda != 0")


def classify_spectrum_Ap(g, gc: GrowthCondition) -> SpectrumResult:
    g = _polynomial(g)
    if bigO_growth(g, gc):
        assert not less_than(gc.a_exp, 1), "M(g,r)=O(p(r)) forces r=O(p(r))"
        return SpectrumResult(Shape.ZERO, "Ap", witness=f"M(g,r)=O(p(r)): deg g = {g.degree} <= a = {gc.a_exp:g}")
    why = "p(r)=o(r)" if less_than(gc.a_exp, 1) else f"deg g = {g.degree} > a = {gc.a_exp:g}"
    return SpectrumResult(Shape.PLANE, "Ap", witness=f"M(g,r)=O(p(r)) fails ({why}); exp(g/lambda) not in A_p")


def classify_spectrum_A0p(g, gc: GrowthCondition) -> SpectrumResult:
    g = _polynomial(g)
    if littleo_growth(g, gc):
        assert less_than(1, gc.a_exp), "M(g,r)=o(p(r)) forces r=o(p(r))"
        return SpectrumResult(Shape.ZERO, "A0p", witness=f"M(g,r)=o(p(r)): deg g = {g.degree} < a = {gc.a_exp:g}")
    why = "p(r)=O(r)" if not less_than(1, gc.a_exp) else f"deg g = {g.degree} >= a = {gc.a_exp:g}"
    return SpectrumResult(Shape.PLANE, "A0p", witness=f"M(g,r)=o(p(r)) fails ({why}); exp(g/lambda) not in A0_p")


def classify(g, space: Space) -> SpectrumResult:
    if isinstance(space, BanachSpace):
        return classify_spectrum_Hv(g, space.weight, space.vanishing)
    if isinstance(space, HormanderAlgebra):
        return (classify_spectrum_A0p if space.zero else classify_spectrum_Ap)(g, space.growth)
    return classify_spectrum_entire(g)


def exp_membership(g, lam: complex, space: Space) -> bool:
    """Exact decision of ``exp(g / lam) in X``.

    For ``H^inf_v`` with ``p = deg g`` this is ``|beta| / |lam| <= alpha``.
    At the exact boundary circle with a nonzero lower-order part the
    leading-term rule is reported; the spectrum does not depend on it.
    """
    g = _polynomial(g)
    lam = complex(lam)
    if lam == 0:
        raise ResolventUndefinedError("exp(g/lambda) undefined at lambda = 0")
    if isinstance(space, EntireFunctions):
        return True
    if isinstance(space, HormanderAlgebra):
        return littleo_growth(g, space.growth) if space.zero else bigO_growth(g, space.growth)
    n, p = g.degree, space.weight.p_exp
    if less_than(n, p):
        return True
    if not (is_integral(p) and round(p) == n):
        return False
    return abs(g.leading) <= space.weight.alpha * abs(lam) * (1 + BOUNDARY_RTOL)


@dataclass(frozen=True)
class CrossCheckReport:
    passed: bool
    n_points: int
    mismatches: tuple
    scale: float


def _sample_scale(g: PolynomialSymbol, result: SpectrumResult, space: Space) -> float:
    if result.shape is Shape.DISK:
        return result.radius
    if isinstance(space, BanachSpace):
        return abs(g.leading) / space.weight.alpha
    return 1.0


_RADIAL = (
    1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0,
    1.001, 1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0, 1e4,
)


def spectrum_cross_check(result: SpectrumResult, g, space: Space, n_points: int = 1000) -> CrossCheckReport:
    """Compare ``result`` with ``{0} u closure{lam != 0 : exp(g/lam) not in X}``.

    ``lam`` runs over ``n_points`` samples: the origin plus circles (radii
    scaled to the disk radius, or ``|beta|/alpha``, or 1) times equispaced
    rays.  Closure membership of a sample is tested by probing a small ring
    of points around it.
    """
    g = _polynomial(g)
    scale = _sample_scale(g, result, space)
    per_circle = max(1, (n_points - 1) // len(_RADIAL))
    angles = 2 * np.pi * np.arange(per_circle) / per_circle
    lams = [0j] + [scale * m * complex(math.cos(t), math.sin(t)) for m in _RADIAL for t in angles]
    lams = lams[:n_points] + [scale * 0.5j] * max(0, n_points - len(lams))
    probes = np.exp(2j * np.pi * np.arange(16) / 16)

    def fails(lam):
        return lam != 0 and not exp_membership(g, lam, space)

    mismatches = []
    for lam in lams:
        if lam == 0:
            expected = True
        else:
            eps = 1e-7 * max(scale, abs(lam))
            expected = fails(lam) or any(fails(lam + eps * d) for d in probes)
        got = result.contains(lam)
        if got != expected:
            mismatches.append((lam, got, expected))
    return CrossCheckReport(not mismatches, len(lams), tuple(mismatches), scale)
