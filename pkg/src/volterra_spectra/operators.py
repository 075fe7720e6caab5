"""Coefficient-level Volterra-type operators.

Everything acts on :class:`~volterra_spectra.series.TruncatedSeries`.
``degree`` arguments name the working truncation ``N``; results are
truncated there and their ``exact_degree`` says which prefix is exact.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .series import (
    DEFAULT_DEGREE,
    TruncatedSeries,
    antiderive,
    derive,
    evaluate,
    exp_series,
    mul,
)

X0_TOL = 1e-12


class InvalidSymbolError(ValueError):
    pass


class ResolventUndefinedError(ValueError):
    pass


@dataclass(frozen=True)
class PolynomialSymbol:
    """Polynomial symbol ``g(z) = b_1 z + ... + b_n z^n`` with ``b_n != 0``.

    ``coeffs`` holds ``b_1 .. b_n``; ``g(0) = 0`` is built in.  Trailing
    zeros are stripped; an all-zero list is rejected.
    """

    coeffs: tuple

    def __post_init__(self):
        b = [complex(c) for c in self.coeffs]
        while b and b[-1] == 0:
            b.pop()
        if not b:
            raise InvalidSymbolError("symbol must be nonconstant")
        if not all(np.isfinite([c.real for c in b] + [c.imag for c in b])):
            raise InvalidSymbolError("symbol coefficients must be finite")
        object.__setattr__(self, "coeffs", tuple(b))

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "PolynomialSymbol":
        if f.coeffs[0] != 0:
            raise InvalidSymbolError("symbol must satisfy g(0)=0")
        return cls(tuple(f.coeffs[1:]))

    @classmethod
    def monomial(cls, n: int, beta: complex = 1.0) -> "PolynomialSymbol":
        return cls((0,) * (n - 1) + (beta,))

    is_polynomial = True

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def leading(self) -> complex:
        """The leading coefficient ``beta``."""
        return self.coeffs[-1]

    def lower_part(self) -> TruncatedSeries:
        """``k(z) = g(z) - beta z^n`` as a complete polynomial."""
        return TruncatedSeries((0,) + self.coeffs[:-1] + (0,))

    def series(self) -> TruncatedSeries:
        return TruncatedSeries((0,) + self.coeffs)

    def derivative(self) -> TruncatedSeries:
        return derive(self.series())

    def scaled(self, c: complex) -> "PolynomialSymbol":
        return PolynomialSymbol(tuple(c * b for b in self.coeffs))

    def __call__(self, z):
        return evaluate(self.series(), z)


@dataclass(frozen=True)
class TranscendentalSymbol:
    """Marker for a non-polynomial entire symbol (e.g. ``exp(z) - 1``)."""

    name: str = "entire"
    is_polynomial = False


def as_symbol(g) -> PolynomialSymbol | TranscendentalSymbol:
    if isinstance(g, (PolynomialSymbol, TranscendentalSymbol)):
        return g
    if isinstance(g, TruncatedSeries):
        return PolynomialSymbol.from_series(g)
    raise InvalidSymbolError("invalid symbol")


def apply_volterra(g: PolynomialSymbol, f: TruncatedSeries, degree: int | None = None) -> TruncatedSeries:
    """``V_g f = J(f g')``; degree ``deg f + deg g`` unless ``degree`` is given."""
    out = f.trunc_degree + g.degree if degree is None else degree
    prod = mul(f, g.derivative(), max(out - 1, 0))
    return antiderive(prod).truncate(out)


def apply_mult(h: TruncatedSeries, f: TruncatedSeries, degree: int | None = None) -> TruncatedSeries:
    """Multiplication operator ``M_h f = h f``."""
    out = h.trunc_degree + f.trunc_degree if degree is None else degree
    return mul(h, f, out)


def _exp_pair(g: PolynomialSymbol, lam: complex, degree: int):
    gs = g.series() * (1.0 / lam)
    return exp_series(gs, degree), exp_series(-gs, degree)


def _check_lambda(lam: complex):
    if lam == 0:
        raise ResolventUndefinedError("resolvent undefined at 0")


def resolvent_apply(
    g: PolynomialSymbol, lam: complex, h: TruncatedSeries, degree: int = DEFAULT_DEGREE
) -> TruncatedSeries:
    """Solve ``f - V_g f / lam = h``.

    .. math::

        f = h(0) e^{g/\\lambda} + e^{g/\\lambda}
            \\int_0^z e^{-g/\\lambda} h' \\, d\\zeta
    """
    lam = complex(lam)
    _check_lambda(lam)
    G, Ginv = _exp_pair(g, lam, degree)
    inner = antiderive(mul(Ginv, derive(h), max(degree - 1, 0)))
    return G * complex(h.coeffs[0]) + mul(G, inner, degree)


def s_operator_apply(
    g: PolynomialSymbol, lam: complex, h: TruncatedSeries, degree: int = DEFAULT_DEGREE
) -> TruncatedSeries:
    """``S h = M_G J M_{1/G} D h`` with ``G = exp(g / lam)``; needs ``h(0) = 0``."""
    lam = complex(lam)
    _check_lambda(lam)
    if abs(h.coeffs[0]) > X0_TOL:
        raise ValueError("requires h in X_0")
    G, Ginv = _exp_pair(g, lam, degree)
    dh = derive(h)
    return mul(G, antiderive(mul(Ginv, dh, max(degree - 1, 0))), degree)


def t_gamma_apply(n: int, gamma: complex, h: TruncatedSeries, degree: int = DEFAULT_DEGREE) -> TruncatedSeries:
    """``T_gamma h(z) = e^{gamma z^n} int_0^z zeta^{n-1} h(zeta) e^{-gamma zeta^n} d zeta``.

    Coefficients come from the equivalent initial value problem
    ``f' = n gamma z^{n-1} f + z^{n-1} h``, ``f(0) = 0``, i.e.

        k f_k = n gamma f_{k-n} + h_{k-n}

    The literal product form (:func:`t_gamma_apply_product`) has the same
    coefficients but multiplies series of size ``e^{|gamma| r}`` against
    each other, so its rounding noise grows like ``e^{2 |gamma| r}`` and
    swamps weighted norms once ``|gamma| > alpha / 2``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gamma = complex(gamma)
    hc = h.padded(degree)
    f = np.zeros(degree + 1, dtype=np.complex128)
    for k in range(n, degree + 1):
        f[k] = (n * gamma * f[k - n] + hc[k - n]) / k
    exact = degree if h.is_complete else min(degree, h.exact_degree + n)
    return TruncatedSeries(f, exact)


def t_gamma_apply_product(
    n: int, gamma: complex, h: TruncatedSeries, degree: int = DEFAULT_DEGREE
) -> TruncatedSeries:
    """``T_gamma h`` as the composition ``M_E J M_{z^{n-1}} M_{1/E} h``, ``E = e^{gamma z^n}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gamma = complex(gamma)
    mono = TruncatedSeries.monomial(n, gamma)
    E, Einv = exp_series(mono, degree), exp_series(-mono, degree)
    zh = mul(TruncatedSeries.monomial(n - 1), h, max(degree - 1, 0))
    return mul(E, antiderive(mul(zh, Einv, max(degree - 1, 0))), degree)


def t_gamma_quadrature(n: int, gamma: complex, h: TruncatedSeries, z, nodes: int = 64):
    """``T_gamma h(z)`` by Gauss-Legendre along the segment ``[0, z]``.

    Independent of the series pipeline; used only as a cross-check.
    Substituting ``zeta = t z`` gives
    ``int_0^1 z^n t^{n-1} h(tz) exp(gamma z^n (1 - t^n)) dt``.
    """
    x, wts = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * (x + 1.0)
    wts = 0.5 * wts
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    zn = z ** n
    tz = t[None, :] * z[:, None]
    integrand = t[None, :] ** (n - 1) * evaluate(h, tz) * np.exp(gamma * zn[:, None] * (1 - t[None, :] ** n))
    out = zn * (integrand @ wts)
    return out if out.size > 1 else complex(out[0])


def integration_by_parts_residual(
    g: PolynomialSymbol, lam: complex, h: TruncatedSeries, degree: int = DEFAULT_DEGREE
) -> float:
    """Max coefficient gap between the two sides of

    ``e^{g/lam} J(h' e^{-g/lam}) = h + (1/lam) e^{g/lam} J(h g' e^{-g/lam})``

    over degrees ``0 .. degree - deg g``.  Each side is built by its own
    series pipeline.
    """
    lam = complex(lam)
    lhs = s_operator_apply(g, lam, h, degree)
    G, Ginv = _exp_pair(g, lam, degree)
    hg = mul(h, g.derivative(), max(degree - 1, 0))
    rhs = h.truncate(degree) + mul(G, antiderive(mul(hg, Ginv, max(degree - 1, 0))), degree) * (1.0 / lam)
    top = max(degree - g.degree, 0)
    return float(np.max(np.abs(lhs.padded(top) - rhs.padded(top))))


@dataclass(frozen=True, eq=False)
class SectionMatrix:
    """Leading ``size x size`` block of ``V_g`` in the monomial basis.

    ``entries[row, col]`` is the coefficient of ``z^row`` in ``V_g(z^col)``.
    """

    size: int
    entries: np.ndarray

    def matvec(self, f: TruncatedSeries) -> TruncatedSeries:
        return TruncatedSeries(self.entries @ f.padded(self.size - 1), self.size - 1)

    def is_strictly_lower_triangular(self) -> bool:
        return not np.any(np.triu(self.entries))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues read off the diagonal; valid because the matrix is triangular.

        A general eigensolver on a nilpotent matrix returns spurious values of
        order ``eps**(1/size)``, so it is not used.
        """
        a = self.entries
        if np.any(np.triu(a, 1)) and np.any(np.tril(a, -1)):
            raise ValueError("matrix is not triangular")
        return np.diag(self.entries).copy()

    def power(self, k: int) -> np.ndarray:
        return np.linalg.matrix_power(self.entries, k)

    def to_csv(self) -> str:
        """Row-major CSV; each entry contributes an adjacent ``re,im`` pair."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.entries:
            w.writerow([v for c in row for v in (repr(float(c.real)), repr(float(c.imag)))])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [[[float(c.real), float(c.imag)] for c in row] for row in self.entries]
        return json.dumps({"size": self.size, "entries": rows})

    @classmethod
    def from_csv(cls, text: str) -> "SectionMatrix":
        rows = [list(map(float, r)) for r in csv.reader(io.StringIO(text)) if r]
        a = np.array([[complex(r[2 * i], r[2 * i + 1]) for i in range(len(r) // 2)] for r in rows])
        return cls(a.shape[0], a)


def finite_section(g: PolynomialSymbol, size: int) -> SectionMatrix:
    """``A[j + m, j] = m b_m / (j + m)`` for ``1 <= m <= deg g``, zero elsewhere."""
    if size < 2:
        raise ValueError("size must be >= 2")
    a = np.zeros((size, size), dtype=np.complex128)
    cols = np.arange(size)
    for m, b in enumerate(g.coeffs, start=1):
        if b == 0 or m >= size:
            continue
        j = cols[: size - m]
        a[j + m, j] = m * b / (j + m)
    a.flags.writeable = False
    return SectionMatrix(size, a)
