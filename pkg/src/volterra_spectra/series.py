"""Truncated complex Taylor series.

A :class:`TruncatedSeries` holds the coefficients ``c_0 .. c_N`` of a
polynomial standing in for an entire function near the origin.  Every
operation returns a new series; nothing is mutated in place.

Besides ``trunc_degree`` each series carries ``exact_degree``: the highest
index whose coefficient agrees with the underlying (untruncated) formal
series, or ``None`` when the coefficients are complete (a genuine
polynomial).  Arithmetic propagates it so callers can tell which prefix of a
result is trustworthy.

Circle sampling (:func:`max_modulus`, :func:`max_real_part`,
:func:`log_max_modulus`) evaluates on ``samples`` equispaced angles through
an FFT of the radially rescaled coefficients.  The rescaling is done in log
space so radii where ``|c_k| r^k`` overflows a double are still handled.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

DEFAULT_DEGREE = 64
PREFIX_RTOL = 1e-12


def default_samples(degree: int) -> int:
    """Number of circle samples resolving the highest retained frequency."""
    return max(256, 8 * (degree + 1))


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Degree-``N`` complex Taylor polynomial.

    Parameters
    ----------
    coeffs : array_like
        Coefficients from degree 0 upward.  Converted to a read-only
        ``complex128`` array.
    exact_degree : int, optional
        Highest coefficient index that is exact for the represented
        function.  ``None`` (the default) marks a complete polynomial.
    """

    coeffs: np.ndarray
    exact_degree: int | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        if self.exact_degree is not None:
            object.__setattr__(self, "exact_degree", min(int(self.exact_degree), c.size - 1))

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, degree: int = 0) -> "TruncatedSeries":
        return cls(np.zeros(degree + 1))

    @classmethod
    def constant(cls, c: complex, degree: int = 0) -> "TruncatedSeries":
        a = np.zeros(degree + 1, dtype=np.complex128)
        a[0] = c
        return cls(a)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0, degree: int | None = None) -> "TruncatedSeries":
        degree = k if degree is None else degree
        a = np.zeros(degree + 1, dtype=np.complex128)
        if k <= degree:
            a[k] = c
        return cls(a)

    @classmethod
    def from_json(cls, doc: dict) -> "TruncatedSeries":
        """Build from ``{"coeffs": [[re, im], ...]}``."""
        pairs = doc["coeffs"]
        return cls([complex(re, im) for re, im in pairs])

    # -- basic properties ---------------------------------------------
    @property
    def trunc_degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_complete(self) -> bool:
        return self.exact_degree is None

    @property
    def exact_prefix(self) -> int:
        """Highest index known to be exact."""
        return self.trunc_degree if self.exact_degree is None else self.exact_degree

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        if isinstance(k, (int, np.integer)) and k > self.trunc_degree:
            return 0j
        return self.coeffs[k]

    def __repr__(self):
        ex = "complete" if self.is_complete else self.exact_degree
        return f"TruncatedSeries(degree={self.trunc_degree}, exact={ex})"

    def to_json(self) -> dict:
        return {"coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    def padded(self, degree: int) -> np.ndarray:
        """Coefficient array of length ``degree + 1`` (zero padded or cut)."""
        out = np.zeros(degree + 1, dtype=np.complex128)
        m = min(degree, self.trunc_degree) + 1
        out[:m] = self.coeffs[:m]
        return out

    def truncate(self, degree: int) -> "TruncatedSeries":
        if self.is_complete and degree >= _nonzero(self) - 1:
            return TruncatedSeries(self.padded(degree))
        return TruncatedSeries(self.padded(degree), min(_exact(self), degree))

    def prefix_equal(self, other: "TruncatedSeries", degree: int, tol: float = PREFIX_RTOL) -> bool:
        """Coefficients ``0..degree`` agree within ``tol`` (relative to scale)."""
        a, b = self.padded(degree), other.padded(degree)
        scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
        return bool(np.max(np.abs(a - b)) <= tol * scale)

    # -- operator sugar -----------------------------------------------
    def __add__(self, other):
        if isinstance(other, Number):
            other = TruncatedSeries.constant(other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = TruncatedSeries.constant(other)
        return add(self, scale(other, -1.0))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __truediv__(self, c):
        return scale(self, 1.0 / complex(c))

    def __call__(self, z):
        return evaluate(self, z)


SeriesLike = TruncatedSeries | Sequence[complex]


def as_series(f: SeriesLike) -> TruncatedSeries:
    return f if isinstance(f, TruncatedSeries) else TruncatedSeries(f)


def polynomial(coeffs: Iterable[complex]) -> TruncatedSeries:
    """Exact polynomial given by its coefficients from degree 0."""
    return TruncatedSeries(list(coeffs))


# -- arithmetic -----------------------------------------------------------

def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = max(f.trunc_degree, g.trunc_degree)
    return TruncatedSeries(f.padded(n) + g.padded(n), _combine(_exact(f), _exact(g)))


def scale(f: TruncatedSeries, c: complex) -> TruncatedSeries:
    return TruncatedSeries(f.coeffs * complex(c), f.exact_degree)


def mul(f: TruncatedSeries, g: TruncatedSeries, out_degree: int | None = None) -> TruncatedSeries:
    """Cauchy product truncated to ``out_degree`` (default: the larger input degree)."""
    if out_degree is None:
        out_degree = max(f.trunc_degree, g.trunc_degree)
    if out_degree < 0:
        raise ValueError("out_degree must be >= 0")
    a = f.coeffs[: out_degree + 1]
    b = g.coeffs[: out_degree + 1]
    prod = _pad_to(np.convolve(a, b), out_degree)
    if f.is_complete and g.is_complete and out_degree >= _nonzero(f) + _nonzero(g) - 2:
        return TruncatedSeries(prod)
    ex = min(out_degree, _exact(f) + _lowest_nonzero(g), _exact(g) + _lowest_nonzero(f))
    return TruncatedSeries(prod, ex)


def derive(f: TruncatedSeries) -> TruncatedSeries:
    """Term-by-term derivative; degree drops by one (degree 0 maps to zero)."""
    n = f.trunc_degree
    if n == 0:
        return TruncatedSeries.zero(0)
    d = f.coeffs[1:] * np.arange(1, n + 1)
    return TruncatedSeries(d, None if f.is_complete else max(f.exact_degree - 1, 0))


def antiderive(f: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative vanishing at 0; degree rises by one."""
    n = f.trunc_degree
    a = np.zeros(n + 2, dtype=np.complex128)
    a[1:] = f.coeffs / np.arange(1, n + 2)
    return TruncatedSeries(a, None if f.is_complete else f.exact_degree + 1)


def exp_series(f: TruncatedSeries, out_degree: int | None = None) -> TruncatedSeries:
    """Coefficients of ``exp(f)`` up to ``out_degree``.

    Uses ``(exp f)' = f' exp f``::

        e_0 = exp(c_0)
        (k + 1) e_{k+1} = sum_{j=0..k} (j + 1) c_{j+1} e_{k-j}

    A nonzero constant term only contributes the scalar factor ``exp(c_0)``.
    """
    if out_degree is None:
        out_degree = max(f.trunc_degree, DEFAULT_DEGREE)
    c = f.padded(out_degree)
    e = np.zeros(out_degree + 1, dtype=np.complex128)
    e[0] = cmath.exp(c[0])
    if out_degree == 0:
        return TruncatedSeries(e, 0)
    # only the nonzero tail of f' matters; sparse symbols stay cheap
    d = c[1:] * np.arange(1, out_degree + 1)
    top = int(np.flatnonzero(d)[-1]) + 1 if np.any(d) else 0
    for k in range(out_degree):
        m = min(k + 1, top)
        if m:
            e[k + 1] = np.dot(d[:m], e[k::-1][:m]) / (k + 1)
    if top == 0 and f.is_complete:
        return TruncatedSeries(e)
    return TruncatedSeries(e, min(out_degree, _exact(f)))


def evaluate(f: TruncatedSeries, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for c in f.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc) if acc.ndim == 0 else acc


# -- circle sampling --------------------------------------------------------

def _circle_values(f: TruncatedSeries, radii: np.ndarray, samples: int):
    """Scaled values on circles.

    Returns ``(log_scale, values)`` with ``values[i, j] * exp(log_scale[i])``
    equal to ``f(r_i * exp(2 pi i j / samples))``.  ``radii`` must be > 0.
    """
    c = f.coeffs
    # subnormal magnitudes carry no usable phase
    nz = np.flatnonzero(np.abs(c) >= np.finfo(float).tiny)
    radii = np.asarray(radii, dtype=float)
    if nz.size == 0:
        return np.zeros(radii.size), np.zeros((radii.size, samples), dtype=np.complex128)
    mags = np.abs(c[nz])
    logc = np.log(mags)
    phase = c[nz] / mags
    logm = logc[None, :] + nz[None, :] * np.log(radii)[:, None]
    s = logm.max(axis=1)
    scaled = phase[None, :] * np.exp(logm - s[:, None])
    folded = np.zeros((radii.size, samples), dtype=np.complex128)
    cols = nz % samples
    if nz[-1] < samples:
        folded[:, cols] = scaled
    else:
        for j, col in enumerate(cols):
            folded[:, col] += scaled[:, j]
    vals = np.fft.ifft(folded, axis=1) * samples
    return s, vals


def log_max_modulus(f: TruncatedSeries, radii, samples: int | None = None) -> np.ndarray:
    """``log M(f, r)`` sampled on ``samples`` angles, vectorised over ``radii > 0``."""
    samples = default_samples(f.trunc_degree) if samples is None else samples
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    s, vals = _circle_values(f, radii, samples)
    with np.errstate(divide="ignore"):
        return s + np.log(np.max(np.abs(vals), axis=1))


def max_modulus(f: TruncatedSeries, r: float, samples: int | None = None) -> float:
    """Sampled ``M(f, r) = max_{|z|=r} |f(z)|`` (a lower bound of the true value)."""
    _check_circle_args(r, samples)
    if r == 0:
        return abs(f.coeffs[0])
    return float(np.exp(log_max_modulus(f, [r], samples)[0]))


def max_real_part(f: TruncatedSeries, r: float, samples: int | None = None) -> float:
    """Sampled ``A(f, r) = max_{|z|=r} Re f(z)``."""
    _check_circle_args(r, samples)
    if r == 0:
        return float(f.coeffs[0].real)
    samples = default_samples(f.trunc_degree) if samples is None else samples
    s, vals = _circle_values(f, np.array([r]), samples)
    return float(np.max(vals[0].real) * math.exp(s[0]))


def _check_circle_args(r, samples):
    if r < 0:
        raise ValueError("radius must be >= 0")
    if samples is not None and samples < 8:
        raise ValueError("need at least 8 circle samples")


# -- helpers ------------------------------------------------------------------

def _exact(f: TruncatedSeries) -> float:
    return math.inf if f.exact_degree is None else f.exact_degree


def _combine(a: float, b: float) -> int | None:
    m = min(a, b)
    return None if m == math.inf else int(m)


def _nonzero(f: TruncatedSeries) -> int:
    """One past the index of the highest nonzero coefficient."""
    nz = np.flatnonzero(f.coeffs)
    return int(nz[-1]) + 1 if nz.size else 0


def _lowest_nonzero(f: TruncatedSeries) -> int:
    nz = np.flatnonzero(f.coeffs)
    return int(nz[0]) if nz.size else f.trunc_degree + 1


def _pad_to(a: np.ndarray, degree: int) -> np.ndarray:
    if a.size >= degree + 1:
        return a[: degree + 1]
    out = np.zeros(degree + 1, dtype=np.complex128)
    out[: a.size] = a
    return out
