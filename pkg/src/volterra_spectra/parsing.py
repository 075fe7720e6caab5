"""Parser for univariate polynomials in ``z`` with complex literal coefficients.

Accepted forms include ``"6z^2 - z"``, ``"(1+2i)z^3 + z"``, ``"i*z"`` and
``"2.5e-1 z^4"``.  Grammar::

    poly    := term (('+' | '-') term)*
    term    := sign* (coeff ['*'] mono | coeff | mono)
    mono    := 'z' ['^' INT]
    coeff   := NUMBER [IMAG] | IMAG | '(' cplx ')'
    cplx    := sign* part (('+' | '-') part)*
    part    := NUMBER [IMAG] | IMAG
    IMAG    := 'i' | 'j'

Repeated powers are summed.
"""
from __future__ import annotations

import re

from .operators import InvalidSymbolError, PolynomialSymbol
from .series import TruncatedSeries

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_INT = re.compile(r"\d+")


class SymbolSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"syntax error at position {position}: {message}")
        self.position = position


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def error(self, message: str):
        raise SymbolSyntaxError(message, self.pos)

    def number(self) -> float | None:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return float(m.group(0))

    def signs(self) -> int:
        s = 1
        while self.peek() in "+-" and self.peek():
            if self.text[self.pos] == "-":
                s = -s
            self.pos += 1
        return s

    def imag_unit(self) -> bool:
        # 'i'/'j' directly after a number or standing alone
        if self.pos < len(self.text) and self.text[self.pos] in "ij":
            self.pos += 1
            return True
        return False

    def part(self) -> complex | None:
        start = self.pos
        x = self.number()
        if x is not None:
            return complex(0, x) if self.imag_unit() else complex(x)
        self.skip()
        if self.imag_unit():
            return 1j
        self.pos = start
        return None

    def coefficient(self) -> complex | None:
        if self.take("("):
            total = 0j
            sign = self.signs()
            p = self.part()
            if p is None:
                self.error("expected a complex literal")
            total += sign * p
            while self.peek() in ("+", "-"):
                sign = self.signs()
                p = self.part()
                if p is None:
                    self.error("expected a complex literal")
                total += sign * p
            if not self.take(")"):
                self.error("expected ')'")
            return total
        return self.part()

    def monomial(self) -> int | None:
        if self.peek() != "z":
            return None
        self.pos += 1
        if self.take("^"):
            self.skip()
            m = _INT.match(self.text, self.pos)
            if not m:
                self.error("expected an integer exponent")
            self.pos = m.end()
            return int(m.group(0))
        return 1

    def term(self) -> tuple[int, complex]:
        sign = self.signs()
        coeff = self.coefficient()
        if coeff is not None:
            had_star = self.take("*")
            k = self.monomial()
            if k is None:
                if had_star:
                    self.error("expected 'z' after '*'")
                k = 0
        else:
            k = self.monomial()
            if k is None:
                self.error("expected a term")
            coeff = 1.0
        return k, sign * coeff


def parse_polynomial(text: str) -> TruncatedSeries:
    """Parse a polynomial in ``z`` (constant terms allowed)."""
    sc = _Scanner(text)
    if not sc.peek():
        sc.error("empty expression")
    terms = {}
    k, c = sc.term()
    terms[k] = terms.get(k, 0j) + c
    while sc.peek():
        if sc.peek() not in "+-":
            sc.error(f"unexpected character {sc.peek()!r}")
        k, c = sc.term()
        terms[k] = terms.get(k, 0j) + c
    coeffs = [0j] * (max(terms) + 1)
    for k, c in terms.items():
        coeffs[k] = c
    return TruncatedSeries(coeffs)


def parse_complex(text: str) -> complex:
    """Parse a complex literal such as ``"2-i"``, ``"0.1"`` or ``"(1+2i)"``."""
    f = parse_polynomial(text)
    if f.trunc_degree > 0 and any(f.coeffs[1:]):
        raise SymbolSyntaxError("expected a number, found 'z'", text.find("z"))
    return complex(f.coeffs[0])


def parse_symbol(text: str) -> PolynomialSymbol:
    """Parse a Volterra symbol; it must vanish at 0 and be nonconstant."""
    f = parse_polynomial(text)
    if f.coeffs[0] != 0:
        raise InvalidSymbolError("symbol must satisfy g(0)=0")
    if not any(f.coeffs[1:]):
        raise InvalidSymbolError("symbol must be nonconstant")
    return PolynomialSymbol(tuple(f.coeffs[1:]))


def format_complex(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}i"
    sign = "-" if c.imag < 0 else "+"
    return f"({c.real!r}{sign}{abs(c.imag)!r}i)"


def format_polynomial(coeffs) -> str:
    """Inverse of :func:`parse_polynomial` up to exact float round-trip."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = complex(coeffs[k])
        if c == 0:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if c.imag == 0 and c.real < 0:
            sign, body = "-", repr(-c.real)
        elif c.real == 0 and c.imag < 0:
            sign, body = "-", f"{-c.imag!r}i"
        else:
            sign, body = "+", format_complex(c)
        parts.append((sign, body + mono))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])


def format_symbol(g: PolynomialSymbol) -> str:
    return format_polynomial((0,) + tuple(g.coeffs))
