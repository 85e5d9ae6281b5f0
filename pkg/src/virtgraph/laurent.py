"""Exact Laurent polynomials in quarter powers of ``t``.

Every polynomial is stored as a map ``exponent -> coefficient`` where the
exponent unit is ``t^(1/4)``.  The bracket variable is ``A = t^(-1/4)``, so
``A^e`` lives at exponent ``-e``; ``t^(1/2)`` lives at exponent 2 and an
integer power ``t^k`` at ``4k``.  One representation therefore covers
bracket polynomials, Jones polynomials of links (half-integer powers) and
Jones polynomials of knots (integer powers).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NonIntegerPowers

__all__ = [
    "LaurentPoly",
    "ComplexInt",
    "from_A_power",
    "from_t_power",
    "ZERO",
    "ONE",
    "LOOP",
    "parse",
]


@dataclass(frozen=True)
class ComplexInt:
    """Gaussian integer ``re + im*i``."""

    re: int
    im: int

    def __mul__(self, other: ComplexInt) -> ComplexInt:
        return ComplexInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __add__(self, other: ComplexInt) -> ComplexInt:
        return ComplexInt(self.re + other.re, self.im + other.im)


# i^0, i^1, i^2, i^3
_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class LaurentPoly:
    """Immutable integer Laurent polynomial in ``t^(1/4)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e = int(e)
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> LaurentPoly:
        # terms already canonical
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def exponents(self) -> list[int]:
        return list(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def has_integer_t_powers(self) -> bool:
        """True when every exponent is a whole power of ``t``."""
        return all(e % 4 == 0 for e in self._terms)

    # ring operations

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly._raw({e * k: 1 if k % 2 == 0 else c})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, quarters: int) -> LaurentPoly:
        """Multiply by the monomial ``t^(quarters/4)``."""
        return LaurentPoly._raw({e + quarters: c for e, c in self._terms.items()})

    def scale(self, k: int) -> LaurentPoly:
        if k == 0:
            return ZERO
        return LaurentPoly._raw({e: c * k for e, c in self._terms.items()})

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # evaluation

    def eval_at_i(self) -> ComplexInt:
        """Exact value at ``t = sqrt(-1)``; requires integer powers of ``t``."""
        bad = [e for e in self._terms if e % 4]
        if bad:
            raise NonIntegerPowers(
                f"exponent t^({Fraction(bad[0], 4)}) is not an integer power of t"
            )
        re = im = 0
        for e, c in self._terms.items():
            r, i = _I_POWERS[(e // 4) % 4]
            re += c * r
            im += c * i
        return ComplexInt(re, im)

    def eval_at_minus_one(self) -> int:
        """Value at ``t = -1`` (integer powers only)."""
        bad = [e for e in self._terms if e % 4]
        if bad:
            raise NonIntegerPowers("t = -1 needs integer powers of t")
        return sum(c if (e // 4) % 2 == 0 else -c for e, c in self._terms.items())

    # rendering

    def to_string(self, variable: str = "t") -> str:
        if not self._terms:
            return "0"
        pieces = []
        # highest degree first in the chosen variable
        if variable == "t":
            order = sorted(self._terms, reverse=True)
        elif variable == "A":
            order = sorted(self._terms)
        else:
            raise ValueError(f"unknown variable {variable!r}")
        for e in order:
            c = self._terms[e]
            if variable == "t":
                mono = _t_monomial(e)
            else:
                mono = _int_monomial("A", -e)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono == "":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string("t")

    def __repr__(self):
        return f"LaurentPoly({self.to_string('t')!r})"


def _t_monomial(e: int) -> str:
    if e == 0:
        return ""
    frac = Fraction(e, 4)
    if frac == 1:
        return "t"
    if frac.denominator == 1 and frac > 0:
        return f"t^{frac.numerator}"
    return f"t^({frac})"


def _int_monomial(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    if k > 0:
        return f"{var}^{k}"
    return f"{var}^({k})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly._raw({0: x} if x else {})
    return NotImplemented


def from_A_power(e: int, coefficient: int = 1) -> LaurentPoly:
    """``coefficient * A^e`` with ``A = t^(-1/4)``."""
    return LaurentPoly._raw({-e: coefficient} if coefficient else {})


def from_t_power(quarters: int, coefficient: int = 1) -> LaurentPoly:
    """``coefficient * t^(quarters/4)``."""
    return LaurentPoly._raw({quarters: coefficient} if coefficient else {})


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
#: loop value d = -A^2 - A^-2
LOOP = from_A_power(2, -1) + from_A_power(-2, -1)


_TERM_RE = re.compile(
    r"""
    ^(?P<coef>\d+)?\s*\*?\s*
    (?:(?P<var>[tA])
       (?:\^(?:(?P<int>-?\d+)|\((?P<num>-?\d+)(?:/(?P<den>\d+))?\)))?
    )?$
    """,
    re.VERBOSE,
)


def parse(text: str, variable: str | None = None) -> LaurentPoly:
    """Parse the textual form produced by :meth:`LaurentPoly.to_string`.

    The variable (``t`` or ``A``) is inferred from the text unless given.
    Fractional exponents must land on quarter powers of ``t``.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return ZERO
    # split into signed terms, leaving minus signs inside parentheses alone
    terms = []
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    out: dict[int, int] = {}
    for raw in terms:
        sign = 1
        body = raw
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse term {raw!r}")
        coef = int(m.group("coef") or 1)
        var = m.group("var")
        if var is None:
            exp = Fraction(0)
        elif m.group("int") is not None:
            exp = Fraction(int(m.group("int")))
        elif m.group("num") is not None:
            exp = Fraction(int(m.group("num")), int(m.group("den") or 1))
        else:
            exp = Fraction(1)
        if var is not None and variable is not None and var != variable:
            raise ValueError(f"mixed variables in {text!r}")
        if var == "A":
            if exp.denominator != 1:
                raise ValueError("A exponents must be integers")
            q = -int(exp)
        else:
            q4 = exp * 4
            if q4.denominator != 1:
                raise ValueError(f"exponent {exp} is not a quarter power of t")
            q = int(q4)
        out[q] = out.get(q, 0) + sign * coef
    return LaurentPoly(out)
