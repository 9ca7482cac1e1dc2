"""Exact scalars of the form q*sqrt(r).

``q`` is a rational number and ``r`` a squarefree nonnegative integer, so
products are always representable and sums are representable exactly when
the radicands agree.  This covers every coefficient that appears in the
two-particle states, Clebsch-Gordan tables, and probability identities
implemented by the rest of the package.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import IncompatibleRadicandsError

Rational = int | Fraction


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split ``n >= 0`` as ``s*s*r`` with ``r`` squarefree; return ``(s, r)``.

    Trial division; intended for the small radicands produced by products
    of state coefficients, not for cryptographic-size integers.
    """
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n in (0, 1):
        return 1, n
    square, rest, m = 1, 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            exp = 0
            while m % p == 0:
                m //= p
                exp += 1
            square *= p ** (exp // 2)
            if exp % 2:
                rest *= p
        p += 1 if p == 2 else 2
    return square, rest * m


@dataclass(frozen=True)
class ExactScalar:
    """A real number ``coefficient * sqrt(radicand)`` in canonical form.

    The constructor normalizes: square factors of the radicand are pulled
    into the rational coefficient, and zero is always stored as ``(0, 1)``.
    Instances are immutable and hashable.
    """

    coefficient: Fraction
    radicand: int = 1

    def __post_init__(self) -> None:
        coef = Fraction(self.coefficient)
        rad = int(self.radicand)
        if rad < 0:
            raise ValueError("radicand must be nonnegative")
        if coef == 0 or rad == 0:
            coef, rad = Fraction(0), 1
        else:
            square, rad = squarefree_decompose(rad)
            coef *= square
        object.__setattr__(self, "coefficient", coef)
        object.__setattr__(self, "radicand", rad)

    @classmethod
    def sqrt(cls, value: Rational) -> "ExactScalar":
        """Exact square root of a nonnegative rational."""
        v = Fraction(value)
        if v < 0:
            raise ValueError("cannot take a real square root of a negative")
        return cls(Fraction(1, v.denominator), v.numerator * v.denominator)

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def squared(self) -> Fraction:
        return self.coefficient * self.coefficient * self.radicand

    def conjugate(self) -> "ExactScalar":
        return self

    def inverse(self) -> "ExactScalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return ExactScalar(1 / (self.coefficient * self.radicand), self.radicand)

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.radicand != other.radicand:
            raise IncompatibleRadicandsError(
                f"cannot add sqrt({self.radicand}) and sqrt({other.radicand}) terms exactly"
            )
        return ExactScalar(self.coefficient + other.coefficient, self.radicand)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return self + (-other)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.coefficient, self.radicand)

    def __abs__(self) -> "ExactScalar":
        return ExactScalar(abs(self.coefficient), self.radicand)

    def __mul__(self, other: "ExactScalar | Rational") -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return ExactScalar(
                self.coefficient * other.coefficient, self.radicand * other.radicand
            )
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.coefficient * other, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: "ExactScalar | Rational") -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.coefficient / other, self.radicand)
        return NotImplemented

    def __float__(self) -> float:
        return float(self.coefficient) * math.sqrt(self.radicand)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"ExactScalar({self.coefficient!r}, {self.radicand})"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)


def format_scalar(s: ExactScalar) -> str:
    """Canonical text form: ``-1/2*sqrt(2)``, ``2/3``, ``sqrt(5)``, ``0``."""
    if s.is_rational:
        return str(s.coefficient)
    if s.coefficient == 1:
        return f"sqrt({s.radicand})"
    if s.coefficient == -1:
        return f"-sqrt({s.radicand})"
    return f"{s.coefficient}*sqrt({s.radicand})"


_SCALAR_RE = re.compile(
    r"""^\s*(?P<sign>[+-]?)\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?:sqrt\(\s*(?P<rad>\d+)\s*\))?\s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> ExactScalar:
    """Parse the canonical text form back into an :class:`ExactScalar`."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("coef") is None and m.group("rad") is None):
        raise ValueError(f"cannot parse exact scalar: {text!r}")
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    if m.group("sign") == "-":
        coef = -coef
    rad = int(m.group("rad")) if m.group("rad") else 1
    return ExactScalar(coef, rad)
