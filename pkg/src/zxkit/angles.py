"""Angle arithmetic modulo 2*pi.

Angles are kept as exact rational multiples of pi (reduced fractions,
normalized into [0, 2*pi)) whenever possible, with plain float radians as
a fallback for generic values.  Sums, negations and integer multiples of
exact angles stay exact; any operation that touches a generic angle
produces a generic result.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction

TWO_PI = 2.0 * math.pi

# e^{i*pi*f} at quarter-turn multiples, exact in floating point
_UNIT_TABLE = {
    Fraction(0): 1.0 + 0.0j,
    Fraction(1, 2): 1.0j,
    Fraction(1, 1): -1.0 + 0.0j,
    Fraction(3, 2): -1.0j,
}

_EXACT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?pi$")
_RAD_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)rad$")


@dataclass(frozen=True)
class PhaseAngle:
    """An angle in [0, 2*pi).

    ``value`` is a Fraction in units of pi for exact angles, or a float in
    radians for generic ones.  Instances normalize on construction, so the
    representation is canonical and hashable.
    """

    value: Fraction | float

    def __post_init__(self) -> None:
        if isinstance(self.value, Fraction):
            object.__setattr__(self, "value", self.value % 2)
        elif isinstance(self.value, float):
            object.__setattr__(self, "value", self.value % TWO_PI)
        else:
            raise TypeError(f"bad angle payload: {self.value!r}")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def exact(num: int, den: int = 1) -> "PhaseAngle":
        """The angle (num/den)*pi."""
        if den <= 0:
            raise ValueError("denominator must be a positive integer")
        return PhaseAngle(Fraction(num, den))

    @staticmethod
    def zero() -> "PhaseAngle":
        return PhaseAngle(Fraction(0))

    @staticmethod
    def pi() -> "PhaseAngle":
        return PhaseAngle(Fraction(1))

    @staticmethod
    def from_radians(value: float) -> "PhaseAngle":
        """A generic (non-exact) angle."""
        return PhaseAngle(float(value))

    # -- predicates ------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    @property
    def is_zero(self) -> bool:
        if self.is_exact:
            return self.value == 0
        return self.value == 0.0

    @property
    def is_odd_quarter(self) -> bool:
        """True iff the angle is an odd multiple of pi/4 (a T-type phase).

        In lowest terms an odd multiple m/4 has denominator exactly 4.
        """
        return self.is_exact and self.value.denominator == 4

    # -- views -----------------------------------------------------------

    @property
    def numerator(self) -> int:
        if not self.is_exact:
            raise ValueError("generic angle has no exact numerator")
        return self.value.numerator

    @property
    def denominator(self) -> int:
        if not self.is_exact:
            raise ValueError("generic angle has no exact denominator")
        return self.value.denominator

    @property
    def radians(self) -> float:
        if self.is_exact:
            return float(self.value) * math.pi
        return self.value

    def unit(self) -> complex:
        """e^{i * angle}, exact at quarter-turn multiples."""
        if self.is_exact and self.value in _UNIT_TABLE:
            return _UNIT_TABLE[self.value]
        return cmath.exp(1j * self.radians)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "PhaseAngle") -> "PhaseAngle":
        if not isinstance(other, PhaseAngle):
            return NotImplemented
        if self.is_exact and other.is_exact:
            return PhaseAngle(self.value + other.value)
        return PhaseAngle(self.radians + other.radians)

    def __sub__(self, other: "PhaseAngle") -> "PhaseAngle":
        if not isinstance(other, PhaseAngle):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "PhaseAngle":
        if self.is_exact:
            return PhaseAngle(-self.value)
        return PhaseAngle(-self.value % TWO_PI)

    def __mul__(self, k: int) -> "PhaseAngle":
        if not isinstance(k, int):
            return NotImplemented
        if self.is_exact:
            return PhaseAngle(self.value * k)
        return PhaseAngle(self.value * k % TWO_PI)

    __rmul__ = __mul__

    # -- equality: an exact angle never equals a generic one -------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhaseAngle):
            return NotImplemented
        if self.is_exact != other.is_exact:
            return False
        return self.value == other.value

    def __hash__(self) -> int:
        return hash((self.is_exact, self.value))

    def __repr__(self) -> str:
        return f"PhaseAngle({format_angle(self)})"

    def __str__(self) -> str:
        return format_angle(self)


ZERO = PhaseAngle.zero()
PI = PhaseAngle.pi()


def parse_angle(text: str) -> PhaseAngle:
    """Parse an angle literal: ``1/4pi``, ``-1/2pi``, ``3pi``, ``pi``, ``0``,
    or ``<float>rad`` for generic radians."""
    text = text.strip()
    if text == "0":
        return ZERO
    if text in ("pi", "+pi"):
        return PI
    if text == "-pi":
        return PhaseAngle.exact(-1)
    m = _EXACT_RE.match(text)
    if m:
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in angle literal: {text!r}")
        return PhaseAngle.exact(num, den)
    m = _RAD_RE.match(text)
    if m:
        return PhaseAngle.from_radians(float(m.group(1)))
    raise ValueError(f"bad angle literal: {text!r}")


def format_angle(angle: PhaseAngle) -> str:
    """Inverse of parse_angle, emitting the normalized form."""
    if not angle.is_exact:
        return f"{angle.value!r}rad"
    f = angle.value
    if f == 0:
        return "0"
    if f == 1:
        return "pi"
    if f.denominator == 1:
        return f"{f.numerator}pi"
    return f"{f.numerator}/{f.denominator}pi"


def phase_to_json(angle: PhaseAngle) -> dict:
    if angle.is_exact:
        return {"num": angle.numerator, "den": angle.denominator}
    return {"rad": angle.value}


def phase_from_json(obj: dict) -> PhaseAngle:
    if "rad" in obj:
        return PhaseAngle.from_radians(float(obj["rad"]))
    if "num" in obj:
        return PhaseAngle.exact(int(obj["num"]), int(obj.get("den", 1)))
    raise ValueError(f"bad phase object: {obj!r}")
