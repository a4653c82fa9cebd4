"""Exact phase arithmetic, parsing, and formatting."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zxkit.angles import (
    PI,
    ZERO,
    PhaseAngle,
    format_angle,
    parse_angle,
    phase_from_json,
    phase_to_json,
)

exact_angles = st.builds(
    PhaseAngle.exact,
    st.integers(min_value=-64, max_value=64),
    st.integers(min_value=1, max_value=32),
)


def test_normalization_into_one_turn():
    assert PhaseAngle.exact(5, 2) == PhaseAngle.exact(1, 2)
    assert PhaseAngle.exact(-1, 2) == PhaseAngle.exact(3, 2)
    assert PhaseAngle.exact(4, 2).is_zero
    assert PhaseAngle.exact(0, 7) == ZERO


def test_lowest_terms():
    a = PhaseAngle.exact(2, 4)
    assert (a.numerator, a.denominator) == (1, 2)


def test_exact_never_equals_generic():
    # Fraction(1, 2) == 0.5 in plain Python; the wrapper must not conflate
    # an exact half-turn-of-pi with 0.5 radians
    assert PhaseAngle.exact(1, 2) != PhaseAngle.from_radians(0.5)
    assert hash(PhaseAngle.exact(1, 2)) != hash(PhaseAngle.from_radians(0.5))


def test_unit_exact_at_quarter_turns():
    assert ZERO.unit() == 1
    assert PhaseAngle.exact(1, 2).unit() == 1j
    assert PI.unit() == -1
    assert PhaseAngle.exact(3, 2).unit() == -1j


def test_unit_generic():
    u = PhaseAngle.exact(1, 3).unit()
    assert abs(u - complex(math.cos(math.pi / 3), math.sin(math.pi / 3))) < 1e-15


def test_is_odd_quarter():
    assert PhaseAngle.exact(1, 4).is_odd_quarter
    assert PhaseAngle.exact(7, 4).is_odd_quarter
    assert PhaseAngle.exact(3, 4).is_odd_quarter
    assert not PhaseAngle.exact(1, 2).is_odd_quarter
    assert not PhaseAngle.exact(2, 4).is_odd_quarter
    assert not ZERO.is_odd_quarter
    assert not PhaseAngle.from_radians(math.pi / 4).is_odd_quarter


@given(exact_angles, exact_angles)
def test_addition_stays_exact_and_commutes(a, b):
    s = a + b
    assert s.is_exact
    assert s == b + a
    assert isinstance(s.value, Fraction)
    assert 0 <= s.value < 2


@given(exact_angles)
def test_negation_cancels(a):
    assert (a + (-a)).is_zero
    assert a - a == ZERO


@given(exact_angles, st.integers(min_value=-8, max_value=8))
def test_integer_scaling(a, k):
    s = a * k
    total = ZERO
    for _ in range(abs(k)):
        total = total + (a if k >= 0 else -a)
    assert s == total


def test_mixing_exact_and_generic_degrades():
    s = PhaseAngle.exact(1, 2) + PhaseAngle.from_radians(0.25)
    assert not s.is_exact
    assert abs(s.radians - (math.pi / 2 + 0.25)) < 1e-12


def test_radians():
    assert PhaseAngle.exact(1, 2).radians == pytest.approx(math.pi / 2)
    assert PhaseAngle.from_radians(-1.0).radians == pytest.approx(2 * math.pi - 1.0)


@pytest.mark.parametrize(
    "text,num,den",
    [
        ("0", 0, 1),
        ("pi", 1, 1),
        ("-pi", 1, 1),
        ("1/4pi", 1, 4),
        ("-1/2pi", 3, 2),
        ("3/2pi", 3, 2),
        ("7/4pi", 7, 4),
        ("2pi", 0, 1),
        ("10/4pi", 1, 2),
    ],
)
def test_parse_exact(text, num, den):
    a = parse_angle(text)
    assert a.is_exact
    assert (a.numerator, a.denominator) == (num, den)


def test_parse_radians():
    a = parse_angle("0.75rad")
    assert not a.is_exact
    assert a.radians == pytest.approx(0.75)


@pytest.mark.parametrize("text", ["", "pi/4", "1//2pi", "4pi3", "radians", "1/0pi"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_angle(text)


@given(exact_angles)
def test_format_parse_round_trip(a):
    assert parse_angle(format_angle(a)) == a


def test_format_canonical():
    assert format_angle(ZERO) == "0"
    assert format_angle(PI) == "pi"
    assert format_angle(PhaseAngle.exact(3, 2)) == "3/2pi"
    assert format_angle(PhaseAngle.exact(2, 1)) == "0"


@given(exact_angles)
def test_json_round_trip(a):
    assert phase_from_json(phase_to_json(a)) == a


def test_json_generic_round_trip():
    a = PhaseAngle.from_radians(1.25)
    assert phase_from_json(phase_to_json(a)) == a
