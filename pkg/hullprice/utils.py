import math
from decimal import Decimal, ROUND_HALF_EVEN, ROUND_HALF_UP
from fractions import Fraction
from typing import Iterable, Union

from django.conf import settings

Number = Union[Fraction, float, int]

CENT = Decimal("0.01")


def to_fraction(value) -> Fraction:
    """
    Parse a decimal string, integer or Fraction as an exact rational.

    Floats are converted through their shortest repr so that 0.1 means 1/10.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not quantities")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Not a finite number: {value}")
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    return Fraction(str(value).strip())


def is_exact(value) -> bool:
    return isinstance(value, (Fraction, int))


def tolerance() -> float:
    return settings.HULLPRICE_FLOAT_TOLERANCE


def is_close(a: Number, b: Number, tol: float = None) -> bool:
    """
    Exact comparison for rationals, tolerance comparison once a float is involved.
    """
    if is_exact(a) and is_exact(b):
        return a == b
    if tol is None:
        tol = tolerance()
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(float(a)), abs(float(b)))


def leq(a: Number, b: Number) -> bool:
    return a <= b or is_close(a, b)


def is_zero(value: Number) -> bool:
    return is_close(value, 0)


def exact_sqrt(value: Number) -> Number:
    """
    Square root that stays rational for perfect squares.
    """
    if value < 0:
        raise ValueError(f"Square root of negative number {value}")
    if isinstance(value, (Fraction, int)):
        value = Fraction(value)
        num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if num * num == value.numerator and den * den == value.denominator:
            return Fraction(num, den)
    return math.sqrt(value)


def to_decimal(value: Number) -> Decimal:
    if isinstance(value, (Fraction, int)):
        value = Fraction(value)
        return Decimal(value.numerator) / Decimal(value.denominator)
    return Decimal(repr(float(value)))


def round_cent(value: Number) -> Fraction:
    """
    Round a price to the cent, half up, as prices are published.
    """
    return Fraction(to_decimal(value).quantize(CENT, rounding=ROUND_HALF_UP))


def display_money(value: Number) -> str:
    """
    Two decimals, half-even. Display only.
    """
    if value is None:
        return "-"
    if isinstance(value, float) and math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    result = to_decimal(value).quantize(CENT, rounding=ROUND_HALF_EVEN)
    if result == 0:
        result = abs(result)
    return f"{result:.2f}"


def display_number(value: Number) -> str:
    """
    Short exact-ish representation for quantities, "120" or "15.125" or "61/3".
    """
    if value is None:
        return "-"
    if isinstance(value, float):
        if math.isinf(value):
            return "+inf" if value > 0 else "-inf"
        return f"{value:.6g}"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    decimal = to_decimal(value).normalize()
    if Fraction(decimal) == value:
        return f"{decimal:f}"
    return f"{value.numerator}/{value.denominator}"


def as_json_number(value: Number) -> str:
    """
    Exact payload for structured reports.
    """
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def unique_sorted(values: Iterable[Number]) -> list:
    """
    Sort and drop duplicates, merging floats that are within tolerance of a neighbour.
    """
    result = []
    for value in sorted(values):
        if result and is_close(result[-1], value):
            # Prefer the exact representative
            if not is_exact(result[-1]) and is_exact(value):
                result[-1] = value
            continue
        result.append(value)
    return result
