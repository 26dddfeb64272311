from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from hullprice.enums import CurveKind
from hullprice.exceptions import ScenarioError
from hullprice.intervals import Interval
from hullprice.utils import Number, as_json_number, is_close, is_exact

__all__ = ('ConvexCurve', 'VariableCostCurve')


@dataclass(frozen=True)
class ConvexCurve:
    """
    Convex function of a non-negative quantity with value 0 at 0.

    Piece i starts at breaks[i] with slope slopes[i], the last piece runs to infinity. An optional
    quadratic term quadratic * x ** 2 is added on top.
    """
    breaks: Tuple[Fraction, ...] = (Fraction(0),)
    slopes: Tuple[Fraction, ...] = (Fraction(0),)
    quadratic: Number = 0

    def __post_init__(self):
        if len(self.breaks) != len(self.slopes) or not self.breaks:
            raise ValueError("Curve needs one slope per break point")
        if self.breaks[0] != 0:
            raise ValueError("First break point must be 0")
        if any(b >= c for b, c in zip(self.breaks, self.breaks[1:])):
            raise ValueError("Break points must increase")
        if any(s > t for s, t in zip(self.slopes, self.slopes[1:])):
            raise ValueError("Slopes must not decrease")
        if self.quadratic < 0:
            raise ValueError("Quadratic coefficient must not be negative")

    @classmethod
    def affine(cls, slope: Number) -> 'ConvexCurve':
        return cls((Fraction(0),), (slope,))

    @property
    def is_quadratic(self) -> bool:
        return self.quadratic != 0

    def value(self, x: Number) -> Number:
        if x < 0 and not is_close(x, 0):
            raise ValueError(f"Curve evaluated at negative quantity {x}")
        total = 0
        for i, start in enumerate(self.breaks):
            if x <= start:
                break
            end = self.breaks[i + 1] if i + 1 < len(self.breaks) else None
            upper = x if end is None or x < end else end
            total += self.slopes[i] * (upper - start)
        if self.quadratic:
            total += self.quadratic * x * x
        return total

    def _piece(self, x: Number, right: bool) -> int:
        index = 0
        for i, start in enumerate(self.breaks):
            if x > start or (right and x == start):
                index = i
        return index

    def right_slope(self, x: Number) -> Number:
        return self.slopes[self._piece(x, right=True)] + 2 * self.quadratic * x

    def left_slope(self, x: Number) -> Number:
        return self.slopes[self._piece(x, right=False)] + 2 * self.quadratic * x

    def kinks(self, lo: Number, hi: Number) -> List[Fraction]:
        return [b for b in self.breaks[1:] if lo < b < hi]

    def pieces(self, lo: Number, hi: Number) -> List[Tuple[Number, Number, Fraction]]:
        """
        (start, end, slope) of every piece overlapping [lo, hi], clipped to it.
        """
        result = []
        for i, start in enumerate(self.breaks):
            end = self.breaks[i + 1] if i + 1 < len(self.breaks) else None
            a = max(start, lo)
            b = hi if end is None else min(end, hi)
            if a < b:
                result.append((a, b, self.slopes[i]))
        return result

    def candidates(self, lam: Number, lo: Number, hi: Number) -> List[Number]:
        """
        Points among which lam * x - f(x) attains its maximum over [lo, hi].
        """
        points = [lo, hi] + self.kinks(lo, hi)
        if self.quadratic:
            for start, end, slope in self.pieces(lo, hi):
                stationary = (lam - slope) / (2 * self.quadratic)
                if start < stationary < end:
                    points.append(stationary)
        return points

    def argmax_linear(self, lam: Number, lo: Number, hi: Number) -> Tuple[Number, Interval]:
        """
        Maximum of lam * x - f(x) over [lo, hi] and the interval of maximizers.
        """
        if lo > hi:
            raise ValueError(f"Empty range [{lo}, {hi}]")
        scored = [(lam * x - self.value(x), x) for x in self.candidates(lam, lo, hi)]
        best = max(value for value, _ in scored)
        exact = all(is_exact(value) for value, _ in scored)
        winners = [x for value, x in scored if (value == best if exact else is_close(value, best))]
        return best, Interval(min(winners), max(winners))


@dataclass(frozen=True)
class VariableCostCurve:
    """
    Variable cost c(g) of a unit as stated in a scenario document.
    """
    kind: CurveKind
    slope: Optional[Fraction] = None
    linear: Optional[Fraction] = None
    quadratic: Optional[Fraction] = None
    segments: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def affine(cls, slope: Number) -> 'VariableCostCurve':
        return cls(CurveKind.AFFINE, slope=slope)

    @classmethod
    def quadratic_curve(cls, linear: Number, quadratic: Number) -> 'VariableCostCurve':
        return cls(CurveKind.QUADRATIC, linear=linear, quadratic=quadratic)

    @classmethod
    def piecewise(cls, segments: Sequence[Tuple[Number, Number]]) -> 'VariableCostCurve':
        return cls(CurveKind.PIECEWISE, segments=tuple((b, s) for b, s in segments))

    def validate(self, path: str):
        if self.kind == CurveKind.AFFINE:
            if self.slope is None:
                raise ScenarioError(f"{path}.slope", "affine cost needs a slope")
            if self.slope < 0:
                raise ScenarioError(f"{path}.slope", "cost must be non-decreasing")
        elif self.kind == CurveKind.QUADRATIC:
            if self.linear is None or self.quadratic is None:
                raise ScenarioError(path, "quadratic cost needs linear and quadratic coefficients")
            if self.linear < 0:
                raise ScenarioError(f"{path}.linear", "cost must be non-decreasing")
            if self.quadratic < 0:
                raise ScenarioError(f"{path}.quadratic", "cost must be convex")
        else:
            if not self.segments:
                raise ScenarioError(f"{path}.segments", "piecewise cost needs at least one segment")
            if self.segments[0][0] != 0:
                raise ScenarioError(f"{path}.segments[0]", "first segment must start at 0")
            for i, ((b0, s0), (b1, s1)) in enumerate(zip(self.segments, self.segments[1:]), start=1):
                if b1 <= b0:
                    raise ScenarioError(f"{path}.segments[{i}]", "break points must increase")
                if s1 < s0:
                    raise ScenarioError(f"{path}.segments[{i}]", "slopes must not decrease (convexity)")
            if self.segments[0][1] < 0:
                raise ScenarioError(f"{path}.segments[0]", "cost must be non-decreasing")

    @property
    def curve(self) -> ConvexCurve:
        if self.kind == CurveKind.AFFINE:
            return ConvexCurve.affine(self.slope)
        if self.kind == CurveKind.QUADRATIC:
            return ConvexCurve((Fraction(0),), (self.linear,), self.quadratic)
        return ConvexCurve(
            tuple(b for b, _ in self.segments),
            tuple(s for _, s in self.segments),
        )

    def to_dict(self) -> dict:
        if self.kind == CurveKind.AFFINE:
            return {'kind': self.kind.value, 'slope': as_json_number(self.slope)}
        if self.kind == CurveKind.QUADRATIC:
            return {
                'kind': self.kind.value,
                'linear': as_json_number(self.linear),
                'quadratic': as_json_number(self.quadratic),
            }
        return {
            'kind': self.kind.value,
            'segments': [[as_json_number(b), as_json_number(s)] for b, s in self.segments],
        }
