import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from hullprice.exceptions import ScenarioError
from hullprice.models.curves import ConvexCurve
from hullprice.utils import Number, as_json_number

__all__ = ('ConsumerSpec', 'DiscreteBlock', 'QuadraticBenefit')


@dataclass(frozen=True)
class QuadraticBenefit:
    """
    Concave benefit linear * d - quadratic * d ** 2 of the price-sensitive part, 0 <= d <= d_max.
    """
    linear: Fraction
    quadratic: Fraction
    d_max: Fraction


@dataclass(frozen=True)
class DiscreteBlock:
    """
    All-or-nothing consumption cycle: quantity per period, bid price per MWh.
    """
    quantity: Tuple[Fraction, ...]
    price: Fraction

    @property
    def benefit(self) -> Fraction:
        return self.price * sum(self.quantity)


@dataclass(frozen=True)
class ConsumerSpec:
    id: str
    node: str
    fixed_load: Tuple[Fraction, ...]
    elastic_segments: Tuple[Tuple[Tuple[Fraction, Fraction], ...], ...] = ()
    quadratic_benefit: Optional[QuadraticBenefit] = None
    discrete_blocks: Tuple[DiscreteBlock, ...] = ()

    def __str__(self):
        return self.id

    @property
    def period_count(self) -> int:
        return len(self.fixed_load)

    @property
    def is_fixed_load(self) -> bool:
        return (
            self.quadratic_benefit is None
            and not self.discrete_blocks
            and not any(self.segments(t) for t in range(self.period_count))
        )

    @property
    def is_concave(self) -> bool:
        return not self.discrete_blocks

    def segments(self, period: int) -> Tuple[Tuple[Fraction, Fraction], ...]:
        if period < len(self.elastic_segments):
            return self.elastic_segments[period]
        return ()

    def elastic_max(self, period: int) -> Fraction:
        if self.quadratic_benefit is not None:
            return self.quadratic_benefit.d_max
        return sum((qty for _, qty in self.segments(period)), Fraction(0))

    def benefit_curve(self, period: int) -> ConvexCurve:
        """
        Negated benefit of the elastic part, as a convex curve of the elastic quantity.
        """
        if self.quadratic_benefit is not None:
            benefit = self.quadratic_benefit
            return ConvexCurve((Fraction(0),), (-benefit.linear,), benefit.quadratic)
        segments = self.segments(period)
        if not segments:
            return ConvexCurve()
        breaks, slopes, start = [], [], Fraction(0)
        for price, qty in segments:
            breaks.append(start)
            slopes.append(-price)
            start += qty
        # Beyond the last segment nothing is worth buying
        breaks.append(start)
        slopes.append(Fraction(0))
        return ConvexCurve(tuple(breaks), tuple(slopes))

    def block_patterns(self) -> List[Tuple[int, ...]]:
        return list(itertools.product((0, 1), repeat=len(self.discrete_blocks)))

    def block_quantity(self, pattern: Tuple[int, ...], period: int) -> Fraction:
        return sum((block.quantity[period] for v, block in zip(pattern, self.discrete_blocks) if v), Fraction(0))

    def block_benefit(self, pattern: Tuple[int, ...]) -> Fraction:
        return sum((block.benefit for v, block in zip(pattern, self.discrete_blocks) if v), Fraction(0))

    def benefit(self, pattern: Tuple[int, ...], consumption: Tuple[Number, ...]) -> Number:
        """
        Price-sensitive benefit of a consumption profile, the fixed load counts as sunk.
        """
        total = self.block_benefit(pattern)
        for t, d in enumerate(consumption):
            elastic = d - self.fixed_load[t] - self.block_quantity(pattern, t)
            total -= self.benefit_curve(t).value(elastic)
        return total

    def validate(self, path: str, period_count: int, nodes: Tuple[str, ...]):
        if self.node not in nodes:
            raise ScenarioError(f"{path}.node", f"unknown node {self.node}")
        if len(self.fixed_load) != period_count:
            raise ScenarioError(f"{path}.fixed_load", f"expected {period_count} period values")
        if any(d < 0 for d in self.fixed_load):
            raise ScenarioError(f"{path}.fixed_load", "must not be negative")
        if self.elastic_segments and len(self.elastic_segments) != period_count:
            raise ScenarioError(f"{path}.elastic_segments", f"expected {period_count} period lists")
        for t in range(period_count):
            segments = self.segments(t)
            for i, (price, qty) in enumerate(segments):
                if qty <= 0:
                    raise ScenarioError(f"{path}.elastic_segments[{t}][{i}]", "quantity must be positive")
                if price < 0:
                    raise ScenarioError(f"{path}.elastic_segments[{t}][{i}]", "bid price must not be negative")
                if i and price >= segments[i - 1][0]:
                    raise ScenarioError(
                        f"{path}.elastic_segments[{t}][{i}]", "bid prices must strictly decrease",
                    )
        if self.quadratic_benefit is not None:
            benefit = self.quadratic_benefit
            if any(self.segments(t) for t in range(period_count)):
                raise ScenarioError(
                    f"{path}.quadratic_benefit", "use either elastic segments or a quadratic benefit",
                )
            if benefit.quadratic < 0:
                raise ScenarioError(f"{path}.quadratic_benefit.quadratic", "benefit must be concave")
            if benefit.d_max <= 0:
                raise ScenarioError(f"{path}.quadratic_benefit.d_max", "must be positive")
            if benefit.linear < 0 or benefit.linear * benefit.d_max < benefit.quadratic * benefit.d_max ** 2:
                raise ScenarioError(f"{path}.quadratic_benefit", "benefit must be non-negative on [0, d_max]")
        for i, block in enumerate(self.discrete_blocks):
            if len(block.quantity) != period_count:
                raise ScenarioError(f"{path}.discrete_blocks[{i}].quantity", f"expected {period_count} values")
            if any(q < 0 for q in block.quantity) or not any(block.quantity):
                raise ScenarioError(f"{path}.discrete_blocks[{i}].quantity", "must be non-negative and not all 0")
            if block.price < 0:
                raise ScenarioError(f"{path}.discrete_blocks[{i}].price", "must not be negative")

    def to_dict(self) -> dict:
        data = {
            'id': self.id,
            'node': self.node,
            'fixed_load': [as_json_number(d) for d in self.fixed_load],
        }
        if self.elastic_segments:
            data['elastic_segments'] = [
                [[as_json_number(price), as_json_number(qty)] for price, qty in period]
                for period in self.elastic_segments
            ]
        if self.quadratic_benefit is not None:
            data['quadratic_benefit'] = {
                'linear': as_json_number(self.quadratic_benefit.linear),
                'quadratic': as_json_number(self.quadratic_benefit.quadratic),
                'd_max': as_json_number(self.quadratic_benefit.d_max),
            }
        if self.discrete_blocks:
            data['discrete_blocks'] = [
                {'quantity': [as_json_number(q) for q in block.quantity], 'price': as_json_number(block.price)}
                for block in self.discrete_blocks
            ]
        return data
