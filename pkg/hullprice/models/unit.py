from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from hullprice.exceptions import ScenarioError
from hullprice.models.curves import ConvexCurve, VariableCostCurve
from hullprice.utils import Number, as_json_number

__all__ = ('UnitSpec',)


@dataclass(frozen=True)
class UnitSpec:
    """
    Generating unit.

    Limits are per period. Total cost is the variable cost of every period plus the no-load cost of
    every online period plus the startup cost of every 0 -> 1 transition, counted from the initial status.
    """
    id: str
    node: str
    g_min: Tuple[Fraction, ...]
    g_max: Tuple[Fraction, ...]
    variable_cost: VariableCostCurve
    no_load_cost: Fraction = Fraction(0)
    startup_cost: Fraction = Fraction(0)
    ramp_limit: Optional[Fraction] = None
    initial_status: bool = False
    initial_output: Fraction = Fraction(0)

    def __str__(self):
        return self.id

    @property
    def curve(self) -> ConvexCurve:
        return self.variable_cost.curve

    @property
    def period_count(self) -> int:
        return len(self.g_max)

    @property
    def fixed_cost(self) -> Fraction:
        """
        Single period fixed cost w, no-load plus startup when initially offline.
        """
        return self.no_load_cost + (0 if self.initial_status else self.startup_cost)

    def pattern_cost(self, pattern: Tuple[int, ...]) -> Fraction:
        """
        No-load and startup costs of a commitment pattern.
        """
        cost = Fraction(0)
        previous = 1 if self.initial_status else 0
        for u in pattern:
            if u:
                cost += self.no_load_cost
                if not previous:
                    cost += self.startup_cost
            previous = u
        return cost

    def cost(self, pattern: Tuple[int, ...], outputs: Tuple[Number, ...]) -> Number:
        curve = self.curve
        return self.pattern_cost(pattern) + sum(curve.value(g) for g in outputs)

    def validate(self, path: str, period_count: int, nodes: Tuple[str, ...]):
        if self.node not in nodes:
            raise ScenarioError(f"{path}.node", f"unknown node {self.node}")
        if len(self.g_min) != period_count or len(self.g_max) != period_count:
            raise ScenarioError(f"{path}.g_max", f"expected {period_count} period values")
        for t, (lo, hi) in enumerate(zip(self.g_min, self.g_max)):
            if lo < 0:
                raise ScenarioError(f"{path}.g_min", "minimum output must not be negative")
            if lo > hi:
                raise ScenarioError(f"{path}.g_min", f"g_min {lo} above g_max {hi} in period {t + 1}")
        self.variable_cost.validate(f"{path}.variable_cost")
        if self.no_load_cost < 0:
            raise ScenarioError(f"{path}.no_load_cost", "must not be negative")
        if self.startup_cost < 0:
            raise ScenarioError(f"{path}.startup_cost", "must not be negative")
        if self.ramp_limit is not None and self.ramp_limit <= 0:
            raise ScenarioError(f"{path}.ramp_limit", "must be positive")
        if not self.initial_status and self.initial_output != 0:
            raise ScenarioError(f"{path}.initial_output", "an offline unit has zero initial output")
        if self.initial_output < 0:
            raise ScenarioError(f"{path}.initial_output", "must not be negative")

    def to_dict(self) -> dict:
        data = {
            'id': self.id,
            'node': self.node,
            'g_min': [as_json_number(v) for v in self.g_min],
            'g_max': [as_json_number(v) for v in self.g_max],
            'variable_cost': self.variable_cost.to_dict(),
            'no_load_cost': as_json_number(self.no_load_cost),
            'startup_cost': as_json_number(self.startup_cost),
            'initial_status': 'on' if self.initial_status else 'off',
            'initial_output': as_json_number(self.initial_output),
        }
        if self.ramp_limit is not None:
            data['ramp_limit'] = as_json_number(self.ramp_limit)
        return data
