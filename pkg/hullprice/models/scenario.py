import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from hullprice.enums import RoundingPolicy
from hullprice.exceptions import ScenarioError
from hullprice.models.consumer import ConsumerSpec
from hullprice.models.network import Network
from hullprice.models.prices import PriceKey
from hullprice.models.unit import UnitSpec

__all__ = ('MIN_COST', 'Scenario', 'TimeGrid')

MIN_COST = "min-cost"


@dataclass(frozen=True)
class TimeGrid:
    period_count: int = 1

    def validate(self, path: str = "periods", exact: bool = True):
        if self.period_count < 1:
            raise ScenarioError(path, "at least one period is needed")
        if exact and self.period_count > 2:
            raise ScenarioError(path, "exact solvers handle one or two periods")

    @property
    def periods(self) -> range:
        return range(self.period_count)


@dataclass(frozen=True)
class Scenario:
    time_grid: TimeGrid
    units: Tuple[UnitSpec, ...]
    consumers: Tuple[ConsumerSpec, ...]
    network: Network = field(default_factory=Network.one_node)
    sunk_cost_convention: str = MIN_COST
    rounding_policy: RoundingPolicy = RoundingPolicy.CENT
    name: str = ""

    def __str__(self):
        return self.name or "scenario"

    @property
    def period_count(self) -> int:
        return self.time_grid.period_count

    @property
    def keys(self) -> Tuple[PriceKey, ...]:
        """
        Price keys, node-major then period.
        """
        return tuple((node, t) for node in self.network.nodes for t in self.time_grid.periods)

    @property
    def dimension(self) -> int:
        return len(self.keys)

    @property
    def is_single_period(self) -> bool:
        return self.period_count == 1

    @property
    def is_one_node(self) -> bool:
        return not self.network.is_two_node

    @property
    def has_fixed_load_only(self) -> bool:
        return all(consumer.is_fixed_load for consumer in self.consumers)

    @property
    def has_quadratic_data(self) -> bool:
        return (
            any(unit.curve.is_quadratic for unit in self.units)
            or any(consumer.quadratic_benefit is not None for consumer in self.consumers)
        )

    def unit(self, unit_id: str) -> UnitSpec:
        for unit in self.units:
            if unit.id == unit_id:
                return unit
        raise KeyError(unit_id)

    def consumer(self, consumer_id: str) -> ConsumerSpec:
        for consumer in self.consumers:
            if consumer.id == consumer_id:
                return consumer
        raise KeyError(consumer_id)

    def fixed_load(self, node: str, period: int):
        return sum(c.fixed_load[period] for c in self.consumers if c.node == node)

    def validate(self, exact: bool = True) -> 'Scenario':
        """
        Check every invariant, raising ScenarioError naming the offending field.
        """
        self.time_grid.validate(exact=exact)
        self.network.validate()
        if not self.units:
            raise ScenarioError("units", "at least one unit is needed")
        if self.sunk_cost_convention != MIN_COST:
            raise ScenarioError("sunk_cost_convention", f"only {MIN_COST} is supported")
        seen: List[str] = []
        nodes = self.network.nodes
        for i, unit in enumerate(self.units):
            unit.validate(f"units[{i}]", self.period_count, nodes)
            seen.append(unit.id)
        for j, consumer in enumerate(self.consumers):
            consumer.validate(f"consumers[{j}]", self.period_count, nodes)
            seen.append(consumer.id)
        duplicates = {player_id for player_id in seen if seen.count(player_id) > 1}
        if duplicates:
            raise ScenarioError("units", f"duplicate player ids {sorted(duplicates)}")
        if self.has_quadratic_data and (self.period_count != 1 or not self.is_one_node):
            raise ScenarioError("units", "quadratic data is supported for one-node single-period scenarios only")
        return self

    def to_dict(self) -> dict:
        data = {
            'periods': self.period_count,
            'network': self.network.to_dict(),
            'units': [unit.to_dict() for unit in self.units],
            'consumers': [consumer.to_dict() for consumer in self.consumers],
            'sunk_cost_convention': self.sunk_cost_convention,
            'rounding_policy': self.rounding_policy.value,
        }
        if self.name:
            data['name'] = self.name
        return data

    def digest(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()[:16]

    def with_rounding(self, policy: Optional[RoundingPolicy]) -> 'Scenario':
        if policy is None or policy == self.rounding_policy:
            return self
        return replace(self, rounding_policy=policy)
