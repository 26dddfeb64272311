"""
Market players in one canonical form.

Every player picks a pattern and a quantity per period. Its value (negated cost for producers,
price-sensitive benefit for consumers, 0 for the line) is

    constant(pattern) - sum_t f_t(q_t - shift_t(pattern))

with f_t a ConvexCurve, and its injection into the network is +q for producers, -q for consumers and
-f / +f at the two ends of the line.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from hullprice.enums import ConstructionMethod, PlayerKind
from hullprice.intervals import IntervalUnion, Profile, Ramp, State, StatusOutputSet
from hullprice.models import ConsumerSpec, ConvexCurve, PriceKey, PriceVector, Scenario, UnitSpec
from hullprice.utils import Number

LINE_ID = "ftr"


@dataclass(frozen=True)
class Player:
    id: str
    kind: PlayerKind
    nodes: Tuple[str, ...]
    period_count: int
    unit: Optional[UnitSpec] = None
    consumer: Optional[ConsumerSpec] = None
    capacity: Optional[Fraction] = None

    def __str__(self):
        return self.id

    @property
    def node(self) -> str:
        return self.nodes[0]

    @property
    def label(self) -> str:
        if self.kind == PlayerKind.LINE:
            return str(PlayerKind.LINE.label)
        return self.id

    @property
    def is_producer(self) -> bool:
        return self.kind == PlayerKind.PRODUCER

    @property
    def is_consumer(self) -> bool:
        return self.kind == PlayerKind.CONSUMER

    @property
    def is_line(self) -> bool:
        return self.kind == PlayerKind.LINE

    # Network coupling

    def lam(self, prices: PriceVector, period: int) -> Number:
        """
        Price seen by one unit of the player's quantity in a period.
        """
        if self.is_line:
            return prices[(self.nodes[1], period)] - prices[(self.nodes[0], period)]
        price = prices[(self.node, period)]
        return price if self.is_producer else -price

    def injection_terms(self, period: int) -> List[Tuple[PriceKey, int]]:
        """
        (key, sign): injection at key is sign times the quantity.
        """
        if self.is_line:
            return [((self.nodes[0], period), -1), ((self.nodes[1], period), 1)]
        return [((self.node, period), 1 if self.is_producer else -1)]

    def injections(self, quantities: Tuple[Number, ...]) -> Dict[PriceKey, Number]:
        result = {}
        for t, q in enumerate(quantities):
            for key, sign in self.injection_terms(t):
                result[key] = result.get(key, 0) + sign * q
        return result

    # Feasible set data

    def patterns(self) -> List[Tuple[int, ...]]:
        if self.is_producer:
            return list(itertools.product((0, 1), repeat=self.period_count))
        if self.is_consumer:
            return self.consumer.block_patterns()
        return [()]

    def curve(self, period: int) -> ConvexCurve:
        if self.is_producer:
            return self.unit.curve
        if self.is_consumer:
            return self.consumer.benefit_curve(period)
        return ConvexCurve()

    def shift(self, pattern: Tuple[int, ...], period: int) -> Number:
        if self.is_consumer:
            return self.consumer.fixed_load[period] + self.consumer.block_quantity(pattern, period)
        if self.is_line:
            # The line's curve is flat so its shift only keeps x = q - shift non-negative
            return -self.capacity
        return Fraction(0)

    def constant(self, pattern: Tuple[int, ...]) -> Number:
        if self.is_producer:
            return -self.unit.pattern_cost(pattern)
        if self.is_consumer:
            return self.consumer.block_benefit(pattern)
        return Fraction(0)

    def box(self, pattern: Tuple[int, ...], period: int) -> IntervalUnion:
        if self.is_producer:
            if not pattern[period]:
                return IntervalUnion.point(0)
            return IntervalUnion.closed(self.unit.g_min[period], self.unit.g_max[period])
        if self.is_consumer:
            shift = self.shift(pattern, period)
            return IntervalUnion.closed(shift, shift + self.consumer.elastic_max(period))
        return IntervalUnion.closed(-self.capacity, self.capacity)

    @property
    def ramp(self) -> Optional[Ramp]:
        if self.is_producer and self.unit.ramp_limit is not None:
            return Ramp(self.unit.ramp_limit, self.unit.initial_output)
        return None

    def profile(self, pattern: Tuple[int, ...]) -> Profile:
        boxes = [self.box(pattern, t) for t in range(self.period_count)]
        ramp = self.ramp
        if ramp is not None:
            boxes[0] = boxes[0].clip(ramp.initial - ramp.limit, ramp.initial + ramp.limit)
            if self.period_count == 1:
                ramp = None
        return Profile(tuple(pattern), tuple(boxes), ramp)

    def original_set(self) -> StatusOutputSet:
        return StatusOutputSet(
            tuple(self.profile(pattern) for pattern in self.patterns()), ConstructionMethod.ORIGINAL,
        )

    # Valuation

    def value(self, state: State) -> Number:
        total = self.constant(state.pattern)
        for t, q in enumerate(state.quantities):
            total -= self.curve(t).value(q - self.shift(state.pattern, t))
        return total

    def profit(self, state: State, prices: PriceVector) -> Number:
        return sum(self.lam(prices, t) * q for t, q in enumerate(state.quantities)) + self.value(state)

    def reported_profit(self, state: State, prices: PriceVector) -> Number:
        """
        Profit as published, consumers count the price-sensitive component only.
        """
        profit = self.profit(state, prices)
        if self.is_consumer:
            profit += sum(prices[(self.node, t)] * d for t, d in enumerate(self.consumer.fixed_load))
        return profit


def build_players(scenario: Scenario) -> List[Player]:
    players = [
        Player(unit.id, PlayerKind.PRODUCER, (unit.node,), scenario.period_count, unit=unit)
        for unit in scenario.units
    ]
    players += [
        Player(consumer.id, PlayerKind.CONSUMER, (consumer.node,), scenario.period_count, consumer=consumer)
        for consumer in scenario.consumers
    ]
    if scenario.network.is_two_node:
        players.append(Player(
            LINE_ID, PlayerKind.LINE, scenario.network.nodes, scenario.period_count,
            capacity=scenario.network.line_capacity,
        ))
    return players


def unit_player(unit: UnitSpec, period_count: int = None) -> Player:
    """
    Player of a unit on its own, used by the single-unit curve tools.
    """
    return Player(unit.id, PlayerKind.PRODUCER, (unit.node,), period_count or unit.period_count, unit=unit)


def find_player(players: List[Player], player_id: str) -> Player:
    for player in players:
        if player.id == player_id:
            return player
    raise KeyError(player_id)
