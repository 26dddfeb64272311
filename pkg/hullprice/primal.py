"""
Centralized dispatch: maximize welfare over commitment patterns and quantities.

Commitment patterns (and consumer block patterns) are enumerated. The continuous dispatch of each
pattern combination is cleared exactly, per period by equal marginal value on one node, or by an
exact LP when periods are ramp coupled or a line joins two nodes. Fixed load dispatch maximizes
welfare -cost, so the cost of a fixed-load scenario is -value.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from django.conf import settings

from hullprice import lp
from hullprice.exceptions import InfeasibleError, ScenarioError
from hullprice.intervals import INF, Interval, State, StatusOutputSet
from hullprice.models import PriceKey, Scenario
from hullprice.players import Player, build_players
from hullprice.utils import Number, display_number, is_close, is_exact, is_zero, unique_sorted

logger = logging.getLogger(__name__)

Caps = Dict[str, State]


@dataclass(frozen=True)
class DispatchPoint:
    """
    One dispatch: a state per player, in player order.
    """
    ids: Tuple[str, ...]
    states: Tuple[State, ...]
    objective: Number
    residual: Tuple[Tuple[PriceKey, Number], ...] = ()
    flat: bool = False

    def state(self, player) -> State:
        player_id = getattr(player, 'id', player)
        return self.states[self.ids.index(player_id)]

    @property
    def patterns(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(state.pattern for state in self.states)

    def __str__(self):
        return ", ".join(f"{player_id} {state}" for player_id, state in zip(self.ids, self.states))


@dataclass(frozen=True)
class PrimalSolution:
    value: Number
    optima: Tuple[DispatchPoint, ...] = field(default_factory=tuple)

    @property
    def point(self) -> DispatchPoint:
        return self.optima[0]

    @property
    def is_unique(self) -> bool:
        return len(self.optima) == 1

    @property
    def cost(self) -> Number:
        return -self.value


def _close(a: Number, b: Number) -> bool:
    return a == b if is_exact(a) and is_exact(b) else is_close(a, b)


def cap_set(sset: StatusOutputSet, cap: State) -> StatusOutputSet:
    """
    Part of a set below a cap, u <= cap pattern and q <= cap quantities.
    """
    profiles = []
    for profile in sset:
        if any(u > v for u, v in zip(profile.pattern, cap.pattern)):
            continue
        boxes = tuple(box.clip(-INF, q) for box, q in zip(profile.boxes, cap.quantities))
        profiles.append(profile.with_boxes(boxes))
    return StatusOutputSet(tuple(profiles), sset.method, sset.approximate, sset.resolution, sset.limit)


def caps_from_point(point: DispatchPoint, players: Sequence[Player]) -> Caps:
    return {player.id: point.state(player) for player in players if not player.is_line}


def player_sets(scenario: Scenario, players: Sequence[Player], sets: Dict[str, StatusOutputSet] = None,
                caps: Caps = None) -> List[StatusOutputSet]:
    result = []
    for player in players:
        sset = (sets or {}).get(player.id) or player.original_set()
        if caps and player.id in caps:
            sset = cap_set(sset, caps[player.id])
        result.append(sset)
    return result


# Continuous dispatch of one pattern combination

@dataclass(frozen=True)
class DispatchItem:
    index: int
    player: Player
    pattern: Tuple[int, ...]
    period: int
    interval: Interval

    @property
    def sign(self) -> int:
        return -1 if self.player.is_consumer else 1

    @property
    def shift(self) -> Number:
        return self.player.shift(self.pattern, self.period)

    def response(self, price: Number) -> Interval:
        """
        Quantities maximizing the item's surplus at a marginal value of price.
        """
        curve = self.player.curve(self.period)
        lam = price * self.sign
        _, arg = curve.argmax_linear(lam, self.interval.lo - self.shift, self.interval.hi - self.shift)
        return arg.shifted(self.shift)

    def breakpoints(self) -> List[Number]:
        curve = self.player.curve(self.period)
        lo, hi = self.interval.lo - self.shift, self.interval.hi - self.shift
        points = [curve.right_slope(lo), curve.left_slope(hi)]
        for kink in curve.kinks(lo, hi):
            points += [curve.left_slope(kink), curve.right_slope(kink)]
        return [p * self.sign for p in points]


def _net(items: Sequence[DispatchItem], price: Number) -> Tuple[Number, Number, List[Interval]]:
    responses = [item.response(price) for item in items]
    low = sum(i.sign * (r.lo if i.sign > 0 else r.hi) for i, r in zip(items, responses))
    high = sum(i.sign * (r.hi if i.sign > 0 else r.lo) for i, r in zip(items, responses))
    return low, high, responses


def clear_period(items: Sequence[DispatchItem]) -> Optional[Tuple[List[Number], bool, Number]]:
    """
    Equal marginal value clearing of one node and period.

    :return: Quantity per item, a flag for a flat optimum and the clearing marginal value, None when
        supply and demand cannot meet.
    """
    supply_lo = sum(i.interval.lo for i in items if i.sign > 0)
    supply_hi = sum(i.interval.hi for i in items if i.sign > 0)
    demand_lo = sum(i.interval.lo for i in items if i.sign < 0)
    demand_hi = sum(i.interval.hi for i in items if i.sign < 0)
    if supply_lo > demand_hi and not _close(supply_lo, demand_hi):
        return None
    if supply_hi < demand_lo and not _close(supply_hi, demand_lo):
        return None
    candidates = unique_sorted(p for item in items for p in item.breakpoints())
    candidates = [candidates[0] - 1] + candidates + [candidates[-1] + 1]
    previous = None
    for price in candidates:
        low, high, responses = _net(items, price)
        if (low <= 0 or is_zero(low)) and (high >= 0 or is_zero(high)):
            return _allocate(items, responses, low) + (price,)
        if previous is not None and previous[1] < 0 < low:
            # Net supply moves continuously between breakpoints for quadratic data
            a, a_high = previous
            root = a + (0 - a_high) * (price - a) / (low - a_high)
            low, high, responses = _net(items, root)
            return _allocate(items, responses, low) + (root,)
        previous = (price, high)
    return None


def _allocate(items: Sequence[DispatchItem], responses: Sequence[Interval], low: Number) -> Tuple[List[Number], bool]:
    """
    Start every item at its least net supply and hand out the shortfall in item order.
    """
    quantities = [r.lo if item.sign > 0 else r.hi for item, r in zip(items, responses)]
    missing = -low
    flexible = 0
    for k, (item, response) in enumerate(zip(items, responses)):
        room = response.hi - response.lo
        if room and not is_zero(room):
            flexible += 1
        if is_zero(missing) or missing <= 0:
            continue
        step = min(room, missing)
        quantities[k] += step * item.sign
        missing -= step
    return quantities, flexible > 1


def _lp_dispatch(scenario: Scenario, combo) -> Optional[Tuple[List[Tuple], Number]]:
    """
    Exact LP of one pattern combination, epigraph rows for the convex curves.
    """
    keys = scenario.keys
    columns = {}
    bounds = []

    def column(name, lo, hi):
        columns[name] = len(bounds)
        bounds.append((lo, hi))
        return columns[name]

    A_ub, b_ub = [], []
    for k, (player, profile, component) in enumerate(combo):
        for t, interval in enumerate(component):
            q = column(('q', k, t), interval.lo, interval.hi)
            z = column(('z', k, t), None, None)
            shift = player.shift(profile.pattern, t)
            curve = player.curve(t)
            pieces = curve.pieces(interval.lo - shift, interval.hi - shift)
            if not pieces:
                pieces = [(interval.lo - shift, interval.lo - shift, curve.right_slope(interval.lo - shift))]
            for start, _, slope in pieces:
                # z >= f(start) + slope * (q - shift - start)
                A_ub.append((q, slope, z, -1))
                b_ub.append(slope * (shift + start) - curve.value(start))
        if profile.ramp is not None:
            for t in range(1, len(component)):
                now, before = columns[('q', k, t)], columns[('q', k, t - 1)]
                A_ub.append((now, 1, before, -1))
                b_ub.append(profile.ramp.limit)
                A_ub.append((now, -1, before, 1))
                b_ub.append(profile.ramp.limit)
    width = len(bounds)
    dense_ub = []
    for a, x, b, y in A_ub:
        row = [0] * width
        row[a], row[b] = x, y
        dense_ub.append(row)
    A_eq = []
    for key in keys:
        row = [0] * width
        for k, (player, _, component) in enumerate(combo):
            for term_key, sign in player.injection_terms(key[1]):
                if term_key == key:
                    row[columns[('q', k, key[1])]] += sign
        A_eq.append(row)
    c = [0] * width
    for name, index in columns.items():
        if name[0] == 'z':
            c[index] = 1
    result = lp.linprog(c, A_ub=dense_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[0] * len(keys), bounds=bounds)
    if not result.success:
        return None
    quantities = [
        tuple(result.x[columns[('q', k, t)]] for t in range(len(component)))
        for k, (_, _, component) in enumerate(combo)
    ]
    return quantities, result.fun


def _dispatch(scenario: Scenario, players: Sequence[Player], combo) -> Optional[Tuple[List[State], bool]]:
    coupled = any(profile.ramp is not None for _, profile, _ in combo)
    quadratic = any(player.curve(0).is_quadratic for player in players)
    if (coupled or not scenario.is_one_node) and not quadratic:
        solved = _lp_dispatch(scenario, combo)
        if solved is None:
            return None
        quantities, _ = solved
        return [State(profile.pattern, q) for (_, profile, _), q in zip(combo, quantities)], False
    quantities = [[None] * scenario.period_count for _ in combo]
    flat = False
    for t in scenario.time_grid.periods:
        items = [
            DispatchItem(k, player, profile.pattern, t, component[t])
            for k, (player, profile, component) in enumerate(combo)
        ]
        cleared = clear_period(items)
        if cleared is None:
            return None
        values, period_flat, _ = cleared
        flat = flat or period_flat
        for item, value in zip(items, values):
            quantities[item.index][t] = value
    return [State(profile.pattern, tuple(q)) for (_, profile, _), q in zip(combo, quantities)], flat


def _residual(scenario: Scenario, players: Sequence[Player], states: Sequence[State]) -> Dict[PriceKey, Number]:
    residual = {key: 0 for key in scenario.keys}
    for player, state in zip(players, states):
        for key, value in player.injections(state.quantities).items():
            residual[key] += value
    return residual


def _infeasible_reason(scenario: Scenario, players: Sequence[Player], sets: Sequence[StatusOutputSet]) -> str:
    if scenario.is_one_node:
        for t in scenario.time_grid.periods:
            supply = sum(s.quantities(t).hi for p, s in zip(players, sets) if p.is_producer)
            demand = sum(s.quantities(t).lo for p, s in zip(players, sets) if p.is_consumer)
            if supply < demand:
                node = scenario.network.nodes[0]
                return (
                    f"fixed load {display_number(demand)} at {node} in period {t + 1} exceeds the available "
                    f"capacity {display_number(supply)}"
                )
    return "no commitment pattern balances supply and demand at every node and period"


def solve_primal(scenario: Scenario, caps: Caps = None, sets: Dict[str, StatusOutputSet] = None) -> PrimalSolution:
    """
    Exact centralized dispatch.

    :param scenario: Scenario
    :param caps: Upper bounds per player id on pattern and quantities, realizing restricted problems.
    :param sets: Per player id replacement of the original feasible set.
    :return: PrimalSolution holding every optimal pattern combination.
    """
    players = build_players(scenario)
    psets = player_sets(scenario, players, sets, caps)
    choices = []
    for player, sset in zip(players, psets):
        choices.append([(player, profile, component) for profile in sset for component in profile.components()])
    count = 1
    for options in choices:
        count *= len(options)
    if count > settings.HULLPRICE_PATTERN_LIMIT:
        raise ScenarioError("units", f"{count} pattern combinations exceed the enumeration limit")
    logger.debug("Dispatching %s pattern combinations of %s", count, scenario)

    best, optima = None, []
    for combo in itertools.product(*choices):
        solved = _dispatch(scenario, players, combo)
        if solved is None:
            continue
        states, flat = solved
        value = sum(player.value(state) for player, state in zip(players, states))
        if best is None or (value > best and not _close(value, best)):
            best, optima = value, [(states, flat)]
        elif _close(value, best):
            optima.append((states, flat))
    if best is None:
        raise InfeasibleError(_infeasible_reason(scenario, players, psets))

    ids = tuple(player.id for player in players)
    points, seen = [], set()
    for states, flat in optima:
        signature = tuple(states)
        if signature in seen:
            continue
        seen.add(signature)
        residual = tuple(_residual(scenario, players, states).items())
        points.append(DispatchPoint(ids, tuple(states), best, residual, flat))
    if any(point.flat for point in points):
        logger.debug("Flat optimal dispatch in %s", scenario)
    return PrimalSolution(best, tuple(points))


def welfare_at(scenario: Scenario, point: DispatchPoint, sets: Dict[str, StatusOutputSet] = None) -> Number:
    """
    Objective at a dispatch point, after checking the point is feasible.
    """
    players = build_players(scenario)
    psets = player_sets(scenario, players, sets)
    for player, sset in zip(players, psets):
        state = point.state(player)
        if not sset.contains(state):
            raise InfeasibleError(f"{player} state {state} lies outside its feasible set")
    for key, value in _residual(scenario, players, [point.state(p) for p in players]).items():
        if not is_zero(value):
            raise InfeasibleError(f"balance at {key[0]} in period {key[1] + 1} is off by {display_number(value)}")
    return sum(player.value(point.state(player)) for player in players)


def make_point(scenario: Scenario, states: Dict[str, State], objective: Number = None) -> DispatchPoint:
    """
    DispatchPoint from states keyed by player id. A missing line state is filled with the flow that
    balances the first node.
    """
    players = build_players(scenario)
    resolved = []
    for player in players:
        if player.id in states:
            resolved.append(states[player.id])
        elif player.is_line:
            flows = []
            for t in scenario.time_grid.periods:
                key = (player.nodes[0], t)
                net = sum(
                    p.injections(states[p.id].quantities).get(key, 0) for p in players if not p.is_line
                )
                flows.append(net)
            resolved.append(State((), tuple(flows)))
        else:
            raise KeyError(player.id)
    if objective is None:
        objective = sum(player.value(state) for player, state in zip(players, resolved))
    residual = tuple(_residual(scenario, players, resolved).items())
    return DispatchPoint(tuple(player.id for player in players), tuple(resolved), objective, residual)
