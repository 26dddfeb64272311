"""
Brute force verifiers on quantity and price grids.

Nothing here goes through the exact solvers: dispatches and best responses are found by exhaustive
floating point search, so agreement with the exact results is evidence for both.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from django.conf import settings

from hullprice.intervals import State, StatusOutputSet
from hullprice.models import PriceVector, Scenario
from hullprice.players import Player, build_players
from hullprice.primal import DispatchPoint, PrimalSolution, player_sets
from hullprice.utils import Number

logger = logging.getLogger(__name__)

TOLERANCE = 1e-7

# Price grid rows evaluated at once
CHUNK = 20000


@dataclass(frozen=True)
class GridSpec:
    """
    Quantity step in MWh and one (lo, hi, step) price axis per (node, period).
    """
    quantity_step: Number = 1
    prices: Tuple[Tuple[Number, Number, Number], ...] = ()

    def __post_init__(self):
        if self.quantity_step <= 0:
            raise ValueError("Quantity step must be positive")
        for lo, hi, step in self.prices:
            if step <= 0 or hi <= lo:
                raise ValueError(f"Bad price axis ({lo}, {hi}, {step})")

    def price_axes(self) -> List[np.ndarray]:
        return [_axis(lo, hi, step) for lo, hi, step in self.prices]

    @property
    def price_step(self) -> float:
        return max(float(step) for _, _, step in self.prices)


def _axis(lo: Number, hi: Number, step: Number) -> np.ndarray:
    lo, hi, step = float(lo), float(hi), float(step)
    count = int(np.floor((hi - lo) / step + TOLERANCE))
    points = lo + step * np.arange(count + 1)
    if hi - points[-1] > TOLERANCE:
        points = np.append(points, hi)
    return points


def _guard(count: int, what: str):
    if count > settings.HULLPRICE_ORACLE_GRID_LIMIT:
        raise ValueError(f"{what} of {count} points is too large for the oracle")


def _sample(player: Player, sset: StatusOutputSet, step: Number) -> List[State]:
    """
    Grid states of a set, box ends included, ramp limits respected.
    """
    states = []
    for profile in sset.closure():
        for component in profile.components():
            axes = [_axis(i.lo, i.hi, step) if i.hi > i.lo else np.array([float(i.lo)]) for i in component]
            for quantities in itertools.product(*axes):
                quantities = tuple(float(q) for q in quantities)
                if profile.ramp is not None and not _ramp_allows(profile.ramp, quantities):
                    continue
                states.append(State(profile.pattern, quantities))
    return states


def _ramp_allows(ramp, quantities: Sequence[float]) -> bool:
    previous = float(ramp.initial)
    for q in quantities:
        if abs(q - previous) > float(ramp.limit) + TOLERANCE:
            return False
        previous = q
    return True


def _table(player: Player, states: Sequence[State], keys) -> Tuple[np.ndarray, np.ndarray]:
    """
    Injection matrix (states x keys) and value vector of a list of states.
    """
    injections = np.zeros((len(states), len(keys)))
    values = np.zeros(len(states))
    for i, state in enumerate(states):
        for key, amount in player.injections(state.quantities).items():
            injections[i, keys.index(key)] = float(amount)
        values[i] = float(player.value(state))
    return injections, values


def _balancers(players: Sequence[Player]) -> List[int]:
    """
    Index of the last producer or consumer at each node, its quantity follows from the balance.
    """
    last = {}
    for i, player in enumerate(players):
        if not player.is_line:
            last[player.node] = i
    return sorted(last.values())


def _settle(player: Player, needed: np.ndarray, keys) -> Tuple[np.ndarray, np.ndarray, List]:
    """
    Best value of a balancing player for every row of required injections, -inf when it cannot
    deliver them.
    """
    columns = [keys.index((player.node, t)) for t in range(player.period_count)]
    sign = 1 if player.is_producer else -1
    quantities = sign * needed[:, columns]
    best = np.full(len(needed), -np.inf)
    chosen = [None] * len(needed)
    for pattern in player.patterns():
        profile = player.profile(pattern)
        feasible = np.ones(len(needed), dtype=bool)
        for t, box in enumerate(profile.boxes):
            inside = np.zeros(len(needed), dtype=bool)
            for interval in box.closure():
                inside |= (quantities[:, t] >= float(interval.lo) - TOLERANCE) & \
                          (quantities[:, t] <= float(interval.hi) + TOLERANCE)
            feasible &= inside
        for row in np.flatnonzero(feasible):
            state = State(tuple(pattern), tuple(float(q) for q in quantities[row]))
            if profile.ramp is not None and not _ramp_allows(profile.ramp, state.quantities):
                continue
            value = float(player.value(state))
            if value > best[row] + TOLERANCE:
                best[row], chosen[row] = value, state
    return best, chosen


def brute_primal(scenario: Scenario, grid: GridSpec) -> PrimalSolution:
    """
    Best dispatch on a quantity grid. The balancing player of each node takes the exact residual.

    :param scenario: Scenario
    :param grid: GridSpec, only the quantity step is used.
    :return: PrimalSolution with the single best grid dispatch.
    """
    players = build_players(scenario)
    keys = list(scenario.keys)
    balancers = _balancers(players)
    free = [i for i in range(len(players)) if i not in balancers]

    tables = []
    for i in free:
        player = players[i]
        states = _sample(player, player.original_set(), grid.quantity_step)
        tables.append((states,) + _table(player, states, keys))
    _guard(int(np.prod([len(states) for states, _, _ in tables] or [1])), "Dispatch grid")

    injections = np.zeros((1, len(keys)))
    values = np.zeros(1)
    for _, table, value in tables:
        injections = (injections[:, None, :] + table[None, :, :]).reshape(-1, len(keys))
        values = (values[:, None] + value[None, :]).reshape(-1)
    logger.debug("Brute force dispatch of %s over %s grid points", scenario, len(values))

    settled = {}
    for i in balancers:
        player = players[i]
        needed = np.zeros_like(injections)
        for t in range(player.period_count):
            column = keys.index((player.node, t))
            needed[:, column] = -injections[:, column]
        best, chosen = _settle(player, needed, keys)
        values = values + best
        settled[i] = chosen

    if not np.isfinite(values).any():
        raise ValueError(f"No balanced grid dispatch for {scenario}, refine the quantity step")
    row = int(np.argmax(values))
    shape = [len(states) for states, _, _ in tables]
    picks = np.unravel_index(row, shape) if shape else ()
    states = [None] * len(players)
    for i, pick, (table_states, _, _) in zip(free, picks, tables):
        states[i] = table_states[pick]
    for i, chosen in settled.items():
        states[i] = chosen[row]
    point = DispatchPoint(tuple(p.id for p in players), tuple(states), float(values[row]))
    return PrimalSolution(float(values[row]), (point,))


@dataclass(frozen=True, eq=False)
class DualScan:
    """
    Dual objective on a price grid. members are the grid prices within slack of the best value.
    """
    keys: Tuple
    prices: np.ndarray
    values: np.ndarray
    slack: float
    best_price: PriceVector = field(default=None)

    @property
    def best(self) -> float:
        return float(self.values.min())

    @property
    def members(self) -> np.ndarray:
        return self.prices[self.values <= self.best + self.slack]

    def contains(self, prices: Sequence[Number], tol: float) -> bool:
        point = np.array([float(p) for p in prices])
        return bool((np.abs(self.members - point).max(axis=1) <= tol + TOLERANCE).any())

    def bounds(self) -> List[Tuple[float, float]]:
        members = self.members
        return [(float(members[:, k].min()), float(members[:, k].max())) for k in range(len(self.keys))]


def grid_dual_scan(scenario: Scenario, sets, grid: GridSpec) -> DualScan:
    """
    Dual objective on every price of the grid, each player's best response taken over grid states.

    The slack admitted around the best value is one grid step times the largest total injection,
    a bound on the dual objective's change between neighbouring grid prices.
    """
    players = build_players(scenario)
    keys = list(scenario.keys)
    if len(grid.prices) != len(keys):
        raise ValueError(f"Price grid has {len(grid.prices)} axes, the scenario has {len(keys)} prices")
    axes = grid.price_axes()
    count = int(np.prod([len(axis) for axis in axes]))
    tables = [
        _table(player, _sample(player, sset, grid.quantity_step), keys)
        for player, sset in zip(players, player_sets(scenario, players, sets))
    ]
    _guard(count * sum(len(values) for _, values in tables), "Price grid")

    prices = np.array(list(itertools.product(*axes)))
    values = np.zeros(len(prices))
    for start in range(0, len(prices), CHUNK):
        block = prices[start:start + CHUNK]
        for injections, player_values in tables:
            values[start:start + CHUNK] += (block @ injections.T + player_values[None, :]).max(axis=1)
    bound = sum(float(np.abs(injections).sum(axis=1).max()) for injections, _ in tables)
    best = prices[int(np.argmin(values))]
    logger.debug("Scanned %s prices of %s", len(prices), scenario)
    return DualScan(
        keys=tuple(keys),
        prices=prices,
        values=values,
        slack=bound * grid.price_step,
        best_price=PriceVector(tuple(keys), tuple(float(p) for p in best)),
    )
