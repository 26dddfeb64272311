"""
Opportunity sets.

A dispatch belongs to the opportunity set when it stays the centralized optimum after every player's
pattern and quantities are capped at the dispatch itself. Its projection on one player (omega bar),
the player's sunk cost states (psi) and the modified feasible set built from both are constructed
here, exactly where a closed form applies and by a verified grid sweep elsewhere.
"""
import functools
import itertools
import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from multiprocessing import Pool
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from django.conf import settings

from hullprice.curvelib import economic_min_output, fit_roots, profit_max
from hullprice.enums import ConstructionMethod
from hullprice.exceptions import ConstructionError, InfeasibleError
from hullprice.intervals import INF, Interval, IntervalUnion, Profile, State, StatusOutputSet, fraction_grid
from hullprice.models import PriceVector, Scenario, UnitSpec, VariableCostCurve
from hullprice.players import Player, build_players, find_player, unit_player
from hullprice.primal import (
    DispatchItem, DispatchPoint, caps_from_point, clear_period, make_point, solve_primal, welfare_at,
)
from hullprice.utils import Number, display_number, is_close, is_exact, is_zero, to_fraction, unique_sorted

logger = logging.getLogger(__name__)

# Symbolic epsilon: the closed limit of the inflated sets
LIMIT = "+0"

REFINE_STEPS = 16

Epsilon = Union[str, Number, Sequence[Number]]


@dataclass(frozen=True)
class Membership:
    """
    Outcome of the fixed point test. Truthy when the candidate passes.

    margin is the candidate welfare minus the capped optimum, 0 for members.
    """
    member: bool
    reason: str = ""
    margin: Optional[Number] = None

    def __bool__(self):
        return self.member


@dataclass(frozen=True)
class OpportunitySets:
    player_id: str
    omega_bar: StatusOutputSet
    psi: StatusOutputSet
    modified: StatusOutputSet

    @property
    def method(self) -> ConstructionMethod:
        return self.omega_bar.method


def _same(a: Number, b: Number) -> bool:
    return a == b if is_exact(a) and is_exact(b) else is_close(a, b)


def _resolve(scenario: Scenario, player) -> Tuple[List[Player], Player]:
    players = build_players(scenario)
    return players, find_player(players, getattr(player, 'id', player))


def _resolution(resolution) -> Fraction:
    if resolution is None:
        resolution = settings.HULLPRICE_SWEEP_RESOLUTION
    resolution = to_fraction(resolution)
    if resolution <= 0:
        raise ValueError(f"Sweep resolution must be positive, got {resolution}")
    return resolution


def _single_node_period(scenario: Scenario, construction: str):
    if not scenario.is_one_node or not scenario.is_single_period:
        raise ConstructionError(f"{construction} needs one node and one period, use cap_sweep")


def _positive(box: IntervalUnion) -> IntervalUnion:
    return box & IntervalUnion([Interval(0, INF, lo_open=True)])


def _minkowski(a: IntervalUnion, b: IntervalUnion) -> IntervalUnion:
    return IntervalUnion(Interval(x.lo + y.lo, x.hi + y.hi) for x in a.closure() for y in b.closure())


# Fixed point test

def opportunity_membership(scenario: Scenario, candidate: DispatchPoint) -> Membership:
    """
    Check that a dispatch stays optimal once every player is capped at its own state in it.

    :param scenario: Scenario
    :param candidate: Dispatch, one state per player.
    :return: Membership, falsy with a reason when the candidate is infeasible or beaten.
    """
    try:
        value = welfare_at(scenario, candidate)
    except InfeasibleError as e:
        return Membership(False, str(e))
    players = build_players(scenario)
    try:
        capped = solve_primal(scenario, caps=caps_from_point(candidate, players))
    except InfeasibleError as e:
        return Membership(False, f"capped problem infeasible: {e}")
    margin = value - capped.value
    if margin > 0 or _same(margin, 0):
        return Membership(True, margin=0)
    return Membership(
        False,
        f"capped optimum {display_number(capped.value)} exceeds {display_number(value)}",
        margin,
    )


# Fixed load, one node, one period

def omega_bar_fixed_load(scenario: Scenario, player) -> StatusOutputSet:
    """
    Exact projection for pure fixed load on one node.

    Every balanced feasible dispatch is a fixed point except the ones keeping a unit with a fixed cost
    online at zero output, so the projection is the unit's box intersected with the demand minus
    whatever the other units can jointly produce.
    """
    players, player = _resolve(scenario, player)
    _single_node_period(scenario, "Fixed load construction")
    if not scenario.has_fixed_load_only:
        raise ConstructionError("Fixed load construction needs pure fixed load consumers, use cap_sweep")
    if not player.is_producer:
        raise ConstructionError("Fixed load construction covers producers")
    demand = sum(consumer.fixed_load[0] for consumer in scenario.consumers)
    others = IntervalUnion.point(0)
    for other in players:
        if other.is_producer and other.id != player.id:
            others = _minkowski(others, other.original_set().quantities(0))
    remainder = others.negated().shifted(demand)

    profiles = []
    if remainder.contains(0):
        profiles.append(Profile((0,), (IntervalUnion.point(0),)))
    on = remainder & player.profile((1,)).boxes[0]
    if player.unit.fixed_cost:
        on = _positive(on)
    profiles.append(Profile((1,), (on,)))
    result = StatusOutputSet(tuple(profiles), ConstructionMethod.EXACT_FIXED_LOAD)
    logger.debug("Fixed load opportunity set of %s: %s", player, result)
    return result


def _unit(scenario: Scenario, unit) -> UnitSpec:
    if isinstance(unit, UnitSpec):
        return unit
    return scenario.unit(getattr(unit, 'id', unit))


def fixed_load_bounds(scenario: Scenario, unit) -> Tuple[Number, Number]:
    """
    Output range of a unit in the fixed load opportunity set when every unit has zero minimum output.

    :return: (lowest, highest) output, max(d - others' capacity, 0) and min(d, g_max).
    """
    unit = _unit(scenario, unit)
    _single_node_period(scenario, "Fixed load bounds")
    if any(other.g_min[0] for other in scenario.units):
        raise ConstructionError("Fixed load bounds assume zero minimum output for every unit")
    demand = sum(consumer.fixed_load[0] for consumer in scenario.consumers)
    others = sum((other.g_max[0] for other in scenario.units if other.id != unit.id), Fraction(0))
    return max(demand - others, Fraction(0)), min(demand, unit.g_max[0])


def is_lnmgu(scenario: Scenario, unit) -> bool:
    """
    Whether the unit's economic minimum output exceeds the fixed load.
    """
    unit = _unit(scenario, unit)
    demand = sum(consumer.fixed_load[0] for consumer in scenario.consumers)
    return economic_min_output(unit) > demand


# Price-sensitive demand, zero minimum output

def _consumer_item(index: int, consumer: Player) -> DispatchItem:
    return DispatchItem(index, consumer, (), 0, consumer.box((), 0).intervals[0])


def _sole_supplier_max(players: Sequence[Player], player: Player) -> Number:
    """
    Output of the unit when it serves the whole market alone, ties going to the larger output.
    """
    g_max = player.unit.g_max[0]
    consumers = [other for other in players if other.is_consumer]
    fixed = sum((consumer.consumer.fixed_load[0] for consumer in consumers), Fraction(0))
    if fixed >= g_max:
        return g_max
    items = [DispatchItem(0, player, (1,), 0, Interval(0, g_max))]
    items += [_consumer_item(k, consumer) for k, consumer in enumerate(consumers, 1)]
    cleared = clear_period(items)
    if cleared is None:
        return Fraction(0)
    quantities, _, price = cleared
    demand = sum(item.response(price).hi for item in items[1:])
    output = min(items[0].response(price).hi, demand)
    if fixed > 0:
        return output
    on = sum(item.player.value(State(item.pattern, (q,))) for item, q in zip(items, quantities))
    off = sum(consumer.value(State((), (consumer.shift((), 0),))) for consumer in consumers)
    if on > off or _same(on, off):
        return output
    return Fraction(0)


def _aggregate_benefit(consumers: Sequence[Player], total: Number) -> Number:
    """
    Largest total benefit of the consumers buying exactly total.
    """
    supply = UnitSpec("supply", consumers[0].node, (total,), (total,), VariableCostCurve.affine(0))
    items = [DispatchItem(0, unit_player(supply, 1), (1,), 0, Interval.point(total))]
    items += [_consumer_item(k, consumer) for k, consumer in enumerate(consumers, 1)]
    cleared = clear_period(items)
    if cleared is None:
        return -INF
    quantities, _, _ = cleared
    return sum(item.player.value(State((), (q,))) for item, q in zip(items[1:], quantities[1:]))


def _bisect(function: Callable[[Number], Number], lo: Number, hi: Number) -> float:
    lo, hi = float(lo), float(hi)
    for _ in range(100):
        middle = (lo + hi) / 2
        if function(middle) < 0:
            lo = middle
        else:
            hi = middle
    return hi


def _min_viable_output(players: Sequence[Player], player: Player, g_hi: Number) -> Number:
    """
    Smallest output whose cost including the fixed cost the consumers' benefit covers.
    """
    unit = player.unit
    consumers = [other for other in players if other.is_consumer]

    def surplus(g):
        return _aggregate_benefit(consumers, g) - unit.curve.value(g) - unit.fixed_cost

    points = [Fraction(0), g_hi] + list(unit.curve.kinks(0, g_hi))
    segments = sorted(
        (segment for consumer in consumers for segment in consumer.consumer.segments(0)),
        key=lambda segment: -segment[0],
    )
    total = Fraction(0)
    for _, qty in segments:
        total += qty
        points.append(total)
    for consumer in consumers:
        if consumer.consumer.quadratic_benefit is not None:
            points.append(consumer.consumer.quadratic_benefit.d_max)
    previous = None
    for g in unique_sorted(p for p in points if 0 <= p <= g_hi):
        value = surplus(g)
        if value < 0 and not is_zero(value):
            previous = (g, value)
            continue
        if previous is None:
            return g
        a, at_a = previous
        middle = (a + g) / 2
        roots = fit_roots([(a, at_a), (middle, surplus(middle)), (g, value)], a, g)
        root = min(roots) if roots else g
        if not is_zero(surplus(root)) and root != g:
            root = _bisect(surplus, a, g)
        return root
    return g_hi


def omega_bar_price_sensitive(scenario: Scenario, player) -> StatusOutputSet:
    """
    Exact projection for one node and one period when every unit has zero minimum output.

    The largest output is the unit's output serving the market alone. Below it the unit can go down to
    the output whose cost the consumers still cover, or to whatever the fixed load leaves it when the
    other units run flat out.
    """
    players, player = _resolve(scenario, player)
    _single_node_period(scenario, "Zero minimum output construction")
    if not player.is_producer:
        raise ConstructionError("Zero minimum output construction covers producers")
    if any(unit.g_min[0] != 0 for unit in scenario.units):
        raise ConstructionError("A unit has a minimum output, use cap_sweep")
    if not all(consumer.is_concave for consumer in scenario.consumers):
        raise ConstructionError("Discrete consumption blocks present, use cap_sweep")
    unit = player.unit
    fixed = sum((consumer.fixed_load[0] for consumer in scenario.consumers), Fraction(0))
    g_hi = _sole_supplier_max(players, player)
    off = Profile((0,), (IntervalUnion.point(0),))

    if fixed > 0:
        others = sum((other.g_max[0] for other in scenario.units if other.id != unit.id), Fraction(0))
        g_lo = max(fixed - others, Fraction(0))
        on = IntervalUnion.closed(g_lo, g_hi)
        profiles = [Profile((1,), (_positive(on) if unit.fixed_cost else on,))]
        if g_lo == 0:
            profiles.insert(0, off)
    elif g_hi > 0:
        g_lo = _min_viable_output(players, player, g_hi) if unit.fixed_cost else Fraction(0)
        profiles = [off, Profile((1,), (IntervalUnion.closed(g_lo, g_hi),))]
    elif unit.fixed_cost:
        profiles = [off]
    else:
        profiles = [off, Profile((1,), (IntervalUnion.point(0),))]
    result = StatusOutputSet(tuple(profiles), ConstructionMethod.EXACT_ZERO_MIN)
    logger.debug("Opportunity set of %s: %s", player, result)
    return result


# Grid sweep

def _grid(interval: Interval, resolution: Fraction) -> List[Number]:
    if interval.is_point:
        return [interval.lo]
    return [q for q in fraction_grid(interval.lo, interval.hi, resolution) if interval.contains(q)]


def _grid_states(player: Player, resolution: Fraction) -> List[State]:
    states = []
    for profile in player.original_set():
        for component in profile.components():
            axes = [_grid(interval, resolution) for interval in component]
            for quantities in itertools.product(*axes):
                if profile.contains(quantities, closure=False):
                    states.append(State(profile.pattern, tuple(quantities)))
    return states


def _evaluate(task: Tuple[Scenario, DispatchPoint]) -> Membership:
    scenario, point = task
    return opportunity_membership(scenario, point)


def _balanced_points(scenario: Scenario, players: Sequence[Player], resolution: Fraction) -> List[DispatchPoint]:
    """
    Grid dispatches that balance every node, the last player of each node absorbing the residual.
    """
    balancing = {}
    for player in players:
        if not player.is_line:
            balancing[player.node] = player
    balancers = [balancing[node] for node in scenario.network.nodes if node in balancing]
    free_nodes = [node for node in scenario.network.nodes if node not in balancing]
    enumerated = [player for player in players if player not in balancers]
    grids = [_grid_states(player, resolution) for player in enumerated]
    count = math.prod(len(grid) for grid in grids)
    if count > settings.HULLPRICE_SWEEP_LIMIT:
        raise ConstructionError(
            f"{count} grid states exceed the sweep limit of {settings.HULLPRICE_SWEEP_LIMIT}, coarsen the resolution"
        )
    logger.debug("Sweeping %s grid states of %s at resolution %s", count, scenario, resolution)
    balancer_sets = [player.original_set() for player in balancers]
    periods = scenario.time_grid.periods

    points = []
    for combo in itertools.product(*grids):
        residual = {key: 0 for key in scenario.keys}
        for player, state in zip(enumerated, combo):
            for key, value in player.injections(state.quantities).items():
                residual[key] += value
        if any(not is_zero(residual[(node, t)]) for node in free_nodes for t in periods):
            continue
        options = []
        for player, sset in zip(balancers, balancer_sets):
            sign = 1 if player.is_producer else -1
            quantities = tuple(-residual[(player.node, t)] * sign for t in periods)
            matches = [
                State(profile.pattern, quantities)
                for profile in sset if profile.contains(quantities, closure=False)
            ]
            if not matches:
                break
            options.append(matches)
        else:
            for extra in itertools.product(*options):
                states = {player.id: state for player, state in zip(enumerated, combo)}
                states.update({player.id: state for player, state in zip(balancers, extra)})
                points.append(make_point(scenario, states))
    return points


@functools.lru_cache(maxsize=16)
def _sweep(scenario: Scenario, resolution: Fraction) -> Tuple[Tuple[DispatchPoint, Membership], ...]:
    players = build_players(scenario)
    try:
        optima = solve_primal(scenario).optima
    except InfeasibleError:
        optima = ()
    known = {point.states for point in optima}
    points = [point for point in _balanced_points(scenario, players, resolution) if point.states not in known]
    processes = settings.HULLPRICE_SWEEP_PROCESSES
    tasks = [(scenario, point) for point in points]
    if processes > 1 and len(tasks) > 1:
        with Pool(processes) as pool:
            verdicts = pool.map(_evaluate, tasks)
    else:
        verdicts = [_evaluate(task) for task in tasks]
    members = sum(1 for verdict in verdicts if verdict)
    logger.debug("%s of %s swept dispatches are fixed points", members, len(points))
    return tuple((point, Membership(True, "centralized optimum", 0)) for point in optima) + tuple(
        zip(points, verdicts)
    )


def _runs(values: Sequence[Number], seen: Sequence[Number], resolution: Fraction) -> List[Interval]:
    """
    Intervals joining kept values that are one grid step apart with no rejected value between.
    """
    kept = set(values)
    runs, start, last = [], None, None
    for value in unique_sorted(set(seen) | kept):
        if value not in kept:
            if start is not None:
                runs.append(Interval(start, last))
            start = None
        elif start is not None and value - last <= resolution:
            last = value
        else:
            if start is not None:
                runs.append(Interval(start, last))
            start = last = value
    if start is not None:
        runs.append(Interval(start, last))
    return runs


def _assemble(player: Player, kept: Sequence[State], seen: Sequence[State], resolution: Fraction) -> List[Profile]:
    """
    Rebuild boxes from grid states, joining neighbours one period at a time from the last.
    """
    if not kept:
        return []
    entries = {(state.pattern, state.quantities, ()) for state in kept}
    for t in reversed(range(len(kept[0].quantities))):
        groups, seen_values = {}, {}
        for pattern, head, tail in entries:
            groups.setdefault((pattern, head[:t], tail), []).append(head[t])
        for state in seen:
            seen_values.setdefault((state.pattern, state.quantities[:t]), []).append(state.quantities[t])
        entries = set()
        for (pattern, head, tail), values in groups.items():
            for run in _runs(values, seen_values.get((pattern, head), values), resolution):
                entries.add((pattern, head, (run,) + tail))
    profiles = [
        Profile(pattern, tuple(IntervalUnion([interval]) for interval in tail), player.profile(pattern).ramp)
        for pattern, _, tail in entries
    ]
    return sorted(profiles, key=lambda profile: (profile.pattern, tuple(box.lo for box in profile.boxes)))


def _blend(scenario: Scenario, start: DispatchPoint, end: DispatchPoint, share: Number) -> DispatchPoint:
    states = {
        player_id: State(a.pattern, tuple(x + share * (y - x) for x, y in zip(a.quantities, b.quantities)))
        for player_id, a, b in zip(start.ids, start.states, end.states)
    }
    return make_point(scenario, states)


def _distance(a: DispatchPoint, b: DispatchPoint) -> Number:
    return sum(abs(x - y) for s, t in zip(a.states, b.states) for x, y in zip(s.quantities, t.quantities))


def _refine_end(scenario: Scenario, player: Player, pattern, end: Number, direction: int,
                evaluated, resolution: Fraction) -> Number:
    """
    Move an interval end found on the grid to the exact boundary of the fixed points.

    Walks the segment from the nearest rejected grid dispatch to the member, by secant steps on the
    welfare margin, which is exact where the margin is affine.
    """
    inside = [point for point, verdict in evaluated if verdict and point.state(player) == State(pattern, (end,))]
    outside = []
    for point, verdict in evaluated:
        state = point.state(player)
        if verdict or verdict.margin is None or state.pattern != pattern:
            continue
        if 0 < (state.quantities[0] - end) * direction <= resolution:
            outside.append((point, verdict))
    pairs = [
        (_distance(a, b), index, a, b, verdict)
        for index, (a, (b, verdict)) in enumerate(itertools.product(inside, outside))
        if a.patterns == b.patterns
    ]
    if not pairs:
        return end
    _, _, member, rejected, verdict = min(pairs, key=lambda pair: (pair[0], pair[1]))

    negatives = [(Fraction(0), verdict.margin)]
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(REFINE_STEPS):
        candidate = None
        if len(negatives) > 1:
            (s0, m0), (s1, m1) = negatives[-2:]
            if m1 != m0:
                candidate = s1 - m1 * (s1 - s0) / (m1 - m0)
        if candidate is not None and _same(candidate, hi):
            break
        if candidate is None or not lo < candidate < hi:
            candidate = (lo + hi) / 2
        outcome = opportunity_membership(scenario, _blend(scenario, rejected, member, candidate))
        if outcome:
            hi = candidate
        elif outcome.margin is None:
            break
        else:
            lo = candidate
            negatives.append((candidate, outcome.margin))
    return _blend(scenario, rejected, member, hi).state(player).quantities[0]


def _refine(scenario: Scenario, player: Player, profiles: Sequence[Profile], evaluated,
            resolution: Fraction) -> List[Profile]:
    refined = []
    for profile in profiles:
        intervals = [
            Interval(
                _refine_end(scenario, player, profile.pattern, interval.lo, -1, evaluated, resolution),
                _refine_end(scenario, player, profile.pattern, interval.hi, 1, evaluated, resolution),
            )
            for interval in profile.boxes[0]
        ]
        refined.append(profile.with_boxes((IntervalUnion(intervals),)))
    return refined


def _zero_statuses(player: Player, sset: StatusOutputSet) -> StatusOutputSet:
    """
    Report a zero output state under every commitment pattern that costs nothing.
    """
    if not player.is_producer:
        return sset
    zero_profiles = [profile for profile in sset if all(box == IntervalUnion.point(0) for box in profile.boxes)]
    if not zero_profiles:
        return sset
    zeros = zero_profiles[0].boxes
    profiles = list(sset.profiles)
    for pattern in player.patterns():
        if player.unit.pattern_cost(pattern) == 0 and not any(p.pattern == pattern for p in zero_profiles):
            profiles.append(Profile(pattern, zeros))
    return replace(sset, profiles=tuple(profiles))


def cap_sweep(scenario: Scenario, player, resolution=None, refine: bool = True) -> StatusOutputSet:
    """
    Opportunity set projection from a grid of capped dispatches.

    Every balanced grid dispatch is put through the fixed point test, the kept states of the player are
    joined into intervals and, for single-period sets, interval ends are moved to the exact boundary.

    :param scenario: Scenario
    :param player: Player or player id.
    :param resolution: Grid step in MWh, HULLPRICE_SWEEP_RESOLUTION by default.
    :param refine: Refine interval ends of single-period sets.
    :return: StatusOutputSet marked approximate with the resolution used.
    """
    players, player = _resolve(scenario, player)
    resolution = _resolution(resolution)
    evaluated = _sweep(scenario, resolution)
    kept = [point.state(player) for point, verdict in evaluated if verdict]
    seen = [point.state(player) for point, _ in evaluated]
    profiles = _assemble(player, kept, seen, resolution)
    if refine and scenario.is_single_period and not player.is_line:
        profiles = _refine(scenario, player, profiles, evaluated, resolution)
    result = StatusOutputSet(tuple(profiles), ConstructionMethod.CAP_SWEEP, approximate=True, resolution=resolution)
    result = _zero_statuses(player, result).merged()
    logger.debug("Swept opportunity set of %s: %s", player, result)
    return result


def omega_bar_consumer(scenario: Scenario, consumer, resolution=None) -> StatusOutputSet:
    """
    Consumption projection of the opportunity set.

    A fixed load consumer only has its load. A single concave consumer facing a single unit mirrors the
    unit's set through the balance, everything else is swept.
    """
    players, player = _resolve(scenario, consumer)
    if not player.is_consumer:
        raise ValueError(f"{player} is not a consumer")
    if player.consumer.is_fixed_load:
        boxes = tuple(IntervalUnion.point(d) for d in player.consumer.fixed_load)
        return StatusOutputSet((Profile((), boxes),), ConstructionMethod.EXACT_FIXED_LOAD)
    producers = [other for other in players if other.is_producer]
    consumers = [other for other in players if other.is_consumer]
    if (scenario.is_one_node and scenario.is_single_period and len(producers) == 1 and len(consumers) == 1
            and player.consumer.is_concave):
        try:
            supply = omega_bar_price_sensitive(scenario, producers[0])
        except ConstructionError as e:
            logger.debug("No mirror for %s: %s", player, e)
        else:
            box = supply.quantities(0) & player.box((), 0)
            return StatusOutputSet((Profile((), (box,)),), ConstructionMethod.MIRROR)
    return cap_sweep(scenario, player, resolution)


def omega_bar(scenario: Scenario, player, resolution=None) -> StatusOutputSet:
    """
    Opportunity set projection by the most exact construction that applies.
    """
    players, player = _resolve(scenario, player)
    if player.is_line:
        return player.original_set()
    if player.is_consumer:
        return omega_bar_consumer(scenario, player, resolution)
    constructions = []
    if scenario.is_one_node and scenario.is_single_period:
        if scenario.has_fixed_load_only:
            constructions.append(omega_bar_fixed_load)
        constructions.append(omega_bar_price_sensitive)
    for construction in constructions:
        try:
            return construction(scenario, player)
        except ConstructionError as e:
            logger.debug("%s", e)
    logger.info("Sweeping the opportunity set of %s", player)
    return cap_sweep(scenario, player, resolution)


# Sunk cost states and modified sets

def psi_set(scenario: Scenario, player) -> StatusOutputSet:
    """
    States at the sunk cost (producers) or sunk benefit (consumers).

    The sunk cost is the least cost over the feasible set, the sunk benefit the benefit of the least
    consumption.
    """
    players, player = _resolve(scenario, player)
    if player.is_line:
        return player.original_set()
    if player.is_consumer:
        consumer = player.consumer
        pattern = tuple(0 for _ in consumer.discrete_blocks)
        boxes = []
        for t in range(player.period_count):
            lo = player.shift(pattern, t)
            segments = consumer.segments(t)
            free = bool(segments) and consumer.quadratic_benefit is None and all(p == 0 for p, _ in segments)
            boxes.append(IntervalUnion.closed(lo, lo + consumer.elastic_max(t)) if free else IntervalUnion.point(lo))
        return StatusOutputSet((Profile(pattern, tuple(boxes)),), ConstructionMethod.SUNK)
    zero = PriceVector.uniform(scenario.keys, 0)
    best = profit_max(player, player.original_set(), zero)
    result = StatusOutputSet(best.argmax.profiles, ConstructionMethod.SUNK)
    return _zero_statuses(player, result)


def _amounts(epsilon: Epsilon, periods: int) -> Optional[Tuple[Fraction, ...]]:
    if isinstance(epsilon, str):
        if epsilon != LIMIT:
            raise ValueError(f"Unknown epsilon {epsilon!r}, use a positive quantity or {LIMIT!r}")
        return None
    if isinstance(epsilon, (list, tuple)):
        amounts = tuple(to_fraction(value) for value in epsilon)
    else:
        amounts = (to_fraction(epsilon),) * periods
    if len(amounts) != periods or any(amount <= 0 for amount in amounts):
        raise ValueError(f"Epsilon needs {periods} positive values")
    return amounts


def modified_set(player: Player, omega_bar: StatusOutputSet, psi: StatusOutputSet,
                 epsilon: Epsilon = LIMIT) -> StatusOutputSet:
    """
    Sunk states plus every feasible state within epsilon of the opportunity set.

    :param player: Player
    :param omega_bar: Opportunity set projection of the player.
    :param psi: Sunk cost states of the player.
    :param epsilon: Positive quantity, one per period, or LIMIT for the closed limit set.
    :return: StatusOutputSet, flagged as a limit set for LIMIT.
    """
    if player.is_line:
        return player.original_set()
    amounts = _amounts(epsilon, player.period_count)
    profiles = []
    for target in player.original_set():
        for source in omega_bar.closure():
            boxes = [
                (box if amounts is None else box.inflate(amounts[t])) & allowed
                for t, (box, allowed) in enumerate(zip(source.boxes, target.boxes))
            ]
            profile = Profile(target.pattern, tuple(boxes), target.ramp)
            if not profile.is_empty and profile not in profiles:
                profiles.append(profile)
    result = StatusOutputSet(
        tuple(profiles),
        ConstructionMethod.LIMIT if amounts is None else ConstructionMethod.INFLATED,
        approximate=omega_bar.approximate,
        resolution=omega_bar.resolution,
        limit=amounts is None,
    )
    return result.union(psi).merged()


def opportunity_sets(scenario: Scenario, epsilon: Epsilon = LIMIT, rho: Epsilon = None,
                     resolution=None) -> Dict[str, OpportunitySets]:
    """
    Opportunity, sunk and modified sets of every producer and consumer.

    :param epsilon: Inflation of producer sets.
    :param rho: Inflation of consumer sets, epsilon when not given.
    """
    rho = epsilon if rho is None else rho
    result = {}
    for player in build_players(scenario):
        if player.is_line:
            continue
        omega = omega_bar(scenario, player, resolution)
        psi = psi_set(scenario, player)
        modified = modified_set(player, omega, psi, rho if player.is_consumer else epsilon)
        result[player.id] = OpportunitySets(player.id, omega, psi, modified)
    return result

