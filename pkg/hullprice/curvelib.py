"""
One-dimensional convex analysis used by every solver: profit maximization over status/output sets,
economic minimum output, supply correspondences, convex hull costs and their conjugates.
"""
import itertools
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Sequence, Tuple

from hullprice.exceptions import ConstructionError
from hullprice.intervals import INF, Interval, IntervalUnion, Profile, State, StatusOutputSet
from hullprice.models import ConvexCurve, PriceVector, UnitSpec
from hullprice.players import Player, unit_player
from hullprice.utils import Number, exact_sqrt, is_close, is_exact, is_zero, unique_sorted

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProfitMax:
    value: Number
    argmax: StatusOutputSet
    states: Tuple[State, ...]

    def lex_min_state(self) -> State:
        return min(self.states, key=lambda state: (state.quantities, state.pattern))

    def injection_range(self, player: Player, period: int = 0) -> Tuple[Number, Number]:
        """
        Smallest and largest injection of the maximizers at the player's node in one period.
        """
        quantities = self.argmax.quantities(period)
        if player.is_consumer:
            return -quantities.hi, -quantities.lo
        return quantities.lo, quantities.hi


def _same(a: Number, b: Number) -> bool:
    return a == b if is_exact(a) and is_exact(b) else is_close(a, b)


def _period_max(player: Player, pattern, period: int, box: IntervalUnion, lam: Number):
    shift = player.shift(pattern, period)
    curve = player.curve(period)
    best, winners = None, []
    for interval in box.closure():
        value, arg = curve.argmax_linear(lam, interval.lo - shift, interval.hi - shift)
        value += lam * shift
        if best is None or (value > best and not _same(value, best)):
            best, winners = value, [arg.shifted(shift)]
        elif _same(value, best):
            winners.append(arg.shifted(shift))
    return best, IntervalUnion(winners)


def _ramp_vertices(player: Player, profile: Profile) -> List[State]:
    """
    Vertices of the arrangement cut out by box ends, curve kinks and the ramp diagonals.
    """
    limit = profile.ramp.limit
    vertices = []
    for first, second in profile.components():
        xs = _period_points(player, profile.pattern, 0, first)
        ys = _period_points(player, profile.pattern, 1, second)
        points = set(itertools.product(xs, ys))
        for x in xs:
            points.update({(x, x + limit), (x, x - limit)})
        for y in ys:
            points.update({(y - limit, y), (y + limit, y)})
        for quantities in sorted(points):
            if profile.contains(quantities):
                vertices.append(State(profile.pattern, quantities))
    return vertices


def _period_points(player: Player, pattern, period: int, interval: Interval) -> List[Number]:
    shift = player.shift(pattern, period)
    curve = player.curve(period)
    points = [interval.lo, interval.hi]
    points += [shift + kink for kink in curve.kinks(interval.lo - shift, interval.hi - shift)]
    return unique_sorted(points)


def _check_ramp(player: Player, profile: Profile):
    if profile.ramp is not None and len(profile.boxes) != 2:
        raise ConstructionError(f"Ramp coupling of {player} is handled for two periods only")
    if profile.ramp is not None and any(player.curve(t).is_quadratic for t in range(2)):
        raise ConstructionError(f"Ramp coupling of {player} needs piecewise affine cost")


def profit_max(player: Player, sset: StatusOutputSet, prices: PriceVector) -> ProfitMax:
    """
    Exact supremum of the player's profit over the closure of a status/output set.

    :param player: Producer, consumer or line player.
    :param sset: Set to maximize over, evaluated on its closure.
    :param prices: Price per (node, period).
    :return: ProfitMax with the value, the set of maximizers and maximizing states.
    """
    if sset.is_empty:
        raise ValueError(f"Profit of {player} over an empty set")
    periods = sset.period_count
    lams = [player.lam(prices, t) for t in range(periods)]
    scored = []
    for profile in sset.closure():
        _check_ramp(player, profile)
        constant = player.constant(profile.pattern)
        if profile.ramp is None:
            value, boxes = constant, []
            for t, box in enumerate(profile.boxes):
                best, arg = _period_max(player, profile.pattern, t, box, lams[t])
                value += best
                boxes.append(arg)
            argmax = Profile(profile.pattern, tuple(boxes))
            states = [
                State(profile.pattern, quantities)
                for quantities in itertools.product(*(box.end_points() for box in boxes))
            ]
        else:
            vertices = _ramp_vertices(player, profile)
            if not vertices:
                continue
            values = [player.profit(vertex, prices) for vertex in vertices]
            value = max(values)
            states = [vertex for vertex, v in zip(vertices, values) if _same(v, value)]
            boxes = tuple(
                IntervalUnion.closed(min(s.quantities[t] for s in states), max(s.quantities[t] for s in states))
                for t in range(periods)
            )
            argmax = Profile(profile.pattern, boxes, profile.ramp)
        scored.append((value, argmax, states))
    if not scored:
        raise ValueError(f"Profit of {player} over a set without feasible states")
    best = max(value for value, _, _ in scored)
    winners = [(argmax, states) for value, argmax, states in scored if _same(value, best)]
    argmax = StatusOutputSet(tuple(profile for profile, _ in winners), sset.method)
    states = tuple(state for _, group in winners for state in group)
    return ProfitMax(best, argmax, states)


def candidate_states(player: Player, sset: StatusOutputSet) -> List[State]:
    """
    Finite set of states among which the profit maximum is attained at every price.

    Needs piecewise affine data, the maximum of a concave piecewise affine function over a box or a
    ramp polygon sits on a vertex of the arrangement.
    """
    states = []
    for profile in sset.closure():
        _check_ramp(player, profile)
        if any(player.curve(t).is_quadratic for t in range(len(profile.boxes))):
            raise ConstructionError(f"Vertex enumeration of {player} needs piecewise affine data")
        if profile.ramp is not None:
            found = _ramp_vertices(player, profile)
        else:
            found = []
            for component in profile.components():
                points = [
                    _period_points(player, profile.pattern, t, interval) for t, interval in enumerate(component)
                ]
                found += [State(profile.pattern, quantities) for quantities in itertools.product(*points)]
        for state in found:
            if state not in states:
                states.append(state)
    return states


def _single_period(unit: UnitSpec) -> UnitSpec:
    if unit.period_count == 1 and unit.ramp_limit is None:
        return unit
    return replace(
        unit, g_min=unit.g_min[:1], g_max=unit.g_max[:1], ramp_limit=None,
        initial_output=unit.initial_output if unit.initial_status else Fraction(0),
    )


def _offset(curve: ConvexCurve, start: Number, slope: Number, fixed_cost: Number) -> Number:
    """
    Constant part of g * c'(g) - c(g) - w on the piece starting at start.
    """
    linear_part = curve.value(start) - curve.quadratic * start * start
    return slope * start - linear_part - fixed_cost


def economic_min_output(unit: UnitSpec) -> Number:
    """
    Lowest output at which marginal revenue at the marginal cost covers the average total cost.

    0 fixed cost gives g_min, no solution in [g_min, g_max) gives g_max.
    """
    unit = _single_period(unit)
    fixed_cost = unit.fixed_cost
    g_min, g_max = unit.g_min[0], unit.g_max[0]
    if fixed_cost == 0:
        return g_min
    curve = unit.curve
    for start, end, slope in curve.pieces(g_min, g_max):
        offset = _offset(curve, start, slope, fixed_cost)
        quadratic_at_start = curve.quadratic * start * start
        if offset + quadratic_at_start >= 0 or is_zero(offset + quadratic_at_start):
            return start
        if curve.quadratic:
            root = exact_sqrt(-offset / curve.quadratic)
            if root < end:
                return max(root, start)
    return g_max


def average_cost_threshold(unit: UnitSpec) -> Number:
    """
    Lowest price at which running the unit breaks even.
    """
    unit = _single_period(unit)
    g_ec = economic_min_output(unit)
    if g_ec == 0:
        return unit.curve.right_slope(0)
    return (unit.fixed_cost + unit.curve.value(g_ec)) / g_ec


def gamma_max(unit: UnitSpec) -> Number:
    """
    Largest output at which the average total cost still equals the break-even threshold.
    """
    unit = _single_period(unit)
    g_ec = economic_min_output(unit)
    g_max = unit.g_max[0]
    curve = unit.curve
    for start, end, slope in curve.pieces(g_ec, g_max):
        if curve.quadratic or _offset(curve, start, slope, unit.fixed_cost) > 0:
            return start
    return g_max


def supply_correspondence(unit: UnitSpec, price: Number) -> IntervalUnion:
    """
    Outputs maximizing the single-period profit p * g - c(g) - w * u at a given price.
    """
    player = unit_player(_single_period(unit), 1)
    prices = PriceVector.from_values([(unit.node, 0)], [price])
    result = profit_max(player, player.original_set(), prices)
    return result.argmax.quantities(0)


@dataclass(frozen=True)
class HullCost:
    """
    Closed convex hull of w * u + c(g) over {0} ∪ [g_min, g_max].

    A ray of slope threshold from the origin up to tangent, then the original cost.
    """
    threshold: Number
    tangent: Number
    fixed_cost: Number
    curve: ConvexCurve
    g_max: Number

    def value(self, g: Number) -> Number:
        if g < 0 or g > self.g_max:
            return INF
        if g <= self.tangent:
            return self.threshold * g
        return self.fixed_cost + self.curve.value(g)

    def subgradient(self, g: Number) -> Tuple[Number, Number]:
        if g < 0 or g > self.g_max:
            raise ValueError(f"{g} outside the hull domain [0, {self.g_max}]")
        if g < self.tangent:
            left = -INF if g == 0 else self.threshold
            return left, self.threshold
        if g == self.tangent:
            left = -INF if g == 0 else self.threshold
            right = INF if g == self.g_max else self.curve.right_slope(g)
            return left, right
        right = INF if g == self.g_max else self.curve.right_slope(g)
        return self.curve.left_slope(g), right


def convex_hull_cost(unit: UnitSpec) -> HullCost:
    unit = _single_period(unit)
    hull = HullCost(
        threshold=average_cost_threshold(unit),
        tangent=gamma_max(unit),
        fixed_cost=unit.fixed_cost,
        curve=unit.curve,
        g_max=unit.g_max[0],
    )
    logger.debug("Hull of %s: slope %s up to %s", unit, hull.threshold, hull.tangent)
    return hull


def conjugate(hull: HullCost, price: Number) -> Number:
    """
    sup over the hull domain of price * g - hull(g).
    """
    ray = max(0, (price - hull.threshold) * hull.tangent)
    if hull.tangent >= hull.g_max:
        return ray
    rest, _ = hull.curve.argmax_linear(price, hull.tangent, hull.g_max)
    return max(ray, rest - hull.fixed_cost)


def fit_roots(samples: Sequence[Tuple[Number, Number]], lo: Number, hi: Number) -> List[Number]:
    """
    Roots inside (lo, hi) of the quadratic through three samples.
    """
    (x0, y0), (x1, y1), (x2, y2) = samples
    d01 = (y1 - y0) / (x1 - x0)
    d12 = (y2 - y1) / (x2 - x1)
    a = (d12 - d01) / (x2 - x0)
    b = d01 - a * (x0 + x1)
    c = y0 - a * x0 * x0 - b * x0
    if is_zero(a):
        if is_zero(b):
            return []
        roots = [-c / b]
    else:
        discriminant = b * b - 4 * a * c
        if discriminant < 0 and not is_zero(discriminant):
            return []
        root = exact_sqrt(max(discriminant, 0))
        roots = [(-b - root) / (2 * a), (-b + root) / (2 * a)]
    return [r for r in roots if lo < r < hi]


def _cell_samples(lo: Number, hi: Number) -> List[Number]:
    if lo == -INF and hi == INF:
        return [Fraction(-1), Fraction(0), Fraction(1)]
    if lo == -INF:
        return [hi - 3, hi - 2, hi - 1]
    if hi == INF:
        return [lo + 1, lo + 2, lo + 3]
    return [lo + (hi - lo) / 4, lo + (hi - lo) / 2, lo + 3 * (hi - lo) / 4]


def price_breakpoints(player: Player, sset: StatusOutputSet) -> List[Number]:
    """
    Prices at which the single-period profit of a producer or consumer changes its derivative.
    """
    if sset.period_count != 1 or player.is_line:
        raise ValueError("Price breakpoints are defined for single-period producers and consumers")
    curve = player.curve(0)
    pieces = []
    for profile in sset.closure():
        shift = player.shift(profile.pattern, 0)
        constant = player.constant(profile.pattern)
        for interval in profile.boxes[0]:
            pieces.append((constant, shift, interval.lo - shift, interval.hi - shift))
    own = []
    for _, _, lo, hi in pieces:
        own += [curve.right_slope(lo), curve.left_slope(hi)]
        for kink in curve.kinks(lo, hi):
            own += [curve.left_slope(kink), curve.right_slope(kink)]
    own = unique_sorted(own)

    def piece_value(piece, lam):
        constant, shift, lo, hi = piece
        value, _ = curve.argmax_linear(lam, lo, hi)
        return value + lam * shift + constant

    points = list(own)
    bounds = [-INF] + own + [INF]
    for first, second in itertools.combinations(pieces, 2):
        for lo, hi in zip(bounds, bounds[1:]):
            samples = [(lam, piece_value(first, lam) - piece_value(second, lam)) for lam in _cell_samples(lo, hi)]
            points += fit_roots(samples, lo, hi)
    if player.is_consumer:
        points = [-lam for lam in points]
    return unique_sorted(points)
