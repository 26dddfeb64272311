"""
Dual problems: the sum of every player's best profit at given prices, minimized over prices.

Profits are measured in welfare form for every scenario, so the dual optimum bounds the primal welfare
from above and the gap between the two is the total uplift. Single price duals are solved by an exact
scan over the profit breakpoints, two to four dimensional ones by exact linear programs over the
vertex states of every player.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from hullprice import lp
from hullprice.curvelib import ProfitMax, candidate_states, price_breakpoints, profit_max
from hullprice.enums import ConstructionMethod, PlayerKind, RoundingPolicy, SetKind
from hullprice.exceptions import ConsistencyError, UnboundedDualError
from hullprice.feasets import LIMIT, Epsilon, OpportunitySets, modified_set, opportunity_sets
from hullprice.intervals import INF, Interval, IntervalUnion, State, StatusOutputSet
from hullprice.models import PriceKey, PriceVector, Scenario
from hullprice.players import Player, build_players, find_player
from hullprice.primal import PrimalSolution, player_sets, solve_primal
from hullprice.utils import Number, display_number, is_close, is_exact, is_zero, leq, to_fraction, unique_sorted

logger = logging.getLogger(__name__)

# Inflation used to read the first order effect of the +0 limit sets
REFINE_EPSILON = Fraction(1, 10 ** 6)

Sets = Optional[Dict[str, StatusOutputSet]]


@dataclass(frozen=True)
class PriceCertificate:
    """
    Mixture of maximizing states per player whose injections sum to zero at every (node, period).

    Truthy when the price is optimal.
    """
    member: bool
    prices: PriceVector
    weights: Tuple[Tuple[str, Tuple[Tuple[State, Number], ...]], ...] = ()
    ranges: Tuple[Tuple[PriceKey, Number, Number], ...] = ()
    reason: str = ""

    def __bool__(self):
        return self.member

    def mixture(self, player_id: str) -> Tuple[Tuple[State, Number], ...]:
        return dict(self.weights)[player_id]


@dataclass(frozen=True)
class PriceSetReport:
    """
    Optimal prices of one dual problem.

    region is the optimal set of the dual over the given sets (single price duals only). For +0 limit
    sets, structure narrows it to the prices that stay optimal as the inflation shrinks to zero, and
    the canonical price is the lexicographically smallest price of structure.
    """
    canonical: PriceVector
    value: Number
    set_kind: SetKind
    structure: Optional[IntervalUnion] = None
    region: Optional[IntervalUnion] = None
    vertices: Tuple[PriceVector, ...] = ()
    certificate: Optional[PriceCertificate] = None
    inert_players: Tuple[str, ...] = ()
    refined: bool = False

    @property
    def dimension(self) -> int:
        return len(self.canonical)

    @property
    def is_unique(self) -> Optional[bool]:
        if self.structure is None:
            return None
        return self.structure.is_point

    @property
    def is_bounded(self) -> Optional[bool]:
        if self.structure is None:
            return None
        return self.structure.is_bounded


@dataclass(frozen=True)
class ModifiedPricing:
    opportunities: Dict[str, OpportunitySets]
    sets: Dict[str, StatusOutputSet]
    report: PriceSetReport


@dataclass(frozen=True)
class UpliftRow:
    player_id: str
    label: str
    kind: PlayerKind
    pi_star: Number
    pi_plus: Number
    uplift: Number
    best_state: State


@dataclass(frozen=True)
class UpliftReport:
    prices: PriceVector
    exact_prices: PriceVector
    rounding: RoundingPolicy
    rows: Tuple[UpliftRow, ...]
    primal_value: Number
    dual_value: Number
    congestion_rent: Number = 0

    @property
    def total_pi_star(self) -> Number:
        return sum(row.pi_star for row in self.rows)

    @property
    def total_pi_plus(self) -> Number:
        return sum(row.pi_plus for row in self.rows)

    @property
    def total_uplift(self) -> Number:
        return sum(row.uplift for row in self.rows)

    @property
    def duality_gap(self) -> Number:
        return self.dual_value - self.primal_value

    def row(self, player_id: str) -> UpliftRow:
        for row in self.rows:
            if row.player_id == player_id:
                return row
        raise KeyError(player_id)


@dataclass(frozen=True)
class GapSummary:
    """
    Primal and dual optima of both pricings in welfare form. Fixed load scenarios read them as costs
    with the sign flipped.
    """
    primal_value: Number
    chp_dual: Number
    mchp_dual: Number
    chp_uplift: Number
    mchp_uplift: Number
    cost_form: bool

    @property
    def chp_gap(self) -> Number:
        return self.chp_dual - self.primal_value

    @property
    def mchp_gap(self) -> Number:
        return self.mchp_dual - self.primal_value

    @property
    def primal_cost(self) -> Number:
        return -self.primal_value

    @property
    def chp_dual_cost(self) -> Number:
        return -self.chp_dual

    @property
    def mchp_dual_cost(self) -> Number:
        return -self.mchp_dual


@dataclass(frozen=True)
class Convergence:
    limit: PriceVector
    steps: Tuple[Tuple[Fraction, PriceVector], ...]
    distances: Tuple[Number, ...]
    converged: bool


def _close(a: Number, b: Number, tol: float = None) -> bool:
    return a == b if is_exact(a) and is_exact(b) else is_close(a, b, tol)


def _price(scenario: Scenario, value: Number) -> PriceVector:
    return PriceVector.from_values(scenario.keys, [value])


def _set_kind(sets: Sets) -> SetKind:
    if sets and any(sset.method != ConstructionMethod.ORIGINAL for sset in sets.values()):
        return SetKind.MODIFIED
    return SetKind.ORIGINAL


def dual_terms(scenario: Scenario, sets: Sets, prices: PriceVector) -> Dict[str, ProfitMax]:
    players = build_players(scenario)
    psets = player_sets(scenario, players, sets)
    return {player.id: profit_max(player, sset, prices) for player, sset in zip(players, psets)}


def dual_value(scenario: Scenario, sets: Sets, prices: PriceVector) -> Number:
    """
    Dual objective at fixed prices: the sum of every player's best profit, the line included.

    :param scenario: Scenario
    :param sets: Per player id feasible set, original sets for players left out.
    :param prices: One price per (node, period).
    :return: Exact value, a float once quadratic data is involved.
    """
    return sum(result.value for result in dual_terms(scenario, sets, prices).values())


# Single price duals

def _slopes(players: Sequence[Player], psets: Sequence[StatusOutputSet], prices: PriceVector) -> Tuple[Number, Number]:
    """
    Left and right derivative of the dual objective at a single price.
    """
    lo = hi = 0
    for player, sset in zip(players, psets):
        low, high = profit_max(player, sset, prices).injection_range(player, 0)
        lo += low
        hi += high
    return lo, hi


def _derivative_root(slope, a: Number, b: Number) -> Optional[Number]:
    first, second = a + (b - a) / 3, a + 2 * (b - a) / 3
    g1, g2 = slope(first)[1], slope(second)[1]
    if _close(g1, g2):
        return None
    root = first - g1 * (second - first) / (g2 - g1)
    if a < root < b:
        return root
    return None


def _scan(scenario: Scenario, players, psets, candidates: List[Number]) -> IntervalUnion:
    """
    Exact optimal set of a single price dual from its breakpoints.

    Between two breakpoints the derivative is constant for piecewise affine data and affine for
    quadratic data, so every cell is either flat, strictly monotone or holds one interior root.
    """
    def slope(price):
        return _slopes(players, psets, _price(scenario, price))

    if not candidates:
        candidates = [Fraction(0)]
    slopes = [slope(c) for c in candidates]
    optimal = [
        Interval.point(c) for c, (lo, hi) in zip(candidates, slopes) if leq(lo, 0) and leq(0, hi)
    ]
    for i, (a, b) in enumerate(zip(candidates, candidates[1:])):
        lo, hi = slope((a + b) / 2)
        if is_zero(lo) and is_zero(hi):
            optimal.append(Interval(a, b))
            continue
        right, left = slopes[i][1], slopes[i + 1][0]
        if right < 0 < left and not is_zero(right) and not is_zero(left):
            root = _derivative_root(slope, a, b)
            if root is not None:
                optimal.append(Interval.point(root))

    below, above = slope(candidates[0] - 1), slope(candidates[-1] + 1)
    if below[1] > 0 and not is_zero(below[1]):
        raise UnboundedDualError(f"Dual of {scenario} decreases without bound as the price falls")
    if above[0] < 0 and not is_zero(above[0]):
        raise UnboundedDualError(f"Dual of {scenario} decreases without bound as the price rises")
    if is_zero(below[0]) and is_zero(below[1]):
        optimal.append(Interval(-INF, candidates[0]))
    if is_zero(above[0]) and is_zero(above[1]):
        optimal.append(Interval(candidates[-1], INF))
    if not optimal:
        raise ConsistencyError(f"Breakpoint scan of {scenario} found no optimal price")
    return IntervalUnion(optimal)


def _inflated(players, psets, opportunities: Dict[str, OpportunitySets]) -> List[StatusOutputSet]:
    """
    Sets inflated by REFINE_EPSILON for the players priced on their +0 limit sets, others unchanged.
    """
    result = []
    for player, sset in zip(players, psets):
        found = opportunities.get(player.id)
        if found is None or sset != found.modified:
            result.append(sset)
        else:
            result.append(modified_set(player, found.omega_bar, found.psi, REFINE_EPSILON))
    return result


def _refine_scalar(scenario: Scenario, players, psets, region: IntervalUnion, candidates: List[Number],
                   opportunities: Dict[str, OpportunitySets]) -> IntervalUnion:
    """
    Prices of the +0 optimal region with the smallest first order gain from inflating the sets.
    """
    inflated = _inflated(players, psets, opportunities)

    def gain(price):
        prices = _price(scenario, price)
        total = 0
        for player, base, wide in zip(players, psets, inflated):
            if wide is not base:
                total += profit_max(player, wide, prices).value - profit_max(player, base, prices).value
        return total / REFINE_EPSILON

    scored = []
    for interval in region:
        ends = [end for end in (interval.lo, interval.hi) if not math.isinf(end)]
        marks = unique_sorted(ends + [c for c in candidates if interval.lo < c < interval.hi]) or [Fraction(0)]
        scored += [(Interval.point(mark), gain(mark)) for mark in marks]
        scored += [(Interval(a, b), gain((a + b) / 2)) for a, b in zip(marks, marks[1:])]
        if math.isinf(interval.lo):
            scored.append((Interval(-INF, marks[0]), gain(marks[0] - 1)))
        if math.isinf(interval.hi):
            scored.append((Interval(marks[-1], INF), gain(marks[-1] + 1)))
    best = min(value for _, value in scored)
    return IntervalUnion(interval for interval, value in scored if _close(value, best, 1e-6))


def _lowest(structure: IntervalUnion) -> Number:
    if not math.isinf(structure.lo):
        return structure.lo
    if not math.isinf(structure.hi):
        return structure.hi
    return Fraction(0)


def _solve_scalar(scenario: Scenario, players, psets, inert: Tuple[str, ...],
                  opportunities: Optional[Dict[str, OpportunitySets]]) -> Tuple[IntervalUnion, IntervalUnion]:
    breakpoints = {player.id: price_breakpoints(player, sset) for player, sset in zip(players, psets)}
    candidates = unique_sorted(
        point for player_id, points in breakpoints.items() if player_id not in inert for point in points
    )
    logger.debug("Scanning %s price breakpoints of %s", len(candidates), scenario)
    region = _scan(scenario, players, psets, candidates)
    if opportunities is None:
        return region, region
    # inert players still bound the cells of the first order gain
    marks = unique_sorted(point for points in breakpoints.values() for point in points)
    return region, _refine_scalar(scenario, players, psets, region, marks, opportunities)


# Two to four dimensional duals

def _rows(player: Player, states: Sequence[State], keys: Sequence[PriceKey]) -> List[Tuple[List[Number], Number]]:
    """
    Profit of each state as an affine function of the prices: (injection per key, value).
    """
    rows = []
    for state in states:
        injections = player.injections(state.quantities)
        rows.append(([injections.get(key, 0) for key in keys], player.value(state)))
    return rows


class _DualProgram:
    """
    Dual as an exact LP: minimize sum z_k with z_k above the profit of every vertex state of player k.

    Columns are the prices, one z per player and, once refined, one y per player bounding the first
    order gain from the inflated sets.
    """

    def __init__(self, scenario: Scenario, players, psets):
        self.scenario = scenario
        self.keys = scenario.keys
        self.count = len(players)
        self.base = [_rows(player, candidate_states(player, sset), self.keys) for player, sset in zip(players, psets)]
        self.wide = None
        self.A, self.b = [], []
        self.eq_A, self.eq_b = [], []

    @property
    def width(self) -> int:
        return len(self.keys) + self.count * (2 if self.wide is not None else 1)

    def _z(self, k: int) -> int:
        return len(self.keys) + k

    def _y(self, k: int) -> int:
        return len(self.keys) + self.count + k

    def _row(self) -> List[Number]:
        return [Fraction(0)] * self.width

    def _build(self):
        A, b = [], []
        for k, rows in enumerate(self.base):
            for coefficients, value in rows:
                row = self._row()
                row[:len(self.keys)] = coefficients
                row[self._z(k)] = -1
                A.append(row)
                b.append(-value)
        if self.wide is not None:
            for k, rows in enumerate(self.wide):
                for coefficients, value in rows:
                    row = self._row()
                    row[:len(self.keys)] = coefficients
                    row[self._z(k)] = -1
                    row[self._y(k)] = -REFINE_EPSILON
                    A.append(row)
                    b.append(-value)
        return A, b

    def _widen(self, rows: List[List[Number]]) -> List[List[Number]]:
        return [row + [Fraction(0)] * (self.width - len(row)) for row in rows]

    def solve(self, objective: List[Number]) -> lp.LinprogResult:
        A, b = self._build()
        return lp.linprog(
            objective, A_ub=A + self._widen(self.A), b_ub=b + self.b,
            A_eq=self._widen(self.eq_A) or None, b_eq=self.eq_b or None,
            bounds=[(None, None)] * self.width,
        )

    def cap(self, columns: Sequence[int], bound: Number):
        row = self._row()
        for column in columns:
            row[column] = 1
        self.A.append(row)
        self.b.append(bound)

    def fix(self, column: int, value: Number):
        row = self._row()
        row[column] = 1
        self.eq_A.append(row)
        self.eq_b.append(value)

    def objective(self, columns: Sequence[int]) -> List[Number]:
        row = self._row()
        for column in columns:
            row[column] = 1
        return row

    def z_columns(self) -> List[int]:
        return [self._z(k) for k in range(self.count)]

    def y_columns(self) -> List[int]:
        return [self._y(k) for k in range(self.count)]


def _solve_program(scenario: Scenario, players, psets,
                   opportunities: Optional[Dict[str, OpportunitySets]]) -> Tuple[PriceVector, Tuple[PriceVector, ...]]:
    program = _DualProgram(scenario, players, psets)
    n = len(program.keys)
    result = program.solve(program.objective(program.z_columns()))
    if result.status == lp.UNBOUNDED:
        raise UnboundedDualError(f"Dual of {scenario} decreases without bound")
    if not result.success:
        raise ConsistencyError(f"Dual program of {scenario} failed: {result.message}")
    optimum = result.fun
    first = PriceVector.from_values(program.keys, result.x[:n])
    program.cap(program.z_columns(), optimum)

    if opportunities is not None:
        program.wide = [
            _rows(player, candidate_states(player, wide), program.keys)
            for player, wide in zip(players, _inflated(players, psets, opportunities))
        ]
        refined = program.solve(program.objective(program.y_columns()))
        if refined.success:
            program.cap(program.y_columns(), refined.fun)
        else:
            logger.warning("First order refinement of %s failed: %s", scenario, refined.message)
            program.wide = None

    values = list(result.x[:n])
    for i in range(n):
        step = program.solve(program.objective([i]))
        if step.status == lp.UNBOUNDED:
            logger.warning("Optimal prices of %s extend without bound in %s", scenario, program.keys[i])
        elif step.success:
            values[i] = step.x[i]
        program.fix(i, values[i])
    canonical = PriceVector.from_values(program.keys, values)
    vertices = (canonical,) if first == canonical else (canonical, first)
    return canonical, vertices


def _inert_players(scenario: Scenario, sets: Sets,
                   opportunities: Optional[Dict[str, OpportunitySets]]) -> Tuple[str, ...]:
    """
    Players whose opportunity and sunk sets only hold zero output, which leaves the price unaffected.
    """
    if not opportunities or not scenario.is_one_node or not scenario.is_single_period:
        return ()
    zero = IntervalUnion.point(0)
    inert = []
    for player_id, found in opportunities.items():
        if (sets or {}).get(player_id) != found.modified:
            continue
        profiles = list(found.omega_bar.closure()) + list(found.psi.closure())
        if all(box == zero for profile in profiles for box in profile.boxes):
            inert.append(player_id)
    return tuple(inert)


def solve_dual(scenario: Scenario, sets: Sets = None,
               opportunities: Dict[str, OpportunitySets] = None) -> PriceSetReport:
    """
    Optimal price set of the dual over the given sets.

    :param scenario: Scenario with at most four (node, period) prices.
    :param sets: Per player id feasible set, original sets for players left out.
    :param opportunities: Opportunity sets the modified sets were built from. Needed to narrow the
        optimal set of +0 limit sets to the limit of the inflated optima.
    :return: PriceSetReport
    """
    players = build_players(scenario)
    psets = player_sets(scenario, players, sets)
    if scenario.dimension > 4:
        raise ValueError(f"Duals with {scenario.dimension} prices are not supported")
    if not any(sset.limit for sset in psets):
        opportunities = None
    inert = _inert_players(scenario, sets, opportunities)
    if inert:
        logger.debug("Players %s leave the modified price of %s unaffected", ", ".join(inert), scenario)

    region = structure = None
    if scenario.dimension == 1:
        region, structure = _solve_scalar(scenario, players, psets, inert, opportunities)
        canonical = _price(scenario, _lowest(structure))
        vertices = (canonical,)
        if not structure.is_bounded:
            logger.warning("Optimal prices of %s form an unbounded set %s", scenario, structure)
    else:
        canonical, vertices = _solve_program(scenario, players, psets, opportunities)
    value = dual_value(scenario, sets, canonical)
    certificate = price_membership(scenario, sets, canonical)
    if not certificate:
        raise ConsistencyError(f"Canonical price {canonical} of {scenario} fails membership: {certificate.reason}")
    logger.debug("Dual of %s: price %s, value %s", scenario, canonical, display_number(value))
    return PriceSetReport(
        canonical=canonical,
        value=value,
        set_kind=_set_kind(sets),
        structure=structure,
        region=region,
        vertices=vertices,
        certificate=certificate,
        inert_players=inert,
        refined=region is not None and structure != region,
    )


def modified_pricing(scenario: Scenario, epsilon: Epsilon = LIMIT, rho: Epsilon = None, resolution=None,
                     original_for: Sequence[str] = ()) -> ModifiedPricing:
    """
    Build the modified sets and solve their dual.

    :param original_for: Player ids priced on their original feasible set instead.
    """
    opportunities = opportunity_sets(scenario, epsilon, rho, resolution)
    sets = {player_id: found.modified for player_id, found in opportunities.items()}
    if original_for:
        players = build_players(scenario)
        for player_id in original_for:
            sets[player_id] = find_player(players, player_id).original_set()
    return ModifiedPricing(opportunities, sets, solve_dual(scenario, sets, opportunities))


# Optimality certificates

def _states_by_injection(player: Player, result: ProfitMax) -> Tuple[State, State]:
    def injection(state):
        return player.injections(state.quantities).get((player.node, 0), 0)

    ordered = sorted(result.states, key=lambda state: (injection(state), state))
    return ordered[0], ordered[-1]


def _scalar_mixture(players, results: Sequence[ProfitMax], ranges: Sequence[Tuple[Number, Number]]):
    """
    Raise players from their lowest injection towards their highest until the injections cancel.
    """
    deficit = -sum(lo for lo, _ in ranges)
    weights = []
    for player, result, (lo, hi) in zip(players, results, ranges):
        low, high = _states_by_injection(player, result)
        step = min(max(deficit, 0), hi - lo)
        deficit -= step
        if _close(hi, lo) or is_zero(step):
            mixture = ((low, Fraction(1)),)
        elif _close(step, hi - lo):
            mixture = ((high, Fraction(1)),)
        else:
            share = step / (hi - lo)
            mixture = ((low, 1 - share), (high, share))
        weights.append((player.id, mixture))
    return tuple(weights)


def _program_mixture(scenario: Scenario, players, psets, results: Sequence[ProfitMax], prices: PriceVector):
    """
    Weights on each player's maximizing vertex states summing to one per player with zero net
    injection at every key, found by an exact feasibility LP.
    """
    keys = scenario.keys
    columns = []
    for k, (player, sset, result) in enumerate(zip(players, psets, results)):
        for state in candidate_states(player, sset):
            if _close(player.profit(state, prices), result.value):
                columns.append((k, player, state))
    A_eq, b_eq = [], []
    for k in range(len(players)):
        A_eq.append([1 if owner == k else 0 for owner, _, _ in columns])
        b_eq.append(1)
    for key in keys:
        A_eq.append([player.injections(state.quantities).get(key, 0) for _, player, state in columns])
        b_eq.append(0)
    result = lp.linprog([0] * len(columns), A_eq=A_eq, b_eq=b_eq)
    if not result.success:
        return None
    weights = []
    for k, player in enumerate(players):
        mixture = tuple(
            (state, weight) for (owner, _, state), weight in zip(columns, result.x) if owner == k and weight
        )
        weights.append((player.id, mixture))
    return tuple(weights)


def _ranges(scenario: Scenario, players, results: Sequence[ProfitMax]) -> Tuple[Tuple[PriceKey, Number, Number], ...]:
    """
    Per key, smallest and largest total injection the maximizers can reach period by period.
    """
    ranges = []
    for key in scenario.keys:
        lo = hi = 0
        for player, result in zip(players, results):
            values = [player.injections(state.quantities).get(key, 0) for state in result.states]
            lo += min(values)
            hi += max(values)
        ranges.append((key, lo, hi))
    return tuple(ranges)


def price_membership(scenario: Scenario, sets: Sets, prices: PriceVector) -> PriceCertificate:
    """
    Whether a price minimizes the dual: zero net injection must be reachable by mixing each player's
    maximizing states.

    :return: PriceCertificate, truthy for optimal prices and carrying the mixture.
    """
    if tuple(prices.keys) != tuple(scenario.keys):
        raise ValueError(f"Prices {prices.labels()} do not match the scenario's (node, period) keys")
    players = build_players(scenario)
    psets = player_sets(scenario, players, sets)
    results = [profit_max(player, sset, prices) for player, sset in zip(players, psets)]
    ranges = _ranges(scenario, players, results)

    if scenario.dimension == 1:
        _, lo, hi = ranges[0]
        if not (leq(lo, 0) and leq(0, hi)):
            side = "excess supply" if lo > 0 else "excess demand"
            gap = lo if lo > 0 else -hi
            return PriceCertificate(
                False, prices, ranges=ranges, reason=f"{side} of at least {display_number(gap)} at {prices}",
            )
        per_player = [result.injection_range(player, 0) for player, result in zip(players, results)]
        return PriceCertificate(True, prices, _scalar_mixture(players, results, per_player), ranges)

    weights = _program_mixture(scenario, players, psets, results, prices)
    if weights is None:
        return PriceCertificate(
            False, prices, ranges=ranges, reason=f"no mixture of maximizers balances every node and period at {prices}",
        )
    return PriceCertificate(True, prices, weights, ranges)


# Uplifts and gaps

def uplift_report(scenario: Scenario, sets: Sets, prices: PriceVector, primal: PrimalSolution,
                  rounding: RoundingPolicy = None) -> UpliftReport:
    """
    Lost profit of every player at the market price.

    The best response x+ is the lexicographically smallest maximizer at the exact price. Payments
    settle at the price after rounding, pi+ being the settled profit of x+ but never less than pi*.

    :param prices: Exact price, rounded by the rounding policy before any payment is computed.
    :param primal: Centralized dispatch giving each player's profit pi*.
    :param rounding: Overrides the scenario's rounding policy.
    :return: UpliftReport, consumer profits counting only their price-sensitive part.
    """
    policy = rounding or scenario.rounding_policy
    used = prices.rounded(policy)
    players = build_players(scenario)
    psets = player_sets(scenario, players, sets)
    point = primal.point
    rows, dual, rent = [], 0, 0
    for player, sset in zip(players, psets):
        state = point.state(player)
        best = profit_max(player, sset, prices).lex_min_state()
        sunk = player.reported_profit(state, used) - player.profit(state, used)
        star = player.profit(state, used)
        plus = max(player.profit(best, used), star)
        if not sset.contains(state):
            raise ConsistencyError(f"Dispatch state {state} of {player} lies outside its pricing set")
        rows.append(UpliftRow(player.id, player.label, player.kind, star + sunk, plus + sunk, plus - star, best))
        dual += profit_max(player, sset, used).value
        if player.is_line:
            rent += star
    return UpliftReport(
        prices=used,
        exact_prices=prices,
        rounding=policy,
        rows=tuple(rows),
        primal_value=primal.value,
        dual_value=dual,
        congestion_rent=rent,
    )


def gap_summary(scenario: Scenario, epsilon: Epsilon = LIMIT, rho: Epsilon = None, resolution=None) -> GapSummary:
    """
    Both pricings of one scenario and the check that the modified gap sits between 0 and the
    convex hull gap.
    """
    primal = solve_primal(scenario)
    chp = solve_dual(scenario)
    modified = modified_pricing(scenario, epsilon, rho, resolution)
    summary = GapSummary(
        primal_value=primal.value,
        chp_dual=chp.value,
        mchp_dual=modified.report.value,
        chp_uplift=uplift_report(scenario, None, chp.canonical, primal).total_uplift,
        mchp_uplift=uplift_report(scenario, modified.sets, modified.report.canonical, primal).total_uplift,
        cost_form=scenario.has_fixed_load_only,
    )
    if not (leq(0, summary.mchp_gap) and leq(summary.mchp_gap, summary.chp_gap)):
        raise ConsistencyError(
            f"Gaps of {scenario} out of order: modified {display_number(summary.mchp_gap)}, "
            f"convex hull {display_number(summary.chp_gap)}"
        )
    return summary


def epsilon_convergence(scenario: Scenario, epsilons: Sequence = ("0.001", "0.0001", "0.00001"), resolution=None,
                        tolerance="0.01") -> Convergence:
    """
    Canonical modified prices for shrinking explicit inflations against the +0 limit price.
    """
    limit = modified_pricing(scenario, LIMIT, resolution=resolution).report.canonical
    steps = []
    for epsilon in epsilons:
        epsilon = to_fraction(epsilon)
        steps.append((epsilon, modified_pricing(scenario, epsilon, resolution=resolution).report.canonical))
    distances = tuple(max(abs(a - b) for a, b in zip(price, limit)) for _, price in steps)
    converged = (
        leq(distances[-1], to_fraction(tolerance))
        and all(leq(later, earlier) for earlier, later in zip(distances, distances[1:]))
    )
    if not converged:
        logger.warning("Modified prices of %s do not settle on %s: distances %s", scenario, limit,
                       ", ".join(display_number(d) for d in distances))
    return Convergence(limit, tuple(steps), distances, converged)
