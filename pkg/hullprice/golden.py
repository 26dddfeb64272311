"""
Published results of the builtin examples and the checks that reproduce them.

Payments under the cent policy are compared exactly against the published two decimal values.
Prices are compared within half a cent before rounding.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from hullprice.casebook import EXAMPLE_1, EXAMPLE_2, builtin_example, example_document
from hullprice.dual import (
    ModifiedPricing, PriceSetReport, UpliftReport, gap_summary, modified_pricing, price_membership, solve_dual,
    uplift_report,
)
from hullprice.enums import RoundingPolicy, Verdict
from hullprice.models import PriceVector, Scenario
from hullprice.oracle import GridSpec, brute_primal, grid_dual_scan
from hullprice.players import build_players, find_player
from hullprice.primal import PrimalSolution, solve_primal
from hullprice.utils import Number, display_number, is_exact, leq, round_cent, to_fraction

logger = logging.getLogger(__name__)

HALF_CENT = Fraction(1, 200)
FLOAT_TOLERANCE = Fraction(1, 10 ** 9)
# Random valid parameter sets checked per parametric example
PARAMETER_DRAWS = 20


@dataclass(frozen=True)
class GoldenCheck:
    example: int
    name: str
    verdict: Verdict
    expected: str = ""
    actual: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS


@dataclass
class GoldenResult:
    example: int
    name: str
    checks: List[GoldenCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[GoldenCheck]:
        return [check for check in self.checks if not check.passed]


class Checks:
    """
    Collects the checks of one example.
    """
    def __init__(self, example: int, name: str):
        self.result = GoldenResult(example, name)

    def _add(self, name: str, passed: bool, expected: str, actual: str):
        verdict = Verdict.PASS if passed else Verdict.FAIL
        self.result.checks.append(GoldenCheck(self.result.example, name, verdict, expected, actual))
        if not passed:
            logger.warning("Example %s: %s expected %s, got %s", self.result.example, name, expected, actual)

    def equal(self, name: str, actual: Number, expected, tolerance: Number = 0):
        expected = to_fraction(expected)
        if not is_exact(actual) and not tolerance:
            tolerance = FLOAT_TOLERANCE
        passed = actual == expected if not tolerance else abs(actual - expected) <= tolerance
        self._add(name, passed, display_number(expected), display_number(actual))

    def money(self, name: str, actual: Number, expected):
        """
        Payment against its published two decimal value.
        """
        self.equal(name, actual, expected, 0 if is_exact(actual) else Fraction(1, 10 ** 6))

    def price(self, name: str, actual: Number, reported):
        """
        Price within half a cent of the published value, which must also be its cent rounding.
        """
        reported = to_fraction(reported)
        passed = abs(actual - reported) <= HALF_CENT and round_cent(actual) == reported
        self._add(name, passed, display_number(reported), display_number(actual))

    def true(self, name: str, condition: bool, detail: str = ""):
        self._add(name, bool(condition), "true", detail or str(bool(condition)).lower())


@dataclass
class Run:
    """
    Primal solution plus both pricings of one scenario, computed once per example.
    """
    scenario: Scenario
    primal: PrimalSolution
    chp: PriceSetReport
    mchp: ModifiedPricing

    @classmethod
    def of(cls, scenario: Scenario, resolution=None) -> 'Run':
        return cls(
            scenario, solve_primal(scenario), solve_dual(scenario), modified_pricing(scenario, resolution=resolution),
        )

    @property
    def chp_uplift(self) -> UpliftReport:
        return uplift_report(self.scenario, None, self.chp.canonical, self.primal)

    @property
    def mchp_uplift(self) -> UpliftReport:
        return uplift_report(self.scenario, self.mchp.sets, self.mchp.report.canonical, self.primal)

    def substituted(self, player_id: str) -> UpliftReport:
        """
        Modified pricing with one player's original set used for its payment.
        """
        sets = dict(self.mchp.sets)
        sets[player_id] = find_player(build_players(self.scenario), player_id).original_set()
        return uplift_report(self.scenario, sets, self.mchp.report.canonical, self.primal)


def _draw_example_1(rng) -> Dict[str, Fraction]:
    a, w, g_max = int(rng.integers(0, 31)), int(rng.integers(100, 601)), int(rng.integers(50, 201))
    b = a + Fraction(w, g_max) + int(rng.integers(1, 6))
    return {'a': a, 'b': b, 'w': w, 'g_max': g_max, 'd_max': int(rng.integers(1, 41))}


def _draw_example_2(rng) -> Dict[str, Fraction]:
    a, w = int(rng.integers(5, 41)), int(rng.integers(50, 501))
    d_max = math.ceil(Fraction(6 * w, a)) + int(rng.integers(0, 51))
    return {'a': a, 'w': w, 'd_max': d_max, 'g_max': d_max + int(rng.integers(1, 101))}


def parameter_draws(number: int, count: int = PARAMETER_DRAWS) -> List[Dict[str, Fraction]]:
    """
    Seeded random parameters of a parametric example, every draw satisfying its inequalities.
    """
    draw = {1: _draw_example_1, 2: _draw_example_2}[number]
    rng = np.random.default_rng(number)
    result = []
    while len(result) < count:
        params = draw(rng)
        try:
            example_document(number, **params)
        except ValueError:
            continue
        result.append({key: to_fraction(value) for key, value in params.items()})
    return result


def _parametric(defaults: Dict, number: int) -> List[Tuple[str, Dict[str, Fraction]]]:
    drawn = [(f"draw {i} ", params) for i, params in enumerate(parameter_draws(number), start=1)]
    return [("", {key: to_fraction(value) for key, value in defaults.items()})] + drawn


def example_1(checks: Checks, with_oracle: bool):
    for label, p in _parametric(EXAMPLE_1, 1):
        run = Run.of(builtin_example(1, **p))
        checks.equal(f"{label}primal welfare", run.primal.value, 0)
        checks.true(f"{label}nothing dispatched", all(q == 0 for s in run.primal.point.states for q in s.quantities))
        threshold = p['a'] + p['w'] / p['g_max']
        checks.equal(f"{label}convex hull price", run.chp.canonical.values[0], threshold)
        chp = run.chp_uplift
        checks.equal(f"{label}consumer uplift", chp.row("consumer").uplift, (p['b'] - threshold) * p['d_max'])
        checks.equal(f"{label}producer uplift", chp.row("producer").uplift, 0)
        structure = run.mchp.report.structure
        checks.true(f"{label}modified prices unbounded above", not structure.is_bounded, str(structure))
        checks.equal(f"{label}modified price set starts at b", structure.lo, p['b'])
        checks.equal(f"{label}modified uplift", run.mchp_uplift.total_uplift, 0)
    if with_oracle:
        p = {key: to_fraction(value) for key, value in EXAMPLE_1.items()}
        run = Run.of(builtin_example(1))
        # The +0 sets only hold zero quantities, a small explicit inflation shows the edge
        inflated = modified_pricing(run.scenario, Fraction(1, 1000)).sets
        scan = grid_dual_scan(run.scenario, inflated, GridSpec(1, ((0, 3 * p['b'], Fraction(1, 2)),)))
        lower, upper = scan.bounds()[0]
        checks.equal("oracle flat region lower edge", lower, p['b'], Fraction(1, 2))
        checks.equal("oracle flat region reaches grid end", upper, 3 * p['b'], Fraction(1, 2))
        checks.equal("oracle primal", brute_primal(run.scenario, GridSpec(1)).value, 0, Fraction(1, 10 ** 6))


def example_2(checks: Checks, with_oracle: bool):
    for label, p in _parametric(EXAMPLE_2, 2):
        a, w, g_max, d_max = p['a'], p['w'], p['g_max'], p['d_max']
        run = Run.of(builtin_example(2, **p))
        closed_form = w * (1 - d_max / (2 * g_max) + w * d_max / (a * (2 * g_max) ** 2))
        chp, mchp = run.chp_uplift, run.mchp_uplift
        checks.equal(f"{label}convex hull price", run.chp.canonical.values[0], a + w / g_max)
        checks.true(f"{label}convex hull uplift is exact", is_exact(chp.total_uplift), display_number(chp.total_uplift))
        checks.equal(f"{label}convex hull uplift", chp.total_uplift, closed_form)
        checks.equal(f"{label}modified uplift", mchp.total_uplift, w ** 2 / (a * d_max), FLOAT_TOLERANCE)
        checks.equal(f"{label}modified uplift is the consumer's", mchp.row("consumer").uplift, w ** 2 / (a * d_max),
                     FLOAT_TOLERANCE)
        checks.true(f"{label}convex hull uplift above w/2", chp.total_uplift > w / 2, display_number(chp.total_uplift))
        checks.true(f"{label}modified uplift at most w/6", leq(mchp.total_uplift, w / 6),
                    display_number(mchp.total_uplift))


def example_3(checks: Checks, with_oracle: bool):
    run = Run.of(builtin_example(3))
    checks.equal("primal cost", run.primal.cost, 4815)
    checks.true("unique dispatch", run.primal.is_unique)
    checks.equal("convex hull price", run.chp.canonical.values[0], Fraction(963, 32))
    chp = run.chp_uplift
    checks.price("convex hull reported price", run.chp.canonical.values[0], "30.09")
    checks.money("convex hull uplift unit1", chp.row("unit1").uplift, "403.60")
    checks.money("convex hull uplift unit2", chp.row("unit2").uplift, "7.80")
    checks.money("convex hull total uplift", chp.total_uplift, "411.40")
    mchp = run.mchp_uplift
    checks.price("modified reported price", run.mchp.report.canonical.values[0], "30.13")
    checks.money("modified uplift unit1", mchp.row("unit1").uplift, "0.00")
    checks.money("modified uplift unit2", mchp.row("unit2").uplift, "4.60")
    checks.money("modified total uplift", mchp.total_uplift, "4.60")
    summary = gap_summary(run.scenario)
    checks.equal("exact convex hull gap", summary.chp_gap, Fraction(1645, 4))
    checks.equal("exact modified gap", summary.mchp_gap, 5)
    checks.true("price 29 is not optimal", not price_membership(run.scenario, None, _prices(run, 29)))
    if with_oracle:
        checks.equal("oracle primal cost", -brute_primal(run.scenario, GridSpec(1)).value, 4815, Fraction(1, 10 ** 6))
        scan = grid_dual_scan(run.scenario, None, GridSpec(1, ((29, 31, Fraction(1, 1000)),)))
        checks.true("oracle minimum near the convex hull price", scan.contains((Fraction(963, 32),), 0.002),
                    str(scan.bounds()))


def example_4(checks: Checks, with_oracle: bool):
    run = Run.of(builtin_example(4))
    chp, mchp = run.chp_uplift, run.mchp_uplift
    checks.money("convex hull total uplift", chp.total_uplift, "411.40")
    checks.price("modified reported price", run.mchp.report.canonical.values[0], "30.09")
    checks.money("modified uplift unit1", mchp.row("unit1").uplift, "0.00")
    checks.money("modified total uplift", mchp.total_uplift, "7.80")
    # (p - a1)(g1_max - g1*) at the reported price
    substituted = run.substituted("unit1")
    checks.money("unit1 uplift on its original set", substituted.row("unit1").uplift, "403.60")


def example_5(checks: Checks, with_oracle: bool):
    run = Run.of(builtin_example(5))
    checks.equal("primal welfare", run.primal.value, 7200)
    checks.equal("convex hull price", run.chp.canonical.values[0], Fraction(101, 5))
    checks.equal("modified price", run.mchp.report.canonical.values[0], Fraction(101, 5))
    chp = run.chp_uplift
    checks.money("consumer1 profit", chp.row("consumer1").pi_star, "7980.00")
    checks.money("consumer2 profit", chp.row("consumer2").pi_star, "-780.00")
    for player_id, expected in (("consumer1", "0.00"), ("consumer2", "780.00"), ("producer", "0.00")):
        checks.money(f"convex hull uplift {player_id}", chp.row(player_id).uplift, expected)
    checks.money("modified total uplift", run.mchp_uplift.total_uplift, "780.00")
    aggregated = Run.of(builtin_example(5, aggregated=True))
    checks.equal("one consumer price", aggregated.mchp.report.canonical.values[0], Fraction(101, 5))
    checks.money("one consumer convex hull uplift", aggregated.chp_uplift.total_uplift, "780.00")
    checks.money("one consumer modified uplift", aggregated.mchp_uplift.total_uplift, "0.00")
    if with_oracle:
        checks.equal("oracle primal welfare", brute_primal(run.scenario, GridSpec(1)).value, 7200, Fraction(1, 10 ** 6))


def example_6(checks: Checks, with_oracle: bool):
    run = Run.of(builtin_example(6))
    checks.equal("dispatch optima", len(run.primal.optima), 2)
    checks.price("convex hull reported price", run.chp.canonical.values[0], "46.38")
    checks.price("modified reported price", run.mchp.report.canonical.values[0], "46.38")
    chp = run.chp_uplift
    checks.money("convex hull consumer uplift", chp.row("consumer").uplift, "72.40")
    checks.money("convex hull producer uplift", chp.row("producer1").uplift + chp.row("producer2").uplift, "0.00")
    checks.money("dispatched producer profit", chp.row("producer1").pi_star + chp.row("producer2").pi_star, "0.40")
    checks.money("modified total uplift", run.mchp_uplift.total_uplift, "0.00")
    checks.money("consumer uplift on its original set", run.substituted("consumer").row("consumer").uplift, "72.40")
    second = PrimalSolution(run.primal.value, run.primal.optima[1:])
    other = uplift_report(run.scenario, None, run.chp.canonical, second)
    checks.equal("gap independent of the dispatch", other.total_uplift, chp.total_uplift)


def example_7(checks: Checks, with_oracle: bool):
    run = Run.of(builtin_example(7))
    checks.price("convex hull reported price", run.chp.canonical.values[0], "80.00")
    checks.price("modified reported price", run.mchp.report.canonical.values[0], "80.00")
    chp, mchp = run.chp_uplift, run.mchp_uplift
    checks.money("consumer1 profit", chp.row("consumer1").pi_star, "1000.00")
    checks.money("consumer1 best profit", chp.row("consumer1").pi_plus, "2000.00")
    checks.money("producer profit", chp.row("producer").pi_star, "14950.00")
    checks.money("convex hull total uplift", chp.total_uplift, "1000.00")
    checks.money("modified total uplift", mchp.total_uplift, "0.00")


def example_8(checks: Checks, with_oracle: bool):
    run = Run.of(builtin_example(8))
    n1, n2 = run.chp.canonical.values
    checks.equal("convex hull price n1", n1, Fraction(151, 10))
    checks.equal("convex hull price n2", n2, 10)
    chp = run.chp_uplift
    checks.money("producer1 profit", chp.row("producer1").pi_star, "-5.00")
    checks.money("producer1 uplift", chp.row("producer1").uplift, "5.00")
    checks.money("producer2 uplift", chp.row("producer2").uplift, "0.00")
    checks.money("FTR holders best profit", chp.row("ftr").pi_plus, "510.00")
    checks.money("FTR holders uplift", chp.row("ftr").uplift, "510.00")
    checks.money("convex hull total uplift", chp.total_uplift, "515.00")
    mchp = run.mchp_uplift
    m1, m2 = run.mchp.report.canonical.values
    checks.true("modified prices equal across nodes", m1 == m2, f"{display_number(m1)}, {display_number(m2)}")
    checks.price("modified reported price", m1, "15.13")
    checks.money("modified congestion rent", mchp.congestion_rent, "0.00")
    checks.money("modified total uplift", mchp.total_uplift, "0.00")


def example_9(checks: Checks, with_oracle: bool):
    run = Run.of(builtin_example(9))
    p1, p2 = run.chp.canonical.values
    checks.price("convex hull price t1", p1, "31.60")
    checks.price("convex hull price t2", p2, "10.00")
    chp = run.chp_uplift
    checks.money("producer profit", chp.row("producer").pi_star, "468.00")
    checks.money("producer best profit", chp.row("producer").pi_plus, "500.00")
    checks.money("producer uplift", chp.row("producer").uplift, "32.00")
    checks.money("convex hull total uplift", chp.total_uplift, "32.00")
    checks.money("modified total uplift", run.mchp_uplift.total_uplift, "0.00")
    checks.equal("modified gap", gap_summary(run.scenario).mchp_gap, 0)
    published = _prices(run, Fraction(98, 3), 10)
    checks.true("published modified price is optimal", price_membership(run.scenario, run.mchp.sets, published))
    at_published = uplift_report(run.scenario, run.mchp.sets, published, run.primal, rounding=RoundingPolicy.EXACT)
    checks.equal("producer profit at the published price", at_published.row("producer").pi_star, Fraction(1660, 3))
    checks.equal("producer uplift at the published price", at_published.row("producer").uplift, 0, Fraction(1, 100))
    if with_oracle:
        scan = grid_dual_scan(
            run.scenario, run.mchp.sets, GridSpec(1, ((20, 40, Fraction(1, 100)), (5, 15, Fraction(1, 100)))),
        )
        checks.true("oracle region holds the published price", scan.contains((Fraction(98, 3), 10), 0.02))
        checks.true("oracle region holds the canonical price", scan.contains(run.mchp.report.canonical.values, 0.02))


def _prices(run: Run, *values) -> PriceVector:
    return PriceVector.from_values(run.scenario.keys, values)


EXAMPLES: Dict[int, Callable[[Checks, bool], None]] = {
    1: example_1,
    2: example_2,
    3: example_3,
    4: example_4,
    5: example_5,
    6: example_6,
    7: example_7,
    8: example_8,
    9: example_9,
}


def reproduce(number: int, with_oracle: bool = False) -> GoldenResult:
    """
    Run a builtin example and compare it against its published results.

    :param number: Example number, 1 to 9.
    :param with_oracle: Also cross-check against the brute force grids.
    :return: GoldenResult
    """
    if number not in EXAMPLES:
        raise ValueError(f"No builtin example {number}, choose from 1 to {len(EXAMPLES)}")
    checks = Checks(number, builtin_example(number).name)
    EXAMPLES[number](checks, with_oracle)
    result = checks.result
    logger.info("Example %s: %s of %s checks pass", number, len(result.checks) - len(result.failures),
                len(result.checks))
    return result


def reproduce_all(with_oracle: bool = False, numbers: Optional[List[int]] = None) -> List[GoldenResult]:
    return [reproduce(number, with_oracle) for number in numbers or sorted(EXAMPLES)]
