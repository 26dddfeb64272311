import itertools
from fractions import Fraction

from factory.random import randgen, reseed_random

from hullprice.curvelib import conjugate, convex_hull_cost, economic_min_output, profit_max, supply_correspondence
from hullprice.dual import dual_value, gap_summary, modified_pricing, solve_dual, uplift_report
from hullprice.feasets import omega_bar, opportunity_membership
from hullprice.intervals import Interval, IntervalUnion, State
from hullprice.models import PriceVector
from hullprice.oracle import GridSpec, brute_primal
from hullprice.players import build_players, unit_player
from hullprice.primal import make_point, solve_primal
from hullprice.tests.factories import ScenarioFactory, UnitSpecFactory
from hullprice.tests.utils import HullPriceTestCase

SCENARIOS = 100
PRICES = 20
UNITS = 200
UNIT_PRICES = 50


def random_price(high=70):
    return Fraction(randgen.randint(0, high * 100), 100)


def mixed_scenarios(count=SCENARIOS, committed=None):
    """
    Small scenarios with up to three units and three consumers, about half of them price-sensitive.
    """
    return [
        ScenarioFactory(
            small=True,
            unit_count=randgen.randint(1, 3),
            consumer_count=randgen.randint(1, 3),
            price_sensitive=randgen.random() < 0.5,
            committed=randgen.random() < 0.7 if committed is None else committed,
        )
        for _ in range(count)
    ]


def completions(scenario, quantities):
    """
    Dispatch points with the given quantity per player id, every status pattern that holds them.
    """
    players = build_players(scenario)
    options = [
        [
            State(profile.pattern, (quantities[player.id],))
            for profile in player.original_set() if profile.contains((quantities[player.id],), closure=False)
        ]
        for player in players
    ]
    for combo in itertools.product(*options):
        yield make_point(scenario, {player.id: state for player, state in zip(players, combo)})


def samples(sset):
    for profile in sset:
        for interval in profile.boxes[0]:
            if not interval.lo_open:
                yield interval.lo
            if not interval.hi_open:
                yield interval.hi
            if not interval.is_point:
                yield (interval.lo + interval.hi) / 2


class RandomScenarioTestCase(HullPriceTestCase):
    def setUp(self):
        reseed_random('hullprice')

    def test_weak_duality(self):
        for scenario in mixed_scenarios():
            with self.subTest(scenario=scenario.name):
                primal = solve_primal(scenario)
                for _ in range(PRICES):
                    prices = PriceVector.from_values(scenario.keys, [random_price()])
                    self.assertGreaterEqual(dual_value(scenario, None, prices), primal.value)

    def test_uplifts_at_certified_prices(self):
        for scenario in mixed_scenarios():
            with self.subTest(scenario=scenario.name):
                primal = solve_primal(scenario)
                report = solve_dual(scenario)
                self.assertTrue(report.certificate)
                uplifts = uplift_report(scenario, None, report.canonical, primal)
                for row in uplifts.rows:
                    self.assertGreaterEqual(row.uplift, 0)
                self.assertGreaterEqual(report.value, primal.value)

    def test_primal_matches_grid(self):
        for scenario in mixed_scenarios():
            with self.subTest(scenario=scenario.name):
                exact = solve_primal(scenario)
                grid = brute_primal(scenario, GridSpec(1))
                self.assertAlmostEqual(float(exact.value), grid.value, places=6)

    def test_gaps_in_order(self):
        for _ in range(SCENARIOS):
            scenario = ScenarioFactory(committed=True, unit_count=randgen.randint(1, 3))
            with self.subTest(scenario=scenario.name):
                summary = gap_summary(scenario)
                self.assertGreaterEqual(summary.mchp_gap, 0)
                self.assertLessEqual(summary.mchp_gap, summary.chp_gap)
                self.assertEqual(summary.chp_gap, summary.chp_uplift)

    def test_convex_scenarios_have_no_gap(self):
        for scenario in ScenarioFactory.build_batch(SCENARIOS // 2) + mixed_scenarios(SCENARIOS // 2, committed=False):
            with self.subTest(scenario=scenario.name):
                primal = solve_primal(scenario)
                report = solve_dual(scenario)
                self.assertEqual(report.value, primal.value)
                uplifts = uplift_report(scenario, None, report.canonical, primal)
                self.assertEqual(uplifts.total_uplift, 0)

    def test_convex_price_sets_coincide(self):
        for _ in range(SCENARIOS):
            scenario = ScenarioFactory(unit_count=randgen.randint(1, 3))
            with self.subTest(scenario=scenario.name):
                chp = solve_dual(scenario)
                modified = modified_pricing(scenario).report
                self.assertEqual(modified.structure, chp.structure)
                self.assertEqual(modified.canonical, chp.canonical)
                self.assertEqual(gap_summary(scenario).mchp_gap, 0)

    def test_opportunity_samples_are_fixed_points(self):
        fixed_load = [ScenarioFactory(committed=True) for _ in range(SCENARIOS // 2)]
        price_sensitive = [
            ScenarioFactory(small=True, committed=True, price_sensitive=True, unit_count=1)
            for _ in range(SCENARIOS // 2)
        ]
        for scenario in fixed_load + price_sensitive:
            unit, consumer = scenario.units[0], scenario.consumers[0]
            sset = omega_bar(scenario, unit.id)
            if sset.approximate:
                continue
            for quantity in samples(sset):
                with self.subTest(scenario=scenario.name, quantity=quantity):
                    if scenario.has_fixed_load_only:
                        load = consumer.fixed_load[0]
                        quantities = {unit.id: quantity, scenario.units[1].id: load - quantity, consumer.id: load}
                    else:
                        quantities = {unit.id: quantity, consumer.id: quantity}
                    points = list(completions(scenario, quantities))
                    self.assertTrue(points)
                    self.assertTrue(any(opportunity_membership(scenario, point) for point in points))


class SingleUnitPropertiesTestCase(HullPriceTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        reseed_random('hullprice')
        cls.units = [
            UnitSpecFactory(committed=randgen.random() < 0.8, lower=randgen.randint(0, 40)) for _ in range(UNITS)
        ]

    def test_conjugate_of_hull_is_best_profit(self):
        for unit in self.units:
            hull = convex_hull_cost(unit)
            player = unit_player(unit)
            for _ in range(UNIT_PRICES):
                price = random_price(80)
                with self.subTest(unit=unit.id, price=price):
                    best = profit_max(player, player.original_set(), PriceVector.from_values([(unit.node, 0)], [price]))
                    self.assertEqual(conjugate(hull, price), best.value)

    def test_supply_skips_outputs_below_economic_minimum(self):
        for unit in self.units:
            g_ec = economic_min_output(unit)
            if g_ec == 0:
                continue
            gap = IntervalUnion([Interval(0, g_ec, lo_open=True, hi_open=True)])
            prices = [random_price(80) for _ in range(UNIT_PRICES)] + [convex_hull_cost(unit).threshold]
            for price in prices:
                with self.subTest(unit=unit.id, price=price):
                    self.assertTrue((supply_correspondence(unit, price) & gap).is_empty)

    def test_supply_grows_with_price(self):
        for unit in self.units[:UNIT_PRICES]:
            supplies = [supply_correspondence(unit, price) for price in sorted(random_price(80) for _ in range(10))]
            with self.subTest(unit=unit.id):
                for lower, higher in zip(supplies, supplies[1:]):
                    self.assertLessEqual(lower.lo, higher.lo)
                    self.assertLessEqual(lower.hi, higher.hi)
