from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from hullprice import feasets
from hullprice.casebook import builtin_example
from hullprice.enums import ConstructionMethod
from hullprice.exceptions import ConstructionError
from hullprice.feasets import (
    LIMIT, cap_sweep, fixed_load_bounds, is_lnmgu, modified_set, omega_bar, omega_bar_consumer,
    omega_bar_fixed_load, omega_bar_price_sensitive, opportunity_membership, opportunity_sets, psi_set,
)
from hullprice.intervals import IntervalUnion, State
from hullprice.players import build_players, find_player
from hullprice.primal import make_point, solve_primal
from hullprice.tests.factories import ConsumerSpecFactory, ScenarioFactory, UnitSpecFactory


class FixedLoadTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)

    def test_omega_bar_fixed_load(self):
        for unit_id in ("unit1", "unit2"):
            with self.subTest(unit_id):
                sset = omega_bar_fixed_load(self.scenario, unit_id)
                self.assertEqual(sset.method, ConstructionMethod.EXACT_FIXED_LOAD)
                self.assertEqual(sset.quantities(0), IntervalUnion.closed(80, 120))

    def test_omega_bar__picks_fixed_load_construction(self):
        self.assertEqual(omega_bar(self.scenario, "unit1").method, ConstructionMethod.EXACT_FIXED_LOAD)

    def test_omega_bar_fixed_load__needs_fixed_load(self):
        with self.assertRaises(ConstructionError):
            omega_bar_fixed_load(builtin_example(5), "producer")

    def test_fixed_load_bounds(self):
        scenario = ScenarioFactory(
            units=(UnitSpecFactory(capacity=100), UnitSpecFactory(capacity=100)),
            consumers=(ConsumerSpecFactory(load=150),),
        )
        self.assertEqual(fixed_load_bounds(scenario, scenario.units[0]), (50, 100))

    def test_fixed_load_bounds__needs_zero_minimum_output(self):
        with self.assertRaises(ConstructionError):
            fixed_load_bounds(self.scenario, "unit1")

    def test_is_lnmgu(self):
        self.assertFalse(is_lnmgu(self.scenario, "unit1"))
        self.assertTrue(is_lnmgu(builtin_example(1), "producer"))


class PriceSensitiveTestCase(SimpleTestCase):
    def test_omega_bar_price_sensitive__unit_stays_off(self):
        sset = omega_bar_price_sensitive(builtin_example(1), "producer")
        self.assertEqual(sset.method, ConstructionMethod.EXACT_ZERO_MIN)
        self.assertEqual(sset.quantities(0), IntervalUnion.point(0))

    def test_omega_bar_price_sensitive__minimum_output(self):
        with self.assertRaises(ConstructionError):
            omega_bar_price_sensitive(builtin_example(3), "unit1")

    def test_omega_bar_consumer__mirror(self):
        sset = omega_bar_consumer(builtin_example(1), "consumer")
        self.assertEqual(sset.method, ConstructionMethod.MIRROR)
        self.assertEqual(sset.quantities(0), IntervalUnion.point(0))

    def test_omega_bar_consumer__fixed_load(self):
        sset = omega_bar_consumer(builtin_example(3), "load")
        self.assertEqual(sset.quantities(0), IntervalUnion.point(200))

    def test_omega_bar_consumer__rejects_producer(self):
        with self.assertRaises(ValueError):
            omega_bar_consumer(builtin_example(3), "unit1")

    def test_omega_bar__sweeps_committed_unit(self):
        sset = omega_bar(builtin_example(5), "producer")
        self.assertEqual(sset.method, ConstructionMethod.CAP_SWEEP)
        self.assertTrue(sset.approximate)
        self.assertTrue(sset.contains(State((1,), (250,))))


class MembershipTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)

    def test_opportunity_membership__optimum(self):
        membership = opportunity_membership(self.scenario, solve_primal(self.scenario).point)
        self.assertTrue(membership)
        self.assertEqual(membership.margin, 0)

    def test_opportunity_membership__capped_fixed_point(self):
        point = make_point(self.scenario, {
            'unit1': State((1,), (80,)),
            'unit2': State((1,), (120,)),
            'load': State((), (200,)),
        })
        self.assertTrue(opportunity_membership(self.scenario, point))

    def test_opportunity_membership__infeasible(self):
        point = make_point(self.scenario, {
            'unit1': State((1,), (100,)),
            'unit2': State((1,), (80,)),
            'load': State((), (200,)),
        })
        membership = opportunity_membership(self.scenario, point)
        self.assertFalse(membership)
        self.assertIn("balance", membership.reason)


class ModifiedSetTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)
        cls.player = find_player(build_players(cls.scenario), "unit1")
        cls.omega = omega_bar(cls.scenario, cls.player)
        cls.psi = psi_set(cls.scenario, cls.player)

    def test_psi_set__producer_off(self):
        self.assertEqual(self.psi.method, ConstructionMethod.SUNK)
        self.assertTrue(self.psi.contains(State((0,), (0,))))
        self.assertFalse(self.psi.contains(State((1,), (80,))))

    def test_psi_set__consumer_least_consumption(self):
        sset = psi_set(builtin_example(5), "consumer1")
        self.assertEqual(sset.quantities(0), IntervalUnion.point(0))

    def test_modified_set__limit(self):
        sset = modified_set(self.player, self.omega, self.psi, LIMIT)
        self.assertTrue(sset.limit)
        self.assertTrue(sset.contains(State((1,), (120,))))
        self.assertTrue(sset.contains(State((0,), (0,))))
        self.assertFalse(sset.contains(State((1,), (160,))))

    def test_modified_set__inflated(self):
        sset = modified_set(self.player, self.omega, self.psi, 1)
        self.assertFalse(sset.limit)
        self.assertTrue(sset.contains(State((1,), (121,))))
        self.assertFalse(sset.contains(State((1,), (122,))))
        self.assertFalse(sset.contains(State((1,), (79,))))

    def test_modified_set__within_original(self):
        sset = modified_set(self.player, self.omega, self.psi, Fraction(1, 1000))
        self.assertTrue(sset.issubset(self.player.original_set()))

    def test_modified_set__bad_epsilon(self):
        for epsilon in ("bogus", 0, (1, 1)):
            with self.subTest(epsilon=epsilon):
                with self.assertRaises(ValueError):
                    modified_set(self.player, self.omega, self.psi, epsilon)

    def test_opportunity_sets(self):
        found = opportunity_sets(self.scenario)
        self.assertEqual(set(found), {"unit1", "unit2", "load"})
        self.assertEqual(found["unit1"].method, ConstructionMethod.EXACT_FIXED_LOAD)
        self.assertTrue(found["unit2"].modified.limit)

    def test_opportunity_sets__line_left_out(self):
        self.assertNotIn("ftr", opportunity_sets(builtin_example(8)))


class CapSweepTestCase(SimpleTestCase):
    def setUp(self):
        self.scenario = builtin_example(6)

    def test_cap_sweep__bad_resolution(self):
        with self.assertRaises(ValueError):
            cap_sweep(self.scenario, "producer1", resolution=0)

    @override_settings(HULLPRICE_SWEEP_LIMIT=10)
    def test_cap_sweep__limit(self):
        with self.assertRaises(ConstructionError):
            cap_sweep(self.scenario, "producer1", resolution="3")

    def test_cap_sweep__worker_processes(self):
        feasets._sweep.cache_clear()
        with override_settings(HULLPRICE_SWEEP_PROCESSES=2):
            pooled = cap_sweep(self.scenario, "producer1", resolution="5")
        feasets._sweep.cache_clear()
        self.assertEqual(cap_sweep(self.scenario, "producer1", resolution="5"), pooled)
        self.assertEqual(pooled.method, ConstructionMethod.CAP_SWEEP)
