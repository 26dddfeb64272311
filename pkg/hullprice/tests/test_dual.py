from fractions import Fraction

from hullprice.casebook import builtin_example
from hullprice.dual import (
    dual_value, epsilon_convergence, gap_summary, modified_pricing, price_membership, solve_dual, uplift_report,
)
from hullprice.enums import ConstructionMethod, RoundingPolicy, SetKind
from hullprice.models import PriceVector
from hullprice.primal import solve_primal
from hullprice.tests.utils import HullPriceTestCase


class SolveDualTestCase(HullPriceTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)
        cls.primal = solve_primal(cls.scenario)
        cls.report = solve_dual(cls.scenario)

    def test_solve_dual__canonical_price(self):
        self.assertEqual(self.report.canonical.values, (Fraction(963, 32),))
        self.assertEqual(self.report.set_kind, SetKind.ORIGINAL)
        self.assertTrue(self.report.is_unique)
        self.assertFalse(self.report.refined)

    def test_solve_dual__gap(self):
        self.assertEqual(self.report.value - self.primal.value, Fraction(1645, 4))

    def test_solve_dual__certificate(self):
        certificate = self.report.certificate
        self.assertTrue(certificate)
        self.assertEqual(sum(weight for _, weight in certificate.mixture("unit2")), 1)

    def test_solve_dual__unbounded_modified_set(self):
        self.assertEqual(solve_dual(builtin_example(1)).canonical.values, (13,))
        report = modified_pricing(builtin_example(1)).report
        self.assertEqual(report.canonical.values, (20,))
        self.assertFalse(report.is_bounded)

    def test_solve_dual__modified_set_starts_at_bid(self):
        for params in ({}, {"a": 5, "b": 30, "w": 500, "g_max": 100, "d_max": 10}):
            with self.subTest(params=params):
                structure = modified_pricing(builtin_example(1, **params)).report.structure
                self.assertEqual(structure.lo, params.get("b", 20))
                self.assertFalse(structure.is_bounded)

    def test_solve_dual__two_nodes(self):
        report = solve_dual(builtin_example(8))
        self.assertEqual(report.canonical.values, (Fraction(151, 10), 10))
        self.assertIsNone(report.structure)
        self.assertIsNone(report.is_unique)


class DualValueTestCase(HullPriceTestCase):
    def test_dual_value__weak_duality(self):
        scenario = builtin_example(3)
        primal = solve_primal(scenario)
        for price in (0, 20, 29, Fraction(963, 32), 31, 45):
            with self.subTest(price=price):
                prices = PriceVector.from_values(scenario.keys, [price])
                self.assertGreaterEqual(dual_value(scenario, None, prices), primal.value)


class PriceMembershipTestCase(HullPriceTestCase):
    def setUp(self):
        self.scenario = builtin_example(3)

    def test_price_membership__not_optimal(self):
        certificate = price_membership(self.scenario, None, PriceVector.from_values(self.scenario.keys, [29]))
        self.assertFalse(certificate)
        self.assertIn("excess demand of at least 40", certificate.reason)

    def test_price_membership__optimal(self):
        prices = PriceVector.from_values(self.scenario.keys, [Fraction(963, 32)])
        self.assertTrue(price_membership(self.scenario, None, prices))

    def test_price_membership__wrong_keys(self):
        with self.assertRaises(ValueError):
            price_membership(self.scenario, None, PriceVector.from_values((("elsewhere", 0),), [30]))


class UpliftReportTestCase(HullPriceTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)
        cls.primal = solve_primal(cls.scenario)
        cls.prices = solve_dual(cls.scenario).canonical

    def test_uplift_report__cent(self):
        report = uplift_report(self.scenario, None, self.prices, self.primal)
        self.assertEqual(report.rounding, RoundingPolicy.CENT)
        self.assertEqual(report.prices.values, (Fraction(3009, 100),))
        self.assertMoney(report.row("unit1").uplift, "403.60")
        self.assertMoney(report.row("unit2").uplift, "7.80")
        self.assertMoney(report.total_uplift, "411.40")

    def test_uplift_report__exact(self):
        report = uplift_report(self.scenario, None, self.prices, self.primal, rounding=RoundingPolicy.EXACT)
        self.assertEqual(report.row("unit1").uplift, Fraction(1615, 4))
        self.assertEqual(report.total_uplift, Fraction(1645, 4))
        self.assertEqual(report.total_uplift, report.duality_gap)

    def test_uplift_report__exact_at_fractional_price(self):
        scenario = builtin_example(9)
        modified = modified_pricing(scenario)
        prices = PriceVector.from_values(scenario.keys, [Fraction(98, 3), 10])
        report = uplift_report(scenario, modified.sets, prices, solve_primal(scenario), rounding=RoundingPolicy.EXACT)
        self.assertEqual(report.prices.values, (Fraction(98, 3), 10))
        self.assertEqual(report.row("producer").pi_star, Fraction(1660, 3))

    def test_uplift_report__unknown_player(self):
        report = uplift_report(self.scenario, None, self.prices, self.primal)
        with self.assertRaises(KeyError):
            report.row("nobody")


class ModifiedPricingTestCase(HullPriceTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)
        cls.modified = modified_pricing(cls.scenario)

    def test_modified_pricing__canonical_price(self):
        report = self.modified.report
        self.assertEqual(report.canonical.values, (Fraction(241, 8),))
        self.assertEqual(report.set_kind, SetKind.MODIFIED)
        self.assertPrice(report.canonical.values[0], "30.13")

    def test_modified_pricing__uplifts(self):
        primal = solve_primal(self.scenario)
        report = uplift_report(self.scenario, self.modified.sets, self.modified.report.canonical, primal)
        self.assertMoney(report.row("unit1").uplift, "0.00")
        self.assertMoney(report.row("unit2").uplift, "4.60")

    def test_modified_pricing__original_for(self):
        modified = modified_pricing(self.scenario, original_for=("unit1",))
        self.assertEqual(modified.sets["unit1"].method, ConstructionMethod.ORIGINAL)
        self.assertNotEqual(modified.sets["unit2"].method, ConstructionMethod.ORIGINAL)


class GapSummaryTestCase(HullPriceTestCase):
    def test_gap_summary__fixed_load(self):
        summary = gap_summary(builtin_example(3))
        self.assertTrue(summary.cost_form)
        self.assertEqual(summary.primal_cost, 4815)
        self.assertEqual(summary.chp_gap, Fraction(1645, 4))
        self.assertEqual(summary.mchp_gap, 5)
        self.assertEqual(summary.chp_dual_cost, 4815 - Fraction(1645, 4))
        self.assertEqual(summary.mchp_dual_cost, 4810)

    def test_gap_summary__price_sensitive(self):
        summary = gap_summary(builtin_example(5))
        self.assertFalse(summary.cost_form)
        self.assertEqual(summary.primal_value, 7200)
        self.assertGreaterEqual(summary.mchp_gap, 0)


class EpsilonConvergenceTestCase(HullPriceTestCase):
    def test_epsilon_convergence(self):
        convergence = epsilon_convergence(builtin_example(3))
        self.assertEqual(convergence.limit.values, (Fraction(241, 8),))
        self.assertEqual(len(convergence.steps), 3)
        self.assertEqual(len(convergence.distances), 3)
        self.assertTrue(convergence.converged)
