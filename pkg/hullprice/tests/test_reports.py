import json
from fractions import Fraction
from unittest.mock import patch

from hullprice.casebook import builtin_example
from hullprice.dual import price_membership
from hullprice.enums import Method, RoundingPolicy, Verdict
from hullprice.exceptions import ConsistencyError
from hullprice.golden import reproduce
from hullprice.models import PriceVector
from hullprice.reports import render, render_golden, render_membership, render_structured, render_text, run_scenario
from hullprice.templatetags.money import column, exact, money, number, with_sign
from hullprice.tests.utils import HullPriceTestCase


class RunScenarioTestCase(HullPriceTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)
        cls.report = run_scenario(cls.scenario)

    def test_run_scenario__both_methods(self):
        chp = self.report.pricing(Method.CHP)
        mchp = self.report.pricing(Method.MCHP)
        self.assertEqual(chp.prices.canonical.values, (Fraction(963, 32),))
        self.assertEqual(mchp.prices.canonical.values, (Fraction(241, 8),))
        self.assertIsNone(chp.modified)
        self.assertIsNotNone(mchp.modified)
        self.assertEqual(chp.gap, Fraction(1645, 4))
        self.assertEqual(mchp.gap, 5)
        self.assertEqual(self.report.digest, self.scenario.digest())

    def test_run_scenario__single_method(self):
        report = run_scenario(self.scenario, Method.CHP)
        self.assertEqual(len(report.pricings), 1)
        with self.assertRaises(KeyError):
            report.pricing(Method.MCHP)

    def test_run_scenario__rounding_override(self):
        report = run_scenario(self.scenario, Method.CHP, rounding=RoundingPolicy.EXACT)
        uplifts = report.pricing(Method.CHP).uplifts
        self.assertEqual(uplifts.rounding, RoundingPolicy.EXACT)
        self.assertEqual(uplifts.total_uplift, Fraction(1645, 4))

    @patch('hullprice.reports.leq', return_value=False)
    def test_run_scenario__gaps_out_of_order(self, mock_leq):
        with self.assertRaises(ConsistencyError):
            run_scenario(self.scenario)
        self.assertTrue(mock_leq.called)

    def test_run_scenario__oracle(self):
        report = run_scenario(self.scenario, Method.CHP, oracle=True)
        self.assertEqual(report.oracle.verdict, Verdict.PASS)
        self.assertLessEqual(abs(report.oracle.difference), 1e-6)
        self.assertIn("Grid dispatch -4815.00", render_text(report))

    def test_comparison(self):
        rows = self.report.comparison()
        self.assertEqual([row.label for row in rows][-1], "Total")
        self.assertEqual(len(rows[-1].cells), 6)
        self.assertMoney(rows[-1].cells[2], "411.40")
        self.assertMoney(rows[-1].cells[5], "4.60")


class RenderTestCase(HullPriceTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(3)
        cls.report = run_scenario(cls.scenario)

    def test_render_text(self):
        text = render_text(self.report)
        self.assertTrue(text.startswith("Example 3 ("))
        self.assertIn("cost 4815.00", text)
        self.assertIn("price (30.09), exact 963/32", text)
        self.assertNotIn("Fraction(", text)
        self.assertIn("duality gap 411.25", text)
        self.assertNotIn("Grid dispatch", text)

    def test_render_structured(self):
        payload = json.loads(render_structured(self.report))
        self.assertEqual(payload['scenario']['name'], "Example 3")
        self.assertTrue(payload['primal']['cost_form'])
        self.assertEqual(payload['primal']['value'], {'display': "-4815.00", 'exact': "-4815"})
        chp, mchp = payload['pricings']
        self.assertEqual(chp['method'], "chp")
        self.assertEqual(chp['canonical_price'], {'n1/t1': "963/32"})
        self.assertEqual(chp['settlement_price'], {'n1/t1': "3009/100"})
        self.assertEqual(chp['total_uplift']['display'], "411.40")
        self.assertTrue(chp['certificate']['member'])
        self.assertEqual(mchp['set_kind'], "modified")
        self.assertIsNone(payload['oracle'])

    def test_render__format(self):
        self.assertEqual(render(self.report, "structured"), render_structured(self.report))
        self.assertEqual(render(self.report), render_text(self.report))

    def test_render_golden(self):
        text = render_golden([reproduce(6)])
        self.assertIn("Example 6: Example 6", text)
        self.assertIn("[PASS]", text)
        self.assertTrue(text.rstrip().endswith("1 of 1 example(s) reproduced"))

    def test_render_membership(self):
        certificate = price_membership(self.scenario, None, PriceVector.from_values(self.scenario.keys, [29]))
        text = render_membership(self.scenario, Method.CHP, certificate)
        self.assertIn("false: excess demand of at least 40", text)
        self.assertIn("n1/t1 injection range", text)


class MoneyFiltersTestCase(HullPriceTestCase):
    def test_money(self):
        self.assertEqual(money(Fraction(1, 3)), "0.33")
        self.assertEqual(money(None), "-")
        self.assertEqual(money(Fraction(-1, 1000)), "0.00")

    def test_number(self):
        self.assertEqual(number(Fraction(963, 32)), "30.09375")
        self.assertEqual(number(Fraction(61, 3)), "61/3")

    def test_exact(self):
        self.assertEqual(exact((Fraction(963, 32),)), "963/32")
        self.assertEqual(exact((Fraction(98, 3), 10)), "98/3, 10")
        self.assertEqual(exact(()), "")

    def test_with_sign(self):
        self.assertEqual(with_sign(5), "+5.00")
        self.assertEqual(with_sign(-5), "-5.00")
        self.assertEqual(with_sign(0), "0.00")

    def test_column(self):
        self.assertEqual(column(Fraction(15, 2), 8), "    7.50")
