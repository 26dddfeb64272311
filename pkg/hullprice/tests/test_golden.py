from fractions import Fraction

from django.test import SimpleTestCase

from hullprice.casebook import example_document
from hullprice.enums import Verdict
from hullprice.golden import EXAMPLES, PARAMETER_DRAWS, Checks, parameter_draws, reproduce, reproduce_all


class ReproduceTestCase(SimpleTestCase):
    def test_reproduce__every_example(self):
        for number in EXAMPLES:
            with self.subTest(example=number):
                result = reproduce(number)
                self.assertTrue(result.checks)
                self.assertEqual(result.failures, [], [check.name for check in result.failures])

    def test_reproduce__with_oracle(self):
        result = reproduce(3, with_oracle=True)
        self.assertTrue(result.passed, [check.name for check in result.failures])
        self.assertGreater(len(result.checks), len(reproduce(3).checks))

    def test_reproduce__parametric_draws(self):
        for number in (1, 2):
            with self.subTest(example=number):
                names = [check.name for check in reproduce(number).checks]
                self.assertIn(f"draw {PARAMETER_DRAWS} modified uplift", names)
        names = [check.name for check in reproduce(2).checks]
        self.assertIn(f"draw {PARAMETER_DRAWS} convex hull uplift is exact", names)

    def test_reproduce__published_fractional_price(self):
        check = next(c for c in reproduce(9).checks if c.name == "producer profit at the published price")
        self.assertEqual(check.verdict, Verdict.PASS)
        self.assertEqual(check.actual, "1660/3")

    def test_reproduce__unknown_example(self):
        with self.assertRaises(ValueError):
            reproduce(0)

    def test_reproduce_all__numbers(self):
        results = reproduce_all(numbers=[3, 6])
        self.assertEqual([result.example for result in results], [3, 6])


class ParameterDrawsTestCase(SimpleTestCase):
    def test_parameter_draws__valid(self):
        for number in (1, 2):
            draws = parameter_draws(number)
            self.assertEqual(len(draws), PARAMETER_DRAWS)
            for params in draws:
                with self.subTest(example=number, params=params):
                    self.assertTrue(example_document(number, **params))

    def test_parameter_draws__seeded(self):
        self.assertEqual(parameter_draws(1), parameter_draws(1))
        self.assertEqual(parameter_draws(1, count=3), parameter_draws(1)[:3])

    def test_parameter_draws__example_1_stays_below_capacity(self):
        for params in parameter_draws(1):
            self.assertLessEqual(params["d_max"], params["g_max"])
            self.assertLess(params["a"] + params["w"] / params["g_max"], params["b"])


class ChecksTestCase(SimpleTestCase):
    def setUp(self):
        self.checks = Checks(1, "Example 1")

    def test_equal(self):
        self.checks.equal("exact", Fraction(1, 2), "0.5")
        self.checks.equal("float", 0.1 + 0.2, "0.3")
        self.checks.equal("off", Fraction(1, 3), "0.33")
        self.assertEqual([check.verdict for check in self.checks.result.checks],
                         [Verdict.PASS, Verdict.PASS, Verdict.FAIL])
        self.assertEqual(self.checks.result.failures[0].actual, "1/3")

    def test_price(self):
        self.checks.price("cent", Fraction(963, 32), "30.09")
        self.assertTrue(self.checks.result.passed)
        self.checks.price("wrong cent", Fraction(963, 32), "30.10")
        self.assertFalse(self.checks.result.passed)

    def test_true(self):
        self.checks.true("holds", True)
        self.checks.true("fails", False, "detail")
        failure, = self.checks.result.failures
        self.assertEqual(failure.name, "fails")
        self.assertEqual(failure.actual, "detail")
