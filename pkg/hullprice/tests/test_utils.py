from decimal import Decimal
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from hullprice.utils import (
    as_json_number, display_money, display_number, exact_sqrt, is_close, leq, round_cent, to_fraction, unique_sorted,
)


class ToFractionTestCase(SimpleTestCase):
    def test_to_fraction__decimal_string(self):
        self.assertEqual(to_fraction("0.1"), Fraction(1, 10))
        self.assertEqual(to_fraction(" 61/3 "), Fraction(61, 3))

    def test_to_fraction__float_by_repr(self):
        self.assertEqual(to_fraction(0.1), Fraction(1, 10))

    def test_to_fraction__decimal(self):
        self.assertEqual(to_fraction(Decimal("30.125")), Fraction(241, 8))

    def test_to_fraction__rejects_bool(self):
        with self.assertRaises(TypeError):
            to_fraction(True)

    def test_to_fraction__rejects_infinity(self):
        with self.assertRaises(ValueError):
            to_fraction(float("inf"))


class RoundingTestCase(SimpleTestCase):
    def test_round_cent__half_up(self):
        self.assertEqual(round_cent(Fraction(241, 8)), Fraction(3013, 100))
        self.assertEqual(round_cent(Fraction(963, 32)), Fraction(3009, 100))

    def test_display_money__half_even(self):
        self.assertEqual(display_money(Fraction(241, 8)), "30.12")
        self.assertEqual(display_money(Fraction(-1, 1000)), "0.00")
        self.assertEqual(display_money(None), "-")
        self.assertEqual(display_money(float("inf")), "+inf")

    def test_display_number(self):
        self.assertEqual(display_number(120), "120")
        self.assertEqual(display_number(Fraction(121, 8)), "15.125")
        self.assertEqual(display_number(Fraction(61, 3)), "61/3")
        self.assertEqual(display_number(float("-inf")), "-inf")

    def test_as_json_number(self):
        self.assertEqual(as_json_number(Fraction(1, 3)), "1/3")
        self.assertEqual(as_json_number(Fraction(4, 2)), "2")
        self.assertEqual(as_json_number(float("inf")), "inf")


class ComparisonTestCase(SimpleTestCase):
    def test_is_close__exact_values(self):
        self.assertFalse(is_close(Fraction(1, 3), Fraction(333333333, 10 ** 9)))

    def test_is_close__float_involved(self):
        self.assertTrue(is_close(Fraction(1, 3), 1 / 3))

    @override_settings(HULLPRICE_FLOAT_TOLERANCE=0.1)
    def test_is_close__uses_setting(self):
        self.assertTrue(is_close(1.0, 1.05))

    def test_leq(self):
        self.assertTrue(leq(1.0000000000001, 1))
        self.assertFalse(leq(Fraction(3, 2), 1))

    def test_unique_sorted__prefers_exact(self):
        self.assertEqual(unique_sorted([3, 1, 2.0000000000001, 2, 1]), [1, 2, 3])
        self.assertIsInstance(unique_sorted([2.0000000000001, 2])[0], int)

    def test_exact_sqrt(self):
        self.assertEqual(exact_sqrt(Fraction(9, 4)), Fraction(3, 2))
        self.assertAlmostEqual(exact_sqrt(2), 1.41421356, places=6)
        with self.assertRaises(ValueError):
            exact_sqrt(-1)
