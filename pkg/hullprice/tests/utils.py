from fractions import Fraction

from django.test import SimpleTestCase

from hullprice.utils import display_money, round_cent, to_fraction


class HullPriceTestCase(SimpleTestCase):
    def assertMoney(self, value, expected):
        """
        Payment equal to its two decimal value.
        """
        self.assertEqual(display_money(value), expected)

    def assertPrice(self, value, expected):
        """
        Price within half a cent of a published value.
        """
        expected = to_fraction(expected)
        self.assertLessEqual(abs(value - expected), Fraction(1, 200))
        self.assertEqual(round_cent(value), expected)
