from fractions import Fraction
from unittest.mock import patch

from django.test import SimpleTestCase

from hullprice import lp
from hullprice.exceptions import ConsistencyError


class LinprogTestCase(SimpleTestCase):
    def test_linprog__vertex_optimum(self):
        result = lp.linprog([-1, -1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
        self.assertTrue(result.success)
        self.assertEqual(result.x, [Fraction(8, 5), Fraction(6, 5)])
        self.assertEqual(result.fun, Fraction(-14, 5))
        self.assertIsInstance(result.x[0], Fraction)

    def test_linprog__equality(self):
        result = lp.linprog([1, 1], A_eq=[[1, 1]], b_eq=[5])
        self.assertEqual(result.fun, 5)
        self.assertEqual(sum(result.x), 5)

    @patch.object(lp._Tableau, "values", lambda self: [Fraction(0)] * self.width)
    def test_linprog__objective_mismatch(self):
        with self.assertRaises(ConsistencyError):
            lp.linprog([1, 1], A_eq=[[1, 1]], b_eq=[5])

    def test_linprog__free_variable(self):
        result = lp.linprog([1], A_ub=[[-1]], b_ub=[3], bounds=[(None, None)])
        self.assertEqual(result.x, [-3])

    def test_linprog__upper_bound(self):
        result = lp.linprog([-1, 0], bounds=[(1, 4), (0, None)])
        self.assertEqual(result.x[0], 4)
        self.assertEqual(result.fun, -4)

    def test_linprog__infeasible(self):
        result = lp.linprog([1], A_ub=[[1]], b_ub=[1], A_eq=[[1]], b_eq=[2])
        self.assertEqual(result.status, lp.INFEASIBLE)
        self.assertFalse(result.success)
        self.assertEqual(result.message, "The problem is infeasible.")

    def test_linprog__unbounded(self):
        result = lp.linprog([-1])
        self.assertEqual(result.status, lp.UNBOUNDED)

    def test_linprog__degenerate_does_not_cycle(self):
        # Beale's cycling example for the textbook pivot rule
        result = lp.linprog(
            [Fraction(-3, 4), 150, Fraction(-1, 50), 6],
            A_ub=[
                [Fraction(1, 4), -60, Fraction(-1, 25), 9],
                [Fraction(1, 2), -90, Fraction(-1, 50), 3],
                [0, 0, 1, 0],
            ],
            b_ub=[0, 0, 1],
        )
        self.assertTrue(result.success)
        self.assertEqual(result.fun, Fraction(-1, 20))
