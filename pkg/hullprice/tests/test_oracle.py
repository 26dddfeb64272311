from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from hullprice.casebook import builtin_example
from hullprice.oracle import GridSpec, brute_primal, grid_dual_scan


class GridSpecTestCase(SimpleTestCase):
    def test_grid_spec__bad_quantity_step(self):
        with self.assertRaises(ValueError):
            GridSpec(0)

    def test_grid_spec__bad_price_axis(self):
        with self.assertRaises(ValueError):
            GridSpec(1, ((5, 5, 1),))
        with self.assertRaises(ValueError):
            GridSpec(1, ((0, 5, 0),))

    def test_price_axes__end_included(self):
        axis, = GridSpec(1, ((0, 1, Fraction(3, 10)),)).price_axes()
        self.assertEqual(len(axis), 5)
        self.assertAlmostEqual(axis[-1], 1.0)


class BrutePrimalTestCase(SimpleTestCase):
    def test_brute_primal__fixed_load(self):
        self.assertAlmostEqual(brute_primal(builtin_example(3), GridSpec(1)).value, -4815, places=6)

    def test_brute_primal__price_sensitive(self):
        self.assertAlmostEqual(brute_primal(builtin_example(5), GridSpec(1)).value, 7200, places=6)

    @override_settings(HULLPRICE_ORACLE_GRID_LIMIT=10)
    def test_brute_primal__grid_limit(self):
        with self.assertRaises(ValueError):
            brute_primal(builtin_example(3), GridSpec(1))


class GridDualScanTestCase(SimpleTestCase):
    def setUp(self):
        self.scenario = builtin_example(3)

    def test_grid_dual_scan__minimum(self):
        scan = grid_dual_scan(self.scenario, None, GridSpec(1, ((29, 31, Fraction(1, 1000)),)))
        self.assertTrue(scan.contains((Fraction(963, 32),), 0.002))
        self.assertAlmostEqual(scan.best_price.values[0], 963 / 32, delta=0.002)
        self.assertFalse(scan.contains((29,), 0.002))

    def test_grid_dual_scan__axis_count(self):
        with self.assertRaises(ValueError):
            grid_dual_scan(self.scenario, None, GridSpec(1, ((0, 1, 1), (0, 1, 1))))
