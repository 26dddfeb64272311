from django.conf import settings
from django.test import SimpleTestCase

from hullprice.casebook import EXAMPLES, builtin_example, example_1, example_2, example_document
from hullprice.models import load_scenario


class BuiltinExampleTestCase(SimpleTestCase):
    def test_builtin_example__matches_scenario_files(self):
        for number in EXAMPLES:
            with self.subTest(example=number):
                scenario = load_scenario(settings.ROOT_DIR("scenarios", f"ex{number}.json"))
                self.assertEqual(scenario.digest(), builtin_example(number).digest())

    def test_builtin_example__one_consumer_variant(self):
        scenario = builtin_example(5, aggregated=True)
        self.assertEqual(len(scenario.consumers), 1)
        self.assertNotEqual(scenario.digest(), builtin_example(5).digest())

    def test_builtin_example__zero_minimum_variant(self):
        scenario = builtin_example(4)
        self.assertEqual(scenario.name, "Example 4")
        self.assertEqual(scenario.units[0].g_min, (0,))

    def test_builtin_example__parameters(self):
        scenario = builtin_example(1, w=400)
        self.assertEqual(scenario.units[0].no_load_cost, 400)


class ExampleDocumentTestCase(SimpleTestCase):
    def test_example_document__unknown_number(self):
        with self.assertRaises(ValueError):
            example_document(10)

    def test_example_1__bad_parameters(self):
        with self.assertRaises(ValueError):
            example_1(b=12)
        with self.assertRaises(ValueError):
            example_1(c=1)

    def test_example_2__bad_parameters(self):
        with self.assertRaises(ValueError):
            example_2(d_max=50)
        with self.assertRaises(ValueError):
            example_2(d_max=100)
