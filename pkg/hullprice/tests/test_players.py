from fractions import Fraction

from django.test import SimpleTestCase

from hullprice.casebook import builtin_example
from hullprice.enums import PlayerKind
from hullprice.intervals import IntervalUnion, State
from hullprice.models import PriceVector, load_scenario
from hullprice.players import LINE_ID, build_players, find_player
from hullprice.tests.fixtures import TWO_PERIOD_DOCUMENT


class BuildPlayersTestCase(SimpleTestCase):
    def test_build_players__order(self):
        players = build_players(builtin_example(8))
        self.assertEqual([player.id for player in players], ["producer1", "producer2", "load", LINE_ID])
        self.assertEqual(players[-1].kind, PlayerKind.LINE)
        self.assertEqual(players[-1].label, "FTR holders")

    def test_find_player__unknown(self):
        with self.assertRaises(KeyError):
            find_player(build_players(builtin_example(3)), "nobody")


class PlayerTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.scenario = builtin_example(8)
        cls.players = build_players(cls.scenario)
        cls.prices = PriceVector.from_values(cls.scenario.keys, [Fraction(151, 10), 10])

    def test_line__injections(self):
        line = find_player(self.players, LINE_ID)
        self.assertEqual(line.injections((Fraction(50),)), {("n1", 0): -50, ("n2", 0): 50})

    def test_line__profit_is_the_price_spread(self):
        line = find_player(self.players, LINE_ID)
        self.assertEqual(line.profit(State((), (Fraction(-100),)), self.prices), 510)
        self.assertEqual(line.box((), 0), IntervalUnion.closed(-100, 100))

    def test_producer__profit(self):
        producer = find_player(self.players, "producer1")
        self.assertEqual(producer.profit(State((1,), (Fraction(150),)), self.prices), -5)
        self.assertEqual(producer.box((0,), 0), IntervalUnion.point(0))

    def test_consumer__reported_profit_adds_fixed_load_payment(self):
        consumer = find_player(self.players, "load")
        state = State((), (Fraction(150),))
        self.assertEqual(consumer.profit(state, self.prices), Fraction(-2265))
        self.assertEqual(consumer.reported_profit(state, self.prices), 0)

    def test_original_set__commitment_patterns(self):
        producer = find_player(self.players, "producer2")
        sset = producer.original_set()
        self.assertEqual(len(sset), 2)
        self.assertEqual(sset.quantities(0), IntervalUnion.point(0) | IntervalUnion.closed(150, 200))

    def test_profile__ramp_clips_first_period(self):
        scenario = load_scenario(TWO_PERIOD_DOCUMENT)
        producer = find_player(build_players(scenario), "unit")
        profile = producer.profile((1, 1))
        self.assertEqual(profile.boxes[0], IntervalUnion.closed(10, 40))
        self.assertEqual(profile.boxes[1], IntervalUnion.closed(10, 80))
        self.assertIsNotNone(profile.ramp)
        self.assertEqual(len(producer.patterns()), 4)

    def test_value__committed_two_periods(self):
        scenario = load_scenario(TWO_PERIOD_DOCUMENT)
        producer = find_player(build_players(scenario), "unit")
        self.assertEqual(producer.value(State((1, 1), (Fraction(30), Fraction(60)))), -(20 + 5 + 5 + 300 + 620))
