from fractions import Fraction

import factory
from factory.random import randgen

from hullprice.enums import RoundingPolicy
from hullprice.models import ConsumerSpec, Network, Scenario, TimeGrid, UnitSpec, VariableCostCurve


def _segments(o):
    prices = sorted(randgen.sample(range(5, 60), o.segment_count), reverse=True)
    return (tuple((Fraction(price), Fraction(randgen.randint(1, o.segment_size))) for price in prices),)


class UnitSpecFactory(factory.Factory):
    id = factory.Sequence(lambda n: 'unit%s' % n)
    node = "n1"
    g_min = factory.LazyAttribute(lambda o: (Fraction(min(o.lower, o.capacity)),))
    g_max = factory.LazyAttribute(lambda o: (Fraction(o.capacity),))
    variable_cost = factory.LazyAttribute(lambda o: VariableCostCurve.affine(Fraction(o.slope)))
    no_load_cost = Fraction(0)

    class Meta:
        model = UnitSpec

    class Params:
        capacity = factory.Faker('random_int', min=50, max=150)
        slope = factory.Faker('random_int', min=5, max=40)
        lower = 0
        committed = factory.Trait(
            no_load_cost=factory.LazyAttribute(lambda o: Fraction(randgen.randint(1, 10 * o.capacity))),
        )
        small = factory.Trait(
            capacity=factory.Faker('random_int', min=6, max=9),
        )


class ConsumerSpecFactory(factory.Factory):
    id = factory.Sequence(lambda n: 'consumer%s' % n)
    node = "n1"
    fixed_load = factory.LazyAttribute(lambda o: (Fraction(o.load),))

    class Meta:
        model = ConsumerSpec

    class Params:
        load = factory.Faker('random_int', min=10, max=50)
        segment_count = 2
        segment_size = 20
        price_sensitive = factory.Trait(
            load=0,
            elastic_segments=factory.LazyAttribute(_segments),
        )
        small = factory.Trait(
            load=factory.Faker('random_int', min=0, max=2),
            segment_size=3,
        )


class ScenarioFactory(factory.Factory):
    """
    One node, one period. With one consumer, or with the small trait, fixed loads stay within the
    capacity of any single unit.
    """
    time_grid = factory.LazyFunction(TimeGrid)
    units = factory.LazyAttribute(
        lambda o: tuple(UnitSpecFactory(committed=o.committed, small=o.small) for _ in range(o.unit_count))
    )
    consumers = factory.LazyAttribute(
        lambda o: tuple(
            ConsumerSpecFactory(price_sensitive=o.price_sensitive, small=o.small) for _ in range(o.consumer_count)
        )
    )
    network = factory.LazyFunction(Network.one_node)
    rounding_policy = RoundingPolicy.EXACT
    name = factory.Faker('word')

    class Meta:
        model = Scenario

    class Params:
        unit_count = 2
        consumer_count = 1
        committed = False
        price_sensitive = False
        small = False
