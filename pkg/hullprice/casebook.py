"""
Builtin example scenarios.

Examples 1 and 2 take parameters, the other ones are fixed. Each example is kept as a scenario
document so the files under scenarios/ and the builtin cases read the same.
"""
from fractions import Fraction
from typing import Any, Dict

from hullprice.models import Scenario, load_scenario
from hullprice.utils import to_fraction

EXAMPLES = tuple(range(1, 10))

EXAMPLE_1 = {'a': 10, 'b': 20, 'w': 300, 'g_max': 100, 'd_max': 20}

EXAMPLE_2 = {'a': 1, 'w': 10, 'd_max': 60, 'g_max': 100}


def _num(value) -> str:
    return str(to_fraction(value))


def _affine(slope) -> Dict[str, Any]:
    return {'kind': 'affine', 'slope': _num(slope)}


def _unit(unit_id: str, g_min, g_max, slope, fixed_cost, **extra) -> Dict[str, Any]:
    unit = {
        'id': unit_id,
        'g_min': _num(g_min),
        'g_max': _num(g_max),
        'variable_cost': _affine(slope),
        'no_load_cost': _num(fixed_cost),
    }
    unit.update(extra)
    return unit


def _bid(consumer_id: str, *steps) -> Dict[str, Any]:
    """
    Single period consumer bidding (price, quantity) steps.
    """
    return {'id': consumer_id, 'elastic_segments': [[[_num(price), _num(qty)] for price, qty in steps]]}


def _params(defaults: Dict[str, Any], params: Dict[str, Any]) -> Dict[str, Fraction]:
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"Unknown example parameters: {', '.join(sorted(unknown))}")
    merged = dict(defaults, **params)
    return {key: to_fraction(value) for key, value in merged.items()}


def example_1(**params) -> Dict[str, Any]:
    p = _params(EXAMPLE_1, params)
    a, b, w, g_max, d_max = p['a'], p['b'], p['w'], p['g_max'], p['d_max']
    if not (a >= 0 and w > 0 and a + w / g_max < b and b * d_max < a * d_max + w):
        raise ValueError("Example 1 needs a >= 0, w > 0, a + w/g_max < b and b*d_max < a*d_max + w")
    return {
        'name': "Example 1",
        'rounding_policy': 'exact',
        'units': [_unit("producer", 0, g_max, a, w)],
        'consumers': [_bid("consumer", (b, d_max))],
    }


def example_2(**params) -> Dict[str, Any]:
    p = _params(EXAMPLE_2, params)
    a, w, g_max, d_max = p['a'], p['w'], p['g_max'], p['d_max']
    if not (a > 0 and w > 0 and 6 * w / a <= d_max < g_max):
        raise ValueError("Example 2 needs a > 0, w > 0 and 6w/a <= d_max < g_max")
    return {
        'name': "Example 2",
        'rounding_policy': 'exact',
        'units': [_unit("producer", 0, g_max, a, w)],
        'consumers': [{
            'id': "consumer",
            'quadratic_benefit': {'linear': _num(2 * a), 'quadratic': _num(a / d_max), 'd_max': _num(d_max)},
        }],
    }


def example_3(unit1_g_min=80) -> Dict[str, Any]:
    return {
        'name': "Example 3" if unit1_g_min == 80 else "Example 4",
        'units': [
            _unit("unit1", unit1_g_min, 160, 20, 0),
            _unit("unit2", 80, 160, 30, 15),
        ],
        'consumers': [{'id': "load", 'fixed_load': "200"}],
    }


def example_4() -> Dict[str, Any]:
    return example_3(unit1_g_min=0)


def example_5(aggregated=False) -> Dict[str, Any]:
    if aggregated:
        consumers = [_bid("consumer", (100, 100), (15, 300))]
    else:
        consumers = [_bid("consumer1", (100, 100)), _bid("consumer2", (15, 300))]
    return {
        'name': "Example 5 (one consumer)" if aggregated else "Example 5",
        'units': [_unit("producer", 250, 250, 20, 50)],
        'consumers': consumers,
    }


def example_6() -> Dict[str, Any]:
    return {
        'name': "Example 6",
        'units': [_unit("producer1", 0, 80, 40, 510), _unit("producer2", 0, 80, 40, 510)],
        'consumers': [_bid("consumer", (50, 100))],
    }


def example_7() -> Dict[str, Any]:
    return {
        'name': "Example 7",
        'units': [_unit("producer", 250, 250, 20, 50)],
        'consumers': [
            _bid("consumer1", (100, 100)),
            {'id': "consumer2", 'discrete_blocks': [{'quantity': "200", 'price': "80"}]},
        ],
    }


def example_8() -> Dict[str, Any]:
    return {
        'name': "Example 8",
        'rounding_policy': 'exact',
        'network': {'kind': 'two-node', 'nodes': ["n1", "n2"], 'line_capacity': "100"},
        'units': [
            _unit("producer1", 100, 200, 15, 20, node="n1"),
            _unit("producer2", 150, 200, 10, 0, node="n2"),
        ],
        'consumers': [{'id': "load", 'node': "n1", 'fixed_load': "150"}],
    }


def example_9() -> Dict[str, Any]:
    return {
        'name': "Example 9",
        'periods': 2,
        'units': [_unit(
            "producer", 20, 100, 20, 80,
            startup_cost="0", ramp_limit="50", initial_status="on", initial_output="50",
        )],
        'consumers': [{
            'id': "consumer",
            'fixed_load': ["80", "10"],
            'elastic_segments': [[], [["10", "30"]]],
        }],
    }


DOCUMENTS = {
    1: example_1,
    2: example_2,
    3: example_3,
    4: example_4,
    5: example_5,
    6: example_6,
    7: example_7,
    8: example_8,
    9: example_9,
}


def example_document(number: int, **params) -> Dict[str, Any]:
    if number not in DOCUMENTS:
        raise ValueError(f"No builtin example {number}, choose from 1 to {len(DOCUMENTS)}")
    return DOCUMENTS[number](**params)


def builtin_example(number: int, **params) -> Scenario:
    """
    Scenario of a builtin example.

    :param number: 1 to 9.
    :param params: a, b, w, g_max, d_max for example 1, a, w, d_max, g_max for example 2 and
        aggregated=True for the one consumer variant of example 5.
    :return: Scenario
    """
    return load_scenario(example_document(number, **params))
