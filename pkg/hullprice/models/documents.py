import json
import logging
import os
from fractions import Fraction
from typing import Any, Dict, Union

from django.conf import settings

from hullprice.enums import CurveKind, NetworkKind, RoundingPolicy
from hullprice.exceptions import ScenarioError
from hullprice.models.consumer import ConsumerSpec, DiscreteBlock, QuadraticBenefit
from hullprice.models.curves import VariableCostCurve
from hullprice.models.network import Network
from hullprice.models.scenario import MIN_COST, Scenario, TimeGrid
from hullprice.models.unit import UnitSpec
from hullprice.schema import schema_errors
from hullprice.utils import to_fraction

__all__ = ('load_scenario', 'serialize', 'dumps')

logger = logging.getLogger(__name__)


def _number(value, path: str) -> Fraction:
    try:
        return to_fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ScenarioError(path, f"not a number: {value!r}")


def _per_period(value, periods: int, path: str, default=0):
    if value is None:
        value = default
    if isinstance(value, list):
        if len(value) != periods:
            raise ScenarioError(path, f"expected {periods} period values, got {len(value)}")
        return tuple(_number(v, f"{path}[{t}]") for t, v in enumerate(value))
    return tuple(_number(value, path) for _ in range(periods))


def _cost(data: Dict, path: str) -> VariableCostCurve:
    kind = CurveKind(data['kind'])
    if kind == CurveKind.AFFINE:
        if 'slope' not in data:
            raise ScenarioError(f"{path}.slope", "affine cost needs a slope")
        return VariableCostCurve.affine(_number(data['slope'], f"{path}.slope"))
    if kind == CurveKind.QUADRATIC:
        for key in ('linear', 'quadratic'):
            if key not in data:
                raise ScenarioError(f"{path}.{key}", "quadratic cost needs both coefficients")
        return VariableCostCurve.quadratic_curve(
            _number(data['linear'], f"{path}.linear"), _number(data['quadratic'], f"{path}.quadratic"),
        )
    if 'segments' not in data:
        raise ScenarioError(f"{path}.segments", "piecewise cost needs segments")
    return VariableCostCurve.piecewise([
        (_number(b, f"{path}.segments[{i}][0]"), _number(s, f"{path}.segments[{i}][1]"))
        for i, (b, s) in enumerate(data['segments'])
    ])


def _unit(data: Dict, periods: int, default_node: str, path: str) -> UnitSpec:
    ramp = data.get('ramp_limit')
    initial_status = data.get('initial_status', 'off') == 'on'
    if ramp is not None and initial_status and 'initial_output' not in data:
        raise ScenarioError(f"{path}.initial_output", "required for an online unit with a ramp limit")
    return UnitSpec(
        id=data['id'],
        node=data.get('node', default_node),
        g_min=_per_period(data.get('g_min'), periods, f"{path}.g_min"),
        g_max=_per_period(data['g_max'], periods, f"{path}.g_max"),
        variable_cost=_cost(data['variable_cost'], f"{path}.variable_cost"),
        no_load_cost=_number(data.get('no_load_cost', 0), f"{path}.no_load_cost"),
        startup_cost=_number(data.get('startup_cost', 0), f"{path}.startup_cost"),
        ramp_limit=_number(ramp, f"{path}.ramp_limit") if ramp is not None else None,
        initial_status=initial_status,
        initial_output=_number(data.get('initial_output', 0), f"{path}.initial_output"),
    )


def _consumer(data: Dict, periods: int, default_node: str, path: str) -> ConsumerSpec:
    segments = data.get('elastic_segments') or []
    if segments and len(segments) != periods:
        raise ScenarioError(f"{path}.elastic_segments", f"expected {periods} period lists, got {len(segments)}")
    quadratic = data.get('quadratic_benefit')
    return ConsumerSpec(
        id=data['id'],
        node=data.get('node', default_node),
        fixed_load=_per_period(data.get('fixed_load'), periods, f"{path}.fixed_load"),
        elastic_segments=tuple(
            tuple(
                (
                    _number(price, f"{path}.elastic_segments[{t}][{i}][0]"),
                    _number(qty, f"{path}.elastic_segments[{t}][{i}][1]"),
                )
                for i, (price, qty) in enumerate(period)
            )
            for t, period in enumerate(segments)
        ),
        quadratic_benefit=QuadraticBenefit(
            linear=_number(quadratic['linear'], f"{path}.quadratic_benefit.linear"),
            quadratic=_number(quadratic['quadratic'], f"{path}.quadratic_benefit.quadratic"),
            d_max=_number(quadratic['d_max'], f"{path}.quadratic_benefit.d_max"),
        ) if quadratic else None,
        discrete_blocks=tuple(
            DiscreteBlock(
                quantity=_per_period(block['quantity'], periods, f"{path}.discrete_blocks[{i}].quantity"),
                price=_number(block['price'], f"{path}.discrete_blocks[{i}].price"),
            )
            for i, block in enumerate(data.get('discrete_blocks') or [])
        ),
    )


def _network(data: Dict) -> Network:
    kind = NetworkKind(data.get('kind', 'one-node'))
    default_nodes = ["n1", "n2"] if kind == NetworkKind.TWO_NODE else ["n1"]
    capacity = data.get('line_capacity')
    return Network(
        kind=kind,
        nodes=tuple(data.get('nodes') or default_nodes),
        line_capacity=_number(capacity, "network.line_capacity") if capacity is not None else None,
    )


def _read(source) -> Dict[str, Any]:
    if isinstance(source, dict):
        return source
    if hasattr(source, 'read'):
        text = source.read()
    elif isinstance(source, str) and not source.lstrip().startswith("{") and os.path.isfile(source):
        with open(source, encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = source
    try:
        return json.loads(text)
    except (TypeError, json.JSONDecodeError) as ex:
        raise ScenarioError("document", f"not a JSON document: {ex}")


def load_scenario(source: Union[str, Dict, Any], exact: bool = True) -> Scenario:
    """
    Parse, schema-check and validate a scenario document.

    :param source: JSON text, a path to a JSON file, a file object or an already parsed dict.
    :param exact: Validate for the exact solvers (at most two periods).
    :return: Scenario
    """
    document = _read(source)
    errors = schema_errors(document)
    if errors:
        path, message = errors[0]
        logger.debug("Scenario document has %s schema error(s)", len(errors))
        raise ScenarioError(path, message)
    periods = document.get('periods', 1)
    network = _network(document.get('network') or {})
    default_node = network.nodes[0]
    scenario = Scenario(
        time_grid=TimeGrid(periods),
        units=tuple(
            _unit(data, periods, default_node, f"units[{i}]") for i, data in enumerate(document['units'])
        ),
        consumers=tuple(
            _consumer(data, periods, default_node, f"consumers[{j}]")
            for j, data in enumerate(document.get('consumers') or [])
        ),
        network=network,
        sunk_cost_convention=document.get('sunk_cost_convention', MIN_COST),
        rounding_policy=RoundingPolicy(document.get('rounding_policy', settings.HULLPRICE_ROUNDING)),
        name=document.get('name', ""),
    )
    return scenario.validate(exact=exact)


def serialize(scenario: Scenario) -> Dict[str, Any]:
    return scenario.to_dict()


def dumps(scenario: Scenario) -> str:
    return json.dumps(serialize(scenario), indent=2)
