import json
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from django.template.loader import render_to_string

from hullprice.dual import (
    ModifiedPricing, PriceCertificate, PriceSetReport, UpliftReport, modified_pricing, solve_dual, uplift_report,
)
from hullprice.enums import Method, RoundingPolicy, Verdict
from hullprice.exceptions import ConsistencyError
from hullprice.feasets import LIMIT, Epsilon
from hullprice.golden import GoldenResult
from hullprice.models import Scenario
from hullprice.oracle import GridSpec, brute_primal
from hullprice.primal import PrimalSolution, solve_primal
from hullprice.utils import Number, as_json_number, display_money, display_number, is_close, leq

logger = logging.getLogger(__name__)


def money_payload(value: Number) -> Dict[str, str]:
    """
    Two decimal display plus the exact value.
    """
    return {'display': display_money(value), 'exact': as_json_number(value)}


@dataclass(frozen=True)
class Pricing:
    """
    One pricing method applied to a scenario.
    """
    method: Method
    prices: PriceSetReport
    uplifts: UpliftReport
    modified: Optional[ModifiedPricing] = None

    @property
    def gap(self) -> Number:
        return self.prices.value - self.uplifts.primal_value


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    cells: Tuple[Optional[Number], ...]


@dataclass(frozen=True)
class OracleCheck:
    primal_value: Number
    difference: Number
    verdict: Verdict


@dataclass
class RunReport:
    scenario: Scenario
    primal: PrimalSolution
    pricings: List[Pricing]
    oracle: Optional[OracleCheck] = None
    epsilon: Epsilon = LIMIT
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def digest(self) -> str:
        return self.scenario.digest()

    def pricing(self, method: Method) -> Pricing:
        for pricing in self.pricings:
            if pricing.method == method:
                return pricing
        raise KeyError(method)

    def comparison(self) -> List[ComparisonRow]:
        """
        Per player pi*, pi+ and uplift of every pricing side by side, followed by the totals.
        """
        first = self.pricings[0].uplifts
        rows = []
        for row in first.rows:
            cells = []
            for pricing in self.pricings:
                other = pricing.uplifts.row(row.player_id)
                cells += [other.pi_star, other.pi_plus, other.uplift]
            rows.append(ComparisonRow(row.label, tuple(cells)))
        totals = []
        for pricing in self.pricings:
            uplifts = pricing.uplifts
            totals += [uplifts.total_pi_star, uplifts.total_pi_plus, uplifts.total_uplift]
        rows.append(ComparisonRow("Total", tuple(totals)))
        return rows

    def to_json(self) -> dict:
        primal = self.primal
        return {
            'scenario': {'name': self.scenario.name, 'digest': self.digest},
            'primal': {
                'value': money_payload(primal.value),
                'cost_form': self.scenario.has_fixed_load_only,
                'optima': [
                    {state_id: str(state) for state_id, state in zip(point.ids, point.states)}
                    for point in primal.optima
                ],
            },
            'pricings': [_pricing_json(pricing) for pricing in self.pricings],
            'comparison': [
                {'label': row.label, 'cells': [money_payload(cell) for cell in row.cells]}
                for row in self.comparison()
            ],
            'oracle': None if self.oracle is None else {
                'primal_value': as_json_number(self.oracle.primal_value),
                'difference': as_json_number(self.oracle.difference),
                'verdict': self.oracle.verdict.value,
            },
        }


def _certificate_json(certificate: Optional[PriceCertificate]) -> Optional[dict]:
    if certificate is None:
        return None
    return {
        'member': certificate.member,
        'reason': certificate.reason,
        'mixture': {
            player_id: [{'state': str(state), 'weight': as_json_number(weight)} for state, weight in mixture]
            for player_id, mixture in certificate.weights
        },
    }


def _pricing_json(pricing: Pricing) -> dict:
    prices, uplifts = pricing.prices, pricing.uplifts
    return {
        'method': pricing.method.value,
        'set_kind': prices.set_kind.value,
        'canonical_price': prices.canonical.to_json(),
        'settlement_price': uplifts.prices.to_json(),
        'rounding': uplifts.rounding.value,
        'structure': None if prices.structure is None else str(prices.structure),
        'region': None if prices.region is None else str(prices.region),
        'vertices': [vertex.to_json() for vertex in prices.vertices],
        'inert_players': list(prices.inert_players),
        'dual_value': money_payload(prices.value),
        'duality_gap': money_payload(pricing.gap),
        'congestion_rent': money_payload(uplifts.congestion_rent),
        'certificate': _certificate_json(prices.certificate),
        'rows': [
            {
                'player': row.player_id,
                'label': row.label,
                'kind': row.kind.value,
                'pi_star': money_payload(row.pi_star),
                'pi_plus': money_payload(row.pi_plus),
                'uplift': money_payload(row.uplift),
                'best_state': str(row.best_state),
            }
            for row in uplifts.rows
        ],
        'total_uplift': money_payload(uplifts.total_uplift),
    }


def _oracle_check(scenario: Scenario, primal: PrimalSolution) -> OracleCheck:
    """
    A grid dispatch can never beat the exact optimum.
    """
    value = brute_primal(scenario, GridSpec(1)).value
    difference = primal.value - value
    verdict = Verdict.PASS if leq(value, primal.value) or is_close(value, float(primal.value)) else Verdict.FAIL
    return OracleCheck(value, difference, verdict)


def run_scenario(scenario: Scenario, method: Method = Method.BOTH, epsilon: Epsilon = LIMIT, resolution=None,
                 rounding: RoundingPolicy = None, oracle: bool = False) -> RunReport:
    """
    Solve the dispatch and price it with one or both methods.

    :raises ConsistencyError: When the gaps are out of order or the oracle finds a better dispatch.
    """
    scenario = scenario.with_rounding(rounding)
    timings = {}
    started = time.perf_counter()
    primal = solve_primal(scenario)
    timings['primal'] = time.perf_counter() - started

    pricings = []
    if method in (Method.CHP, Method.BOTH):
        started = time.perf_counter()
        prices = solve_dual(scenario)
        uplifts = uplift_report(scenario, None, prices.canonical, primal)
        pricings.append(Pricing(Method.CHP, prices, uplifts))
        timings['chp'] = time.perf_counter() - started
    if method in (Method.MCHP, Method.BOTH):
        started = time.perf_counter()
        modified = modified_pricing(scenario, epsilon, resolution=resolution)
        uplifts = uplift_report(scenario, modified.sets, modified.report.canonical, primal)
        pricings.append(Pricing(Method.MCHP, modified.report, uplifts, modified))
        timings['mchp'] = time.perf_counter() - started

    if method == Method.BOTH:
        chp_gap, mchp_gap = pricings[0].gap, pricings[1].gap
        if not (leq(0, mchp_gap) and leq(mchp_gap, chp_gap)):
            raise ConsistencyError(
                f"Gaps of {scenario} out of order: modified {display_number(mchp_gap)}, "
                f"convex hull {display_number(chp_gap)}"
            )

    check = None
    if oracle:
        started = time.perf_counter()
        check = _oracle_check(scenario, primal)
        timings['oracle'] = time.perf_counter() - started
        if check.verdict == Verdict.FAIL:
            raise ConsistencyError(
                f"Grid dispatch of {scenario} beats the exact optimum by {display_number(-check.difference)}"
            )
    logger.info("Priced %s (%s) with %s", scenario, scenario.digest(), method.value)
    return RunReport(scenario, primal, pricings, check, epsilon, timings)


def render_text(report: RunReport) -> str:
    return render_to_string('hullprice/report/run.txt', {
        'report': report,
        'scenario': report.scenario,
        'primal': report.primal,
        'pricings': report.pricings,
        'comparison': report.comparison(),
        'methods': [pricing.method for pricing in report.pricings],
    })


def render_structured(report: RunReport) -> str:
    return json.dumps(report.to_json(), indent=2)


def render(report: RunReport, output_format: str = "text") -> str:
    if output_format == "structured":
        return render_structured(report)
    return render_text(report)


def render_golden(results: List[GoldenResult]) -> str:
    return render_to_string('hullprice/report/golden.txt', {
        'results': results,
        'passed': sum(1 for result in results if result.passed),
    })


def render_membership(scenario: Scenario, method: Method, certificate: PriceCertificate) -> str:
    return render_to_string('hullprice/report/verify.txt', {
        'scenario': scenario,
        'method': method,
        'certificate': certificate,
    })
