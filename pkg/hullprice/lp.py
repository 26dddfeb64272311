"""
Exact linear programming over rationals.

Dense two-phase tableau simplex with Bland's rule, called the way scipy.optimize.linprog is called:
minimize c @ x subject to A_ub @ x <= b_ub, A_eq @ x == b_eq and per-variable bounds (default x >= 0).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from hullprice.exceptions import ConsistencyError

logger = logging.getLogger(__name__)

OPTIMAL = 0
INFEASIBLE = 2
UNBOUNDED = 3

MESSAGES = {
    OPTIMAL: "Optimization terminated successfully.",
    INFEASIBLE: "The problem is infeasible.",
    UNBOUNDED: "The problem is unbounded.",
}

Bound = Tuple[Optional[Fraction], Optional[Fraction]]


@dataclass
class LinprogResult:
    status: int
    x: List[Fraction] = field(default_factory=list)
    fun: Optional[Fraction] = None

    @property
    def success(self) -> bool:
        return self.status == OPTIMAL

    @property
    def message(self) -> str:
        return MESSAGES[self.status]


class _Tableau:
    """
    Rows of [coefficients..., rhs] with a reduced cost row; artificial columns sit last.
    """
    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], columns: int):
        self.columns = columns
        self.size = len(rows)
        self.rows = []
        for i, (row, b) in enumerate(zip(rows, rhs)):
            artificial = [Fraction(0)] * self.size
            artificial[i] = Fraction(1)
            self.rows.append(list(row) + artificial + [b])
        self.basis = [columns + i for i in range(self.size)]
        self.cost = []

    @property
    def width(self) -> int:
        return self.columns + self.size

    def set_cost(self, cost: Sequence[Fraction]):
        self.cost = list(cost) + [Fraction(0)]
        for i, column in enumerate(self.basis):
            factor = cost[column]
            if factor:
                self.cost = [c - factor * v for c, v in zip(self.cost, self.rows[i])]

    def pivot(self, row: int, column: int):
        pivot_row = self.rows[row]
        factor = pivot_row[column]
        pivot_row[:] = [v / factor for v in pivot_row]
        for i, other in enumerate(self.rows):
            if i != row and other[column]:
                scale = other[column]
                other[:] = [v - scale * p for v, p in zip(other, pivot_row)]
        if self.cost[column]:
            scale = self.cost[column]
            self.cost = [v - scale * p for v, p in zip(self.cost, pivot_row)]
        self.basis[row] = column

    def run(self, allowed: int) -> int:
        """
        Pivot until optimal. Columns at index >= allowed never enter.
        """
        while True:
            entering = next((j for j in range(allowed) if self.cost[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best, leaving = None, None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leaving]):
                        best, leaving = ratio, i
            if leaving is None:
                return UNBOUNDED
            self.pivot(leaving, entering)

    def values(self) -> List[Fraction]:
        result = [Fraction(0)] * self.width
        for i, column in enumerate(self.basis):
            result[column] = self.rows[i][-1]
        return result


def _fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def linprog(c: Sequence, A_ub: Sequence[Sequence] = None, b_ub: Sequence = None,
            A_eq: Sequence[Sequence] = None, b_eq: Sequence = None,
            bounds: Sequence[Bound] = None) -> LinprogResult:
    """
    Solve a linear program exactly.

    :param c: Objective coefficients, minimized.
    :param A_ub: Inequality rows, A_ub @ x <= b_ub.
    :param A_eq: Equality rows, A_eq @ x == b_eq.
    :param bounds: (lo, hi) per variable, None for unbounded. Defaults to (0, None).
    :return: LinprogResult
    """
    n = len(c)
    A_ub, b_ub = [list(map(_fraction, r)) for r in (A_ub or [])], list(map(_fraction, b_ub or []))
    A_eq, b_eq = [list(map(_fraction, r)) for r in (A_eq or [])], list(map(_fraction, b_eq or []))
    bounds = list(bounds) if bounds is not None else [(0, None)] * n

    # Substitute x = offset + sign * y (or y_plus - y_minus when free) with y >= 0
    mapping, extra_rows = [], []
    columns = 0
    for j, (lo, hi) in enumerate(bounds):
        if lo is not None:
            mapping.append((_fraction(lo), [(columns, 1)]))
            if hi is not None:
                extra_rows.append((columns, _fraction(hi) - _fraction(lo)))
            columns += 1
        elif hi is not None:
            mapping.append((_fraction(hi), [(columns, -1)]))
            columns += 1
        else:
            mapping.append((Fraction(0), [(columns, 1), (columns + 1, -1)]))
            columns += 2

    def transform(row):
        coefficients = [Fraction(0)] * columns
        shift = Fraction(0)
        for j, a in enumerate(row):
            if not a:
                continue
            offset, terms = mapping[j]
            shift += a * offset
            for column, sign in terms:
                coefficients[column] += a * sign
        return coefficients, shift

    ub_count = len(A_ub) + len(extra_rows)
    rows, rhs = [], []
    for row, b in zip(A_ub, b_ub):
        coefficients, shift = transform(row)
        rows.append(coefficients)
        rhs.append(b - shift)
    for column, width in extra_rows:
        coefficients = [Fraction(0)] * columns
        coefficients[column] = Fraction(1)
        rows.append(coefficients)
        rhs.append(width)
    for row, b in zip(A_eq, b_eq):
        coefficients, shift = transform(row)
        rows.append(coefficients)
        rhs.append(b - shift)
    # Slack per inequality row
    total = columns + ub_count
    for i, row in enumerate(rows):
        slack = [Fraction(0)] * ub_count
        if i < ub_count:
            slack[i] = Fraction(1)
        row.extend(slack)
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    tableau = _Tableau(rows, rhs, total)
    tableau.set_cost([Fraction(0)] * total + [Fraction(1)] * len(rows))
    tableau.run(allowed=total)
    if tableau.cost[-1] != 0:
        logger.debug("LP infeasible, phase one residual %s", -tableau.cost[-1])
        return LinprogResult(INFEASIBLE)
    for i, column in enumerate(tableau.basis):
        if column >= total:
            entering = next((j for j in range(total) if tableau.rows[i][j] != 0), None)
            if entering is not None:
                tableau.pivot(i, entering)

    objective = [Fraction(0)] * (total + len(rows))
    constant = Fraction(0)
    for j, a in enumerate(c):
        a = _fraction(a)
        offset, terms = mapping[j]
        constant += a * offset
        for column, sign in terms:
            objective[column] += a * sign
    tableau.set_cost(objective)
    if tableau.run(allowed=total) == UNBOUNDED:
        return LinprogResult(UNBOUNDED)

    y = tableau.values()
    x = []
    for offset, terms in mapping:
        x.append(offset + sum(sign * y[column] for column, sign in terms))
    fun = sum(_fraction(a) * v for a, v in zip(c, x))
    if fun != constant - tableau.cost[-1]:
        raise ConsistencyError(f"Simplex objective {fun} disagrees with its tableau {constant - tableau.cost[-1]}")
    return LinprogResult(OPTIMAL, x, fun)
