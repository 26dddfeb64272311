"""
Set algebra over quantities.

An IntervalUnion is a finite union of disjoint intervals on the real line, a StatusOutputSet is a
finite union of profiles, each a commitment (or discrete consumption) pattern with one
IntervalUnion of quantities per period plus an optional ramp chain.
"""
import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from hullprice.enums import ConstructionMethod
from hullprice.utils import Number, display_number, leq

INF = math.inf

__all__ = ('INF', 'Interval', 'IntervalUnion', 'Ramp', 'State', 'Profile', 'StatusOutputSet', 'fraction_grid')


@dataclass(frozen=True)
class Interval:
    lo: Number
    hi: Number
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Interval lower end {self.lo} above upper end {self.hi}")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise ValueError("Degenerate open interval is empty")
        # Infinite ends are always open
        if math.isinf(self.lo) and not self.lo_open:
            object.__setattr__(self, 'lo_open', True)
        if math.isinf(self.hi) and not self.hi_open:
            object.__setattr__(self, 'hi_open', True)

    @classmethod
    def point(cls, value: Number) -> 'Interval':
        return cls(value, value)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Number:
        return self.hi - self.lo

    @property
    def is_bounded(self) -> bool:
        return not (math.isinf(self.lo) or math.isinf(self.hi))

    def contains(self, value: Number, closure: bool = False) -> bool:
        if closure or not self.lo_open:
            above = leq(self.lo, value)
        else:
            above = value > self.lo
        if closure or not self.hi_open:
            below = leq(value, self.hi)
        else:
            below = value < self.hi
        return above and below

    def closure(self) -> 'Interval':
        return Interval(self.lo, self.hi, math.isinf(self.lo), math.isinf(self.hi))

    def intersection(self, other: 'Interval') -> Optional['Interval']:
        if self.lo > other.lo or (self.lo == other.lo and self.lo_open):
            lo, lo_open = self.lo, self.lo_open
        else:
            lo, lo_open = other.lo, other.lo_open
        if self.hi < other.hi or (self.hi == other.hi and self.hi_open):
            hi, hi_open = self.hi, self.hi_open
        else:
            hi, hi_open = other.hi, other.hi_open
        if lo > hi or (lo == hi and (lo_open or hi_open)):
            return None
        return Interval(lo, hi, lo_open, hi_open)

    def shifted(self, delta: Number) -> 'Interval':
        return Interval(self.lo + delta, self.hi + delta, self.lo_open, self.hi_open)

    def negated(self) -> 'Interval':
        return Interval(-self.hi, -self.lo, self.hi_open, self.lo_open)

    def __str__(self):
        if self.is_point:
            return f"{{{display_number(self.lo)}}}"
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{display_number(self.lo)}, {display_number(self.hi)}{right}"


def _touches(a: Interval, b: Interval) -> bool:
    """
    Whether a and b (a starting no later than b) overlap or share an included end point.
    """
    if a.hi > b.lo:
        return True
    if a.hi == b.lo:
        return not (a.hi_open and b.lo_open)
    return False


class IntervalUnion:
    """
    Sorted, pairwise disjoint intervals. Immutable.
    """
    __slots__ = ('intervals',)

    def __init__(self, intervals: Iterable[Interval] = ()):
        object.__setattr__(self, 'intervals', self._normalize(intervals))

    def __setattr__(self, key, value):
        raise AttributeError("IntervalUnion is immutable")

    @staticmethod
    def _normalize(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
        ordered = sorted(intervals, key=lambda i: (i.lo, i.lo_open, i.hi, not i.hi_open))
        merged: List[Interval] = []
        for interval in ordered:
            if merged and _touches(merged[-1], interval):
                last = merged[-1]
                if interval.hi > last.hi or (interval.hi == last.hi and not interval.hi_open):
                    hi, hi_open = interval.hi, interval.hi_open
                else:
                    hi, hi_open = last.hi, last.hi_open
                lo_open = last.lo_open and not (interval.lo == last.lo and not interval.lo_open)
                merged[-1] = Interval(last.lo, hi, lo_open, hi_open)
            else:
                merged.append(interval)
        return tuple(merged)

    @classmethod
    def point(cls, value: Number) -> 'IntervalUnion':
        return cls([Interval.point(value)])

    @classmethod
    def closed(cls, lo: Number, hi: Number) -> 'IntervalUnion':
        return cls([Interval(lo, hi)])

    @classmethod
    def empty(cls) -> 'IntervalUnion':
        return cls()

    @classmethod
    def points(cls, values: Iterable[Number]) -> 'IntervalUnion':
        return cls(Interval.point(value) for value in values)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def __eq__(self, other):
        if not isinstance(other, IntervalUnion):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return f"IntervalUnion({self})"

    def __str__(self):
        if not self.intervals:
            return "{}"
        return " ∪ ".join(str(interval) for interval in self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_point(self) -> bool:
        return len(self.intervals) == 1 and self.intervals[0].is_point

    @property
    def lo(self) -> Number:
        return self.intervals[0].lo

    @property
    def hi(self) -> Number:
        return self.intervals[-1].hi

    @property
    def is_bounded(self) -> bool:
        return all(interval.is_bounded for interval in self.intervals)

    def contains(self, value: Number, closure: bool = False) -> bool:
        return any(interval.contains(value, closure=closure) for interval in self.intervals)

    def closure(self) -> 'IntervalUnion':
        return IntervalUnion(interval.closure() for interval in self.intervals)

    def union(self, other: 'IntervalUnion') -> 'IntervalUnion':
        return IntervalUnion(self.intervals + other.intervals)

    __or__ = union

    def intersection(self, other: 'IntervalUnion') -> 'IntervalUnion':
        result = []
        for a in self.intervals:
            for b in other.intervals:
                overlap = a.intersection(b)
                if overlap is not None:
                    result.append(overlap)
        return IntervalUnion(result)

    __and__ = intersection

    def clip(self, lo: Number, hi: Number) -> 'IntervalUnion':
        return self.intersection(IntervalUnion.closed(lo, hi))

    def inflate(self, amount: Number) -> 'IntervalUnion':
        """
        Closed amount-neighbourhood of the set.
        """
        return IntervalUnion(Interval(i.lo - amount, i.hi + amount) for i in self.intervals)

    def shifted(self, delta: Number) -> 'IntervalUnion':
        return IntervalUnion(interval.shifted(delta) for interval in self.intervals)

    def negated(self) -> 'IntervalUnion':
        return IntervalUnion(interval.negated() for interval in self.intervals)

    def end_points(self) -> List[Number]:
        result = []
        for interval in self.intervals:
            result.append(interval.lo)
            if not interval.is_point:
                result.append(interval.hi)
        return result

    def sample(self) -> List[Number]:
        """
        End points and midpoints of every bounded component.
        """
        result = []
        for interval in self.intervals:
            if not interval.is_bounded:
                continue
            result.append(interval.lo)
            if not interval.is_point:
                result.append((interval.lo + interval.hi) / 2)
                result.append(interval.hi)
        return result


@dataclass(frozen=True)
class Ramp:
    """
    Ramp chain |q[t] - q[t-1]| <= limit with q[-1] = initial.
    """
    limit: Number
    initial: Number

    def allows(self, quantities: Sequence[Number]) -> bool:
        previous = self.initial
        for quantity in quantities:
            if not leq(abs(quantity - previous), self.limit):
                return False
            previous = quantity
        return True


@dataclass(frozen=True, order=True)
class State:
    """
    One player state: a pattern and a quantity per period.
    """
    pattern: Tuple[int, ...]
    quantities: Tuple[Number, ...]

    def __str__(self):
        pattern = ",".join(str(u) for u in self.pattern)
        quantities = ", ".join(display_number(q) for q in self.quantities)
        if not pattern:
            return f"({quantities})"
        return f"(u={pattern}; {quantities})"


@dataclass(frozen=True)
class Profile:
    pattern: Tuple[int, ...]
    boxes: Tuple[IntervalUnion, ...]
    ramp: Optional[Ramp] = None

    @property
    def is_empty(self) -> bool:
        return any(box.is_empty for box in self.boxes)

    def contains(self, quantities: Sequence[Number], closure: bool = True) -> bool:
        if len(quantities) != len(self.boxes):
            return False
        if not all(box.contains(q, closure=closure) for box, q in zip(self.boxes, quantities)):
            return False
        return self.ramp is None or self.ramp.allows(quantities)

    def closure(self) -> 'Profile':
        return replace(self, boxes=tuple(box.closure() for box in self.boxes))

    def with_boxes(self, boxes: Sequence[IntervalUnion]) -> 'Profile':
        return replace(self, boxes=tuple(boxes))

    def components(self) -> Iterator[Tuple[Interval, ...]]:
        """
        Boxes of the product, one interval per period.
        """
        return itertools.product(*(box.intervals for box in self.boxes))

    def sample_states(self) -> List[State]:
        states = []
        for combo in itertools.product(*(box.sample() for box in self.boxes)):
            if self.ramp is None or self.ramp.allows(combo):
                states.append(State(self.pattern, tuple(combo)))
        return states

    def __str__(self):
        boxes = " × ".join(str(box) for box in self.boxes)
        pattern = ",".join(str(u) for u in self.pattern)
        ramp = f", ramp {display_number(self.ramp.limit)}" if self.ramp else ""
        if not pattern:
            return f"{{{boxes}{ramp}}}"
        return f"{{u=({pattern}): {boxes}{ramp}}}"


@dataclass(frozen=True)
class StatusOutputSet:
    """
    Finite union of profiles. Houses original feasible sets, opportunity set projections,
    sunk cost sets and the modified sets.
    """
    profiles: Tuple[Profile, ...]
    method: ConstructionMethod = ConstructionMethod.ORIGINAL
    approximate: bool = False
    resolution: Optional[Number] = None
    limit: bool = False
    notes: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'profiles', tuple(p for p in self.profiles if not p.is_empty))

    @property
    def is_empty(self) -> bool:
        return not self.profiles

    @property
    def period_count(self) -> int:
        return len(self.profiles[0].boxes) if self.profiles else 0

    def __iter__(self) -> Iterator[Profile]:
        return iter(self.profiles)

    def __len__(self):
        return len(self.profiles)

    def __str__(self):
        if not self.profiles:
            return "∅"
        return " ∪ ".join(str(profile) for profile in self.profiles)

    def contains(self, state: State, closure: bool = True) -> bool:
        return any(
            profile.pattern == state.pattern and profile.contains(state.quantities, closure=closure)
            for profile in self.profiles
        )

    def contains_quantities(self, quantities: Sequence[Number], closure: bool = True) -> bool:
        """
        Status-blind membership, zero output reads the same online or offline.
        """
        return any(profile.contains(quantities, closure=closure) for profile in self.profiles)

    def quantities(self, period: int) -> IntervalUnion:
        result = IntervalUnion()
        for profile in self.profiles:
            result = result | profile.boxes[period]
        return result

    def closure(self) -> 'StatusOutputSet':
        return replace(self, profiles=tuple(profile.closure() for profile in self.profiles))

    def union(self, other: 'StatusOutputSet', method: ConstructionMethod = None) -> 'StatusOutputSet':
        profiles = list(self.profiles)
        for profile in other.profiles:
            if profile not in profiles:
                profiles.append(profile)
        return replace(
            self,
            profiles=tuple(profiles),
            method=method or self.method,
            approximate=self.approximate or other.approximate,
            limit=self.limit or other.limit,
        )

    def merged(self) -> 'StatusOutputSet':
        """
        Merge profiles that share pattern and ramp and differ in one period only.
        """
        profiles = list(self.profiles)
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(range(len(profiles)), 2):
                first, second = profiles[a], profiles[b]
                if first.pattern != second.pattern or first.ramp != second.ramp:
                    continue
                differing = [t for t, (x, y) in enumerate(zip(first.boxes, second.boxes)) if x != y]
                if len(differing) > 1:
                    continue
                boxes = list(first.boxes)
                for t in differing:
                    boxes[t] = first.boxes[t] | second.boxes[t]
                profiles[a] = first.with_boxes(boxes)
                del profiles[b]
                changed = True
                break
        return replace(self, profiles=tuple(profiles))

    def sample_states(self) -> List[State]:
        states = []
        for profile in self.profiles:
            for state in profile.sample_states():
                if state not in states:
                    states.append(state)
        return states

    def issubset(self, other: 'StatusOutputSet', by_quantity: bool = True) -> bool:
        """
        Containment checked on end points and midpoints of every box.
        """
        for state in self.sample_states():
            if by_quantity:
                if not other.contains_quantities(state.quantities):
                    return False
            elif not other.contains(state):
                return False
        return True

    def as_dict(self) -> dict:
        from hullprice.utils import as_json_number

        return {
            'method': self.method.value,
            'approximate': self.approximate,
            'resolution': as_json_number(self.resolution) if self.resolution is not None else None,
            'limit': self.limit,
            'profiles': [
                {
                    'pattern': list(profile.pattern),
                    'boxes': [
                        [
                            {
                                'lo': as_json_number(i.lo), 'hi': as_json_number(i.hi),
                                'lo_open': i.lo_open, 'hi_open': i.hi_open,
                            }
                            for i in box
                        ]
                        for box in profile.boxes
                    ],
                    'ramp': as_json_number(profile.ramp.limit) if profile.ramp else None,
                }
                for profile in self.profiles
            ],
        }


def fraction_grid(lo: Number, hi: Number, step: Fraction) -> List[Fraction]:
    """
    Grid points lo, lo + step, ... not above hi, plus hi itself.
    """
    if step <= 0:
        raise ValueError("Grid step must be positive")
    points = []
    count = int((Fraction(hi) - Fraction(lo)) / step)
    for k in range(count + 1):
        points.append(Fraction(lo) + k * step)
    if not points or points[-1] != hi:
        points.append(Fraction(hi))
    return points
