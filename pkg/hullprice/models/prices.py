from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from hullprice.enums import RoundingPolicy
from hullprice.utils import Number, as_json_number, display_money, round_cent, to_fraction

__all__ = ('PriceKey', 'PriceVector')

PriceKey = Tuple[str, int]


@dataclass(frozen=True)
class PriceVector:
    """
    Price per (node, period), keys ordered node-major.
    """
    keys: Tuple[PriceKey, ...]
    values: Tuple[Number, ...]

    def __post_init__(self):
        if len(self.keys) != len(self.values):
            raise ValueError("One price per (node, period) expected")

    @classmethod
    def from_values(cls, keys: Iterable[PriceKey], values: Iterable) -> 'PriceVector':
        return cls(tuple(keys), tuple(v if isinstance(v, float) else to_fraction(v) for v in values))

    @classmethod
    def uniform(cls, keys: Iterable[PriceKey], value) -> 'PriceVector':
        keys = tuple(keys)
        return cls.from_values(keys, [value] * len(keys))

    def __getitem__(self, key: PriceKey) -> Number:
        return self.values[self.keys.index(key)]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def as_dict(self) -> Dict[PriceKey, Number]:
        return dict(zip(self.keys, self.values))

    def rounded(self, policy: RoundingPolicy) -> 'PriceVector':
        if policy == RoundingPolicy.EXACT:
            return self
        return PriceVector(self.keys, tuple(round_cent(v) for v in self.values))

    def display(self) -> str:
        return "(" + ", ".join(display_money(v) for v in self.values) + ")"

    def labels(self) -> Tuple[str, ...]:
        return tuple(f"{node}/t{period + 1}" for node, period in self.keys)

    def to_json(self) -> dict:
        return {label: as_json_number(v) for label, v in zip(self.labels(), self.values)}

    def __str__(self):
        return self.display()
