from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from hullprice.enums import NetworkKind
from hullprice.exceptions import ScenarioError
from hullprice.utils import as_json_number

__all__ = ('Network',)


@dataclass(frozen=True)
class Network:
    """
    One node, or two nodes joined by a line with a transmission capacity (MW).

    Positive line flow runs from the first node to the second.
    """
    kind: NetworkKind = NetworkKind.ONE_NODE
    nodes: Tuple[str, ...] = ("n1",)
    line_capacity: Optional[Fraction] = None

    @classmethod
    def one_node(cls, node: str = "n1") -> 'Network':
        return cls(NetworkKind.ONE_NODE, (node,))

    @classmethod
    def two_node(cls, capacity, nodes: Tuple[str, str] = ("n1", "n2")) -> 'Network':
        return cls(NetworkKind.TWO_NODE, tuple(nodes), capacity)

    @property
    def is_two_node(self) -> bool:
        return self.kind == NetworkKind.TWO_NODE

    def validate(self, path: str = "network"):
        expected = 2 if self.is_two_node else 1
        if len(self.nodes) != expected:
            raise ScenarioError(f"{path}.nodes", f"{self.kind.value} network needs {expected} node(s)")
        if len(set(self.nodes)) != len(self.nodes):
            raise ScenarioError(f"{path}.nodes", "node ids must be unique")
        if self.is_two_node:
            if self.line_capacity is None or self.line_capacity <= 0:
                raise ScenarioError(f"{path}.line_capacity", "must be positive for a two-node network")
        elif self.line_capacity is not None:
            raise ScenarioError(f"{path}.line_capacity", "a one-node network has no line")

    def to_dict(self) -> dict:
        data = {'kind': self.kind.value, 'nodes': list(self.nodes)}
        if self.line_capacity is not None:
            data['line_capacity'] = as_json_number(self.line_capacity)
        return data
