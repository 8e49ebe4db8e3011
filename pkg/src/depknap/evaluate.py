"""Evaluate a fixed selection: penalties, objective value, feasibility.

The penalty of element i is the largest value-loss fraction imposed on it by
ignored positive influencers or selected negative influencers:

    p_i = max over j != i of (|I_ij| + (1 - 2 x_j) * I_ij) / 2

and the realized objective is ``sum of x_i * (1 - p_i) * v_i``.  All
functions here are pure; penalties are reported for unselected elements too,
even though they do not contribute to the objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Instance
from .influence import InfluenceMatrix

PenaltyVector = tuple[float, ...]


@dataclass(frozen=True)
class Selection:
    """Binary selection vector; ``bits[i]`` is 1 when element i is selected."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("selection bits must be 0 or 1")

    @classmethod
    def from_ids(cls, instance: Instance, ids: Iterable[str]) -> Selection:
        bits = [0] * instance.n
        for element_id in ids:
            bits[instance.index_of(element_id)] = 1
        return cls(tuple(bits))

    @classmethod
    def from_mask(cls, mask: str) -> Selection:
        """Parse a 0/1 string, most significant bit = element 0."""
        if mask and any(c not in "01" for c in mask):
            raise ValueError(f"selection bitmask must contain only 0 and 1: '{mask}'")
        return cls(tuple(int(c) for c in mask))

    def ids(self, instance: Instance) -> list[str]:
        return [e.id for e, bit in zip(instance.elements, self.bits) if bit]

    def as_mask(self) -> str:
        return "".join(str(b) for b in self.bits)


def _check_length(got: int, expected: int, what: str) -> None:
    if got != expected:
        raise ValueError(f"{what}: expected length {expected}, got {got}")


def penalties(influence: InfluenceMatrix, selection: Selection) -> PenaltyVector:
    """Per-element penalties in [0, 1] for this selection.

    Each pair contributes |I_ij| when the influence works against the
    selection state of j (positive and j ignored, or negative and j
    selected) and 0 otherwise; the penalty is the maximum contribution.
    With a single element the maximum ranges over nothing and is 0.
    """
    n = influence.n
    _check_length(len(selection.bits), n, "selection")
    bits = selection.bits
    out = []
    for i in range(n):
        row = influence.influence[i]
        penalty = 0.0
        for j in range(n):
            if j == i:
                continue
            inf = row[j]
            if inf == 0.0:
                continue
            term = (abs(inf) + (1 - 2 * bits[j]) * inf) / 2
            if term > penalty:
                penalty = term
        out.append(penalty)
    return tuple(out)


def objective_value(
    instance: Instance, influence: InfluenceMatrix, selection: Selection
) -> float:
    """Total penalized value of the selected elements."""
    n = instance.n
    _check_length(influence.n, n, "influence matrix")
    _check_length(len(selection.bits), n, "selection")
    p = penalties(influence, selection)
    total = 0.0
    for element, bit, penalty in zip(instance.elements, selection.bits, p):
        if bit:
            total += (1.0 - penalty) * element.value
    return total


def selection_weight(instance: Instance, selection: Selection) -> float:
    """Total weight of the selected elements."""
    _check_length(len(selection.bits), instance.n, "selection")
    total = 0.0
    for element, bit in zip(instance.elements, selection.bits):
        if bit:
            total += element.weight
    return total


def is_feasible(instance: Instance, selection: Selection) -> bool:
    """True when the selected weight fits the knapsack capacity."""
    return selection_weight(instance, selection) <= instance.capacity
