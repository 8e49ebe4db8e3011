"""Core data model: elements, the value dependency graph, and knapsack instances.

The value dependency graph is a signed directed fuzzy graph over element
indices.  Every ordered pair (i, j) carries a quality (positive, negative, or
non-specified) and a strength in [0, 1].  A nonzero strength with a specified
quality is an explicit dependency: the realized value of element i is affected
by whether element j is selected.  Zero strength and non-specified quality
always go together.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class InstanceFormatError(ValueError):
    """Malformed instance JSON, or a value the interchange format forbids."""


class Quality(Enum):
    """Sign of an explicit dependency; NON_SPECIFIED marks its absence."""

    POSITIVE = "+"
    NEGATIVE = "-"
    NON_SPECIFIED = "±"

    def combine(self, other: Quality) -> Quality:
        """Sign product used when chaining edges along a path."""
        if self is Quality.NON_SPECIFIED or other is Quality.NON_SPECIFIED:
            return Quality.NON_SPECIFIED
        return Quality.POSITIVE if self is other else Quality.NEGATIVE


@dataclass(frozen=True)
class Element:
    """One knapsack item: stable external id, value, and weight."""

    id: str
    value: float
    weight: float


@dataclass(frozen=True)
class Vdg:
    """Signed directed fuzzy graph over ``n`` element indices.

    ``sigma[i][j]`` and ``rho[i][j]`` hold the quality and strength of the
    ordered pair (i, j).  Instances are immutable; build them through
    :meth:`from_edges` and treat the matrices as read-only.
    """

    n: int
    sigma: tuple[tuple[Quality, ...], ...]
    rho: tuple[tuple[float, ...], ...]

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int, Quality, float]] = ()
    ) -> Vdg:
        """Build a graph from explicit ``(i, j, quality, strength)`` dependencies.

        Out-of-range indices and duplicate ordered pairs are construction
        errors; other rule violations (bad strengths, sign/strength
        mismatches, self-pairs) are representable and reported by
        :func:`validate`.
        """
        sigma = [[Quality.NON_SPECIFIED] * n for _ in range(n)]
        rho = [[0.0] * n for _ in range(n)]
        for i, j, quality, strength in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) outside node range 0..{n - 1}")
            if rho[i][j] != 0.0 or sigma[i][j] is not Quality.NON_SPECIFIED:
                raise ValueError(f"duplicate dependency for ordered pair ({i}, {j})")
            sigma[i][j] = quality
            rho[i][j] = float(strength)
        return cls(
            n=n,
            sigma=tuple(tuple(row) for row in sigma),
            rho=tuple(tuple(row) for row in rho),
        )

    @classmethod
    def empty(cls, n: int) -> Vdg:
        return cls.from_edges(n)


@dataclass(frozen=True)
class Instance:
    """A knapsack instance: elements, capacity, and the dependency graph."""

    elements: tuple[Element, ...]
    capacity: float
    vdg: Vdg

    @property
    def n(self) -> int:
        return len(self.elements)

    def index_of(self, element_id: str) -> int:
        """Resolve an external id to its element index.

        Raises ValueError for ids that are unknown or duplicated.
        """
        hits = [k for k, e in enumerate(self.elements) if e.id == element_id]
        if not hits:
            raise ValueError(f"unknown element id '{element_id}'")
        if len(hits) > 1:
            raise ValueError(f"element id '{element_id}' is ambiguous (duplicated)")
        return hits[0]


@dataclass(frozen=True)
class DependencyPath:
    """A sequence of at least two element indices following explicit edges."""

    nodes: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) < 2:
            raise ValueError("a dependency path needs at least two nodes")


def validate(instance: Instance) -> list[str]:
    """Return every rule violation in the instance; an empty list means valid.

    Violations are data, not failures: instances with out-of-range strengths,
    sign/strength mismatches, negative values, or mismatched graph size are
    representable and get one message per broken rule.
    """
    out: list[str] = []
    n = instance.n
    if n == 0:
        out.append("instance has no elements")

    seen: dict[str, int] = {}
    for idx, el in enumerate(instance.elements):
        if not math.isfinite(el.value):
            out.append(f"element {idx} ('{el.id}'): value is not finite")
        elif el.value < 0:
            out.append(f"element {idx} ('{el.id}'): negative value {el.value}")
        if not math.isfinite(el.weight):
            out.append(f"element {idx} ('{el.id}'): weight is not finite")
        elif el.weight < 0:
            out.append(f"element {idx} ('{el.id}'): negative weight {el.weight}")
        if el.id in seen:
            out.append(
                f"element {idx}: duplicate id '{el.id}' (first used by element {seen[el.id]})"
            )
        else:
            seen[el.id] = idx

    if not math.isfinite(instance.capacity):
        out.append("capacity is not finite")
    elif instance.capacity < 0:
        out.append(f"negative capacity {instance.capacity}")

    vdg = instance.vdg
    if vdg.n != n:
        out.append(f"graph covers {vdg.n} nodes but the instance has {n} elements")
    if len(vdg.sigma) != vdg.n or len(vdg.rho) != vdg.n or any(
        len(row) != vdg.n for row in vdg.sigma
    ) or any(len(row) != vdg.n for row in vdg.rho):
        out.append(f"graph matrices are not {vdg.n} x {vdg.n}")
        return out

    for i in range(vdg.n):
        for j in range(vdg.n):
            strength = vdg.rho[i][j]
            quality = vdg.sigma[i][j]
            if not math.isfinite(strength):
                out.append(f"dependency ({i}, {j}): strength is not finite")
                continue
            if strength < 0.0 or strength > 1.0:
                out.append(f"dependency ({i}, {j}): strength {strength} outside [0, 1]")
            if i == j:
                if strength != 0.0 or quality is not Quality.NON_SPECIFIED:
                    out.append(f"dependency ({i}, {i}): self-dependency is not allowed")
                continue
            if strength == 0.0 and quality is not Quality.NON_SPECIFIED:
                out.append(
                    f"dependency ({i}, {j}): zero strength requires non-specified "
                    f"quality, got '{quality.value}'"
                )
            if strength != 0.0 and quality is Quality.NON_SPECIFIED:
                out.append(
                    f"dependency ({i}, {j}): nonzero strength {strength} "
                    "with non-specified quality"
                )
    return out


def explicit_edges(vdg: Vdg) -> list[tuple[int, int, Quality, float]]:
    """All ordered pairs with nonzero strength, ascending by (i, j)."""
    return [
        (i, j, vdg.sigma[i][j], vdg.rho[i][j])
        for i in range(vdg.n)
        for j in range(vdg.n)
        if vdg.rho[i][j] != 0.0
    ]


_TOP_KEYS = {"elements", "capacity", "dependencies"}
_ELEMENT_KEYS = {"id", "value", "weight"}
_DEP_KEYS = {"from", "to", "quality", "strength"}
# U+2212 is accepted on input as a negative sign; output always uses ASCII "-".
_QUALITY_BY_SYMBOL = {
    "+": Quality.POSITIVE,
    "-": Quality.NEGATIVE,
    "−": Quality.NEGATIVE,
}


def _reject_constant(token: str) -> float:
    raise InstanceFormatError(f"non-finite number {token!r} is not allowed")


def _number(value: object, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceFormatError(f"{where} must be a number")
    return float(value)


def _check_keys(obj: dict, allowed: set[str], required: set[str], what: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise InstanceFormatError(f"unknown field(s) {unknown} in {what}")
    missing = sorted(required - set(obj))
    if missing:
        raise InstanceFormatError(f"missing field(s) {missing} in {what}")


def instance_from_json(text: str) -> Instance:
    """Parse the canonical instance JSON.

    Structural problems are rejected here: unknown fields, wrong types,
    strengths outside (0, 1], unresolvable or ambiguous ids, self-edges, and
    duplicate ordered pairs.  Rule violations that the format can represent
    (negative values, duplicate element ids, ...) parse fine and are left to
    :func:`validate`.
    """
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceFormatError("top level must be an object")
    _check_keys(data, _TOP_KEYS, {"elements", "capacity"}, "instance")

    raw_elements = data["elements"]
    if not isinstance(raw_elements, list):
        raise InstanceFormatError("'elements' must be an array")
    elements = []
    for k, raw in enumerate(raw_elements):
        if not isinstance(raw, dict):
            raise InstanceFormatError(f"element {k} must be an object")
        _check_keys(raw, _ELEMENT_KEYS, _ELEMENT_KEYS, f"element {k}")
        if not isinstance(raw["id"], str) or not raw["id"]:
            raise InstanceFormatError(f"element {k}: id must be a non-empty string")
        elements.append(
            Element(
                id=raw["id"],
                value=_number(raw["value"], f"element {k} value"),
                weight=_number(raw["weight"], f"element {k} weight"),
            )
        )

    capacity = _number(data["capacity"], "capacity")

    positions: dict[str, list[int]] = {}
    for k, el in enumerate(elements):
        positions.setdefault(el.id, []).append(k)

    def resolve(element_id: object, where: str) -> int:
        if not isinstance(element_id, str):
            raise InstanceFormatError(f"{where} must be a string id")
        hits = positions.get(element_id)
        if not hits:
            raise InstanceFormatError(f"{where}: unknown id '{element_id}'")
        if len(hits) > 1:
            raise InstanceFormatError(f"{where}: id '{element_id}' is duplicated")
        return hits[0]

    raw_deps = data.get("dependencies", [])
    if not isinstance(raw_deps, list):
        raise InstanceFormatError("'dependencies' must be an array")
    edges: list[tuple[int, int, Quality, float]] = []
    seen_pairs: set[tuple[int, int]] = set()
    for k, raw in enumerate(raw_deps):
        if not isinstance(raw, dict):
            raise InstanceFormatError(f"dependency {k} must be an object")
        _check_keys(raw, _DEP_KEYS, _DEP_KEYS, f"dependency {k}")
        i = resolve(raw["from"], f"dependency {k} 'from'")
        j = resolve(raw["to"], f"dependency {k} 'to'")
        if i == j:
            raise InstanceFormatError(
                f"dependency {k}: self-dependency on '{raw['from']}' is not allowed"
            )
        quality = _QUALITY_BY_SYMBOL.get(raw["quality"]) if isinstance(raw["quality"], str) else None
        if quality is None:
            raise InstanceFormatError(
                f"dependency {k}: quality must be '+' or '-', got {raw['quality']!r}"
            )
        strength = _number(raw["strength"], f"dependency {k} strength")
        if not (0.0 < strength <= 1.0):
            raise InstanceFormatError(
                f"dependency {k}: strength {strength} outside (0, 1]"
            )
        if (i, j) in seen_pairs:
            raise InstanceFormatError(
                f"dependency {k}: duplicate pair '{raw['from']}' -> '{raw['to']}'"
            )
        seen_pairs.add((i, j))
        edges.append((i, j, quality, strength))

    return Instance(
        elements=tuple(elements),
        capacity=capacity,
        vdg=Vdg.from_edges(len(elements), edges),
    )


def instance_to_json(instance: Instance, *, indent: int | None = 2) -> str:
    """Serialize an instance to the canonical JSON interchange format."""
    deps = []
    for i, j, quality, strength in explicit_edges(instance.vdg):
        if quality is Quality.NON_SPECIFIED:
            raise ValueError(
                f"cannot serialize pair ({i}, {j}): nonzero strength with "
                "non-specified quality"
            )
        deps.append(
            {
                "from": instance.elements[i].id,
                "to": instance.elements[j].id,
                "quality": quality.value,
                "strength": strength,
            }
        )
    payload = {
        "elements": [
            {"id": e.id, "value": e.value, "weight": e.weight}
            for e in instance.elements
        ],
        "capacity": instance.capacity,
        "dependencies": deps,
    }
    return json.dumps(payload, indent=indent)
