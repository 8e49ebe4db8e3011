"""Exact solvers for the dependency-aware knapsack, plus an instance generator.

Once a selection is fixed the objective evaluates directly, so the built-in
solvers work on selections: an exhaustive enumerator usable as an oracle up
to a size cap, and a depth-first branch-and-bound whose upper bound combines
optimistic penalties (every undecided interaction resolved in the element's
favor) with a fractional-knapsack relaxation of the undecided items.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .evaluate import (
    PenaltyVector,
    Selection,
    objective_value,
    penalties,
    selection_weight,
)
from .graph import Element, Instance, Quality, Vdg
from .influence import InfluenceMatrix

EXHAUSTIVE_CAP = 20


class ExhaustiveLimitError(RuntimeError):
    """Instance too large to enumerate every selection."""


@dataclass(frozen=True)
class SolveResult:
    """A certified optimum together with search diagnostics."""

    selection: Selection
    objective: float
    penalties: PenaltyVector
    total_weight: float
    nodes_explored: int
    proof: str


def _check_dims(instance: Instance, influence: InfluenceMatrix) -> None:
    if influence.n != instance.n:
        raise ValueError(
            f"influence matrix covers {influence.n} elements, instance has {instance.n}"
        )


def _nonzero_influences(influence: InfluenceMatrix) -> list[list[tuple[int, float]]]:
    n = influence.n
    return [
        [(j, influence.influence[i][j]) for j in range(n) if influence.influence[i][j] != 0.0]
        for i in range(n)
    ]


def _result(
    instance: Instance,
    influence: InfluenceMatrix,
    bits: tuple[int, ...],
    nodes: int,
    proof: str,
) -> SolveResult:
    selection = Selection(bits)
    return SolveResult(
        selection=selection,
        objective=objective_value(instance, influence, selection),
        penalties=penalties(influence, selection),
        total_weight=selection_weight(instance, selection),
        nodes_explored=nodes,
        proof=proof,
    )


def solve_exhaustive(
    instance: Instance, influence: InfluenceMatrix, *, cap: int = EXHAUSTIVE_CAP
) -> SolveResult:
    """Evaluate every selection and return the best feasible one.

    Ties break toward the lexicographically smallest bit vector (element 0
    most significant).  Refuses instances above ``cap`` elements.
    """
    _check_dims(instance, influence)
    n = instance.n
    if n > cap:
        raise ExhaustiveLimitError(
            f"{n} elements exceeds the exhaustive enumeration cap of {cap}; "
            "use solve_bnb instead"
        )
    weights = [el.weight for el in instance.elements]
    values = [el.value for el in instance.elements]
    nonzero = _nonzero_influences(influence)
    capacity = instance.capacity

    best_objective = float("-inf")
    best_mask = None
    shift = [n - 1 - i for i in range(n)]
    for mask in range(1 << n):
        weight = 0.0
        for i in range(n):
            if (mask >> shift[i]) & 1:
                weight += weights[i]
        if weight > capacity:
            continue
        objective = 0.0
        for i in range(n):
            if not (mask >> shift[i]) & 1:
                continue
            penalty = 0.0
            for j, inf in nonzero[i]:
                term = (abs(inf) + (1 - 2 * ((mask >> shift[j]) & 1)) * inf) / 2
                if term > penalty:
                    penalty = term
            objective += (1.0 - penalty) * values[i]
        if objective > best_objective:
            best_objective = objective
            best_mask = mask
    if best_mask is None:
        raise ValueError("instance has no feasible selection (negative capacity?)")
    bits = tuple((best_mask >> shift[i]) & 1 for i in range(n))
    return _result(instance, influence, bits, 1 << n, "search_exhausted")


class _SolveContext:
    """Precomputed per-instance data shared by the bound and the search."""

    def __init__(self, instance: Instance, influence: InfluenceMatrix) -> None:
        self.capacity = instance.capacity
        self.values = [el.value for el in instance.elements]
        self.weights = [el.weight for el in instance.elements]
        self.nonzero = _nonzero_influences(influence)
        # Zero-weight items first, then by descending value density, ties by index.
        def density(i: int) -> float:
            w = self.weights[i]
            return float("inf") if w == 0.0 else self.values[i] / w

        self.order = sorted(range(instance.n), key=lambda i: (-density(i), i))


def _bound(ctx: _SolveContext, fixed: Mapping[int, int]) -> float:
    decided = sorted(fixed.items())
    weight = 0.0
    for i, bit in decided:
        if bit:
            weight += ctx.weights[i]
    if weight > ctx.capacity:
        return float("-inf")
    value = 0.0
    for i, bit in decided:
        if not bit:
            continue
        penalty = 0.0
        for j, inf in ctx.nonzero[i]:
            xj = fixed.get(j)
            if xj is None:
                continue
            term = (abs(inf) + (1 - 2 * xj) * inf) / 2
            if term > penalty:
                penalty = term
        value += (1.0 - penalty) * ctx.values[i]
    remaining = ctx.capacity - weight
    for k in ctx.order:
        if k in fixed:
            continue
        w = ctx.weights[k]
        if w <= remaining:
            value += ctx.values[k]
            remaining -= w
        else:
            if remaining > 0.0:
                value += ctx.values[k] * (remaining / w)
            break
    return value


def relaxation_bound(
    instance: Instance, influence: InfluenceMatrix, fixed: Mapping[int, int]
) -> float:
    """Upper bound on the objective over all completions of a partial selection.

    Decided selected elements count with optimistic penalties (terms from
    undecided elements resolved to 0); undecided elements contribute their
    fractional-knapsack value at full worth.  Returns -inf when the decided
    part already exceeds capacity.
    """
    _check_dims(instance, influence)
    for i, bit in fixed.items():
        if not (0 <= i < instance.n):
            raise ValueError(f"fixed index {i} out of range")
        if bit not in (0, 1):
            raise ValueError("fixed assignments must be 0 or 1")
    return _bound(_SolveContext(instance, influence), dict(fixed))


def solve_bnb(instance: Instance, influence: InfluenceMatrix) -> SolveResult:
    """Depth-first branch-and-bound; objective provably matches solve_exhaustive.

    Branches follow the context ordering (selected child first); a node is
    pruned when its decided weight exceeds capacity or its relaxation bound
    cannot beat the incumbent.  The returned selection may differ from the
    exhaustive tie-breaking rule only when objectives tie exactly.
    """
    _check_dims(instance, influence)
    ctx = _SolveContext(instance, influence)
    n = instance.n

    best_objective = float("-inf")
    best_bits: tuple[int, ...] | None = None
    if instance.capacity >= 0.0:
        best_objective = 0.0
        best_bits = (0,) * n

    fixed: dict[int, int] = {}
    nodes = 0

    def visit(depth: int, weight: float) -> None:
        nonlocal nodes, best_objective, best_bits
        nodes += 1
        if depth == n:
            bits = tuple(fixed[i] for i in range(n))
            objective = objective_value(instance, influence, Selection(bits))
            if objective > best_objective:
                best_objective = objective
                best_bits = bits
            return
        if _bound(ctx, fixed) <= best_objective:
            return
        i = ctx.order[depth]
        item_weight = ctx.weights[i]
        if weight + item_weight <= ctx.capacity:
            fixed[i] = 1
            visit(depth + 1, weight + item_weight)
        fixed[i] = 0
        visit(depth + 1, weight)
        del fixed[i]

    visit(0, 0.0)
    if best_bits is None:
        raise ValueError("instance has no feasible selection (negative capacity?)")
    return _result(instance, influence, best_bits, nodes, "optimal")


def generate_instance(
    n: int, density: float, negative_share: float, seed: int
) -> Instance:
    """Deterministic pseudo-random instance for testing and benchmarking.

    Values are integers in [1, 100], weights integers in [1, 50], capacity is
    half the total weight rounded up.  Each ordered pair carries an explicit
    dependency with probability ``density``, negative with probability
    ``negative_share``; strengths are uniform on the 1/1024 grid of (0, 1] so
    every derived quantity serializes exactly at 12 significant digits.
    The same arguments always produce a bit-identical instance.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density!r}")
    if not 0.0 <= negative_share <= 1.0:
        raise ValueError(f"negative_share must be in [0, 1], got {negative_share!r}")
    if not isinstance(seed, int):
        raise ValueError(f"seed must be an integer, got {seed!r}")

    rng = random.Random(seed)
    elements = tuple(
        Element(
            id=f"e{i + 1}",
            value=float(rng.randint(1, 100)),
            weight=float(rng.randint(1, 50)),
        )
        for i in range(n)
    )
    total_weight = sum(int(el.weight) for el in elements)
    capacity = float((total_weight + 1) // 2)

    edges = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rng.random() < density:
                quality = (
                    Quality.NEGATIVE
                    if rng.random() < negative_share
                    else Quality.POSITIVE
                )
                strength = rng.randint(1, 1024) / 1024.0
                edges.append((i, j, quality, strength))

    return Instance(
        elements=elements,
        capacity=capacity,
        vdg=Vdg.from_edges(n, edges),
    )
