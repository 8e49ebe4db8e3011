"""Solver-agnostic integer linear model of the problem, plus LP-format export.

The bilinear objective term ``x_i * p_i`` is replaced by a continuous
variable ``y_i`` tied to ``x_i`` and ``p_i`` with linking constraints, so the
model becomes linear:

    maximize   sum v_i x_i - v_i y_i
    subject to sum w_i x_i <= W
               p_i + I_ij x_j >= (|I_ij| + I_ij) / 2   for all i != j, I_ij != 0
               linking rows tying y_i to x_i and p_i

``y_i`` and ``p_i`` are continuous in [0, 1]: forcing them binary would
contradict ``y_i = x_i * p_i`` whenever the penalty is fractional.  The
indicator variable ``g_i`` of the faithful formulation is pinned to ``x_i``
by its own linking rows, so the default model substitutes ``x_i`` for it and
halves the linking constraints; ``eliminate_g=False`` keeps the full set.

Penalty rows with zero influence are vacuous (p_i >= 0 is already a bound)
and are omitted, which shrinks the row count on sparse instances.

``p_i`` is only bounded from below by its rows, so solver-reported penalties
for unselected or zero-value elements are not meaningful; recompute penalties
from the selection when reporting solutions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Instance
from .influence import InfluenceMatrix

BINARY = "binary"
CONTINUOUS = "continuous"

LESS_EQUAL = "<="
EQUAL = "="
GREATER_EQUAL = ">="

Term = tuple[float, str]


@dataclass(frozen=True)
class VariableDef:
    name: str
    kind: str
    lower: float
    upper: float


@dataclass(frozen=True)
class LinearConstraint:
    terms: tuple[Term, ...]
    sense: str
    rhs: float
    label: str


@dataclass(frozen=True)
class MilpModel:
    objective_sense: str
    objective: tuple[Term, ...]
    variables: tuple[VariableDef, ...]
    constraints: tuple[LinearConstraint, ...]


def build_model(
    instance: Instance, influence: InfluenceMatrix, *, eliminate_g: bool = True
) -> MilpModel:
    """Assemble the linearized model for an instance and its influence matrix."""
    n = instance.n
    if influence.n != n:
        raise ValueError(
            f"influence matrix covers {influence.n} elements, instance has {n}"
        )

    x = [f"x_{i}" for i in range(n)]
    y = [f"y_{i}" for i in range(n)]
    p = [f"p_{i}" for i in range(n)]
    g = [f"g_{i}" for i in range(n)]

    variables = [VariableDef(name, BINARY, 0.0, 1.0) for name in x]
    variables += [VariableDef(name, CONTINUOUS, 0.0, 1.0) for name in y]
    variables += [VariableDef(name, CONTINUOUS, 0.0, 1.0) for name in p]
    if not eliminate_g:
        variables += [VariableDef(name, BINARY, 0.0, 1.0) for name in g]

    objective = tuple(
        [(el.value, x[i]) for i, el in enumerate(instance.elements)]
        + [(-el.value, y[i]) for i, el in enumerate(instance.elements)]
    )

    constraints: list[LinearConstraint] = [
        LinearConstraint(
            terms=tuple((el.weight, x[i]) for i, el in enumerate(instance.elements)),
            sense=LESS_EQUAL,
            rhs=instance.capacity,
            label="cap",
        )
    ]

    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            inf = influence.influence[i][j]
            if inf == 0.0:
                continue
            constraints.append(
                LinearConstraint(
                    terms=((1.0, p[i]), (inf, x[j])),
                    sense=GREATER_EQUAL,
                    rhs=(abs(inf) + inf) / 2,
                    label=f"pen_{i}_{j}",
                )
            )

    for i in range(n):
        if eliminate_g:
            constraints += [
                LinearConstraint(
                    terms=((1.0, y[i]),),
                    sense=GREATER_EQUAL,
                    rhs=0.0,
                    label=f"lnk_y_lo_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, y[i]), (-1.0, x[i])),
                    sense=LESS_EQUAL,
                    rhs=0.0,
                    label=f"lnk_y_hi_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, y[i]), (-1.0, p[i]), (-1.0, x[i])),
                    sense=GREATER_EQUAL,
                    rhs=-1.0,
                    label=f"lnk_yp_lo_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, y[i]), (-1.0, p[i]), (1.0, x[i])),
                    sense=LESS_EQUAL,
                    rhs=1.0,
                    label=f"lnk_yp_hi_{i}",
                ),
            ]
        else:
            constraints += [
                LinearConstraint(
                    terms=((1.0, x[i]), (1.0, g[i])),
                    sense=GREATER_EQUAL,
                    rhs=0.0,
                    label=f"lnk_xg_lo_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, x[i]), (-1.0, g[i])),
                    sense=LESS_EQUAL,
                    rhs=0.0,
                    label=f"lnk_xg_hi_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, x[i]), (-1.0, g[i])),
                    sense=GREATER_EQUAL,
                    rhs=0.0,
                    label=f"lnk_gx_lo_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, x[i]), (1.0, g[i])),
                    sense=LESS_EQUAL,
                    rhs=2.0,
                    label=f"lnk_gx_hi_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, y[i]), (1.0, g[i])),
                    sense=GREATER_EQUAL,
                    rhs=0.0,
                    label=f"lnk_yg_lo_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, y[i]), (-1.0, g[i])),
                    sense=LESS_EQUAL,
                    rhs=0.0,
                    label=f"lnk_yg_hi_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, y[i]), (-1.0, p[i]), (-1.0, g[i])),
                    sense=GREATER_EQUAL,
                    rhs=-1.0,
                    label=f"lnk_yp_lo_{i}",
                ),
                LinearConstraint(
                    terms=((1.0, y[i]), (-1.0, p[i]), (1.0, g[i])),
                    sense=LESS_EQUAL,
                    rhs=1.0,
                    label=f"lnk_yp_hi_{i}",
                ),
            ]

    return MilpModel(
        objective_sense="maximize",
        objective=objective,
        variables=tuple(variables),
        constraints=tuple(constraints),
    )


def format_number(x: float) -> str:
    """Render a number with up to 12 significant digits, locale-independent."""
    text = f"{x:.12g}"
    return "0" if text == "-0" else text


def _terms_text(terms: tuple[Term, ...]) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (coef, name) in enumerate(terms):
        negative = coef < 0
        magnitude = -coef if negative else coef
        coef_text = "" if magnitude == 1.0 else format_number(magnitude) + " "
        if k == 0:
            parts.append(f"{'-' if negative else ''}{coef_text}{name}")
        else:
            parts.append(f"{'- ' if negative else '+ '}{coef_text}{name}")
    return " ".join(parts)


def export_lp(model: MilpModel) -> str:
    """Serialize the model as LP-format text.

    Sections: Maximize, Subject To, Bounds (continuous variables), Binary,
    End.  Output is deterministic for a given model.
    """
    lines = ["Maximize", f" obj: {_terms_text(model.objective)}", "Subject To"]
    for constraint in model.constraints:
        lines.append(
            f" {constraint.label}: {_terms_text(constraint.terms)} "
            f"{constraint.sense} {format_number(constraint.rhs)}"
        )
    lines.append("Bounds")
    for variable in model.variables:
        if variable.kind == CONTINUOUS:
            lines.append(
                f" {format_number(variable.lower)} <= {variable.name} "
                f"<= {format_number(variable.upper)}"
            )
    lines.append("Binary")
    for variable in model.variables:
        if variable.kind == BINARY:
            lines.append(f" {variable.name}")
    lines.append("End")
    return "\n".join(lines) + "\n"
