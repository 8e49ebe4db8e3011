"""Command-line front end: check, influence, eval, solve, export-lp, gen.

Every command is a pure function of its arguments and input bytes; repeated
runs produce identical output.  JSON is the machine interface (numbers with
up to 12 significant digits); tables are human convenience only.  Exit codes:
0 success/valid, 1 invalid input, 2 internal limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .evaluate import (
    Selection,
    is_feasible,
    objective_value,
    penalties,
    selection_weight,
)
from .graph import (
    Instance,
    InstanceFormatError,
    instance_from_json,
    instance_to_json,
    validate,
)
from .influence import influence_matrix, walk_closure
from .milp import build_model, export_lp, format_number
from .solver import (
    ExhaustiveLimitError,
    generate_instance,
    solve_bnb,
    solve_exhaustive,
)


class UsageError(Exception):
    """Bad command line; reported as a machine-readable error, exit 1."""


class CliInputError(Exception):
    """Input that parsed but cannot be processed; exit 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="depknap",
        description=(
            "Exact toolkit for binary knapsack instances whose element values "
            "depend, with signed and imprecise strengths, on selecting or "
            "ignoring other elements."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_io(sub: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            sub.add_argument("instance", help="instance JSON path, or - for stdin")
        sub.add_argument(
            "-o", "--output", default="-", help="output path, or - for stdout"
        )

    sub = commands.add_parser("check", help="validate an instance")
    add_io(sub)
    sub.set_defaults(func=_cmd_check)

    sub = commands.add_parser("influence", help="print the influence matrices")
    add_io(sub)
    sub.add_argument(
        "--walks", action="store_true", help="also report the walk-closure matrices"
    )
    sub.add_argument(
        "--table", action="store_true", help="human-readable table instead of JSON"
    )
    sub.set_defaults(func=_cmd_influence)

    sub = commands.add_parser("eval", help="evaluate a fixed selection")
    add_io(sub)
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--select", help="comma-separated element ids (empty string selects none)"
    )
    group.add_argument("--bits", help="0/1 bitmask, element order, e.g. 101")
    sub.set_defaults(func=_cmd_eval)

    sub = commands.add_parser("solve", help="find an optimal selection")
    add_io(sub)
    sub.add_argument(
        "--method",
        choices=("bnb", "exhaustive"),
        default="bnb",
        help="search strategy (default: bnb)",
    )
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.set_defaults(func=_cmd_solve)

    sub = commands.add_parser("export-lp", help="write the linearized model as LP text")
    add_io(sub)
    sub.add_argument(
        "--keep-g",
        action="store_true",
        help="keep the indicator variables instead of substituting x for them",
    )
    sub.set_defaults(func=_cmd_export_lp)

    sub = commands.add_parser("gen", help="generate a pseudo-random instance")
    add_io(sub, with_input=False)
    sub.add_argument("--n", type=int, required=True, help="number of elements")
    sub.add_argument(
        "--density", type=float, default=0.3, help="probability of each ordered pair"
    )
    sub.add_argument(
        "--neg", type=float, default=0.3, help="share of negative dependencies"
    )
    sub.add_argument("--seed", type=int, default=0, help="generator seed")
    sub.set_defaults(func=_cmd_gen)

    return parser


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise CliInputError(str(exc)) from exc


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _round12(obj):
    """Round every float in a JSON-able structure to 12 significant digits."""
    if isinstance(obj, float):
        return float(format_number(obj))
    if isinstance(obj, list):
        return [_round12(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    return obj


def _dump_json(payload) -> str:
    return json.dumps(_round12(payload), indent=2) + "\n"


def _load_instance(args) -> Instance:
    return instance_from_json(_read_text(args.instance))


def _load_valid_instance(args) -> Instance:
    instance = _load_instance(args)
    violations = validate(instance)
    if violations:
        raise CliInputError("invalid instance: " + "; ".join(violations))
    return instance


def _cmd_check(args) -> int:
    instance = _load_instance(args)
    violations = validate(instance)
    if violations:
        _write_text(args.output, "\n".join(violations) + "\n")
        return 1
    _write_text(args.output, "OK\n")
    return 0


def _matrix_rows(matrix) -> list[list[float]]:
    return [list(row) for row in matrix]


def _render_tables(ids: list[str], blocks: list[tuple[str, object]]) -> str:
    width = max(
        [len(s) for s in ids]
        + [
            len(format_number(v))
            for _, matrix in blocks
            for row in matrix
            for v in row
        ]
        + [1]
    )
    lines = []
    for name, matrix in blocks:
        lines.append(name)
        lines.append(" ".join(f"{s:>{width}}" for s in [" " * width] + ids).rstrip())
        for label, row in zip(ids, matrix):
            cells = [format_number(v) for v in row]
            lines.append(" ".join(f"{s:>{width}}" for s in [label] + cells).rstrip())
        lines.append("")
    return "\n".join(lines)


def _cmd_influence(args) -> int:
    instance = _load_valid_instance(args)
    matrices = influence_matrix(instance.vdg)
    blocks = [
        ("rho_pos", matrices.rho_pos),
        ("rho_neg", matrices.rho_neg),
        ("influence", matrices.influence),
    ]
    if args.walks:
        pos_walk, neg_walk = walk_closure(instance.vdg)
        blocks += [("rho_pos_walk", pos_walk), ("rho_neg_walk", neg_walk)]
    if args.table:
        ids = [e.id for e in instance.elements]
        _write_text(args.output, _render_tables(ids, blocks))
    else:
        payload = {name: _matrix_rows(matrix) for name, matrix in blocks}
        _write_text(args.output, _dump_json(payload))
    return 0


def _selection_from_args(instance: Instance, args) -> Selection:
    if args.bits is not None:
        selection = Selection.from_mask(args.bits)
        if len(selection.bits) != instance.n:
            raise CliInputError(
                f"bitmask length {len(selection.bits)} does not match "
                f"{instance.n} elements"
            )
        return selection
    ids = [token.strip() for token in args.select.split(",") if token.strip()]
    return Selection.from_ids(instance, ids)


def _cmd_eval(args) -> int:
    instance = _load_valid_instance(args)
    selection = _selection_from_args(instance, args)
    matrices = influence_matrix(instance.vdg)
    payload = {
        "selection": selection.ids(instance),
        "penalties": list(penalties(matrices, selection)),
        "feasible": is_feasible(instance, selection),
        "objective": objective_value(instance, matrices, selection),
        "total_weight": selection_weight(instance, selection),
    }
    _write_text(args.output, _dump_json(payload))
    return 0


def _cmd_solve(args) -> int:
    instance = _load_valid_instance(args)
    matrices = influence_matrix(instance.vdg)
    if args.method == "exhaustive":
        result = solve_exhaustive(instance, matrices)
    else:
        result = solve_bnb(instance, matrices)
    if args.json:
        payload = {
            "selection": result.selection.ids(instance),
            "bits": result.selection.as_mask(),
            "objective": result.objective,
            "penalties": list(result.penalties),
            "total_weight": result.total_weight,
            "nodes_explored": result.nodes_explored,
            "proof": result.proof,
        }
        _write_text(args.output, _dump_json(payload))
    else:
        chosen = ", ".join(result.selection.ids(instance)) or "(none)"
        lines = [
            f"objective: {format_number(result.objective)}",
            f"selection: {chosen}",
            f"bits: {result.selection.as_mask()}",
            f"total weight: {format_number(result.total_weight)} "
            f"(capacity {format_number(instance.capacity)})",
            "penalties: "
            + " ".join(
                f"{e.id}={format_number(p)}"
                for e, p in zip(instance.elements, result.penalties)
            ),
            f"nodes explored: {result.nodes_explored}",
            f"proof: {result.proof}",
        ]
        _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_export_lp(args) -> int:
    instance = _load_valid_instance(args)
    matrices = influence_matrix(instance.vdg)
    model = build_model(instance, matrices, eliminate_g=not args.keep_g)
    _write_text(args.output, export_lp(model))
    return 0


def _cmd_gen(args) -> int:
    instance = generate_instance(args.n, args.density, args.neg, args.seed)
    _write_text(args.output, instance_to_json(instance) + "\n")
    return 0


def _report_error(message: str) -> None:
    sys.stderr.write(json.dumps({"error": message}) + "\n")


def run(argv: list[str] | None = None) -> int:
    """Execute one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _report_error(str(exc))
        return 1
    try:
        return args.func(args)
    except (InstanceFormatError, CliInputError) as exc:
        _report_error(str(exc))
        return 1
    except ExhaustiveLimitError as exc:
        _report_error(str(exc))
        return 2
    except ValueError as exc:
        _report_error(str(exc))
        return 1


def main() -> None:
    sys.exit(run())
