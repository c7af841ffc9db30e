"""
superhomog - command line entry point
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

# Load environment variables
from dotenv import load_dotenv

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from algebra.rational import format_rational  # noqa: E402
from classification.classifier import (  # noqa: E402
    ClassificationRecord,
    classify_retract,
    enumerate_range,
    summarize_records,
)
from classification.data_contracts import (  # noqa: E402
    ActOutput,
    ClassOutput,
    H1Output,
    InvariantsOutput,
    RecordOutput,
    TransitionOutput,
    dump_json,
    load_automorphism,
)
from classification.transition import emit_transition, render_transition  # noqa: E402
from cohomology.automorphism import int_action  # noqa: E402
from cohomology.context import build_context, closed_form_dimension  # noqa: E402
from cohomology.sl2 import AlgebraKind, expected_dimension, invariant_subspace  # noqa: E402
from config.settings import EngineSettings, load_settings  # noqa: E402
from geometry.field_parser import parse_field, render_field  # noqa: E402
from geometry.operations import change_chart, super_bracket  # noqa: E402
from geometry.superfield import Chart, GradingVector  # noqa: E402
from tools.error_handling import ErrorHandler, PreconditionError, UsageError  # noqa: E402
from tools.logging_setup import configure_logging  # noqa: E402

load_dotenv()

logger = logging.getLogger("superhomog")

CHARTS = {"u0": Chart.U0, "u1": Chart.U1}


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as exceptions (exit code 1)"""

    def error(self, message: str):
        raise UsageError(message)


def _grading(text: str) -> GradingVector:
    return GradingVector.parse(text)


def _coords(values) -> List[str]:
    return [format_rational(value) for value in values]


def _record_output(record: ClassificationRecord) -> RecordOutput:
    return RecordOutput(
        retract=list(record.retract.k),
        presentation=list(record.presentation.k),
        permutation=list(record.permutation),
        case=record.case_label,
        algebra_kinds=list(record.algebra_kinds),
        count=record.count,
        classes=[
            ClassOutput(
                label=c.label,
                cocycle=c.expression,
                algebras=list(c.algebras),
                certificate=list(c.certificate),
                coordinates=_coords(c.cohclass.coords),
            )
            for c in record.classes
        ],
        invariant_dimensions=record.invariant_dimensions,
        status=record.status.value,
        verification=record.verification,
    )


def _record_text(record: ClassificationRecord) -> str:
    lines = [
        f"retract {record.retract}  case {record.case_label or '-'}  "
        f"presentation {record.presentation}  "
        f"permutation ({','.join(str(i) for i in record.permutation)})",
        f"count {record.count}  kinds {', '.join(record.algebra_kinds) or '-'}  "
        f"status {record.status.value}",
    ]
    for c in record.classes:
        lines.append(f"  {c.label} [{', '.join(c.algebras)}]: {c.expression}")
    for gate in record.verification.get("gates", []):
        lines.append(f"  gate {gate['gate_name']}: {gate['status'].value}")
    return "\n".join(lines)


def cmd_h1(args: argparse.Namespace, settings: EngineSettings) -> str:
    k = args.k
    ctx = build_context(k, args.deg, settings.window_margin)
    closed = closed_form_dimension(k, args.deg)
    basis = [render_field(b) for b in ctx.basis]
    if args.format == "json":
        return dump_json(
            H1Output(
                k=list(k.k),
                degree=args.deg,
                dimension=ctx.dimension,
                closed_form_dimension=closed,
                window=list(ctx.window),
                basis=basis,
            )
        )
    lines = [f"H1(T_{args.deg}) for k={k}: dimension {ctx.dimension}"]
    if closed is not None:
        lines.append(f"closed form: {closed}")
    lines.extend(f"  {text}" for text in basis)
    return "\n".join(lines)


def cmd_invariants(args: argparse.Namespace, settings: EngineSettings) -> str:
    k = args.k
    ctx = build_context(k, 2, settings.window_margin)
    space = invariant_subspace(args.algebra, k, ctx)
    expected = expected_dimension(args.algebra, k)
    basis = [render_field(z.representative) for z in space]
    if args.format == "json":
        return dump_json(
            InvariantsOutput(
                k=list(k.k),
                algebra=args.algebra,
                dimension=len(space),
                expected_dimension=expected,
                basis=basis,
            )
        )
    lines = [f"{args.algebra}-invariants for k={k}: dimension {len(space)} (expected {expected})"]
    lines.extend(f"  {text}" for text in basis)
    return "\n".join(lines)


def cmd_bracket(args: argparse.Namespace, settings: EngineSettings) -> str:
    chart = CHARTS[args.chart]
    left = parse_field(args.left, chart, args.m)
    right = parse_field(args.right, chart, args.m)
    return render_field(super_bracket(left, right))


def cmd_chart(args: argparse.Namespace, settings: EngineSettings) -> str:
    field = parse_field(args.field, CHARTS[args.chart], args.k.m)
    return render_field(change_chart(field, args.k))


def cmd_act(args: argparse.Namespace, settings: EngineSettings) -> str:
    A = load_automorphism(args.matrix)
    if A.k != args.k:
        raise PreconditionError(f"matrix file is for k={A.k}, command asks for k={args.k}")
    validation = A.validate()
    ctx = build_context(args.k, 2, settings.window_margin)
    z = ctx.reduce(parse_field(args.cocycle, Chart.U0, args.k.m))
    image = int_action(A, z, unvalidated=args.unvalidated)
    representative = render_field(A.conjugate(z.representative))
    if args.format == "json":
        return dump_json(
            ActOutput(
                k=list(args.k.k),
                valid=validation.valid,
                violations=list(validation.violations),
                coordinates=_coords(image.coords),
                representative=representative,
            )
        )
    lines = [f"automorphism valid: {'yes' if validation.valid else 'no'}"]
    lines.extend(f"  violation: {v}" for v in validation.violations)
    lines.append(f"image coordinates: ({', '.join(_coords(image.coords))})")
    lines.append(f"image representative: {representative}")
    return "\n".join(lines)


def cmd_classify(args: argparse.Namespace, settings: EngineSettings) -> str:
    if (args.k is None) == (args.range is None):
        raise UsageError("classify needs exactly one of --k or --range")
    if args.k is not None:
        records = [classify_retract(args.k, settings.window_margin)]
    else:
        workers = args.workers or settings.workers
        records = enumerate_range(args.range, args.m, workers, settings.window_margin)
    if args.format == "json":
        return dump_json([_record_output(record) for record in records])
    if args.range is not None and args.summary:
        return "\n".join(summarize_records(records))
    return "\n\n".join(_record_text(record) for record in records)


def cmd_transition(args: argparse.Namespace, settings: EngineSettings) -> str:
    v = parse_field(args.cocycle, Chart.U0, args.k.m)
    transitions = emit_transition(args.k, v)
    lines = render_transition(transitions)
    if args.format == "json":
        return dump_json(
            TransitionOutput(
                k=list(args.k.k),
                y_prime=lines[0].split(" = ", 1)[1],
                eta_primes=[line.split(" = ", 1)[1] for line in lines[1:]],
            )
        )
    return "\n".join(lines)


COMMANDS: Dict[str, Callable[[argparse.Namespace, EngineSettings], str]] = {
    "h1": cmd_h1,
    "invariants": cmd_invariants,
    "bracket": cmd_bracket,
    "chart": cmd_chart,
    "act": cmd_act,
    "classify": cmd_classify,
    "transition": cmd_transition,
}


def build_parser(settings: EngineSettings) -> CommandParser:
    common = CommandParser(add_help=False)
    common.add_argument(
        "--format", choices=["text", "json"], default=settings.output_format, help="Output format"
    )
    common.add_argument(
        "--log-level",
        default=settings.log_level,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="Logging level",
    )

    parser = CommandParser(prog="superhomog", description="Even-homogeneous supermanifolds over CP1")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    h1 = subparsers.add_parser("h1", parents=[common], help="Basis of H1(T_q)")
    h1.add_argument("--k", type=_grading, required=True, help="Grading vector, e.g. 2,2,1")
    h1.add_argument("--deg", type=int, default=2, help="Degree q")

    invariants = subparsers.add_parser(
        "invariants", parents=[common], help="Invariant subspace of an sl2 subalgebra"
    )
    invariants.add_argument("--k", type=_grading, required=True)
    invariants.add_argument(
        "--algebra", choices=[kind.value for kind in AlgebraKind], default=AlgebraKind.S.value
    )

    bracket = subparsers.add_parser("bracket", parents=[common], help="Super bracket of two fields")
    bracket.add_argument("--left", required=True)
    bracket.add_argument("--right", required=True)
    bracket.add_argument("--m", type=int, default=3, help="Odd dimension")
    bracket.add_argument("--chart", choices=sorted(CHARTS), default="u0")

    chart = subparsers.add_parser("chart", parents=[common], help="Write a field in the other chart")
    chart.add_argument("--field", required=True)
    chart.add_argument("--k", type=_grading, required=True)
    chart.add_argument("--chart", choices=sorted(CHARTS), default="u0", help="Chart of --field")

    act = subparsers.add_parser("act", parents=[common], help="Int-action of an automorphism")
    act.add_argument("--matrix", required=True, help="JSON automorphism file")
    act.add_argument("--cocycle", required=True)
    act.add_argument("--k", type=_grading, required=True)
    act.add_argument(
        "--unvalidated", action="store_true", help="Act even if the degree constraints fail"
    )

    classify = subparsers.add_parser("classify", parents=[common], help="Classification records")
    classify.add_argument("--k", type=_grading, help="Single retract")
    classify.add_argument("--range", type=int, help="Every retract with entries in [-B, B]")
    classify.add_argument("--m", type=int, default=3, help="Odd dimension for --range")
    classify.add_argument("--workers", type=int, help="Processes for --range")
    classify.add_argument("--summary", action="store_true", help="One line per record")

    transition = subparsers.add_parser(
        "transition", parents=[common], help="Transition functions of the cocycle's atlas"
    )
    transition.add_argument("--k", type=_grading, required=True)
    transition.add_argument("--cocycle", required=True)

    return parser


def cli(argv: Optional[List[str]] = None) -> int:
    """Command line interface"""
    handler = ErrorHandler()
    command = None
    try:
        settings = load_settings()
        parser = build_parser(settings)
        args = parser.parse_args(argv)
        command = args.command
        if command is None:
            parser.print_help()
            return 1
        configure_logging(args.log_level)
        print(COMMANDS[command](args, settings))
        return 0
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else 0
    except Exception as error:
        result = handler.handle_error(error, {"command": command})
        print(f"error: {error}", file=sys.stderr)
        if result["error_info"]["stack_trace"]:
            logger.debug(result["error_info"]["stack_trace"])
        return result["exit_code"]


if __name__ == "__main__":
    sys.exit(cli())
