"""Command-line interface: batch solving, validation, reports, what-if sweeps,
and the HTTP service launcher.

Exit codes: 0 success, 1 parse/schema/usage errors, 2 consistency failure
under --strict.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from .core import DecisionError, DecisionModel, build_matrix, hierarchy, judgment_from_token
from .engine import CR_THRESHOLD
from .model_io import load_model, render_report, save_model
from .session import evaluate_model
from .synthesis import weight_sensitivity

DEFAULT_PORT = 8000
PORT_ENV_VAR = "PRIORITREE_PORT"
STATIC_ENV_VAR = "PRIORITREE_STATIC"


def _load(path: str) -> DecisionModel:
    return load_model(Path(path).read_bytes())


def _inconsistent_matrices(snapshot) -> list[str]:
    return [
        mid
        for mid, rep in snapshot.consistency.items()
        if rep.cr is not None and rep.cr > CR_THRESHOLD
    ]


def _cmd_solve(args: argparse.Namespace) -> int:
    snapshot = evaluate_model(_load(args.model))
    sys.stdout.write(render_report(snapshot, "text").decode("utf-8"))
    if args.strict:
        bad = _inconsistent_matrices(snapshot)
        if bad:
            sys.stderr.write(
                f"consistency ratio above {CR_THRESHOLD} for: {', '.join(bad)}\n"
            )
            return 2
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    model = _load(args.model)
    snapshot = evaluate_model(model)
    n_matrices = 1 + len(model.alternative_matrices)
    sys.stdout.write(f"ok: {n_matrices} matrices, all reciprocal and on-scale\n")
    width = max(len(mid) for mid in snapshot.consistency)
    for mid, rep in snapshot.consistency.items():
        cr = "n/a" if rep.cr is None else f"{rep.cr:.4f}"
        sys.stdout.write(f"  {mid.ljust(width)}  CR {cr}  {rep.verdict}\n")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    snapshot = evaluate_model(_load(args.model))
    sys.stdout.write(render_report(snapshot, args.format).decode("utf-8"))
    return 0


def _cmd_sensitivity(args: argparse.Namespace) -> int:
    snapshot = evaluate_model(_load(args.model))
    report = weight_sensitivity(snapshot.synthesis, args.criterion)
    sys.stdout.write(
        f"criterion {report.criterion_id}: current weight {report.current_weight:.6f}, "
        f"winner {report.winner}\n"
    )
    sys.stdout.write(
        f"winner unchanged for weight in [{report.stable_low:.6f}, {report.stable_high:.6f}]\n"
    )
    if report.crossover_weight is None:
        sys.stdout.write("no crossover: the winner holds over the whole range\n")
    else:
        sys.stdout.write(
            f"crossover at {report.crossover_weight:.6f} -> challenger {report.challenger}\n"
        )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    static = args.static or os.environ.get(STATIC_ENV_VAR)
    if static is None and Path("frontend/dist").is_dir():
        static = "frontend/dist"
    app = create_app(static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _skeleton_bytes() -> bytes:
    hier = hierarchy(
        "Describe the decision goal",
        [("C1", "First criterion"), ("C2", "Second criterion")],
        [("A1", "First alternative"), ("A2", "Second alternative")],
    )
    one = [(0, 1, judgment_from_token("1"))]
    model = DecisionModel(
        hierarchy=hier,
        criteria_matrix=build_matrix(hier.criterion_ids, one),
        alternative_matrices={
            cid: build_matrix(hier.alternative_ids, one) for cid in hier.criterion_ids
        },
    )
    return save_model(model, metadata={"notes": "Edit ids, labels, and judgment values."})


def _cmd_init(args: argparse.Namespace) -> int:
    data = _skeleton_bytes()
    if args.output:
        Path(args.output).write_bytes(data)
        sys.stdout.write(f"wrote {args.output}\n")
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prioritree",
        description="Pairwise-comparison decision engine: solve, check, and serve decision models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the full pipeline and print the text report")
    p.add_argument("model", help="path to a .ahp.json document")
    p.add_argument(
        "--strict",
        action="store_true",
        help=f"exit 2 when any matrix has CR above {CR_THRESHOLD}",
    )
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check", help="validate a document and report consistency only")
    p.add_argument("model")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("report", help="print a report in the chosen format")
    p.add_argument("model")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("sensitivity", help="sweep one criterion's weight and find crossovers")
    p.add_argument("model")
    p.add_argument("--criterion", required=True, help="criterion id to sweep")
    p.set_defaults(func=_cmd_sensitivity)

    p = sub.add_parser("serve", help="start the HTTP elicitation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT)),
        help=f"port to bind (default ${PORT_ENV_VAR} or {DEFAULT_PORT})",
    )
    p.add_argument("--static", help="directory with the built UI bundle to host at /")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("init", help="emit a skeleton document")
    p.add_argument("--output", help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_init)

    return parser


def cli_run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except DecisionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(cli_run(sys.argv[1:]))
