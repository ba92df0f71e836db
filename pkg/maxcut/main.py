"""Command-line entry point: solve, bench and oracle subcommands."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from maxcut.config import settings
from maxcut.errors import (
    EXIT_GATE,
    EXIT_OK,
    EXIT_USAGE,
    MaxCutError,
    exit_code_for,
)
from maxcut.instance import AlgorithmId
from maxcut.parsers import EdgeWeightType
from maxcut.perturbation import AlphaMode
from maxcut.pipeline import BatchRecord, run_batch
from maxcut.reports import (
    BENCH_COLUMNS,
    SOLVE_COLUMNS,
    OutputFormat,
    RunManifest,
    compare_to_reference,
    failed_gates,
    flatten_record,
    load_reference,
    reference_metrics,
    render,
)

logger = logging.getLogger("maxcut")

# CLI flag -> PerturbationPolicy field
POLICY_FLAGS = {
    "alpha_mode": "alpha_mode",
    "delta": "alpha_slack",
    "beta_scale": "beta_scale",
    "linear_s": "linear_magnitude",
    "tau": "tau",
    "eps": "epsilon",
    "max_iters": "max_iters",
    "fix_fraction": "fix_fraction",
    "seed": "rng_seed",
}


def _algorithms(text: str) -> list[AlgorithmId]:
    names = [part.strip().upper() for part in text.split(",") if part.strip()]
    try:
        return [AlgorithmId(name) for name in names]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"unknown algorithm in {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxcut", description="Canonical-dual max-cut solvers for TSPLIB instances"
    )
    parser.add_argument("--log-level", default=settings.log_level, help="logging level")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instances", nargs="*", type=Path, help="TSPLIB files or directories")
    common.add_argument("--manifest", type=Path, help="YAML run manifest")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    common.add_argument("--out", dest="output", type=Path, help="write the report here")
    common.add_argument("--workers", type=int, help="parallel instance runs")
    common.add_argument("--oracle-limit", type=int, help="largest vertex count for the oracle")
    common.add_argument("--metric", choices=["EUC_2D", "GEO", "ATT"],
                        help="read node coordinates with this distance instead of the declared one")
    common.add_argument("--timing", action="store_true", default=None,
                        help="include wall-clock columns in CSV output")

    policy = argparse.ArgumentParser(add_help=False)
    policy.add_argument("--alg", dest="algorithms", type=_algorithms,
                        help="comma-separated subset of CDA1,CDA2,CDA3,ORACLE")
    policy.add_argument("--alpha-mode", choices=[m.value for m in AlphaMode])
    policy.add_argument("--delta", type=float, help="alpha slack")
    policy.add_argument("--beta-scale", type=float)
    policy.add_argument("--linear-s", type=float, help="sum |delta_c_i| for CDA2/CDA3")
    policy.add_argument("--tau", type=float)
    policy.add_argument("--eps", type=float)
    policy.add_argument("--max-iters", type=int)
    policy.add_argument("--fix-fraction", type=float,
                        help="share of a subproblem fixed per reduction round")
    policy.add_argument("--seed", type=int)

    solve = sub.add_parser("solve", parents=[common, policy], help="solve instances")
    solve.set_defaults(handler=cmd_solve, default_algorithms=[AlgorithmId.CDA1])

    bench = sub.add_parser("bench", parents=[common, policy], help="compare with published cuts")
    bench.add_argument("--reference", dest="reference_path", type=Path,
                       help="CSV of instance,expected_cut,gate")
    bench.set_defaults(
        handler=cmd_bench,
        default_algorithms=[AlgorithmId.CDA1, AlgorithmId.CDA2, AlgorithmId.CDA3],
    )

    oracle = sub.add_parser("oracle", parents=[common], help="exact brute-force max-cut")
    oracle.set_defaults(handler=cmd_oracle, default_algorithms=[AlgorithmId.ORACLE])
    return parser


def manifest_from_args(args: argparse.Namespace) -> RunManifest:
    """Merge YAML manifest keys with CLI flags; flags win."""
    policy = {
        field: getattr(args, flag)
        for flag, field in POLICY_FLAGS.items()
        if getattr(args, flag, None) is not None
    }
    overrides = {
        "instances": args.instances or None,
        "algorithms": getattr(args, "algorithms", None),
        "output": args.output,
        "output_format": args.output_format,
        "workers": args.workers,
        "oracle_limit": args.oracle_limit,
        "timing": args.timing,
        "reference_path": getattr(args, "reference_path", None),
        "metric": args.metric,
    }
    if args.manifest:
        manifest = RunManifest.from_yaml(
            args.manifest,
            defaults={"algorithms": args.default_algorithms},
            policy=policy,
            **overrides,
        )
    else:
        data = {k: v for k, v in overrides.items() if v is not None}
        data.setdefault("instances", [])
        data.setdefault("algorithms", args.default_algorithms)
        manifest = RunManifest(policy=policy, **data)
    if args.handler is cmd_oracle:
        manifest = manifest.model_copy(update={"algorithms": [AlgorithmId.ORACLE]})
    return manifest


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    print(f"Report written to {output}")


def _run(
    manifest: RunManifest, metrics: Optional[dict[str, EdgeWeightType]] = None
) -> list[BatchRecord]:
    def progress(current, total, name):
        logger.info("[%d/%d] %s", current, total, name)

    paths = manifest.instance_paths()
    metrics = dict(metrics or {})
    if manifest.metric is not None:
        metrics.update((p.stem, manifest.metric) for p in paths)
    return run_batch(
        paths,
        manifest.algorithms,
        manifest.policy,
        oracle_limit=manifest.oracle_limit,
        max_workers=manifest.workers,
        progress_callback=progress,
        metrics=metrics,
    )


def _show_timing(manifest: RunManifest) -> bool:
    # CSV stays reproducible run to run unless timing is asked for
    return manifest.timing or manifest.output_format is not OutputFormat.CSV


def _batch_exit(records: list[BatchRecord]) -> int:
    codes = [r.exit_code for r in records if not r.ok]
    return max(codes) if codes else EXIT_OK


def cmd_solve(manifest: RunManifest) -> int:
    """Solve every instance with every selected algorithm."""
    records = _run(manifest)
    timing = _show_timing(manifest)
    rows = [flatten_record(r, timing=timing) for r in records]
    columns = SOLVE_COLUMNS + (["time"] if timing else [])
    _emit(render(rows, manifest.output_format, records, columns), manifest.output)
    return _batch_exit(records)


def cmd_oracle(manifest: RunManifest) -> int:
    """Exact cuts only; instances over the oracle limit become error rows."""
    return cmd_solve(manifest)


def cmd_bench(manifest: RunManifest) -> int:
    """Compare against published cuts; exit 5 when a gated instance misses."""
    reference = load_reference(manifest.reference_path)
    records = _run(manifest, reference_metrics(reference))
    bench_rows = compare_to_reference(records, reference)

    columns = [c for c in BENCH_COLUMNS if _show_timing(manifest) or c != "time"]
    rows = [{c: row.model_dump(mode="json")[c] for c in columns} for row in bench_rows]
    if manifest.output_format is OutputFormat.JSON:
        text = render(rows, OutputFormat.JSON)
    else:
        text = render(rows, manifest.output_format, columns=columns)
    _emit(text, manifest.output)

    missed = failed_gates(bench_rows)
    if missed:
        logger.warning("gate failures: %s", ", ".join(missed))
        return EXIT_GATE
    return _batch_exit(records)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        manifest = manifest_from_args(args)
        return args.handler(manifest)
    except ValidationError as e:
        print(f"Error: invalid run manifest\n{e}", file=sys.stderr)
        return EXIT_USAGE
    except (MaxCutError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
