#!/usr/bin/env python3
"""Run CDA1/CDA2/CDA3 on the gated medium-size TSPLIB instances."""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from maxcut.config import settings
from maxcut.errors import EXIT_GATE, EXIT_OK, EXIT_USAGE, InputError
from maxcut.instance import AlgorithmId
from maxcut.perturbation import PerturbationPolicy
from maxcut.pipeline import run_batch
from maxcut.reports import (
    compare_to_reference,
    failed_gates,
    load_reference,
    reference_metrics,
)


def main():
    """Run the gate set and print one line per (instance, algorithm)."""
    print("=" * 60)
    print("Canonical-dual max-cut - TSPLIB gate benchmark")
    print("=" * 60)

    try:
        reference = load_reference(settings.reference_path)
    except InputError as e:
        print(f"Error: {e}")
        return EXIT_USAGE

    gated = sorted(name for name, entry in reference.items() if entry.gate)
    paths = [settings.data_dir / f"{name}.tsp" for name in gated]
    missing = [p for p in paths if not p.exists()]
    if missing:
        print("\nMissing instance files (download them from TSPLIB):")
        for p in missing:
            print(f"  {p}")
        paths = [p for p in paths if p.exists()]
    if not paths:
        print(f"\nNo gated instances found in {settings.data_dir}")
        return EXIT_USAGE

    algorithms = [AlgorithmId.CDA1, AlgorithmId.CDA2, AlgorithmId.CDA3]
    print(f"\nData dir:   {settings.data_dir}")
    print(f"Instances:  {', '.join(p.stem for p in paths)}")
    print(f"Algorithms: {', '.join(a.value for a in algorithms)}")

    def progress(current, total, name):
        pct = (current / total) * 100 if total > 0 else 0
        print(f"\r[{pct:5.1f}%] {current}/{total} - {name:<20}", end="", flush=True)

    print("\nSolving...")
    print("-" * 60)
    records = run_batch(
        paths,
        algorithms,
        PerturbationPolicy(),
        progress_callback=progress,
        metrics=reference_metrics(reference),
    )
    rows = compare_to_reference(records, reference)

    print("\n" + "-" * 60)
    print(f"{'instance':<12}{'alg':<6}{'cut':>12}{'expected':>12}  match  rank  time")
    for row in rows:
        cut = f"{row.cut:.0f}" if row.cut is not None else "-"
        expected = f"{row.expected:.0f}" if row.expected is not None else "-"
        match = {True: "yes", False: "no", None: "-"}[row.match]
        rank = row.rank if row.rank is not None else "-"
        time = f"{row.time:.2f}s" if row.time is not None else row.note
        print(
            f"{row.instance:<12}{row.algorithm.value:<6}{cut:>12}{expected:>12}"
            f"  {match:<5}  {rank!s:<4}  {time}"
        )

    missed = failed_gates(rows)
    if missed:
        print(f"\nGate FAILED for: {', '.join(missed)}")
        return EXIT_GATE
    print("\nAll gated instances reproduced.")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
