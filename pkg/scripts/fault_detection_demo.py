#!/usr/bin/env python3
"""Fault-detection walkthrough for the built-in checks.

Builds three deterministic streams (a single dropped detection, a single
box teleport, and a clean stationary stream), monitors them online, and
prints which frames each check flags.

Usage:
    python scripts/fault_detection_demo.py [--frames 100] [--fault-at 50]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from percemon.generator import drop_fault_trace, jump_fault_trace, stationary_trace  # noqa: E402
from percemon.monitor import run_monitor  # noqa: E402
from percemon.stql.builtins import phi1, phi2  # noqa: E402


def report(name: str, spec, frames) -> None:
    verdicts = run_monitor(spec, frames)
    flagged = [v.frame_number for v in verdicts if not v.value]
    mean_ns = sum(v.eval_time_ns for v in verdicts) // len(verdicts)
    print(f"{name}: {len(verdicts)} verdicts, flagged frames {flagged or 'none'}, "
          f"mean eval {mean_ns} ns")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=100)
    parser.add_argument("--fault-at", type=int, default=50)
    args = parser.parse_args()

    drop = drop_fault_trace(frames=args.frames, drop_at=args.fault_at)
    report(f"consistent detections, object missing at {args.fault_at}", phi1(), drop)

    jump = jump_fault_trace(frames=args.frames, jump_at=args.fault_at)
    report(f"smooth trajectories, box teleports at {args.fault_at}", phi2(), jump)

    steady = stationary_trace(frames=args.frames, objects=2)
    report("smooth trajectories, stationary stream", phi2(), steady)
    return 0


if __name__ == "__main__":
    sys.exit(main())
