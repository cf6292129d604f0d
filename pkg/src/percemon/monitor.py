"""Online monitoring over a bounded FIFO frame window.

A monitor is initialized with a specification, desugars it, checks
bindings and derives its history/horizon requirement. Frames are pushed
one at a time; the verdict for frame i is emitted as soon as frame
i + horizon has arrived (so output lags input by exactly the horizon), and
``flush`` completes the sequence at end of stream using the same
truncated-trace semantics as the offline evaluator. The window never holds
more than history + horizon + 1 frames.

Configured bounds act as lower bounds on the window: the effective history
and horizon are the maximum of the inferred requirement and the override.
A specification whose requirement is unbounded needs an explicit override.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    ConfigError,
    ContractViolation,
    Diagnostic,
    NonMonotonicFrameNumber,
    NonMonotonicTimestamp,
    SpecError,
)
from .evaluate import EvalContext, EvalStats, evaluate
from .stql import ast as A
from .stql.bindings import check_bindings
from .stql.bounds import FrameBounds, compute_bounds
from .stql.desugar import desugar
from .trace import Frame


@dataclass(frozen=True)
class MonitorConfig:
    """Window overrides, an optional default universe, and spec parameters."""

    max_history: int | None = None
    max_horizon: int | None = None
    default_universe: tuple[float, float] | None = None
    params: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    """Per-frame monitoring output."""

    frame_number: int
    timestamp: float
    value: bool
    eval_time_ns: int

    def to_json_obj(self) -> dict:
        return {
            "frame": self.frame_number,
            "timestamp": self.timestamp,
            "verdict": self.value,
            "eval_time_ns": self.eval_time_ns,
        }


def _effective_bound(inferred: int | None, override: int | None, side: str) -> int:
    if inferred is None and override is None:
        raise ConfigError(
            f"specification needs an unbounded {side}; supply max_{side} to truncate the window"
        )
    if inferred is None:
        return override
    if override is None:
        return inferred
    return max(inferred, override)


class Monitor:
    """Single-owner online monitor; push frames sequentially, then flush."""

    def __init__(self, formula: A.Formula, config: MonitorConfig | None = None):
        config = config or MonitorConfig()
        problems = check_bindings(formula)
        if problems:
            raise SpecError(
                [
                    Diagnostic(
                        d.kind, d.message,
                        d.loc.line if d.loc else None,
                        d.loc.column if d.loc else None,
                    )
                    for d in problems
                ]
            )
        self.formula = desugar(formula)
        self.inferred_bounds: FrameBounds = compute_bounds(self.formula)
        self.history = _effective_bound(self.inferred_bounds.history, config.max_history, "history")
        self.horizon = _effective_bound(self.inferred_bounds.horizon, config.max_horizon, "horizon")
        self.capacity = self.history + self.horizon + 1
        self.config = config
        self.stats = EvalStats()
        self._buffer: deque[Frame] = deque()
        self._base = 0          # stream index of the oldest buffered frame
        self._pushed = 0        # total frames pushed
        self._next = 0          # next verdict index to emit
        self._flushed = False
        self._last: Frame | None = None

    @property
    def bounds(self) -> FrameBounds:
        return FrameBounds(self.history, self.horizon)

    def _emit(self, index: int) -> Verdict:
        # The verdict window is exactly [index - history, index + horizon],
        # clamped to the stream. During pushes eviction already keeps the
        # buffer there; during flush the buffer still holds older frames
        # for verdicts past the first pending one, so trim the start.
        start = max(self._base, index - self.history)
        window = list(self._buffer)[start - self._base :]
        rel = index - start
        started = time.perf_counter_ns()
        value = evaluate(self.formula, EvalContext(window, rel, self.stats))
        elapsed = time.perf_counter_ns() - started
        frame = window[rel]
        return Verdict(frame.frame_number, frame.timestamp, bool(value), elapsed)

    def push_frame(self, frame: Frame) -> list[Verdict]:
        """Append one frame; return the verdicts it makes decidable."""
        if self._flushed:
            raise ContractViolation("monitor already flushed")
        if self._last is not None:
            if frame.frame_number <= self._last.frame_number:
                raise NonMonotonicFrameNumber(self._last.frame_number, frame.frame_number)
            if frame.timestamp < self._last.timestamp:
                raise NonMonotonicTimestamp(self._last.timestamp, frame.timestamp)
        self._last = frame
        self._buffer.append(frame)
        self._pushed += 1
        newest = self._pushed - 1

        out: list[Verdict] = []
        while self._next + self.horizon <= newest:
            out.append(self._emit(self._next))
            self._next += 1
            while self._base < self._next - self.history:
                self._buffer.popleft()
                self._base += 1
        if len(self._buffer) > self.capacity:
            raise ContractViolation(
                f"window holds {len(self._buffer)} frames, capacity is {self.capacity}"
            )
        return out

    def flush(self) -> list[Verdict]:
        """Emit the verdicts still pending at end of stream."""
        if self._flushed:
            return []
        out = [self._emit(index) for index in range(self._next, self._pushed)]
        self._next = self._pushed
        self._flushed = True
        return out

    @property
    def buffered(self) -> int:
        return len(self._buffer)


def new_monitor(formula: A.Formula, config: MonitorConfig | None = None) -> Monitor:
    """Construct a monitor; raises ``ConfigError`` for unbounded specs without overrides."""
    return Monitor(formula, config)


def run_monitor(formula: A.Formula, frames, config: MonitorConfig | None = None) -> list[Verdict]:
    """Push a whole finite trace through a fresh monitor and flush."""
    monitor = Monitor(formula, config)
    out: list[Verdict] = []
    for frame in frames:
        out.extend(monitor.push_frame(frame))
    out.extend(monitor.flush())
    return out
