"""Reference Boolean evaluation of core formulas over finite traces.

This is the offline semantics used directly by ``run`` and as the oracle
for the online monitor. Evaluation is a pure recursion over the formula
and the trace; ``until``/``since`` are computed as their defining
disjunction (a witness frame for the right operand, with the left operand
required at every frame from the start up to and including the witness).

Conventions for finite traces and partial data:

* ``next`` at the last frame and ``prev`` at the first frame are false: a
  verdict never asserts facts about frames that do not exist.
* An object quantifier ranges over the objects of the frame at which the
  quantifier is evaluated. Each bound variable captures the object
  snapshot (id, class, confidence, box) from that frame; tuples may repeat
  objects. Every assignment is evaluated (an order-independent fold, no
  early exit), so quantifier cost genuinely scales with the domain.
* ``class``/``prob`` atoms re-resolve the captured id in the frame where
  the atom is evaluated, so they track the object through time; if the id
  is absent there, the atom is false. Box-derived atoms (``bbox``,
  ``lat``/``lon``, ``dist``) use the captured box itself, which is what
  lets a specification compare boxes across frames.
* Ratio atoms whose right-hand base value is zero are false and log a
  warning.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Sequence

from . import spatial
from .errors import ContractViolation
from .spatial import Region, Universe
from .stql import ast as A
from .trace import BoundingBox, DetectedObject, Frame

log = logging.getLogger("percemon.evaluate")


@dataclass(frozen=True)
class Env:
    """Pinned timestamps, pinned frame indices, and captured objects."""

    time_pins: Mapping[str, float] = field(default_factory=dict)
    frame_pins: Mapping[str, int] = field(default_factory=dict)
    objects: Mapping[str, DetectedObject] = field(default_factory=dict)

    def with_pins(self, time_var: str | None, timestamp: float,
                  frame_var: str | None, index: int) -> "Env":
        time_pins = dict(self.time_pins)
        frame_pins = dict(self.frame_pins)
        if time_var is not None:
            time_pins[time_var] = timestamp
        if frame_var is not None:
            frame_pins[frame_var] = index
        return Env(time_pins, frame_pins, self.objects)

    def with_objects(self, assignment: Mapping[str, DetectedObject]) -> "Env":
        objects = dict(self.objects)
        objects.update(assignment)
        return Env(self.time_pins, self.frame_pins, objects)


EMPTY_ENV = Env()


@dataclass
class EvalStats:
    """Mutable counters threaded through an evaluation."""

    assignments: int = 0


@dataclass(frozen=True)
class EvalContext:
    """A trace (or buffered window) and the index under evaluation."""

    trace: Sequence[Frame]
    index: int
    stats: EvalStats | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.index < len(self.trace):
            raise ContractViolation(
                f"evaluation index {self.index} outside trace of length {len(self.trace)}"
            )

    @property
    def frame(self) -> Frame:
        return self.trace[self.index]

    def at(self, index: int) -> "EvalContext":
        return replace(self, index=index)


def quantifier_assignments(
    variables: Sequence[str], frame: Frame
) -> Iterator[dict[str, DetectedObject]]:
    """All |objects|^k assignments of frame objects to the variables.

    Objects are enumerated in ascending id order and tuples in
    lexicographic order over the variable positions; repetition is allowed.
    """
    if not variables:
        raise ContractViolation("quantifier without variables")
    objs = [frame.objects[key] for key in sorted(frame.objects)]
    for combo in itertools.product(objs, repeat=len(variables)):
        yield dict(zip(variables, combo))


def ref_point(box: BoundingBox, ref: A.ReferencePoint) -> tuple[float, float]:
    """Coordinates of a named reference point of a box."""
    mid_x = (box.xmin + box.xmax) / 2.0
    mid_y = (box.ymin + box.ymax) / 2.0
    if ref is A.ReferencePoint.LM:
        return box.xmin, mid_y
    if ref is A.ReferencePoint.RM:
        return box.xmax, mid_y
    if ref is A.ReferencePoint.TM:
        return mid_x, box.ymin
    if ref is A.ReferencePoint.BM:
        return mid_x, box.ymax
    return mid_x, mid_y


def _captured(env: Env, name: str) -> DetectedObject:
    obj = env.objects.get(name)
    if obj is None:
        raise ContractViolation(f"object variable {name!r} is unbound; run check_bindings first")
    return obj


def _pin(env: Env, pins: Mapping[str, float], name: str, kind: str):
    if name not in pins:
        raise ContractViolation(f"{kind} variable {name!r} is unbound; run check_bindings first")
    return pins[name]


def _current(ctx: EvalContext, obj: DetectedObject) -> DetectedObject | None:
    return ctx.frame.objects.get(obj.object_id)


def _offset_value(term: A.OffsetTerm, env: Env) -> float:
    x, y = ref_point(_captured(env, term.var).bbox, term.ref)
    return x if term.axis is A.Axis.LAT else y


def eval_spatial(term: A.SpatialTerm, ctx: EvalContext, env: Env) -> Region:
    """Evaluate a core spatial term within the current frame's universe."""
    universe = Universe(ctx.frame.width, ctx.frame.height)

    def go(node: A.SpatialTerm) -> Region:
        if isinstance(node, A.EmptySet):
            return spatial.empty_region(universe)
        if isinstance(node, A.UniverseSet):
            return spatial.full_region(universe)
        if isinstance(node, A.BBoxOf):
            return spatial.from_box(_captured(env, node.var).bbox, universe)
        if isinstance(node, A.Complement):
            return spatial.complement(go(node.term))
        if isinstance(node, A.SpatialUnion):
            return spatial.union(go(node.lhs), go(node.rhs))
        raise ContractViolation(f"evaluator needs a desugared spatial term, got {type(node).__name__}")

    return go(term)


_warned: set[str] = set()


def _ratio_rhs_ok(value: float, what: str) -> bool:
    if value == 0:
        message = f"ratio denominator ({what}) is zero; the atom is false"
        # A degenerate box can recur on every frame of a stream; warn once
        # per distinct message and demote repeats so stderr stays readable.
        if message not in _warned and len(_warned) < 256:
            _warned.add(message)
            log.warning("%s (repeats logged at debug level)", message)
        else:
            log.debug("%s", message)
        return False
    return True


def _until(lhs: A.Formula, rhs: A.Formula, ctx: EvalContext, env: Env) -> bool:
    # Disjunction over witnesses j >= i, with lhs required at every frame
    # from i through j inclusive.
    prefix = True
    for j in range(ctx.index, len(ctx.trace)):
        here = ctx.at(j)
        lhs_here = evaluate(lhs, here, env)
        if prefix and lhs_here and evaluate(rhs, here, env):
            return True
        prefix = prefix and lhs_here
        if not prefix:
            return False
    return False


def _since(lhs: A.Formula, rhs: A.Formula, ctx: EvalContext, env: Env) -> bool:
    prefix = True
    for j in range(ctx.index, -1, -1):
        here = ctx.at(j)
        lhs_here = evaluate(lhs, here, env)
        if prefix and lhs_here and evaluate(rhs, here, env):
            return True
        prefix = prefix and lhs_here
        if not prefix:
            return False
    return False


def evaluate(phi: A.Formula, ctx: EvalContext, env: Env = EMPTY_ENV) -> bool:
    """Boolean quality of a desugared formula at ``ctx.index``."""
    if isinstance(phi, A.TrueConst):
        return True
    if isinstance(phi, A.Not):
        return not evaluate(phi.child, ctx, env)
    if isinstance(phi, A.Or):
        return evaluate(phi.lhs, ctx, env) or evaluate(phi.rhs, ctx, env)
    if isinstance(phi, A.Next):
        if ctx.index + 1 >= len(ctx.trace):
            return False
        return evaluate(phi.child, ctx.at(ctx.index + 1), env)
    if isinstance(phi, A.Prev):
        if ctx.index == 0:
            return False
        return evaluate(phi.child, ctx.at(ctx.index - 1), env)
    if isinstance(phi, A.Until):
        return _until(phi.lhs, phi.rhs, ctx, env)
    if isinstance(phi, A.Since):
        return _since(phi.lhs, phi.rhs, ctx, env)
    if isinstance(phi, A.Freeze):
        extended = env.with_pins(phi.time_var, ctx.frame.timestamp, phi.frame_var, ctx.index)
        return evaluate(phi.child, ctx, extended)
    if isinstance(phi, A.Exists):
        frame = ctx.frame
        if not frame.objects:
            return False
        # Full fold over the domain, no early exit: quantifier cost scales
        # with the number of assignments, which is the behavior the bench
        # measures, and the result is independent of enumeration order.
        result = False
        for assignment in quantifier_assignments(phi.variables, frame):
            if ctx.stats is not None:
                ctx.stats.assignments += 1
            result = evaluate(phi.child, ctx, env.with_objects(assignment)) or result
        return result

    if isinstance(phi, A.TimeConstraint):
        pinned = _pin(env, env.time_pins, phi.var, "time")
        return phi.cmp.apply(pinned - ctx.frame.timestamp, phi.bound)
    if isinstance(phi, A.FrameConstraint):
        pinned = _pin(env, env.frame_pins, phi.var, "frame")
        return phi.cmp.apply(pinned - ctx.index, phi.bound)
    if isinstance(phi, A.IdEq):
        return _captured(env, phi.lhs).object_id == _captured(env, phi.rhs).object_id
    if isinstance(phi, A.IdNeq):
        return _captured(env, phi.lhs).object_id != _captured(env, phi.rhs).object_id
    if isinstance(phi, A.ClassEqConst):
        current = _current(ctx, _captured(env, phi.var))
        return current is not None and current.class_label == phi.label
    if isinstance(phi, A.ClassEqVar):
        lhs = _current(ctx, _captured(env, phi.lhs))
        rhs = _current(ctx, _captured(env, phi.rhs))
        return lhs is not None and rhs is not None and lhs.class_label == rhs.class_label
    if isinstance(phi, A.ProbCmpConst):
        current = _current(ctx, _captured(env, phi.var))
        return current is not None and phi.cmp.apply(current.confidence, phi.bound)
    if isinstance(phi, A.ProbCmpRatio):
        lhs = _current(ctx, _captured(env, phi.lhs))
        rhs = _current(ctx, _captured(env, phi.rhs))
        if lhs is None or rhs is None:
            return False
        if not _ratio_rhs_ok(rhs.confidence, f"prob({phi.rhs})"):
            return False
        return phi.cmp.apply(lhs.confidence, phi.ratio * rhs.confidence)
    if isinstance(phi, A.SpatialExists):
        return not spatial.is_empty(eval_spatial(phi.term, ctx, env))
    if isinstance(phi, A.AreaCmpConst):
        return phi.cmp.apply(spatial.area(eval_spatial(phi.term, ctx, env)), phi.bound)
    if isinstance(phi, A.AreaCmpRatio):
        rhs_area = spatial.area(eval_spatial(phi.rhs, ctx, env))
        if not _ratio_rhs_ok(rhs_area, "area"):
            return False
        lhs_area = spatial.area(eval_spatial(phi.lhs, ctx, env))
        return phi.cmp.apply(lhs_area, phi.ratio * rhs_area)
    if isinstance(phi, A.EDCmp):
        ax, ay = ref_point(_captured(env, phi.lhs).bbox, phi.lhs_ref)
        bx, by = ref_point(_captured(env, phi.rhs).bbox, phi.rhs_ref)
        return phi.cmp.apply(math.hypot(ax - bx, ay - by), phi.bound)
    if isinstance(phi, A.OffsetCmpConst):
        return phi.cmp.apply(_offset_value(phi.term, env), phi.bound)
    if isinstance(phi, A.OffsetCmpRatio):
        rhs_value = _offset_value(phi.rhs, env)
        if not _ratio_rhs_ok(rhs_value, f"{phi.rhs.axis.value}({phi.rhs.var})"):
            return False
        return phi.cmp.apply(_offset_value(phi.lhs, env), phi.ratio * rhs_value)

    raise ContractViolation(f"evaluator needs a desugared formula, got {type(phi).__name__}")


def evaluate_trace(
    phi: A.Formula,
    frames: Sequence[Frame],
    history: int | None = None,
    horizon: int | None = None,
    stats: EvalStats | None = None,
) -> list[bool]:
    """Verdict for every frame index of a finite trace.

    With ``history``/``horizon`` set, each index is evaluated over its
    clipped window only (mirroring what a bounded online monitor sees);
    with both None the whole trace is visible from every index.
    """
    frames = list(frames)
    n = len(frames)
    out: list[bool] = []
    for i in range(n):
        if history is None and horizon is None:
            ctx = EvalContext(frames, i, stats)
        else:
            lo = 0 if history is None else max(0, i - history)
            hi = n - 1 if horizon is None else min(n - 1, i + horizon)
            ctx = EvalContext(frames[lo : hi + 1], i - lo, stats)
        out.append(evaluate(phi, ctx))
    return out
