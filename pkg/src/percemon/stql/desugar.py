"""Rewrite derived operators into the core grammar.

    a and b          ->  not (not a or not b)
    a implies b      ->  not a or b
    eventually p     ->  true until p
    always p         ->  not (true until not p)
    once p           ->  true since p
    holds p          ->  not (true since not p)
    forall {v} @ p   ->  not exists {v} @ (not p)
    A & B (spatial)  ->  ~(~A | ~B)

The rewrite is idempotent and its output contains only core node kinds.
"""

from __future__ import annotations

from dataclasses import replace

from ..errors import ContractViolation
from . import ast as A


def _spatial(term: A.SpatialTerm) -> A.SpatialTerm:
    if isinstance(term, (A.EmptySet, A.UniverseSet, A.BBoxOf)):
        return term
    if isinstance(term, A.Complement):
        return A.Complement(_spatial(term.term))
    if isinstance(term, A.SpatialUnion):
        return A.SpatialUnion(_spatial(term.lhs), _spatial(term.rhs))
    if isinstance(term, A.SpatialIntersect):
        lhs = _spatial(term.lhs)
        rhs = _spatial(term.rhs)
        return A.Complement(A.SpatialUnion(A.Complement(lhs), A.Complement(rhs)))
    raise ContractViolation(f"unknown spatial term {term!r}")


def desugar(phi: A.Formula) -> A.Formula:
    """Return an equivalent formula using only core node kinds."""
    if isinstance(phi, A.And):
        return A.Not(A.Or(A.Not(desugar(phi.lhs)), A.Not(desugar(phi.rhs))))
    if isinstance(phi, A.Implies):
        return A.Or(A.Not(desugar(phi.lhs)), desugar(phi.rhs))
    if isinstance(phi, A.Eventually):
        return A.Until(A.TrueConst(), desugar(phi.child))
    if isinstance(phi, A.Always):
        return A.Not(A.Until(A.TrueConst(), A.Not(desugar(phi.child))))
    if isinstance(phi, A.Once):
        return A.Since(A.TrueConst(), desugar(phi.child))
    if isinstance(phi, A.Holds):
        return A.Not(A.Since(A.TrueConst(), A.Not(desugar(phi.child))))
    if isinstance(phi, A.Forall):
        return A.Not(A.Exists(phi.variables, A.Not(desugar(phi.child))))

    if isinstance(phi, A.Not):
        return A.Not(desugar(phi.child), loc=phi.loc)
    if isinstance(phi, A.Or):
        return A.Or(desugar(phi.lhs), desugar(phi.rhs), loc=phi.loc)
    if isinstance(phi, A.Next):
        return A.Next(desugar(phi.child), loc=phi.loc)
    if isinstance(phi, A.Prev):
        return A.Prev(desugar(phi.child), loc=phi.loc)
    if isinstance(phi, A.Until):
        return A.Until(desugar(phi.lhs), desugar(phi.rhs), loc=phi.loc)
    if isinstance(phi, A.Since):
        return A.Since(desugar(phi.lhs), desugar(phi.rhs), loc=phi.loc)
    if isinstance(phi, A.Exists):
        return A.Exists(phi.variables, desugar(phi.child), loc=phi.loc)
    if isinstance(phi, A.Freeze):
        return A.Freeze(phi.time_var, phi.frame_var, desugar(phi.child), loc=phi.loc)

    if isinstance(phi, A.SpatialExists):
        return replace(phi, term=_spatial(phi.term))
    if isinstance(phi, A.AreaCmpConst):
        return replace(phi, term=_spatial(phi.term))
    if isinstance(phi, A.AreaCmpRatio):
        return replace(phi, lhs=_spatial(phi.lhs), rhs=_spatial(phi.rhs))

    if isinstance(phi, A.ATOM_KINDS):
        return phi
    raise ContractViolation(f"unknown formula node {phi!r}")
