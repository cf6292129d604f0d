"""Specification language: syntax trees, parsing, checks and analyses."""

from . import ast
from .bindings import BindDiagnostic, check_bindings
from .bounds import FrameBounds, compute_bounds
from .builtins import resolve_params, resolve_spec
from .desugar import desugar
from .parser import parse
from .printer import format_formula, format_spatial

__all__ = [
    "ast",
    "BindDiagnostic",
    "check_bindings",
    "FrameBounds",
    "compute_bounds",
    "resolve_params",
    "resolve_spec",
    "desugar",
    "parse",
    "format_formula",
    "format_spatial",
]
