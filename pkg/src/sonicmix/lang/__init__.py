"""Mixer Script: parsing, canonical formatting and validation."""

from .ast import (
    METHODS,
    Arg,
    Diagnostic,
    EffectOp,
    ScriptAST,
    ScriptSyntaxError,
    Span,
    Track,
)
from .formatter import format_number, format_script
from .parser import parse_script
from .validator import errors, validate

__all__ = [
    "METHODS",
    "Arg",
    "Diagnostic",
    "EffectOp",
    "ScriptAST",
    "ScriptSyntaxError",
    "Span",
    "Track",
    "errors",
    "format_number",
    "format_script",
    "parse_script",
    "validate",
]
