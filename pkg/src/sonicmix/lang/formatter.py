"""Canonical pretty-printer for Mixer Script."""

from __future__ import annotations

from decimal import Decimal

from .ast import ScriptAST, Track


def format_number(value: float) -> str:
    """Six significant digits, plain decimal notation, no exponent."""
    if value == 0:
        return "0"
    d = Decimal(f"{value:.6g}").normalize()
    return f"{d:f}"


def format_track(track: Track) -> str:
    calls = "".join(
        f".{op.method}({', '.join(format_number(v) for v in op.values)})" for op in track.chain
    )
    return f'"{track.asset_ref}"{calls}'


def format_script(ast: ScriptAST) -> str:
    return "\n".join(format_track(t) for t in ast.tracks) + "\n"
