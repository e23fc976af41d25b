"""Syntax tree and diagnostics for Mixer Script."""

from __future__ import annotations

from dataclasses import dataclass, field

# Parameter names per method, in canonical positional order.
METHODS: dict[str, tuple[str, ...]] = {
    "Volume": ("targetLUFS",),
    "Compressor": ("threshold", "ratio", "attack_ms", "release_ms"),
    "Reverb": ("room_size", "dry_wet"),
    "PeakFilter": ("frequency", "q_factor", "gain"),
    "LowPassFilter": ("frequency",),
    "HighPassFilter": ("frequency",),
    "StartAt": ("at",),
    "StopAt": ("at", "fade_out_duration"),
}

# Number of leading parameters that must be supplied.
REQUIRED_ARGS: dict[str, int] = {name: len(params) for name, params in METHODS.items()}
REQUIRED_ARGS["StopAt"] = 1

# Accepted spellings that map onto a canonical parameter name.
PARAM_ALIASES = {"q_facter": "q_factor"}

PLACEMENT_METHODS = frozenset({"StartAt", "StopAt"})


@dataclass(frozen=True)
class Span:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str
    line: int
    column: int

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


@dataclass(frozen=True)
class Arg:
    value: float
    name: str | None = field(default=None, compare=False)
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class EffectOp:
    """One chained method call; ``args`` are held in canonical positional order."""

    method: str
    args: tuple[Arg, ...]
    span: Span | None = field(default=None, compare=False)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(a.value for a in self.args)

    def param(self, name: str, default: float | None = None) -> float | None:
        params = METHODS[self.method]
        i = params.index(name)
        return self.args[i].value if i < len(self.args) else default


@dataclass(frozen=True)
class Track:
    asset_ref: str
    chain: tuple[EffectOp, ...] = ()
    span: Span | None = field(default=None, compare=False)

    def ops(self, method: str) -> list[EffectOp]:
        return [op for op in self.chain if op.method == method]


@dataclass(frozen=True)
class ScriptAST:
    tracks: tuple[Track, ...]

    @property
    def asset_refs(self) -> list[str]:
        return [t.asset_ref for t in self.tracks]


class ScriptSyntaxError(ValueError):
    """Raised by the parser; carries every diagnostic found."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))
