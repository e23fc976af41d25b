"""What the script generator gets to see each turn."""

from __future__ import annotations

from dataclasses import dataclass

from ..catalog import RetrievalSet
from ..lang import METHODS
from ..metadata import SoundObject

_ADJUSTS = {
    "Volume": "volume to target loudness (LUFS, -70..0)",
    "Compressor": "dynamics; threshold dBFS, ratio >= 1, times in ms",
    "Reverb": "adds reverb; both parameters 0..1",
    "PeakFilter": "boost/cut around a frequency; gain in dB (-24..24)",
    "LowPassFilter": "removes content above the frequency (Hz)",
    "HighPassFilter": "removes content below the frequency (Hz)",
    "StartAt": "start time of the event in seconds",
    "StopAt": "fade out from `at` seconds over fade_out_duration (default 0.01 s)",
}

SYNTAX_NOTES = """\
One track per line: an asset name in double quotes followed by chained calls,
e.g. "coin_drop".Volume(-18).StartAt(0.5)
Arguments are plain decimal numbers (no exponents), positional or name=value.
Only the assets listed below may be used. `#` starts a comment."""


def method_table() -> str:
    rows = [f"- {name}({', '.join(params)}): {_ADJUSTS[name]}" for name, params in METHODS.items()]
    return "Methods:\n" + "\n".join(rows)


def asset_block(obj: SoundObject) -> str:
    return "\n".join(
        [
            f"[asset] {obj.name}",
            f"description: {obj.description}",
            f"loudness: {obj.loudness:.3f} LUFS",
            f"onset_ms: {obj.onset_ms:.3f}",
            f"pitch: {obj.pitch_text}",
            f"duration_s: {obj.duration_s:.3f}",
        ]
    )


@dataclass(frozen=True)
class GeneratorContext:
    methods: str
    assets: tuple[SoundObject, ...]
    prior_script: str | None
    prompt: str
    retrieval: RetrievalSet
    repair_notes: tuple[str, ...] = ()

    @property
    def asset_names(self) -> list[str]:
        return [a.name for a in self.assets]

    def system_text(self) -> str:
        parts = [
            "You write Mixer Script to build sound effects from recorded assets.",
            SYNTAX_NOTES,
            self.methods,
            "Available assets:\n\n" + "\n\n".join(asset_block(a) for a in self.assets),
        ]
        if self.prior_script is not None:
            parts.append("## current script\n" + self.prior_script.rstrip("\n"))
        if self.repair_notes:
            parts.append(
                "## errors in your previous answer\n" + "\n".join(self.repair_notes)
                + "\nReturn a corrected script."
            )
        parts.append("Answer with a single ```mxs fenced block containing the complete script.")
        return "\n\n".join(parts)


def build_context(prior_script: str | None, retrieval: RetrievalSet, prompt: str) -> GeneratorContext:
    if not len(retrieval):
        raise ValueError("no assets available")
    return GeneratorContext(method_table(), tuple(retrieval.assets), prior_script, prompt, retrieval)
