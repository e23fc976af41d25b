"""Synthetic demo library for the "coin dropped onto a wooden table" scene.

Writes a handful of deterministic 48 kHz / 24-bit assets, a three-track
script and a three-turn mock chat fixture. Run ``python -m sonicmix.demo DIR``.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .dsp import AudioBuffer, write_wav

RATE = 48000

DEMO_SCRIPT = """\
# coin dropped onto a wooden table
"coin_drop_wood".Volume(-18).StartAt(0.2)
"coin_bounce".Volume(-24).PeakFilter(3500, 2, 4).StartAt(0.45).StopAt(1.2, 0.3)
"wood_table_knock".LowPassFilter(2000).Volume(-26).Reverb(0.3, 0.2).StartAt(0.2)
"""

CHAT_TURNS = [
    {
        "prompt": "coin dropped onto a wooden table",
        "replies": [DEMO_SCRIPT],
    },
    {
        "prompt": "make it louder and add more reverb",
        "replies": [
            '"coin_drop_wood".Volume(-15).Reverb(0.6, 0.35).StartAt(0.2)\n'
            '"coin_bounce".Volume(-21).Reverb(0.6, 0.35).StartAt(0.45).StopAt(1.2, 0.3)\n'
            '"wood_table_knock".LowPassFilter(2000).Volume(-23).Reverb(0.6, 0.3).StartAt(0.2)\n'
        ],
    },
    {
        "prompt": "now add breaking glass",
        "replies": [
            # first reply uses an asset outside the retrieval set to exercise the repair round
            '"coin_drop_wood".Volume(-15).StartAt(0.2)\n"glass_shatter".Volume(-22).StartAt(0.8)\n',
            'Here is the updated mix:\n```mxs\n"glass_break".Volume(-22).HighPassFilter(300).StartAt(0.8)\n```\n',
        ],
    },
]

CHAT_PROMPTS = [t["prompt"] for t in CHAT_TURNS]


def _ring(partials, decay_s, dur_s, rng, click=0.3):
    t = np.arange(int(dur_s * RATE)) / RATE
    x = np.zeros_like(t)
    for i, f in enumerate(partials):
        x += np.sin(2 * np.pi * f * t + rng.uniform(0, 2 * np.pi)) * np.exp(-t / (decay_s / (1 + 0.3 * i)))
    n = int(0.004 * RATE)
    x[:n] += click * rng.standard_normal(n) * np.linspace(1, 0, n)
    return x / np.max(np.abs(x))


def demo_assets(seed: int = 7) -> dict[str, AudioBuffer]:
    rng = np.random.default_rng(seed)
    coin = _ring([2960.0, 5870.0, 8330.0, 11200.0], 0.35, 1.2, rng)
    bounce = np.concatenate(
        [_ring([3010.0, 6100.0, 8890.0], 0.08, 0.18, rng) * g for g in (0.8, 0.55, 0.35, 0.2)]
    )
    t = np.arange(int(0.6 * RATE)) / RATE
    knock = (np.sin(2 * np.pi * 180 * t) + 0.5 * rng.standard_normal(len(t))) * np.exp(-t / 0.05)
    glass = rng.standard_normal(int(1.5 * RATE)) * np.exp(-np.arange(int(1.5 * RATE)) / RATE / 0.25)
    hum = 0.5 * np.sin(2 * np.pi * 110 * np.arange(RATE * 2) / RATE)
    jingle = np.concatenate([_ring([3300.0 + 90 * i, 6900.0], 0.05, 0.12, rng) for i in range(8)])
    creak = np.sin(2 * np.pi * (220 + 40 * np.sin(2 * np.pi * 3 * t)).cumsum() / RATE) * np.hanning(len(t))
    drag = np.convolve(rng.standard_normal(RATE), np.ones(24) / 24, mode="same")
    steps = np.concatenate([np.pad(knock[: RATE // 10], (0, RATE // 3)) for _ in range(4)])
    return {
        "coin_drop_wood": AudioBuffer(0.8 * coin, RATE),
        "coin_bounce": AudioBuffer(0.7 * bounce, RATE),
        "wood_table_knock": AudioBuffer(0.6 * knock / np.max(np.abs(knock)), RATE),
        "glass_break": AudioBuffer(0.7 * glass / np.max(np.abs(glass)), RATE),
        "electric-hum": AudioBuffer(np.stack([hum, hum * 0.8]), RATE),
        "coin_jingle_hand": AudioBuffer(0.5 * jingle, RATE),
        "wooden_door_creak": AudioBuffer(0.4 * creak, RATE),
        "chair_drag": AudioBuffer(0.5 * drag / np.max(np.abs(drag)), RATE),
        "footsteps_wood_floor": AudioBuffer(0.5 * steps / np.max(np.abs(steps)), RATE),
    }


def write_demo(directory: str | Path) -> Path:
    directory = Path(directory)
    assets = directory / "assets"
    assets.mkdir(parents=True, exist_ok=True)
    for name, buf in demo_assets().items():
        write_wav(assets / f"{name}.wav", buf, "pcm24")
    (directory / "coin.mxs").write_text(DEMO_SCRIPT, encoding="utf-8")
    (directory / "chat_fixture.json").write_text(json.dumps({"turns": CHAT_TURNS}, indent=2) + "\n", encoding="utf-8")
    (directory / "prompts.txt").write_text("\n".join(CHAT_PROMPTS) + "\n", encoding="utf-8")
    return directory


if __name__ == "__main__":
    print(write_demo(sys.argv[1] if len(sys.argv) > 1 else "demo"))
