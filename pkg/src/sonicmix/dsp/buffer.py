from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """Multichannel float64 audio, shape ``(channels, frames)``."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.float64)
        if s.ndim == 1:
            s = s[np.newaxis, :]
        if s.ndim != 2 or s.shape[0] not in (1, 2):
            raise ValueError(f"expected 1 or 2 channels, got shape {s.shape}")
        if int(self.sample_rate) <= 0:
            raise ValueError("sample_rate must be positive")
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    @property
    def channels(self) -> int:
        return self.samples.shape[0]

    @property
    def frames(self) -> int:
        return self.samples.shape[1]

    @property
    def duration(self) -> float:
        return self.frames / self.sample_rate

    def with_samples(self, samples: np.ndarray) -> AudioBuffer:
        return AudioBuffer(samples, self.sample_rate)

    def to_channels(self, n: int) -> AudioBuffer:
        if n == self.channels:
            return self
        if self.channels == 1 and n == 2:
            return self.with_samples(np.repeat(self.samples, 2, axis=0))
        if self.channels == 2 and n == 1:
            return self.with_samples(self.samples.mean(axis=0, keepdims=True))
        raise ValueError(f"cannot convert {self.channels} channels to {n}")

    def mono(self) -> np.ndarray:
        return self.samples.mean(axis=0)

    def peak(self) -> float:
        return float(np.max(np.abs(self.samples))) if self.frames else 0.0

    @classmethod
    def silence(cls, frames: int, sample_rate: int, channels: int = 1) -> AudioBuffer:
        return cls(np.zeros((channels, frames)), sample_rate)
