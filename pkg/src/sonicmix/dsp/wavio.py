"""WAV read (PCM 16/24/32, float32/64) and write (PCM 24 or float32)."""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from .buffer import AudioBuffer


class AudioFileError(OSError):
    pass


def read_wav(path: str | Path) -> AudioBuffer:
    try:
        rate, data = wavfile.read(str(path))
    except FileNotFoundError as exc:
        raise AudioFileError(f"{path}: file not found") from exc
    except Exception as exc:  # scipy raises assorted types on malformed headers
        raise AudioFileError(f"{path}: unreadable WAV ({exc})") from exc
    if data.dtype == np.int16:
        x = data.astype(np.float64) / 32768.0
    elif data.dtype == np.int32:
        # scipy left-justifies 24-bit samples into int32
        x = data.astype(np.float64) / 2147483648.0
    elif data.dtype == np.uint8:
        x = (data.astype(np.float64) - 128.0) / 128.0
    elif data.dtype in (np.float32, np.float64):
        x = data.astype(np.float64)
    else:
        raise AudioFileError(f"{path}: unsupported sample type {data.dtype}")
    x = x.T if x.ndim == 2 else x[np.newaxis, :]
    if x.shape[0] > 2:
        raise AudioFileError(f"{path}: {x.shape[0]} channels not supported")
    return AudioBuffer(x, rate)


def write_wav(path: str | Path, buf: AudioBuffer, fmt: str = "pcm24") -> None:
    """Write ``buf``; ``pcm24`` hard-clips to full scale, ``float32`` does not."""
    interleaved = buf.samples.T
    if fmt == "pcm24":
        q = np.round(np.clip(interleaved, -1.0, 1.0) * 8388607.0).astype("<i4")
        raw = np.ascontiguousarray(q).view(np.uint8).reshape(-1, 4)[:, :3].tobytes()
        tag, bits = 1, 24
    elif fmt == "float32":
        raw = interleaved.astype("<f4").tobytes()
        tag, bits = 3, 32
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    block = buf.channels * bits // 8
    fmt_chunk = struct.pack("<HHIIHH", tag, buf.channels, buf.sample_rate, buf.sample_rate * block, block, bits)
    pad = b"\x00" if len(raw) % 2 else b""
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt_chunk)) + fmt_chunk
    body += b"data" + struct.pack("<I", len(raw)) + raw + pad
    Path(path).write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
