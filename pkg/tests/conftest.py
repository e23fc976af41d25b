import shutil
from pathlib import Path

import numpy as np
import pytest

from sonicmix.catalog import ingest
from sonicmix.demo import write_demo
from sonicmix.dsp import AudioBuffer

SR = 48000


def sine(freq, seconds=1.0, amp=1.0, sr=SR, delay=0.0, channels=1):
    t = np.arange(int(round(seconds * sr))) / sr
    x = amp * np.sin(2 * np.pi * freq * t)
    x = np.concatenate([np.zeros(int(round(delay * sr))), x])
    return AudioBuffer(np.tile(x, (channels, 1)), sr)


def noise(seconds=3.0, amp=0.1, sr=SR, seed=0, channels=1):
    rng = np.random.default_rng(seed)
    return AudioBuffer(amp * rng.standard_normal((channels, int(seconds * sr))), sr)


def tone_level_db(x, freq, sr=SR):
    """Amplitude (dBFS) of the ``freq`` component, by projection onto sin/cos."""
    t = np.arange(len(x)) / sr
    c = 2 * np.mean(x * np.cos(2 * np.pi * freq * t))
    s = 2 * np.mean(x * np.sin(2 * np.pi * freq * t))
    return 20 * np.log10(np.hypot(c, s))


@pytest.fixture(scope="session")
def demo_dir(tmp_path_factory):
    return write_demo(tmp_path_factory.mktemp("demo"))


@pytest.fixture(scope="session")
def demo_catalog(demo_dir):
    return ingest(demo_dir / "assets")


@pytest.fixture
def demo_copy(demo_dir, tmp_path):
    dst = tmp_path / "demo"
    shutil.copytree(demo_dir, dst)
    return dst


@pytest.fixture
def catalog_file(demo_catalog, tmp_path) -> Path:
    path = tmp_path / "catalog.txt"
    demo_catalog.save(path)
    return path


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def report(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def check(criterion, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {criterion}" + (f"  ({detail})" if detail else "")
        request.config.stash[ACCEPTANCE].append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
