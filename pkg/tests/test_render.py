import warnings

import numpy as np
import pytest

from sonicmix.dsp import (
    AudioBuffer,
    AudioFileError,
    ClippingWarning,
    RenderSession,
    ScriptValidationError,
    read_wav,
    render,
    resample,
    write_wav,
)
from sonicmix.lang import parse_script


class DictAssets:
    def __init__(self, paths):
        self.paths = paths

    def __contains__(self, name):
        return name in self.paths

    def asset_path(self, name):
        return self.paths[name]


@pytest.fixture
def assets(tmp_path):
    rng = np.random.default_rng(0)
    tone = 0.3 * np.sin(2 * np.pi * 330 * np.arange(44100) / 44100)
    paths = {}
    for name, buf in {
        "tone44k": AudioBuffer(tone, 44100),
        "burst": AudioBuffer(0.1 * rng.standard_normal((2, 24000)), 48000),
        "click": AudioBuffer(np.r_[1.0, np.zeros(4799)] * 0.5, 48000),
    }.items():
        paths[name] = tmp_path / f"{name}.wav"
        write_wav(paths[name], buf, "float32")
    return DictAssets(paths)


def test_single_track_passthrough(assets):
    out = render(parse_script('"tone44k"'), assets)
    expected = resample(read_wav(assets.paths["tone44k"]), 48000)
    np.testing.assert_array_equal(out.samples, expected.samples)


def test_two_copies_double(assets):
    one = render(parse_script('"burst".LowPassFilter(3000).StartAt(0.1)'), assets)
    two = render(parse_script('"burst".LowPassFilter(3000).StartAt(0.1)\n"burst".LowPassFilter(3000).StartAt(0.1)'), assets)
    np.testing.assert_allclose(two.samples, 2 * one.samples, atol=1e-6)


def test_mix_is_sum_of_tracks(assets):
    a = '"burst".Compressor(-20, 4, 5, 50).Reverb(0.4, 0.3)'
    b = '"tone44k".PeakFilter(330, 2, 6).StartAt(0.25).StopAt(0.8, 0.1)'
    session = RenderSession(48000, 2.0)
    ra, rb = render(parse_script(a), assets, session), render(parse_script(b), assets, session)
    both = render(parse_script(a + "\n" + b), assets, session)
    np.testing.assert_allclose(both.samples, ra.samples + rb.samples, atol=1e-6)


def test_mono_tracks_upmixed_into_stereo_master(assets):
    out = render(parse_script('"tone44k"\n"burst"'), assets)
    assert out.channels == 2


def test_auto_length_is_latest_end(assets):
    out = render(parse_script('"click".StartAt(1.5)\n"burst"'), assets)
    assert out.frames == round(1.5 * 48000) + 4800


def test_explicit_length(assets):
    out = render(parse_script('"burst"'), assets, RenderSession(48000, 3.0))
    assert out.frames == 3 * 48000
    assert not np.any(out.samples[:, 24000:])


def test_placement_is_attribute_not_chain_position(assets):
    a = render(parse_script('"burst".StartAt(0.5).Reverb(0.5, 0.5)'), assets)
    b = render(parse_script('"burst".Reverb(0.5, 0.5).StartAt(0.5)'), assets)
    np.testing.assert_array_equal(a.samples, b.samples)


def test_last_start_wins(assets):
    a = render(parse_script('"click".StartAt(0.2).StartAt(0.7)'), assets)
    assert np.flatnonzero(a.samples[0])[0] == round(0.7 * 48000)


def test_rate_conversion_to_session(assets):
    out = render(parse_script('"burst"'), assets, RenderSession(44100))
    assert out.sample_rate == 44100
    assert abs(out.frames - 22050) <= 1


def test_validation_errors_raise(assets):
    with pytest.raises(ScriptValidationError) as info:
        render(parse_script('"missing"\n"burst".Volume(5)'), assets)
    assert len(info.value.diagnostics) == 2


def test_missing_file(assets, tmp_path):
    assets.paths["ghost"] = tmp_path / "ghost.wav"
    with pytest.raises(AudioFileError):
        render(parse_script('"ghost"'), assets)


def test_unreadable_file(assets, tmp_path):
    bad = tmp_path / "bad.wav"
    bad.write_bytes(b"RIFF\x00\x00\x00\x00WAVEjunk")
    assets.paths["bad"] = bad
    with pytest.raises(AudioFileError):
        render(parse_script('"bad"'), assets)


def test_clipping_warns_but_does_not_clip(assets):
    src = '"burst".Volume(-3)\n' * 4
    with pytest.warns(ClippingWarning):
        out = render(parse_script(src), assets)
    assert out.peak() > 1.0


def test_deterministic(assets):
    src = '"burst".Compressor(-25, 3, 2, 80).Reverb(0.7, 0.4).StartAt(0.3)\n"tone44k".HighPassFilter(200).Volume(-20)'
    runs = [render(parse_script(src), assets).samples.tobytes() for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_all_methods_silence_preserving(tmp_path):
    path = tmp_path / "zero.wav"
    write_wav(path, AudioBuffer(np.zeros((1, 9600)), 48000), "float32")
    src = '"zero".Compressor(-20, 4, 10, 100).Reverb(0.5, 0.5).PeakFilter(1000, 1, 6).LowPassFilter(5000).HighPassFilter(50)'
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        out = render(parse_script(src), DictAssets({"zero": path}))
    assert not np.any(out.samples)


class TestWav:
    @pytest.mark.parametrize("fmt, tol", [("pcm24", 1.5 / 8388607), ("float32", 1e-7)])
    def test_round_trip(self, tmp_path, fmt, tol):
        x = AudioBuffer(np.random.default_rng(1).uniform(-1, 1, (2, 1001)), 48000)
        write_wav(tmp_path / "a.wav", x, fmt)
        y = read_wav(tmp_path / "a.wav")
        assert y.sample_rate == 48000 and y.samples.shape == (2, 1001)
        np.testing.assert_allclose(y.samples, x.samples, atol=tol)

    def test_pcm24_hard_clips(self, tmp_path):
        write_wav(tmp_path / "c.wav", AudioBuffer(np.array([[2.0, -3.0, 0.5]]), 48000), "pcm24")
        y = read_wav(tmp_path / "c.wav").samples[0]
        np.testing.assert_allclose(y, [8388607 / 8388608, -8388607 / 8388608, 0.5], atol=1e-7)

    def test_reads_pcm16(self, tmp_path):
        from scipy.io import wavfile

        wavfile.write(tmp_path / "s.wav", 44100, np.array([0, 16384, -32768], dtype=np.int16))
        y = read_wav(tmp_path / "s.wav")
        np.testing.assert_allclose(y.samples[0], [0, 0.5, -1.0])
        assert y.sample_rate == 44100

    def test_header_fields(self, tmp_path):
        import wave

        write_wav(tmp_path / "h.wav", AudioBuffer(np.zeros((2, 10)), 48000), "pcm24")
        with wave.open(str(tmp_path / "h.wav")) as w:
            assert (w.getnchannels(), w.getsampwidth(), w.getframerate(), w.getnframes()) == (2, 3, 48000, 10)

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            write_wav(tmp_path / "x.wav", AudioBuffer(np.zeros(4), 48000), "mp3")
