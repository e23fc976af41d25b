import warnings

import numpy as np
import pyloudnorm
import pytest

from conftest import SR, noise, sine
from sonicmix.dsp import AudioBuffer, SilentInputWarning, apply_volume, measure_loudness
from sonicmix.dsp.loudness import k_weighting


def stereo_left(buf):
    return AudioBuffer(np.vstack([buf.samples, np.zeros_like(buf.samples)]), buf.sample_rate)


def test_k_weighting_matches_published_48k_coefficients():
    (sb, sa), (hb, ha) = k_weighting(48000)
    np.testing.assert_allclose(sb, [1.53512485958697, -2.69169618940638, 1.19839281085285], atol=1e-12)
    np.testing.assert_allclose(sa, [1.0, -1.69065929318241, 0.73248077421585], atol=1e-12)
    np.testing.assert_allclose(hb, [1.0, -2.0, 1.0])
    np.testing.assert_allclose(ha, [1.0, -1.99004745483398, 0.99007225036621], atol=1e-12)


def test_reference_tone_reads_minus_3_01():
    buf = stereo_left(sine(997, 10.0))
    assert measure_loudness(buf) == pytest.approx(-3.01, abs=0.1)


@pytest.mark.parametrize("rate", [44100, 48000, 96000])
def test_agrees_with_independent_meter(rate):
    for buf in (stereo_left(sine(997, 10.0, sr=rate)), noise(5.0, 0.1, sr=rate, seed=3, channels=2),
                sine(250, 3.0, 0.3, sr=rate)):
        oracle = pyloudnorm.Meter(rate).integrated_loudness(buf.samples.T)
        assert measure_loudness(buf) == pytest.approx(oracle, abs=0.1)


def test_silence_marker():
    assert measure_loudness(AudioBuffer(np.zeros((2, SR)), SR)) is None
    assert measure_loudness(AudioBuffer(np.zeros((1, 100)), SR)) is None


def test_below_absolute_gate_is_silence():
    assert measure_loudness(sine(997, 2.0, amp=1e-5)) is None


def test_half_amplitude_is_6_02_lower():
    full = measure_loudness(stereo_left(sine(997, 10.0)))
    half = measure_loudness(stereo_left(sine(997, 10.0, amp=0.5)))
    assert full - half == pytest.approx(6.02, abs=0.01)


@pytest.mark.parametrize("g", [0.1, 0.5, 2.0, 3.7])
def test_gain_shift(g):
    x = noise(4.0, 0.05, seed=11, channels=2)
    shifted = x.with_samples(x.samples * g)
    assert measure_loudness(shifted) == pytest.approx(measure_loudness(x) + 20 * np.log10(g), abs=0.05)


def test_short_input_measured_ungated():
    x = sine(997, 0.2, amp=0.5)
    # ungated mean square over the whole input, weighted by the filter gain at 997 Hz
    longer = measure_loudness(sine(997, 4.0, amp=0.5))
    assert measure_loudness(x) == pytest.approx(longer, abs=0.3)


class TestVolume:
    def test_static_gain_definition(self):
        x = sine(1000, 2.0, amp=0.3)
        measured = measure_loudness(x)
        y = apply_volume(x, -23.0)
        np.testing.assert_allclose(y.samples, x.samples * 10 ** ((-23.0 - measured) / 20), rtol=1e-12)

    def test_sine_at_minus_10_scaled_by_minus_13_db(self):
        x = sine(1000, 2.0, amp=0.3)
        x = x.with_samples(x.samples * 10 ** ((-10 - measure_loudness(x)) / 20))
        assert measure_loudness(x) == pytest.approx(-10, abs=1e-9)
        y = apply_volume(x, -23)
        np.testing.assert_allclose(y.samples, x.samples * 10 ** (-13 / 20), rtol=1e-9)

    def test_identity_when_on_target(self):
        x = noise(2.0, 0.1, seed=2)
        y = apply_volume(x, measure_loudness(x))
        np.testing.assert_allclose(y.samples, x.samples, atol=1e-7)

    @pytest.mark.parametrize("target", [-30.0, -23.0, -18.0, -14.0])
    def test_white_noise_remeasures_on_target(self, target):
        y = apply_volume(noise(5.0, 0.2, seed=5, channels=2), target)
        assert measure_loudness(y) == pytest.approx(target, abs=0.5)

    def test_silent_input_unchanged_with_warning(self):
        x = AudioBuffer(np.zeros((1, SR)), SR)
        with pytest.warns(SilentInputWarning):
            y = apply_volume(x, -20)
        np.testing.assert_array_equal(y.samples, x.samples)
