import math

import numpy as np
import pytest

from kgscatter.errors import BelowThresholdError, DegenerateChannelError, DomainError
from kgscatter.model import Kinematics, PotentialKind, PotentialSpec, channel_params
from kgscatter.scattering import (
    asymptotic_amplitude_phase,
    envelope_amplitude,
    normalization_constant,
    phase_shift,
    phase_shift_from_params,
    radial_wavefunction,
    reduce_mod_pi,
)
from kgscatter.specfun import ArgConvention
from kgscatter.utils import circle_distance


@pytest.fixture()
def hellmann():
    return PotentialSpec("hellmann", 0.5, 1.0, 0.5)


@pytest.fixture()
def rel_kin():
    return Kinematics.relativistic(1.0, 2.0)


@pytest.mark.parametrize("beta", [0.1, 0.2, 0.5, 1.0])
def test_free_particle_has_zero_phase_shift(beta, rel_kin):
    spec = PotentialSpec("varshni", 0.0, 0.0, beta)
    assert abs(phase_shift(spec, rel_kin, 0).delta) < 1e-10


def test_zero_strength_potentials_coincide(rel_kin):
    for l in range(4):
        deltas = [phase_shift(PotentialSpec(kind, 0.0, 0.0, 0.2), rel_kin, l).delta for kind in PotentialKind]
        assert max(deltas) - min(deltas) < 1e-12


def test_varshni_without_strength_ignores_b():
    kin = Kinematics.relativistic(1.0, 1.0)
    for l in (1, 2, 3):
        deltas = [phase_shift(PotentialSpec("varshni", 0.0, b, 0.2), kin, l).delta for b in (-2, -1, 0, 1, 2)]
        assert max(deltas) - min(deltas) < 1e-12


def test_varshni_shukla_at_rest_energy_ignores_beta():
    kin = Kinematics.relativistic(1.0, 1.0)
    for l in (1, 2, 3):
        deltas = [
            phase_shift(PotentialSpec("varshni-shukla", 0.0, 1.0, beta), kin, l).delta
            for beta in (0.2, 0.4, 0.6, 0.8, 1.0)
        ]
        assert max(deltas) - min(deltas) < 1e-9


def test_delta_reconstructs_from_stored_channel(hellmann, rel_kin):
    record = phase_shift(hellmann, rel_kin, 2)
    again = phase_shift_from_params(record.channel, record.convention)
    assert again.delta == record.delta
    assert record.delta == pytest.approx(math.pi * 3 / 2 + record.gamma_ratio_arg)


def test_conventions_differ_by_whole_turns(rel_kin):
    spec = PotentialSpec("hellmann", 2.0, 1.0, 0.2)
    for l in range(4):
        principal = phase_shift(spec, rel_kin, l, ArgConvention.PRINCIPAL_LOG_GAMMA).delta
        wrapped = phase_shift(spec, rel_kin, l, "wrapped-arg").delta
        turns = (principal - wrapped) / (2.0 * math.pi)
        assert turns == pytest.approx(round(turns), abs=1e-9)


def test_degenerate_channel_raises():
    spec = PotentialSpec("hellmann", 0.0, 1.0, 0.2)
    with pytest.raises(DegenerateChannelError):
        phase_shift(spec, Kinematics.relativistic(1.0, 1.0), 0)


def test_below_threshold_channel_is_flagged():
    spec = PotentialSpec("varshni-shukla", 0.0, 1.0, 0.2)
    kin = Kinematics.relativistic(1.0, 1.0)
    record = phase_shift(spec, kin, 2)
    assert record.below_threshold is True
    assert math.isfinite(record.delta)
    with pytest.raises(BelowThresholdError):
        envelope_amplitude(spec, kin, 2)
    with pytest.raises(BelowThresholdError):
        asymptotic_amplitude_phase(spec, kin, 2)


def test_envelope_follows_from_normalization(hellmann, rel_kin):
    for l in range(3):
        lam = channel_params(hellmann, rel_kin, l).lam
        expected = 2.0 * math.gamma(2.0 * lam) / math.sqrt(2.0 * lam)
        assert envelope_amplitude(hellmann, rel_kin, l) == pytest.approx(expected, rel=1e-12)
        assert normalization_constant(hellmann, rel_kin, l) > 0


def test_wavefunction_approaches_shifted_sine(hellmann, rel_kin):
    """Far from the origin u(r) -> A sin(kr + δ - lπ/2) with A the envelope."""
    l = 1
    params = channel_params(hellmann, rel_kin, l)
    k = params.k.real
    delta = phase_shift(hellmann, rel_kin, l).delta
    amplitude = envelope_amplitude(hellmann, rel_kin, l)
    radii = np.linspace(36.0, 40.0, 9)
    for sample in radial_wavefunction(hellmann, rel_kin, l, radii):
        expected = amplitude * math.sin(k * sample.r + delta - l * math.pi / 2.0)
        assert abs(sample.u.real - expected) < 1e-5 * amplitude
        assert abs(sample.u.imag) < 1e-5 * amplitude


def test_wavefunction_vanishes_like_r_to_lambda(hellmann, rel_kin):
    small = radial_wavefunction(hellmann, rel_kin, 2, [1e-3, 2e-3])
    ratio = abs(small[1].u) / abs(small[0].u)
    assert ratio == pytest.approx(2.0**3, rel=1e-2)


def test_wavefunction_rejects_nonpositive_radius(hellmann, rel_kin):
    with pytest.raises(DomainError):
        radial_wavefunction(hellmann, rel_kin, 0, [0.5, 0.0])


def test_asymptotic_phase(hellmann, rel_kin):
    amplitude, phase = asymptotic_amplitude_phase(hellmann, rel_kin, 3)
    assert amplitude == 2.0
    assert phase == pytest.approx(phase_shift(hellmann, rel_kin, 3).delta - 1.5 * math.pi)


def test_reduce_mod_pi():
    assert reduce_mod_pi(-0.1) == pytest.approx(math.pi - 0.1)
    assert reduce_mod_pi(7.0) == pytest.approx(7.0 - 2.0 * math.pi)
    assert 0.0 <= reduce_mod_pi(-1e-20) < math.pi


@pytest.fixture()
def free_channel():
    # a = b = 0, k = 1 (2μE/ħ² = 1)
    return PotentialSpec("varshni", 0.0, 0.0, 0.5), Kinematics.non_relativistic(0.5, 1.0)


def test_free_channel_normalization(free_channel):
    spec, kin = free_channel
    # |Γ(1)Γ(1 + 4i)/Γ(4i)| / √2 = 4/√2
    assert normalization_constant(spec, kin, 0) == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-12)


def test_free_channel_is_a_pure_sine(free_channel):
    spec, kin = free_channel
    amplitude = envelope_amplitude(spec, kin, 0)
    for sample in radial_wavefunction(spec, kin, 0, np.linspace(0.7, 12.0, 10)):
        assert abs(sample.u.real - amplitude * math.sin(sample.r)) < 1e-8
        assert abs(sample.u.imag) < 1e-8


@pytest.mark.parametrize("l", [1, 2])
def test_centrifugal_distortion_vanishes_with_screening(l):
    def delta(beta):
        # fixed k = 1 for a = b = 0
        kin = Kinematics.non_relativistic(0.5, 1.0 + l * (l + 1) * beta**2)
        return phase_shift(PotentialSpec("hellmann", 0.0, 0.0, beta), kin, l).delta

    assert circle_distance(delta(0.01), 0.0, math.pi) < circle_distance(delta(0.1), 0.0, math.pi)


@pytest.mark.parametrize("beta_r", [30.0, 50.0, 100.0])
def test_wavefunction_far_from_the_origin(hellmann, rel_kin, beta_r):
    l = 1
    r = beta_r / hellmann.beta
    k = channel_params(hellmann, rel_kin, l).k.real
    delta = phase_shift(hellmann, rel_kin, l).delta
    amplitude = envelope_amplitude(hellmann, rel_kin, l)
    (sample,) = radial_wavefunction(hellmann, rel_kin, l, [r])
    expected = amplitude * math.sin(k * r + delta - l * math.pi / 2.0)
    assert abs(sample.u.real - expected) < 1e-8 * amplitude
    assert abs(sample.u.imag) < 1e-8 * amplitude
