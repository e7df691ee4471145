import math

import numpy as np
import pytest

from kgscatter.errors import (
    ComplexIndexError,
    DegenerateChannelError,
    DomainError,
)
from kgscatter.model import (
    Kinematics,
    Mode,
    PotentialKind,
    PotentialSpec,
    channel_params,
    lambda_param,
    potential_approx,
    potential_exact,
    pqr,
    wave_number,
    wave_number_squared,
)
from kgscatter.potentials import (
    HellmannPotential,
    PotentialFactory,
    VarshniPotential,
    VarshniShuklaPotential,
)


@pytest.fixture()
def rel_kin():
    return Kinematics.relativistic(1.0, 2.0)


@pytest.fixture()
def nr_kin():
    return Kinematics.non_relativistic(1.0, 1.0)


def test_factory_creates_each_kind():
    assert isinstance(PotentialFactory.create_potential("varshni", a=1, b=2, beta=0.5), VarshniPotential)
    assert isinstance(PotentialFactory.create_potential("hellmann", a=1, b=2, beta=0.5), HellmannPotential)
    vsp = PotentialFactory.create_potential(PotentialKind.VARSHNI_SHUKLA, a=0, b=2, beta=0.5)
    assert isinstance(vsp, VarshniShuklaPotential)
    assert set(PotentialFactory.supported_types()) == {k.value for k in PotentialKind}


def test_factory_rejects_unknown_kind():
    with pytest.raises(ValueError, match="不支援的位能類型"):
        PotentialFactory.create_potential("yukawa", a=1, b=1, beta=1)


@pytest.mark.parametrize(
    "kind, a, b, tail",
    [("varshni", 2.0, 1.0, 2.0), ("hellmann", 2.0, 1.0, -0.4), ("varshni-shukla", 0.0, 1.0, 0.0)],
)
def test_approx_tends_to_tail(kind, a, b, tail):
    spec = PotentialSpec(kind, a, b, 0.2)
    potential = spec.potential()
    assert potential.tail() == pytest.approx(tail)
    assert potential_approx(spec, 500.0) == pytest.approx(tail, abs=1e-12)
    r = np.linspace(0.1, 20.0, 50)
    assert np.allclose(potential.approx(r), potential.tail() + potential.short_range(r), rtol=1e-13)


@pytest.mark.parametrize("kind, a", [("varshni", 2.0), ("hellmann", 2.0), ("varshni-shukla", 0.0)])
def test_approx_agrees_with_exact_near_origin(kind, a):
    spec = PotentialSpec(kind, a, 1.0, 0.2)
    r = 1e-4
    exact = potential_exact(spec, r)
    approx = potential_approx(spec, r)
    assert abs(approx - exact) / abs(exact) < 1e-3


def test_potential_rejects_nonpositive_radius():
    spec = PotentialSpec("hellmann", 2.0, 1.0, 0.2)
    with pytest.raises(DomainError):
        potential_approx(spec, 0.0)
    with pytest.raises(DomainError):
        potential_exact(spec, -1.0)


def test_spec_validation():
    with pytest.raises(DomainError):
        PotentialSpec("varshni", 1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        PotentialSpec("varshni-shukla", 1.0, 1.0, 0.2)
    with pytest.raises(ValueError):
        PotentialSpec("morse", 1.0, 1.0, 0.2)
    spec = PotentialSpec("vsp", 0.0, 1.0, 0.25)
    assert spec.kind is PotentialKind.VARSHNI_SHUKLA
    assert spec.rho == pytest.approx(4.0)
    assert spec.with_values(beta=0.5).beta == 0.5


def test_kinematics_validation_and_coupling(rel_kin, nr_kin):
    assert rel_kin.mode is Mode.RELATIVISTIC
    assert rel_kin.coupling == 3.0
    assert rel_kin.energy_term == 3.0
    assert nr_kin.coupling == 2.0
    assert nr_kin.energy_term == 2.0
    assert Kinematics.non_relativistic(2.0, 1.0, hbar=2.0).coupling == pytest.approx(1.0)
    with pytest.raises(DomainError):
        Kinematics.relativistic(0.0, 1.0)
    with pytest.raises(DomainError):
        Kinematics.non_relativistic(1.0, 1.0, hbar=-1.0)
    with pytest.raises(ValueError):
        Kinematics("classical", 1.0, 1.0)


def test_wave_number_hellmann_nonrelativistic(nr_kin):
    spec = PotentialSpec("hellmann", 2.0, 1.0, 0.2)
    # 2μE/ħ² - g(-aβ) - 0 = 2 + 0.8
    assert wave_number_squared(spec, nr_kin, 0) == pytest.approx(2.8)
    k, below = wave_number(spec, nr_kin, 0)
    assert k == pytest.approx(math.sqrt(2.8))
    assert below is False


def test_wave_number_below_threshold_is_imaginary():
    spec = PotentialSpec("varshni-shukla", 0.0, 1.0, 0.2)
    k, below = wave_number(spec, Kinematics.relativistic(1.0, 1.0), 1)
    assert below is True
    assert k.real == 0.0
    assert k.imag == pytest.approx(math.sqrt(2.0) * 0.2)


def test_zero_wave_number_is_degenerate():
    spec = PotentialSpec("varshni", 0.0, 0.0, 0.2)
    with pytest.raises(DegenerateChannelError):
        wave_number(spec, Kinematics.relativistic(1.0, 1.0), 0)


def test_negative_l_rejected(rel_kin):
    spec = PotentialSpec("varshni", 1.0, 1.0, 0.2)
    with pytest.raises(DomainError):
        wave_number_squared(spec, rel_kin, -1)


def test_index_and_coefficients(rel_kin):
    hellmann = PotentialSpec("hellmann", 2.0, 1.0, 0.2)
    for l in range(4):
        assert lambda_param(hellmann, rel_kin, l) == float(l + 1)
    P, Q, R = pqr(hellmann, rel_kin, 1)
    assert Q == pytest.approx(3.0 * 1.0 / 0.2)
    assert R == -2.0
    k_sq = wave_number_squared(hellmann, rel_kin, 1)
    assert P == pytest.approx(k_sq / 0.04 - Q - R)

    vsp = PotentialSpec("varshni-shukla", 0.0, 0.5, 0.2)
    # R = -l(l+1) - g b
    assert lambda_param(vsp, rel_kin, 1) == pytest.approx(0.5 + math.sqrt(0.25 + 2.0 + 1.5))


def test_complex_index_raises():
    spec = PotentialSpec("varshni-shukla", 0.0, -1.0, 0.2)
    with pytest.raises(ComplexIndexError):
        channel_params(spec, Kinematics.relativistic(1.0, 2.0), 0)


def test_channel_params_relations(rel_kin):
    spec = PotentialSpec("varshni", 0.5, 1.0, 0.3)
    params = channel_params(spec, rel_kin, 2)
    ik = 1j * params.k / params.beta
    assert params.xi3 == pytest.approx(2.0 * params.lam)
    assert params.xi1 + params.xi2 == pytest.approx(2.0 * params.lam - 2.0 * ik)
    assert params.xi1_star == pytest.approx(params.lam + ik - params.s)
    assert params.xi2_star == pytest.approx(params.lam + ik + params.s)
    assert params.two_ik_over_beta == pytest.approx(2.0 * ik)
    assert params.s * params.s == pytest.approx(params.Q + params.R - params.k_squared / 0.09)
    assert params.below_threshold is False


@pytest.mark.parametrize("mode", ["rel", "nr"])
def test_indicial_identity_on_random_channels(mode):
    rng = np.random.default_rng(20240611)
    for _ in range(60):
        kind = rng.choice([k.value for k in PotentialKind])
        a = 0.0 if kind == "varshni-shukla" else float(rng.uniform(0.0, 2.0))
        spec = PotentialSpec(kind, a, float(rng.uniform(0.1, 2.0)), float(rng.uniform(0.05, 1.0)))
        kin = Kinematics(mode, 1.0, float(rng.uniform(1.5, 4.0)))
        params = channel_params(spec, kin, int(rng.integers(0, 4)))
        assert params.lam * (params.lam - 1.0) + params.R == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize(
    "kind, a",
    [("varshni", 2.0), ("hellmann", 2.0), ("varshni-shukla", 0.0)],
)
def test_approximation_error_shrinks_with_screening(kind, a):
    errors = [
        abs(potential_approx(spec, 1.0) - potential_exact(spec, 1.0))
        for spec in (PotentialSpec(kind, a, 1.0, beta) for beta in (0.4, 0.2, 0.1, 0.05))
    ]
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
