"""
Analytic phase shifts, normalization constants and radial wave functions.

    δ_l = π(l+1)/2 + argΓ(2ik/β) - argΓ(ξ2*) - argΓ(ξ1*)
    N_l = |Γ(ξ1*)Γ(ξ2*)/Γ(2ik/β)| / sqrt(ξ3)
    u(r) = N z^λ e^{ikr} 2F1(ξ1, ξ2; ξ3; z),   z = 1 - e^{-βr}

δ is returned unreduced; reduction mod π or 2π is left to the caller.
"""

import cmath
import logging
import math
from dataclasses import dataclass

from . import config
from .errors import BelowThresholdError, DomainError
from .model import ChannelParams, Kinematics, PotentialSpec, channel_params
from .specfun import ArgConvention, arg_gamma, gauss_2f1, log_gamma

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseShiftRecord:
    delta: float
    gamma_ratio_arg: float
    channel: ChannelParams
    convention: ArgConvention
    below_threshold: bool


@dataclass(frozen=True)
class WaveFunctionSample:
    r: float
    u: complex


def _half_turns(l: int) -> float:
    return math.pi * (l + 1) / 2.0


def phase_shift_from_params(params: ChannelParams, conv=ArgConvention.PRINCIPAL_LOG_GAMMA):
    """Evaluate δ from an already derived channel."""
    conv = ArgConvention.parse(conv)
    ratio_arg = (
        arg_gamma(params.two_ik_over_beta, conv)
        - arg_gamma(params.xi2_star, conv)
        - arg_gamma(params.xi1_star, conv)
    )
    return PhaseShiftRecord(
        delta=_half_turns(params.l) + ratio_arg,
        gamma_ratio_arg=ratio_arg,
        channel=params,
        convention=conv,
        below_threshold=params.below_threshold,
    )


def phase_shift(
    spec: PotentialSpec,
    kin: Kinematics,
    l: int,
    conv=ArgConvention.PRINCIPAL_LOG_GAMMA,
) -> PhaseShiftRecord:
    record = phase_shift_from_params(channel_params(spec, kin, l), conv)
    if record.below_threshold:
        logger.debug(
            f"⚠️ {spec.kind.value} l={l} 低於閾值，δ 為形式上的解析延拓: {record.delta}"
        )
    return record


def _log_normalization(params: ChannelParams) -> float:
    return (
        log_gamma(params.xi1_star).real
        + log_gamma(params.xi2_star).real
        - log_gamma(params.two_ik_over_beta).real
        - 0.5 * math.log(params.xi3.real)
    )


def normalization_constant(spec, kin, l, conv=ArgConvention.PRINCIPAL_LOG_GAMMA) -> float:
    """
    N = exp(Re lnΓ(ξ1*) + Re lnΓ(ξ2*) - Re lnΓ(2ik/β)) / sqrt(ξ3), in log space.

    ``conv`` is accepted for signature symmetry with :func:`phase_shift`; the
    modulus does not depend on the argument branch.
    """
    ArgConvention.parse(conv)
    return math.exp(_log_normalization(channel_params(spec, kin, l)))


def envelope_amplitude(spec, kin, l, conv=ArgConvention.PRINCIPAL_LOG_GAMMA) -> float:
    """
    Large-r amplitude of :func:`radial_wavefunction`:
    2 N Γ(ξ3) |Γ(2ik/β) / (Γ(ξ1*) Γ(ξ2*))|.

    With N from :func:`normalization_constant` this equals 2Γ(ξ3)/sqrt(ξ3);
    the unit-amplitude form 2 sin(kr + δ - lπ/2) differs only by that factor.
    """
    ArgConvention.parse(conv)
    params = channel_params(spec, kin, l)
    if params.below_threshold:
        raise BelowThresholdError("envelope amplitude needs a real wave number")
    log_ratio = (
        log_gamma(params.two_ik_over_beta).real
        - log_gamma(params.xi1_star).real
        - log_gamma(params.xi2_star).real
    )
    log_amp = (
        math.log(2.0)
        + _log_normalization(params)
        + log_gamma(params.xi3).real
        + log_ratio
    )
    return math.exp(log_amp)


def radial_wavefunction(spec, kin, l, r_points, x_switch: float = config.X_SWITCH):
    params = channel_params(spec, kin, l)
    norm = math.exp(_log_normalization(params))
    beta = spec.beta
    samples = []
    for r in r_points:
        r = float(r)
        if r <= 0:
            raise DomainError(f"wave function sample radius must be positive, got {r}")
        log_w = -beta * r
        z = -math.expm1(log_w)
        hyper = gauss_2f1(
            params.xi1, params.xi2, params.xi3, z, x_switch=x_switch, log_one_minus_x=log_w
        )
        u = norm * z**params.lam * cmath.exp(1j * params.k * r) * hyper
        if not (math.isfinite(u.real) and math.isfinite(u.imag)):
            raise DomainError(f"wave function is not finite at r = {r}")
        samples.append(WaveFunctionSample(r=r, u=u))
    return samples


def asymptotic_amplitude_phase(spec, kin, l, conv=ArgConvention.PRINCIPAL_LOG_GAMMA):
    """(2, δ - lπ/2) for u(∞) → 2 sin(kr + δ - lπ/2)."""
    record = phase_shift(spec, kin, l, conv)
    if record.below_threshold:
        raise BelowThresholdError(
            f"{spec.kind.value} l={l} is below threshold: no oscillating asymptote"
        )
    return 2.0, record.delta - l * math.pi / 2.0


def reduce_mod_pi(delta: float) -> float:
    """Representative of δ in [0, π)."""
    value = math.fmod(delta, math.pi)
    if value < 0:
        value += math.pi
    if value >= math.pi:
        value = 0.0
    return value
