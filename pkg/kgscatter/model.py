"""
Potentials, kinematics and the per-channel parameter derivation.

Every formula downstream consumes a :class:`ChannelParams`; it is built once
per (potential, kinematics, l) from the unified coefficients

    k² = (E² - M²) - g·V_tail - l(l+1)β²,   g = E + M
    k² = 2μE/ħ² - g·V_tail - l(l+1)β²,       g = 2μ/ħ²     (non-relativistic)

with (Q, R) supplied by the potential and P = k²/β² - Q - R.
"""

import cmath
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

from . import config
from .errors import ComplexIndexError, DegenerateChannelError, DomainError
from .potentials import PotentialFactory, PotentialInterface

logger = logging.getLogger(__name__)


class PotentialKind(str, Enum):
    VARSHNI = "varshni"
    HELLMANN = "hellmann"
    VARSHNI_SHUKLA = "varshni-shukla"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        aliases = {"vsp": "varshni-shukla", "varshnishukla": "varshni-shukla"}
        try:
            return cls(aliases.get(text, text))
        except ValueError:
            supported = ", ".join(k.value for k in cls)
            raise ValueError(f"不支援的位能類型: {value}。目前只支援 {supported}")


class Mode(str, Enum):
    RELATIVISTIC = "rel"
    NON_RELATIVISTIC = "nr"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"不支援的模式: {value}。目前只支援 rel、nr")


def _require_finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class PotentialSpec:
    kind: PotentialKind
    a: float
    b: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "kind", PotentialKind.parse(self.kind))
        for name in ("a", "b", "beta"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.beta <= 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.kind is PotentialKind.VARSHNI_SHUKLA and self.a != 0.0:
            raise DomainError(
                f"Varshni-Shukla potential has no strength a; got a = {self.a} (must be 0)"
            )

    @property
    def rho(self) -> float:
        return 1.0 / self.beta

    def potential(self) -> PotentialInterface:
        return PotentialFactory.create_potential(
            self.kind, a=self.a, b=self.b, beta=self.beta
        )

    def with_values(self, **changes) -> "PotentialSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class Kinematics:
    """
    Particle data. ``mass`` is M (relativistic, ħ = c = 1) or μ
    (non-relativistic); ``hbar`` only matters in non-relativistic mode.
    """

    mode: Mode
    mass: float
    energy: float
    hbar: float = config.DEFAULT_HBAR

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        for name in ("mass", "energy", "hbar"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.mass <= 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")

    @classmethod
    def relativistic(cls, M: float, E: float) -> "Kinematics":
        return cls(Mode.RELATIVISTIC, M, E)

    @classmethod
    def non_relativistic(cls, mu: float, E: float, hbar: float = config.DEFAULT_HBAR):
        return cls(Mode.NON_RELATIVISTIC, mu, E, hbar)

    @property
    def is_relativistic(self) -> bool:
        return self.mode is Mode.RELATIVISTIC

    @property
    def coupling(self) -> float:
        """g: E + M, or 2μ/ħ² under the non-relativistic mapping."""
        if self.is_relativistic:
            return self.energy + self.mass
        return 2.0 * self.mass / self.hbar**2

    @property
    def energy_term(self) -> float:
        """E² - M², or 2μE/ħ²."""
        if self.is_relativistic:
            return (self.energy - self.mass) * (self.energy + self.mass)
        return 2.0 * self.mass * self.energy / self.hbar**2

    def with_energy(self, energy: float) -> "Kinematics":
        return replace(self, energy=energy)


@dataclass(frozen=True)
class ChannelParams:
    l: int
    beta: float
    k_squared: float
    k: complex
    below_threshold: bool
    lam: float
    P: float
    Q: float
    R: float
    s: complex
    xi1: complex
    xi2: complex
    xi3: complex
    xi1_star: complex
    xi2_star: complex

    @property
    def two_ik_over_beta(self) -> complex:
        return 2j * self.k / self.beta


def _check_l(l) -> int:
    if int(l) != l or l < 0:
        raise DomainError(f"l must be a nonnegative integer, got {l}")
    return int(l)


def potential_exact(spec: PotentialSpec, r):
    if float(r) <= 0:
        raise DomainError(f"r must be positive, got {r}")
    return spec.potential().exact(r)


def potential_approx(spec: PotentialSpec, r):
    if float(r) <= 0:
        raise DomainError(f"r must be positive, got {r}")
    return spec.potential().approx(r)


def wave_number_squared(spec: PotentialSpec, kin: Kinematics, l: int) -> float:
    """The real pre-sqrt expression k²."""
    l = _check_l(l)
    tail = spec.potential().tail()
    return kin.energy_term - kin.coupling * tail - l * (l + 1) * spec.beta**2


def wave_number(spec: PotentialSpec, kin: Kinematics, l: int):
    """
    Asymptotic wave number as a principal square root.

    Returns (k, below_threshold); below threshold k = i·sqrt(-k²).
    """
    k_sq = wave_number_squared(spec, kin, l)
    if k_sq == 0.0:
        raise DegenerateChannelError(
            f"k = 0 for {spec.kind.value} l={l}: phase shift undefined"
        )
    if k_sq > 0:
        return complex(math.sqrt(k_sq), 0.0), False
    return complex(0.0, math.sqrt(-k_sq)), True


def pqr(spec: PotentialSpec, kin: Kinematics, l: int):
    l = _check_l(l)
    k_sq = wave_number_squared(spec, kin, l)
    Q, extra = spec.potential().coupling(kin.coupling)
    R = float(-l * (l + 1)) + extra
    P = k_sq / spec.beta**2 - Q - R
    return P, Q, R


def index_from_R(R: float, l: int, extra: float = None) -> float:
    """λ = 1/2 + sqrt(1/4 - R); exactly l + 1 when the potential leaves R = -l(l+1)."""
    if extra == 0.0:
        return float(l + 1)
    radicand = 0.25 - R
    if radicand < 0:
        raise ComplexIndexError(
            f"index radicand 1/4 - R = {radicand} is negative (l={l}); λ would be complex"
        )
    return 0.5 + math.sqrt(radicand)


def lambda_param(spec: PotentialSpec, kin: Kinematics, l: int) -> float:
    l = _check_l(l)
    _, extra = spec.potential().coupling(kin.coupling)
    R = float(-l * (l + 1)) + extra
    return index_from_R(R, l, extra)


def channel_params(spec: PotentialSpec, kin: Kinematics, l: int) -> ChannelParams:
    l = _check_l(l)
    k, below = wave_number(spec, kin, l)
    k_sq = wave_number_squared(spec, kin, l)
    P, Q, R = pqr(spec, kin, l)
    lam = lambda_param(spec, kin, l)

    beta = spec.beta
    s = cmath.sqrt(complex(Q + R - k_sq / beta**2, 0.0))
    ik = 1j * k / beta
    params = ChannelParams(
        l=l,
        beta=beta,
        k_squared=k_sq,
        k=k,
        below_threshold=below,
        lam=lam,
        P=P,
        Q=Q,
        R=R,
        s=s,
        xi1=lam - ik - s,
        xi2=lam - ik + s,
        xi3=complex(2.0 * lam, 0.0),
        xi1_star=lam + ik - s,
        xi2_star=lam + ik + s,
    )
    logger.debug(
        f"channel {spec.kind.value} {kin.mode.value} l={l}: k={k}, λ={lam}, "
        f"P={P}, Q={Q}, R={R}, below_threshold={below}"
    )
    return params
