"""
Bound-state energies.

The pole condition of every channel reduces to

    k²(E) + β² [((n + λ)² - Q - R) / (2(n + λ))]² = 0

with k², λ, Q, R taken at the trial energy (λ depends on E only for the
Varshni-Shukla potential in relativistic mode). In non-relativistic mode the
coupling g = 2μ/ħ² is energy independent and the condition solves in closed
form; relativistically it is scanned and bisected.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import optimize

from . import config
from .errors import ComplexIndexError, DomainError, NoRootError
from .model import Kinematics, PotentialSpec, index_from_R

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    l: int
    E: float
    residual: float
    suspect_redundant: bool = False
    window: Optional[Tuple[float, float]] = None
    nodes: Optional[int] = None  # shooting only


def _pole_terms(spec: PotentialSpec, g: float, l: int, n: int):
    """(λ, X) with X = ((n+λ)² - Q - R) / (2(n+λ)) at coupling g."""
    if n < 0 or l < 0:
        raise DomainError(f"n and l must be nonnegative, got n={n}, l={l}")
    Q, extra = spec.potential().coupling(g)
    R = float(-l * (l + 1)) + extra
    lam = index_from_R(R, l, extra)
    shifted = n + lam
    if shifted <= 0:
        raise DomainError(f"n + λ must be positive, got {shifted}")
    return lam, ((shifted**2 - Q - R) / (2.0 * shifted)), Q + R


def rel_pole_residual(spec: PotentialSpec, M: float, l: int, n: int, E: float) -> float:
    kin = Kinematics.relativistic(M, E)
    _, x, _ = _pole_terms(spec, kin.coupling, l, n)
    tail = spec.potential().tail()
    k_sq = kin.energy_term - kin.coupling * tail - l * (l + 1) * spec.beta**2
    return k_sq + spec.beta**2 * x**2


def is_physical_pole(spec: PotentialSpec, g: float, l: int, n: int) -> bool:
    """True when the pole gives a decaying solution (positive decay constant)."""
    lam, _, q_plus_r = _pole_terms(spec, g, l, n)
    return q_plus_r > (n + lam) ** 2


def _suspect(spec: PotentialSpec, g: float, l: int, n: int) -> bool:
    if spec.potential().is_degenerate():
        return True
    try:
        return not is_physical_pole(spec, g, l, n)
    except ComplexIndexError:
        return True


def nr_energy(spec: PotentialSpec, mu: float, hbar: float, l: int, n: int) -> float:
    """
    Closed-form non-relativistic level

        E = V_tail + ħ²β²l(l+1)/(2μ) - (ħ²β²/2μ) X²
    """
    kin = Kinematics.non_relativistic(mu, 0.0, hbar)
    _, x, _ = _pole_terms(spec, kin.coupling, l, n)
    scale = hbar**2 * spec.beta**2 / (2.0 * mu)
    return spec.potential().tail() + scale * l * (l + 1) - scale * x**2


def nr_levels(spec: PotentialSpec, mu: float, hbar: float, l: int, n_max: int):
    g = 2.0 * mu / hbar**2
    levels = []
    for n in range(n_max + 1):
        E = nr_energy(spec, mu, hbar, l, n)
        levels.append(
            EnergyLevel(
                n=n, l=l, E=E, residual=0.0, suspect_redundant=_suspect(spec, g, l, n)
            )
        )
    return levels


def default_window(spec: PotentialSpec, M: float):
    return (-M + config.WINDOW_LOW_OFFSET, M + abs(spec.a) + 1.0)


def _scan(spec, M, l, n, energies):
    values = np.empty_like(energies)
    for i, E in enumerate(energies):
        try:
            values[i] = rel_pole_residual(spec, M, l, n, float(E))
        except ComplexIndexError:
            values[i] = np.nan
    return values


def _levels_for_n(spec, M, l, n, window, scan_points, xtol):
    energies = np.linspace(window[0], window[1], scan_points)
    values = _scan(spec, M, l, n, energies)
    finite = np.abs(values[np.isfinite(values)])
    median = float(np.median(finite)) if finite.size else 0.0

    def residual(E):
        return rel_pole_residual(spec, M, l, n, E)

    roots = []
    for i in range(scan_points - 1):
        lo, hi = float(energies[i]), float(energies[i + 1])
        f_lo, f_hi = values[i], values[i + 1]
        if not (np.isfinite(f_lo) and np.isfinite(f_hi)):
            continue
        if f_lo == 0.0:
            roots.append(lo)
            continue
        if f_lo * f_hi > 0 or f_hi == 0.0:
            continue
        if (
            median > 0
            and abs(f_lo) > config.BRANCH_JUMP_FACTOR * median
            and abs(f_hi) > config.BRANCH_JUMP_FACTOR * median
        ):
            logger.debug(f"捨棄分支跳躍區間 [{lo}, {hi}] (n={n}, l={l})")
            continue
        roots.append(optimize.bisect(residual, lo, hi, xtol=xtol))
    if np.isfinite(values[-1]) and values[-1] == 0.0:
        roots.append(float(energies[-1]))

    if not roots:
        raise NoRootError(f"no sign change of the pole residual for n={n}, l={l}")
    return roots


def solve_rel_levels(
    spec: PotentialSpec,
    M: float,
    l: int,
    n_max: int,
    window: Optional[Tuple[float, float]] = None,
    scan_points: int = config.SCAN_POINTS,
    xtol: float = config.BISECT_XTOL,
) -> List[EnergyLevel]:
    """All relativistic levels n <= n_max found in the window, sorted by E."""
    if window is None:
        window = default_window(spec, M)
    window = (float(window[0]), float(window[1]))
    if not window[0] < window[1]:
        raise DomainError(f"energy window must satisfy E_lo < E_hi, got {window}")

    levels = []
    for n in range(n_max + 1):
        try:
            roots = _levels_for_n(spec, M, l, n, window, scan_points, xtol)
        except NoRootError as e:
            logger.info(f"⚠️ {e}")
            continue
        for E in roots:
            levels.append(
                EnergyLevel(
                    n=n,
                    l=l,
                    E=E,
                    residual=rel_pole_residual(spec, M, l, n, E),
                    suspect_redundant=_suspect(spec, E + M, l, n),
                    window=window,
                )
            )
    levels.sort(key=lambda level: level.E)
    logger.info(
        f"✅ {spec.kind.value} l={l}: 在 {window} 找到 {len(levels)} 個能階"
    )
    return levels
