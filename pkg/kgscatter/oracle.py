"""
Numerical cross-check of the analytic formulas.

The radial equation is integrated as u'' = F(r) u with F = W(r) - κ², where
W → 0 at large r and κ² is the same k² used by :mod:`kgscatter.model`.
By default W uses the approximated potential and centrifugal term, the
equation the analytic solutions are exact for. ``exact=True`` integrates the
literal 1/r, 1/r² equation instead; that mode has no agreement contract.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import config
from .errors import (
    ComplexIndexError,
    DomainError,
    IntegrationOverflowError,
    MatchError,
    NodeCountError,
    NoRootError,
)
from .model import Kinematics, PotentialSpec, wave_number_squared
from .scattering import WaveFunctionSample, reduce_mod_pi
from .spectra import EnergyLevel

logger = logging.getLogger(__name__)

_RESCALE_AT = 1e100


@dataclass(frozen=True)
class IntegrationGrid:
    r0: float
    r_max: float
    h: float

    def __post_init__(self):
        if not (self.r0 > 0 and self.h > 0 and self.r_max > self.r0):
            raise DomainError(f"invalid grid r0={self.r0}, r_max={self.r_max}, h={self.h}")

    @property
    def points(self) -> np.ndarray:
        count = int(math.floor((self.r_max - self.r0) / self.h + 1e-9)) + 1
        return self.r0 + self.h * np.arange(count, dtype=np.float64)


@dataclass(frozen=True)
class OracleResult:
    delta_numeric: float
    amplitude: float
    match_radius: float
    grid: IntegrationGrid


def _centrifugal(l: int):
    return l * (l + 1)


def effective_potential(spec: PotentialSpec, kin: Kinematics, r, l: int = 0, exact=False):
    """
    W(r) with u'' + [κ² - W(r)] u = 0.

    Approximated form: g (V_approx - V_tail) + l(l+1)β² (1/z² - 1), z = 1 - e^{-βr}.
    """
    r_arr = np.asarray(r, dtype=np.float64)
    if np.any(r_arr <= 0):
        raise DomainError("effective potential needs r > 0")
    potential = spec.potential()
    g = kin.coupling
    cent = _centrifugal(l)
    if exact:
        value = g * (potential.exact(r_arr) - potential.exact_tail()) + cent / r_arr**2
    else:
        decay = np.exp(-spec.beta * r_arr)
        z = -np.expm1(-spec.beta * r_arr)
        # 1/z² - 1 = e^{-βr}(2 - e^{-βr}) / z²
        value = g * potential.short_range(r_arr) + cent * spec.beta**2 * decay * (
            2.0 - decay
        ) / (z * z)
    return float(value) if np.ndim(value) == 0 else value


def kappa_squared(spec: PotentialSpec, kin: Kinematics, l: int, exact=False) -> float:
    if exact:
        return kin.energy_term - kin.coupling * spec.potential().exact_tail()
    return wave_number_squared(spec, kin, l)


def make_grid(
    spec: PotentialSpec,
    kin: Kinematics,
    l: int,
    match_factor: float = config.GRID_RMAX_BETA,
    h: float = None,
) -> IntegrationGrid:
    """Grid satisfying h <= min(0.001/β, 2π/(40 k_ref)) and r_max = match_factor/β."""
    k_ref = max(math.sqrt(abs(wave_number_squared(spec, kin, l))), spec.beta)
    h_max = min(
        config.GRID_STEP_PER_BETA / spec.beta,
        2.0 * math.pi / (config.GRID_POINTS_PER_WAVELENGTH * k_ref),
    )
    h = h_max if h is None else min(h, h_max)
    return IntegrationGrid(r0=h, r_max=match_factor / spec.beta, h=h)


def _frobenius_start(f_of_r, h: float):
    """
    u(h), u(2h) from u = r^λ (1 + c1 r + c2 r²).

    g(r) = r² F(r) is fitted as g0 + g1 r + g2 r² from three tiny radii;
    λ is the regular indicial root 1/2 + sqrt(1/4 + g0).
    """
    eps = h * 0.1
    g_vals = [(m * eps) ** 2 * f_of_r(m * eps) for m in (1, 2, 3)]
    g2 = (g_vals[0] - 2.0 * g_vals[1] + g_vals[2]) / (2.0 * eps**2)
    g1 = (g_vals[1] - g_vals[0]) / eps - 3.0 * g2 * eps
    g0 = g_vals[0] - g1 * eps - g2 * eps**2
    radicand = 0.25 + g0
    if radicand < 0:
        raise ComplexIndexError(f"indicial radicand 1/4 + g0 = {radicand} is negative")
    lam = 0.5 + math.sqrt(radicand)
    c1 = g1 / (2.0 * lam)
    c2 = (g2 + g1 * c1) / (4.0 * lam + 2.0)

    def u(r):
        return r**lam * (1.0 + c1 * r + c2 * r * r)

    return u(h), u(2.0 * h), lam


def _f_function(spec, kin, l, exact):
    k_sq = kappa_squared(spec, kin, l, exact)

    def f_of_r(r):
        return effective_potential(spec, kin, r, l, exact) - k_sq

    return f_of_r


def _numerov(f_values: np.ndarray, h: float, u0: float, u1: float, rescale: bool):
    """
    Three-term Numerov recursion. Returns (u, log_scale) where the true
    solution is u[i] * exp(log_scale[i]).
    """
    count = f_values.shape[0]
    t = (h * h / 12.0) * f_values
    t = t.tolist()
    u = [0.0] * count
    log_scale = [0.0] * count
    u[0], u[1] = u0, u1
    scale = 0.0
    for i in range(1, count - 1):
        u_next = (2.0 * u[i] * (1.0 + 5.0 * t[i]) - u[i - 1] * (1.0 - t[i - 1])) / (
            1.0 - t[i + 1]
        )
        if not math.isfinite(u_next) or (
            not rescale and abs(u_next) > config.OVERFLOW_LIMIT
        ):
            raise IntegrationOverflowError(
                f"|u| exceeded {config.OVERFLOW_LIMIT:g} at step {i + 1}"
            )
        if abs(u_next) > _RESCALE_AT:
            if rescale:
                u[i] /= _RESCALE_AT
                u_next /= _RESCALE_AT
                scale += math.log(_RESCALE_AT)
                log_scale[i] = scale
        u[i + 1] = u_next
        log_scale[i + 1] = scale
    return u, log_scale


def integrate_radial(spec, kin, l, grid: IntegrationGrid, exact=False):
    """Numerov solution on the grid, regular at the origin."""
    r = grid.points
    f_of_r = _f_function(spec, kin, l, exact)
    u0, u1, lam = _frobenius_start(f_of_r, grid.h)
    f_values = np.asarray(f_of_r(r), dtype=np.float64)
    logger.debug(
        f"Numerov: {spec.kind.value} l={l}, λ={lam:.6g}, h={grid.h:.3g}, "
        f"r_max={grid.r_max:.6g}, {r.size} 點"
    )
    u, _ = _numerov(f_values, grid.h, u0, u1, rescale=False)
    return [WaveFunctionSample(r=float(ri), u=complex(ui, 0.0)) for ri, ui in zip(r, u)]


def extract_phase(samples, k: float, l: int, beta: float, grid: IntegrationGrid = None):
    """
    Fit u = A sin(kr + φ) through two samples a quarter wavelength apart near
    the end of ``samples``; δ = (φ + lπ/2) mod π.
    """
    if not (k > 0 and math.isfinite(k)):
        raise DomainError(f"phase extraction needs a real positive k, got {k}")
    r = np.array([s.r for s in samples], dtype=np.float64)
    u = np.array([s.u.real for s in samples], dtype=np.float64)
    quarter = math.pi / (2.0 * k)
    peak = float(np.max(np.abs(u[r >= r[-1] - 4.0 * quarter])))

    for attempt in range(config.MATCH_RETRIES + 1):
        end = r[-1] - attempt * quarter / 2.0
        i2 = int(np.clip(np.searchsorted(r, end, side="right") - 1, 0, r.size - 1))
        i1 = int(np.clip(np.searchsorted(r, r[i2] - quarter), 0, r.size - 1))
        r1, r2 = r[i1], r[i2]
        det = math.sin(k * r1) * math.cos(k * r2) - math.cos(k * r1) * math.sin(k * r2)
        if abs(det) < config.MATCH_MIN_DETERMINANT or math.hypot(u[i1], u[i2]) < 1e-8 * peak:
            logger.debug(f"兩點擬合條件不佳 (attempt={attempt}, det={det:.3g})，移動匹配點")
            continue
        # u_i = C sin(k r_i) + S cos(k r_i)
        c_coef = (u[i1] * math.cos(k * r2) - u[i2] * math.cos(k * r1)) / det
        s_coef = (u[i2] * math.sin(k * r1) - u[i1] * math.sin(k * r2)) / det
        amplitude = math.hypot(c_coef, s_coef)
        phi = math.atan2(s_coef, c_coef)
        if grid is None:
            grid = IntegrationGrid(r0=float(r[0]), r_max=float(r[-1]), h=float(r[1] - r[0]))
        return OracleResult(
            delta_numeric=reduce_mod_pi(phi + l * math.pi / 2.0),
            amplitude=amplitude,
            match_radius=float(r2),
            grid=grid,
        )
    raise MatchError(f"two-point sine fit ill-conditioned after {config.MATCH_RETRIES} retries")


def oracle_phase_shift(
    spec: PotentialSpec,
    kin: Kinematics,
    l: int,
    match_factor: float = config.GRID_RMAX_BETA,
    h: float = None,
    exact=False,
) -> OracleResult:
    """Integrate and extract δ mod π for an above-threshold channel."""
    k_sq = kappa_squared(spec, kin, l, exact)
    if k_sq <= 0:
        raise DomainError(f"oracle phase needs κ² > 0, got {k_sq}")
    grid = make_grid(spec, kin, l, match_factor=match_factor, h=h)
    samples = integrate_radial(spec, kin, l, grid, exact=exact)
    return extract_phase(samples, math.sqrt(k_sq), l, spec.beta, grid=grid)


class _Shooter:
    """u(r_max) and node counts as functions of the trial energy."""

    def __init__(self, spec, kin_template, l, grid, exact):
        self.spec = spec
        self.kin_template = kin_template
        self.l = l
        self.grid = grid
        self.exact = exact
        self.r = grid.points

    def solve(self, E):
        kin = self.kin_template.with_energy(E)
        f_of_r = _f_function(self.spec, kin, self.l, self.exact)
        u0, u1, _ = _frobenius_start(f_of_r, self.grid.h)
        f_values = np.asarray(f_of_r(self.r), dtype=np.float64)
        return _numerov(f_values, self.grid.h, u0, u1, rescale=True)

    def nodes(self, E) -> int:
        u, _ = self.solve(E)
        arr = np.asarray(u)
        return int(np.count_nonzero(arr[:-1] * arr[1:] < 0))

    def bound_nodes(self, E) -> int:
        """Nodes before the solution has decayed into the forbidden tail."""
        u, log_scale = self.solve(E)
        arr = np.asarray(u)
        logs = np.log(np.abs(arr) + 1e-300) + np.asarray(log_scale)
        significant = np.nonzero(logs > logs.max() + math.log(config.NODE_TAIL_FRACTION))[0]
        body = arr[: significant[-1] + 1]
        return int(np.count_nonzero(body[:-1] * body[1:] < 0))

    def tail_value(self, E) -> float:
        """sign(u_end) |u_end| / max|u|, continuous in E."""
        u, log_scale = self.solve(E)
        logs = np.log(np.abs(np.asarray(u)) + 1e-300) + np.asarray(log_scale)
        end = u[-1]
        if end == 0.0:
            return 0.0
        return math.copysign(math.exp(logs[-1] - float(np.max(logs))), end)


def _decay_constant(spec, kin, l, exact):
    k_sq = kappa_squared(spec, kin, l, exact)
    if k_sq >= 0:
        raise DomainError(f"bound-state window must lie below threshold (κ² = {k_sq})")
    return math.sqrt(-k_sq)


def shooting_grid(spec, kin_template, l, E_window, exact=False) -> IntegrationGrid:
    E_lo, E_hi = E_window
    K_hi = _decay_constant(spec, kin_template.with_energy(E_hi), l, exact)
    K_lo = _decay_constant(spec, kin_template.with_energy(E_lo), l, exact)
    r_max = min(config.GRID_RMAX_BETA / spec.beta, config.SHOOT_DECAY_LENGTHS / K_hi)
    k_ref = max(K_lo, spec.beta)
    h = min(
        config.GRID_STEP_PER_BETA / spec.beta,
        2.0 * math.pi / (config.GRID_POINTS_PER_WAVELENGTH * k_ref),
        config.SHOOT_MAX_STEP,
    )
    return IntegrationGrid(r0=h, r_max=r_max, h=h)


def shoot_bound_state(
    spec: PotentialSpec,
    kin_template: Kinematics,
    l: int,
    E_window,
    n_target: int,
    exact=False,
    etol: float = config.SHOOT_ETOL,
) -> EnergyLevel:
    """
    Energy of the level with ``n_target`` nodes inside ``E_window``.

    Node-count bisection isolates a bracket where the count steps from
    n_target to n_target + 1; brentq then zeros u(r_max) inside it.
    """
    E_lo, E_hi = float(E_window[0]), float(E_window[1])
    if not E_lo < E_hi:
        raise DomainError(f"energy window must satisfy E_lo < E_hi, got {E_window}")
    grid = shooting_grid(spec, kin_template, l, (E_lo, E_hi), exact)
    shooter = _Shooter(spec, kin_template, l, grid, exact)

    n_lo, n_hi = shooter.nodes(E_lo), shooter.nodes(E_hi)
    if n_lo > n_target or n_hi <= n_target:
        raise NoRootError(
            f"window {E_window} holds node counts {n_lo}..{n_hi}; "
            f"no level with {n_target} nodes"
        )
    while not (n_lo == n_target and n_hi == n_target + 1):
        if E_hi - E_lo < etol:
            raise NodeCountError(
                f"could not isolate a level with {n_target} nodes "
                f"(counts {n_lo}..{n_hi} in [{E_lo}, {E_hi}])"
            )
        mid = 0.5 * (E_lo + E_hi)
        n_mid = shooter.nodes(mid)
        if n_mid <= n_target:
            E_lo, n_lo = mid, n_mid
        else:
            E_hi, n_hi = mid, n_mid

    f_lo, f_hi = shooter.tail_value(E_lo), shooter.tail_value(E_hi)
    if f_lo == 0.0:
        E = E_lo
    elif f_hi == 0.0:
        E = E_hi
    elif f_lo * f_hi > 0:
        raise NodeCountError(
            f"u(r_max) keeps its sign across the node step at n={n_target}"
        )
    else:
        E = optimize.brentq(shooter.tail_value, E_lo, E_hi, xtol=etol)
    residual = shooter.tail_value(E)
    nodes = shooter.bound_nodes(E)
    if nodes != n_target:
        raise NodeCountError(f"level at E={E:.12g} has {nodes} nodes, expected {n_target}")
    logger.info(
        f"✅ shooting {spec.kind.value} n={n_target} l={l}: E={E:.12g} "
        f"(h={grid.h:.3g}, r_max={grid.r_max:.6g})"
    )
    return EnergyLevel(
        n=n_target, l=l, E=E, residual=residual, window=(E_lo, E_hi), nodes=nodes
    )
