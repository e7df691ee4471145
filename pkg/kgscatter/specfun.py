"""
Complex special functions: principal-branch log Γ, two arg Γ conventions and
the Gauss hypergeometric function 2F1(a, b; c; x) for real x in [0, 1).

All functions are pure; nothing is cached between calls.
"""

import cmath
import logging
import math
from enum import Enum
from typing import Optional

import numpy as np

from . import config
from .errors import (
    ConvergenceError,
    DegenerateParameterError,
    DomainError,
    PoleError,
)

logger = logging.getLogger(__name__)

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_2k / (2k (2k - 1)), k = 1..10
_STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)

# 位移項數超過此值改用 numpy 向量化
_VECTORIZE_SHIFT = 64


class ArgConvention(str, Enum):
    PRINCIPAL_LOG_GAMMA = "principal-log-gamma"
    WRAPPED_ARG = "wrapped-arg"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            supported = ", ".join(c.value for c in cls)
            raise ValueError(f"不支援的 argΓ 慣例: {value}。目前只支援 {supported}")


def _as_complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    return z


def is_gamma_pole(z: complex, tol: float = config.POLE_TOL) -> bool:
    """True when z sits on a nonpositive integer to within ``tol``."""
    nearest = round(z.real)
    return abs(z - nearest) < tol and abs(z.imag) < tol and z.real <= 0


def _stirling(z: complex) -> complex:
    inv = 1.0 / z
    inv2 = inv * inv
    correction = 0j
    power = inv
    for coeff in _STIRLING_COEFFS:
        correction += coeff * power
        power *= inv2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + correction


def _sum_principal_logs(z: complex, count: int) -> complex:
    """Σ_{k<count} Log(z + k), compensated."""
    if count <= _VECTORIZE_SHIFT:
        terms = [cmath.log(z + k) for k in range(count)]
        return complex(
            math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)
        )
    shifted = z + np.arange(count, dtype=np.float64)
    logs = np.log(shifted.astype(np.complex128))
    return complex(math.fsum(logs.real.tolist()), math.fsum(logs.imag.tolist()))


def log_gamma(z, stirling_min_modulus: float = config.STIRLING_MIN_MODULUS) -> complex:
    """
    Principal branch of log Γ(z).

    The imaginary part is the continuous continuation from the positive real
    axis and is not reduced to (-π, π]. Small or left-half-plane arguments are
    shifted upward with Γ(z) = Γ(z + N) / Π (z + k) before Stirling applies.
    """
    z = _as_complex(z)
    if is_gamma_pole(z):
        raise PoleError(f"Γ has a pole at z = {z}")

    if z.real >= 0 and abs(z) >= stirling_min_modulus:
        return _stirling(z)

    # Re z < stirling_min_modulus here, so shift >= 1
    shift = int(math.ceil(stirling_min_modulus - z.real))
    return _stirling(z + shift) - _sum_principal_logs(z, shift)


def arg_gamma(z, conv=ArgConvention.PRINCIPAL_LOG_GAMMA) -> float:
    conv = ArgConvention.parse(conv)
    value = log_gamma(z).imag
    if conv is ArgConvention.PRINCIPAL_LOG_GAMMA:
        return value
    return wrap_to_pi(value)


def wrap_to_pi(angle: float) -> float:
    """Reduce an angle to (-π, π]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def _series(a: complex, b: complex, c: complex, x: float, rtol, floor, max_terms):
    """Power series of 2F1 with a two-consecutive-small-terms stop."""
    term = 1.0 + 0j
    re_parts = [1.0]
    im_parts = [0.0]
    total = 1.0 + 0j
    small_run = 0
    n = 0
    while True:
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        n += 1
        re_parts.append(term.real)
        im_parts.append(term.imag)
        total += term
        if abs(term) < max(rtol * abs(total), floor):
            small_run += 1
            if small_run >= 2:
                break
        else:
            small_run = 0
        if n > max_terms:
            raise ConvergenceError(
                f"2F1 series did not converge in {max_terms} terms "
                f"(a={a}, b={b}, c={c}, x={x})"
            )
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def _log_reciprocal_gamma(z: complex):
    """log(1/Γ(z)), or None when 1/Γ(z) vanishes."""
    if is_gamma_pole(z):
        return None
    return -log_gamma(z)


def _connection(a, b, c, log_one_minus_x, rtol, floor, max_terms):
    gap = c - a - b
    one_minus_x = math.exp(log_one_minus_x)
    log_c = log_gamma(c)

    first = 0j
    inv_ca = _log_reciprocal_gamma(c - a)
    inv_cb = _log_reciprocal_gamma(c - b)
    if inv_ca is not None and inv_cb is not None:
        coeff = cmath.exp(log_c + log_gamma(gap) + inv_ca + inv_cb)
        first = coeff * _series(a, b, 1.0 - gap, one_minus_x, rtol, floor, max_terms)

    second = 0j
    inv_a = _log_reciprocal_gamma(a)
    inv_b = _log_reciprocal_gamma(b)
    if inv_a is not None and inv_b is not None:
        coeff = cmath.exp(
            log_c + log_gamma(-gap) + inv_a + inv_b + gap * log_one_minus_x
        )
        second = coeff * _series(
            c - a, c - b, 1.0 + gap, one_minus_x, rtol, floor, max_terms
        )
    return first + second


def gauss_2f1(
    p1,
    p2,
    p3,
    x: float,
    x_switch: float = config.X_SWITCH,
    rtol: float = config.SERIES_RTOL,
    floor: float = config.SERIES_ABS_FLOOR,
    max_terms: int = config.SERIES_MAX_TERMS,
    log_one_minus_x: Optional[float] = None,
) -> complex:
    """
    2F1(p1, p2; p3; x) for real x in [0, 1).

    x <= x_switch sums the power series directly; beyond it the two-term
    connection formula maps the evaluation onto series in (1 - x).

    Callers that know log(1 - x) exactly (x = 1 - e^{-βr}) pass it as
    ``log_one_minus_x``; x is then derived from it and ``x`` is ignored, so
    points where x rounds to 1.0 stay valid.
    """
    a, b, c = _as_complex(p1), _as_complex(p2), _as_complex(p3)
    if log_one_minus_x is not None:
        log_one_minus_x = float(log_one_minus_x)
        if not (math.isfinite(log_one_minus_x) and log_one_minus_x <= 0.0):
            raise DomainError(f"log(1 - x) must be finite and <= 0, got {log_one_minus_x}")
        x = -math.expm1(log_one_minus_x)
    else:
        x = float(x)
        if not (0.0 <= x < 1.0):
            raise DomainError(f"2F1 argument must lie in [0, 1), got x = {x}")
        if x > x_switch:
            log_one_minus_x = math.log1p(-x)
    if is_gamma_pole(c):
        raise PoleError(f"2F1 third parameter is a nonpositive integer: c = {c}")
    if x == 0.0:
        return 1.0 + 0j
    if x <= x_switch:
        return _series(a, b, c, x, rtol, floor, max_terms)

    gap = c - a - b
    nearest = round(gap.real)
    if abs(gap) < config.CONNECTION_MIN_GAP or (
        abs(gap.imag) < config.CONNECTION_MIN_GAP
        and abs(gap.real - nearest) < config.CONNECTION_MIN_GAP
    ):
        raise DegenerateParameterError(
            f"connection formula needs c - a - b away from the integers, got {gap}"
        )
    logger.debug(f"2F1 連接公式: a={a}, b={b}, c={c}, x={x}")
    return _connection(a, b, c, log_one_minus_x, rtol, floor, max_terms)
