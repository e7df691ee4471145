"""
Acceptance suites run by ``kgscatter validate``.

Each suite returns a list of :class:`~kgscatter.utils.CheckResult`; nothing
here raises on a failed check. Oracles are independent of the code under
test: the Weierstrass product for log Γ, closed forms, the Numerov
integrator and the analytic limits.
"""

import cmath
import logging
import math
import time

import numpy as np
from scipy import special

from . import oracle, paperdata, spectra
from .model import Kinematics, PotentialKind, PotentialSpec
from .scattering import phase_shift, radial_wavefunction
from .specfun import ArgConvention, arg_gamma, gauss_2f1, log_gamma
from .utils import CheckResult, circle_distance

logger = logging.getLogger(__name__)

SUITES = ("specfun", "scattering", "oracle", "spectra", "tables", "all")

_SEED = 20240601


def weierstrass_log_gamma(z: complex, zeta_terms: int = 14) -> complex:
    """
    ln Γ(z) = -γz - ln z + Σ_k [z/k - ln(1 + z/k)].

    The sum runs explicitly while |z/k| > 0.01; the remainder is the power
    series of w - ln(1 + w) summed against Hurwitz zeta values.
    """
    z = complex(z)
    cutoff = int(math.ceil(100.0 * abs(z))) + 10
    terms = [z / k - cmath.log(1.0 + z / k) for k in range(1, cutoff + 1)]
    head = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    tail = 0j
    for j in range(2, zeta_terms + 2):
        tail += (-1) ** j * z**j / j * float(special.zeta(j, cutoff + 1))
    return -np.euler_gamma * z - cmath.log(z) + head + tail


def _check(name, measured, threshold, detail=""):
    passed = bool(measured < threshold)
    logger.info(f"{'✅' if passed else '❌'} {name}: {measured:.3g} (< {threshold:g})")
    return CheckResult(name, passed, float(measured), float(threshold), detail)


def _random_points(rng, count, radius, min_imag):
    points = []
    while len(points) < count:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius and abs(z.imag) >= min_imag:
            points.append(z)
    return points


def specfun_suite():
    rng = np.random.default_rng(_SEED)
    checks = []

    worst = 0.0
    for z in _random_points(rng, 100, 20.0, 0.5):
        ref = weierstrass_log_gamma(z)
        worst = max(worst, abs(log_gamma(z) - ref) / max(1.0, abs(ref)))
    checks.append(_check("log_gamma_vs_weierstrass", worst, 1e-10, "100 points, |z| <= 20"))

    worst = 0.0
    for y in (0.5, 1.0, 2.0, 5.0):
        expected = math.pi / (y * math.sinh(math.pi * y))
        got = math.exp(2.0 * log_gamma(complex(0.0, y)).real)
        worst = max(worst, abs(got - expected) / expected)
    checks.append(_check("gamma_reflection_imaginary_axis", worst, 1e-10))

    worst = 0.0
    for _ in range(100):
        z = complex(rng.uniform(0.25, 20.0), rng.uniform(-20.0, 20.0))
        worst = max(worst, abs(log_gamma(z + 1) - log_gamma(z) - cmath.log(z)))
    checks.append(_check("log_gamma_recurrence", worst, 1e-11))

    worst = 0.0
    for z in _random_points(rng, 50, 20.0, 0.5):
        for conv in ArgConvention:
            worst = max(worst, abs(arg_gamma(z.conjugate(), conv) + arg_gamma(z, conv)))
    checks.append(_check("arg_gamma_conjugation", worst, 1e-12))

    closed = abs(gauss_2f1(1, 1, 2, 0.5) - 2.0 * math.log(2.0)) / (2.0 * math.log(2.0))
    checks.append(_check("hyp2f1_closed_form", closed, 1e-13))

    params = (complex(1.0, -3.0), complex(2.5, 1.2), complex(3.0, 0.0))
    worst = 0.0
    for x in (0.5 - 1e-6, 0.5 + 1e-6):
        series = gauss_2f1(*params, x, x_switch=0.99)
        connection = gauss_2f1(*params, x, x_switch=0.0)
        worst = max(worst, abs(series - connection) / abs(series))
    checks.append(_check("hyp2f1_switch_continuity", worst, 1e-8))
    return checks


def free_identity_checks():
    worst = 0.0
    slowest = 0.0
    for beta in (0.2, 0.5, 1.0):
        spec = PotentialSpec(PotentialKind.VARSHNI, 0.0, 0.0, beta)
        start = time.perf_counter()
        delta = phase_shift(spec, Kinematics.relativistic(1.0, 2.0), 0).delta
        slowest = max(slowest, time.perf_counter() - start)
        worst = max(worst, abs(delta))
    return [
        _check("free_particle_identity", worst, 1e-10),
        _check("free_particle_identity_runtime_s", slowest, 1e-3),
    ]


def _spread(values):
    return max(values) - min(values)


def structural_checks():
    checks = []
    kin_table = Kinematics.relativistic(1.0, 1.0)
    worst = 0.0
    for l in (1, 2, 3):
        deltas = [
            phase_shift(PotentialSpec(PotentialKind.VARSHNI, 0.0, b, 0.2), kin_table, l).delta
            for b in (-2.0, -1.0, 0.0, 1.0, 2.0)
        ]
        worst = max(worst, _spread(deltas))
    checks.append(_check("varshni_b_independence", worst, 1e-12))

    kin = Kinematics.relativistic(1.0, 2.0)
    worst = 0.0
    for l in range(4):
        deltas = [
            phase_shift(PotentialSpec(kind, 0.0, 0.0, 0.2), kin, l).delta
            for kind in PotentialKind
        ]
        worst = max(worst, _spread(deltas))
    checks.append(_check("zero_strength_coincidence", worst, 1e-12))

    # l = 0 has k = 0 at E = M for every β
    deltas = [
        phase_shift(
            PotentialSpec(PotentialKind.VARSHNI_SHUKLA, 0.0, 1.0, beta), kin_table, 1
        ).delta
        for beta in (0.2, 0.4, 0.6, 0.8, 1.0)
    ]
    checks.append(_check("vsp_beta_independence", _spread(deltas), 1e-9))
    return checks


def _numerov_residual(samples, f_values, h):
    u = np.array([s.u for s in samples], dtype=np.complex128)
    f = np.asarray(f_values, dtype=np.float64)
    fu = f * u
    second = u[2:] - 2.0 * u[1:-1] + u[:-2]
    numerov = (h * h / 12.0) * (fu[2:] + 10.0 * fu[1:-1] + fu[:-2])
    return float(np.max(np.abs(second - numerov)) / (h * h * np.max(np.abs(fu))))


def wavefunction_residual(spec, kin, l, r_lo=0.1, r_hi=10.0, h=1e-3):
    """Numerov-form residual of the analytic u against u'' = (W - k²) u."""
    r = r_lo + h * np.arange(int(round((r_hi - r_lo) / h)) + 1)
    samples = radial_wavefunction(spec, kin, l, r)
    k_sq = oracle.kappa_squared(spec, kin, l)
    f_values = oracle.effective_potential(spec, kin, r, l) - k_sq
    return _numerov_residual(samples, f_values, h)


def _channel_cases():
    kin = Kinematics.relativistic(1.0, 2.0)
    for kind in PotentialKind:
        for a in (0.0, 0.5):
            if kind is PotentialKind.VARSHNI_SHUKLA and a != 0.0:
                continue
            for l in (0, 1, 2):
                yield PotentialSpec(kind, a, 1.0, 0.3), kin, l


def wavefunction_checks():
    kin = Kinematics.relativistic(1.0, 2.0)
    checks = []
    for kind in PotentialKind:
        a = 0.0 if kind is PotentialKind.VARSHNI_SHUKLA else 0.5
        spec = PotentialSpec(kind, a, 1.0, 0.3)
        checks.append(
            _check(f"wavefunction_residual_{kind.value}", wavefunction_residual(spec, kin, 0), 1e-6)
        )
    return checks


def scattering_suite():
    return free_identity_checks() + structural_checks() + wavefunction_checks()


def oracle_suite():
    checks = []
    worst = 0.0
    slowest = 0.0
    cases = list(_channel_cases())
    for spec, kin, l in cases:
        start = time.perf_counter()
        numeric = oracle.oracle_phase_shift(spec, kin, l)
        slowest = max(slowest, time.perf_counter() - start)
        analytic = phase_shift(spec, kin, l).delta
        worst = max(worst, circle_distance(analytic, numeric.delta_numeric, math.pi))
    checks.append(_check("oracle_phase_agreement", worst, 1e-3, f"{len(cases)} cases"))
    checks.append(_check("oracle_runtime_s", slowest, 1.0))

    spec = PotentialSpec(PotentialKind.HELLMANN, 0.5, 1.0, 0.3)
    kin = Kinematics.relativistic(1.0, 2.0)
    coarse = oracle.oracle_phase_shift(spec, kin, 1)
    fine = oracle.oracle_phase_shift(spec, kin, 1, h=coarse.grid.h / 2.0)
    checks.append(
        _check(
            "oracle_grid_convergence",
            circle_distance(coarse.delta_numeric, fine.delta_numeric, math.pi),
            1e-5,
        )
    )
    far = oracle.oracle_phase_shift(spec, kin, 1, match_factor=50.0)
    checks.append(
        _check(
            "oracle_match_radius_independence",
            circle_distance(coarse.delta_numeric, far.delta_numeric, math.pi),
            1e-4,
        )
    )
    return checks


def coulomb_limit_checks():
    errors = []
    for beta in (1e-3, 1e-4):
        spec = PotentialSpec(PotentialKind.HELLMANN, 1.0, 0.0, beta)
        errors.append(abs(spectra.nr_energy(spec, 1.0, 1.0, 0, 0) + 0.5))
    ratio = errors[0] / errors[1]
    return [
        _check("coulomb_limit_beta_1e-3", errors[0], 2e-3),
        _check("coulomb_limit_beta_1e-4", errors[1], 2e-4),
        _check("coulomb_limit_order", abs(ratio - 10.0), 2.0, f"ratio {ratio:.4g}"),
    ]


# (n, l, window) for NR Hellmann a=2, b=1, β=0.2, μ=ħ=1; thresholds -0.4 (l=0), -0.36 (l=1)
SHOOTING_CASES = ((0, 0, (-1.2, -0.6)), (1, 0, (-0.6, -0.41)), (0, 1, (-0.6, -0.365)))


def shooting_checks():
    spec = PotentialSpec(PotentialKind.HELLMANN, 2.0, 1.0, 0.2)
    template = Kinematics.non_relativistic(1.0, 0.0)
    start = time.perf_counter()
    worst = 0.0
    for n, l, window in SHOOTING_CASES:
        level = oracle.shoot_bound_state(spec, template, l, window, n)
        worst = max(worst, abs(level.E - spectra.nr_energy(spec, 1.0, 1.0, l, n)))
    elapsed = time.perf_counter() - start
    return [
        _check("closed_form_vs_shooting", worst, 1e-6),
        _check("closed_form_vs_shooting_runtime_s", elapsed, 10.0),
    ]


def mass_limit_checks():
    """
    The relativistic pole condition at coupling E + M is the non-relativistic
    one at μ = (E + M)/2, so every root satisfies E - M = E_NR(μ = (E+M)/2)
    exactly. First-order convergence of the gap to E_NR(μ = M) is measured in
    a weak-coupling family with μa² fixed.
    """
    worst = 0.0
    roots = 0
    for kind in PotentialKind:
        a = 0.0 if kind is PotentialKind.VARSHNI_SHUKLA else 0.5
        spec = PotentialSpec(kind, a, 1.0, 0.1)
        for M in (50.0, 100.0):
            for level in spectra.solve_rel_levels(spec, M, 0, 0):
                nr = spectra.nr_energy(spec, (level.E + M) / 2.0, 1.0, 0, 0)
                worst = max(worst, abs((level.E - M) - nr) / max(1.0, abs(level.E - M)))
                roots += 1
    checks = [_check("mass_limit_identity", worst, 1e-6, f"{roots} roots")]

    gaps = []
    for M in (50.0, 100.0):
        spec = PotentialSpec(PotentialKind.HELLMANN, 1.0 / math.sqrt(M), 0.0, 0.01)
        levels = [lv for lv in spectra.solve_rel_levels(spec, M, 0, 0) if not lv.suspect_redundant]
        if not levels:
            return checks + [CheckResult("mass_limit_gap_ratio", False, math.nan, 0.7, "no level")]
        gaps.append(abs((levels[0].E - M) - spectra.nr_energy(spec, M, 1.0, 0, 0)))
    ratio = gaps[1] / gaps[0]
    passed = 0.3 <= ratio <= 0.7
    logger.info(f"{'✅' if passed else '❌'} mass_limit_gap_ratio: {ratio:.4g}")
    checks.append(CheckResult("mass_limit_gap_ratio", passed, ratio, 0.7, "expected in [0.3, 0.7]"))
    return checks


def spectra_suite():
    return coulomb_limit_checks() + shooting_checks() + mass_limit_checks()


def tables_suite():
    checks = []
    for table_id in range(1, 7):
        report = paperdata.compare_table(table_id)
        unclassified = sum(1 for r in report.records if r.status not in paperdata.STATUSES)
        checks.append(
            _check(
                f"table_{table_id}_classified",
                float(unclassified),
                0.5,
                f"{report.summary}",
            )
        )
        checks.extend(report.checks)
    return checks


def run_suite(name: str):
    if name not in SUITES:
        raise ValueError(f"不支援的驗證套件: {name}。目前只支援 {', '.join(SUITES)}")
    runners = {
        "specfun": specfun_suite,
        "scattering": scattering_suite,
        "oracle": oracle_suite,
        "spectra": spectra_suite,
        "tables": tables_suite,
    }
    if name == "all":
        return [check for runner in runners.values() for check in runner()]
    return runners[name]()
