import mpmath
import pytest

from kgscatter import validation
from kgscatter.utils import CheckResult


@pytest.mark.parametrize("z", [complex(0.5, 1.0), complex(-7.5, 3.0), complex(12.0, -15.0)])
def test_weierstrass_reference_matches_mpmath(z):
    ref = complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))
    assert abs(validation.weierstrass_log_gamma(z) - ref) / max(1.0, abs(ref)) < 1e-11


def test_specfun_suite_passes():
    checks = validation.specfun_suite()
    assert all(isinstance(c, CheckResult) for c in checks)
    assert [c.name for c in checks if not c.passed] == []


def test_structural_and_free_identity_checks_pass():
    checks = validation.structural_checks() + validation.free_identity_checks()[:1]
    assert [c.name for c in checks if not c.passed] == []


def test_wavefunction_solves_the_radial_equation():
    assert [c.name for c in validation.wavefunction_checks() if not c.passed] == []


def test_spectral_limits():
    checks = validation.coulomb_limit_checks() + validation.mass_limit_checks()
    assert [c.name for c in checks if not c.passed] == []


def test_unknown_suite():
    with pytest.raises(ValueError):
        validation.run_suite("everything")


def _by_name(checks):
    return {c.name: c for c in checks}


def test_oracle_suite_agrees_with_analytic_phases():
    checks = _by_name(validation.oracle_suite())
    agreement = checks["oracle_phase_agreement"]
    assert agreement.detail == "15 cases"
    assert agreement.passed
    assert agreement.measured < 1e-3


def test_shooting_checks_match_closed_form():
    checks = _by_name(validation.shooting_checks())
    assert checks["closed_form_vs_shooting"].passed
    assert checks["closed_form_vs_shooting"].measured < 1e-6
