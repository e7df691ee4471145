import math

import pytest

from kgscatter.errors import DomainError
from kgscatter.model import PotentialSpec
from kgscatter.spectra import (
    is_physical_pole,
    nr_energy,
    nr_levels,
    rel_pole_residual,
    solve_rel_levels,
)


@pytest.fixture()
def hellmann():
    return PotentialSpec("hellmann", 2.0, 1.0, 0.2)


@pytest.mark.parametrize("n, l, expected", [(0, 0, -0.805), (1, 0, -0.445), (0, 1, -0.38)])
def test_nr_hellmann_levels(hellmann, n, l, expected):
    assert nr_energy(hellmann, 1.0, 1.0, l, n) == pytest.approx(expected, abs=1e-12)


def test_nr_levels_flag_unphysical_poles(hellmann):
    levels = nr_levels(hellmann, 1.0, 1.0, 1, 1)
    assert [lv.n for lv in levels] == [0, 1]
    assert all(lv.residual == 0.0 for lv in levels)
    # n = 1, l = 1: Q + R = 8 < (n + λ)² = 9
    assert levels[0].suspect_redundant is False
    assert levels[1].suspect_redundant is True
    assert is_physical_pole(hellmann, 2.0, 1, 0)
    assert not is_physical_pole(hellmann, 2.0, 1, 1)


def test_nr_levels_for_constant_potential_are_suspect():
    spec = PotentialSpec("varshni", 1.0, 0.0, 0.2)
    assert all(lv.suspect_redundant for lv in nr_levels(spec, 1.0, 1.0, 0, 2))


@pytest.mark.parametrize("beta, bound", [(1e-3, 2e-3), (1e-4, 2e-4)])
def test_coulomb_limit(beta, bound):
    spec = PotentialSpec("hellmann", 1.0, 0.0, beta)
    assert abs(nr_energy(spec, 1.0, 1.0, 0, 0) + 0.5) < bound


def test_levels_depend_on_mass_and_hbar_through_coupling():
    spec = PotentialSpec("hellmann", 2.0, 1.0, 0.2)
    # μ = 4, ħ = 2 gives the same g = 2μ/ħ² as μ = ħ = 1
    assert nr_energy(spec, 4.0, 2.0, 0, 0) == pytest.approx(nr_energy(spec, 1.0, 1.0, 0, 0), abs=1e-14)
    assert nr_energy(spec, 2.0, 1.0, 0, 0) != pytest.approx(nr_energy(spec, 1.0, 1.0, 0, 0))


def test_rel_levels_match_quadratic_roots(hellmann):
    # l = 0, n = 0: with s = E + M the pole condition is 1.25 s² - 1.7 s + 0.01 = 0
    disc = math.sqrt(1.7**2 - 4.0 * 1.25 * 0.01)
    roots = sorted(((1.7 - disc) / 2.5 - 1.0, (1.7 + disc) / 2.5 - 1.0))
    levels = solve_rel_levels(hellmann, 1.0, 0, 0)
    assert [lv.E for lv in levels] == pytest.approx(roots, abs=1e-9)
    assert levels[0].suspect_redundant is True
    assert levels[1].suspect_redundant is False
    for level in levels:
        assert abs(level.residual) < 1e-9
        assert level.window[1] > level.E > level.window[0]


def test_rel_roots_satisfy_nonrelativistic_bridge(hellmann):
    for l in (0, 1):
        for level in solve_rel_levels(hellmann, 1.0, l, 1):
            mu = (level.E + 1.0) / 2.0
            assert level.E - 1.0 == pytest.approx(nr_energy(hellmann, mu, 1.0, l, level.n), abs=1e-8)


def test_rel_levels_empty_window_returns_nothing(hellmann):
    assert solve_rel_levels(hellmann, 1.0, 0, 0, window=(2.0, 3.0)) == []


def test_rel_levels_reject_reversed_window(hellmann):
    with pytest.raises(DomainError):
        solve_rel_levels(hellmann, 1.0, 0, 0, window=(1.0, -1.0))


def test_rel_pole_residual_sign_change(hellmann):
    assert rel_pole_residual(hellmann, 1.0, 0, 0, 0.0) < 0
    assert rel_pole_residual(hellmann, 1.0, 0, 0, 1.0) > 0
