# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Tests for cf_surface."""

import numpy as np
import pandas
import pytest
from scipy import integrate

from cfhelium import cf_surface
from cfhelium.cf_exceptions import InvalidSpecError, QuadratureError
from cfhelium.cf_orbitals import OrbitalKind, OrbitalSpec, PairAnsatz, Symmetry, h0_expectation
from cfhelium.cf_surface import PGrid
from cfhelium.cf_utils import grid_integral
from cfhelium.tests.conftest import hydrogenic_pair


def _log_derivative_1s1s(zeta, p):
    poly = (2.0 / 3.0) * zeta ** 5 * p ** 4 + zeta ** 4 * p ** 3 + 0.5 * zeta ** 3 * p ** 2
    dpoly = (8.0 / 3.0) * zeta ** 5 * p ** 3 + 3.0 * zeta ** 4 * p ** 2 + zeta ** 3 * p
    return -2.0 * zeta + dpoly / poly


def test_grid():
    grid = PGrid.for_charge(2, 20.0, 200)
    assert grid.p_max == 10.0
    assert grid.dp == pytest.approx(0.05)
    assert grid.points[0] == pytest.approx(0.05)
    assert grid.points[-1] == pytest.approx(10.0)
    assert len(grid.points) == 200
    with pytest.raises(InvalidSpecError):
        PGrid(0.0, 100)
    with pytest.raises(InvalidSpecError):
        PGrid(10.0, 1)


def test_oracle_normalization_and_scaling():
    total = integrate.quad(lambda p: cf_surface.s_oracle_1s1s(1.3, p), 0, np.inf)[0]
    assert total * cf_surface.SURFACE_DENSITY_NORM == pytest.approx(1.0, rel=1e-10)
    p = np.linspace(0.05, 6.0, 13)
    for zeta in (0.7, 2.0, 6.0):
        np.testing.assert_allclose(
            cf_surface.s_oracle_1s1s(zeta, p), zeta * cf_surface.s_oracle_1s1s(1.0, zeta * p), rtol=1e-13
        )
    with pytest.raises(InvalidSpecError):
        cf_surface.s_oracle_1s1s(0.0, 1.0)


@pytest.mark.parametrize("zeta", [1.0, 2.0])
def test_generic_reduction_matches_oracle(zeta):
    density = cf_surface.pair_integrands(hydrogenic_pair(2, zeta))["density"]
    for p in np.array([0.2, 1.0, 3.0]) / zeta:
        value = cf_surface.reduce_surface_integral(density, p, r_max=40.0 / zeta)
        assert value == pytest.approx(cf_surface.s_oracle_1s1s(zeta, p), rel=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("zeta", [0.7, 1.0, 2.0, 6.0])
def test_generic_reduction_matches_oracle_twenty_points(zeta):
    density = cf_surface.pair_integrands(hydrogenic_pair(2, zeta))["density"]
    for p in np.linspace(0.1, 8.0, 20) / zeta:
        value = cf_surface.reduce_surface_integral(density, p, r_max=40.0 / zeta)
        assert value == pytest.approx(cf_surface.s_oracle_1s1s(zeta, p), rel=1e-9)


def test_reduce_surface_integral_errors():
    density = cf_surface.pair_integrands(hydrogenic_pair(1))["density"]
    with pytest.raises(InvalidSpecError):
        cf_surface.reduce_surface_integral(density, 0.0)
    with pytest.raises(QuadratureError) as err:
        cf_surface.reduce_surface_integral(density, 1.0, rtol=1e-300, panels=2, max_panels=4)
    assert err.value.panels == 4


def test_hydrogenic_coefficients(helium_table):
    table = helium_table
    p = table.grid.points
    np.testing.assert_allclose(
        table.s * table.s_norm, cf_surface.s_oracle_1s1s(2.0, p) * cf_surface.SURFACE_DENSITY_NORM, rtol=1e-8
    )
    assert grid_integral(table.s, table.grid.dp) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_array_equal(table.t, 2.0)
    np.testing.assert_allclose(table.h, -4.0, rtol=1e-9)
    assert table.e0 == pytest.approx(-4.0, rel=1e-13)
    assert table.zeta_min == 2.0


def test_drift_is_log_derivative_of_density(helium_table):
    p = helium_table.grid.points
    np.testing.assert_allclose(helium_table.u, _log_derivative_1s1s(2.0, p), rtol=1e-7, atol=1e-9)


def test_drift_and_local_energy_match_generic_path():
    ansatz = PairAnsatz(
        OrbitalSpec(OrbitalKind.ONE_S, 1.8), OrbitalSpec(OrbitalKind.TWO_S, 1.1), Symmetry.TRIPLET, 2
    )
    grid = PGrid(4.0, 8)
    table = cf_surface.compute_coefficients(ansatz, grid)
    integrands = cf_surface.pair_integrands(ansatz)
    for i in (1, 4, 7):
        p = grid.points[i]

        def reduce(f):
            return cf_surface.reduce_surface_integral(f, p, r_max=60.0)

        density = reduce(integrands["density"])
        drift = reduce(integrands["drift"])
        local = reduce(integrands["kinetic"]) + reduce(integrands["attraction"])
        assert table.u[i] == pytest.approx(drift / density, rel=1e-7, abs=1e-8)
        assert table.h[i] == pytest.approx(local / density, rel=1e-7, abs=1e-8)
        assert table.s[i] * table.s_norm == pytest.approx(density * cf_surface.SURFACE_DENSITY_NORM, rel=1e-8)


def test_density_scaling_in_charge():
    grid1, grid3 = PGrid(10.0, 50), PGrid(10.0 / 3.0, 50)
    s1 = cf_surface.compute_coefficients(hydrogenic_pair(1), grid1)
    s3 = cf_surface.compute_coefficients(hydrogenic_pair(3), grid3)
    np.testing.assert_allclose(s3.s, 3.0 * s1.s, rtol=1e-8)


_MIXED_PAIRS = [
    PairAnsatz(OrbitalSpec(OrbitalKind.ONE_S, 1.7), OrbitalSpec(OrbitalKind.ONE_S, 1.5), Symmetry.SINGLET, 2),
    PairAnsatz(OrbitalSpec(OrbitalKind.ONE_S, 2.0), OrbitalSpec(OrbitalKind.TWO_S, 1.6), Symmetry.TRIPLET, 2),
]


@pytest.mark.parametrize("ansatz", _MIXED_PAIRS, ids=["1s1s-unequal", "1s2s"])
def test_orbital_swap_invariance(ansatz):
    grid = PGrid.for_charge(2, 20.0, 60)
    table = cf_surface.compute_coefficients(ansatz, grid)
    swapped = cf_surface.compute_coefficients(ansatz.swapped(), grid)
    for name in ("s", "u", "h"):
        np.testing.assert_allclose(getattr(swapped, name), getattr(table, name), rtol=1e-10, atol=1e-12)
    assert swapped.s_norm == pytest.approx(table.s_norm, rel=1e-10)


@pytest.mark.parametrize("ansatz", _MIXED_PAIRS, ids=["1s1s-unequal", "1s2s"])
def test_density_normalization(ansatz):
    table = cf_surface.compute_coefficients(ansatz, PGrid.for_charge(2))
    assert grid_integral(table.s, table.grid.dp) == pytest.approx(1.0, abs=1e-12)
    # the pair function is normalized, so only the grid truncation is lost
    assert table.s_norm == pytest.approx(1.0, abs=2e-3)
    assert np.all(table.s > 0.0)


def test_with_e0(helium_table):
    assert helium_table.with_e0("tail").e0 == pytest.approx(helium_table.h[-1])
    assert helium_table.with_e0(-3.25).e0 == -3.25
    assert helium_table.with_e0("h0").e0 == pytest.approx(h0_expectation(helium_table.ansatz))
    with pytest.raises(InvalidSpecError):
        helium_table.with_e0("hf")


def test_table_is_read_only(helium_table):
    with pytest.raises(ValueError):
        helium_table.s[0] = 1.0


def test_table_shape_validation():
    grid = PGrid(1.0, 10)
    with pytest.raises(InvalidSpecError, match="shape"):
        cf_surface.CoefficientTable(grid, np.ones(9), np.ones(10), np.ones(10), np.ones(10), 0.0)


def test_quadrature_error():
    with pytest.raises(QuadratureError) as err:
        cf_surface.compute_coefficients(hydrogenic_pair(2), PGrid(2.0, 10), rtol=1e-300, max_panels=8)
    assert err.value.panels == 16


def test_write_csv(helium_table, tmp_path):
    filename = helium_table.write_csv(tmp_path / "coefficients.csv")
    df = pandas.read_csv(filename)
    assert list(df.columns) == ["p", "s", "t", "u", "h"]
    assert len(df) == helium_table.grid.n
