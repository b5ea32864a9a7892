# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Shared fixtures: default configuration and precomputed coefficient tables."""

import pytest

from cfhelium.cf import RunConfig
from cfhelium.cf_orbitals import OrbitalKind, OrbitalSpec, PairAnsatz, Symmetry
from cfhelium.cf_surface import PGrid, compute_coefficients


def hydrogenic_pair(Z, zeta=None):
    """Singlet 1s(zeta)^2 ansatz for nuclear charge Z (zeta defaults to Z)."""
    orbital = OrbitalSpec(OrbitalKind.ONE_S, float(Z if zeta is None else zeta))
    return PairAnsatz(orbital, orbital, Symmetry.SINGLET, Z)


@pytest.fixture(scope="session")
def config():
    return RunConfig()


@pytest.fixture(scope="session")
def helium_table():
    """1s(2)^2 coefficients for helium on the default grid."""
    return compute_coefficients(hydrogenic_pair(2), PGrid.for_charge(2))


@pytest.fixture(scope="session")
def hydrogen_table():
    """1s(1)^2 coefficients for H- on the default grid."""
    return compute_coefficients(hydrogenic_pair(1), PGrid.for_charge(1))
