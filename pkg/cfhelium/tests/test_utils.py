# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Tests for cf_utils."""

import logging

import numpy as np
import pytest

from cfhelium import cf_utils, logger
from cfhelium.cf_exceptions import UnknownIonError


def test_listify():
    assert cf_utils.listify(None) is None
    assert cf_utils.listify(None, None_as_list=True) == []
    assert cf_utils.listify("2-5") == [2, 3, 4, 5]
    assert cf_utils.listify("He, Li") == ["He", "Li"]
    assert cf_utils.listify("1,2,3") == [1, 2, 3]
    assert cf_utils.listify("H-,He") == ["H-", "He"]
    assert cf_utils.listify(4) == [4]
    assert cf_utils.listify((1, 2)) == [1, 2]
    assert cf_utils.listify("") == []


@pytest.mark.parametrize(
    "label, Z",
    [("He", 2), ("he", 2), ("H-", 1), ("H", 1), ("Li+", 3), ("Ne8+", 10), ("C4+", 6), (3, 3), ("7", 7)],
)
def test_parse_ion(label, Z):
    assert cf_utils.parse_ion(label) == Z


@pytest.mark.parametrize("label", ["Xx", "He+", 0, 11, "11", "Li2+"])
def test_parse_ion_unknown(label):
    with pytest.raises(UnknownIonError, match="valid ions are H-, He"):
        cf_utils.parse_ion(label)


def test_unknown_ion_is_value_error():
    with pytest.raises(ValueError):
        cf_utils.parse_ion("Xx")


def test_ion_label():
    assert [cf_utils.ion_label(z) for z in (1, 2, 3, 4, 10)] == ["H-", "He", "Li+", "Be2+", "Ne8+"]
    assert cf_utils.ion_label(11) == "Z=11"
    assert cf_utils.ion_label(0) == "Z=0"


def test_verbosity():
    assert cf_utils.parse_verbosity(None) == 1
    assert cf_utils.parse_verbosity("v") == 2
    assert cf_utils.parse_verbosity("vv") == 3
    assert cf_utils.parse_verbosity(2) == 2
    assert cf_utils.parse_verbosity("3") == 3
    with pytest.raises(ValueError, match="Invalid argument"):
        cf_utils.parse_verbosity("x")


def test_set_verbosity():
    try:
        assert cf_utils.set_verbosity(3) == logging.DEBUG
        assert logger.level == logging.DEBUG
        assert cf_utils.set_verbosity(0) == logging.ERROR
        assert cf_utils.set_verbosity(9) == logging.DEBUG
    finally:
        logger.setLevel(logging.WARNING)


def test_grid_integral():
    assert cf_utils.grid_integral(np.ones(4), 0.5) == pytest.approx(1.75)
    p = np.arange(1, 201) * 0.01
    assert cf_utils.grid_integral(p, 0.01) == pytest.approx(2.0, rel=1e-12)


def test_hartree_to_ev():
    assert float(cf_utils.hartree_to_ev(1.0)) == pytest.approx(27.211386, rel=1e-6)
    expected = [cf_utils.HARTREE_EV, 2 * cf_utils.HARTREE_EV]
    np.testing.assert_allclose(cf_utils.hartree_to_ev([1.0, 2.0]), expected)


def test_format_energy():
    assert cf_utils.format_energy(-2.879401234) == "-2.87940"
    assert cf_utils.format_energy(-2.879401234, 3) == "-2.879"
    assert cf_utils.format_energy(None) == "-"
    assert cf_utils.format_energy(float("nan")) == "-"


def test_general_table_handler():
    text = cf_utils.general_table_handler(["Ion", "E"], [["He", "-2.87940"]])
    assert "| Ion" in text
    assert "-2.87940" in text
    csv = cf_utils.general_table_handler(["Ion", "E"], [["He", "-2.87940"]], output_format="csv")
    assert csv == '"Ion","E"\n"He","-2.87940"\n'
