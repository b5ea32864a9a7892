# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Tests for configuration handling in cf."""

import json
import os

import pytest

from cfhelium import cf
from cfhelium.cf_exceptions import InvalidSpecError
from cfhelium.data import DATA_PATH


def test_defaults():
    config = cf.RunConfig()
    assert config.n == 200
    assert config.p_max_times_z == 20.0
    assert config.quadrature_tol == 1e-10
    assert config.bc_tol == 1e-10
    assert config.optimizer_zeta_tol == 1e-5
    assert config.e0_mode == "h0"
    assert config.z_range == (1, 10)
    assert config.p_max(2) == 10.0


@pytest.mark.parametrize(
    "changes",
    [
        {"n": 49},
        {"quadrature_tol": 0.0},
        {"bc_tol": -1e-10},
        {"e0_mode": "hf"},
        {"e0_mode": True},
        {"format": "xml"},
        {"workers": 0},
        {"z_range": (3, 2)},
        {"p_max_times_z": -1.0},
    ],
)
def test_invalid(changes):
    with pytest.raises(InvalidSpecError):
        cf.RunConfig(**changes)


def test_replace_and_numeric_e0():
    config = cf.RunConfig().replace(e0_mode=-3.5, n=400)
    assert config.e0_mode == -3.5
    assert config.n == 400
    assert cf.RunConfig().n == 200


def test_check_charge():
    config = cf.RunConfig(z_range=(2, 4))
    config.check_charge(3)
    with pytest.raises(InvalidSpecError, match="outside configured range"):
        config.check_charge(5)


def test_dict_round_trip():
    config = cf.RunConfig(n=80, e0_mode="tail", z_range=(1, 3), format="json", interaction=False)
    assert cf.RunConfig.from_dict(config.to_dict()) == config


def test_from_dict_unknown_keys():
    with pytest.raises(InvalidSpecError, match="Unknown key"):
        cf.RunConfig.from_dict({"colour": "blue"})
    with pytest.raises(InvalidSpecError, match="grid.width"):
        cf.RunConfig.from_dict({"grid": {"width": 3}})


def test_packaged_config_matches_defaults():
    with open(os.path.join(DATA_PATH, "cf_config.json")) as fp:
        packaged = json.load(fp)
    assert cf.RunConfig.from_dict(packaged) == cf.RunConfig()


def test_read_config(tmp_path):
    path = tmp_path / "my_config.json"
    path.write_text(json.dumps({"grid": {"n": 120}, "e0_mode": 2.5}))
    config = cf.read_config(str(path))
    assert config.n == 120
    assert config.e0_mode == 2.5
    assert config.p_max_times_z == 20.0


def test_read_config_errors(tmp_path):
    with pytest.raises(InvalidSpecError, match="not found"):
        cf.read_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidSpecError, match="Cannot parse"):
        cf.read_config(str(bad))


def test_file_finder(tmp_path):
    assert cf.file_finder(None) is None
    assert cf.file_finder("table_reference.json") == os.path.join(DATA_PATH, "table_reference.json")
    assert cf.file_finder("no_such_file.json") is None
    path = tmp_path / "x.json"
    path.write_text("{}")
    assert cf.file_finder(str(path)) == str(path)


def test_argument_parser():
    parser = cf.get_cf_argument_parser()
    args = parser.parse_args(["--config", "other.json"])
    assert args.cf_config_path == "other.json"
    assert parser.parse_args([]).cf_config_path is None
