# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Tests for cf_sampler."""

import json

import numpy as np
import pytest

from cfhelium import cf_sampler as cfs
from cfhelium.cf_exceptions import DegenerateConfigurationError, InvalidSpecError
from cfhelium.cf_sampler import ParticleConfiguration, SurfaceSpec
from cfhelium.cf_surface import SURFACE_DENSITY_NORM, s_oracle_1s1s


def test_potential_two_particles():
    config = ParticleConfiguration([[0.0, 0.0, 0.0], [0.0, 0.0, 2.0]])
    assert cfs.potential(config) == 0.5


def test_potential_equilateral():
    config = ParticleConfiguration([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, np.sqrt(3.0) / 2.0, 0.0]])
    assert cfs.potential(config) == pytest.approx(3.0, rel=1e-15)


def test_potential_degenerate():
    config = ParticleConfiguration([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    with pytest.raises(DegenerateConfigurationError) as excinfo:
        cfs.potential(config)
    assert excinfo.value.pairs == [(0, 1)]
    with pytest.raises(DegenerateConfigurationError):
        cfs.particle_potentials(config)


@pytest.mark.parametrize("positions", [[[0.0, 0.0, 0.0]], [[0.0, 0.0], [1.0, 1.0]]])
def test_bad_positions(positions):
    with pytest.raises(InvalidSpecError):
        ParticleConfiguration(positions)


@pytest.mark.parametrize("kwargs", [{"n": 1, "p": 1.0}, {"n": 2, "p": 0.0}, {"n": 2.5, "p": 1.0}])
def test_bad_surface_spec(kwargs):
    with pytest.raises(InvalidSpecError):
        SurfaceSpec(**kwargs)


def test_scale_to():
    rng = np.random.default_rng(3)
    for _ in range(100):
        config = ParticleConfiguration(rng.normal(size=(3, 3)))
        scaled = cfs.scale_to(config, 0.7)
        assert cfs.potential(scaled) == pytest.approx(1.0 / 0.7, rel=1e-13)
        twice = cfs.scale_to(cfs.scale_to(config, 2.0), 0.7)
        np.testing.assert_allclose(twice.positions, scaled.positions, rtol=1e-14, atol=1e-15)


def test_scale_to_bad_target():
    config = ParticleConfiguration([[0.0, 0.0, 0.0], [0.0, 0.0, 2.0]])
    with pytest.raises(InvalidSpecError):
        cfs.scale_to(config, -1.0)


def test_order_particles():
    config = ParticleConfiguration([[0.0, 0.0, 0.0], [0.1, 0.0, 0.0], [5.0, 0.0, 0.0]])
    ordered = cfs.order_particles(config)
    np.testing.assert_array_equal(ordered.positions[0], [5.0, 0.0, 0.0])
    assert np.all(np.diff(cfs.particle_potentials(ordered)) >= 0.0)
    assert cfs.potential(ordered) == pytest.approx(cfs.potential(config), rel=1e-15)


def test_two_particle_surface():
    sample = cfs.sample_surface(SurfaceSpec(2, 1.5), 200, seed=1)
    assert len(sample) == 200
    assert sample.rejection_rate == 0.0
    for config in sample:
        assert config.distances()[0, 1] == pytest.approx(1.5, rel=1e-14)
        assert np.linalg.norm(config.positions, axis=1).min() <= 1.0
    np.testing.assert_allclose(sample.weights, 4.0 * np.pi * 1.5 ** 2)


def test_three_particle_surface():
    sample = cfs.sample_surface(SurfaceSpec(3, 0.8), 10000, seed=5)
    assert len(sample) == 10000
    assert sample.attempts >= 10000
    for config in sample:
        assert abs(cfs.potential(config) - 1.25) < 1e-12
        assert np.all(np.diff(cfs.particle_potentials(config)) >= 0.0)
    assert np.all(sample.weights > 0.0)


def test_sample_is_seeded():
    spec = SurfaceSpec(3, 1.0)
    first = cfs.sample_surface(spec, 20, seed=11)
    second = cfs.sample_surface(spec, 20, seed=11)
    other = cfs.sample_surface(spec, 20, seed=12)
    for a, b in zip(first, second):
        np.testing.assert_array_equal(a.positions, b.positions)
    assert first.to_json_lines() == second.to_json_lines()
    assert not np.array_equal(first[0].positions, other[0].positions)


@pytest.mark.parametrize(
    "spec,count,radius",
    [(SurfaceSpec(4, 1.0), 5, 1.0), (SurfaceSpec(2, 1.0), 0, 1.0), (SurfaceSpec(2, 1.0), 5, 0.0)],
)
def test_sample_rejects(spec, count, radius):
    with pytest.raises(InvalidSpecError):
        cfs.sample_surface(spec, count, radius=radius)


def test_json_lines(tmp_path):
    sample = cfs.sample_surface(SurfaceSpec(3, 1.0), 5, seed=7)
    filename = str(tmp_path / "sample.jsonl")
    sample.write_json_lines(filename)
    with open(filename) as fp:
        lines = fp.read().splitlines()
    assert len(lines) == 5
    for line in lines:
        record = json.loads(line)
        assert record["n"] == 3
        assert len(record["positions"]) == 3
        assert record["weight"] > 0.0
        assert record["potential"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("p", [0.5, 1.5])
def test_monte_carlo_density_matches_quadrature(p):
    zeta = 2.0
    estimate, stderr = cfs.estimate_surface_density_1s1s(zeta, p, 50000, seed=2)
    expected = s_oracle_1s1s(zeta, np.array([p]))[0] * SURFACE_DENSITY_NORM
    assert stderr < 0.2 * estimate
    assert abs(estimate - expected) < 5.0 * stderr
