# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Sampling of constant interaction potential surfaces.

A surface S(p) is the set of particle configurations with sum_{i<j} 1/r_ij = 1/p.
Two particles lie on it when particle 2 is on the sphere of radius p around
particle 1.  For three particles 1/p is split as 1/r12 + 1/q, the pair (1, 2) is
placed at separation r12, and particle 3 on the circle where the spheres of radius
r13 and r23 around them intersect, with 1/q = 1/r13 + 1/r23.  Surfaces of different
p map onto each other by scaling all coordinates.

The split of 1/p draws 1/q uniformly on (0, 1/p) and the split of 1/q uniformly;
this choice of measure is arbitrary and the returned weights only account for the
sphere and circle sizes.
"""

import dataclasses
import itertools
import json

import numpy as np
from scipy.spatial.distance import pdist, squareform

from . import logger
from .cf_exceptions import DegenerateConfigurationError, InvalidSpecError
from .cf_orbitals import OrbitalKind, OrbitalSpec, eval_orbital

SUPPORTED_N = (2, 3)
MAX_REJECTION_FACTOR = 1000


@dataclasses.dataclass(frozen=True, eq=False)
class ParticleConfiguration:
    """
    Positions of n particles.

    Parameters
    ----------
    positions : ndarray
        (n, 3) Cartesian coordinates (Bohr).
    weight : float
        Importance weight attached by the sampler.

    """

    positions: np.ndarray
    weight: float = 1.0

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 3 or positions.shape[0] < 2:
            raise InvalidSpecError(f"Positions must have shape (n>=2, 3), not {positions.shape}")
        positions.setflags(write=False)
        object.__setattr__(self, "positions", positions)

    @property
    def n(self):
        return self.positions.shape[0]

    def distances(self):
        """Square matrix of pairwise distances."""
        return squareform(pdist(self.positions))

    def to_dict(self):
        return {
            "n": self.n,
            "positions": self.positions.tolist(),
            "weight": self.weight,
            "potential": potential(self),
        }


@dataclasses.dataclass(frozen=True)
class SurfaceSpec:
    """Surface of n particles with sum_{i<j} 1/r_ij = 1/p."""

    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidSpecError(f"Number of particles must be an integer >= 2, not {self.n}")
        if not self.p > 0.0:
            raise InvalidSpecError(f"Surface parameter must be positive, not {self.p}")


@dataclasses.dataclass(frozen=True, eq=False)
class SurfaceSample:
    """Configurations drawn on one surface, with the number of rejected draws."""

    spec: SurfaceSpec
    configurations: tuple
    attempts: int

    def __len__(self):
        return len(self.configurations)

    def __iter__(self):
        return iter(self.configurations)

    def __getitem__(self, index):
        return self.configurations[index]

    @property
    def weights(self):
        return np.array([c.weight for c in self.configurations])

    @property
    def rejection_rate(self):
        return 1.0 - len(self.configurations) / self.attempts if self.attempts else 0.0

    def to_json_lines(self):
        """One JSON object per configuration."""
        return "".join(json.dumps(c.to_dict()) + "\n" for c in self.configurations)

    def write_json_lines(self, filename):
        with open(filename, "w", encoding="utf-8") as fp:
            fp.write(self.to_json_lines())
        return filename


def potential(config):
    """
    Return sum_{i<j} 1/r_ij.

    Raises
    ------
    DegenerateConfigurationError
        If two particles coincide.

    """
    d = pdist(config.positions)
    if np.any(d == 0.0):
        pairs = [pair for pair, dist in zip(itertools.combinations(range(config.n), 2), d) if dist == 0.0]
        raise DegenerateConfigurationError(pairs)
    return float(np.sum(1.0 / d))


def particle_potentials(config):
    """Return sum_{i != k} 1/r_ik for every particle k."""
    d = config.distances()
    off = ~np.eye(config.n, dtype=bool)
    if np.any(d[off] == 0.0):
        potential(config)
    inv = np.zeros_like(d)
    inv[off] = 1.0 / d[off]
    return inv.sum(axis=1)


def scale_to(config, p_target):
    """Scale a configuration onto the surface S(p_target)."""
    if not p_target > 0.0:
        raise InvalidSpecError(f"Surface parameter must be positive, not {p_target}")
    factor = p_target * potential(config)
    return dataclasses.replace(config, positions=config.positions * factor)


def order_particles(config):
    """Renumber particles by increasing particle potential."""
    order = np.argsort(particle_potentials(config), kind="stable")
    return dataclasses.replace(config, positions=config.positions[order])


def _unit_vectors(rng, count):
    v = rng.standard_normal((count, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def _in_ball(rng, radius):
    direction = _unit_vectors(rng, 1)[0]
    return direction * radius * rng.random() ** (1.0 / 3.0)


def _perpendicular_basis(axis):
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e2 = np.cross(axis, helper)
    e2 /= np.linalg.norm(e2)
    return e2, np.cross(axis, e2)


def _two_particles(rng, p, radius):
    first = _in_ball(rng, radius)
    second = first + p * _unit_vectors(rng, 1)[0]
    return ParticleConfiguration(np.array([first, second]), weight=4.0 * np.pi * p ** 2)


def _three_particles(rng, p, radius):
    """Return a configuration, or None when the drawn distances admit no triangle."""
    inv_q = rng.uniform(0.0, 1.0 / p)
    if inv_q == 0.0:
        return None
    split = rng.random()
    r12 = 1.0 / (1.0 / p - inv_q)
    r13 = 1.0 / (split * inv_q) if split > 0.0 else np.inf
    r23 = 1.0 / ((1.0 - split) * inv_q) if split < 1.0 else np.inf
    if not (r12 < r13 + r23 and r13 < r12 + r23 and r23 < r12 + r13):
        return None
    first = _in_ball(rng, radius)
    axis = _unit_vectors(rng, 1)[0]
    second = first + r12 * axis
    along = (r13 ** 2 - r23 ** 2 + r12 ** 2) / (2.0 * r12)
    rho_squared = r13 ** 2 - along ** 2
    if not rho_squared > 0.0:
        return None
    rho = np.sqrt(rho_squared)
    e2, e3 = _perpendicular_basis(axis)
    theta = rng.uniform(0.0, 2.0 * np.pi)
    third = first + along * axis + rho * (np.cos(theta) * e2 + np.sin(theta) * e3)
    weight = 4.0 * np.pi * r12 ** 2 * 2.0 * np.pi * rho
    return ParticleConfiguration(np.array([first, second, third]), weight=weight)


def sample_surface(spec, count, seed=None, radius=1.0):
    """
    Draw configurations on a constant interaction potential surface.

    Parameters
    ----------
    spec : SurfaceSpec
        Surface to sample, n in (2, 3).
    count : int
        Number of configurations.
    seed : int or None
        Seed of the numpy generator.
    radius : float
        Particle 1 is drawn uniformly in a ball of this radius around the origin.

    Returns
    -------
    SurfaceSample
        Configurations renumbered by increasing particle potential.

    """
    if spec.n not in SUPPORTED_N:
        raise InvalidSpecError(f"Surface sampling supports n in {SUPPORTED_N}, not {spec.n}")
    if int(count) != count or count < 1:
        raise InvalidSpecError(f"Sample count must be a positive integer, not {count}")
    if not radius > 0.0:
        raise InvalidSpecError(f"Ball radius must be positive, not {radius}")
    rng = np.random.default_rng(seed)
    draw = _two_particles if spec.n == 2 else _three_particles
    configurations = []
    attempts = 0
    while len(configurations) < count:
        if attempts >= MAX_REJECTION_FACTOR * count:
            raise InvalidSpecError(f"Too many rejected draws ({attempts}) for {spec}")
        attempts += 1
        config = draw(rng, spec.p, radius)
        if config is not None:
            configurations.append(order_particles(config))
    sample = SurfaceSample(spec=spec, configurations=tuple(configurations), attempts=attempts)
    level = logger.warning if sample.rejection_rate > 0.5 else logger.debug
    level(f"Sampled {count} configurations on {spec}, rejection rate {sample.rejection_rate:.3f}")
    return sample


def estimate_surface_density_1s1s(zeta, p, count, seed=None, radius=None):
    """
    Monte-Carlo estimate of the r12 density of 1s(zeta)^2 at separation p.

    Two-particle surface samples with particle 1 uniform in a ball of volume V give
    P(p) = V <4 pi p^2 |psi(x1) psi(x2)|^2>, with psi = R(r) / sqrt(4 pi).

    Parameters
    ----------
    zeta : float
        Orbital charge.
    p : float
        Electron separation.
    count : int
        Number of samples.
    seed : int or None
        Generator seed.
    radius : float or None
        Ball radius, 8 / zeta by default.

    Returns
    -------
    tuple
        (estimate, standard error)

    """
    if radius is None:
        radius = 8.0 / zeta
    sample = sample_surface(SurfaceSpec(2, p), count, seed=seed, radius=radius)
    orbital = OrbitalSpec(OrbitalKind.ONE_S, zeta)
    positions = np.array([c.positions for c in sample])
    r = np.linalg.norm(positions, axis=2)
    radial = eval_orbital(orbital, r)[0]
    values = sample.weights * np.prod(radial ** 2, axis=1) / (16.0 * np.pi ** 2)
    volume = 4.0 / 3.0 * np.pi * radius ** 3
    estimate = volume * np.mean(values)
    stderr = volume * np.std(values, ddof=1) / np.sqrt(count)
    return float(estimate), float(stderr)
