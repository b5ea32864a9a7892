# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Hydrogenic radial orbitals and the two-electron pair function built from them.

Every orbital is stored as a polynomial times an exponential, sum_k c_k r^k exp(-a r),
so derivatives, products and radial moments are exact coefficient operations.
All quantities are in plain atomic units (Bohr, Hartree).
"""

import dataclasses
import enum

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import gamma

from .cf_exceptions import InvalidSpecError


class OrbitalKind(enum.Enum):
    """Radial orbital type."""

    ONE_S = "1s"
    TWO_S = "2s"


class Symmetry(enum.Enum):
    """Exchange symmetry of the pair function; the value is the exchange sign."""

    SINGLET = 1
    TRIPLET = -1


def poly_exp_derivative(coef, alpha):
    """
    Return the coefficients of d/dr [sum_k c_k r^k exp(-alpha r)].

    The result keeps the same exponent and the same length.
    """
    coef = np.asarray(coef, dtype=float)
    shifted = np.zeros_like(coef)
    shifted[:-1] = np.arange(1, len(coef)) * coef[1:]
    return shifted - alpha * coef


def poly_exp_value(coef, alpha, r):
    """Evaluate sum_k c_k r^k exp(-alpha r)."""
    return npoly.polyval(r, coef) * np.exp(-alpha * r)


def radial_moment(coef_a, alpha_a, coef_b, alpha_b, power):
    """
    Return the integral of a(r) b(r) r^power over 0 < r < infinity.

    Parameters
    ----------
    coef_a, coef_b : array_like
        Polynomial coefficients of the two poly-exponential functions.
    alpha_a, alpha_b : float
        Their exponents.
    power : int
        Extra power of r (2 for the radial overlap).

    """
    prod = npoly.polymul(coef_a, coef_b)
    beta = alpha_a + alpha_b
    orders = np.arange(len(prod)) + power + 1
    return float(np.sum(prod * gamma(orders) / beta ** orders))


@dataclasses.dataclass(frozen=True)
class OrbitalSpec:
    """
    Normalized hydrogenic s orbital with effective charge zeta.

    Parameters
    ----------
    kind : OrbitalKind
        ONE_S: 2 zeta^{3/2} exp(-zeta r); TWO_S: zeta^{3/2} (1 - zeta r/2) exp(-zeta r/2) / sqrt(2)
    zeta : float
        Effective nuclear charge, positive.

    """

    kind: OrbitalKind
    zeta: float

    def __post_init__(self):
        if not isinstance(self.kind, OrbitalKind):
            try:
                object.__setattr__(self, "kind", OrbitalKind(self.kind))
            except ValueError:
                raise InvalidSpecError(f"Unknown orbital kind {self.kind!r}")
        if not np.isfinite(self.zeta) or self.zeta <= 0.0:
            raise InvalidSpecError(f"Orbital charge must be positive, not {self.zeta}")
        object.__setattr__(self, "zeta", float(self.zeta))

    @property
    def decay(self):
        """Exponent of the orbital's exponential factor."""
        if self.kind is OrbitalKind.ONE_S:
            return self.zeta
        return self.zeta / 2.0

    @property
    def coefficients(self):
        """Polynomial coefficients c_k of the orbital."""
        if self.kind is OrbitalKind.ONE_S:
            return np.array([2.0 * self.zeta ** 1.5])
        c = self.zeta ** 1.5 / np.sqrt(2.0)
        return np.array([c, -c * self.zeta / 2.0])

    def derivative_coefficients(self, order):
        """Polynomial coefficients of the order-th radial derivative (same exponent)."""
        coef = self.coefficients
        for _ in range(order):
            coef = poly_exp_derivative(coef, self.decay)
        return coef


def eval_orbital(spec, r):
    """
    Evaluate an orbital and its first two radial derivatives.

    Parameters
    ----------
    spec : OrbitalSpec
        Orbital to evaluate.
    r : float or array_like
        Radii, all >= 0.

    Returns
    -------
    tuple
        (value, first derivative, second derivative), same shape as r.

    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise InvalidSpecError("Orbital radius must be non-negative.")
    values = tuple(
        poly_exp_value(spec.derivative_coefficients(d), spec.decay, r) for d in range(3)
    )
    if values[0].ndim == 0:
        return tuple(float(v) for v in values)
    return values


def overlap(a, b):
    """Radial overlap <a|b> of two orbitals."""
    return radial_moment(a.coefficients, a.decay, b.coefficients, b.decay, 2)


def one_electron_integral(a, b, Z):
    """
    Matrix element <a| -1/2 nabla^2 - Z/r |b> for two s orbitals.

    Uses nabla^2 b = b'' + 2 b'/r, so the kinetic part is
    -1/2 int a b'' r^2 dr - int a b' r dr.
    """
    d1 = b.derivative_coefficients(1)
    d2 = b.derivative_coefficients(2)
    ca, cb = a.coefficients, b.coefficients
    kinetic = -0.5 * radial_moment(ca, a.decay, d2, b.decay, 2) - radial_moment(ca, a.decay, d1, b.decay, 1)
    attraction = -Z * radial_moment(ca, a.decay, cb, b.decay, 1)
    return kinetic + attraction


@dataclasses.dataclass(frozen=True)
class PairAnsatz:
    """
    Symmetrized (singlet) or antisymmetrized (triplet) product of two orbitals.

    phi(r1, r2) = N [a(r1) b(r2) +/- b(r1) a(r2)],  N = 1 / sqrt(2 (1 +/- S^2))

    Parameters
    ----------
    orb1, orb2 : OrbitalSpec
        The two orbitals.
    symmetry : Symmetry
        SINGLET (+) or TRIPLET (-).
    nuclear_charge : int
        Physical nuclear charge Z.

    """

    orb1: OrbitalSpec
    orb2: OrbitalSpec
    symmetry: Symmetry
    nuclear_charge: int

    def __post_init__(self):
        if not isinstance(self.symmetry, Symmetry):
            raise InvalidSpecError(f"Unknown symmetry {self.symmetry!r}")
        if int(self.nuclear_charge) != self.nuclear_charge or self.nuclear_charge < 1:
            raise InvalidSpecError(f"Nuclear charge must be a positive integer, not {self.nuclear_charge}")
        object.__setattr__(self, "nuclear_charge", int(self.nuclear_charge))
        if self.symmetry is Symmetry.TRIPLET:
            if self.orb1 == self.orb2:
                raise InvalidSpecError("A triplet of two identical orbitals vanishes identically.")
            if 1.0 - self.overlap ** 2 < 1e-12:
                raise InvalidSpecError("Triplet orbitals are numerically parallel.")

    @property
    def sign(self):
        return self.symmetry.value

    @property
    def overlap(self):
        return overlap(self.orb1, self.orb2)

    @property
    def norm(self):
        return 1.0 / np.sqrt(2.0 * (1.0 + self.sign * self.overlap ** 2))

    @property
    def decay_min(self):
        """Slowest orbital decay exponent."""
        return min(self.orb1.decay, self.orb2.decay)

    def swapped(self):
        """Return the ansatz with the orbital order exchanged."""
        return dataclasses.replace(self, orb1=self.orb2, orb2=self.orb1)


def pair_value_and_partials(ansatz, r1, r2):
    """
    Evaluate the pair function and its radial partial derivatives.

    Parameters
    ----------
    ansatz : PairAnsatz
        Pair function.
    r1, r2 : float or array_like
        Electron radii (broadcast together).

    Returns
    -------
    tuple
        (phi, dphi/dr1, dphi/dr2, d2phi/dr1^2, d2phi/dr2^2)

    """
    a1 = eval_orbital(ansatz.orb1, r1)
    b1 = eval_orbital(ansatz.orb2, r1)
    a2 = eval_orbital(ansatz.orb1, r2)
    b2 = eval_orbital(ansatz.orb2, r2)
    n, sg = ansatz.norm, ansatz.sign
    phi = n * (a1[0] * b2[0] + sg * b1[0] * a2[0])
    d_r1 = n * (a1[1] * b2[0] + sg * b1[1] * a2[0])
    d_r2 = n * (a1[0] * b2[1] + sg * b1[0] * a2[1])
    dd_r1 = n * (a1[2] * b2[0] + sg * b1[2] * a2[0])
    dd_r2 = n * (a1[0] * b2[2] + sg * b1[0] * a2[2])
    return phi, d_r1, d_r2, dd_r1, dd_r2


def h0_expectation(ansatz):
    """
    Return <phi|H0|phi> in Hartree, H0 = -1/2 nabla_1^2 - 1/2 nabla_2^2 - Z/r1 - Z/r2.

    With one-electron integrals h_ab this is (h_aa + h_bb +/- 2 S h_ab) / (1 +/- S^2).
    """
    a, b, Z = ansatz.orb1, ansatz.orb2, ansatz.nuclear_charge
    s = ansatz.overlap
    sg = ansatz.sign
    h_aa = one_electron_integral(a, a, Z)
    h_bb = one_electron_integral(b, b, Z)
    h_ab = one_electron_integral(a, b, Z)
    return (h_aa + h_bb + sg * 2.0 * s * h_ab) / (1.0 + sg * s ** 2)
