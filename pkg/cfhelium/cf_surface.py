# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Averages of the pair function over surfaces of constant electron separation p.

For two electrons the surface integral reduces to

    4 pi p int_0^inf r1 dr1 int_{|r1-p|}^{r1+p} r2 dr2 f(r1, r2, p).

After multiplying by r1 r2 every integrand needed for s, u and h is a sum of
p^k r1^m r2^n exp(-e1 r1 - e2 r2) terms, so the r2 integral is done in closed form
with incomplete gamma functions and the r1 integral with composite Gauss-Legendre
panels, doubled until the relative change is below tolerance.
"""

import dataclasses

import numpy as np
from numpy.polynomial import polynomial as npoly
from numpy.polynomial.legendre import leggauss
from scipy.signal import convolve
from scipy.special import gamma, gammainc, gammaincc

from . import logger, DEFAULT_QUADRATURE_TOL
from .cf_exceptions import InvalidSpecError, QuadratureError
from .cf_orbitals import h0_expectation, pair_value_and_partials
from .cf_utils import grid_integral

# Ratio between the 4 pi p surface form and the r12 probability density.
SURFACE_DENSITY_NORM = 1.0 / (8.0 * np.pi)
GAUSS_ORDER = 16
# e-folds of the slowest exponential covered beyond r1 = p
DECAY_SPAN = 160.0
P_CHUNK = 64

_NODES, _WEIGHTS = leggauss(GAUSS_ORDER)


@dataclasses.dataclass(frozen=True)
class PGrid:
    """
    Uniform grid p_i = i dp, i = 1..n, dp = p_max / n (p = 0 excluded).

    Parameters
    ----------
    p_max : float
        Last grid point (Bohr).
    n : int
        Number of points.

    """

    p_max: float
    n: int

    def __post_init__(self):
        if not self.p_max > 0.0:
            raise InvalidSpecError(f"Grid extent must be positive, not {self.p_max}")
        if int(self.n) != self.n or self.n < 2:
            raise InvalidSpecError(f"Grid needs an integer number of points >= 2, not {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p_max", float(self.p_max))

    @classmethod
    def for_charge(cls, Z, p_max_times_z=20.0, n=200):
        """Return the default grid 0 < p <= p_max_times_z / Z."""
        return cls(p_max=p_max_times_z / Z, n=n)

    @property
    def dp(self):
        return self.p_max / self.n

    @property
    def points(self):
        return np.arange(1, self.n + 1) * self.dp


@dataclasses.dataclass(frozen=True, eq=False)
class CoefficientTable:
    """
    Surface averages s, t, u, h sampled on a grid.

    Parameters
    ----------
    grid : PGrid
        Sampling grid.
    s : ndarray
        r12 probability density of phi, renormalized to unit trapezoid integral.
    t : ndarray
        Sum of squared gradients of p (2 for two electrons).
    u : ndarray
        First-derivative coefficient, equal to s'/s.
    h : ndarray
        Surface average of H0 phi / phi (Hartree).
    e0 : float
        Energy of phi entering the large-p boundary fold.
    ansatz : PairAnsatz
        Pair function the table was computed from.
    s_norm : float
        Trapezoid integral of the density before renormalization.

    """

    grid: PGrid
    s: np.ndarray
    t: np.ndarray
    u: np.ndarray
    h: np.ndarray
    e0: float
    ansatz: object = None
    s_norm: float = 1.0

    def __post_init__(self):
        for name in ("s", "t", "u", "h"):
            values = np.array(getattr(self, name), dtype=float)
            if values.shape != (self.grid.n,):
                raise InvalidSpecError(f"Coefficient {name} has shape {values.shape}, grid has {self.grid.n}")
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @property
    def zeta_min(self):
        """Slowest orbital decay exponent of the ansatz."""
        return self.ansatz.decay_min

    @property
    def h_tail(self):
        """Large-p limit of h, approximated by its last grid value."""
        return float(self.h[-1])

    def with_e0(self, e0_mode):
        """
        Return a copy with E0 chosen by mode.

        Parameters
        ----------
        e0_mode : str or float
            'h0' for <phi|H0|phi>, 'tail' for the last grid value of h, or a number.

        """
        if isinstance(e0_mode, str):
            if e0_mode == "h0":
                e0 = h0_expectation(self.ansatz)
            elif e0_mode == "tail":
                e0 = self.h_tail
            else:
                raise InvalidSpecError(f"Unknown e0 mode {e0_mode!r}")
        else:
            e0 = float(e0_mode)
        return dataclasses.replace(self, e0=e0)

    def to_dataframe(self):
        import pandas

        return pandas.DataFrame(
            {"p": self.grid.points, "s": self.s, "t": self.t, "u": self.u, "h": self.h}
        )

    def write_csv(self, filename):
        """Write (p, s, t, u, h) columns with 15 significant digits."""
        self.to_dataframe().to_csv(filename, index=False, float_format="%.15g")
        return filename


def _panel_nodes(lo, hi, panels):
    """Gauss-Legendre nodes and weights on [lo, hi] split into equal panels (vectorized)."""
    lo = np.asarray(lo, dtype=float)[..., None]
    hi = np.asarray(hi, dtype=float)[..., None]
    width = (hi - lo) / panels
    starts = lo + width * np.arange(panels)
    half = 0.5 * width[..., None]
    x = starts[..., None] + half * (_NODES + 1.0)
    w = np.broadcast_to(half * _WEIGHTS, x.shape)
    shape = x.shape[:-2] + (panels * GAUSS_ORDER,)
    return x.reshape(shape), w.reshape(shape)


def _incomplete_moments(nmax, beta, lo, hi):
    """
    Return J_n = int_lo^hi x^n exp(-beta x) dx for n = 0..nmax.

    The regularized lower or upper incomplete gamma difference is used depending on
    which side of the mode the interval starts, to avoid cancellation.
    """
    a = (np.arange(nmax + 1) + 1.0).reshape((-1,) + (1,) * np.ndim(lo))
    x_lo = beta * lo
    x_hi = beta * hi
    diff = np.where(
        x_lo > a,
        gammaincc(a, x_lo) - gammaincc(a, x_hi),
        gammainc(a, x_hi) - gammainc(a, x_lo),
    )
    return gamma(a) / beta ** a * diff


def _basis_integrals(e1, e2, mmax, nmax, p, rtol, panels, max_panels):
    """
    B[m, n, i] = int_0^inf r1^m e^{-e1 r1} int_{|r1-p_i|}^{r1+p_i} r2^n e^{-e2 r2} dr2 dr1.

    Raises
    ------
    QuadratureError
        If panel doubling reaches max_panels without meeting rtol.

    """
    span = DECAY_SPAN / (e1 + e2)
    powers = np.arange(mmax + 1)[:, None, None]
    pc = p[:, None]
    previous = None
    while True:
        current = np.zeros((mmax + 1, nmax + 1, len(p)))
        for lo, hi in ((np.zeros_like(p), p), (p, p + span)):
            r1, w = _panel_nodes(lo, hi, panels)
            inner = _incomplete_moments(nmax, e2, np.abs(r1 - pc), r1 + pc)
            outer = r1[None] ** powers * np.exp(-e1 * r1)[None]
            current += np.einsum("mpr,npr,pr->mnp", outer, inner, w)
        if previous is not None:
            change = np.abs(current - previous)
            scale = np.abs(current)
            if np.all(change <= rtol * scale):
                logger.debug(f"Surface quadrature ({e1:.4f}, {e2:.4f}) converged at {panels} panels")
                return current
            if panels >= max_panels:
                estimate = float(np.max(change / np.where(scale > 0.0, scale, 1.0)))
                raise QuadratureError(estimate, panels)
        previous = current
        panels *= 2


def _monomials(*terms):
    """Build a [k, m, n] coefficient array for sum coef * p^k r1^m r2^n."""
    arr = np.zeros((3, 4, 4))
    for coef, k, m, n in terms:
        arr[k, m, n] += coef
    return arr


_R1R2 = _monomials((1.0, 0, 1, 1))
# (p^2 + r1^2 - r2^2) r2 and (p^2 + r2^2 - r1^2) r1
_DRIFT1 = _monomials((1.0, 2, 0, 1), (1.0, 0, 2, 1), (-1.0, 0, 0, 3))
_DRIFT2 = _monomials((1.0, 2, 1, 0), (1.0, 0, 1, 2), (-1.0, 0, 3, 0))
_R1 = _monomials((1.0, 0, 1, 0))
_R2 = _monomials((1.0, 0, 0, 1))
_TERM_SHAPE = (3, 6, 6)


def _times(product, monomial):
    """Multiply a 2-D (r1, r2) coefficient array by a 3-D (p, r1, r2) one."""
    full = convolve(product[None, :, :], monomial, method="direct")
    padded = np.zeros(_TERM_SHAPE)
    padded[: full.shape[0], : full.shape[1], : full.shape[2]] = full
    return padded


def surface_terms(ansatz):
    """
    Expand the s, u and h numerators into exponent groups.

    Each numerator, multiplied by r1 r2, is returned as a mapping from the exponent
    pair (e1, e2) to coefficient arrays C[k, m, n] of p^k r1^m r2^n.  The u numerator
    still carries an overall factor 1/(2p).

    Parameters
    ----------
    ansatz : PairAnsatz
        Pair function.

    Returns
    -------
    dict
        {(e1, e2): {"s": C_s, "u": C_u, "h": C_h}}

    """
    Z = ansatz.nuclear_charge
    orbitals = []
    for orb in (ansatz.orb1, ansatz.orb2):
        orbitals.append(([orb.derivative_coefficients(d) for d in range(3)], orb.decay))
    a, b = orbitals
    phi_terms = [(a, b, ansatz.norm), (b, a, ansatz.sign * ansatz.norm)]
    groups = {}
    for xi, yi, wi in phi_terms:
        for xj, yj, wj in phi_terms:
            key = (xi[1] + xj[1], yi[1] + yj[1])
            weight = wi * wj

            def product(dx, dy):
                x = npoly.polymul(xi[0][0], xj[0][dx])
                return np.outer(x, npoly.polymul(yi[0][0], yj[0][dy])) * weight

            pp = product(0, 0)
            p1 = product(1, 0)
            p2 = product(0, 1)
            p11 = product(2, 0)
            p22 = product(0, 2)
            entry = groups.setdefault(key, {name: np.zeros(_TERM_SHAPE) for name in ("s", "u", "h")})
            entry["s"] += _times(pp, _R1R2)
            entry["u"] += _times(p1, _DRIFT1) + _times(p2, _DRIFT2) + _times(pp, 4.0 * _R1R2)
            entry["h"] += (
                _times(p11, -0.5 * _R1R2)
                + _times(p22, -0.5 * _R1R2)
                + _times(p1, -_R2)
                + _times(p2, -_R1)
                + _times(pp, -Z * (_R1 + _R2))
            )
    return groups


def _extent(arrays, axis):
    """Highest index along axis with a nonzero coefficient in any array."""
    used = 0
    for arr in arrays:
        other = tuple(i for i in range(arr.ndim) if i != axis)
        nonzero = np.nonzero(np.any(arr != 0.0, axis=other))[0]
        if len(nonzero):
            used = max(used, int(nonzero[-1]))
    return used


def _surface_numerators(ansatz, p, rtol, panels, max_panels):
    """Return the r1-r2 double integrals of the s, u and h numerators at each p."""
    totals = {name: np.zeros(len(p)) for name in ("s", "u", "h")}
    for (e1, e2), coeffs in surface_terms(ansatz).items():
        arrays = list(coeffs.values())
        mmax = _extent(arrays, 1)
        nmax = _extent(arrays, 2)
        for start in range(0, len(p), P_CHUNK):
            pp = p[start:start + P_CHUNK]
            basis = _basis_integrals(e1, e2, mmax, nmax, pp, rtol, panels, max_panels)
            ppow = pp[None, :] ** np.arange(_TERM_SHAPE[0])[:, None]
            for name, c in coeffs.items():
                totals[name][start:start + P_CHUNK] += np.einsum(
                    "kmn,mnp,kp->p", c[:, : mmax + 1, : nmax + 1], basis, ppow
                )
    return totals


def compute_coefficients(ansatz, grid, rtol=None, max_panels=None):
    """
    Evaluate s, t, u and h of an ansatz on a grid.

    Parameters
    ----------
    ansatz : PairAnsatz
        Pair function.
    grid : PGrid
        Grid to sample.
    rtol : float or None
        Relative quadrature tolerance (default DEFAULT_QUADRATURE_TOL).
    max_panels : int or None
        Panel cap of the r1 quadrature.

    Returns
    -------
    CoefficientTable

    Raises
    ------
    QuadratureError
        If the r1 quadrature does not converge.

    """
    if rtol is None:
        rtol = DEFAULT_QUADRATURE_TOL["rtol"]
    if max_panels is None:
        max_panels = DEFAULT_QUADRATURE_TOL["max_panels"]
    p = grid.points
    num = _surface_numerators(ansatz, p, rtol, DEFAULT_QUADRATURE_TOL["panels"], max_panels)
    density = 4.0 * np.pi * p * num["s"] * SURFACE_DENSITY_NORM

    s_norm = grid_integral(density, grid.dp)
    u = num["u"] / (2.0 * p * num["s"])
    h = num["h"] / num["s"]
    table = CoefficientTable(
        grid=grid,
        s=density / s_norm,
        t=np.full(grid.n, 2.0),
        u=u,
        h=h,
        e0=h0_expectation(ansatz),
        ansatz=ansatz,
        s_norm=s_norm,
    )
    logger.debug(
        f"Coefficients for Z={ansatz.nuclear_charge}, zeta=({ansatz.orb1.zeta:.6f}, "
        f"{ansatz.orb2.zeta:.6f}): s_norm={s_norm:.10f}, h_tail={table.h_tail:.8f}"
    )
    return table


def reduce_surface_integral(f, p, r_max=40.0, rtol=None, panels=8, max_panels=128):
    """
    Return 4 pi p int_0^inf r1 dr1 int_{|r1-p|}^{r1+p} r2 f(r1, r2, p) dr2.

    Generic nested Gauss-Legendre path for any vectorized integrand.

    Parameters
    ----------
    f : callable
        f(r1, r2, p) on broadcast arrays; must decay exponentially in r1 and r2.
    p : float
        Electron separation, > 0.
    r_max : float
        Extent of the r1 > p segment (Bohr).
    rtol : float or None
        Relative tolerance.
    panels, max_panels : int
        Initial and largest panel count per segment.

    Raises
    ------
    QuadratureError
        If panel doubling reaches max_panels without meeting rtol.

    """
    if rtol is None:
        rtol = DEFAULT_QUADRATURE_TOL["rtol"]
    if not p > 0.0:
        raise InvalidSpecError(f"Surface parameter must be positive, not {p}")
    previous = None
    while True:
        current = 0.0
        for lo, hi in ((0.0, p), (p, p + r_max)):
            r1, w1 = _panel_nodes(lo, hi, panels)
            r2, w2 = _panel_nodes(np.abs(r1 - p), r1 + p, panels)
            inner = np.sum(w2 * r2 * f(r1[:, None], r2, p), axis=1)
            current += np.sum(w1 * r1 * inner)
        current *= 4.0 * np.pi * p
        if previous is not None:
            change = abs(current - previous)
            if change <= rtol * abs(current):
                return float(current)
            if panels >= max_panels:
                raise QuadratureError(change / abs(current) if current else change, panels)
        previous = current
        panels *= 2


def pair_integrands(ansatz):
    """
    Return the surface integrands of an ansatz as callables f(r1, r2, p).

    Keys: 'density' (phi^2), 'drift' (phi times the dchi/dp bracket), 'kinetic' and
    'attraction' (the two parts of phi times the h bracket).
    """
    Z = ansatz.nuclear_charge

    def density(r1, r2, p):
        phi = pair_value_and_partials(ansatz, r1, r2)[0]
        return phi * phi

    def drift(r1, r2, p):
        phi, d1, d2, _, _ = pair_value_and_partials(ansatz, r1, r2)
        bracket = (
            (p ** 2 + r1 ** 2 - r2 ** 2) / (2.0 * p * r1) * d1
            + (p ** 2 + r2 ** 2 - r1 ** 2) / (2.0 * p * r2) * d2
            + 2.0 * phi / p
        )
        return phi * bracket

    def kinetic(r1, r2, p):
        phi, d1, d2, dd1, dd2 = pair_value_and_partials(ansatz, r1, r2)
        return phi * (-0.5 * dd1 - 0.5 * dd2 - d1 / r1 - d2 / r2)

    def attraction(r1, r2, p):
        phi = pair_value_and_partials(ansatz, r1, r2)[0]
        return -Z * (1.0 / r1 + 1.0 / r2) * phi * phi

    return {"density": density, "drift": drift, "kinetic": kinetic, "attraction": attraction}


def s_oracle_1s1s(zeta, p):
    """
    Closed-form surface measure of phi = 1s(zeta)^2 in the 4 pi p form.

    With b = 2 zeta and G(x) = -exp(-b x)(x/b + 1/b^2) the antiderivative of
    x exp(-b x), the r2 integral is 16 zeta^6 [G(r1 + p) - G(|r1 - p|)] and the
    remaining r1 integral of r1 exp(-b r1) times it, split at r1 = p, collapses to

        8 pi exp(-2 zeta p) (2/3 zeta^5 p^4 + zeta^4 p^3 + zeta^3 p^2 / 2).

    Multiplying by SURFACE_DENSITY_NORM gives the r12 probability density.
    """
    if not zeta > 0.0:
        raise InvalidSpecError(f"Orbital charge must be positive, not {zeta}")
    p = np.asarray(p, dtype=float)
    poly = (2.0 / 3.0) * zeta ** 5 * p ** 4 + zeta ** 4 * p ** 3 + 0.5 * zeta ** 3 * p ** 2
    value = 8.0 * np.pi * np.exp(-2.0 * zeta * p) * poly
    return float(value) if value.ndim == 0 else value
