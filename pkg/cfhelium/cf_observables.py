# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Distribution curves and correlation diagnostics derived from a solved correction function.

Every integral here uses the same grid trapezoid rule as the solver's normalization,
so the unit-integral properties of s and chi s chi hold to rounding.
"""

import dataclasses

import numpy as np

from . import logger
from .cf import RunConfig
from .cf_chi import Interaction, count_nodes, solve_lowest
from .cf_exceptions import InvalidSpecError
from .cf_orbitals import OrbitalKind, OrbitalSpec, PairAnsatz, Symmetry
from .cf_surface import PGrid, compute_coefficients
from .cf_utils import grid_integral

# exact H0 energies of 1s^2, 1s2s and 1s3s in units of Z^2
NONINTERACTING_LEVELS = (-1.0, -0.625, -(0.5 + 1.0 / 18.0))
MONOTONE_SKIP = 2


@dataclasses.dataclass(frozen=True, eq=False)
class DistributionCurves:
    """
    r12 distributions on the solve grid.

    Parameters
    ----------
    grid : PGrid
        Grid of the solution.
    s : ndarray
        Density of the uncorrelated pair function.
    chi : ndarray
        Correction function.
    chi_s_chi : ndarray
        Correlated density chi s chi.
    hole : ndarray
        Correlation hole s (chi^2 - 1).
    nuclear_charge : int
        Z of the ion, used for the scaled length unit Bohr/Z.

    """

    grid: PGrid
    s: np.ndarray
    chi: np.ndarray
    chi_s_chi: np.ndarray
    hole: np.ndarray
    nuclear_charge: int = 1

    def integrals(self):
        """Trapezoid integrals of s, chi s chi and the hole."""
        dp = self.grid.dp
        return {
            "s": grid_integral(self.s, dp),
            "chi_s_chi": grid_integral(self.chi_s_chi, dp),
            "hole": grid_integral(self.hole, dp),
        }

    def to_dataframe(self):
        import pandas

        return pandas.DataFrame(
            {
                "p": self.grid.points,
                "s": self.s,
                "chi": self.chi,
                "chi_s_chi": self.chi_s_chi,
                "hole": self.hole,
            }
        )

    def write_csv(self, filename):
        """Write (p, s, chi, chi_s_chi, hole) with 15 significant digits."""
        self.to_dataframe().to_csv(filename, index=False, float_format="%.15g")
        return filename


def curves(table, sol):
    """
    Build the distribution curves of a solution.

    Parameters
    ----------
    table : CoefficientTable
        Coefficients the solution was computed from.
    sol : ChiSolution
        Normalized correction function.

    Returns
    -------
    DistributionCurves

    """
    if not sol.normalized:
        raise InvalidSpecError("Distribution curves need a normalized correction function.")
    if sol.grid != table.grid:
        raise InvalidSpecError("Solution and coefficient table live on different grids.")
    chi = np.asarray(sol.chi)
    s = np.asarray(table.s)
    return DistributionCurves(
        grid=table.grid,
        s=s,
        chi=chi,
        chi_s_chi=chi * s * chi,
        hole=s * (chi ** 2 - 1.0),
        nuclear_charge=1 if table.ansatz is None else table.ansatz.nuclear_charge,
    )


def hole_depth(dist):
    """
    Depth |min hole| of the correlation hole per unit of Z p.

    In the length unit Bohr/Z the densities of different ions share one scale, so
    depths are comparable along the isoelectronic series.
    """
    return float(abs(min(np.min(dist.hole), 0.0))) / dist.nuclear_charge


def hole_crossings(dist):
    """Number of sign changes of the correlation hole."""
    return count_nodes(dist.hole)


def is_monotone(chi, skip=MONOTONE_SKIP, rtol=1e-8):
    """
    Check that chi does not decrease, ignoring the last skip points.

    The folded boundary acts on the last rows, so they are excluded.
    """
    chi = np.asarray(chi, dtype=float)
    body = chi[: len(chi) - skip] if skip else chi
    return bool(np.all(np.diff(body) >= -rtol * np.max(np.abs(body))))


def chi_deviation(chi):
    """max |chi - 1| over the grid."""
    return float(np.max(np.abs(np.asarray(chi) - 1.0)))


def separation_moments(dist):
    """
    Return <r12> and <1/r12> for the uncorrelated and the correlated densities.

    Returns
    -------
    dict
        keys r12_s, inv_r12_s, r12_chi, inv_r12_chi

    """
    p = dist.grid.points
    dp = dist.grid.dp
    return {
        "r12_s": grid_integral(p * dist.s, dp),
        "inv_r12_s": grid_integral(dist.s / p, dp),
        "r12_chi": grid_integral(p * dist.chi_s_chi, dp),
        "inv_r12_chi": grid_integral(dist.chi_s_chi / p, dp),
    }


def correlation_recovery(energy, hf, ci):
    """
    Fraction of the correlation energy recovered, (E_HF - E) / (E_HF - E_CI).

    Returns None when either reference is unavailable.
    """
    if hf is None or ci is None or hf == ci:
        return None
    return (hf - energy) / (hf - ci)


def correlation_summary(table, sol, hf=None, ci=None):
    """Collect the scalar diagnostics of one solution into a dict."""
    dist = curves(table, sol)
    summary = {
        "energy": sol.energy,
        "hole_depth": hole_depth(dist),
        "hole_crossings": hole_crossings(dist),
        "chi_deviation": chi_deviation(sol.chi),
        "chi_monotone": is_monotone(sol.chi),
        "correlation_recovery": correlation_recovery(sol.energy, hf, ci),
    }
    summary.update(separation_moments(dist))
    summary.update({f"integral_{k}": v for k, v in dist.integrals().items()})
    return summary


def noninteracting_demo(Z, config=None, k=3):
    """
    Solve the correction-function equation without electron repulsion for 1s(Z)^2.

    The lowest state reproduces -Z^2 with a constant chi; the excited states are
    returned next to the exact 1s^2, 1s2s and 1s3s energies for comparison.

    Parameters
    ----------
    Z : int
        Nuclear charge.
    config : RunConfig or None
        Grid and tolerances; its interaction switch is ignored.
    k : int
        Number of states, at most 3.

    Returns
    -------
    list of (ChiSolution, float)
        Each solution paired with its exact reference energy.

    """
    if config is None:
        config = RunConfig()
    if Z < 1:
        raise InvalidSpecError(f"Nuclear charge must be positive, not {Z}")
    if not 1 <= k <= len(NONINTERACTING_LEVELS):
        raise InvalidSpecError(f"Demo has {len(NONINTERACTING_LEVELS)} reference levels, not {k}")
    orbital = OrbitalSpec(OrbitalKind.ONE_S, float(Z))
    ansatz = PairAnsatz(orbital, orbital, Symmetry.SINGLET, Z)
    grid = PGrid.for_charge(Z, config.p_max_times_z, config.n)
    table = compute_coefficients(ansatz, grid, rtol=config.quadrature_tol)
    solutions = solve_lowest(
        table,
        Z,
        k=k,
        interaction=Interaction.OFF,
        tol=config.bc_tol,
        max_iterations=config.bc_max_iterations,
    )
    pairs = [(sol, level * Z ** 2) for sol, level in zip(solutions, NONINTERACTING_LEVELS)]
    for sol, exact in pairs:
        logger.info(f"Z={Z} non-interacting state {sol.state_index}: E={sol.energy:.5f} exact {exact:.5f}")
    return pairs
