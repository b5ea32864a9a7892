# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Finite-difference solution of the correction-function equation

    -(t/2) chi'' - u chi' + (h + 1/p) chi = E chi

on a uniform p-grid, with the electron-pair cusp folded into the first row and the
energy-dependent exponential tail folded into the last row.
"""

import dataclasses
import enum
import json

import numpy as np
from scipy import linalg

from . import logger, DEFAULT_BC_TOL
from .cf_exceptions import BoundaryConditionError, ConvergenceError, InvalidSpecError, SolverError
from .cf_utils import grid_integral

MAX_STATES = 5
NODE_RTOL = 1e-9


class Interaction(enum.Enum):
    """Whether the electron-electron repulsion 1/p is included."""

    ON = "on"
    OFF = "off"


@dataclasses.dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """
    Tridiagonal matrix A with A[j, j] = diag[j], A[j, j+1] = upper[j], A[j+1, j] = lower[j].

    Parameters
    ----------
    diag : ndarray
        n diagonal entries.
    lower, upper : ndarray
        n-1 sub- and super-diagonal entries.
    energy : float
        Boundary energy the operator was assembled at.

    """

    diag: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    energy: float = float("nan")

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float)
        lower = np.array(self.lower, dtype=float)
        upper = np.array(self.upper, dtype=float)
        if diag.ndim != 1 or lower.shape != (len(diag) - 1,) or upper.shape != (len(diag) - 1,):
            raise InvalidSpecError(
                f"Inconsistent tridiagonal shapes {diag.shape}, {lower.shape}, {upper.shape}"
            )
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise SolverError("Tridiagonal operator has non-finite entries.")
        for name, values in (("diag", diag), ("lower", lower), ("upper", upper)):
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @property
    def n(self):
        return len(self.diag)

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.upper, 1) + np.diag(self.lower, -1)


@dataclasses.dataclass(frozen=True, eq=False)
class ChiSolution:
    """
    One eigenstate of the correction-function equation.

    Parameters
    ----------
    grid : PGrid
        Grid the solution lives on.
    chi : ndarray
        Values at the grid points.
    energy : float
        Eigenvalue (Hartree).
    state_index : int
        0 for the lowest state; equals the node count.
    bc_iterations : int
        Boundary iterations used.
    normalized : bool
        True when the trapezoid integral of chi s chi is 1.
    trace : tuple
        Energy change of each boundary iteration.

    """

    grid: object
    chi: np.ndarray
    energy: float
    state_index: int
    bc_iterations: int
    normalized: bool = True
    trace: tuple = ()

    def to_dict(self):
        return {
            "energy": self.energy,
            "iterations": self.bc_iterations,
            "state_index": self.state_index,
            "grid": {"p_max": self.grid.p_max, "n": self.grid.n},
        }

    def write_json(self, filename):
        with open(filename, "w", encoding="utf-8") as fp:
            json.dump(self.to_dict(), fp, indent=4)
        return filename

    def write_csv(self, filename):
        """Write (p, chi) columns with 15 significant digits."""
        import pandas

        df = pandas.DataFrame({"p": self.grid.points, "chi": self.chi})
        df.to_csv(filename, index=False, float_format="%.15g")
        return filename


def cusp_ratio(dp):
    """chi(0) / chi(dp) from the pair cusp series 1 + p/2 + p^2/12."""
    return 1.0 / (1.0 + dp / 2.0 + dp ** 2 / 12.0)


def boundary_ratio(zeta_min, energy, e0, dp):
    """
    chi(p + dp) / chi(p) for the decaying large-p solution.

    With u -> -2 zeta_min and h -> e0 the equation has the solutions
    exp[(zeta_min -/+ sqrt(zeta_min^2 - E + e0)) p]; the minus root is kept.

    Raises
    ------
    BoundaryConditionError
        If zeta_min^2 - E + e0 < 0.

    """
    discriminant = zeta_min ** 2 - energy + e0
    if discriminant < 0.0:
        raise BoundaryConditionError(discriminant, energy)
    return np.exp((zeta_min - np.sqrt(discriminant)) * dp)


def assemble(table, Z, E_bc, interaction=Interaction.ON):
    """
    Build the finite-difference operator for a coefficient table.

    Parameters
    ----------
    table : CoefficientTable
        Surface averages on the grid.
    Z : int
        Nuclear charge (must match the table's ansatz).
    E_bc : float
        Energy used in the large-p boundary fold.
    interaction : Interaction
        OFF drops the 1/p repulsion and the cusp fold.

    Returns
    -------
    TridiagonalOperator

    """
    interaction = Interaction(interaction)
    if table.ansatz is not None and table.ansatz.nuclear_charge != Z:
        raise InvalidSpecError(f"Table was computed for Z={table.ansatz.nuclear_charge}, not {Z}")
    p = table.grid.points
    dp = table.grid.dp
    t, u, h = table.t, table.u, table.h
    diag = t / dp ** 2 + h
    if interaction is Interaction.ON:
        diag = diag + 1.0 / p
    forward = -t / (2.0 * dp ** 2) - u / (2.0 * dp)
    backward = -t / (2.0 * dp ** 2) + u / (2.0 * dp)
    sigma = cusp_ratio(dp) if interaction is Interaction.ON else 1.0
    rho = boundary_ratio(table.zeta_min, E_bc, table.e0, dp)
    diag[0] += backward[0] * sigma
    diag[-1] += forward[-1] * rho
    return TridiagonalOperator(diag=diag, lower=backward[1:], upper=forward[:-1], energy=E_bc)


def _sign_fix(x):
    """Scale to unit norm with the first significant component positive."""
    x = x / np.linalg.norm(x)
    significant = np.nonzero(np.abs(x) > 1e-12 * np.max(np.abs(x)))[0]
    if x[significant[0]] < 0.0:
        x = -x
    return x


def eigen_tridiagonal(op, k, method="auto"):
    """
    Return the k algebraically smallest eigenpairs of a tridiagonal operator.

    When every lower[j] * upper[j] > 0 a diagonal similarity transform makes the
    operator symmetric and scipy.linalg.eigh_tridiagonal is used; otherwise a dense
    general eigensolver.

    Parameters
    ----------
    op : TridiagonalOperator
        Operator to diagonalize.
    k : int
        Number of eigenpairs.
    method : str
        'auto', 'symmetric' (fail if not symmetrizable) or 'dense'.

    Returns
    -------
    list of (float, ndarray)
        Ascending eigenvalues with unit-norm eigenvectors, first component positive.

    Raises
    ------
    SolverError
        If the operator is not symmetrizable under 'symmetric', the dense solver fails
        or a complex eigenvalue appears among the lowest k.

    """
    if not 1 <= k <= op.n:
        raise InvalidSpecError(f"Cannot extract {k} eigenpairs from a {op.n}x{op.n} operator.")
    product = op.lower * op.upper
    symmetrizable = bool(np.all(product > 0.0))
    if method == "symmetric" and not symmetrizable:
        raise SolverError("Operator is not symmetrizable.")
    if method not in ("auto", "symmetric", "dense"):
        raise InvalidSpecError(f"Unknown eigen method {method!r}")

    if symmetrizable and method != "dense":
        log_d = np.concatenate(([0.0], np.cumsum(0.5 * np.log(op.upper / op.lower))))
        off = np.sign(op.upper) * np.sqrt(product)
        w, y = linalg.eigh_tridiagonal(op.diag, off, select="i", select_range=(0, k - 1))
        vectors = y * np.exp(np.max(log_d) - log_d)[:, None]
    else:
        logger.debug("Operator not symmetrizable, using the dense eigensolver.")
        try:
            w, v = linalg.eig(op.to_dense())
        except linalg.LinAlgError as e:
            raise SolverError(f"Dense eigensolver failed: {e}")
        order = np.argsort(w.real)[:k]
        w, v = w[order], v[:, order]
        if np.any(np.abs(w.imag) > 1e-9 * np.maximum(1.0, np.abs(w.real))):
            raise SolverError(f"Complex eigenvalue among the lowest {k}: {w}")
        w, vectors = w.real, v.real
    return [(float(w[i]), _sign_fix(vectors[:, i])) for i in range(k)]


def count_nodes(values, rtol=NODE_RTOL):
    """Number of sign changes, ignoring components below rtol times the largest."""
    values = np.asarray(values, dtype=float)
    keep = values[np.abs(values) > rtol * np.max(np.abs(values))]
    return int(np.count_nonzero(np.diff(np.sign(keep)) != 0))


def _pick_state(pairs, state, weight):
    for energy, x in pairs:
        if count_nodes(x * weight) == state:
            return energy, x
    logger.warning(f"No eigenvector with {state} nodes, taking eigenvalue index {state}.")
    return pairs[state]


def solve_lowest(table, Z, k=1, interaction=Interaction.ON, tol=None, max_iterations=None):
    """
    Solve for the k lowest correction-function states.

    Each state iterates its own boundary energy: starting from table.e0 the
    operator is assembled, the state with the right node count extracted and its
    eigenvalue fed back, until the change is below tol.

    Parameters
    ----------
    table : CoefficientTable
        Surface averages.
    Z : int
        Nuclear charge.
    k : int
        Number of states, 1..5.
    interaction : Interaction
        Include the 1/p repulsion.
    tol : float or None
        Boundary self-consistency tolerance (Hartree).
    max_iterations : int or None
        Iteration cap.

    Returns
    -------
    list of ChiSolution
        Normalized so that the trapezoid integral of chi s chi is 1, chi(p_1) > 0.

    Raises
    ------
    ConvergenceError
        If a state does not settle within max_iterations.

    """
    if tol is None:
        tol = DEFAULT_BC_TOL["atol"]
    if max_iterations is None:
        max_iterations = DEFAULT_BC_TOL["max_iterations"]
    if not 1 <= k <= MAX_STATES:
        raise InvalidSpecError(f"Number of states must be between 1 and {MAX_STATES}, not {k}")
    grid = table.grid
    weight = np.sqrt(table.s)
    extract = min(k + 2, grid.n)
    solutions = []
    for state in range(k):
        e_bc = table.e0
        trace = []
        for iteration in range(1, max_iterations + 1):
            op = assemble(table, Z, e_bc, interaction)
            energy, chi = _pick_state(eigen_tridiagonal(op, extract), state, weight)
            delta = energy - e_bc
            trace.append(delta)
            logger.debug(f"state {state} iteration {iteration}: E={energy:.12f} dE={delta:.3e}")
            e_bc = energy
            if abs(delta) < tol:
                break
        else:
            raise ConvergenceError(trace)
        chi = chi / np.sqrt(grid_integral(chi * table.s * chi, grid.dp))
        if chi[0] < 0.0:
            chi = -chi
        logger.info(f"Z={Z} state {state}: E={energy:.8f} after {iteration} boundary iterations")
        solutions.append(
            ChiSolution(
                grid=grid,
                chi=chi,
                energy=energy,
                state_index=state,
                bc_iterations=iteration,
                normalized=True,
                trace=tuple(trace),
            )
        )
    return solutions
