# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Errors raised by the correction-function pipeline.

Input problems derive from ValueError and numerical failures from RuntimeError,
so the command line can map them onto usage (2) and numerical (1) exit codes.
"""


class InvalidSpecError(ValueError):
    """Raised for an invalid orbital, ansatz, grid or configuration value."""


class UnknownIonError(InvalidSpecError):
    """
    Raised when an ion label cannot be parsed.

    Parameters
    ----------
    ion : str
        The label that was supplied.
    valid : list of str
        The accepted ion labels.

    """

    def __init__(self, ion, valid):
        self.ion = ion
        self.valid = list(valid)
        super().__init__(f"Unknown ion {ion!r}; valid ions are {', '.join(self.valid)}")


class DegenerateConfigurationError(InvalidSpecError):
    """Raised when two particles of a configuration coincide."""

    def __init__(self, pairs):
        self.pairs = list(pairs)
        super().__init__(f"Coincident particles at index pairs {self.pairs}")


class QuadratureError(RuntimeError):
    """
    Raised when the surface quadrature does not reach its tolerance.

    Parameters
    ----------
    error_estimate : float
        Relative change between the last two refinements.
    panels : int
        Panel count at which refinement stopped.

    """

    def __init__(self, error_estimate, panels):
        self.error_estimate = error_estimate
        self.panels = panels
        super().__init__(
            f"Surface quadrature did not converge: relative change {error_estimate:.3e} "
            f"at {panels} panels"
        )


class BoundaryConditionError(RuntimeError):
    """Raised when the large-p boundary fold has a negative discriminant."""

    def __init__(self, discriminant, energy):
        self.discriminant = discriminant
        self.energy = energy
        super().__init__(
            f"Boundary energy {energy:.8f} lies above the detachment threshold "
            f"(discriminant {discriminant:.3e})"
        )


class ConvergenceError(RuntimeError):
    """Raised when the boundary-energy iteration does not settle."""

    def __init__(self, trace):
        self.trace = list(trace)
        last = self.trace[-1] if self.trace else float("nan")
        super().__init__(
            f"Boundary iteration did not converge in {len(self.trace)} steps "
            f"(last change {last:.3e})"
        )


class SolverError(RuntimeError):
    """Raised when the eigenvalue extraction fails."""


class OptimizationError(RuntimeError):
    """Raised when the charge optimization runs out of evaluations."""

    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)
