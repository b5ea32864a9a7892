# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Define package structure."""

from pathlib import Path

from .branch_scheme import branch_scheme

try:  # pragma: nocover
    from setuptools_scm import get_version

    # get accurate version for developer installs
    version_str = get_version(Path(__file__).parent.parent, local_scheme=branch_scheme)

    __version__ = version_str

except (LookupError, ImportError):
    from importlib.metadata import version, PackageNotFoundError

    try:
        # Set the version automatically from the package details.
        __version__ = version(__name__)
    except PackageNotFoundError:  # pragma: nocover
        # package is not installed
        __version__ = "unknown"

import logging  # noqa

logging.basicConfig(level=logging.WARNING)
logger = logging.getLogger(__name__)

# define some default tolerances for the numerical stages
DEFAULT_QUADRATURE_TOL = {"rtol": 1e-10, "panels": 8, "max_panels": 1024}
DEFAULT_BC_TOL = {"atol": 1e-10, "max_iterations": 100}
DEFAULT_OPTIMIZER_TOL = {"xatol": 1e-5, "fatol": 1e-8, "max_evaluations": 500}
