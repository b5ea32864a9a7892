# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Locate and read the run configuration.

The packaged default lives in cfhelium/data/cf_config.json. A file of the same name
in the working directory or in ~/.cfhelium takes precedence, and scripts accept
--config to point at any other file.

"""

import dataclasses
import json
import os.path as op

from . import logger, DEFAULT_BC_TOL, DEFAULT_OPTIMIZER_TOL, DEFAULT_QUADRATURE_TOL
from .cf_exceptions import InvalidSpecError
from .data import DATA_PATH

E0_MODES = ("h0", "tail")
OUTPUT_FORMATS = ("csv", "json")


def file_finder(filename, default_path_list=['.', op.join(op.expanduser('~'), '.cfhelium'), DATA_PATH]):
    if filename is None:
        return None
    if op.isabs(filename) or op.dirname(filename):
        return filename if op.exists(filename) else None
    for this_path in default_path_list:
        default_file = op.join(this_path, filename)
        if op.exists(default_file):
            return default_file
    return None


default_config_file = file_finder('cf_config.json')


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    Numerical and output settings shared by every command.

    Parameters
    ----------
    p_max_times_z : float
        Grid extent in units of 1/Z Bohr.
    n : int
        Number of interior grid points.
    quadrature_tol : float
        Relative tolerance of the surface quadrature.
    bc_tol : float
        Boundary-energy self-consistency tolerance (Hartree).
    optimizer_zeta_tol, optimizer_energy_tol : float
        Charge and energy convergence tolerances of the optimizers.
    bc_max_iterations : int
        Cap on boundary iterations.
    optimizer_max_evaluations : int
        Cap on energy evaluations per optimization.
    e0_mode : str or float
        'h0' for <phi|H0|phi>, 'tail' for the large-p limit of h, or a number.
    z_range : tuple of int
        Inclusive range of accepted nuclear charges.
    output_dir : str
        Directory for report files.
    format : str
        'csv' or 'json' report format.
    workers : int
        Thread count for table scans.
    interaction : bool
        Include the electron-electron repulsion 1/p.

    """

    p_max_times_z: float = 20.0
    n: int = 200
    quadrature_tol: float = DEFAULT_QUADRATURE_TOL["rtol"]
    bc_tol: float = DEFAULT_BC_TOL["atol"]
    optimizer_zeta_tol: float = DEFAULT_OPTIMIZER_TOL["xatol"]
    optimizer_energy_tol: float = DEFAULT_OPTIMIZER_TOL["fatol"]
    bc_max_iterations: int = DEFAULT_BC_TOL["max_iterations"]
    optimizer_max_evaluations: int = DEFAULT_OPTIMIZER_TOL["max_evaluations"]
    e0_mode: object = "h0"
    z_range: tuple = (1, 10)
    output_dir: str = "."
    format: str = "csv"
    workers: int = 1
    interaction: bool = True

    def __post_init__(self):
        for name in ("quadrature_tol", "bc_tol", "optimizer_zeta_tol", "optimizer_energy_tol"):
            if not getattr(self, name) > 0.0:
                raise InvalidSpecError(f"Tolerance {name} must be positive, not {getattr(self, name)}")
        if self.n < 50:
            raise InvalidSpecError(f"Grid needs at least 50 points, not {self.n}")
        if not self.p_max_times_z > 0.0:
            raise InvalidSpecError(f"Grid extent must be positive, not {self.p_max_times_z}")
        if self.bc_max_iterations < 1 or self.optimizer_max_evaluations < 1 or self.workers < 1:
            raise InvalidSpecError("Iteration, evaluation and worker counts must be positive.")
        if isinstance(self.e0_mode, str):
            if self.e0_mode not in E0_MODES:
                raise InvalidSpecError(f"e0_mode must be one of {E0_MODES} or a number, not {self.e0_mode!r}")
        elif isinstance(self.e0_mode, bool) or not isinstance(self.e0_mode, (int, float)):
            raise InvalidSpecError(f"e0_mode must be one of {E0_MODES} or a number, not {self.e0_mode!r}")
        if self.format not in OUTPUT_FORMATS:
            raise InvalidSpecError(f"format must be one of {OUTPUT_FORMATS}, not {self.format!r}")
        zlo, zhi = self.z_range
        if not 1 <= zlo <= zhi:
            raise InvalidSpecError(f"Invalid z_range {self.z_range}")
        object.__setattr__(self, "z_range", (int(zlo), int(zhi)))

    def replace(self, **changes):
        """Return a copy with the given fields changed."""
        return dataclasses.replace(self, **changes)

    def p_max(self, Z):
        """Grid extent in Bohr for nuclear charge Z."""
        return self.p_max_times_z / Z

    def check_charge(self, Z):
        """Raise InvalidSpecError if Z is outside the configured range."""
        if not self.z_range[0] <= Z <= self.z_range[1]:
            raise InvalidSpecError(f"Nuclear charge {Z} outside configured range {self.z_range}")

    def to_dict(self):
        """Return the configuration in the nested file layout."""
        return {
            "grid": {"p_max_times_z": self.p_max_times_z, "n": self.n},
            "tolerances": {
                "quadrature": self.quadrature_tol,
                "bc_energy": self.bc_tol,
                "optimizer_zeta": self.optimizer_zeta_tol,
                "optimizer_energy": self.optimizer_energy_tol,
            },
            "bc_max_iterations": self.bc_max_iterations,
            "optimizer_max_evaluations": self.optimizer_max_evaluations,
            "e0_mode": self.e0_mode,
            "z_range": list(self.z_range),
            "output_dir": self.output_dir,
            "format": self.format,
            "workers": self.workers,
            "interaction": self.interaction,
        }

    @classmethod
    def from_dict(cls, config_data, source="<dict>"):
        """
        Build a RunConfig from the nested file layout.

        Parameters
        ----------
        config_data : dict
            Content of a cf_config.json file.  Missing keys take the defaults.
        source : str
            Name used in error messages.

        """
        flat = {}
        sections = {
            "grid": {"p_max_times_z": "p_max_times_z", "n": "n"},
            "tolerances": {
                "quadrature": "quadrature_tol",
                "bc_energy": "bc_tol",
                "optimizer_zeta": "optimizer_zeta_tol",
                "optimizer_energy": "optimizer_energy_tol",
            },
        }
        fields = {f.name for f in dataclasses.fields(cls)}
        for key, value in config_data.items():
            if key in sections:
                for subkey, subvalue in value.items():
                    if subkey not in sections[key]:
                        raise InvalidSpecError(f"Unknown key {key}.{subkey} in {source!r}")
                    flat[sections[key][subkey]] = subvalue
            elif key in fields:
                flat[key] = value
            else:
                raise InvalidSpecError(f"Unknown key {key} in {source!r}")
        if "z_range" in flat:
            flat["z_range"] = tuple(flat["z_range"])
        return cls(**flat)


def read_config(config_path=None):
    """
    Read the run configuration.

    Parameters
    ----------
    config_path : str or None
        Path (or bare file name searched by file_finder).  None uses the default file,
        or the built-in defaults if no file is found.

    Returns
    -------
    RunConfig

    """
    if config_path is None:
        config_path = default_config_file
    else:
        found = file_finder(config_path)
        if found is None:
            raise InvalidSpecError(f"Configuration file {config_path!r} not found.")
        config_path = found
    if config_path is None:
        logger.info("No configuration file found, using defaults.")
        return RunConfig()
    with open(config_path) as f:
        try:
            config_data = json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidSpecError(f"Cannot parse {config_path!r}: {e}")
    logger.debug(f"Read configuration from {config_path}")
    return RunConfig.from_dict(config_data, source=config_path)


def get_cf_argument_parser(**kwargs):
    """
    Get a cfhelium specific `argparse.ArgumentParser` object.

    Includes the predefined arguments global to all scripts: the path to the
    configuration file.  Once parsed, pass `args.cf_config_path` to `read_config()`.

    """
    import argparse

    p = argparse.ArgumentParser(**kwargs)
    p.add_argument(
        "--config",
        dest="cf_config_path",
        type=str,
        default=None,
        help="Path to the cf_config.json configuration file.",
    )
    return p
