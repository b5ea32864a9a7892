# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Some low-level utility functions shared by the solver modules and scripts."""

import logging

import numpy as np
from astropy import constants as const
from astropy import units as u
from scipy.integrate import trapezoid

from . import logger
from .cf_exceptions import UnknownIonError

ION_SYMBOLS = ["H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne"]
HARTREE_EV = (2.0 * const.h * const.c * const.Ryd).to(u.eV).value
VERBOSITY_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}


def listify(to_list, None_as_list=False):
    """
    "Listify" the input, hopefully sensibly.

    Integer ranges like "2-5" expand to [2, 3, 4, 5], comma-separated strings split
    (with integer conversion when every entry is an integer).

    Parameters
    ----------
    to_list
        Thing to be listified.
    None_as_list : bool
        If False return None if to_list is None, otherwise return []

    Returns
    -------
    List or None

    """
    if to_list is None:
        return [] if None_as_list else None
    if isinstance(to_list, str):
        if not to_list.strip():
            return []
        if "-" in to_list and not to_list.startswith("-"):
            try:
                start, stop = [int(_x) for _x in to_list.split("-")]
                return list(range(start, stop + 1))
            except ValueError:
                pass
        this_list = [_x.strip() for _x in to_list.split(",") if _x.strip()]
        try:
            return [int(_x) for _x in this_list]
        except ValueError:
            return this_list
    if isinstance(to_list, (list, tuple)):
        return list(to_list)
    return [to_list]


def parse_ion(ion):
    """
    Return the nuclear charge for an ion label.

    Accepts element symbols ('He', 'ne'), charged labels ('H-', 'Li+', 'Ne8+') and
    plain integers or integer strings.

    Parameters
    ----------
    ion : str or int
        Ion label.

    Returns
    -------
    int
        Nuclear charge Z.

    Raises
    ------
    UnknownIonError
        If the label is not one of the supported heliumlike ions.

    """
    valid = [ion_label(z) for z in range(1, len(ION_SYMBOLS) + 1)]
    if isinstance(ion, (int, np.integer)) and not isinstance(ion, bool):
        if 1 <= ion <= len(ION_SYMBOLS):
            return int(ion)
        raise UnknownIonError(ion, valid)
    label = str(ion).strip()
    if label.isdigit():
        return parse_ion(int(label))
    symbol = label.rstrip("+-0123456789")
    for z, this_symbol in enumerate(ION_SYMBOLS, start=1):
        if symbol.lower() == this_symbol.lower():
            if symbol != label and label.lower() != ion_label(z).lower():
                raise UnknownIonError(ion, valid)
            return z
    raise UnknownIonError(ion, valid)


def ion_label(Z):
    """
    Return the conventional label of the two-electron ion with nuclear charge Z.

    Charges beyond the symbol table are labelled "Z=<charge>".
    """
    if not 1 <= Z <= len(ION_SYMBOLS):
        return f"Z={Z}"
    symbol = ION_SYMBOLS[Z - 1]
    charge = Z - 2
    if charge < 0:
        return f"{symbol}-"
    if charge == 0:
        return symbol
    if charge == 1:
        return f"{symbol}+"
    return f"{symbol}{charge}+"


def add_verbosity_args(parser):
    """
    Add a standardized "--verbosity" argument to an ArgParser object.

    Returns the number of 'v's (-v=1 [low], -vv=2 [medium], -vvv=3 [high]) or
    the supplied integer. Parsed by 'parse_verbosity' function. Defaults to 2.

    Parameters
    ----------
    parser : object
        Parser object

    """
    parser.add_argument(
        "-v",
        "--verbosity",
        help="Verbosity level -v -vv -vvv. [-vv].",
        nargs="?",
        default=2,
    )


def parse_verbosity(vargs):
    """
    Parse the verbosity argument to produce a standardized integer for verbosity.

    Parameters
    ----------
    vargs
        Parser argument

    Returns
    -------
    int
        Integer characterizing verbosity level

    """
    try:
        return int(vargs)
    except (ValueError, TypeError):
        pass
    if vargs is None:
        return 1
    if vargs.count("v"):
        return vargs.count("v") + 1
    raise ValueError("Invalid argument to verbosity.")


def set_verbosity(verbosity):
    """Set the package logger level from a parsed verbosity integer."""
    level = VERBOSITY_LEVELS[min(max(int(verbosity), 0), 3)]
    logger.setLevel(level)
    return level


def grid_integral(values, dp):
    """
    Integrate grid samples with the trapezoid rule.

    The grid starts at p_1 = dp; the origin is included with a zero value, which is
    where every integrand used here (s, chi*s*chi, hole, ...) vanishes.

    Parameters
    ----------
    values : array_like
        Samples at p_1 ... p_n.
    dp : float
        Grid spacing.

    Returns
    -------
    float

    """
    values = np.asarray(values, dtype=float)
    return float(trapezoid(np.concatenate(([0.0], values)), dx=dp))


def hartree_to_ev(energy):
    """Convert an energy (or array of energies) from Hartree to eV."""
    return np.asarray(energy) * HARTREE_EV


def format_energy(energy, decimals=5):
    """Return an energy string with a fixed number of decimals, or '-' if unavailable."""
    if energy is None or not np.isfinite(energy):
        return "-"
    return f"{energy:.{decimals}f}"


def csv_table(headers, table):
    """
    Format a table into an csv string.

    Parameters
    ----------
    headers : list
        List of header titles
    table : list
        List of rows with data formatted
            [ [row1_entry1, row1_entry2, ..., row1_entry<len(headers)>],
              [row2_...],
              [rowN_...] ]

    Returns
    -------
    str
        String containing the full csv table.

    """
    lines = [",".join(f'"{h}"' for h in headers)]
    for tr in table:
        lines.append(",".join(f'"{d}"' for d in tr))
    return "\n".join(lines) + "\n"


def general_table_handler(headers, table_data, output_format="table"):
    """Return formatted table."""
    from tabulate import tabulate

    if output_format.lower().startswith("csv"):
        return csv_table(headers, table_data)
    if output_format == "table":
        output_format = "orgtbl"
    return tabulate(table_data, headers=headers, tablefmt=output_format) + "\n"
