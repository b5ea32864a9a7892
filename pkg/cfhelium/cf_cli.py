# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Command line front end.

Subcommands: solve, table, curves, demo and sample.  Exit status is 0 on success,
1 on a numerical failure and 2 on a usage error.
"""

import argparse
import os
import sys

from . import logger
from . import cf, cf_chi, cf_observables, cf_sampler, cf_utils, cf_variational

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2


def _e0_mode(value):
    if value in cf.E0_MODES:
        return value
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"e0 mode must be one of {cf.E0_MODES} or a number, not {value!r}")


def _common_parser():
    p = cf.get_cf_argument_parser(add_help=False)
    cf_utils.add_verbosity_args(p)
    return p


def _run_parser():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=None, help="Number of grid points.")
    p.add_argument(
        "--p-max-times-z", dest="p_max_times_z", type=float, default=None, help="Grid extent times Z."
    )
    p.add_argument("--e0-mode", dest="e0_mode", type=_e0_mode, default=None, help="h0, tail or a number.")
    p.add_argument(
        "--no-interaction",
        dest="no_interaction",
        action="store_true",
        help="Drop the electron-electron repulsion.",
    )
    p.add_argument("--output-dir", dest="output_dir", default=None, help="Directory for output files.")
    p.add_argument("--format", choices=cf.OUTPUT_FORMATS, default=None, help="Report file format.")
    return p


def _state_case_args(p):
    p.add_argument(
        "--state", choices=[s.value for s in cf_variational.State], default="singlet", help="[singlet]"
    )
    p.add_argument(
        "--case",
        choices=[c.value for c in cf_variational.OptimizationCase],
        default="fixed-z",
        help="[fixed-z]",
    )


def get_parser():
    """Return the cfhelium argument parser."""
    common = _common_parser()
    run = _run_parser()
    parser = argparse.ArgumentParser(
        prog="cfhelium", description="Correction-function energies of heliumlike ions."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", parents=[common, run], help="Solve one ion.")
    sp.add_argument("--ion", required=True, help="Ion label or Z (He, Li+, 3, ...).")
    _state_case_args(sp)

    sp = sub.add_parser("table", parents=[common, run], help="Compute the energy table.")
    sp.add_argument("--ions", default=None, help="Ions, csv-list or range, default all configured.")
    sp.add_argument("--states", default="singlet,triplet", help="csv-list [singlet,triplet]")
    sp.add_argument("--cases", default="fixed-z,equal,independent", help="csv-list [all]")
    sp.add_argument("--workers", type=int, default=None, help="Worker threads.")

    sp = sub.add_parser("curves", parents=[common, run], help="Export distribution curves.")
    sp.add_argument("--ions", required=True, help="Ions, csv-list.")
    _state_case_args(sp)

    sp = sub.add_parser("demo", parents=[common, run], help="Non-interacting excited states.")
    sp.add_argument("--z", type=int, default=1, help="Nuclear charge [1].")

    sp = sub.add_parser("sample", parents=[common], help="Sample a constant-potential surface.")
    sp.add_argument(
        "-n",
        dest="particles",
        type=int,
        choices=list(cf_sampler.SUPPORTED_N),
        default=2,
        help="Number of particles [2].",
    )
    sp.add_argument("-p", type=float, required=True, help="Surface parameter (1/p = potential).")
    sp.add_argument("--count", type=int, default=10, help="Number of configurations [10].")
    sp.add_argument("--seed", type=int, default=None, help="Generator seed.")
    sp.add_argument("--radius", type=float, default=1.0, help="Ball radius of particle 1 [1.0].")
    return parser


def build_config(args):
    """Read the configuration file and apply command-line overrides."""
    config = cf.read_config(args.cf_config_path)
    changes = {}
    for name in ("n", "p_max_times_z", "e0_mode", "output_dir", "format", "workers"):
        value = getattr(args, name, None)
        if value is not None:
            changes[name] = value
    if getattr(args, "no_interaction", False):
        changes["interaction"] = False
    return config.replace(**changes) if changes else config


def _output_path(config, filename):
    os.makedirs(config.output_dir, exist_ok=True)
    return os.path.join(config.output_dir, filename)


def _print_results(results, reference):
    headers = ["Ion", "State", "Case", "zeta1", "zeta2", "E", "E_HF", "E_CI", "E (eV)"]
    table_data = []
    for row in cf_variational.report_rows(results, reference):
        table_data.append(
            [
                row["ion"],
                row["state"],
                row["case"],
                cf_utils.format_energy(row["zeta1"], 6),
                cf_utils.format_energy(row["zeta2"], 6),
                cf_utils.format_energy(row["E"]) if row["error"] is None else f"failed: {row['error']}",
                cf_utils.format_energy(row["E_HF_ref"]),
                cf_utils.format_energy(row["E_CI_ref"]),
                cf_utils.format_energy(row["E_eV"], 3),
            ]
        )
    print(cf_utils.general_table_handler(headers, table_data))


def cmd_solve(args, config):
    Z = cf_utils.parse_ion(args.ion)
    config.check_charge(Z)
    result = cf_variational.optimize(Z, args.state, args.case, config=config)
    reference = cf_variational.load_reference_table()
    _print_results([result], reference)
    filename = _output_path(config, f"solve_Z{Z:02d}_{args.state}_{args.case}.{config.format}")
    cf_variational.write_report([result], filename, config.format, reference)
    print(f"Wrote {filename}")
    return EXIT_OK


def cmd_table(args, config):
    if args.ions is None:
        ions = list(range(config.z_range[0], config.z_range[1] + 1))
    else:
        ions = [cf_utils.parse_ion(ion) for ion in cf_utils.listify(args.ions)]
    for Z in ions:
        config.check_charge(Z)
    states = cf_utils.listify(args.states)
    cases = cf_utils.listify(args.cases)
    results = cf_variational.scan_table(ions, states, cases, config=config)
    reference = cf_variational.load_reference_table()
    _print_results(results, reference)
    filename = _output_path(config, f"table.{config.format}")
    cf_variational.write_report(results, filename, config.format, reference)
    charges = _output_path(config, "charges.csv")
    cf_variational.charges_table(results).to_csv(charges, index=False, float_format="%.10g")
    print(f"Wrote {filename} and {charges}")
    failed = [r for r in results if not r.ok]
    if failed:
        logger.error(f"{len(failed)} of {len(results)} cells failed.")
        return EXIT_NUMERICAL
    return EXIT_OK


CURVE_HEADERS = [
    "Ion",
    "E",
    "hole depth",
    "recovered",
    "max|chi-1|",
    "<r12>",
    "<r12> chi",
    "int chi s chi",
    "int hole",
    "file",
]


def cmd_curves(args, config):
    ions = [cf_utils.parse_ion(ion) for ion in cf_utils.listify(args.ions)]
    reference = cf_variational.load_reference_table()
    state = cf_variational.State(args.state)
    table_data = []
    for Z in ions:
        config.check_charge(Z)
        result = cf_variational.optimize(Z, state, args.case, config=config)
        table, solutions = cf_variational.solve_state(
            Z, state, result.zeta1, result.zeta2, config=config
        )
        dist = cf_observables.curves(table, solutions[0])
        filename = _output_path(config, f"curves_Z{Z:02d}_{args.state}_{args.case}.csv")
        dist.write_csv(filename)
        ref = reference.get((state, Z), {})
        summary = cf_observables.correlation_summary(
            table, solutions[0], hf=ref.get("hf"), ci=ref.get("ci")
        )
        if not summary["chi_monotone"]:
            logger.warning(f"{cf_utils.ion_label(Z)}: correction function is not monotone.")
        recovered = summary["correlation_recovery"]
        table_data.append(
            [
                cf_utils.ion_label(Z),
                cf_utils.format_energy(summary["energy"]),
                f"{summary['hole_depth']:.6g}",
                "-" if recovered is None else f"{recovered:.3f}",
                f"{summary['chi_deviation']:.4f}",
                f"{summary['r12_s']:.5f}",
                f"{summary['r12_chi']:.5f}",
                f"{summary['integral_chi_s_chi']:.10f}",
                f"{summary['integral_hole']:.3e}",
                filename,
            ]
        )
    print(cf_utils.general_table_handler(CURVE_HEADERS, table_data))
    return EXIT_OK


def cmd_demo(args, config):
    pairs = cf_observables.noninteracting_demo(args.z, config=config)
    headers = ["State", "Nodes", "E", "Exact H0"]
    table_data = [
        [
            sol.state_index,
            cf_chi.count_nodes(sol.chi),
            cf_utils.format_energy(sol.energy),
            cf_utils.format_energy(exact),
        ]
        for sol, exact in pairs
    ]
    print(cf_utils.general_table_handler(headers, table_data))
    return EXIT_OK


def cmd_sample(args, config):
    spec = cf_sampler.SurfaceSpec(args.particles, args.p)
    sample = cf_sampler.sample_surface(spec, args.count, seed=args.seed, radius=args.radius)
    sys.stdout.write(sample.to_json_lines())
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "table": cmd_table,
    "curves": cmd_curves,
    "demo": cmd_demo,
    "sample": cmd_sample,
}


def main(argv=None):
    """
    Run the command line.

    Parameters
    ----------
    argv : list of str or None
        Arguments, sys.argv[1:] if None.

    Returns
    -------
    int
        Exit status.

    """
    parser = get_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        cf_utils.set_verbosity(cf_utils.parse_verbosity(args.verbosity))
        config = build_config(args)
        return COMMANDS[args.command](args, config)
    except ValueError as e:
        print(f"cfhelium {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        print(f"cfhelium {args.command}: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
