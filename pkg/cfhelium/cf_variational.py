# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Variational effective charges.

The lowest correction-function eigenvalue is a function of the two orbital charges.
It is evaluated at the hydrogenic charges (fixed-z), minimized along the diagonal
zeta1 = zeta2 with a golden-section search (equal), and minimized over both charges
with Nelder-Mead (independent).
"""

import dataclasses
import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import optimize as sopt

from . import logger
from .cf import RunConfig, file_finder
from .cf_chi import Interaction, solve_lowest
from .cf_exceptions import BoundaryConditionError, InvalidSpecError, OptimizationError
from .cf_orbitals import OrbitalKind, OrbitalSpec, PairAnsatz, Symmetry
from .cf_surface import PGrid, compute_coefficients
from .cf_utils import hartree_to_ev, ion_label

REFERENCE_FILE = "table_reference.json"
SIMPLEX_STEP = 0.1
BRACKET_STEP = 0.1
# initial screening estimate of the singlet charge is Z - 5/16
SCREENING = 5.0 / 16.0


class State(enum.Enum):
    """Two-electron states treated by the solver."""

    SINGLET = "singlet"
    TRIPLET = "triplet"

    @property
    def label(self):
        return "1^1S_0" if self is State.SINGLET else "2^3S_1"

    @property
    def symmetry(self):
        return Symmetry.SINGLET if self is State.SINGLET else Symmetry.TRIPLET

    @property
    def cases(self):
        """Optimization cases defined for this state, in nesting order."""
        if self is State.SINGLET:
            return (OptimizationCase.FIXED_Z, OptimizationCase.EQUAL, OptimizationCase.INDEPENDENT)
        return (OptimizationCase.FIXED_Z, OptimizationCase.INDEPENDENT)

    @property
    def first_charge(self):
        """Lowest nuclear charge the state is bound for in the table."""
        return 1 if self is State.SINGLET else 2


class OptimizationCase(enum.Enum):
    """Which charges are varied."""

    FIXED_Z = "fixed-z"
    EQUAL = "equal"
    INDEPENDENT = "independent"


@dataclasses.dataclass(frozen=True)
class IonResult:
    """
    Outcome of one (ion, state, case) calculation.

    Parameters
    ----------
    Z : int
        Nuclear charge.
    state : State
        Singlet or triplet.
    case : OptimizationCase
        Optimization case.
    zeta1, zeta2 : float
        Charges of the first (1s) and second (1s or 2s) orbital.
    energy : float
        Energy in Hartree, nan for a failed calculation.
    evaluations : int
        Number of energy evaluations used.
    error : str or None
        Failure message, None on success.

    """

    Z: int
    state: State
    case: OptimizationCase
    zeta1: float
    zeta2: float
    energy: float
    evaluations: int = 1
    error: str = None

    @property
    def ok(self):
        return self.error is None and math.isfinite(self.energy)

    @property
    def ion(self):
        return ion_label(self.Z)

    def to_dict(self):
        return {
            "Z": self.Z,
            "ion": self.ion,
            "state": self.state.value,
            "case": self.case.value,
            "zeta1": self.zeta1,
            "zeta2": self.zeta2,
            "E": self.energy,
            "evaluations": self.evaluations,
            "error": self.error,
        }


def _as_state(state):
    try:
        return State(state)
    except ValueError:
        raise InvalidSpecError(f"Unknown state {state!r}; use one of {[s.value for s in State]}")


def _as_case(case):
    try:
        return OptimizationCase(case)
    except ValueError:
        raise InvalidSpecError(
            f"Unknown case {case!r}; use one of {[c.value for c in OptimizationCase]}"
        )


def build_ansatz(Z, state, zeta1, zeta2):
    """
    Return the pair function of a state.

    The singlet is the symmetrized 1s(zeta1) 1s(zeta2) product, the triplet the
    antisymmetrized 1s(zeta1) 2s(zeta2) product.
    """
    state = _as_state(state)
    second = OrbitalKind.ONE_S if state is State.SINGLET else OrbitalKind.TWO_S
    return PairAnsatz(
        orb1=OrbitalSpec(OrbitalKind.ONE_S, zeta1),
        orb2=OrbitalSpec(second, zeta2),
        symmetry=state.symmetry,
        nuclear_charge=Z,
    )


def solve_state(Z, state, zeta1, zeta2, config=None, k=1, e0_mode=None):
    """
    Run the full pipeline for one set of charges.

    Parameters
    ----------
    Z : int
        Nuclear charge.
    state : State or str
        Singlet or triplet.
    zeta1, zeta2 : float
        Orbital charges.
    config : RunConfig or None
        Grid, tolerances and interaction switch.
    k : int
        Number of correction-function states.
    e0_mode : str, float or None
        Overrides config.e0_mode.

    Returns
    -------
    tuple
        (CoefficientTable, list of ChiSolution)

    """
    if config is None:
        config = RunConfig()
    if e0_mode is None:
        e0_mode = config.e0_mode
    ansatz = build_ansatz(Z, state, zeta1, zeta2)
    grid = PGrid.for_charge(Z, config.p_max_times_z, config.n)
    table = compute_coefficients(ansatz, grid, rtol=config.quadrature_tol)
    if e0_mode != "h0":
        table = table.with_e0(e0_mode)
    interaction = Interaction.ON if config.interaction else Interaction.OFF
    solutions = solve_lowest(
        table,
        Z,
        k=k,
        interaction=interaction,
        tol=config.bc_tol,
        max_iterations=config.bc_max_iterations,
    )
    return table, solutions


def energy_of_charges(Z, state, zeta1, zeta2, config=None, e0_mode=None):
    """Return the lowest correction-function energy (Hartree) for the given charges."""
    return solve_state(Z, state, zeta1, zeta2, config=config, k=1, e0_mode=e0_mode)[1][0].energy


class _Objective:
    """Counted energy evaluations that remember the best point."""

    def __init__(self, Z, state, case, config):
        self.Z = Z
        self.state = state
        self.case = case
        self.config = config
        self.evaluations = 0
        self.best = None
        self.cache = {}

    def __call__(self, zeta1, zeta2):
        key = (float(zeta1), float(zeta2))
        if key in self.cache:
            return self.cache[key]
        if self.evaluations >= self.config.optimizer_max_evaluations:
            raise OptimizationError(
                f"Optimization for Z={self.Z} {self.state.value} exceeded "
                f"{self.config.optimizer_max_evaluations} evaluations",
                best=self._best_result(),
            )
        self.evaluations += 1
        energy = self._energy(*key)
        self.cache[key] = energy
        logger.debug(f"Z={self.Z} {self.state.value} zeta=({key[0]:.7f}, {key[1]:.7f}) E={energy:.10f}")
        if math.isfinite(energy) and (self.best is None or energy < self.best[2]):
            self.best = (key[0], key[1], energy)
        return energy

    def _best_result(self):
        if self.best is None:
            return None
        zeta1, zeta2, energy = self.best
        return IonResult(self.Z, self.state, self.case, zeta1, zeta2, energy, evaluations=self.evaluations)

    def _energy(self, zeta1, zeta2):
        if zeta1 <= 0.0 or zeta2 <= 0.0:
            return math.inf
        try:
            return energy_of_charges(self.Z, self.state, zeta1, zeta2, config=self.config)
        except InvalidSpecError:
            return math.inf
        except BoundaryConditionError as e:
            if self.config.e0_mode == "tail":
                logger.warning(f"Discarding trial charges ({zeta1:.6f}, {zeta2:.6f}): {e}")
                return math.inf
            logger.warning(
                f"Boundary fold failed at ({zeta1:.6f}, {zeta2:.6f}), retrying with the h tail as E0."
            )
        try:
            return energy_of_charges(self.Z, self.state, zeta1, zeta2, config=self.config, e0_mode="tail")
        except BoundaryConditionError as e:
            logger.warning(f"Discarding trial charges ({zeta1:.6f}, {zeta2:.6f}): {e}")
            return math.inf


def _bracket(f, center, step=BRACKET_STEP, max_steps=50):
    """Walk downhill from center until (a, b, c) with f(b) below f(a) and f(c)."""
    a, b, c = center - step, center, center + step
    fa, fb, fc = f(a), f(b), f(c)
    for _ in range(max_steps):
        if fb < fa and fb < fc:
            return a, b, c
        if fa <= fc:
            a, b, c = a - step, a, b
            fa, fb, fc = f(a), fa, fb
        else:
            a, b, c = b, c, c + step
            fa, fb, fc = fb, fc, f(c)
    raise OptimizationError(f"Could not bracket the minimum around zeta={center}")


def _initial_charges(Z, state, case, seed):
    if seed is not None and seed.ok:
        return seed.zeta1, seed.zeta2
    if state is State.TRIPLET:
        return float(Z), Z - 0.5
    zeta0 = Z - SCREENING
    return zeta0, zeta0


def optimize(Z, state, case, config=None, seed=None):
    """
    Minimize the energy over the charges allowed by an optimization case.

    Without a seed the search starts from the screened charges Z - 5/16 (singlet)
    or (Z, Z - 1/2) (triplet).  scan_table seeds every case after the first with
    the preceding result, so those starting charges only enter its first
    optimized case of each ion.

    Parameters
    ----------
    Z : int
        Nuclear charge.
    state : State or str
        Singlet or triplet.
    case : OptimizationCase or str
        fixed-z, equal (singlet only) or independent.
    config : RunConfig or None
        Numerical settings; the optimizer tolerances and evaluation cap come from here.
    seed : IonResult or None
        Result of the preceding, more constrained case.  Its charges start the search
        and it is returned instead when the search does not improve on it, so the
        energies of nested cases are ordered.

    Returns
    -------
    IonResult

    Raises
    ------
    OptimizationError
        If the evaluation cap is exceeded; the best point found is attached.

    """
    if config is None:
        config = RunConfig()
    state = _as_state(state)
    case = _as_case(case)
    config.check_charge(Z)
    if case not in state.cases:
        raise InvalidSpecError(f"Case {case.value} is not defined for the {state.value} state.")

    if case is OptimizationCase.FIXED_Z:
        energy = energy_of_charges(Z, state, float(Z), float(Z), config=config)
        result = IonResult(Z, state, case, float(Z), float(Z), energy, evaluations=1)
        logger.info(f"{ion_label(Z)} {state.label} {case.value}: E={energy:.8f}")
        return result

    objective = _Objective(Z, state, case, config)
    start = _initial_charges(Z, state, case, seed)
    if case is OptimizationCase.EQUAL:
        def along_diagonal(zeta):
            return objective(zeta, zeta)

        bracket = _bracket(along_diagonal, start[0])
        res = sopt.minimize_scalar(
            along_diagonal,
            bracket=bracket,
            method="golden",
            options={"xtol": config.optimizer_zeta_tol / (2.0 * abs(bracket[1]))},
        )
        zeta1 = zeta2 = float(res.x)
        energy = float(res.fun)
    else:
        x0 = np.array(start, dtype=float)
        simplex = np.array([x0, x0 + [SIMPLEX_STEP, 0.0], x0 + [0.0, SIMPLEX_STEP]])
        res = sopt.minimize(
            lambda x: objective(x[0], x[1]),
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": config.optimizer_zeta_tol,
                "fatol": config.optimizer_energy_tol,
                "maxfev": 10 * config.optimizer_max_evaluations,
                "maxiter": 10 * config.optimizer_max_evaluations,
            },
        )
        zeta1, zeta2 = (float(v) for v in res.x)
        energy = float(res.fun)

    if objective.best is not None and objective.best[2] < energy:
        zeta1, zeta2, energy = objective.best
    if state is State.SINGLET and zeta2 > zeta1:
        zeta1, zeta2 = zeta2, zeta1
    if not math.isfinite(energy):
        raise OptimizationError(f"No finite energy found for Z={Z} {state.value} {case.value}")
    result = IonResult(Z, state, case, zeta1, zeta2, energy, evaluations=objective.evaluations)
    if seed is not None and seed.ok and seed.energy < result.energy:
        logger.info(f"{ion_label(Z)} {case.value} search did not improve on {seed.case.value}, keeping it.")
        result = dataclasses.replace(result, zeta1=seed.zeta1, zeta2=seed.zeta2, energy=seed.energy)
    logger.info(
        f"{ion_label(Z)} {state.label} {case.value}: E={result.energy:.8f} "
        f"zeta=({result.zeta1:.6f}, {result.zeta2:.6f}) after {result.evaluations} evaluations"
    )
    return result


def _failed(Z, state, case, error):
    logger.error(f"{ion_label(Z)} {state.label} {case.value} failed: {error}")
    return IonResult(Z, state, case, math.nan, math.nan, math.nan, evaluations=0, error=str(error))


def _scan_chain(Z, state, cases, config):
    """Run the cases of one (ion, state) in nesting order, each seeding the next."""
    results = {}
    seed = None
    for case in state.cases:
        if case not in cases:
            continue
        try:
            result = optimize(Z, state, case, config=config, seed=seed)
        except (RuntimeError, ValueError) as e:
            result = _failed(Z, state, case, e)
        results[case] = result
        seed = result if result.ok else seed
    return [results[case] for case in cases if case in results]


def scan_table(ions, states=None, cases=None, config=None):
    """
    Compute energies for every combination of ion, state and case.

    Parameters
    ----------
    ions : list of int
        Nuclear charges.
    states : list of State or str, or None
        Defaults to both states.  Triplet rows start at Z=2.
    cases : list of OptimizationCase or str, or None
        Defaults to every case; cases undefined for a state are skipped.
    config : RunConfig or None
        Numerical settings; config.workers threads process (ion, state) pairs.

    Returns
    -------
    list of IonResult
        Ordered by state, then ion, then case.  Failures carry energy nan and the
        error message.

    """
    if config is None:
        config = RunConfig()
    states = [_as_state(s) for s in (states or list(State))]
    cases = [_as_case(c) for c in (cases or list(OptimizationCase))]
    jobs = [
        (Z, state, [c for c in cases if c in state.cases])
        for state in states
        for Z in ions
        if Z >= state.first_charge
    ]
    jobs = [job for job in jobs if job[2]]
    if not jobs:
        return []
    logger.info(f"Scanning {len(jobs)} ion/state combinations with {config.workers} workers")
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            chains = list(pool.map(lambda job: _scan_chain(*job, config), jobs))
    else:
        chains = [_scan_chain(*job, config) for job in jobs]
    return [result for chain in chains for result in chain]


def load_reference_table(filename=REFERENCE_FILE):
    """
    Read the bundled HF, CI and published energies.

    Returns
    -------
    dict
        {(State, Z): {"hf": float or None, "ci": float, "published": {OptimizationCase: float}}}

    """
    path = file_finder(filename)
    if path is None:
        raise InvalidSpecError(f"Reference file {filename!r} not found.")
    with open(path) as fp:
        raw = json.load(fp)
    reference = {}
    for state in State:
        for z_str, entry in raw.get(state.value, {}).items():
            reference[(state, int(z_str))] = {
                "hf": entry.get("hf"),
                "ci": entry.get("ci"),
                "published": {OptimizationCase(k): v for k, v in entry.get("published", {}).items()},
            }
    return reference


def report_rows(results, reference=None):
    """
    Flatten results into report rows with reference energies and deltas.

    Column order: Z, state, case, zeta1, zeta2, E, E_HF_ref, E_CI_ref, then ion,
    E_eV, E_published, dE_HF, dE_CI, evaluations, error.
    """
    if reference is None:
        reference = load_reference_table()
    rows = []
    for res in results:
        ref = reference.get((res.state, res.Z), {})
        hf = ref.get("hf")
        ci = ref.get("ci")
        published = ref.get("published", {}).get(res.case)
        rows.append(
            {
                "Z": res.Z,
                "state": res.state.value,
                "case": res.case.value,
                "zeta1": res.zeta1,
                "zeta2": res.zeta2,
                "E": res.energy,
                "E_HF_ref": hf,
                "E_CI_ref": ci,
                "ion": res.ion,
                "E_eV": float(hartree_to_ev(res.energy)),
                "E_published": published,
                "dE_HF": None if hf is None else res.energy - hf,
                "dE_CI": None if ci is None else res.energy - ci,
                "evaluations": res.evaluations,
                "error": res.error,
            }
        )
    return rows


def write_report(results, filename, output_format="csv", reference=None):
    """Write report rows as CSV (pandas) or as a JSON array."""
    rows = report_rows(results, reference)
    if output_format == "json":
        with open(filename, "w", encoding="utf-8") as fp:
            json.dump([_json_safe(row) for row in rows], fp, indent=4)
    else:
        import pandas

        pandas.DataFrame(rows, columns=list(rows[0]) if rows else None).to_csv(
            filename, index=False, float_format="%.10g"
        )
    logger.info(f"Wrote {len(rows)} rows to {filename}")
    return filename


def _json_safe(row):
    return {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in row.items()}


def charges_table(results):
    """Return a DataFrame of the optimized charges (Z, state, case, zeta1, zeta2)."""
    import pandas

    return pandas.DataFrame(
        [
            {"Z": r.Z, "state": r.state.value, "case": r.case.value, "zeta1": r.zeta1, "zeta2": r.zeta2}
            for r in results
            if r.ok
        ],
        columns=["Z", "state", "case", "zeta1", "zeta2"],
    )
