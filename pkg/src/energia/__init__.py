"""Exact computation and verification toolkit for additive energies of
polynomial images over residue rings."""

from .bounds import (
    BoundParams,
    alpha_beta,
    fourth_moment_bound,
    fourth_moment_crossover,
    hybrid_count_bound,
    interval_energy_bound,
)
from .charsum import (
    AdmissibleRecord,
    BilinearInstance,
    CharTable,
    RegimeParams,
    admissible_exponents,
    bilinear_energy_bound,
    bilinear_W,
    char_eval,
    complete_sum_poly,
    prime_bilinear_sum,
    xi_threshold,
)
from .energy import (
    EnergyReport,
    RepFunction,
    energy_cross,
    energy_plus,
    energy_report,
    energy_T,
    energy_times,
    rep_function,
    set_energy_plus,
    set_energy_times,
    sumset_size,
)
from .eqcount import (
    EqCountResult,
    PipelineCertificate,
    brute_congruence,
    count_congruence,
    count_eq,
    count_symmetric_eq,
    in_regime,
    regime_constant,
)
from .lattice import (
    DualBody,
    IntLattice,
    MinimaProfile,
    UnsupportedSize,
    WeightedBox,
    bv_small_solutions,
    congruence_lattice,
    count_lattice_points,
    dual_lattice,
    fractional_measure,
    mahler_basis,
    minkowski_check,
    point_count_record,
    successive_minima,
    transference_check,
)
from .ring import BudgetExceeded, DomainError, Interval, PolyMod
from .sweep import SweepConfig, parse_config, run_cell, run_sweep
from .vinogradov import PowerSumVector, SystemCount, check_J_bound, count_I, count_J, count_Ts

__version__ = "0.1.0"

__all__ = [
    "AdmissibleRecord",
    "BilinearInstance",
    "BoundParams",
    "BudgetExceeded",
    "CharTable",
    "DomainError",
    "DualBody",
    "EnergyReport",
    "EqCountResult",
    "IntLattice",
    "Interval",
    "MinimaProfile",
    "PipelineCertificate",
    "PolyMod",
    "PowerSumVector",
    "RegimeParams",
    "RepFunction",
    "SweepConfig",
    "SystemCount",
    "UnsupportedSize",
    "WeightedBox",
    "admissible_exponents",
    "alpha_beta",
    "bilinear_W",
    "bilinear_energy_bound",
    "brute_congruence",
    "bv_small_solutions",
    "char_eval",
    "check_J_bound",
    "complete_sum_poly",
    "congruence_lattice",
    "count_I",
    "count_J",
    "count_Ts",
    "count_congruence",
    "count_eq",
    "count_lattice_points",
    "count_symmetric_eq",
    "dual_lattice",
    "energy_T",
    "energy_cross",
    "energy_plus",
    "energy_report",
    "energy_times",
    "fourth_moment_bound",
    "fourth_moment_crossover",
    "fractional_measure",
    "hybrid_count_bound",
    "in_regime",
    "interval_energy_bound",
    "mahler_basis",
    "minkowski_check",
    "parse_config",
    "point_count_record",
    "prime_bilinear_sum",
    "regime_constant",
    "rep_function",
    "run_cell",
    "run_sweep",
    "set_energy_plus",
    "set_energy_times",
    "successive_minima",
    "sumset_size",
    "transference_check",
    "xi_threshold",
]
