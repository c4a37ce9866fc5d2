"""Numerical verification of the Grauert tube over the genus-2 bidisk quotient.

Thin wrapper around the C++ core. The heavy lifting (check suites, Monte
Carlo, quadrature) lives in the compiled module; see ``run_suite_json`` for
the same reports the CLI emits.
"""

from ._gtube import (
    core_distance,
    delta,
    df_exponent_estimate,
    df_levi,
    domain_area,
    levi,
    level_integral,
    octagon_stats,
    reduce,
    rho,
    run_suite_json,
    suite_names,
    tv_distance,
)

__all__ = [
    "core_distance",
    "delta",
    "df_exponent_estimate",
    "df_levi",
    "domain_area",
    "levi",
    "level_integral",
    "octagon_stats",
    "reduce",
    "rho",
    "run_suite_json",
    "suite_names",
    "tv_distance",
]

__version__ = "0.1.0"
