"""Exact Ehrhart data and certified triangulations of s-lecture hall simplices."""

from .errors import CapExceededError, DomainError, NotCoverableError
from .exact_core import QPoly, binom_poly, falling_factorial, interpolate, linear_feasible, rat_str, solve_affine
from .lecture_hall import (
    asc,
    count_lattice_points,
    ehrhart,
    ehrhart_by_interpolation,
    ehrhart_from_hstar,
    hstar,
    hstar_constant,
    hstar_recursive,
    inversion_sequences,
    s_eulerian,
)
from .nonpositivity import beta, ehrhart_near_constant, leading_coeff_in_a, small_n_positivity

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "DomainError",
    "NotCoverableError",
    "QPoly",
    "asc",
    "beta",
    "binom_poly",
    "count_lattice_points",
    "ehrhart",
    "ehrhart_by_interpolation",
    "ehrhart_from_hstar",
    "ehrhart_near_constant",
    "falling_factorial",
    "hstar",
    "hstar_constant",
    "hstar_recursive",
    "interpolate",
    "inversion_sequences",
    "leading_coeff_in_a",
    "linear_feasible",
    "rat_str",
    "s_eulerian",
    "small_n_positivity",
    "solve_affine",
]
