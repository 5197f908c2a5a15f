"""Exact and Monte Carlo analysis of the Ewens random walk on the symmetric group.

The walk multiplies by i.i.d. permutations drawn with probability proportional
to theta ** (number of cycles). Its eigenvalues are content products, so the
law after t steps, its total variation distance to uniform, and spectral
bounds are all computable from the character table of S_n.
"""

from .characters import CharacterTable, character, character_table, verify_character_table
from .config import Caps, caps
from .exceptions import DomainError, EwensWalkError, InvariantError, SizeError
from .mixing import (
    BoundsReport,
    ClassDistribution,
    best_chebyshev_lower_bound,
    cutoff_profile,
    ds_sum,
    ds_upper_bound,
    ewens_class_mass,
    ewens_class_probability,
    fixed_point_moments,
    matching_tail,
    total_variation_exact,
    walk_class_distribution,
)
from .partitions import Partition, conjugate, dimension, dominates, enumerate_partitions, hook_lengths
from .sampler import SeedSpec, empirical_statistic, empirical_tv_lower, sample_ewens, simulate_walk
from .spectrum import ThetaValue, eigenvalue, region_log_asymptote, spectrum

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "Caps",
    "CharacterTable",
    "ClassDistribution",
    "DomainError",
    "EwensWalkError",
    "InvariantError",
    "Partition",
    "SeedSpec",
    "SizeError",
    "ThetaValue",
    "best_chebyshev_lower_bound",
    "caps",
    "character",
    "character_table",
    "conjugate",
    "cutoff_profile",
    "dimension",
    "dominates",
    "ds_sum",
    "ds_upper_bound",
    "eigenvalue",
    "empirical_statistic",
    "empirical_tv_lower",
    "enumerate_partitions",
    "ewens_class_mass",
    "ewens_class_probability",
    "fixed_point_moments",
    "hook_lengths",
    "matching_tail",
    "region_log_asymptote",
    "sample_ewens",
    "simulate_walk",
    "spectrum",
    "total_variation_exact",
    "verify_character_table",
    "walk_class_distribution",
]
