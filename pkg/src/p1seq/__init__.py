"""Empirical diagnostics for prime divisors of increasing integer sequences."""

from .arith import Factorization, factorize, gcd, is_prime, nu
from .census import CensusReport, prime_census
from .errors import DomainError, IncompleteFactorizationError, ResourceError, ValidationError
from .gcd_diag import (
    BoundSequence,
    GcdHypothesisReport,
    IndexSet,
    PartitionReport,
    choose_M,
    delta_bound,
    index_set,
    partition_check,
    spacing_check,
    verify_gcd_hypothesis,
)
from .growth_diag import BoundCheckReport, GrowthReport, growth_statistic, smooth_lower_bound_check
from .sequences import SequencePrefix, SequenceSpec, materialize, validate_increasing
from .simplex_count import WeightVector, count_exact, count_upper_bound, poly_bound_constant
from .smooth import PrimeSet, count_smooth, enumerate_smooth, t_l

__version__ = "0.1.0"
