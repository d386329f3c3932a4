"""Exact rational, polynomial, finite-field and number-field arithmetic."""

from .gfp import factor_mod_p
from .numberfield import (
    NumberField,
    Place,
    SplittingType,
    conjugation_action_on_places,
    real_embedding_count,
    splitting_type,
)
from .primes import is_prime, primes_up_to

__all__ = [
    "NumberField",
    "Place",
    "SplittingType",
    "conjugation_action_on_places",
    "factor_mod_p",
    "is_prime",
    "primes_up_to",
    "real_embedding_count",
    "splitting_type",
]
