"""The μ = 16 type-IV quaternion point over the forged degree-4 CM field."""

from fractions import Fraction

from .albert import AlbertDescriptor, HodgeAlgebra, LocalInvariant, Summand
from .fieldforge import forge
from .filtration import FiltrationProfile
from .starcheck import PointDescriptor

EXAMPLE_BETA = 2
EXAMPLE_PROFILE = (4, 0, 4, 0, 4, 0, 4)
ALTERNATIVE_PROFILE = (4, 0, 0, 8, 0, 0, 4)


def example_algebra(recipe=None):
    """Quaternion algebra over ``F`` with invariant 1/2 at the four designated places."""
    recipe = recipe or forge(EXAMPLE_BETA)
    invs = tuple(LocalInvariant(l, w, Fraction(1, 2)) for l, w in recipe.designated_places)
    desc = AlbertDescriptor("IV", recipe.field, 2, invs, cm_conjugation=recipe.sigma)
    return HodgeAlgebra((Summand(1, 16, desc),))


def example_point(profile=EXAMPLE_PROFILE, recipe=None):
    return PointDescriptor(mu=16, n=3, profile=FiltrationProfile(3, tuple(profile)),
                           algebra=example_algebra(recipe))
