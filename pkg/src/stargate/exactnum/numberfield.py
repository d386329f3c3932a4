"""Number fields given by a monic irreducible integer polynomial.

Places above a rational prime ``l`` are indexed by the canonical order of
the irreducible factors of the minimal polynomial mod ``l`` (see
:func:`stargate.exactnum.gfp.canonical_key`).  At primes dividing the
polynomial discriminant the factor data only describe the order
``Z[x]/(f)``, so such splittings are reported with ``certified=False``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import isqrt

from ..errors import ArgumentError, PreconditionError
from . import gfp, poly
from .linalg import nullspace, transpose
from .primes import is_prime, next_prime, primes_up_to

MAX_DEGREE = 12


@dataclass(frozen=True)
class NumberField:
    """``Q[x]/(min_poly)`` for a monic irreducible ``min_poly`` of degree at most 12."""

    min_poly: tuple

    def __post_init__(self):
        f = tuple(int(c) for c in poly.trim(self.min_poly))
        object.__setattr__(self, "min_poly", f)
        if len(f) < 2:
            raise ArgumentError("minimal polynomial must have positive degree")
        if f[-1] != 1:
            raise ArgumentError(f"minimal polynomial must be monic, got leading coefficient {f[-1]}")
        if len(f) - 1 > MAX_DEGREE:
            raise ArgumentError(f"degree {len(f) - 1} exceeds the supported maximum {MAX_DEGREE}")
        if not is_irreducible_q(f):
            raise ArgumentError(f"{list(f)} is reducible over Q")

    @property
    def degree(self):
        return len(self.min_poly) - 1

    @property
    def discriminant(self):
        return _discriminant(self.min_poly)

    def to_json(self):
        return {"min_poly": list(self.min_poly)}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["min_poly"]))


@lru_cache(maxsize=1024)
def _discriminant(f):
    return poly.discriminant(list(f))


@dataclass(frozen=True)
class Place:
    residue_degree: int
    ramification_index: int
    factor: tuple

    @property
    def local_degree(self):
        return self.residue_degree * self.ramification_index


@dataclass(frozen=True)
class SplittingType:
    prime: int
    places: tuple
    certified: bool

    @property
    def is_inert(self):
        return self.certified and len(self.places) == 1 and self.places[0].ramification_index == 1

    def to_json(self):
        return {
            "prime": self.prime,
            "certified": self.certified,
            "places": [
                {"f": w.residue_degree, "e": w.ramification_index, "factor": list(w.factor)}
                for w in self.places
            ],
        }


# ---------------------------------------------------------------- irreducibility

def _possible_degrees(degrees):
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _symmetric_lift(c, m):
    return [x - m if x > m // 2 else x for x in c]


def is_irreducible_q(f):
    """Deterministic irreducibility test for a monic integer polynomial.

    Rational roots and modular degree patterns settle most inputs; the rest
    are factored modulo one prime larger than twice a Mignotte-type bound on
    the coefficients of any integer factor, and all products of modular
    factors are tried directly (no Hensel lifting is needed at that size).
    """
    f = list(f)
    n = len(f) - 1
    if n == 1:
        return True
    if f[0] == 0:
        return False
    disc = poly.discriminant(f)
    if disc == 0:
        return False
    if abs(f[0]) <= 10 ** 6:
        for r in _divisors(abs(f[0])):
            if poly.evaluate(f, r) == 0 or poly.evaluate(f, -r) == 0:
                return False
    allowed = set(range(n + 1))
    for p in primes_up_to(400):
        if disc % p == 0:
            continue
        degrees = [len(g) - 1 for g, _ in gfp.factor_mod_p(f, p)]
        allowed &= _possible_degrees(degrees)
        if allowed == {0, n}:
            return True
    return not _has_integer_factor(f)


def _divisors(m):
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def _has_integer_factor(f):
    n = len(f) - 1
    norm2 = sum(c * c for c in f)
    bound = 2 ** n * (isqrt(norm2) + 1)
    p = next_prime(2 * bound)
    while gfp.gcd(gfp.reduce(f, p), gfp.derivative(gfp.reduce(f, p), p), p) != [1]:
        p = next_prime(p)
    factors = [g for g, _ in gfp.factor_mod_p(f, p)]
    for k in range(1, len(factors) // 2 + 1):
        for subset in combinations(factors, k):
            g = [1]
            for h in subset:
                g = gfp.mul(g, h, p)
            candidate = _symmetric_lift(g, p)
            if poly.divides_z(candidate, f):
                return True
    return False


# ------------------------------------------------------------------- splitting

@lru_cache(maxsize=8192)
def _splitting(f, l):
    factors = gfp.factor_mod_p(list(f), l)
    certified = _discriminant(f) % l != 0
    places = tuple(
        Place(residue_degree=len(g) - 1, ramification_index=k, factor=tuple(g))
        for g, k in factors
    )
    return SplittingType(prime=l, places=places, certified=certified)


def splitting_type(field, l):
    """Decomposition of the rational prime ``l`` in ``field``.

    >>> [(w.residue_degree, w.ramification_index) for w in splitting_type(NumberField((1, 0, 1)), 5).places]
    [(1, 1), (1, 1)]
    """
    if not is_prime(l):
        raise ArgumentError(f"{l} is not prime")
    return _splitting(field.min_poly, l)


def real_embedding_count(field):
    return poly.count_real_roots(list(field.min_poly))


# -------------------------------------------------------------- automorphisms

def _as_fractions(sigma):
    return [Fraction(c) for c in poly.trim([Fraction(c) for c in sigma])]


def check_automorphism(field, sigma):
    """Raise :class:`ArgumentError` unless ``x -> sigma(x)`` is an order-<=2 automorphism."""
    f = list(field.min_poly)
    s = _as_fractions(sigma)
    if poly.rem_q(poly.compose(f, s), f):
        raise ArgumentError("sigma(alpha) is not a root of the minimal polynomial")
    if poly.rem_q(poly.sub(poly.compose(s, s), [0, 1]), f):
        raise ArgumentError("sigma does not square to the identity")


def automorphism_matrix(field, sigma):
    """Matrix of ``sigma`` on the power basis ``1, alpha, ..., alpha^(d-1)`` (columns = images)."""
    f = list(field.min_poly)
    s = _as_fractions(sigma)
    d = field.degree
    cols = []
    img = [Fraction(1)]
    for _ in range(d):
        cols.append([img[i] if i < len(img) else Fraction(0) for i in range(d)])
        img = poly.rem_q(poly.mul(img, s), f)
    return transpose(cols)


def fixed_field_degree(field, sigma):
    m = automorphism_matrix(field, sigma)
    shifted = [[x - (1 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(m)]
    return len(nullspace(shifted))


def conjugation_action_on_places(field, sigma, l):
    """Permutation of the places above ``l`` induced by the automorphism ``sigma``.

    Returns ``(perm, certified)`` where ``perm[w]`` is the index of the place
    whose factor ``g`` satisfies ``g(sigma(x)) = 0 mod (g_w, l)``.
    """
    check_automorphism(field, sigma)
    split = splitting_type(field, l)
    s = gfp.reduce(_as_fractions(sigma), l)
    perm = []
    for w in split.places:
        gw = list(w.factor)
        targets = [
            j for j, u in enumerate(split.places)
            if not gfp.compose_mod(list(u.factor), s, gw, l)
        ]
        if len(targets) != 1:
            raise PreconditionError(f"sigma does not act on the places above {l}", witness=targets)
        perm.append(targets[0])
    return tuple(perm), split.certified
