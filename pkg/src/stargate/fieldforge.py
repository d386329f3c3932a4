"""Cyclic totally real fields from Gaussian periods and their CM extensions.

For a prime ``p = 1 mod 2*beta`` the degree-``beta`` subfield ``F0`` of
``Q(zeta_p)`` is generated by a Gaussian period.  Adjoining ``sqrt(-q)``
for a suitable prime ``q`` gives a CM field ``F`` in which two primes
``l1, l2`` that are inert in ``F0`` split into two conjugate places each.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath

from .albert import validate_albert
from .errors import ArgumentError, InvariantError, NotFoundError, PreconditionError
from .exactnum import linalg as la
from .exactnum import poly
from .exactnum.numberfield import (NumberField, conjugation_action_on_places, is_irreducible_q,
                                   real_embedding_count, splitting_type)
from .exactnum.primes import is_prime, primes_up_to

PRIME_SCAN_LIMIT = 10 ** 6
DEFAULT_PRECISION_BITS = 200


def find_prime_mod(beta):
    """Smallest prime ``p`` with ``p = 1 mod 2*beta``."""
    if beta < 1:
        raise ArgumentError("beta must be positive")
    for p in range(2 * beta + 1, PRIME_SCAN_LIMIT, 2 * beta):
        if is_prime(p):
            return p
    raise NotFoundError(f"no prime = 1 mod {2 * beta} below {PRIME_SCAN_LIMIT}")


def _primitive_root(p):
    factors = [q for q in primes_up_to(isqrt(p - 1) + 1) if (p - 1) % q == 0]
    rest = p - 1
    for q in factors:
        while rest % q == 0:
            rest //= q
    if rest > 1:
        factors.append(rest)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise InvariantError(f"no primitive root mod {p}")


def _precision_bits():
    raw = os.environ.get("STARGATE_PRECISION_BITS")
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ArgumentError(f"STARGATE_PRECISION_BITS must be an integer, got {raw!r}") from exc
    if bits < 53:
        raise ArgumentError("STARGATE_PRECISION_BITS must be at least 53")
    return bits


def _period_polynomial(p, beta, bits):
    g = _primitive_root(p)
    k = (p - 1) // beta
    with mpmath.workprec(bits):
        periods = []
        for i in range(beta):
            s = mpmath.mpf(0)
            for j in range(k):
                e = pow(g, i + beta * j, p)
                s += mpmath.cos(2 * mpmath.pi * e / p)
            periods.append(s)  # the sine parts cancel because -1 lies in the subgroup
        coeffs = [mpmath.mpf(1)]
        for eta in periods:
            coeffs = [(coeffs[i - 1] if i else 0) - eta * (coeffs[i] if i < len(coeffs) else 0)
                      for i in range(len(coeffs) + 1)]
        rounded = [int(mpmath.nint(c)) for c in coeffs]
        err = max(abs(c - r) for c, r in zip(coeffs, rounded))
        tolerance = mpmath.mpf(2) ** (-bits // 2)
    return rounded, err < tolerance


def _square_part(n):
    r = isqrt(n)
    return r if r * r == n else None


def verify_period_polynomial(f, p, beta):
    """Reasons why ``f`` fails to define the cyclic degree-``beta`` subfield of ``Q(zeta_p)``."""
    problems = []
    if len(f) - 1 != beta or f[-1] != 1:
        problems.append("wrong degree or not monic")
        return problems
    if not is_irreducible_q(f):
        problems.append("reducible")
        return problems
    if poly.count_real_roots(f) != beta:
        problems.append("not totally real")
    if beta > 1:
        disc = abs(poly.discriminant(f))
        if disc % p ** (beta - 1) or _square_part(disc // p ** (beta - 1)) is None:
            problems.append(f"discriminant {disc} is not p^(beta-1) times a square")
    return problems


def gaussian_period_field(p, beta):
    """Minimal polynomial of the degree-``beta`` Gaussian period for ``p``.

    >>> gaussian_period_field(5, 2).min_poly
    (-1, 1, 1)
    """
    if not is_prime(p) or p % (2 * beta) != 1:
        raise ArgumentError(f"need a prime p = 1 mod {2 * beta}, got {p}")
    bits = _precision_bits()
    for attempt in (bits, 2 * bits):
        f, close = _period_polynomial(p, beta, attempt)
        if close and not verify_period_polynomial(f, p, beta):
            return NumberField(tuple(f))
    raise InvariantError(f"period polynomial for p={p}, beta={beta} failed verification at {2 * bits} bits")


def inert_primes(f0, bound):
    """Certified primes ``l <= bound`` with a single unramified place of full degree."""
    out = []
    for l in primes_up_to(bound):
        split = splitting_type(f0, l)
        if split.is_inert:
            out.append(l)
    return out


# ------------------------------------------------------------- CM compositum

def _generator_shift(q):
    """``(c, d)`` with generator ``eta + c + d sqrt(-q)``; integral basis of ``Z[(1+sqrt(-q))/2]`` when ``q = 3 mod 4``."""
    return (Fraction(1, 2), Fraction(1, 2)) if q % 4 == 3 else (Fraction(0), Fraction(1))


def _qt_mul(a, b, q):
    """Multiply ``a0 + a1 t`` and ``b0 + b1 t`` in ``Q[t]/(t^2 + q)``."""
    return (a[0] * b[0] - q * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _qt_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def compositum_polynomial(f0, q):
    """Minimal polynomial of the canonical generator ``eta + c + d sqrt(-q)`` of ``F0(sqrt(-q))``.

    Computed as the norm of ``f0(x - c - d t)`` from ``Q[t]/(t^2 + q)``.
    """
    c, d = _generator_shift(q)
    shift = (-c, -d)
    shifted = [(Fraction(0), Fraction(0))]
    for coeff in reversed(f0.min_poly):
        # shifted = shifted * (x + shift) + coeff
        out = [(Fraction(0), Fraction(0))] * (len(shifted) + 1)
        for i, a in enumerate(shifted):
            out[i + 1] = _qt_add(out[i + 1], a)
            out[i] = _qt_add(out[i], _qt_mul(a, shift, q))
        out[0] = _qt_add(out[0], (Fraction(coeff), Fraction(0)))
        shifted = out
    conj = [(a, -b) for a, b in shifted]
    prod = [(Fraction(0), Fraction(0))] * (len(shifted) + len(conj) - 1)
    for i, a in enumerate(shifted):
        for j, b in enumerate(conj):
            prod[i + j] = _qt_add(prod[i + j], _qt_mul(a, b, q))
    if any(b for _, b in prod) or any(a.denominator != 1 for a, _ in prod):
        raise InvariantError("norm of the compositum generator is not an integer polynomial")
    return tuple(poly.trim([int(a) for a, _ in prod]))


def cm_conjugation(f0, q, field):
    """Complex conjugation of ``F`` written as a polynomial in its canonical generator.

    With ``theta = eta + c + d s`` (``s^2 = -q``) conjugation sends ``theta`` to
    ``eta + c - d s = 2 (eta + c) - theta``, so only ``eta`` needs expressing in
    powers of ``theta``.
    """
    beta = f0.degree
    n = 2 * beta
    f = [Fraction(x) for x in f0.min_poly]
    c, d = _generator_shift(q)

    def reduce_eta(u):
        return poly.rem_q(u, f) if u else []

    def mul(a, b):
        # elements are pairs (u(eta), v(eta)) meaning u + v s
        u = poly.sub(poly.mul(a[0], b[0]), poly.scale(poly.mul(a[1], b[1]), q))
        v = poly.add(poly.mul(a[0], b[1]), poly.mul(a[1], b[0]))
        return (reduce_eta(u), reduce_eta(v))

    def coords(el):
        u = list(el[0]) + [Fraction(0)] * (beta - len(el[0]))
        v = list(el[1]) + [Fraction(0)] * (beta - len(el[1]))
        return u + v

    eta = reduce_eta([Fraction(0), Fraction(1)])
    theta = (reduce_eta(poly.add(eta, [c])), [d])
    cols, cur = [], ([Fraction(1)], [])
    for _ in range(n):
        cols.append(coords(cur))
        cur = mul(cur, theta)
    sol = la.solve(la.transpose(cols), coords((eta, [])))
    if sol is None:
        raise InvariantError("eta is not in the span of powers of the generator")
    sigma = poly.sub(poly.add(poly.scale(list(sol), 2), [2 * c]), [0, 1])
    fp = list(field.min_poly)
    if poly.rem_q(poly.compose(fp, sigma), fp):
        raise InvariantError("computed conjugation is not an automorphism")
    return tuple(Fraction(x) for x in poly.trim(sigma))


def _splits_in_two(field, l, beta):
    split = splitting_type(field, l)
    return (split.certified and len(split.places) == 2
            and all(w.residue_degree == beta and w.ramification_index == 1 for w in split.places))


def _splits_in_imaginary_quadratic(l, q):
    if l == 2:
        return q % 8 == 7
    return pow(-q % l, (l - 1) // 2, l) == 1


def _irreducible_count(l, k):
    """Number of monic irreducible polynomials of degree ``k`` over ``F_l`` (necklace formula)."""
    total = 0
    for e in range(1, k + 1):
        if k % e == 0:
            total += _moebius(k // e) * l ** e
    return total // k


def _moebius(n):
    out, m, f = 1, n, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            out = -out
        f += 1
    return -out if m > 1 else out


def certifiable_split(l, beta):
    """Whether two places of residue degree ``beta`` above ``l`` can be seen by a single generator.

    Certification reads places off a factorization mod ``l``, which needs two
    distinct irreducible factors of degree ``beta`` over ``F_l``.
    """
    return _irreducible_count(l, beta) >= 2


def choose_q(f0, l1, l2, bound, p=None):
    """Smallest prime ``q <= bound`` making ``l1`` and ``l2`` split into two places in ``F0(sqrt(-q))``."""
    if l1 == l2:
        raise PreconditionError("l1 and l2 must be distinct", witness=(l1, l2))
    inert = set(inert_primes(f0, max(l1, l2)))
    for l in (l1, l2):
        if l not in inert:
            raise PreconditionError(f"{l} is not inert in F0", witness=l)
    excluded = {l1, l2, p}
    for q in primes_up_to(bound):
        if q in excluded:
            continue
        # for odd beta the residue field of l in F0 has no quadratic subfield,
        # so l must already split in Q(sqrt(-q))
        if f0.degree % 2 and not all(_splits_in_imaginary_quadratic(l, q) for l in (l1, l2)):
            continue
        field = NumberField(compositum_polynomial(f0, q))
        if _splits_in_two(field, l1, f0.degree) and _splits_in_two(field, l2, f0.degree):
            return q
    raise NotFoundError(f"no suitable q up to {bound}")


@dataclass(frozen=True)
class ForgeRecipe:
    beta: int
    p: int
    l1: int
    l2: int
    q: int
    f0: NumberField
    field: NumberField
    sigma: tuple
    designated_places: tuple  # ((l1, 0), (l1, 1), (l2, 0), (l2, 1))

    def to_json(self):
        return {
            "beta": self.beta, "p": self.p, "l1": self.l1, "l2": self.l2, "q": self.q,
            "F0": self.f0.to_json(), "F": self.field.to_json(),
            "cm_conjugation": [str(c) for c in self.sigma],
            "designated_places": [{"prime": l, "place": w} for l, w in self.designated_places],
        }

    @classmethod
    def from_json(cls, data):
        return cls(beta=data["beta"], p=data["p"], l1=data["l1"], l2=data["l2"], q=data["q"],
                   f0=NumberField.from_json(data["F0"]), field=NumberField.from_json(data["F"]),
                   sigma=tuple(Fraction(c) for c in data["cm_conjugation"]),
                   designated_places=tuple((d["prime"], d["place"]) for d in data["designated_places"]))


def recipe_problems(recipe):
    """Checks every structural claim a recipe makes; empty when all hold."""
    out = []
    if real_embedding_count(recipe.f0) != recipe.beta:
        out.append("F0 is not totally real")
    if real_embedding_count(recipe.field) != 0:
        out.append("F has a real embedding")
    if recipe.field.degree != 2 * recipe.beta:
        out.append("F does not have degree 2 beta")
    for l in (recipe.l1, recipe.l2):
        if not _splits_in_two(recipe.field, l, recipe.beta):
            out.append(f"{l} does not split into two places of degree beta in F")
            continue
        perm, _ = conjugation_action_on_places(recipe.field, recipe.sigma, l)
        if perm != (1, 0):
            out.append(f"sigma does not swap the two places above {l}")
    return out


def forge(beta, l_bound=200, q_bound=2000):
    """Build the recipe for ``beta``: ``p``, ``F0``, the two smallest inert primes, ``q`` and ``F``."""
    p = find_prime_mod(beta)
    f0 = gaussian_period_field(p, beta)
    inert = [l for l in inert_primes(f0, l_bound) if l != p and certifiable_split(l, beta)]
    if len(inert) < 2:
        raise NotFoundError(f"fewer than two inert primes up to {l_bound}")
    l1, l2 = inert[:2]
    q = choose_q(f0, l1, l2, q_bound, p=p)
    field = NumberField(compositum_polynomial(f0, q))
    sigma = cm_conjugation(f0, q, field)
    recipe = ForgeRecipe(beta=beta, p=p, l1=l1, l2=l2, q=q, f0=f0, field=field, sigma=sigma,
                         designated_places=((l1, 0), (l1, 1), (l2, 0), (l2, 1)))
    problems = recipe_problems(recipe)
    if problems:
        raise InvariantError(f"forged recipe failed verification: {problems}")
    return recipe


def d_iv_membership(desc, recipe, d=None):
    """Whether ``desc`` is a degree-``d`` division algebra over ``F`` ramified at all designated places.

    ``d`` defaults to the descriptor's own index, which reduces the test to
    the invariant and Albert-consistency conditions.
    """
    if tuple(desc.center.min_poly) != tuple(recipe.field.min_poly):
        raise ArgumentError("descriptor center does not match the recipe field")
    if d is None:
        d = desc.degree_d
    if desc.degree_d != d:
        return False
    if any(desc.invariant_at(l, w).denominator == 1 for l, w in recipe.designated_places):
        return False
    return not validate_albert(desc)


@dataclass(frozen=True)
class Corollary1Verdict:
    member: bool
    dimension_condition: bool
    in_d_iv: bool
    divisor: int
    dividing_dims: tuple  # positive graded dimensions divisible by the divisor


def corollary1_divisor(beta, m, d):
    if d == 2:
        return 4 * beta * m
    if d >= 3:
        return m * d * beta
    return m * beta


def corollary1_check(point, recipe, k):
    """Membership of ``point`` in the type-IV family through summand ``k``."""
    summand = point.algebra.summands[k]
    desc = summand.algebra
    if tuple(desc.center.min_poly) != tuple(recipe.field.min_poly):
        raise ArgumentError(f"summand {k} is not defined over the recipe field")
    h = point.profile.h
    dim_ok = h > 0 and 2 * recipe.beta * h >= summand.dim_v
    in_family = d_iv_membership(desc, recipe)
    divisor = corollary1_divisor(recipe.beta, summand.multiplicity, desc.degree_d)
    dividing = tuple(x for x in point.profile.positive_dims if x % divisor == 0)
    return Corollary1Verdict(member=dim_ok and in_family and not dividing,
                             dimension_condition=dim_ok, in_d_iv=in_family,
                             divisor=divisor, dividing_dims=dividing)
